"""Simplicial homology with integer, rational or mod-p coefficients.

Chain groups are indexed by faces in the order given by
``SimplicialComplex.faces``.  In reduced homology the chain group in degree
-1 is spanned by the empty face whenever the complex is not void, so

* every reduced group of the void complex is zero,
* ``H~_{-1}({∅})`` is the coefficient group,
* ``H~_{-1}`` of any complex with a vertex is zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .complexes import Builder, SimplicialComplex, SimplicialMap, induced_simplicial_map
from .errors import BadDegree
from .linalg import (  # noqa: F401  (re-exported)
    Echelon,
    Field,
    SNFResult,
    SparseIntMatrix,
    field_rank,
    nullspace,
    smith_normal_form,
)
from .minors import MinorMorphism


def parse_coefficients(coefficients) -> Field | None:
    """``"Z"`` gives None; ``"Q"``/0 the rationals; a prime or ``"F5"``/``"5"`` that field."""
    if isinstance(coefficients, Field):
        return coefficients
    if coefficients in ("Z", "z", None):
        return None
    if coefficients in ("Q", "q", 0, "0"):
        return Field(0)
    if isinstance(coefficients, str):
        text = coefficients.upper().lstrip("F")
        if not text.isdigit():
            raise ValueError(f"unknown coefficients {coefficients!r}")
        coefficients = int(text)
    return Field(int(coefficients))


def coefficient_name(coefficients) -> str:
    f = parse_coefficients(coefficients)
    if f is None:
        return "Z"
    return "Q" if f.p == 0 else f"F{f.p}"


@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int
    torsion: tuple = ()

    @property
    def exponent(self) -> int:
        return self.torsion[-1] if self.torsion else 1

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def t_p(self, p: int) -> int:
        return sum(1 for d in self.torsion if d % p == 0)

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) or "0"


def chain_basis(delta: SimplicialComplex, k: int, reduced: bool) -> list[tuple]:
    if k < -1 or (k == -1 and not reduced):
        return []
    return delta.faces(k)


@lru_cache(maxsize=256)
def boundary_matrix(delta: SimplicialComplex, k: int, reduced: bool = True) -> SparseIntMatrix:
    """Matrix of the boundary from degree ``k`` chains to degree ``k-1`` chains."""
    cols = chain_basis(delta, k, reduced)
    rows = chain_basis(delta, k - 1, reduced)
    index = {f: i for i, f in enumerate(rows)}
    entries = {}
    if rows:
        for j, face in enumerate(cols):
            for pos in range(len(face)):
                entries[(index[face[:pos] + face[pos + 1:]], j)] = (-1) ** pos
    return SparseIntMatrix(len(rows), len(cols), entries)


@lru_cache(maxsize=256)
def _snf(delta: SimplicialComplex, k: int, reduced: bool) -> SNFResult:
    return smith_normal_form(boundary_matrix(delta, k, reduced))


@lru_cache(maxsize=512)
def _rank(delta: SimplicialComplex, k: int, reduced: bool, f: Field) -> int:
    return field_rank(boundary_matrix(delta, k, reduced), f)


def _check_degree(i: int, reduced: bool) -> None:
    if i < -1 or (i == -1 and not reduced):
        raise BadDegree(f"degree {i} is not allowed for {'reduced' if reduced else 'unreduced'} homology")


def homology(delta: SimplicialComplex, i: int, coefficients="Z", reduced: bool = True) -> HomologyGroup:
    _check_degree(i, reduced)
    n = len(chain_basis(delta, i, reduced))
    f = parse_coefficients(coefficients)
    if f is None:
        out = _snf(delta, i, reduced).rank
        into = _snf(delta, i + 1, reduced)
        torsion = tuple(d for d in into.invariant_factors if d > 1)
        return HomologyGroup(n - out - into.rank, torsion)
    return HomologyGroup(n - _rank(delta, i, reduced, f) - _rank(delta, i + 1, reduced, f))


def betti_numbers(delta: SimplicialComplex, coefficients="Q", reduced: bool = True) -> list[int]:
    """Betti numbers in degrees ``0..dim`` over a field."""
    if delta.is_void():
        return []
    return [homology(delta, k, coefficients, reduced).free_rank for k in range(0, delta.dimension + 1)]


def cohomology_dimension(delta: SimplicialComplex, i: int, coefficients="Q", reduced: bool = True) -> int:
    """Dimension of cohomology over a field, computed from the transposed boundaries."""
    _check_degree(i, reduced)
    f = parse_coefficients(coefficients)
    if f is None:
        raise ValueError("cohomology_dimension needs field coefficients")
    n = len(chain_basis(delta, i, reduced))
    up = field_rank(boundary_matrix(delta, i + 1, reduced).transpose(), f)  # delta^i
    down = field_rank(boundary_matrix(delta, i, reduced).transpose(), f)  # delta^{i-1}
    return n - up - down


def uct_consistency(delta: SimplicialComplex, i: int, p: int, reduced: bool = True) -> bool:
    """Compare the mod-p Betti number with the one predicted from integral homology."""
    lhs = homology(delta, i, p, reduced).free_rank
    hz = homology(delta, i, "Z", reduced)
    below = homology(delta, i - 1, "Z", reduced) if i - 1 >= (-1 if reduced else 0) else HomologyGroup(0)
    return lhs == hz.free_rank + hz.t_p(p) + below.t_p(p)


# -- explicit bases ----------------------------------------------------------------


@dataclass
class FieldHomologyBasis:
    """Cycle representatives for homology over a field, with a coordinate map."""

    delta: SimplicialComplex
    degree: int
    field: Field
    reduced: bool
    representatives: list[dict]
    _free_cols: list[int] = field(repr=False, default_factory=list)
    _boundaries: Echelon | None = field(repr=False, default=None)
    _kept: list[int] = field(repr=False, default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def coordinates(self, cycle: dict) -> list:
        # A kernel vector is determined by its entries on the free columns.
        z = {k: cycle[c] for k, c in enumerate(self._free_cols) if cycle.get(c)}
        residual = self._boundaries.reduce(z)
        zero = self.field.convert(0)
        return [residual.get(k, zero) for k in self._kept]


def field_homology_basis(delta: SimplicialComplex, i: int, coefficients="Q", reduced: bool = True) -> FieldHomologyBasis:
    _check_degree(i, reduced)
    f = parse_coefficients(coefficients)
    if f is None:
        raise ValueError("use integral_homology_basis for integer coefficients")
    return _field_basis(delta, i, f, reduced)


@lru_cache(maxsize=1024)
def _field_basis(delta: SimplicialComplex, i: int, f: Field, reduced: bool) -> FieldHomologyBasis:
    kernel = nullspace(boundary_matrix(delta, i, reduced), f)
    # In reduced echelon form every pivot column precedes the free columns it
    # touches, so each kernel vector's free column is its largest index.
    free_cols = [max(v) for v in kernel]
    ech = Echelon(f)
    for col in boundary_matrix(delta, i + 1, reduced).col_dicts():
        ech.add({k: col[c] for k, c in enumerate(free_cols) if col.get(c)})
    kept = [k for k in range(len(kernel)) if k not in ech.rows]
    return FieldHomologyBasis(delta, i, f, reduced, [kernel[k] for k in kept], free_cols, ech, kept)


@dataclass
class IntegralHomologyBasis:
    """Generators of integral homology: free generators then cyclic torsion generators."""

    delta: SimplicialComplex
    degree: int
    reduced: bool
    free: list[dict]
    torsion: list[tuple[int, dict]]
    _kernel_rank_offset: int = 0
    _vinv: SparseIntMatrix | None = field(repr=False, default=None)
    _u: SparseIntMatrix | None = field(repr=False, default=None)
    _factors: tuple = ()

    @property
    def group(self) -> HomologyGroup:
        return HomologyGroup(len(self.free), tuple(d for d, _ in self.torsion))

    def coordinates(self, cycle: dict) -> tuple[list[int], list[int]]:
        """Free coordinates and torsion residues of a cycle's class."""
        r = self._kernel_rank_offset
        vinv = self._vinv.row_dicts()
        kc = [sum(row.get(c, 0) * x for c, x in cycle.items()) for row in vinv[r:]]
        u = self._u.row_dicts()
        y = [sum(row.get(c, 0) * kc[c] for c in row) for row in u]
        s = len(self._factors)
        free = y[s:]
        torsion = [y[k] % d for k, d in enumerate(self._factors) if d > 1]
        return free, torsion


def integral_homology_basis(delta: SimplicialComplex, i: int, reduced: bool = True) -> IntegralHomologyBasis:
    _check_degree(i, reduced)
    return _integral_basis(delta, i, reduced)


@lru_cache(maxsize=256)
def _integral_basis(delta: SimplicialComplex, i: int, reduced: bool) -> IntegralHomologyBasis:
    d_out = boundary_matrix(delta, i, reduced)
    snf = smith_normal_form(d_out, want_transforms=True)
    r = snf.rank
    vcols = snf.V.col_dicts()
    kernel = vcols[r:]
    vinv_rows = snf.V_inv.row_dicts()[r:]
    d_in = boundary_matrix(delta, i + 1, reduced)
    # Boundaries written in the kernel basis.
    cols = d_in.col_dicts()
    entries = {}
    for j, col in enumerate(cols):
        for k, row in enumerate(vinv_rows):
            v = sum(row.get(c, 0) * x for c, x in col.items())
            if v:
                entries[(k, j)] = v
    m = SparseIntMatrix(len(kernel), d_in.cols, entries)
    pres = smith_normal_form(m, want_transforms=True)
    uinv_cols = pres.U_inv.col_dicts()

    def lift(k: int) -> dict:
        out: dict = {}
        for t, c in uinv_cols[k].items():
            for face, x in kernel[t].items():
                out[face] = out.get(face, 0) + c * x
        return {f_: x for f_, x in out.items() if x}

    s = pres.rank
    free = [lift(k) for k in range(s, len(kernel))]
    torsion = [(d, lift(k)) for k, d in enumerate(pres.invariant_factors) if d > 1]
    return IntegralHomologyBasis(delta, i, reduced, free, torsion, r, snf.V_inv, pres.U, pres.invariant_factors)


# -- induced maps -----------------------------------------------------------------


def _push_chain(smap: SimplicialMap, i: int, chain: dict, source_faces: list, target_index: dict) -> dict:
    out: dict = {}
    for c, x in chain.items():
        face = source_faces[c]
        if i == -1:
            out[0] = out.get(0, 0) + x
            continue
        sign, image = smap.signed_image(face)
        t = target_index[image]
        out[t] = out.get(t, 0) + sign * x
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class IntegralInducedMap:
    free: list  # rows: target free coords, cols: source free generators
    torsion: list  # rows: target torsion residues, cols: source torsion generators
    source_group: HomologyGroup
    target_group: HomologyGroup


def induced_map_on_homology(
    phi: MinorMorphism,
    builder: Callable | Builder,
    i: int,
    coefficients="Q",
    reduced: bool = True,
):
    """Matrix of ``H_i(builder(G')) -> H_i(builder(G))`` in the deterministic bases.

    Over a field the result is a list of rows.  Over Z it is an
    ``IntegralInducedMap`` giving the map on free quotients and on torsion.
    """
    smap = induced_simplicial_map(phi, builder)
    src, tgt = smap.source, smap.target
    src_faces = chain_basis(src, i, reduced)
    tgt_index = {f_: k for k, f_ in enumerate(chain_basis(tgt, i, reduced))}
    f = parse_coefficients(coefficients)
    if f is not None:
        b_src = field_homology_basis(src, i, f, reduced)
        b_tgt = field_homology_basis(tgt, i, f, reduced)
        cols = [b_tgt.coordinates(_push_chain(smap, i, rep, src_faces, tgt_index)) for rep in b_src.representatives]
        return [[cols[j][r] for j in range(len(cols))] for r in range(b_tgt.dimension)]
    b_src = integral_homology_basis(src, i, reduced)
    b_tgt = integral_homology_basis(tgt, i, reduced)
    free_cols = [b_tgt.coordinates(_push_chain(smap, i, rep, src_faces, tgt_index))[0] for rep in b_src.free]
    tors_cols = [b_tgt.coordinates(_push_chain(smap, i, rep, src_faces, tgt_index))[1] for _, rep in b_src.torsion]
    nf, nt = len(b_tgt.free), len(b_tgt.torsion)
    return IntegralInducedMap(
        [[c[r] for c in free_cols] for r in range(nf)],
        [[c[r] for c in tors_cols] for r in range(nt)],
        b_src.group,
        b_tgt.group,
    )


def homology_report(delta: SimplicialComplex, i: int, coefficients="Z", reduced: bool = True) -> dict:
    h = homology(delta, i, coefficients, reduced)
    return {
        "degree": i,
        "coefficients": coefficient_name(coefficients),
        "free_rank": h.free_rank,
        "torsion": list(h.torsion),
        "reduced": reduced,
    }
