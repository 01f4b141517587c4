"""Edge ideals of complement line graphs and their graded Betti numbers.

Two independent routes compute the same numbers:

* ``hochster_betti`` uses reduced cohomology of restrictions of the
  Stanley-Reisner complex (the flag complex of the line graph);
* ``koszul_betti_oracle`` builds the Koszul complex of the ideal in one
  multidegree and takes homology directly.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .complexes import SimplicialComplex, flag_complex_of_line_graph, restrict
from .errors import TooLarge
from .graphs import Graph
from .homology import cohomology_dimension, parse_coefficients
from .linalg import Field, SparseIntMatrix, field_rank

KOSZUL_VARIABLE_LIMIT = 8


@dataclass(frozen=True)
class SquarefreeMonomialIdeal:
    variables: tuple
    generators: frozenset  # of frozensets

    def __init__(self, variables: Iterable, generators: Iterable[Iterable]):
        variables = tuple(variables)
        gens = {frozenset(g) for g in generators}
        for g in gens:
            if not g <= set(variables):
                raise ValueError(f"generator {sorted(g)} uses unknown variables")
        minimal = {g for g in gens if not any(h < g for h in gens)}
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "generators", frozenset(minimal))

    def is_zero(self) -> bool:
        return not self.generators

    def contains_monomial(self, exponents: Mapping) -> bool:
        """Whether the monomial with the given exponent vector lies in the ideal."""
        support = {x for x, a in exponents.items() if a > 0}
        return any(g <= support for g in self.generators)

    def sorted_generators(self) -> list[list]:
        pos = {x: i for i, x in enumerate(self.variables)}
        gens = [sorted(g, key=pos.__getitem__) for g in self.generators]
        return sorted(gens, key=lambda g: (len(g), [pos[x] for x in g]))

    def stanley_reisner_complex(self) -> SimplicialComplex:
        """Complex of subsets containing no generator."""
        faces = []
        for r in range(len(self.variables) + 1):
            for combo in itertools.combinations(self.variables, r):
                s = frozenset(combo)
                if not any(g <= s for g in self.generators):
                    faces.append(s)
        return SimplicialComplex(self.variables, faces)

    def to_json(self) -> dict:
        return {"variables": list(self.variables), "generators": self.sorted_generators()}


def edge_ideal_lc(g: Graph) -> SquarefreeMonomialIdeal:
    """Ideal generated by ``x_e x_f`` for every pair of edges sharing no vertex."""
    gens = [(e, f) for e, f in itertools.combinations(g.edges, 2) if not g.share_vertex(e, f)]
    return SquarefreeMonomialIdeal(g.edges, gens)


def _char_field(char) -> Field:
    f = parse_coefficients(char)
    if f is None:
        raise ValueError("Betti numbers are computed over a field")
    return f


def _restricted_betti(delta: SimplicialComplex, i: int, sigma: frozenset, f: Field) -> int:
    k = len(sigma) - i - 2
    if k < -1:
        return 0
    return cohomology_dimension(restrict(delta, sigma), k, f, reduced=True)


def hochster_betti(g: Graph, i: int, sigma: Iterable, char=0) -> int:
    """``beta_{i,sigma}`` of the edge ideal of the complement line graph."""
    if i < 0:
        return 0
    f = _char_field(char)
    return _restricted_betti(flag_complex_of_line_graph(g), i, frozenset(sigma), f)


def koszul_betti_oracle(ideal: SquarefreeMonomialIdeal, i: int, degree, char=0) -> int:
    """Dimension of ``Tor_i(I, K)`` in one multidegree via the Koszul complex.

    ``degree`` is either a set of variables (a squarefree degree) or a mapping
    from variables to nonnegative exponents.
    """
    if len(ideal.variables) > KOSZUL_VARIABLE_LIMIT:
        raise TooLarge(f"Koszul oracle limited to {KOSZUL_VARIABLE_LIMIT} variables")
    if i < 0:
        return 0
    f = _char_field(char)
    if isinstance(degree, Mapping):
        a = {x: int(degree.get(x, 0)) for x in ideal.variables}
    else:
        deg = set(degree)
        a = {x: int(x in deg) for x in ideal.variables}
    support = [x for x in ideal.variables if a[x] > 0]

    # K_j in degree a has basis the j-subsets tau of supp(a) with x^(a - 1_tau) in I.
    def basis(j: int) -> list[tuple]:
        if j < 0:
            return []
        out = []
        for tau in itertools.combinations(support, j):
            b = dict(a)
            for x in tau:
                b[x] -= 1
            if ideal.contains_monomial(b):
                out.append(tau)
        return out

    def differential(j: int) -> SparseIntMatrix:
        cols = basis(j)
        rows = basis(j - 1)
        index = {t: r for r, t in enumerate(rows)}
        entries = {}
        for c, tau in enumerate(cols):
            for pos in range(len(tau)):
                face = tau[:pos] + tau[pos + 1:]
                # x^(a - 1_face) is a multiple of x^(a - 1_tau), so it is in I.
                entries[(index[face], c)] = (-1) ** pos
        return SparseIntMatrix(len(rows), len(cols), entries)

    n = len(basis(i))
    return n - field_rank(differential(i), f) - field_rank(differential(i + 1), f)


def coarse_betti(g: Graph, i: int, a: int, char=0) -> int:
    """Sum of ``beta_{i,sigma}`` over edge subsets of size ``a``."""
    if i < 0 or a < 0:
        return 0
    f = _char_field(char)
    delta = flag_complex_of_line_graph(g)
    return sum(_restricted_betti(delta, i, frozenset(s), f) for s in itertools.combinations(g.edges, a))


def max_nonzero_degree(g: Graph, i: int, char=0) -> int:
    """Largest ``a`` with a nonzero coarse Betti number in homological index ``i`` (-1 if none)."""
    for a in range(g.num_edges(), -1, -1):
        if coarse_betti(g, i, a, char):
            return a
    return -1


@dataclass
class BettiTable:
    """Nonzero Betti numbers keyed by ``(i, sigma)``; sigma is a sorted tuple of variables."""

    variables: tuple
    entries: dict = field(default_factory=dict)

    def __setitem__(self, key, value: int) -> None:
        i, sigma = key
        sigma = tuple(sorted(sigma, key=self.variables.index))
        if len(set(sigma)) != len(sigma):
            raise ValueError("Betti tables only hold squarefree degrees")
        if value:
            self.entries[(i, sigma)] = value
        else:
            self.entries.pop((i, sigma), None)

    def __getitem__(self, key) -> int:
        i, sigma = key
        return self.entries.get((i, tuple(sorted(sigma, key=self.variables.index))), 0)

    def rows(self) -> list[tuple[int, list, int]]:
        pos = {x: k for k, x in enumerate(self.variables)}
        keys = sorted(self.entries, key=lambda k: (k[0], len(k[1]), [pos[x] for x in k[1]]))
        return [(i, list(s), self.entries[(i, s)]) for i, s in keys]

    def coarse(self) -> dict[tuple[int, int], int]:
        out: dict = {}
        for (i, s), v in self.entries.items():
            out[(i, len(s))] = out.get((i, len(s)), 0) + v
        return out

    def to_json(self) -> dict:
        return {"variables": list(self.variables), "rows": [{"i": i, "sigma": s, "value": v} for i, s, v in self.rows()]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "sigma", "value"])
        for i, s, v in self.rows():
            w.writerow([i, " ".join(s), v])
        return buf.getvalue()


def betti_table(g: Graph, max_i: int, char=0, oracle: bool = False) -> BettiTable | tuple[BettiTable, BettiTable]:
    """Every nonzero ``beta_{i,sigma}`` for ``i <= max_i``; with ``oracle`` also the Koszul table."""
    f = _char_field(char)
    delta = flag_complex_of_line_graph(g)
    table = BettiTable(g.edges)
    other = BettiTable(g.edges)
    ideal = edge_ideal_lc(g) if oracle else None
    for r in range(len(g.edges) + 1):
        for s in itertools.combinations(g.edges, r):
            sigma = frozenset(s)
            for i in range(max_i + 1):
                table[i, s] = _restricted_betti(delta, i, sigma, f)
                if oracle:
                    other[i, s] = koszul_betti_oracle(ideal, i, sigma, f)
    return (table, other) if oracle else table


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
