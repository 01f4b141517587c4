"""Sparse exact linear algebra: Smith normal form over Z and elimination over fields.

Matrices are stored as ``{(row, col): value}`` with no zero entries.  Integers
are Python ints, so entry growth during elimination is never truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class SparseIntMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: dict | None = None):
        self.rows = rows
        self.cols = cols
        self.entries = {k: v for k, v in (entries or {}).items() if v != 0}

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], cols: int | None = None) -> "SparseIntMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        return cls(rows, cols, {(i, j): int(v) for i, row in enumerate(data) for j, v in enumerate(row) if v})

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (i, j), v in other.entries.items():
            by_row.setdefault(i, []).append((j, v))
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[i, j] = out.get((i, j), 0) + a * b
        return SparseIntMatrix(self.rows, other.cols, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseIntMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def is_zero(self) -> bool:
        return not self.entries

    def nnz(self) -> int:
        return len(self.entries)

    def row_dicts(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def col_dicts(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


# -- Smith normal form -----------------------------------------------------------


@dataclass(frozen=True)
class SNFResult:
    invariant_factors: tuple[int, ...]
    rank: int
    U: SparseIntMatrix | None = None
    V: SparseIntMatrix | None = None
    V_inv: SparseIntMatrix | None = None
    U_inv: SparseIntMatrix | None = None

    def diagonal(self, rows: int, cols: int) -> SparseIntMatrix:
        return SparseIntMatrix(rows, cols, {(i, i): d for i, d in enumerate(self.invariant_factors)})

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)


def _nearest_quotient(a: int, p: int) -> int:
    # Python's remainder carries the sign of p, so stepping q up shrinks it.
    q, r = divmod(a, p)
    if 2 * abs(r) > abs(p):
        q += 1
    return q


class _Eliminator:
    """In-place sparse unimodular reduction of a matrix to a (permuted) diagonal."""

    def __init__(self, a: SparseIntMatrix, track: bool):
        self.rows: dict[int, dict[int, int]] = {}
        self.colidx: dict[int, set[int]] = {}
        for (i, j), v in a.entries.items():
            self.rows.setdefault(i, {})[j] = v
            self.colidx.setdefault(j, set()).add(i)
        self.track = track
        if track:
            self.U = [{i: 1} for i in range(a.rows)]  # rows of U
            self.Uinv = [{i: 1} for i in range(a.rows)]  # columns of U^-1
            self.V = [{j: 1} for j in range(a.cols)]  # columns of V
            self.Vinv = [{j: 1} for j in range(a.cols)]  # rows of V^-1

    def _set(self, i: int, j: int, v: int) -> None:
        row = self.rows.setdefault(i, {})
        if v:
            row[j] = v
            self.colidx.setdefault(j, set()).add(i)
        else:
            row.pop(j, None)
            s = self.colidx.get(j)
            if s is not None:
                s.discard(i)
                if not s:
                    del self.colidx[j]
            if not row:
                del self.rows[i]

    def row_axpy(self, target: int, q: int, source: int) -> None:
        """row[target] -= q * row[source]"""
        for j, v in list(self.rows[source].items()):
            self._set(target, j, self.rows.get(target, {}).get(j, 0) - q * v)
        if self.track:
            _axpy(self.U[target], -q, self.U[source])
            _axpy(self.Uinv[source], q, self.Uinv[target])

    def col_axpy(self, target: int, q: int, source: int) -> None:
        """col[target] -= q * col[source]"""
        for i in list(self.colidx.get(source, ())):
            v = self.rows[i][source]
            self._set(i, target, self.rows[i].get(target, 0) - q * v)
        if self.track:
            _axpy(self.V[target], -q, self.V[source])
            _axpy(self.Vinv[source], q, self.Vinv[target])

    def choose_pivot(self) -> tuple[int, int, int] | None:
        best = None
        best_key = None
        for i, row in self.rows.items():
            rlen = len(row) - 1
            for j, v in row.items():
                key = (abs(v), rlen * (len(self.colidx[j]) - 1), i, j)
                if best_key is None or key < best_key:
                    best_key, best = key, (i, j, v)
                    if key[0] == 1 and key[1] == 0:
                        return best
        return best

    def run(self) -> list[tuple[int, int, int]]:
        pivots = []
        while self.rows:
            r, c, p = self.choose_pivot()
            clean = True
            for j in sorted(self.colidx[c] - {r}):
                a = self.rows[j][c]
                q = _nearest_quotient(a, p)
                if q:
                    self.row_axpy(j, q, r)
                if a - q * p:
                    clean = False
            if not clean:
                continue
            for k in sorted(set(self.rows[r]) - {c}):
                b = self.rows[r][k]
                q = _nearest_quotient(b, p)
                if q:
                    self.col_axpy(k, q, c)
                if b - q * p:
                    clean = False
            if not clean:
                continue
            pivots.append((r, c, p))
            self._set(r, c, 0)
        return pivots


def _axpy(target: dict, q: int, source: dict) -> None:
    """target += q * source for sparse dict vectors."""
    for k, v in source.items():
        w = target.get(k, 0) + q * v
        if w:
            target[k] = w
        else:
            target.pop(k, None)


def _chain_fix(values: list[int]) -> list[int]:
    d = [abs(v) for v in values]
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            if d[j] % d[i]:
                g = gcd(d[i], d[j])
                d[i], d[j] = g, d[i] * d[j] // g
    return d


def smith_normal_form(a: SparseIntMatrix, want_transforms: bool = False) -> SNFResult:
    """Invariant factors of ``a``; with transforms also unimodular ``U, V`` with ``U a V = D``."""
    elim = _Eliminator(a, want_transforms)
    pivots = elim.run()
    if not want_transforms:
        factors = _chain_fix([p for _, _, p in pivots])
        return SNFResult(tuple(sorted(factors)), len(factors))

    m, n = a.rows, a.cols
    row_order = [r for r, _, _ in pivots]
    col_order = [c for _, c, _ in pivots]
    used_r, used_c = set(row_order), set(col_order)
    row_order += [i for i in range(m) if i not in used_r]
    col_order += [j for j in range(n) if j not in used_c]
    urows = [dict(elim.U[i]) for i in row_order]
    uinv = [dict(elim.Uinv[i]) for i in row_order]
    vcols = [dict(elim.V[j]) for j in col_order]
    vinv = [dict(elim.Vinv[j]) for j in col_order]
    d = [p for _, _, p in pivots]

    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            a_, b_ = d[i], d[j]
            if b_ % a_ == 0:
                continue
            g, x, y = _ext_gcd(a_, b_)
            ri, rj = urows[i], urows[j]
            new_ri: dict = {}
            _axpy(new_ri, x, ri)
            _axpy(new_ri, y, rj)
            new_rj: dict = {}
            _axpy(new_rj, -b_ // g, ri)
            _axpy(new_rj, a_ // g, rj)
            urows[i], urows[j] = new_ri, new_rj
            ui, uj = uinv[i], uinv[j]
            new_ui: dict = {}
            _axpy(new_ui, a_ // g, ui)
            _axpy(new_ui, b_ // g, uj)
            new_uj: dict = {}
            _axpy(new_uj, -y, ui)
            _axpy(new_uj, x, uj)
            uinv[i], uinv[j] = new_ui, new_uj
            ci, cj = vcols[i], vcols[j]
            new_ci = dict(ci)
            _axpy(new_ci, 1, cj)
            new_cj: dict = {}
            _axpy(new_cj, -y * b_ // g, ci)
            _axpy(new_cj, x * a_ // g, cj)
            vcols[i], vcols[j] = new_ci, new_cj
            wi, wj = vinv[i], vinv[j]
            new_wi: dict = {}
            _axpy(new_wi, x * a_ // g, wi)
            _axpy(new_wi, y * b_ // g, wj)
            new_wj = dict(wj)
            _axpy(new_wj, -1, wi)
            vinv[i], vinv[j] = new_wi, new_wj
            d[i], d[j] = g, a_ * b_ // g
    for i, v in enumerate(d):
        if v < 0:
            urows[i] = {k: -w for k, w in urows[i].items()}
            uinv[i] = {k: -w for k, w in uinv[i].items()}
            d[i] = -v

    U = SparseIntMatrix(m, m, {(i, k): v for i, row in enumerate(urows) for k, v in row.items()})
    V = SparseIntMatrix(n, n, {(k, j): v for j, col in enumerate(vcols) for k, v in col.items()})
    Vinv = SparseIntMatrix(n, n, {(i, k): v for i, row in enumerate(vinv) for k, v in row.items()})
    Uinv = SparseIntMatrix(m, m, {(k, j): v for j, col in enumerate(uinv) for k, v in col.items()})
    return SNFResult(tuple(d), len(d), U, V, Vinv, Uinv)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``g = gcd(a, b) > 0`` and ``x a + y b = g``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def determinant(a: SparseIntMatrix) -> int:
    if a.rows != a.cols:
        raise ValueError("square matrix required")
    from .graphs import _det

    return _det(a.to_dense())


# -- fields ----------------------------------------------------------------------


class Field:
    """The rationals (``p == 0``) or the prime field ``F_p``."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p < 0 or p == 1:
            raise ValueError("characteristic must be 0 or a prime")
        if p > 1 and any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __repr__(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("field", self.p))

    def convert(self, x):
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    def inv(self, x):
        if self.p == 0:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def reduce(self, x):
        return x if self.p == 0 else x % self.p


class Echelon:
    """Incrementally maintained reduced row echelon basis over a field."""

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, dict] = {}  # pivot column -> row (pivot entry 1)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Residual of ``vec`` after clearing every pivot column."""
        f = self.field
        v = {k: f.convert(x) for k, x in vec.items()}
        v = {k: x for k, x in v.items() if x}
        # Rows are fully reduced, so one pass over the pivots present suffices.
        for col in sorted(set(v) & set(self.rows)):
            c = v.pop(col)
            for k, x in self.rows[col].items():
                if k == col:
                    continue
                w = f.reduce(v.get(k, 0) - c * x)
                if w:
                    v[k] = w
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: dict) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        f = self.field
        col = min(v)
        inv = f.inv(v[col])
        v = {k: f.reduce(x * inv) for k, x in v.items()}
        for other in self.rows.values():
            c = other.get(col)
            if c:
                for k, x in v.items():
                    w = f.reduce(other.get(k, 0) - c * x)
                    if w:
                        other[k] = w
                    else:
                        other.pop(k, None)
        self.rows[col] = v
        return True

    def pivots(self) -> list[int]:
        return sorted(self.rows)


def field_rank(a: SparseIntMatrix, field: Field) -> int:
    ech = Echelon(field)
    vecs = a.row_dicts() if a.rows <= a.cols else a.col_dicts()
    for v in vecs:
        if v:
            ech.add(v)
    return len(ech)


def nullspace(a: SparseIntMatrix, field: Field) -> list[dict]:
    """Basis of ``{x : a x = 0}`` from the reduced row echelon form, one vector per free column."""
    ech = Echelon(field)
    for v in a.row_dicts():
        if v:
            ech.add(v)
    pivots = set(ech.rows)
    basis = []
    for free in range(a.cols):
        if free in pivots:
            continue
        x = {free: field.convert(1)}
        for pc, row in ech.rows.items():
            c = row.get(free)
            if c:
                x[pc] = field.reduce(-c)
        basis.append(x)
    return basis


def rank_over_q(a: SparseIntMatrix) -> int:
    return field_rank(a, Field(0))


def rank_mod_p(a: SparseIntMatrix, p: int) -> int:
    return field_rank(a, Field(p))


def dense(vecs: Iterable[dict], length: int, field: Field) -> list[list]:
    """Columns given as sparse dicts, returned as a dense row-major matrix."""
    vecs = list(vecs)
    zero = field.convert(0)
    return [[v.get(i, zero) for v in vecs] for i in range(length)]
