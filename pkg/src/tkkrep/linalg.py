"""Exact sparse linear algebra over :class:`~tkkrep.scalar.Scalar`.

Vectors are plain ``dict[int, Scalar]`` without stored zeros.  Matrices are
lists of such rows.  Nothing here ever touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .scalar import ONE, ZERO, Scalar, as_scalar

Vec = Dict[int, Scalar]


# ------------------------------------------------------------ vector helpers
def vec_axpy(y: Vec, a: Scalar, x: Vec) -> None:
    """In place ``y += a*x``."""
    if not a:
        return
    for k, v in x.items():
        nv = y.get(k, ZERO) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


def vec_add(x: Vec, y: Vec) -> Vec:
    out = dict(x)
    vec_axpy(out, ONE, y)
    return out


def vec_sub(x: Vec, y: Vec) -> Vec:
    out = dict(x)
    vec_axpy(out, -ONE, y)
    return out


def vec_scale(a, x: Vec) -> Vec:
    a = as_scalar(a)
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def vec_clean(x: dict) -> Vec:
    return {k: as_scalar(v) for k, v in x.items() if as_scalar(v)}


def dense_to_rows(matrix: Sequence[Sequence]) -> Tuple[List[Vec], int]:
    ncols = len(matrix[0]) if matrix else 0
    rows = [{j: as_scalar(v) for j, v in enumerate(r) if as_scalar(v)} for r in matrix]
    return rows, ncols


def mat_vec(rows: Sequence[Vec], x: Vec) -> Vec:
    out = {}
    for i, r in enumerate(rows):
        s = ZERO
        for j, v in r.items():
            xj = x.get(j)
            if xj is not None:
                s = s + v * xj
        if s:
            out[i] = s
    return out


def transpose(rows: Sequence[Vec], ncols: int) -> List[Vec]:
    cols: List[Vec] = [dict() for _ in range(ncols)]
    for i, r in enumerate(rows):
        for j, v in r.items():
            cols[j][i] = v
    return cols


# ------------------------------------------------------------- elimination
class Echelon:
    """Incremental row-echelon form with optional tracking of combinations.

    Each stored row has a leading 1 at its pivot column and no entries to the
    left of it.  With ``track=True`` every row also remembers which
    combination of the inserted vectors produced it, so membership queries
    can return coordinates with respect to the inserted vectors.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.rows: Dict[int, Vec] = {}
        self.combos: Dict[int, Vec] = {}
        self.n_inserted = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, v: Vec, combo: Optional[Vec]):
        v = dict(v)
        acc: Vec = {}
        rows = self.rows
        while True:
            hits = [c for c in v if c in rows]
            if not hits:
                return v, acc, combo
            c = min(hits)
            coef = v[c]
            vec_axpy(v, -coef, rows[c])
            if self.track:
                vec_axpy(acc, coef, self.combos[c])
                if combo is not None:
                    vec_axpy(combo, -coef, self.combos[c])

    def reduce(self, v: Vec) -> Vec:
        return self._reduce(v, None)[0]

    def add(self, v: Vec) -> bool:
        """Insert ``v``; return True if it was independent of the stored span."""
        idx = self.n_inserted
        self.n_inserted += 1
        combo = {idx: ONE} if self.track else None
        r, _, combo = self._reduce(v, combo)
        if not r:
            return False
        c = min(r)
        inv = ONE / r[c]
        self.rows[c] = {k: x * inv for k, x in r.items()}
        if self.track:
            self.combos[c] = {k: x * inv for k, x in combo.items()}
        return True

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Vec) -> Optional[Vec]:
        """Coefficients of ``v`` in terms of the inserted vectors, or None."""
        if not self.track:
            raise ValueError("coordinates need track=True")
        r, acc, _ = self._reduce(v, None)
        return None if r else acc


def rank(vectors: Iterable[Vec]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def _pick_pivot(rows, candidates, col):
    return min(candidates, key=lambda i: (rows[i][col].complexity(), i))


def rref(rows: Sequence[Vec], ncols: Optional[int] = None) -> Tuple[List[Vec], List[int]]:
    """Reduced row echelon form.

    Pivots are chosen column by column, preferring the entry of lowest total
    degree (ties broken by row index).  The reduced form itself is canonical,
    so the choice only affects intermediate expression swell.
    """
    rows = [dict(r) for r in rows if r]
    if ncols is None:
        ncols = 1 + max((max(r) for r in rows), default=-1)
    col_index: Dict[int, set] = {}
    for i, r in enumerate(rows):
        for c in r:
            col_index.setdefault(c, set()).add(i)
    used = set()
    pivots: List[int] = []
    pivot_rows: List[int] = []
    for col in range(ncols):
        cands = [i for i in col_index.get(col, ()) if i not in used]
        if not cands:
            continue
        p = _pick_pivot(rows, cands, col)
        used.add(p)
        inv = ONE / rows[p][col]
        rows[p] = {k: v * inv for k, v in rows[p].items()}
        prow = rows[p]
        for i in list(col_index.get(col, ())):
            if i == p:
                continue
            coef = rows[i].get(col)
            if not coef:
                continue
            before = set(rows[i])
            vec_axpy(rows[i], -coef, prow)
            after = set(rows[i])
            for c in before - after:
                col_index[c].discard(i)
            for c in after - before:
                col_index.setdefault(c, set()).add(i)
        pivots.append(col)
        pivot_rows.append(p)
    return [rows[p] for p in pivot_rows], pivots


def null_space(rows: Sequence[Vec], ncols: int) -> List[Vec]:
    """Basis of ``{x : A x = 0}``; one vector per free column, in column order."""
    reduced, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = {free: ONE}
        for r, p in zip(reduced, pivots):
            c = r.get(free)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


@dataclass
class LinearSolution:
    consistent: bool
    particular: Optional[Vec]
    null_basis: List[Vec] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.null_basis) if self.consistent else -1


def solve_linear(rows: Sequence[Vec], rhs: Vec, ncols: int) -> LinearSolution:
    """Solve ``A x = b`` exactly; the result is re-substituted before returning."""
    aug = []
    for i, r in enumerate(rows):
        row = dict(r)
        if rhs.get(i):
            row[ncols] = rhs[i]
        aug.append(row)
    for i in rhs:
        if i >= len(rows) and rhs[i]:
            return LinearSolution(False, None, [])
    reduced, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return LinearSolution(False, None, null_space(rows, ncols))
    x: Vec = {}
    for r, p in zip(reduced, pivots):
        c = r.get(ncols)
        if c:
            x[p] = c
    kernel = null_space(rows, ncols)
    if vec_sub(mat_vec(rows, x), {k: v for k, v in rhs.items() if v}):
        raise AssertionError("re-substitution failed")
    for v in kernel:
        if mat_vec(rows, v):
            raise AssertionError("null space re-substitution failed")
    return LinearSolution(True, x, kernel)


def invert(rows: Sequence[Vec], n: int) -> Optional[List[Vec]]:
    """Inverse of a square n x n matrix given by rows, or None when singular."""
    aug = []
    for i in range(n):
        row = dict(rows[i]) if i < len(rows) else {}
        row[n + i] = ONE
        aug.append(row)
    reduced, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        return None
    return [{c - n: v for c, v in r.items() if c >= n} for r in reduced[:n]]


# ---------------------------------------------------------- super structure
@dataclass(frozen=True)
class SuperVectorSpace:
    labels: Tuple[str, ...]
    parities: Tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.parities):
            raise ValueError("labels and parities differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate basis labels")

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> Tuple[int, int]:
        odd = sum(self.parities)
        return (len(self.parities) - odd, odd)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def parity_of(self, v: Vec) -> Optional[int]:
        """Parity of a homogeneous vector (None for zero or inhomogeneous)."""
        ps = {self.parities[k] for k in v}
        return ps.pop() if len(ps) == 1 else None


class LinearMap:
    """Homogeneous linear map given by a sparse matrix ``{(row, col): Scalar}``."""

    __slots__ = ("n_rows", "n_cols", "entries", "parity")

    def __init__(self, n_rows: int, n_cols: int, entries: Dict[Tuple[int, int], Scalar], parity: int):
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.entries = {k: v for k, v in entries.items() if v}
        self.parity = parity % 2

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(n, n, {(i, i): ONE for i in range(n)}, 0)

    @classmethod
    def from_columns(cls, n_rows: int, columns: Sequence[Vec], parity: int) -> "LinearMap":
        ent = {(r, c): v for c, col in enumerate(columns) for r, v in col.items()}
        return cls(n_rows, len(columns), ent, parity)

    def column(self, j: int) -> Vec:
        return {r: v for (r, c), v in self.entries.items() if c == j}

    def columns(self) -> List[Vec]:
        cols: List[Vec] = [dict() for _ in range(self.n_cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def apply(self, x: Vec) -> Vec:
        out: Vec = {}
        for (r, c), v in self.entries.items():
            xc = x.get(c)
            if xc is not None:
                nv = out.get(r, ZERO) + v * xc
                if nv:
                    out[r] = nv
                else:
                    out.pop(r, None)
        return out

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        by_row: Dict[int, List[Tuple[int, Scalar]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: Dict[Tuple[int, int], Scalar] = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                key = (r, c)
                out[key] = out.get(key, ZERO) + a * b
        return LinearMap(self.n_rows, other.n_cols, out, self.parity + other.parity)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, ZERO) + v
        return LinearMap(self.n_rows, self.n_cols, out, self.parity)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + other.scale(-ONE)

    def scale(self, a) -> "LinearMap":
        a = as_scalar(a)
        return LinearMap(self.n_rows, self.n_cols, {k: a * v for k, v in self.entries.items()}, self.parity)

    def supercommutator(self, other: "LinearMap") -> "LinearMap":
        sign = -1 if (self.parity and other.parity) else 1
        return (self @ other) - (other @ self).scale(sign)

    def flatten(self) -> Vec:
        return {r * self.n_cols + c: v for (r, c), v in self.entries.items()}

    @classmethod
    def unflatten(cls, v: Vec, n_rows: int, n_cols: int, parity: int) -> "LinearMap":
        return cls(n_rows, n_cols, {divmod(k, n_cols): x for k, x in v.items()}, parity)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinearMap) and self.n_rows == other.n_rows
                and self.n_cols == other.n_cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.n_rows, self.n_cols, frozenset(self.entries.items())))

    def to_dense(self) -> List[List[Scalar]]:
        m = [[ZERO] * self.n_cols for _ in range(self.n_rows)]
        for (r, c), v in self.entries.items():
            m[r][c] = v
        return m

    def respects_parity(self, source: SuperVectorSpace, target: SuperVectorSpace) -> bool:
        return all((target.parities[r] - source.parities[c] - self.parity) % 2 == 0
                   for (r, c) in self.entries)

    def __repr__(self):
        return f"LinearMap({self.n_rows}x{self.n_cols}, parity={self.parity}, nnz={len(self.entries)})"
