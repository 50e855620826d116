"""Matrix Lie superalgebras gl(m|n), pe(N), q(N) and central quotients.

All brackets are computed from explicit supermatrices, so these algebras
serve as independent targets for the explicit TKK isomorphisms.
"""
from __future__ import annotations

from typing import Dict, Optional, Sequence, Tuple

from .algebra import StructureSuperalgebra
from .linalg import Echelon, SuperVectorSpace, Vec, vec_axpy
from .scalar import ONE, Scalar

Matrix = Dict[Tuple[int, int], Scalar]


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    by_row: Dict[int, list] = {}
    for (r, c), v in b.items():
        by_row.setdefault(r, []).append((c, v))
    out: Matrix = {}
    for (r, k), x in a.items():
        for c, y in by_row.get(k, ()):
            nv = out.get((r, c), Scalar(0)) + x * y
            if nv:
                out[(r, c)] = nv
            else:
                out.pop((r, c), None)
    return out


def supercommutator(a: Matrix, pa: int, b: Matrix, pb: int) -> Matrix:
    out = dict(_mat_mul(a, b))
    s = Scalar(1 if (pa and pb) else -1)
    for k, v in _mat_mul(b, a).items():
        nv = out.get(k, Scalar(0)) + s * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _flat(m: Matrix, size: int) -> Vec:
    return {r * size + c: v for (r, c), v in m.items()}


def matrix_lie_algebra(name: str, size: int, basis: Sequence[Tuple[str, int, Matrix]],
                       ) -> StructureSuperalgebra:
    """Lie superalgebra spanned by homogeneous ``size x size`` supermatrices."""
    ech = Echelon(track=True)
    for lab, _, m in basis:
        if not ech.add(_flat(m, size)):
            raise ValueError(f"{name}: {lab} is linearly dependent on earlier basis matrices")
    consts = {}
    for i, (li, pi, mi) in enumerate(basis):
        for j, (lj, pj, mj) in enumerate(basis):
            c = supercommutator(mi, pi, mj, pj)
            if not c:
                continue
            co = ech.coordinates(_flat(c, size))
            if co is None:
                raise ValueError(f"{name} not closed: [{li}, {lj}]")
            consts[(i, j)] = co
    space = SuperVectorSpace(tuple(b[0] for b in basis), tuple(b[1] for b in basis))
    g = StructureSuperalgebra(name, space, consts, "lie")
    g.meta["matrices"] = {b[0]: b[2] for b in basis}
    g.meta["matrix_size"] = size
    return g


def _lbl(prefix, i, j, big):
    return f"{prefix}{i}_{j}" if big else f"{prefix}{i}{j}"


def _E(i: int, j: int) -> Matrix:
    """Matrix unit with 1-based indices."""
    return {(i - 1, j - 1): Scalar(1)}


def _lin(*terms) -> Matrix:
    out: Matrix = {}
    for c, m in terms:
        for k, v in m.items():
            nv = out.get(k, Scalar(0)) + Scalar(c) * v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def make_gl(m: int, n: int) -> StructureSuperalgebra:
    N = m + n
    big = N > 9
    par = lambda i: 0 if i <= m else 1
    basis = [(_lbl("E", i, j, big), (par(i) + par(j)) % 2, _E(i, j))
             for i in range(1, N + 1) for j in range(1, N + 1)]
    basis.sort(key=lambda b: b[1])
    return matrix_lie_algebra(f"gl({m}|{n})", N, basis)


def pe_basis(N: int):
    """Labelled supermatrices of pe(N) inside gl(N|N).

    ``X`` (xbar) is even with ``X_ij = E_ij - E_{j+N,i+N}``; ``B`` (betabar,
    symmetric upper block, i <= j) and ``C`` (gammabar, antisymmetric lower
    block, i < j) are odd.
    """
    big = N > 9
    r = range(1, N + 1)
    basis = [(_lbl("X", i, j, big), 0, _lin((1, _E(i, j)), (-1, _E(j + N, i + N))))
             for i in r for j in r]
    basis += [(_lbl("B", i, j, big), 1, _lin((1, _E(i, j + N)), (1, _E(j, i + N))) if i != j
               else _lin((2, _E(i, i + N))))
              for i in r for j in r if i <= j]
    basis += [(_lbl("C", i, j, big), 1, _lin((1, _E(i + N, j)), (-1, _E(j + N, i))))
              for i in r for j in r if i < j]
    return basis


def make_pe(N: int) -> StructureSuperalgebra:
    g = matrix_lie_algebra(f"pe({N})", 2 * N, pe_basis(N))
    g.meta.update(family="pe", N=N)
    return g


def make_q(N: int) -> StructureSuperalgebra:
    """q(N): Y_ij = E_ij + E_{i+N,j+N} (even), T_ij = E_{i+N,j} + E_{i,j+N} (odd)."""
    big = N > 9
    r = range(1, N + 1)
    basis = [(_lbl("Y", i, j, big), 0, _lin((1, _E(i, j)), (1, _E(i + N, j + N))))
             for i in r for j in r]
    basis += [(_lbl("T", i, j, big), 1, _lin((1, _E(i + N, j)), (1, _E(i, j + N))))
              for i in r for j in r]
    g = matrix_lie_algebra(f"q({N})", 2 * N, basis)
    g.meta.update(family="q", N=N)
    return g


class CentralQuotient:
    """g / <c> for a central even vector c, by echelon reduction modulo c.

    The quotient basis is the basis of ``g`` without the pivot (first nonzero
    coordinate) of ``c``.
    """

    def __init__(self, g: StructureSuperalgebra, c: Vec, name: Optional[str] = None):
        for k in range(len(g)):
            if g.bracket(c, {k: ONE}):
                raise ValueError(f"{g.labels[k]} does not commute with the quotient vector")
        self.parent = g
        self.pivot = min(c)
        inv = ONE / c[self.pivot]
        self.c = {k: v * inv for k, v in c.items()}
        self.keep = [k for k in range(len(g)) if k != self.pivot]
        self.position = {k: n for n, k in enumerate(self.keep)}
        consts = {}
        for a, ka in enumerate(self.keep):
            for b, kb in enumerate(self.keep):
                v = self.project(g.basis_product(ka, kb))
                if v:
                    consts[(a, b)] = v
        space = SuperVectorSpace(tuple(g.labels[k] for k in self.keep),
                                 tuple(g.parities[k] for k in self.keep))
        self.algebra = StructureSuperalgebra(name or f"{g.name}/<c>", space, consts, "lie")

    def project(self, v: Vec) -> Vec:
        v = dict(v)
        t = v.get(self.pivot)
        if t:
            vec_axpy(v, -t, self.c)
        return {self.position[k]: x for k, x in v.items()}


def make_pq(N: int) -> CentralQuotient:
    q = make_q(N)
    ident = {q.index(_lbl("Y", i, i, N > 9)): ONE for i in range(1, N + 1)}
    return CentralQuotient(q, ident, f"pq({N})")
