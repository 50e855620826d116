"""Finite-dimensional superalgebras given by structure constants.

Covers the Jordan families JGL(m|n), JPe(n), JQ(n) and the one-dimensional
algebra K, the Jordan and Lie axiom checkers, left multiplications,
(inner) derivations and the (inner) structure algebras.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import EmptyAlgebra, InvalidRank, NotUnital, ParityViolation
from .linalg import (Echelon, LinearMap, SuperVectorSpace, Vec, null_space, rref,
                     solve_linear, vec_axpy)
from .scalar import HALF, ONE, ZERO, Scalar, as_scalar

Constants = Dict[Tuple[int, int], Vec]

FLAVOURS = ("jordan", "lie", "associative-derived")


@dataclass
class StructureSuperalgebra:
    """Superalgebra with basis ``space`` and products ``constants[(i, j)] = {k: c}``.

    Missing keys mean a zero product.
    """

    name: str
    space: SuperVectorSpace
    constants: Constants
    flavour: str = "jordan"
    parameters: Tuple[str, ...] = ()
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.flavour not in FLAVOURS:
            raise ValueError(f"unknown flavour {self.flavour!r}")
        self.constants = {k: {m: as_scalar(c) for m, c in v.items() if as_scalar(c)}
                          for k, v in self.constants.items()}
        self.constants = {k: v for k, v in self.constants.items() if v}

    # --------------------------------------------------------------- basics
    @property
    def labels(self) -> Tuple[str, ...]:
        return self.space.labels

    @property
    def parities(self) -> Tuple[int, ...]:
        return self.space.parities

    def __len__(self) -> int:
        return len(self.space)

    @property
    def dim(self) -> Tuple[int, int]:
        return self.space.dim

    def index(self, label: str) -> int:
        return self.space.index(label)

    def basis_vector(self, label_or_index) -> Vec:
        i = label_or_index if isinstance(label_or_index, int) else self.index(label_or_index)
        return {i: ONE}

    def vector(self, coeffs: Dict[str, object]) -> Vec:
        return {self.index(k): as_scalar(v) for k, v in coeffs.items() if as_scalar(v)}

    def basis_product(self, i: int, j: int) -> Vec:
        return self.constants.get((i, j), {})

    def mul(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                prod = self.constants.get((i, j))
                if prod:
                    vec_axpy(out, a * b, prod)
        return out

    bracket = mul

    def parity_violations(self) -> List[Tuple[int, int, int]]:
        p = self.parities
        return [(i, j, k) for (i, j), v in self.constants.items() for k in v
                if p[k] != (p[i] + p[j]) % 2]

    def check_parity(self) -> None:
        bad = self.parity_violations()
        if bad:
            i, j, k = bad[0]
            raise ParityViolation(
                f"{self.labels[i]}*{self.labels[j]} has a component along {self.labels[k]} "
                "of the wrong parity")

    def format_vector(self, v: Vec) -> str:
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            parts.append(f"({v[k]})*{self.labels[k]}")
        return " + ".join(parts)

    def __repr__(self):
        m, n = self.dim
        return f"StructureSuperalgebra({self.name!r}, dim=({m}|{n}), flavour={self.flavour})"


# ---------------------------------------------------------------- builders
def _lbl(prefix: str, i: int, j: int, big: bool) -> str:
    return f"{prefix}{i}_{j}" if big else f"{prefix}{i}{j}"


def _from_products(name, even, odd, table, flavour="jordan") -> StructureSuperalgebra:
    labels = tuple(even) + tuple(odd)
    parities = (0,) * len(even) + (1,) * len(odd)
    index = {l: i for i, l in enumerate(labels)}
    constants: Constants = {}
    for (a, b), terms in table.items():
        vec: Vec = {}
        for lab, c in terms:
            vec_axpy(vec, as_scalar(c), {index[lab]: ONE})
        if vec:
            constants[(index[a], index[b])] = vec
    return StructureSuperalgebra(name, SuperVectorSpace(labels, parities), constants, flavour)


def make_rank1() -> StructureSuperalgebra:
    """The one-dimensional Jordan algebra K with ``e*e = e``."""
    return _from_products("K", ["e"], [], {("e", "e"): [("e", 1)]})


def make_jgl(m: int, n: int) -> StructureSuperalgebra:
    """JGL(m|n): all (m|n) matrices with ``x*y = (xy + (-1)^{|x||y|} yx)/2``."""
    if m < 0 or n < 0 or m + n < 1:
        raise EmptyAlgebra("JGL(m|n) needs m + n >= 1")
    N = m + n
    big = N > 9
    par = lambda i: 0 if i <= m else 1
    units = [(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
    even = [_lbl("E", i, j, big) for (i, j) in units if par(i) == par(j)]
    odd = [_lbl("E", i, j, big) for (i, j) in units if par(i) != par(j)]
    table = {}
    for (i, j) in units:
        for (k, l) in units:
            s = -1 if (par(i) != par(j) and par(k) != par(l)) else 1
            terms = []
            if j == k:
                terms.append((_lbl("E", i, l, big), HALF))
            if l == i:
                terms.append((_lbl("E", k, j, big), HALF * s))
            if terms:
                table[(_lbl("E", i, j, big), _lbl("E", k, l, big))] = terms
    alg = _from_products(f"JGL({m}|{n})", even, odd, table)
    alg.meta.update(family="jgl", m=m, n=n)
    return alg


def make_jpe(n: int) -> StructureSuperalgebra:
    """Jordan-periplectic JPe(n): even x_ij, odd b_ij (i<j) and g_ij (i<=j).

    ``b`` stands for the antisymmetric family (beta) and ``g`` for the
    symmetric one (gamma); the product table is the one for the basis
    ``x_ij = E_ij + E_{j+n,i+n}``, ``b_ij = E_{i,j+n} - E_{j,i+n}``,
    ``g_ij = E_{i+n,j} + E_{j+n,i}``.
    """
    if not isinstance(n, int) or n < 2:
        raise InvalidRank("JPe(n) requires n >= 2")
    big = n > 9
    r = range(1, n + 1)
    X = lambda i, j: _lbl("x", i, j, big)

    def B(i, j):  # antisymmetric: b_ji = -b_ij, b_ii = 0
        if i == j:
            return None, 0
        return (_lbl("b", i, j, big), 1) if i < j else (_lbl("b", j, i, big), -1)

    def G(i, j):  # symmetric
        return _lbl("g", min(i, j), max(i, j), big)

    even = [X(i, j) for i in r for j in r]
    odd = [B(i, j)[0] for i in r for j in r if i < j] + [G(i, j) for i in r for j in r if i <= j]
    table: Dict[Tuple[str, str], list] = {}

    def add(a, b, lab, c):
        if lab is None or not c:
            return
        table.setdefault((a, b), []).append((lab, c))

    def add_b(a, b, i, j, c):
        lab, s = B(i, j)
        add(a, b, lab, c * s)

    d = lambda a, b: 1 if a == b else 0
    for i, j, k, l in itertools.product(r, repeat=4):
        # x_ij . x_kl = (d_jk x_il + d_il x_kj)/2
        add(X(i, j), X(k, l), X(i, l), HALF * d(j, k))
        add(X(i, j), X(k, l), X(k, j), HALF * d(i, l))
    for i, j in itertools.product(r, repeat=2):
        for k, l in itertools.product(r, repeat=2):
            if k < l:
                bkl = B(k, l)[0]
                # x_ij . b_kl = (d_jk b_il - d_jl b_ik)/2, b . x = x . b
                for first, second in ((X(i, j), bkl), (bkl, X(i, j))):
                    add_b(first, second, i, l, HALF * d(j, k))
                    add_b(first, second, i, k, -HALF * d(j, l))
            if k <= l:
                gkl = G(k, l)
                # x_ij . g_kl = (d_ik g_jl + d_il g_jk)/2
                for first, second in ((X(i, j), gkl), (gkl, X(i, j))):
                    add(first, second, G(j, l), HALF * d(i, k))
                    add(first, second, G(j, k), HALF * d(i, l))
    for i, j in itertools.product(r, repeat=2):
        if i >= j:
            continue
        for k, l in itertools.product(r, repeat=2):
            if k > l:
                continue
            bij, gkl = B(i, j)[0], G(k, l)
            # b_ij . g_kl = (d_jk x_il + d_jl x_ik - d_ik x_jl - d_il x_jk)/2
            # g . b = -b . g (both odd)
            for first, second, s in ((bij, gkl, 1), (gkl, bij, -1)):
                add(first, second, X(i, l), HALF * d(j, k) * s)
                add(first, second, X(i, k), HALF * d(j, l) * s)
                add(first, second, X(j, l), -HALF * d(i, k) * s)
                add(first, second, X(j, k), -HALF * d(i, l) * s)
    alg = _from_products(f"JPe({n})", even, odd, table)
    alg.meta.update(family="jpe", n=n)
    return alg


def make_jq(n: int) -> StructureSuperalgebra:
    """Jordan-queer JQ(n): even y_ij, odd t_ij (theta), all 1 <= i, j <= n."""
    if not isinstance(n, int) or n < 2:
        raise InvalidRank("JQ(n) requires n >= 2")
    big = n > 9
    r = range(1, n + 1)
    Y = lambda i, j: _lbl("y", i, j, big)
    T = lambda i, j: _lbl("t", i, j, big)
    even = [Y(i, j) for i in r for j in r]
    odd = [T(i, j) for i in r for j in r]
    table: Dict[Tuple[str, str], list] = {}

    def add(a, b, lab, c):
        if c:
            table.setdefault((a, b), []).append((lab, c))

    d = lambda a, b: 1 if a == b else 0
    for i, j, k, l in itertools.product(r, repeat=4):
        add(Y(i, j), Y(k, l), Y(i, l), HALF * d(j, k))
        add(Y(i, j), Y(k, l), Y(k, j), HALF * d(i, l))
        for first, second in ((Y(i, j), T(k, l)), (T(k, l), Y(i, j))):
            add(first, second, T(i, l), HALF * d(j, k))
            add(first, second, T(k, j), HALF * d(i, l))
        add(T(i, j), T(k, l), Y(i, l), HALF * d(j, k))
        add(T(i, j), T(k, l), Y(k, j), -HALF * d(i, l))
    alg = _from_products(f"JQ({n})", even, odd, table)
    alg.meta.update(family="jq", n=n)
    return alg


# ----------------------------------------------------------- axiom checks
@dataclass
class Counterexample:
    """First failing basis tuple of an axiom check."""

    kind: str
    indices: Tuple[int, ...]
    labels: Tuple[str, ...]
    residual: Vec

    def as_dict(self) -> dict:
        return {"kind": self.kind, "labels": list(self.labels),
                "residual": {str(k): str(v) for k, v in sorted(self.residual.items())}}


def _sign(*pairs) -> int:
    s = 0
    for a, b in pairs:
        s += a * b
    return -1 if s % 2 else 1


def _scaled(v: Vec, s) -> Vec:
    return v if s == 1 else {k: -x for k, x in v.items()}


def check_jordan(J: StructureSuperalgebra) -> Optional[Counterexample]:
    """Return None if ``J`` is a Jordan superalgebra, else the first counterexample.

    Checks parity consistency, supercommutativity on basis pairs, and the
    cyclic identity in the left multiplications on every basis triple
    (evaluated on every basis vector).
    """
    lab = J.labels
    bad = J.parity_violations()
    if bad:
        i, j, k = min(bad)
        return Counterexample("parity", (i, j), (lab[i], lab[j]), J.basis_product(i, j))
    p = J.parities
    d = len(J)
    for i in range(d):
        for j in range(d):
            diff = dict(J.basis_product(i, j))
            vec_axpy(diff, Scalar(-_sign((p[i], p[j]))), J.basis_product(j, i))
            if diff:
                return Counterexample("supercommutativity", (i, j), (lab[i], lab[j]), diff)
    basis = [{i: ONE} for i in range(d)]

    def L(a: Vec, pa: int, b: Vec, pb: int, w: Vec) -> Vec:
        # [L_a, L_b](w) = a(bw) - (-1)^{|a||b|} b(aw)
        out = J.mul(a, J.mul(b, w))
        vec_axpy(out, Scalar(-_sign((pa, pb))), J.mul(b, J.mul(a, w)))
        return out

    # The cyclic sum is invariant under rotating (x, y, z), so triples with
    # x minimal cover everything and keep the lexicographic-first report.
    for x in range(d):
        for y in range(x, d):
            for z in range(x, d):
                px, py, pz = p[x], p[y], p[z]
                yz = J.basis_product(y, z)
                zx = J.basis_product(z, x)
                xy = J.basis_product(x, y)
                for w in range(d):
                    res: Vec = {}
                    if yz:
                        vec_axpy(res, Scalar(_sign((px, pz))), L(basis[x], px, yz, (py + pz) % 2, basis[w]))
                    if zx:
                        vec_axpy(res, Scalar(_sign((py, px))), L(basis[y], py, zx, (pz + px) % 2, basis[w]))
                    if xy:
                        vec_axpy(res, Scalar(_sign((pz, py))), L(basis[z], pz, xy, (px + py) % 2, basis[w]))
                    if res:
                        return Counterexample("jordan_identity", (x, y, z),
                                              (lab[x], lab[y], lab[z]), res)
    return None


def check_lie(g: StructureSuperalgebra) -> Optional[Counterexample]:
    """Return None if ``g`` is a Lie superalgebra, else the first counterexample."""
    lab = g.labels
    bad = g.parity_violations()
    if bad:
        i, j, k = min(bad)
        return Counterexample("parity", (i, j), (lab[i], lab[j]), g.basis_product(i, j))
    p = g.parities
    d = len(g)
    for i in range(d):
        for j in range(i, d):
            s = dict(g.basis_product(i, j))
            vec_axpy(s, Scalar(_sign((p[i], p[j]))), g.basis_product(j, i))
            if s:
                return Counterexample("skew_supersymmetry", (i, j), (lab[i], lab[j]), s)
    # The Jacobiator of a super skew bracket is graded-alternating, so sorted
    # triples (repetitions allowed) suffice.
    for a in range(d):
        for b in range(a, d):
            ab = g.basis_product(a, b)
            for c in range(b, d):
                bc = g.basis_product(b, c)
                ac = g.basis_product(a, c)
                res: Vec = {}
                if bc:
                    vec_axpy(res, ONE, g.bracket({a: ONE}, bc))
                if ab:
                    vec_axpy(res, -ONE, g.bracket(ab, {c: ONE}))
                if ac:
                    vec_axpy(res, Scalar(-_sign((p[a], p[b]))), g.bracket({b: ONE}, ac))
                if res:
                    return Counterexample("jacobi", (a, b, c), (lab[a], lab[b], lab[c]), res)
    return None


# ------------------------------------------------------- operators on J
def left_mult(J: StructureSuperalgebra, x: Vec) -> LinearMap:
    """L_x as a (dim J)x(dim J) matrix; x must be homogeneous."""
    d = len(J)
    px = J.space.parity_of(x)
    cols = [J.mul(x, {j: ONE}) for j in range(d)]
    return LinearMap.from_columns(d, cols, px or 0)


def _all_left_mults(J) -> List[LinearMap]:
    return [left_mult(J, {i: ONE}) for i in range(len(J))]


def is_derivation(J: StructureSuperalgebra, D: LinearMap) -> bool:
    p = J.parities
    d = len(J)
    cols = D.columns()
    for i in range(d):
        for j in range(d):
            lhs = D.apply(J.basis_product(i, j))
            rhs = J.mul(cols[i], {j: ONE})
            vec_axpy(rhs, Scalar(_sign((p[i], D.parity))), J.mul({i: ONE}, cols[j]))
            if lhs != rhs:
                return False
    return True


@dataclass
class OperatorSubalgebra:
    """Bracket-closed subspace of gl(J) with a chosen homogeneous basis.

    ``structure`` holds the induced Lie structure constants; ``kinds`` tags
    each basis map (e.g. ``"L"`` for left multiplications, ``"D"`` for
    derivations).
    """

    name: str
    ambient: StructureSuperalgebra
    basis: List[LinearMap]
    kinds: List[str]
    labels: List[str]
    structure: Optional[StructureSuperalgebra] = None
    derivation_part: Optional["OperatorSubalgebra"] = None
    _coords: Optional[Echelon] = field(default=None, repr=False)

    def __post_init__(self):
        self._coords = Echelon(track=True)
        for A in self.basis:
            if not self._coords.add(A.flatten()):
                raise ValueError(f"{self.name}: basis maps are linearly dependent")

    @property
    def dim(self) -> Tuple[int, int]:
        odd = sum(A.parity for A in self.basis)
        return (len(self.basis) - odd, odd)

    def __len__(self) -> int:
        return len(self.basis)

    def coordinates(self, A: LinearMap) -> Optional[Vec]:
        return self._coords.coordinates(A.flatten())

    def contains(self, A: LinearMap) -> bool:
        return self._coords.contains(A.flatten())

    def compute_structure(self) -> StructureSuperalgebra:
        """Induced brackets; raises ValueError if the span is not closed."""
        if self.structure is not None:
            return self.structure
        consts: Constants = {}
        for i, A in enumerate(self.basis):
            for j, B in enumerate(self.basis):
                C = A.supercommutator(B)
                if C.is_zero():
                    continue
                co = self.coordinates(C)
                if co is None:
                    raise ValueError(f"{self.name} is not closed under the bracket "
                                     f"([{self.labels[i]}, {self.labels[j]}])")
                consts[(i, j)] = co
        space = SuperVectorSpace(tuple(self.labels), tuple(A.parity for A in self.basis))
        self.structure = StructureSuperalgebra(self.name, space, consts, "lie")
        return self.structure


def _echelon_maps(maps: Sequence[LinearMap], d: int) -> List[LinearMap]:
    """Deterministic RREF basis of the span of homogeneous maps, parity by parity."""
    out = []
    for parity in (0, 1):
        rows = [A.flatten() for A in maps if A.parity == parity and not A.is_zero()]
        reduced, _ = rref(rows, d * d)
        out += [LinearMap.unflatten(r, d, d, parity) for r in reduced]
    return out


def inner_derivations(J: StructureSuperalgebra) -> OperatorSubalgebra:
    """Inn(J): span of all [L_x, L_y] over basis pairs, echelonised."""
    d = len(J)
    Ls = _all_left_mults(J)
    comms = [Ls[i].supercommutator(Ls[j]) for i in range(d) for j in range(i, d)]
    basis = _echelon_maps(comms, d)
    sub = OperatorSubalgebra(f"Inn({J.name})", J, basis, ["D"] * len(basis),
                             [f"I{k}" for k in range(len(basis))])
    sub.compute_structure()
    return sub


def _derivation_maps(J: StructureSuperalgebra, parity: int) -> List[LinearMap]:
    d = len(J)
    p = J.parities
    # unknown D[k][i] (D(z_i) = sum_k D[k][i] z_k), allowed iff p[k] = p[i] + parity
    unknowns = [(k, i) for i in range(d) for k in range(d) if p[k] == (p[i] + parity) % 2]
    col = {u: n for n, u in enumerate(unknowns)}
    by_i: Dict[int, List[int]] = {}
    for (k, i) in unknowns:
        by_i.setdefault(i, []).append(k)
    rows = []
    for i in range(d):
        for j in range(d):
            eq: Dict[int, Dict[int, Scalar]] = {}  # output coordinate -> row

            def put(m, u, c):
                r = eq.setdefault(m, {})
                nv = r.get(col[u], ZERO) + c
                if nv:
                    r[col[u]] = nv
                else:
                    r.pop(col[u], None)

            # D(z_i z_j)
            for k, c in J.basis_product(i, j).items():
                for m in by_i.get(k, ()):
                    put(m, (m, k), c)
            # - D(z_i) z_j
            for k in by_i.get(i, ()):
                for m, c in J.basis_product(k, j).items():
                    put(m, (k, i), -c)
            # - (-1)^{|z_i| parity} z_i D(z_j)
            s = Scalar(_sign((p[i], parity)))
            for k in by_i.get(j, ()):
                for m, c in J.basis_product(i, k).items():
                    put(m, (k, j), -s * c)
            rows.extend(r for r in eq.values() if r)
    kernel = null_space(rows, len(unknowns))
    maps = []
    for v in kernel:
        ent = {unknowns[n]: c for n, c in v.items()}
        maps.append(LinearMap(d, d, ent, parity))
    return maps


def derivations(J: StructureSuperalgebra) -> OperatorSubalgebra:
    """Der(J), even and odd, as the solution space of the derivation equations."""
    d = len(J)
    maps = _derivation_maps(J, 0) + _derivation_maps(J, 1)
    basis = _echelon_maps(maps, d)
    sub = OperatorSubalgebra(f"Der({J.name})", J, basis, ["D"] * len(basis),
                             [f"D{k}" for k in range(len(basis))])
    sub.compute_structure()
    return sub


def _structure(J, ders: OperatorSubalgebra, name) -> OperatorSubalgebra:
    Ls = _all_left_mults(J)
    labels = [f"L[{l}]" for l in J.labels] + list(ders.labels)
    sub = OperatorSubalgebra(name, J, Ls + list(ders.basis),
                             ["L"] * len(Ls) + ["D"] * len(ders.basis), labels)
    sub.compute_structure()
    sub.derivation_part = ders
    return sub


def str_algebra(J: StructureSuperalgebra) -> OperatorSubalgebra:
    """str(J) = {L_x} + Der(J), basis L_{z_1..z_d} followed by the Der basis."""
    return _structure(J, derivations(J), f"str({J.name})")


def istr_algebra(J: StructureSuperalgebra) -> OperatorSubalgebra:
    """istr(J) = {L_x} + Inn(J)."""
    return _structure(J, inner_derivations(J), f"istr({J.name})")


def find_unit(J: StructureSuperalgebra) -> Vec:
    """Solve ``e*z = z`` for all basis z; raises NotUnital unless unique."""
    d = len(J)
    rows: List[Vec] = []
    rhs: Vec = {}
    for i in range(d):
        for m in range(d):
            row = {}
            for k in range(d):
                c = J.basis_product(k, i).get(m)
                if c:
                    row[k] = c
            if i == m:
                rhs[len(rows)] = ONE
            rows.append(row)
    sol = solve_linear(rows, rhs, d)
    if not sol.consistent:
        raise NotUnital(f"{J.name} has no unit element")
    if sol.null_basis:
        raise NotUnital(f"{J.name}: unit element is not unique")
    return sol.particular
