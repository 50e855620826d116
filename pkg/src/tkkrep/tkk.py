"""TKK Lie superalgebras of unital Jordan superalgebras.

``tkk_construct`` builds J^- + istr(J) + J^+ or J^- + str(J) + J^+ with its
3-grading.  The module also checks the explicit isomorphisms onto the
periplectic and queer matrix superalgebras and builds the Cayley
automorphism ``exp(i/2 ad e^-) exp(i ad e^+)``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .algebra import (OperatorSubalgebra, StructureSuperalgebra, check_jordan,
                      find_unit, istr_algebra, left_mult, str_algebra)
from .classical import CentralQuotient, make_pe, make_pq
from .errors import JordanAxiomFailure, NotUnital
from .linalg import Echelon, LinearMap, SuperVectorSpace, Vec, rank, vec_axpy
from .scalar import HALF, I, ONE, Scalar, as_scalar

log = logging.getLogger(__name__)

VARIANTS = ("istr", "str")


@dataclass
class TKKAlgebra:
    """3-graded Lie superalgebra J^- + g0 + J^+ built from a unital Jordan J."""

    jordan: StructureSuperalgebra
    variant: str
    g0: OperatorSubalgebra
    lie: StructureSuperalgebra
    unit: Vec
    notes: List[str] = field(default_factory=list)

    @property
    def d(self) -> int:
        return len(self.jordan)

    @property
    def r(self) -> int:
        return len(self.g0)

    def __len__(self) -> int:
        return len(self.lie)

    def minus(self, i: int) -> int:
        return i

    def zero(self, a: int) -> int:
        return self.d + a

    def plus(self, i: int) -> int:
        return self.d + self.r + i

    def grade(self, k: int) -> int:
        if k < self.d:
            return -1
        return 0 if k < self.d + self.r else 1

    def embed(self, x: Vec, part: str) -> Vec:
        """Image of a Jordan vector in J^- (``"-"``), J^+ (``"+"``) or as L_x (``"L"``)."""
        off = {"-": 0, "L": self.d, "+": self.d + self.r}[part]
        return {off + i: v for i, v in x.items()}

    @property
    def e_minus(self) -> Vec:
        return self.embed(self.unit, "-")

    @property
    def e_plus(self) -> Vec:
        return self.embed(self.unit, "+")

    def bracket(self, x: Vec, y: Vec) -> Vec:
        return self.lie.bracket(x, y)

    @property
    def labels(self):
        return self.lie.labels


def tkk_construct(J: StructureSuperalgebra, variant: str = "str",
                  verify_jordan: bool = True) -> TKKAlgebra:
    """Build TKK(J) with brackets

    ``[x,u] = 2L_{xu} + 2[L_x,L_u]``, ``[L_a,x] = ax``, ``[L_a,u] = -au``,
    ``[D,x] = Dx``, ``[D,u] = Du`` and ``[x,y] = [u,v] = 0``.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    if verify_jordan:
        ce = check_jordan(J)
        if ce is not None:
            raise JordanAxiomFailure(f"{J.name} is not Jordan: {ce.kind} at {ce.labels}")
    unit = find_unit(J)
    g0 = str_algebra(J) if variant == "str" else istr_algebra(J)
    notes = []
    if variant == "istr":
        full = str_algebra(J)
        if len(full) == len(g0):
            notes.append("Der(J) = Inn(J): the istr and str variants coincide")
    d, r = len(J), len(g0)
    p = J.parities
    p0 = [A.parity for A in g0.basis]
    s0 = g0.compute_structure()
    Ls = [left_mult(J, {i: ONE}) for i in range(d)]
    consts: Dict[Tuple[int, int], Vec] = {}

    def put(a, b, v):
        if v:
            consts[(a, b)] = v

    def sgn(a, b):
        return Scalar(-1) if (a and b) else ONE

    mi = lambda i: i
    zi = lambda a: d + a
    pi = lambda i: d + r + i
    # g0 x g0
    for (a, b), v in s0.constants.items():
        put(zi(a), zi(b), {zi(k): c for k, c in v.items()})
    # g0 x J^{+-}
    for a, A in enumerate(g0.basis):
        cols = A.columns()
        is_L = g0.kinds[a] == "L"
        for i in range(d):
            img = cols[i]
            plus_img = {pi(k): c for k, c in img.items()}
            minus_img = {mi(k): (-c if is_L else c) for k, c in img.items()}
            put(zi(a), pi(i), plus_img)
            put(zi(a), mi(i), minus_img)
            s = -sgn(p0[a], p[i])
            put(pi(i), zi(a), {k: s * c for k, c in plus_img.items()})
            put(mi(i), zi(a), {k: s * c for k, c in minus_img.items()})
    # J^+ x J^-
    for i in range(d):
        for j in range(d):
            M = Ls[i].supercommutator(Ls[j]).scale(2)
            w = J.basis_product(i, j)
            for k, c in w.items():
                M = M + Ls[k].scale(2 * c)
            if M.is_zero():
                continue
            co = g0.coordinates(M)
            if co is None:
                raise ValueError("2L_{xu} + 2[L_x, L_u] fell outside g0")
            v = {zi(k): c for k, c in co.items()}
            put(pi(i), mi(j), v)
            s = -sgn(p[i], p[j])
            put(mi(j), pi(i), {k: s * c for k, c in v.items()})
    labels = ([f"{l}-" for l in J.labels] + list(g0.labels) + [f"{l}+" for l in J.labels])
    parities = tuple(p) + tuple(p0) + tuple(p)
    space = SuperVectorSpace(tuple(labels), parities)
    name = f"TKK_{variant}({J.name})"
    lie = StructureSuperalgebra(name, space, consts, "lie")
    for note in notes:
        log.info("%s: %s", name, note)
    return TKKAlgebra(J, variant, g0, lie, unit, notes)


def check_grading(g: TKKAlgebra) -> Optional[Tuple[int, int]]:
    """First basis pair whose bracket leaves g_{i+j} (None when graded)."""
    for (a, b), v in sorted(g.lie.constants.items()):
        target = g.grade(a) + g.grade(b)
        if any(g.grade(k) != target for k in v):
            return (a, b)
    return None


# ------------------------------------------------------------ isomorphisms
@dataclass
class PhiCheck:
    passed: bool
    failing_pair: Optional[Tuple[str, str]] = None
    reason: str = ""
    source_dim: Tuple[int, int] = (0, 0)
    image_rank: int = 0
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"passed": self.passed,
                "failing_pair": list(self.failing_pair) if self.failing_pair else None,
                "reason": self.reason, "source_dim": list(self.source_dim),
                "image_rank": self.image_rank, "details": self.details}


class LieMorphism:
    """Linear map between structure Lie superalgebras, column k = image of basis k."""

    def __init__(self, source: StructureSuperalgebra, target: StructureSuperalgebra,
                 columns: List[Vec]):
        self.source = source
        self.target = target
        self.columns = columns

    def __call__(self, v: Vec) -> Vec:
        out: Vec = {}
        for k, c in v.items():
            vec_axpy(out, c, self.columns[k])
        return out

    def first_failing_pair(self) -> Optional[Tuple[int, int]]:
        g, h = self.source, self.target
        n = len(g)
        for a in range(n):
            for b in range(a, n):
                lhs = self(g.basis_product(a, b))
                rhs = h.bracket(self.columns[a], self.columns[b])
                if lhs != rhs:
                    return (a, b)
        return None

    def rank(self) -> int:
        return rank(self.columns)


def extend_on_generators(g: TKKAlgebra, target: StructureSuperalgebra,
                         assignment: List[Tuple[Vec, Vec]]):
    """Linear map defined on generators, extended through ``[L_a, L_b]`` brackets.

    ``assignment`` pairs vectors of ``g`` with intended images.  Images of
    the inner derivations are forced by the homomorphism property, so every
    ``[L_a, L_b]`` is added as an extra generator with image
    ``[phi(L_a), phi(L_b)]``.  Returns ``(morphism, inconsistent_index)``.
    """
    gens = list(assignment)
    images_L = {}
    d = g.d
    for src, img in assignment:
        if len(src) == 1:
            (k, c), = src.items()
            if d <= k < 2 * d:
                images_L[k - d] = {t: w / c for t, w in img.items()}
    if len(images_L) == d:
        for a in range(d):
            for b in range(d):
                src = g.bracket(g.embed({a: ONE}, "L"), g.embed({b: ONE}, "L"))
                if src:
                    gens.append((src, target.bracket(images_L[a], images_L[b])))
    ech = Echelon(track=True)
    for src, _ in gens:
        ech.add(src)
    columns = []
    for k in range(len(g)):
        co = ech.coordinates({k: ONE})
        if co is None:
            return None, None
        img: Vec = {}
        for n, c in co.items():
            vec_axpy(img, c, gens[n][1])
        columns.append(img)
    phi = LieMorphism(g.lie, target, columns)
    for n, (src, img) in enumerate(gens):
        if phi(src) != img:
            return phi, n
    return phi, None


def _lbl(prefix, i, j, big):
    return f"{prefix}{i}_{j}" if big else f"{prefix}{i}{j}"


def periplectic_assignment(g: TKKAlgebra, pe: StructureSuperalgebra) -> Dict[str, Tuple[Vec, Vec]]:
    """Generator images of the explicit TKK(JPe(n)) -> pe(2n) isomorphism.

    Keys are human-readable generator names (``"b12+"``, ``"2L[g11]"``, ``"D_p"``).
    """
    J = g.jordan
    n = J.meta["n"]
    N = 2 * n
    bigJ, bigP = n > 9, N > 9
    X = lambda i, j: {pe.index(_lbl("X", i, j, bigP)): ONE}

    def B(i, j):  # betabar, symmetric
        i, j = min(i, j), max(i, j)
        return {pe.index(_lbl("B", i, j, bigP)): ONE}

    def C(i, j):  # gammabar, antisymmetric
        if i == j:
            return {}
        if i < j:
            return {pe.index(_lbl("C", i, j, bigP)): ONE}
        return {pe.index(_lbl("C", j, i, bigP)): -ONE}

    def lin(*terms):
        out: Vec = {}
        for c, v in terms:
            vec_axpy(out, as_scalar(c), v)
        return out

    out = {}
    jv = lambda lab: {J.index(lab): ONE}
    r = range(1, n + 1)
    for i in r:
        for j in r:
            x = _lbl("x", i, j, bigJ)
            out[f"{x}-"] = (g.embed(jv(x), "-"), X(2 * j - 1, 2 * i))
            out[f"{x}+"] = (g.embed(jv(x), "+"), X(2 * j, 2 * i - 1))
            out[f"2L[{x}]"] = (g.embed({J.index(x): Scalar(2)}, "L"),
                               lin((1, X(2 * j, 2 * i)), (-1, X(2 * j - 1, 2 * i - 1))))
            if i < j:
                b = _lbl("b", i, j, bigJ)
                out[f"{b}-"] = (g.embed(jv(b), "-"), lin((-1, C(2 * i, 2 * j))))
                out[f"{b}+"] = (g.embed(jv(b), "+"), C(2 * i - 1, 2 * j - 1))
                out[f"2L[{b}]"] = (g.embed({J.index(b): Scalar(2)}, "L"),
                                   lin((1, C(2 * i - 1, 2 * j)), (1, C(2 * i, 2 * j - 1))))
            if i <= j:
                c = _lbl("g", i, j, bigJ)
                out[f"{c}-"] = (g.embed(jv(c), "-"), B(2 * i - 1, 2 * j - 1))
                out[f"{c}+"] = (g.embed(jv(c), "+"), lin((-1, B(2 * i, 2 * j))))
                out[f"2L[{c}]"] = (g.embed({J.index(c): Scalar(2)}, "L"),
                                   lin((1, B(2 * i, 2 * j - 1)), (1, B(2 * i - 1, 2 * j))))
    return out


def derivation_dp(J: StructureSuperalgebra) -> LinearMap:
    """D_p on JPe(n): 0 on x, -2 on b (beta), +2 on g (gamma)."""
    ent = {}
    for k, lab in enumerate(J.labels):
        if lab.startswith("b"):
            ent[(k, k)] = Scalar(-2)
        elif lab.startswith("g"):
            ent[(k, k)] = Scalar(2)
    return LinearMap(len(J), len(J), ent, 0)


def derivation_dq(J: StructureSuperalgebra) -> LinearMap:
    """D_q on JQ(n): y -> 0, t_ij (theta) -> 2 y_ij."""
    ent = {}
    for k, lab in enumerate(J.labels):
        if lab.startswith("t"):
            ent[(J.index("y" + lab[1:]), k)] = Scalar(2)
    return LinearMap(len(J), len(J), ent, 1)


def _run_phi_check(g: TKKAlgebra, target: StructureSuperalgebra,
                   assignment: Dict[str, Tuple[Vec, Vec]]) -> Tuple[PhiCheck, Optional[LieMorphism]]:
    items = list(assignment.items())
    phi, bad = extend_on_generators(g, target, [v for _, v in items])
    if phi is None:
        return PhiCheck(False, reason="generators do not span the TKK algebra",
                        source_dim=g.lie.dim), None
    if bad is not None:
        if bad < len(items):
            pair = (items[bad][0], "(generator)")
        else:
            pair = ("[L_a, L_b]", f"generator #{bad}")
        return PhiCheck(False, pair, "assignment inconsistent with linearity",
                        g.lie.dim), phi
    fp = phi.first_failing_pair()
    if fp is not None:
        a, b = fp
        return PhiCheck(False, (g.labels[a], g.labels[b]), "bracket not preserved",
                        g.lie.dim, phi.rank()), phi
    return PhiCheck(True, None, "", g.lie.dim, phi.rank()), phi


def verify_phi_periplectic(n: int, variant: str = "str",
                           mutate: Optional[Callable[[dict], None]] = None) -> PhiCheck:
    """Check the explicit isomorphism TKK(JPe(n)) -> pe(2n) (str) or spe(2n) (istr).

    ``mutate`` may edit the generator assignment in place (used by mutation tests).
    """
    from .algebra import make_jpe
    J = make_jpe(n)
    g = tkk_construct(J, variant)
    pe = make_pe(2 * n)
    assignment = periplectic_assignment(g, pe)
    if variant == "str":
        co = g.g0.coordinates(derivation_dp(J))
        if co is None:
            return PhiCheck(False, reason="D_p is not in Der(JPe(n))", source_dim=g.lie.dim)
        trace = {pe.index(_lbl("X", i, i, 2 * n > 9)): ONE for i in range(1, 2 * n + 1)}
        assignment["D_p"] = (g.embed(co, "L"), trace)
    if mutate is not None:
        mutate(assignment)
    res, phi = _run_phi_check(g, pe, assignment)
    if not res.passed:
        return res
    # target: pe(2n) itself, or spe(2n) = {tr(a) = 0}
    N = 2 * n
    if variant == "str":
        target_dim = len(pe)
        inside = True
    else:
        tr_idx = [pe.index(_lbl("X", i, i, N > 9)) for i in range(1, N + 1)]
        target_dim = len(pe) - 1
        inside = all(sum((col.get(k, Scalar(0)) for k in tr_idx), Scalar(0)).is_zero()
                     for col in phi.columns)
    res.details = {"target": "pe(%d)" % N if variant == "str" else "spe(%d)" % N,
                   "target_dim": target_dim, "image_in_target": inside}
    if not inside:
        res.passed, res.reason = False, "image leaves spe(2n)"
    elif res.image_rank != len(g) or len(g) != target_dim:
        res.passed, res.reason = False, "not bijective onto the target"
    return res


def queer_assignment(g: TKKAlgebra, pq: CentralQuotient) -> Dict[str, Tuple[Vec, Vec]]:
    J = g.jordan
    n = J.meta["n"]
    N = 2 * n
    q = pq.parent
    bigJ, bigP = n > 9, N > 9
    Y = lambda i, j: {q.index(_lbl("Y", i, j, bigP)): ONE}
    T = lambda i, j: {q.index(_lbl("T", i, j, bigP)): ONE}

    def lin(*terms):
        out: Vec = {}
        for c, v in terms:
            vec_axpy(out, as_scalar(c), v)
        return pq.project(out)

    out = {}
    r = range(1, n + 1)
    for i in r:
        for j in r:
            for fam, M in (("y", Y), ("t", T)):
                lab = _lbl(fam, i, j, bigJ)
                jv = {J.index(lab): ONE}
                out[f"{lab}-"] = (g.embed(jv, "-"), lin((1, M(2 * i - 1, 2 * j))))
                out[f"{lab}+"] = (g.embed(jv, "+"), lin((1, M(2 * i, 2 * j - 1))))
                out[f"2L[{lab}]"] = (g.embed({J.index(lab): Scalar(2)}, "L"),
                                     lin((1, M(2 * i, 2 * j)), (-1, M(2 * i - 1, 2 * j - 1))))
    return out


def verify_phi_queer(n: int, variant: str = "istr",
                     mutate: Optional[Callable[[dict], None]] = None) -> PhiCheck:
    """Check TKK(JQ(n)) -> psq(2n) (istr) or pq(2n) (str, with D_q -> sum of T_ii)."""
    from .algebra import make_jq
    J = make_jq(n)
    g = tkk_construct(J, variant)
    N = 2 * n
    pq = make_pq(N)
    target = pq.algebra
    q = pq.parent
    assignment = queer_assignment(g, pq)
    T_ii = [q.index(_lbl("T", i, i, N > 9)) for i in range(1, N + 1)]
    if variant == "str":
        co = g.g0.coordinates(derivation_dq(J))
        if co is None:
            return PhiCheck(False, reason="D_q is not in Der(JQ(n))", source_dim=g.lie.dim)
        assignment["D_q"] = (g.embed(co, "L"), pq.project({k: ONE for k in T_ii}))
    if mutate is not None:
        mutate(assignment)
    res, phi = _run_phi_check(g, target, assignment)
    if not res.passed:
        return res
    T_pos = [pq.position[k] for k in T_ii]
    if variant == "str":
        target_dim, inside = len(target), True
    else:
        target_dim = len(target) - 1  # psq = sq / <I>, sq = {tr(b) = 0}
        inside = all(sum((col.get(k, Scalar(0)) for k in T_pos), Scalar(0)).is_zero()
                     for col in phi.columns)
    # grading images: phi(J^+) = span{Y_{2i,2j-1}, T_{2i,2j-1}}
    plus_imgs = [phi.columns[g.plus(i)] for i in range(g.d)]
    expected = [pq.project({q.index(_lbl(F, 2 * i, 2 * j - 1, N > 9)): ONE})
                for F in ("Y", "T") for i in range(1, n + 1) for j in range(1, n + 1)]
    grading_ok = rank(plus_imgs) == rank(expected) == rank(plus_imgs + expected)
    res.details = {"target": ("pq(%d)" if variant == "str" else "psq(%d)") % N,
                   "target_dim": target_dim, "image_in_target": inside,
                   "plus_grading_image_ok": grading_ok}
    if not inside:
        res.passed, res.reason = False, "image leaves psq(2n)"
    elif res.image_rank != len(g) or len(g) != target_dim:
        res.passed, res.reason = False, "not bijective onto the target"
    elif not grading_ok:
        res.passed, res.reason = False, "phi(g_+) is not the expected span"
    return res


# ----------------------------------------------------------------- Cayley
class LieAutomorphism:
    """Even invertible linear map of a TKK algebra (complex scalars allowed)."""

    def __init__(self, g: TKKAlgebra, matrix: LinearMap, inverse: Optional[LinearMap] = None):
        self.g = g
        self.matrix = matrix
        self.inverse = inverse

    def __call__(self, v: Vec) -> Vec:
        return self.matrix.apply(v)

    def column(self, k: int) -> Vec:
        return self.matrix.column(k)

    def first_failing_pair(self) -> Optional[Tuple[int, int]]:
        g = self.g.lie
        cols = self.matrix.columns()
        n = len(g)
        for a in range(n):
            for b in range(a, n):
                lhs = self.matrix.apply(g.basis_product(a, b))
                rhs = g.bracket(cols[a], cols[b])
                if lhs != rhs:
                    return (a, b)
        return None

    def is_automorphism(self) -> bool:
        if self.matrix.parity != 0:
            return False
        if self.inverse is not None:
            if self.matrix @ self.inverse != LinearMap.identity(len(self.g)):
                return False
        elif rank(self.matrix.columns()) != len(self.g):
            return False
        return self.first_failing_pair() is None


def ad_matrix(g: TKKAlgebra, x: Vec) -> LinearMap:
    n = len(g)
    cols = [g.bracket(x, {k: ONE}) for k in range(n)]
    return LinearMap.from_columns(n, cols, 0)


def exp_nilpotent(A: LinearMap, max_order: int = 8) -> LinearMap:
    """exp(A) as a finite sum; raises if A is not nilpotent of order <= max_order."""
    n = A.n_rows
    term = LinearMap.identity(n)
    total = LinearMap.identity(n)
    k = 0
    while True:
        k += 1
        term = (A @ term).scale(Scalar(1) / k)
        if term.is_zero():
            return total
        if k > max_order:
            raise ValueError("operator is not nilpotent within the expected order")
        total = total + term


def cayley(g: TKKAlgebra) -> LieAutomorphism:
    """c = exp(i/2 ad e^-) exp(i ad e^+), with inverse exp(-i ad e^+) exp(-i/2 ad e^-)."""
    if not g.unit:
        raise NotUnital("Cayley transform needs the Jordan unit")
    am = ad_matrix(g, g.e_minus)
    ap = ad_matrix(g, g.e_plus)
    c = exp_nilpotent(am.scale(I * HALF)) @ exp_nilpotent(ap.scale(I))
    c_inv = exp_nilpotent(ap.scale(-I)) @ exp_nilpotent(am.scale(-I * HALF))
    return LieAutomorphism(g, c, c_inv)


def tkk_to_document(g: TKKAlgebra) -> dict:
    from .io import algebra_to_document
    doc = algebra_to_document(g.lie)
    doc["grading"] = [g.grade(k) for k in range(len(g))]
    doc["variant"] = g.variant
    return doc
