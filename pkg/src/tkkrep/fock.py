"""Bessel-Fischer pairing, Gram/radical data, V_lambda and Fock quotients,
reproducing kernels, the intertwiner pi(C) and the Segal-Bargmann pair.

Truncation semantics: transforms act on ``V_N = P_{<=N}``.  Multiplication by
an exponential is truncated at degree N, while ``exp(t B(e))`` is a finite
sum on polynomials and is applied exactly.  With this convention ``pi_N(C)``
and ``pi_N(C)^{-1}`` are mutually inverse on ``V_N``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import StructureSuperalgebra, find_unit
from .errors import SingularGram
from .linalg import Echelon, Vec, invert, null_space, rref, transpose
from .realisation import BesselFamily, Character, Realisation, jordan_context
from .scalar import HALF, ONE, ZERO, Scalar, as_scalar
from .superpoly import (DEFAULT_TRUNCATION, DiffOperator, Mono, SuperPolynomial, TruncatedSeries,
                        VariableContext, _add, _apply_poly, apply, exp_series, mono_mul,
                        monomials_up_to, supercommutator)


# ------------------------------------------------------------- the pairing
class BesselFischer:
    """<p, q> = p(B) conj(q) evaluated at z = 0, with memoised B-words.

    For a canonical monomial ``s = z_f * s'`` (f the first variable present)
    ``s(B) = B(z_f) s'(B)``, so word applications are cached by ``(s, m)``.
    """

    def __init__(self, family: BesselFamily):
        self.family = family
        self.ctx = family.ctx
        self._ops = [family(k) for k in range(len(family.J))]
        self._word: Dict[Tuple[Mono, Mono], Dict[Mono, Scalar]] = {}
        self._single: Dict[Tuple[int, Mono], Dict[Mono, Scalar]] = {}

    def _apply_B(self, f: int, poly: Dict[Mono, Scalar]) -> Dict[Mono, Scalar]:
        out: Dict[Mono, Scalar] = {}
        ctx = self.ctx
        for m, c in poly.items():
            img = self._single.get((f, m))
            if img is None:
                img = _apply_poly(self._ops[f], SuperPolynomial(ctx, {m: ONE})).terms
                self._single[(f, m)] = img
            for k, v in img.items():
                _add(out, k, c * v)
        return out

    def word(self, s: Mono, m: Mono) -> Dict[Mono, Scalar]:
        """s(B) applied to the monomial m."""
        key = (s, m)
        hit = self._word.get(key)
        if hit is not None:
            return hit
        if not any(s):
            res = {m: ONE}
        else:
            f = next(i for i, e in enumerate(s) if e)
            rest = list(s)
            rest[f] -= 1
            inner = self.word(tuple(rest), m)
            res = self._apply_B(f, inner) if inner else {}
        self._word[key] = res
        return res

    def pair_monomials(self, p: Mono, q: Mono) -> Scalar:
        return self.word(tuple(p), tuple(q)).get(self.ctx.one, ZERO)

    def pair(self, p: SuperPolynomial, q: SuperPolynomial) -> Scalar:
        """Sesquilinear: linear in p, conjugate-linear in q."""
        total = ZERO
        for a, ca in p.terms.items():
            for b, cb in q.terms.items():
                v = self.pair_monomials(a, b)
                if v:
                    total = total + ca * cb.conj() * v
        return total


def degree_orthogonality_check(engine: BesselFischer, max_degree: int) -> dict:
    """<p, q> = 0 for all monomials of unequal degrees <= max_degree.

    For each q every canonical word ``s = z_f s'`` is built from ``s'`` by one
    more Bessel application (f at most the smallest index of s').  Words whose
    image is already zero are pruned, since every extension stays zero.
    """
    ctx = engine.ctx
    n = ctx.n
    dims = [len(ctx.monomials(k)) for k in range(max_degree + 1)]
    applications = 0
    for b in range(max_degree + 1):
        for q in ctx.monomials(b):
            frontier = [(n - 1, {q: ONE})]
            for a in range(1, max_degree + 1):
                nxt = []
                for lim, poly in frontier:
                    for f in range(lim + 1):
                        r = engine._apply_B(f, poly)
                        applications += 1
                        if not r:
                            continue
                        if a != b and r.get(ctx.one):
                            return {"passed": False, "max_degree": max_degree,
                                    "failing": [f"degree {a} word starting {ctx.names[f]}",
                                                ctx.render_mono(q)]}
                        nxt.append((f, r))
                frontier = nxt
                if not frontier:
                    break
    pairs = sum(dims[a] * dims[b] for a in range(len(dims)) for b in range(len(dims)) if a != b)
    return {"passed": True, "max_degree": max_degree, "pairs": pairs,
            "applications": applications, "failing": None}


def bessel_fischer(p: SuperPolynomial, q: SuperPolynomial, lam: Character,
                   J: Optional[StructureSuperalgebra] = None) -> Scalar:
    J = J or lam.algebra.ambient
    return BesselFischer(BesselFamily(J, lam, p.ctx)).pair(p, q)


def _engine(J, lam, engine) -> BesselFischer:
    if engine is not None:
        return engine
    return BesselFischer(BesselFamily(J or lam.algebra.ambient, lam))


# ------------------------------------------------------------------ Gram
@dataclass
class GramData:
    degree: int
    ctx: VariableContext
    basis: List[Mono]
    matrix: List[Vec]
    radical: List[Vec]

    @property
    def size(self) -> int:
        return len(self.basis)

    @property
    def radical_dim(self) -> int:
        return len(self.radical)

    def entry(self, i: int, j: int) -> Scalar:
        return self.matrix[i].get(j, ZERO)

    def radical_polys(self) -> List[SuperPolynomial]:
        return [SuperPolynomial(self.ctx, {self.basis[k]: c for k, c in v.items()})
                for v in self.radical]

    def as_dict(self) -> dict:
        n = self.size
        return {"degree": self.degree,
                "basis": [self.ctx.render_mono(m) for m in self.basis],
                "matrix": [[str(self.entry(i, j)) for j in range(n)] for i in range(n)],
                "radical_dim": self.radical_dim,
                "radical": [str(p) for p in self.radical_polys()]}


def gram(J: Optional[StructureSuperalgebra], lam: Character, k: int,
         engine: Optional[BesselFischer] = None) -> GramData:
    """Gram matrix of the pairing on the monomial basis of P_k and its radical.

    The radical is the left radical ``{p : <p, q> = 0 for all q}``.
    """
    eng = _engine(J, lam, engine)
    basis = eng.ctx.monomials(k)
    rows = []
    for p in basis:
        row = {}
        for j, q in enumerate(basis):
            v = eng.pair_monomials(p, q)
            if v:
                row[j] = v
        rows.append(row)
    radical = null_space(transpose(rows, len(basis)), len(basis))
    return GramData(k, eng.ctx, basis, rows, radical)


def sesquilinear_superhermitian_report(J: Optional[StructureSuperalgebra], lam: Character, k: int,
                                       engine: Optional[BesselFischer] = None) -> dict:
    """Check <p,q> = (-1)^{|p||q|} conj(<q,p>) on monomial pairs up to degree k.

    Sesquilinearity is tested on each degree with a Gaussian scalar.  Failures
    are reported as findings, not raised.
    """
    eng = _engine(J, lam, engine)
    ctx = eng.ctx
    classes = {"even-even": [0, 0], "odd-odd": [0, 0], "mixed": [0, 0]}
    first_failure = None
    nondegenerate = True
    sesq_ok = True
    a = Scalar(1, 2)
    for deg in range(k + 1):
        G = gram(None, lam, deg, eng)
        if G.radical:
            nondegenerate = False
        basis = G.basis
        for i, p in enumerate(basis):
            pp = ctx.mono_parity(p)
            for j, q in enumerate(basis):
                pq = ctx.mono_parity(q)
                cls = "mixed" if pp != pq else ("odd-odd" if pp else "even-even")
                lhs = G.entry(i, j)
                rhs = G.entry(j, i).conj()
                if pp and pq:
                    rhs = -rhs
                ok = lhs == rhs
                classes[cls][0 if ok else 1] += 1
                if not ok and first_failure is None:
                    first_failure = [ctx.render_mono(p), ctx.render_mono(q), str(lhs), str(rhs)]
        if basis:
            p = SuperPolynomial(ctx, {basis[0]: ONE})
            q = SuperPolynomial(ctx, {m: ONE for m in basis})
            base = eng.pair(p, q)
            if eng.pair(p.scale(a), q) != a * base or eng.pair(p, q.scale(a)) != a.conj() * base:
                sesq_ok = False
    return {"degree": k,
            "sesquilinear": sesq_ok,
            "superhermitian": all(c[1] == 0 for c in classes.values()),
            "nondegenerate": nondegenerate,
            "classes": {c: {"pass": v[0], "fail": v[1]} for c, v in classes.items()},
            "first_failure": first_failure}


# ------------------------------------------------------------ V_lambda etc.
def str_operators(lam: Character, ctx: Optional[VariableContext] = None) -> List[DiffOperator]:
    """pi(D) = lambda(D) + sum_j [D, z_j^-] d_j for each basis map D of the structure algebra.

    ``[L_a, z^-] = -(a z)^-`` and ``[D, z^-] = (D z)^-`` for derivations.
    """
    A = lam.algebra
    J = A.ambient
    ctx = ctx or jordan_context(J)
    ops = []
    for k, (M, kind) in enumerate(zip(A.basis, A.kinds)):
        terms: Dict[Tuple[Mono, Mono], Scalar] = {}
        if lam.values.get(k):
            terms[(ctx.one, ctx.one)] = lam.values[k]
        sgn = -ONE if kind == "L" else ONE
        for (r, c), v in M.entries.items():
            _add(terms, (ctx.unit(r), ctx.unit(c)), sgn * v)
        ops.append(DiffOperator(ctx, terms))
    return ops


@dataclass
class VLambda:
    degree: int
    ctx: VariableContext
    basis: List[SuperPolynomial]
    annihilated: bool
    stable: bool
    kernel_dim: int
    iterations: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def as_dict(self) -> dict:
        return {"degree": self.degree, "dimension": self.dim, "joint_kernel_dim": self.kernel_dim,
                "annihilated_by_bessel": self.annihilated, "str_stable": self.stable,
                "iterations": self.iterations, "basis": [str(p) for p in self.basis]}


def _coords(p: SuperPolynomial, pos: Dict[Mono, int]) -> Vec:
    return {pos[m]: c for m, c in p.terms.items()}


def find_v_lambda(J: Optional[StructureSuperalgebra], lam: Character, degree: int = 2,
                  family: Optional[BesselFamily] = None) -> VLambda:
    """Largest str-stable subspace of the joint kernel of all B(x) on P_degree."""
    fam = family or BesselFamily(J or lam.algebra.ambient, lam)
    ctx = fam.ctx
    basis = ctx.monomials(degree)
    n = len(basis)
    # joint kernel: rows indexed by (x, output monomial)
    rows: Dict[Tuple[int, Mono], Vec] = {}
    for j, m in enumerate(basis):
        for k in range(len(fam.J)):
            img = apply(fam(k), SuperPolynomial(ctx, {m: ONE}))
            for mm, c in img.terms.items():
                rows.setdefault((k, mm), {})[j] = c
    K = null_space(list(rows.values()), n)
    kernel_dim = len(K)
    pos = {m: i for i, m in enumerate(basis)}
    ops = str_operators(lam, ctx)
    it = 0
    while K:
        it += 1
        # annihilator of span(K) inside the dual of P_degree
        ann = null_space(K, n)
        cons = []
        for D in ops:
            imgs = [_coords(apply(D, SuperPolynomial(ctx, {basis[i]: c for i, c in v.items()})), pos)
                    for v in K]
            for f in ann:
                row = {}
                for t, w in enumerate(imgs):
                    s = ZERO
                    for idx, c in w.items():
                        fv = f.get(idx)
                        if fv:
                            s = s + fv * c
                    if s:
                        row[t] = s
                if row:
                    cons.append(row)
        sol = null_space(cons, len(K))
        if len(sol) == len(K):
            break
        newK = []
        for v in sol:
            w: Vec = {}
            for t, c in v.items():
                for idx, x in K[t].items():
                    _add(w, idx, c * x)
            newK.append(w)
        K, _ = rref(newK, n)
    polys = [SuperPolynomial(ctx, {basis[i]: c for i, c in v.items()}) for v in K]
    ann_ok = all(not apply(fam(k), p) for p in polys for k in range(len(fam.J)))
    return VLambda(degree, ctx, polys, ann_ok, True, kernel_dim, it)


def full_space(ctx: VariableContext, degree: int) -> VLambda:
    """P_degree itself, packaged as a V_lambda candidate (certificates not evaluated)."""
    return VLambda(degree, ctx, [SuperPolynomial(ctx, {m: ONE}) for m in ctx.monomials(degree)],
                   False, True, -1, 0)


@dataclass
class QuotientModule:
    dims: List[int]
    ideal_dims: List[int]
    space_dims: List[int]
    complement: List[List[Mono]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"dims": self.dims, "ideal_dims": self.ideal_dims, "space_dims": self.space_dims}


def quotient_dims(J: Optional[StructureSuperalgebra], lam: Optional[Character],
                  V: Optional[VLambda], k_max: int,
                  ctx: Optional[VariableContext] = None) -> QuotientModule:
    """Graded dimensions of P / (P V), degree by degree up to k_max.

    ``V=None`` means the zero subspace; the context comes from V, then ctx, then J.
    """
    if V is not None:
        ctx = V.ctx
    elif ctx is None:
        ctx = jordan_context(J if J is not None else lam.algebra.ambient)
    if V is None:
        V = VLambda(0, ctx, [], True, True, 0, 0)
    dims, ideal, space, comp = [], [], [], []
    dv = V.degree
    for k in range(k_max + 1):
        basis = ctx.monomials(k)
        pos = {m: i for i, m in enumerate(basis)}
        ech = Echelon()
        if V.basis and k >= dv:
            for m in ctx.monomials(k - dv):
                for v in V.basis:
                    w: Vec = {}
                    for b, c in v.terms.items():
                        r = mono_mul(ctx, m, b)
                        if r is not None:
                            _add(w, pos[r[1]], c if r[0] > 0 else -c)
                    if w:
                        ech.add(w)
                    if ech.rank == len(basis):
                        break
                if ech.rank == len(basis):
                    break
        r = ech.rank
        dims.append(len(basis) - r)
        ideal.append(r)
        space.append(len(basis))
        pivots = set(ech.rows)
        comp.append([m for i, m in enumerate(basis) if i not in pivots])
    return QuotientModule(dims, ideal, space, comp)


# ----------------------------------------------------- reproducing kernel
@dataclass
class ReproducingKernel:
    """I_k(z, x) = sum_{p,q} A[p][q] z^p x^q on the monomial basis of P_k."""

    degree: int
    ctx: VariableContext
    basis: List[Mono]
    A: List[Vec]
    valid: bool = True

    def pair_with(self, eng: BesselFischer, p: SuperPolynomial) -> SuperPolynomial:
        """<p(z), I_k(z, x)> as a polynomial in x (conjugate-linear in I_k)."""
        out: Dict[Mono, Scalar] = {}
        vals = [eng.pair(p, SuperPolynomial(self.ctx, {m: ONE})) for m in self.basis]
        for i, v in enumerate(vals):
            if not v:
                continue
            for j, a in self.A[i].items():
                _add(out, self.basis[j], v * a.conj())
        return SuperPolynomial(self.ctx, out)

    def render(self) -> str:
        ctx = self.ctx
        items = []
        for i, row in enumerate(self.A):
            for j, a in sorted(row.items()):
                items.append((f"z[{ctx.render_mono(self.basis[i])}]*x[{ctx.render_mono(self.basis[j])}]", a))
        from .superpoly import render_terms
        return render_terms(items)

    def as_dict(self) -> dict:
        n = len(self.basis)
        return {"degree": self.degree,
                "basis": [self.ctx.render_mono(m) for m in self.basis],
                "matrix": [[str(self.A[i].get(j, ZERO)) for j in range(n)] for i in range(n)],
                "valid": self.valid}


def reproducing_kernel(J: Optional[StructureSuperalgebra], lam: Character, k: int,
                       engine: Optional[BesselFischer] = None, verify: bool = True) -> ReproducingKernel:
    """Degree-k slice of the kernel with <p, I_k(., x)> = p(x); A = conj(G^{-1}).

    Raises SingularGram (with the radical as witness) when G is degenerate.
    """
    eng = _engine(J, lam, engine)
    G = gram(None, lam, k, eng)
    if G.radical:
        raise SingularGram(f"Gram matrix of degree {k} is singular (radical dimension "
                           f"{G.radical_dim})", k, G.radical_polys())
    n = G.size
    Ginv = invert(G.matrix, n)
    if Ginv is None:
        raise SingularGram(f"Gram matrix of degree {k} is singular", k, [])
    A = [{j: v.conj() for j, v in row.items()} for row in Ginv]
    ks = ReproducingKernel(k, eng.ctx, G.basis, A)
    if verify:
        for m in G.basis:
            p = SuperPolynomial(eng.ctx, {m: ONE})
            if ks.pair_with(eng, p) != p:
                ks.valid = False
                break
    return ks


# ---------------------------------------------------------- intertwiner C
def unit_polynomial(family: BesselFamily, unit: Vec) -> SuperPolynomial:
    return SuperPolynomial(family.ctx, {family.ctx.unit(k): c for k, c in unit.items()})


class IntertwinerC:
    """pi(C) = (multiply by exp(e_z)) o exp(B(e)/2) and its inverse on V_N.

    Uses ``(i/2) pi(e^-) = e_z`` and ``i pi(e^+) = B(e)/2``.
    """

    def __init__(self, family: BesselFamily, unit: Vec, N: int = DEFAULT_TRUNCATION):
        self.family = family
        self.ctx = family.ctx
        self.N = N
        self.e_z = unit_polynomial(family, unit)
        self.B_e = family.of_vector(unit)
        self._exp_plus = exp_series(self.e_z, 1, N)
        self._exp_minus = exp_series(self.e_z, -1, N)

    def exp_bessel(self, p: SuperPolynomial, t) -> SuperPolynomial:
        """exp(t B(e)) p: a finite sum because B(e) lowers degree by one."""
        t = as_scalar(t)
        total = p
        term = p
        k = 0
        while term:
            k += 1
            term = apply(self.B_e, term).scale(t / k)
            total = total + term
        return total

    def _as_poly(self, f) -> SuperPolynomial:
        if isinstance(f, SuperPolynomial):
            return f.truncate(self.N)
        if isinstance(f, TruncatedSeries):
            return f.window(self.N)
        from .superpoly import ExpPolynomial
        if isinstance(f, ExpPolynomial):
            return f.to_series(self.N).to_poly()
        raise TypeError(f"unsupported input {type(f).__name__}")

    def apply(self, f) -> TruncatedSeries:
        p = self.exp_bessel(self._as_poly(f), HALF)
        return self._exp_plus * TruncatedSeries.from_poly(p, self.N)

    def apply_inverse(self, f) -> TruncatedSeries:
        s = self._exp_minus * TruncatedSeries.from_poly(self._as_poly(f), self.N)
        p = self.exp_bessel(s.to_poly(), -HALF)
        return TruncatedSeries.from_poly(p, self.N)


def pi_of_C(C: IntertwinerC, f) -> TruncatedSeries:
    """pi_N(C) f, truncated at C.N."""
    return C.apply(f)


def pi_of_C_inv(C: IntertwinerC, f) -> TruncatedSeries:
    return C.apply_inverse(f)


def kappa(C: IntertwinerC) -> TruncatedSeries:
    """kappa = pi_N(C)^{-1} 1."""
    return C.apply_inverse(SuperPolynomial.constant(C.ctx))


def _ad_exp(X: DiffOperator, Y: DiffOperator, max_steps: int = 8) -> Optional[DiffOperator]:
    """exp(ad X) Y as a finite sum; None if ad X is not nilpotent on Y within max_steps."""
    total = Y
    term = Y
    for k in range(1, max_steps + 1):
        term = supercommutator(X, term).scale(Scalar(1) / k)
        if term.is_zero():
            return total
        total = total + term
    return None


def intertwining_operator_check(pi: Realisation, rho: Realisation, C: IntertwinerC) -> dict:
    """Ad(pi(C)) pi(X) = exp(ad e_z) exp(ad B(e)/2) pi(X) equals rho(X), as operators."""
    M = DiffOperator.multiplication(C.e_z)
    Bh = C.B_e.scale(HALF)
    g = pi.g
    for k in range(len(g)):
        step = _ad_exp(Bh, pi.ops[k])
        conj = _ad_exp(M, step) if step is not None else None
        if conj is None:
            return {"passed": False, "failing": g.labels[k], "reason": "ad not nilpotent"}
        if conj != rho.ops[k]:
            return {"passed": False, "failing": g.labels[k],
                    "reason": f"difference {conj - rho.ops[k]}"}
    return {"passed": True, "failing": None, "reason": "", "checked": len(g)}


def intertwining_truncated_check(pi: Realisation, rho: Realisation, C: IntertwinerC,
                                 d: Optional[int] = None) -> dict:
    """pi_N(C) pi(X) p = rho(X) pi_N(C) p for deg p <= d (default N-2), compared through N-1."""
    N = C.N
    d = N - 2 if d is None else d
    if d > N - 1:
        raise ValueError("degree bound must be at most N - 1")
    g = pi.g
    checked = 0
    for k in range(len(g)):
        for m in monomials_up_to(C.ctx, d):
            p = SuperPolynomial(C.ctx, {m: ONE})
            lhs = C.apply(apply(pi.ops[k], p)).window(N - 1)
            rhs = C.apply(p).apply(rho.ops[k]).window(N - 1)
            checked += 1
            if lhs != rhs:
                return {"passed": False, "failing": g.labels[k],
                        "witness": C.ctx.render_mono(m), "defect": str(lhs - rhs)}
    return {"passed": True, "failing": None, "checked": checked, "window": N - 1, "degree_bound": d}


# ---------------------------------------------------------- Segal-Bargmann
class SegalBargmann:
    """SB^{-1}(p) = pi_N(C)^{-1} <p, I(z, x)> and SB(f) = <pi_N(C) f, I(x, z)>."""

    def __init__(self, engine: BesselFischer, C: IntertwinerC, lam: Character):
        self.engine = engine
        self.C = C
        self.lam = lam
        self._kernels: Dict[int, ReproducingKernel] = {}

    @property
    def N(self) -> int:
        return self.C.N

    def kernel(self, k: int) -> ReproducingKernel:
        ks = self._kernels.get(k)
        if ks is None:
            ks = self._kernels[k] = reproducing_kernel(None, self.lam, k, self.engine)
        return ks

    def kernel_pair(self, p: SuperPolynomial) -> SuperPolynomial:
        out = SuperPolynomial(p.ctx)
        for k in range(p.degree() + 1):
            part = p.homogeneous_part(k)
            if part:
                out = out + self.kernel(k).pair_with(self.engine, part)
        return out

    def inverse(self, p: SuperPolynomial) -> TruncatedSeries:
        return self.C.apply_inverse(self.kernel_pair(p))

    def forward(self, f) -> SuperPolynomial:
        g = self.C.apply(f)
        return self.kernel_pair(g.to_poly())

    def roundtrip_defect(self, p: SuperPolynomial) -> SuperPolynomial:
        return self.forward(self.inverse(p)) - p


def segal_bargmann(lam: Character, N: int = DEFAULT_TRUNCATION,
                   J: Optional[StructureSuperalgebra] = None,
                   family: Optional[BesselFamily] = None) -> SegalBargmann:
    """SB pair for a character, with Gamma = C built from the unit of J."""
    fam = family or BesselFamily(J or lam.algebra.ambient, lam)
    return SegalBargmann(BesselFischer(fam), IntertwinerC(fam, find_unit(fam.J), N), lam)


def sb_inverse(p: SuperPolynomial, lam: Character, N: int = DEFAULT_TRUNCATION,
               sb: Optional[SegalBargmann] = None) -> TruncatedSeries:
    return (sb or segal_bargmann(lam, N)).inverse(p)


def sb_forward(f, lam: Character, N: int = DEFAULT_TRUNCATION,
               sb: Optional[SegalBargmann] = None) -> SuperPolynomial:
    return (sb or segal_bargmann(lam, N)).forward(f)


def sb_roundtrip(lam: Character, N: int = DEFAULT_TRUNCATION, degree: int = 2,
                 sb: Optional[SegalBargmann] = None) -> dict:
    """SB(SB^{-1}(m)) - m on every monomial m of degree <= degree."""
    if degree > N - 2:
        raise ValueError("roundtrip needs N >= degree + 2")
    sb = sb or segal_bargmann(lam, N)
    ctx = sb.engine.ctx
    defects, failing = [], []
    for m in monomials_up_to(ctx, degree):
        d = sb.roundtrip_defect(SuperPolynomial(ctx, {m: ONE}))
        defects.append(d)
        if d:
            failing.append(ctx.render_mono(m))
    return {"N": N, "degree": degree, "checked": len(defects),
            "max_abs_defect": max_abs_defect(defects), "failing": failing}


def max_abs_defect(defects: Sequence[SuperPolynomial]) -> str:
    """"0" when every defect vanishes, else the first nonzero coefficient in canonical order."""
    for d in defects:
        for m, c in d.sorted_terms():
            return str(c)
    return "0"
