"""Characters of str(J), Bessel operators and the realisations pi_lambda, rho_lambda.

Polynomial variables are identified with the Jordan basis: variable ``i`` of
the :class:`VariableContext` is ``z_i`` with the parity of ``J.labels[i]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import OperatorSubalgebra, StructureSuperalgebra
from .errors import InvalidCharacter
from .linalg import LinearMap, Vec, null_space
from .scalar import HALF, I, ONE, ZERO, Scalar, as_scalar, parse_scalar
from .superpoly import (DiffOperator, Mono, SuperPolynomial, VariableContext, _add, apply,
                        mono_mul, monomials_up_to, supercommutator)
from .tkk import LieAutomorphism, TKKAlgebra


def jordan_context(J: StructureSuperalgebra) -> VariableContext:
    return VariableContext(J.labels, J.parities)


# -------------------------------------------------------------- characters
@dataclass
class Character:
    """Even functional on a structure algebra, stored by basis coordinates."""

    algebra: OperatorSubalgebra
    values: Dict[int, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        self.values = {k: as_scalar(v) for k, v in self.values.items() if as_scalar(v)}

    def __call__(self, coords: Vec) -> Scalar:
        total = ZERO
        for k, c in coords.items():
            v = self.values.get(k)
            if v:
                total = total + v * c
        return total

    def on_map(self, A: LinearMap) -> Scalar:
        co = self.algebra.coordinates(A)
        if co is None:
            raise InvalidCharacter("map is not in the structure algebra")
        return self(co)

    def value(self, label: str) -> Scalar:
        return self.values.get(self.algebra.labels.index(label), ZERO)

    def violations(self) -> List[str]:
        A = self.algebra
        bad = [f"nonzero on odd {A.labels[k]}" for k in self.values if A.basis[k].parity]
        s = A.compute_structure()
        for (a, b), v in sorted(s.constants.items()):
            if self(v):
                bad.append(f"nonzero on [{A.labels[a]}, {A.labels[b]}]")
                break
        return bad

    def validate(self) -> "Character":
        bad = self.violations()
        if bad:
            raise InvalidCharacter("; ".join(bad))
        return self

    def is_zero(self) -> bool:
        return not self.values

    def as_dict(self) -> dict:
        return {self.algebra.labels[k]: str(v) for k, v in sorted(self.values.items())}


def character_space(A: OperatorSubalgebra) -> List[Character]:
    """Basis of even functionals vanishing on all brackets [a, b]."""
    s = A.compute_structure()
    even = [k for k, M in enumerate(A.basis) if M.parity == 0]
    pos = {k: n for n, k in enumerate(even)}
    rows = []
    for v in s.constants.values():
        row = {pos[k]: c for k, c in v.items() if k in pos}
        if row:
            rows.append(row)
    return [Character(A, {even[n]: c for n, c in v.items()})
            for v in null_space(rows, len(even))]


def combine_characters(basis: Sequence[Character], coeffs: Sequence) -> Character:
    if len(coeffs) != len(basis):
        raise InvalidCharacter(f"expected {len(basis)} character values, got {len(coeffs)}")
    A = basis[0].algebra if basis else None
    vals: Dict[int, Scalar] = {}
    for ch, t in zip(basis, coeffs):
        t = parse_scalar(t) if isinstance(t, str) else as_scalar(t)
        for k, v in ch.values.items():
            vals[k] = vals.get(k, ZERO) + t * v
    return Character(A, vals)


def zero_character(A: OperatorSubalgebra) -> Character:
    return Character(A, {})


# -------------------------------------------------------- Bessel operators
class BesselFamily:
    """x -> B_lambda(x) for the basis of J^+, with the lambda_u and P~_{u,v} tensors.

    ``B = sum_i lambda_{z_i} d_i + sum_{i,j} P~_{z_i,z_j} d_j d_i``, with
    ``lambda_u(x) = -2 lambda(L_{xu})`` and
    ``P~_{u,v}(x) = (-1)^{|x|(|u|+|v|)} (L_u L_v + (-1)^{|u||v|} L_v L_u - L_{uv})(x)``.
    """

    def __init__(self, J: StructureSuperalgebra, lam: Character, ctx: Optional[VariableContext] = None):
        A = lam.algebra
        self.J = J
        self.lam = lam
        self.ctx = ctx or jordan_context(J)
        d = len(J)
        if A.ambient is not J and A.ambient.labels != J.labels:
            raise InvalidCharacter("character lives on the structure algebra of another algebra")
        lam.validate()
        # lambda(L_{z_w}) for each basis w (L-part of the structure algebra)
        L_index = {}
        for k, kind in enumerate(A.kinds):
            if kind == "L":
                L_index[len(L_index)] = k
        self._lamL = [lam.values.get(L_index[w], ZERO) for w in range(d)]
        self._ops: Dict[int, DiffOperator] = {}
        self.lambda_tensor: Dict[Tuple[int, int], Scalar] = {}
        self.P_tensor: Dict[Tuple[int, int, int], Vec] = {}

    def lam_u(self, k: int, i: int) -> Scalar:
        """lambda_{z_i}(z_k) = -2 lambda(L_{z_k z_i})."""
        total = ZERO
        for w, c in self.J.basis_product(k, i).items():
            if self._lamL[w]:
                total = total + c * self._lamL[w]
        return total * -2

    def P_tilde(self, i: int, j: int, k: int) -> Vec:
        J = self.J
        p = J.parities
        zk = {k: ONE}
        a = J.mul({i: ONE}, J.mul({j: ONE}, zk))
        b = J.mul({j: ONE}, J.mul({i: ONE}, zk))
        c = J.mul(J.basis_product(i, j), zk)
        s_uv = -1 if (p[i] and p[j]) else 1
        s = -1 if (p[k] and (p[i] + p[j]) % 2) else 1
        out: Vec = {}
        for m, v in a.items():
            _add(out, m, v)
        for m, v in b.items():
            _add(out, m, v * s_uv)
        for m, v in c.items():
            _add(out, m, -v)
        return {m: v * s for m, v in out.items()} if s < 0 else out

    def __call__(self, k) -> DiffOperator:
        if isinstance(k, str):
            k = self.J.index(k)
        op = self._ops.get(k)
        if op is None:
            op = self._ops[k] = self._build(k)
        return op

    def _build(self, k: int) -> DiffOperator:
        ctx = self.ctx
        d = len(self.J)
        one = ctx.one
        terms: Dict[Tuple[Mono, Mono], Scalar] = {}
        for i in range(d):
            c = self.lam_u(k, i)
            if c:
                self.lambda_tensor[(k, i)] = c
                _add(terms, (one, ctx.unit(i)), c)
        for i in range(d):
            for j in range(d):
                P = self.P_tilde(i, j, k)
                if not P:
                    continue
                self.P_tensor[(i, j, k)] = P
                r = mono_mul(ctx, ctx.unit(j), ctx.unit(i))  # d_j d_i
                if r is None:
                    continue
                sign, der = r
                for w, c in P.items():
                    _add(terms, (ctx.unit(w), der), c if sign > 0 else -c)
        return DiffOperator(ctx, terms)

    def all(self) -> List[DiffOperator]:
        return [self(k) for k in range(len(self.J))]

    def of_vector(self, x: Vec) -> DiffOperator:
        op = DiffOperator(self.ctx)
        for k, c in x.items():
            op = op + self(k).scale(c)
        return op

    def render(self) -> str:
        return "\n".join(f"B({lab}) = {self(k)}" for k, lab in enumerate(self.J.labels)) + "\n"


def bessel(J: StructureSuperalgebra, lam: Character, x) -> DiffOperator:
    return BesselFamily(J, lam)(x)


@dataclass
class CheckResult:
    passed: bool
    failing_pair: Optional[Tuple[str, str]] = None
    witness: Optional[str] = None
    checked: int = 0
    note: str = ""

    def as_dict(self) -> dict:
        return {"passed": self.passed,
                "failing_pair": list(self.failing_pair) if self.failing_pair else None,
                "witness": self.witness, "checked_pairs": self.checked, "note": self.note}


def _witness(diff: DiffOperator, d: int) -> Optional[Tuple[Mono, SuperPolynomial]]:
    for m in monomials_up_to(diff.ctx, d):
        out = apply(diff, SuperPolynomial.monomial(diff.ctx, m))
        if out:
            return m, out
    return None


def _compare(diff: DiffOperator, d: int) -> Tuple[bool, Optional[str], str]:
    """Is ``diff`` zero on P_{<=d}?  (ok, witness, note)."""
    if diff.is_zero():
        return True, None, ""
    w = _witness(diff, d)
    if w is None:
        return True, None, "nonzero operator vanishing on the tested window"
    m, out = w
    return False, f"{diff.ctx.render_mono(m)} -> {out}", ""


def bessel_supercommute_check(J: StructureSuperalgebra, lam: Character, d: int = 4,
                              family: Optional[BesselFamily] = None) -> CheckResult:
    """[B(u), B(v)] = 0 on P_{<=d} for all basis pairs u <= v."""
    fam = family or BesselFamily(J, lam)
    n = len(J)
    count = 0
    notes = []
    for a in range(n):
        for b in range(a, n):
            count += 1
            ok, wit, note = _compare(supercommutator(fam(a), fam(b)), d)
            if note:
                notes.append(f"[{J.labels[a]}, {J.labels[b]}]: {note}")
            if not ok:
                return CheckResult(False, (J.labels[a], J.labels[b]), wit, count)
    return CheckResult(True, None, None, count, "; ".join(notes))


# -------------------------------------------------------------- realisations
class Realisation:
    """TKK basis -> DiffOperator map; flavour ``schrodinger`` (pi) or ``fock`` (rho)."""

    def __init__(self, g: TKKAlgebra, lam: Character, ops: List[DiffOperator],
                 flavour: str = "schrodinger", twist: Optional[LieAutomorphism] = None,
                 bessel_family: Optional[BesselFamily] = None):
        self.g = g
        self.lam = lam
        self.ops = ops
        self.flavour = flavour
        self.twist = twist
        self.bessel = bessel_family
        self.ctx = ops[0].ctx if ops else jordan_context(g.jordan)

    def __call__(self, x) -> DiffOperator:
        if isinstance(x, int):
            return self.ops[x]
        if isinstance(x, str):
            return self.ops[self.g.lie.index(x)]
        op = DiffOperator(self.ctx)
        for k, c in x.items():
            op = op + self.ops[k].scale(c)
        return op

    def with_operator(self, k: int, op: DiffOperator) -> "Realisation":
        ops = list(self.ops)
        ops[k] = op
        return Realisation(self.g, self.lam, ops, self.flavour, self.twist, self.bessel)

    def render(self) -> str:
        return "\n".join(f"{self.flavour[0]}({lab}) = {op}"
                         for lab, op in zip(self.g.labels, self.ops)) + "\n"

    def to_json(self) -> dict:
        return {"flavour": self.flavour,
                "operators": {lab: str(op) for lab, op in zip(self.g.labels, self.ops)}}


def pi_lambda(g: TKKAlgebra, lam: Character) -> Realisation:
    """pi(z_i^-) = -2i z_i, pi(D) = lambda(D) + sum_j [D, z_j^-] d_j, pi(z_i^+) = -(i/2) B(z_i)."""
    if lam.algebra is not g.g0:
        raise InvalidCharacter("character must be defined on the degree-zero part of g")
    fam = BesselFamily(g.jordan, lam)
    ctx = fam.ctx
    d, r = g.d, g.r
    ops: List[DiffOperator] = []
    for i in range(d):
        ops.append(DiffOperator.multiplication(SuperPolynomial.var(ctx, i, -2 * I)))
    for a in range(r):
        terms: Dict[Tuple[Mono, Mono], Scalar] = {}
        la = lam.values.get(a)
        if la:
            terms[(ctx.one, ctx.one)] = la
        for j in range(d):
            for k, c in g.lie.basis_product(g.zero(a), g.minus(j)).items():
                _add(terms, (ctx.unit(k), ctx.unit(j)), c)
        ops.append(DiffOperator(ctx, terms))
    for i in range(d):
        ops.append(fam(i).scale(-I * HALF))
    return Realisation(g, lam, ops, "schrodinger", None, fam)


def rho_lambda(g: TKKAlgebra, lam: Character, gamma: Optional[LieAutomorphism] = None,
               pi: Optional[Realisation] = None) -> Realisation:
    """rho = pi o gamma; ``gamma=None`` means the identity twist."""
    pi = pi or pi_lambda(g, lam)
    if gamma is None:
        return Realisation(g, lam, list(pi.ops), "fock", None, pi.bessel)
    ops = [pi(gamma.column(k)) for k in range(len(g))]
    return Realisation(g, lam, ops, "fock", gamma, pi.bessel)


def verify_homomorphism(r: Realisation, d: int = 3) -> CheckResult:
    """Compare r([X, Y]) with [r(X), r(Y)] for all basis pairs, on P_{<=d}."""
    g = r.g.lie
    n = len(g)
    count = 0
    notes = []
    for a in range(n):
        for b in range(a, n):
            count += 1
            diff = r(g.basis_product(a, b)) - supercommutator(r.ops[a], r.ops[b])
            ok, wit, note = _compare(diff, d)
            if note:
                notes.append(f"({g.labels[a]}, {g.labels[b]}): {note}")
            if not ok:
                return CheckResult(False, (g.labels[a], g.labels[b]), wit, count)
    return CheckResult(True, None, None, count, "; ".join(notes))
