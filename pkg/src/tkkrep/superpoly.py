"""Superpolynomials, differential operators, exp-times-polynomial and truncated series.

Monomials are exponent tuples over an ordered :class:`VariableContext`; odd
exponents are 0 or 1 and a monomial always means the product of its
variables in ascending index order.  Derivatives are left derivatives, and a
:class:`DiffOperator` is stored normal ordered: each term is
``coeff * z^beta * d^alpha`` with the coefficient monomial on the left and
the derivative multi-index ``d^alpha = d_1^{a_1} d_2^{a_2} ...`` on the right.
"""
from __future__ import annotations

from itertools import combinations, combinations_with_replacement
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import ContextMismatch
from .scalar import ONE, ZERO, Scalar, as_scalar

Mono = Tuple[int, ...]
DEFAULT_TRUNCATION = 8


class VariableContext:
    """Ordered even/odd variables of P(K^{m|n})."""

    def __init__(self, names: Sequence[str], parities: Sequence[int]):
        if len(names) != len(parities):
            raise ValueError("names and parities differ in length")
        self.names = tuple(names)
        self.parities = tuple(int(p) for p in parities)
        self.n = len(self.names)
        self.odd = tuple(i for i, p in enumerate(self.parities) if p)
        self._index = {nm: i for i, nm in enumerate(self.names)}
        self.one: Mono = (0,) * self.n
        self._unit_cache: Dict[int, Mono] = {}
        self._basis_cache: Dict[int, List[Mono]] = {}

    def __eq__(self, other):
        return (isinstance(other, VariableContext) and self.names == other.names
                and self.parities == other.parities)

    def __hash__(self):
        return hash((self.names, self.parities))

    def __repr__(self):
        return f"VariableContext({len(self.parities) - len(self.odd)}|{len(self.odd)})"

    def index(self, name: str) -> int:
        return self._index[name]

    def unit(self, i: int) -> Mono:
        m = self._unit_cache.get(i)
        if m is None:
            l = [0] * self.n
            l[i] = 1
            m = self._unit_cache[i] = tuple(l)
        return m

    def mono_parity(self, m: Mono) -> int:
        return sum(m[i] for i in self.odd) & 1

    def monomials(self, k: int) -> List[Mono]:
        """Monomial basis of P_k in the canonical order (see :func:`mono_key`)."""
        cached = self._basis_cache.get(k)
        if cached is not None:
            return cached
        even = [i for i in range(self.n) if not self.parities[i]]
        out = []
        for r in range(0, min(k, len(self.odd)) + 1):
            for odd_set in combinations(self.odd, r):
                for ev in combinations_with_replacement(even, k - r):
                    l = [0] * self.n
                    for i in odd_set:
                        l[i] = 1
                    for i in ev:
                        l[i] += 1
                    out.append(tuple(l))
        out.sort(key=mono_key)
        self._basis_cache[k] = out
        return out

    def render_mono(self, m: Mono) -> str:
        parts = []
        for i, e in enumerate(m):
            if e == 1:
                parts.append(self.names[i])
            elif e > 1:
                parts.append(f"{self.names[i]}^{e}")
        return "*".join(parts) if parts else "1"

    def render_deriv(self, m: Mono) -> str:
        parts = []
        for i, e in enumerate(m):
            parts.extend([f"d[{self.names[i]}]"] * e)
        return "".join(parts)


def mono_key(m: Mono):
    """Total degree first, then lexicographic with earlier variables first."""
    return (sum(m), tuple(-e for e in m))


def mono_mul(ctx: VariableContext, a: Mono, b: Mono) -> Optional[Tuple[int, Mono]]:
    """(sign, a*b) in canonical order, or None when an odd variable repeats."""
    nb = 0
    count = 0
    for i in ctx.odd:
        if a[i]:
            if b[i]:
                return None
            count += nb
        if b[i]:
            nb += 1
    return (-1 if count & 1 else 1), tuple(x + y for x, y in zip(a, b))


def mono_partial(ctx: VariableContext, i: int, m: Mono) -> Optional[Tuple[int, Mono]]:
    """Left derivative d_i of a monomial: (integer factor, monomial) or None."""
    e = m[i]
    if not e:
        return None
    l = list(m)
    l[i] = e - 1
    if not ctx.parities[i]:
        return e, tuple(l)
    before = 0
    for j in ctx.odd:
        if j >= i:
            break
        before += m[j]
    return (-1 if before & 1 else 1), tuple(l)


def _apply_deriv_mono(ctx: VariableContext, alpha: Mono, m: Mono) -> Optional[Tuple[int, Mono]]:
    """d^alpha applied to monomial m (innermost = largest index first)."""
    c = 1
    cur = m
    for i in range(ctx.n - 1, -1, -1):
        for _ in range(alpha[i]):
            r = mono_partial(ctx, i, cur)
            if r is None:
                return None
            c *= r[0]
            cur = r[1]
    return c, cur


def _add(d: dict, k, v: Scalar) -> None:
    nv = d.get(k)
    nv = v if nv is None else nv + v
    if nv:
        d[k] = nv
    else:
        d.pop(k, None)


def _check_ctx(a, b):
    if a.ctx != b.ctx:
        raise ContextMismatch("objects live in different variable contexts")


# ------------------------------------------------------------------ polynomials
class SuperPolynomial:
    """Finite map monomial -> Scalar with Koszul-signed multiplication."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VariableContext, terms: Optional[Dict[Mono, Scalar]] = None):
        self.ctx = ctx
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, ctx, c=1) -> "SuperPolynomial":
        return cls(ctx, {ctx.one: as_scalar(c)})

    @classmethod
    def var(cls, ctx, name_or_index, c=1) -> "SuperPolynomial":
        i = ctx.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return cls(ctx, {ctx.unit(i): as_scalar(c)})

    @classmethod
    def monomial(cls, ctx, m: Mono, c=1) -> "SuperPolynomial":
        return cls(ctx, {tuple(m): as_scalar(c)})

    def copy(self) -> "SuperPolynomial":
        return SuperPolynomial(self.ctx, dict(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, SuperPolynomial):
            return self.ctx == other.ctx and self.terms == other.terms
        if not self.terms:
            return as_scalar(other).is_zero() if other is not None else False
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, SuperPolynomial):
            other = SuperPolynomial.constant(self.ctx, other)
        _check_ctx(self, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add(out, m, c)
        return SuperPolynomial(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, SuperPolynomial) else -as_scalar(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, a) -> "SuperPolynomial":
        a = as_scalar(a)
        if not a:
            return SuperPolynomial(self.ctx)
        return SuperPolynomial(self.ctx, {m: a * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SuperPolynomial):
            return self.scale(other)
        return poly_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def homogeneous_part(self, k: int) -> "SuperPolynomial":
        return SuperPolynomial(self.ctx, {m: c for m, c in self.terms.items() if sum(m) == k})

    def truncate(self, N: int) -> "SuperPolynomial":
        return SuperPolynomial(self.ctx, {m: c for m, c in self.terms.items() if sum(m) <= N})

    def parity(self) -> Optional[int]:
        ps = {self.ctx.mono_parity(m) for m in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def partial(self, i) -> "SuperPolynomial":
        return partial(i, self)

    def conj_coeffs(self) -> "SuperPolynomial":
        return conj_coeffs(self)

    def constant_term(self) -> Scalar:
        return self.terms.get(self.ctx.one, ZERO)

    def sorted_terms(self) -> List[Tuple[Mono, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]))

    def __str__(self):
        return render_terms([(self.ctx.render_mono(m), c) for m, c in self.sorted_terms()])

    def __repr__(self):
        return f"SuperPolynomial({self})"

    def to_json(self) -> list:
        return [{"monomial": self.ctx.render_mono(m), "coeff": str(c)}
                for m, c in self.sorted_terms()]


def _fmt_coeff(c: Scalar) -> str:
    s = str(c)
    if any(ch in s[1:] for ch in "+-") or ("/" in s and not s.lstrip("-").replace("/", "").isdigit()):
        return f"({s})"
    return s


def render_terms(items: Iterable[Tuple[str, Scalar]]) -> str:
    """Join ``(body, coeff)`` pairs as ``c*body + ...`` with unit coefficients elided."""
    out = []
    for body, c in items:
        if body == "1":
            piece = _fmt_coeff(c)
        elif c == ONE:
            piece = body
        elif c == -ONE:
            piece = "-" + body
        else:
            piece = f"{_fmt_coeff(c)}*{body}"
        if out and piece.startswith("-"):
            out.append("- " + piece[1:])
        elif out:
            out.append("+ " + piece)
        else:
            out.append(piece)
    return " ".join(out) if out else "0"


def poly_mul(p: SuperPolynomial, q: SuperPolynomial) -> SuperPolynomial:
    _check_ctx(p, q)
    ctx = p.ctx
    out: Dict[Mono, Scalar] = {}
    for a, ca in p.terms.items():
        for b, cb in q.terms.items():
            r = mono_mul(ctx, a, b)
            if r is None:
                continue
            s, m = r
            v = ca * cb
            _add(out, m, v if s > 0 else -v)
    return SuperPolynomial(ctx, out)


def partial(i, p: SuperPolynomial) -> SuperPolynomial:
    ctx = p.ctx
    if isinstance(i, str):
        i = ctx.index(i)
    out: Dict[Mono, Scalar] = {}
    for m, c in p.terms.items():
        r = mono_partial(ctx, i, m)
        if r is not None:
            _add(out, r[1], c * r[0])
    return SuperPolynomial(ctx, out)


def conj_coeffs(p: SuperPolynomial) -> SuperPolynomial:
    return SuperPolynomial(p.ctx, {m: c.conj() for m, c in p.terms.items()})


# ------------------------------------------------------------- operators
OpKey = Tuple[Mono, Mono]


class DiffOperator:
    """Normal-ordered finite-order differential operator on P(K^{m|n})."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VariableContext, terms: Optional[Dict[OpKey, Scalar]] = None):
        self.ctx = ctx
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    # constructors
    @classmethod
    def zero(cls, ctx) -> "DiffOperator":
        return cls(ctx)

    @classmethod
    def scalar(cls, ctx, c) -> "DiffOperator":
        return cls(ctx, {(ctx.one, ctx.one): as_scalar(c)})

    @classmethod
    def identity(cls, ctx) -> "DiffOperator":
        return cls.scalar(ctx, 1)

    @classmethod
    def multiplication(cls, p: SuperPolynomial) -> "DiffOperator":
        one = p.ctx.one
        return cls(p.ctx, {(m, one): c for m, c in p.terms.items()})

    @classmethod
    def derivative(cls, ctx, *indices) -> "DiffOperator":
        """The product d_{i1} d_{i2} ... in the given order."""
        op = cls.identity(ctx)
        for i in reversed(indices):
            if isinstance(i, str):
                i = ctx.index(i)
            op = cls(ctx, {(ctx.one, ctx.unit(i)): ONE}) @ op
        return op

    @classmethod
    def euler(cls, ctx) -> "DiffOperator":
        return cls(ctx, {(ctx.unit(i), ctx.unit(i)): ONE for i in range(ctx.n)})

    # algebra
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, DiffOperator) and self.ctx == other.ctx
                and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        _check_ctx(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add(out, k, c)
        return DiffOperator(self.ctx, out)

    def __neg__(self):
        return DiffOperator(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> "DiffOperator":
        a = as_scalar(a)
        if not a:
            return DiffOperator(self.ctx)
        return DiffOperator(self.ctx, {k: a * c for k, c in self.terms.items()})

    def __matmul__(self, other: "DiffOperator") -> "DiffOperator":
        return compose(self, other)

    def term_parity(self, key: OpKey) -> int:
        return (self.ctx.mono_parity(key[0]) + self.ctx.mono_parity(key[1])) & 1

    def parity(self) -> Optional[int]:
        ps = {self.term_parity(k) for k in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def parity_parts(self) -> Dict[int, "DiffOperator"]:
        parts: Dict[int, dict] = {}
        for k, c in self.terms.items():
            parts.setdefault(self.term_parity(k), {})[k] = c
        return {p: DiffOperator(self.ctx, t) for p, t in parts.items()}

    def order(self) -> int:
        return max((sum(k[1]) for k in self.terms), default=0)

    def degree_shifts(self) -> set:
        return {sum(k[0]) - sum(k[1]) for k in self.terms}

    def __call__(self, f):
        return apply(self, f)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (mono_key(t[0][0]), mono_key(t[0][1])))

    def __str__(self):
        ctx = self.ctx
        items = []
        for (b, a), c in self.sorted_terms():
            body = [] if b == ctx.one else [ctx.render_mono(b)]
            if a != ctx.one:
                body.append(ctx.render_deriv(a))
            items.append(("*".join(body) if body else "1", c))
        return render_terms(items)

    def __repr__(self):
        return f"DiffOperator({self})"

    def to_json(self) -> list:
        ctx = self.ctx
        return [{"coefficient": ctx.render_mono(b), "derivative": ctx.render_deriv(a) or "1",
                 "coeff": str(c)} for (b, a), c in self.sorted_terms()]


def _d_compose(ctx: VariableContext, v: int, terms: Dict[OpKey, Scalar]) -> Dict[OpKey, Scalar]:
    """d_v o (normal-ordered operator), normal ordered again."""
    out: Dict[OpKey, Scalar] = {}
    uv = ctx.unit(v)
    odd_v = ctx.parities[v]
    for (c, a), s in terms.items():
        r = mono_partial(ctx, v, c)
        if r is not None:
            _add(out, (r[1], a), s * r[0])
        r = mono_mul(ctx, uv, a)
        if r is not None:
            sign = r[0]
            if odd_v and ctx.mono_parity(c):
                sign = -sign
            _add(out, (c, r[1]), s if sign > 0 else -s)
    return out


def compose(D1: DiffOperator, D2: DiffOperator) -> DiffOperator:
    """Normal-ordered D1 o D2 (super-Leibniz corrections included)."""
    _check_ctx(D1, D2)
    ctx = D1.ctx
    cache: Dict[Mono, Dict[OpKey, Scalar]] = {}
    out: Dict[OpKey, Scalar] = {}
    for (b, a), s in D1.terms.items():
        inner = cache.get(a)
        if inner is None:
            inner = D2.terms
            for i in range(ctx.n - 1, -1, -1):
                for _ in range(a[i]):
                    inner = _d_compose(ctx, i, inner)
            cache[a] = inner
        for (c, g), t in inner.items():
            r = mono_mul(ctx, b, c)
            if r is None:
                continue
            v = s * t
            _add(out, (r[1], g), v if r[0] > 0 else -v)
    return DiffOperator(ctx, out)


def supercommutator(D1: DiffOperator, D2: DiffOperator) -> DiffOperator:
    """[D1, D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1, bilinear over parity parts."""
    total = DiffOperator(D1.ctx)
    for p1, A in D1.parity_parts().items():
        for p2, B in D2.parity_parts().items():
            ab = compose(A, B)
            ba = compose(B, A)
            total = total + (ab + ba if (p1 and p2) else ab - ba)
    return total


def _apply_poly(D: DiffOperator, p: SuperPolynomial) -> SuperPolynomial:
    ctx = D.ctx
    out: Dict[Mono, Scalar] = {}
    by_alpha: Dict[Mono, list] = {}
    for (b, a), s in D.terms.items():
        by_alpha.setdefault(a, []).append((b, s))
    for a, coeffs in by_alpha.items():
        dp: Dict[Mono, Scalar] = {}
        for m, c in p.terms.items():
            r = _apply_deriv_mono(ctx, a, m)
            if r is not None:
                _add(dp, r[1], c * r[0])
        for b, s in coeffs:
            for m, c in dp.items():
                r = mono_mul(ctx, b, m)
                if r is None:
                    continue
                v = s * c
                _add(out, r[1], v if r[0] > 0 else -v)
    return SuperPolynomial(ctx, out)


def apply(D: DiffOperator, f):
    """Apply D to a SuperPolynomial, ExpPolynomial or TruncatedSeries."""
    _check_ctx(D, f)
    if isinstance(f, SuperPolynomial):
        return _apply_poly(D, f)
    if isinstance(f, ExpPolynomial):
        return f.apply(D)
    if isinstance(f, TruncatedSeries):
        return f.apply(D)
    raise TypeError(f"cannot apply an operator to {type(f).__name__}")


def monomials_up_to(ctx: VariableContext, d: int) -> Iterator[Mono]:
    for k in range(d + 1):
        yield from ctx.monomials(k)


# ------------------------------------------------------ exp * polynomial
class ExpPolynomial:
    """``body * exp(a * direction)`` with ``direction`` a linear even polynomial."""

    def __init__(self, a, direction: SuperPolynomial, body: SuperPolynomial):
        _check_ctx(direction, body)
        ctx = body.ctx
        for m in direction.terms:
            if sum(m) != 1 or ctx.mono_parity(m):
                raise ValueError("direction must be a linear combination of even variables")
        self.ctx = ctx
        self.a = as_scalar(a)
        self.direction = direction
        self.body = body
        self._slope = {m.index(1): c * self.a for m, c in direction.terms.items()}

    def __eq__(self, other):
        return (isinstance(other, ExpPolynomial) and self.a == other.a
                and self.direction == other.direction and self.body == other.body)

    def __add__(self, other: "ExpPolynomial") -> "ExpPolynomial":
        if self.a != other.a or self.direction != other.direction:
            raise ValueError("exponential factors differ")
        return ExpPolynomial(self.a, self.direction, self.body + other.body)

    def mul_poly(self, p: SuperPolynomial) -> "ExpPolynomial":
        """p * self (the exponential factor is even, so it commutes)."""
        return ExpPolynomial(self.a, self.direction, p * self.body)

    def _d(self, i: int, body: Dict[Mono, Scalar]) -> Dict[Mono, Scalar]:
        ctx = self.ctx
        out: Dict[Mono, Scalar] = {}
        for m, c in body.items():
            r = mono_partial(ctx, i, m)
            if r is not None:
                _add(out, r[1], c * r[0])
        k = self._slope.get(i)
        if k:
            for m, c in body.items():
                _add(out, m, k * c)
        return out

    def apply(self, D: DiffOperator) -> "ExpPolynomial":
        ctx = self.ctx
        out: Dict[Mono, Scalar] = {}
        cache: Dict[Mono, Dict[Mono, Scalar]] = {}
        for (b, a), s in D.terms.items():
            inner = cache.get(a)
            if inner is None:
                inner = self.body.terms
                for i in range(ctx.n - 1, -1, -1):
                    for _ in range(a[i]):
                        inner = self._d(i, inner)
                cache[a] = inner
            for m, c in inner.items():
                r = mono_mul(ctx, b, m)
                if r is not None:
                    v = s * c
                    _add(out, r[1], v if r[0] > 0 else -v)
        return ExpPolynomial(self.a, self.direction, SuperPolynomial(ctx, out))

    def to_series(self, N: int = DEFAULT_TRUNCATION) -> "TruncatedSeries":
        return TruncatedSeries.from_poly(self.body, N) * exp_series(self.direction, self.a, N)

    def __str__(self):
        return f"({self.body})*exp({self.a}*({self.direction}))"


# --------------------------------------------------------- truncated series
class TruncatedSeries:
    """Power series known through degree N; coefficients of degree > N are discarded.

    ``exact_through`` records up to which degree the stored coefficients are
    guaranteed to equal those of the untruncated object (it drops when an
    operator lowering degrees is applied).
    """

    __slots__ = ("ctx", "N", "terms", "exact_through")

    def __init__(self, ctx: VariableContext, N: int = DEFAULT_TRUNCATION,
                 terms: Optional[Dict[Mono, Scalar]] = None, exact_through: Optional[int] = None):
        self.ctx = ctx
        self.N = N
        self.terms = {m: c for m, c in (terms or {}).items() if c and sum(m) <= N}
        self.exact_through = N if exact_through is None else min(N, exact_through)

    @classmethod
    def from_poly(cls, p: SuperPolynomial, N: int = DEFAULT_TRUNCATION) -> "TruncatedSeries":
        return cls(p.ctx, N, p.terms)

    def to_poly(self) -> SuperPolynomial:
        return SuperPolynomial(self.ctx, self.terms)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.ctx == other.ctx and self.N == other.N and self.terms == other.terms
        return NotImplemented

    def _combine(self, other) -> Tuple[int, int]:
        _check_ctx(self, other)
        return min(self.N, other.N), min(self.exact_through, other.exact_through)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if isinstance(other, SuperPolynomial):
            other = TruncatedSeries.from_poly(other, self.N)
        N, ex = self._combine(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add(out, m, c)
        return TruncatedSeries(self.ctx, N, out, ex)

    def __neg__(self):
        return TruncatedSeries(self.ctx, self.N, {m: -c for m, c in self.terms.items()},
                               self.exact_through)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> "TruncatedSeries":
        a = as_scalar(a)
        return TruncatedSeries(self.ctx, self.N, {m: a * c for m, c in self.terms.items()},
                               self.exact_through)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, SuperPolynomial):
            other = TruncatedSeries.from_poly(other, self.N)
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        N, ex = self._combine(other)
        ctx = self.ctx
        out: Dict[Mono, Scalar] = {}
        for a, ca in self.terms.items():
            da = sum(a)
            for b, cb in other.terms.items():
                if da + sum(b) > N:
                    continue
                r = mono_mul(ctx, a, b)
                if r is None:
                    continue
                v = ca * cb
                _add(out, r[1], v if r[0] > 0 else -v)
        return TruncatedSeries(ctx, N, out, ex)

    def apply(self, D: DiffOperator) -> "TruncatedSeries":
        p = _apply_poly(D, self.to_poly())
        shift = min(D.degree_shifts(), default=0)
        return TruncatedSeries(self.ctx, self.N, p.terms, self.exact_through + min(shift, 0))

    def homogeneous_part(self, k: int) -> SuperPolynomial:
        return SuperPolynomial(self.ctx, {m: c for m, c in self.terms.items() if sum(m) == k})

    def window(self, d: int) -> SuperPolynomial:
        """Coefficients of degree <= d as a polynomial."""
        return SuperPolynomial(self.ctx, {m: c for m, c in self.terms.items() if sum(m) <= d})

    def __str__(self):
        return str(self.to_poly()) + f" + O({self.N + 1})"

    def to_json(self) -> dict:
        return {"N": self.N, "exact_through": self.exact_through, "terms": self.to_poly().to_json()}


def exp_series(direction: SuperPolynomial, a=1, N: int = DEFAULT_TRUNCATION) -> TruncatedSeries:
    """exp(a * direction) through degree N, for a linear even ``direction``."""
    ctx = direction.ctx
    x = TruncatedSeries.from_poly(direction.scale(a), N)
    term = TruncatedSeries(ctx, N, {ctx.one: ONE})
    total = term
    for k in range(1, N + 1):
        term = (term * x).scale(Scalar(1) / k)
        if not term.terms:
            break
        total = total + term
    return total
