"""Exact scalars: Gaussian rationals extended by real symbolic parameters.

A :class:`Scalar` is stored as ``re + im*i`` where ``re`` and ``im`` live in
the real field ``Q(p_1, ..., p_r)`` of rational functions in the declared
parameters.  Parameters are real, so conjugation only flips the sign of
``im``.  Parameter-free values are kept as ``gmpy2.mpq`` pairs, which is the
hot path for almost every computation in the package.
"""
from __future__ import annotations

import ast
from functools import lru_cache
from typing import Iterable, Union

import gmpy2
from sympy import QQ
from sympy.polys.fields import FracElement, field

from .errors import DivisionByZero

mpq = gmpy2.mpq
_MPQ = type(mpq(0))

# Parameters declared so far, in declaration order.  Every parametric value
# is lifted to the field over all of them, which keeps equality syntactic.
_PARAMS: list[str] = []


@lru_cache(maxsize=None)
def _field_for(names: tuple):
    return field(",".join(names), QQ)[0]


def _current_field():
    return _field_for(tuple(_PARAMS))


def declare_parameters(*names: str) -> None:
    """Register real parameters (idempotent, order of first declaration kept)."""
    for name in names:
        if not name.isidentifier() or name in ("i", "I"):
            raise ValueError(f"invalid parameter name {name!r}")
        if name not in _PARAMS:
            _PARAMS.append(name)


def declared_parameters() -> tuple:
    return tuple(_PARAMS)


def _lift(x, F):
    """Real-part value -> element of the fraction field F."""
    if isinstance(x, _MPQ):
        return F.ground_new(x)
    if x.field is F:
        return x
    return x.set_field(F)


def _demote(x):
    """Collapse constant rational functions back to mpq (canonical form)."""
    if isinstance(x, _MPQ):
        return x
    if x.numer.is_ground and x.denom.is_ground:
        return mpq(x.numer.LC) / mpq(x.denom.LC) if x.numer else mpq(0)
    return x


def _complexity_real(x) -> int:
    if isinstance(x, _MPQ):
        return 0
    return max(sum(m) for m in x.numer.monoms()) + max(sum(m) for m in x.denom.monoms())


def _fmt_rational(q) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _fmt_real(x) -> str:
    if isinstance(x, _MPQ):
        return _fmt_rational(x)
    return str(x)


class Scalar:
    """Immutable exact scalar ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _coerce_real(re)
        self.im = _coerce_real(im)

    @classmethod
    def _raw(cls, re, im) -> "Scalar":
        s = object.__new__(cls)
        s.re = re
        s.im = im
        return s

    @classmethod
    def param(cls, name: str) -> "Scalar":
        declare_parameters(name)
        F = _current_field()
        return cls._raw(F.gens[_PARAMS.index(name)], mpq(0))

    # ------------------------------------------------------------------ basics
    @property
    def is_parametric(self) -> bool:
        return not (isinstance(self.re, _MPQ) and isinstance(self.im, _MPQ))

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_real(self) -> bool:
        return not self.im

    def conj(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im)

    def complexity(self) -> int:
        """Total degree of numerators plus denominators (pivot heuristic)."""
        return _complexity_real(self.re) + _complexity_real(self.im)

    def _pair(self, other):
        """Return real/imag parts of self and other in a common representation."""
        if not self.is_parametric and not other.is_parametric:
            return self.re, self.im, other.re, other.im
        F = _current_field()
        return (_lift(self.re, F), _lift(self.im, F),
                _lift(other.re, F), _lift(other.im, F))

    @staticmethod
    def _make(re, im) -> "Scalar":
        return Scalar._raw(_demote(re), _demote(im))

    # -------------------------------------------------------------- arithmetic
    def __add__(self, other):
        other = as_scalar(other)
        a, b, c, d = self._pair(other)
        return Scalar._make(a + c, b + d)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_scalar(other)
        a, b, c, d = self._pair(other)
        return Scalar._make(a - c, b - d)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = as_scalar(other)
        a, b, c, d = self._pair(other)
        if not b and not d:
            return Scalar._make(a * c, b)
        return Scalar._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_scalar(other)
        if other.is_zero():
            raise DivisionByZero("division by zero scalar")
        a, b, c, d = self._pair(other)
        if not d:
            return Scalar._make(a / c, b / c)
        den = c * c + d * d
        return Scalar._make((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers of scalars are supported")
        if n < 0:
            return Scalar(1) / self ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ------------------------------------------------------------- comparisons
    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self._pair(other)
        return a == c and b == d

    def __hash__(self):
        if not self.is_parametric:
            return hash((self.re, self.im))
        return hash(str(self))

    # --------------------------------------------------------------- rendering
    def __str__(self) -> str:
        re, im = self.re, self.im
        if not im:
            return _fmt_real(re)
        if isinstance(im, _MPQ):
            if im == 1:
                im_s = "i"
            elif im == -1:
                im_s = "-i"
            else:
                im_s = f"{_fmt_rational(im)}*i"
        else:
            im_s = f"({im})*i"
        if not re:
            return im_s
        if im_s.startswith("-"):
            return f"{_fmt_real(re)} - {im_s[1:]}"
        return f"{_fmt_real(re)} + {im_s}"

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"


ScalarLike = Union[Scalar, int, str]


def _coerce_real(x):
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, (int, gmpy2.mpz().__class__)):
        return mpq(x)
    if isinstance(x, FracElement):
        return _demote(x)
    try:  # fractions.Fraction and friends
        return mpq(x.numerator, x.denominator)
    except AttributeError:
        raise TypeError(f"cannot use {x!r} as a real scalar part") from None


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int) or hasattr(x, "denominator"):
        return Scalar(x)
    raise TypeError(f"cannot convert {x!r} to Scalar")


ZERO = Scalar(0)
ONE = Scalar(1)
HALF = Scalar(mpq(1, 2))
I = Scalar(0, 1)


# ----------------------------------------------------------------- parsing
_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def _eval(node) -> Scalar:
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ValueError(f"only integer literals are allowed, got {node.value!r}")
        return Scalar(node.value)
    if isinstance(node, ast.Name):
        if node.id in ("i", "I"):
            return I
        return Scalar.param(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exp = node.right
            sign = 1
            if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                sign, exp = -1, exp.operand
            if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                raise ValueError("exponents must be integer literals")
            return _eval(node.left) ** (sign * exp.value)
        op = _BINOPS.get(type(node.op))
        if op is not None:
            return op(_eval(node.left), _eval(node.right))
    raise ValueError(f"unsupported syntax in scalar expression: {ast.dump(node)}")


def parse_scalar(text: str) -> Scalar:
    """Parse an exact scalar such as ``"1/2"``, ``"3 - 2*i"`` or ``"alpha/(alpha+1)"``.

    Names other than ``i``/``I`` are declared as real parameters.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty scalar expression")
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse scalar {text!r}: {exc.msg}") from None
    return _eval(tree)


def scalar_sum(values: Iterable[Scalar]) -> Scalar:
    total = ZERO
    for v in values:
        total = total + v
    return total
