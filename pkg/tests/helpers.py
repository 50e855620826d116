"""Shared builders for the test modules."""
from functools import lru_cache

from tkkrep.algebra import StructureSuperalgebra, make_jgl, make_jpe, make_jq, make_rank1
from tkkrep.linalg import SuperVectorSpace
from tkkrep.realisation import character_space, combine_characters, zero_character
from tkkrep.scalar import Scalar
from tkkrep.superpoly import SuperPolynomial
from tkkrep.tkk import tkk_construct

BUILDERS = {"JGL(1|2)": lambda: make_jgl(1, 2), "JPe(2)": lambda: make_jpe(2),
            "JPe(3)": lambda: make_jpe(3), "JQ(2)": lambda: make_jq(2),
            "JQ(3)": lambda: make_jq(3), "K": make_rank1}


@lru_cache(maxsize=None)
def _tkk(name, variant):
    return tkk_construct(BUILDERS[name](), variant)


def tkk(name, variant="str"):
    return _tkk(name, variant)


def zero_lam(name, variant="str"):
    return zero_character(tkk(name, variant).g0)


def rank1_symbolic():
    """(g, lambda) for the rank-one algebra with lambda(L_e) = l1."""
    g = tkk("K")
    return g, combine_characters(character_space(g.g0), [Scalar.param("l1")])


def permuted(J, perm):
    """Same algebra with basis reordered by perm (new position -> old index)."""
    inv = {old: new for new, old in enumerate(perm)}
    consts = {(inv[i], inv[j]): {inv[k]: c for k, c in v.items()}
              for (i, j), v in J.constants.items()}
    space = SuperVectorSpace(tuple(J.labels[k] for k in perm), tuple(J.parities[k] for k in perm))
    return StructureSuperalgebra(J.name + "'", space, consts, J.flavour)


def transport(p, ctx):
    """Rewrite p (any context) in ctx by multiplying named variables in p's own order."""
    out = SuperPolynomial(ctx)
    for m, c in p.terms.items():
        term = SuperPolynomial.constant(ctx, c)
        for i, e in enumerate(m):
            for _ in range(e):
                term = term * SuperPolynomial.var(ctx, p.ctx.names[i])
        out = out + term
    return out
