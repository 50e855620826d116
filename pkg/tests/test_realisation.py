import random

import pytest

from helpers import permuted, rank1_symbolic, tkk, transport, zero_lam
from oracles.bessel_displays import periplectic_display, queer_display
from tkkrep.algebra import make_jpe, make_jq, str_algebra
from tkkrep.errors import InvalidCharacter
from tkkrep.realisation import (BesselFamily, Character, bessel, bessel_supercommute_check,
                                character_space, pi_lambda, rho_lambda, verify_homomorphism,
                                zero_character)
from tkkrep.scalar import I, ONE, Scalar
from tkkrep.superpoly import (DiffOperator, SuperPolynomial, apply, monomials_up_to,
                              supercommutator)
from tkkrep.tkk import cayley, derivation_dp


# ---------------------------------------------------------------- characters
@pytest.mark.parametrize("n", [2, 3])
def test_character_dimensions(n):
    assert len(character_space(tkk(f"JPe({n})", "istr").g0)) == 0
    assert len(character_space(tkk(f"JQ({n})", "str").g0)) == 0
    assert len(character_space(tkk(f"JQ({n})", "istr").g0)) == 0
    basis = character_space(tkk(f"JPe({n})", "str").g0)
    assert len(basis) == 1
    lam = basis[0]
    A = lam.algebra
    assert all(A.kinds[k] != "L" for k in lam.values)   # lambda(L_x) = 0 forced
    assert lam.on_map(derivation_dp(A.ambient))         # free value lambda(D_p)


def test_invalid_character_rejected():
    g = tkk("JPe(2)", "istr")
    lam = Character(g.g0, {0: ONE})
    with pytest.raises(InvalidCharacter):
        BesselFamily(g.jordan, lam)


# ------------------------------------------------------------------ Bessel
def test_rank1_bessel_by_hand():
    g, lam = rank1_symbolic()
    B = bessel(g.jordan, lam, "e")
    ctx = B.ctx
    l1 = Scalar.param("l1")
    z = SuperPolynomial.var(ctx, "e")
    hand = DiffOperator.derivative(ctx, "e").scale(-2 * l1) + \
        DiffOperator.multiplication(z) @ DiffOperator.derivative(ctx, "e", "e")
    assert B == hand


@pytest.mark.parametrize("name", ["JPe(2)", "JQ(2)", "JGL(1|2)"])
def test_bessel_lowers_degree_by_one(name):
    g = tkk(name)
    fam = BesselFamily(g.jordan, zero_lam(name))
    for op in fam.all():
        assert op.degree_shifts() <= {-1}


@pytest.mark.parametrize("name", ["JPe(2)", "JQ(2)", "JPe(3)"])
def test_bessel_kills_linear_polynomials_at_zero_character(name):
    g = tkk(name, "istr")
    fam = BesselFamily(g.jordan, zero_lam(name, "istr"))
    for op in fam.all():
        assert all(d == 2 for (_, a), _c in op.terms.items() for d in [sum(a)])
        for m in fam.ctx.monomials(1):
            assert apply(op, SuperPolynomial(fam.ctx, {m: ONE})).is_zero()


def test_jq_operators_equal_display():
    g = tkk("JQ(2)")
    fam = BesselFamily(g.jordan, zero_lam("JQ(2)"))
    disp = queer_display(fam.ctx, 2)
    for lab in g.jordan.labels:
        assert fam(lab) == disp[lab], lab


@pytest.mark.parametrize("n", [2, 3])
def test_jpe_operators_equal_corrected_display(n):
    name = f"JPe({n})"
    fam = BesselFamily(tkk(name).jordan, zero_lam(name))
    disp = periplectic_display(fam.ctx, n, corrected=True)
    for lab in fam.J.labels:
        assert fam(lab) == disp[lab], lab


def test_literal_jpe_display_breaks_supercommutation():
    """The printed B(b_kl) lacks the b_ij d[x_ik] d[x_jl] sum; as printed the family
    does not supercommute, while the corrected one does."""
    fam = BesselFamily(make_jpe(3), zero_character(str_algebra(make_jpe(3))))
    lit = periplectic_display(fam.ctx, 3)
    fixed = periplectic_display(fam.ctx, 3, corrected=True)
    labs = fam.J.labels
    lit_bad = [(a, b) for a in labs for b in labs
               if not supercommutator(lit[a], lit[b]).is_zero()]
    assert lit_bad
    assert all(supercommutator(fixed[a], fixed[b]).is_zero() for a in labs for b in labs)


@pytest.mark.parametrize("name", ["JPe(2)", "JQ(2)"])
def test_supercommutation(name):
    r = bessel_supercommute_check(tkk(name).jordan, zero_lam(name), 4)
    assert r.passed, r.as_dict()


def test_supercommutation_rank1_symbolic():
    g, lam = rank1_symbolic()
    assert bessel_supercommute_check(g.jordan, lam, 6).passed


def test_bessel_basis_permutation_invariance():
    rng = random.Random(7)
    for J in (make_jpe(2), make_jq(2)):
        even = [k for k in range(len(J)) if not J.parities[k]]
        odd = [k for k in range(len(J)) if J.parities[k]]
        rng.shuffle(even)
        rng.shuffle(odd)
        J2 = permuted(J, even + odd)
        f1 = BesselFamily(J, zero_character(str_algebra(J)))
        f2 = BesselFamily(J2, zero_character(str_algebra(J2)))
        for lab in J.labels:
            for m in monomials_up_to(f2.ctx, 2):
                p2 = SuperPolynomial(f2.ctx, {m: ONE})
                lhs = transport(apply(f2(lab), p2), f1.ctx)
                rhs = apply(f1(lab), transport(p2, f1.ctx))
                assert lhs == rhs, (J.name, lab)


# -------------------------------------------------------------- realisation
def test_pi_minus_is_multiplication():
    g = tkk("JQ(2)")
    pi = pi_lambda(g, zero_lam("JQ(2)"))
    ctx = pi.ctx
    for i in range(g.d):
        assert pi(g.minus(i)) == DiffOperator.multiplication(SuperPolynomial.var(ctx, i, -2 * I))


def test_pi_rank1_degree_zero_part():
    g, lam = rank1_symbolic()
    pi = pi_lambda(g, lam)
    ctx = pi.ctx
    z = SuperPolynomial.var(ctx, "e")
    expected = DiffOperator.scalar(ctx, Scalar.param("l1")) - \
        DiffOperator.multiplication(z) @ DiffOperator.derivative(ctx, "e")
    assert pi("L[e]") == expected
    # the opposite sign on the first-order term is not a representation
    wrong = pi.with_operator(1, DiffOperator.scalar(ctx, Scalar.param("l1")) +
                             DiffOperator.multiplication(z) @ DiffOperator.derivative(ctx, "e"))
    assert not verify_homomorphism(wrong, 3).passed


def test_pi_character_on_wrong_algebra():
    g = tkk("JPe(2)", "str")
    other = zero_character(tkk("JPe(2)", "istr").g0)
    with pytest.raises(InvalidCharacter):
        pi_lambda(g, other)


@pytest.mark.parametrize("name", ["JPe(2)", "JQ(2)"])
def test_pi_homomorphism(name):
    r = verify_homomorphism(pi_lambda(tkk(name), zero_lam(name)), 3)
    assert r.passed, r.as_dict()


def test_pi_homomorphism_rank1_symbolic():
    g, lam = rank1_symbolic()
    assert verify_homomorphism(pi_lambda(g, lam), 5).passed


def test_mutated_pi_fails():
    g = tkk("JQ(2)")
    pi = pi_lambda(g, zero_lam("JQ(2)"))
    k = g.plus(0)
    bad = pi.with_operator(k, pi(k).scale(-1))
    r = verify_homomorphism(bad, 3)
    assert not r.passed and r.failing_pair is not None


def test_rho_identity_twist_is_pi():
    g = tkk("JPe(2)")
    pi = pi_lambda(g, zero_lam("JPe(2)"))
    assert rho_lambda(g, pi.lam, None, pi).ops == pi.ops


def test_rho_is_pi_of_cayley_columns():
    g = tkk("JPe(2)")
    pi = pi_lambda(g, zero_lam("JPe(2)"))
    c = cayley(g)
    rho = rho_lambda(g, pi.lam, c, pi)
    for k in range(len(g)):
        op = DiffOperator(pi.ctx)
        for j, coeff in c.matrix.column(k).items():
            op = op + pi.ops[j].scale(coeff)
        assert rho.ops[k] == op


def test_rho_homomorphism_jq2():
    g = tkk("JQ(2)")
    pi = pi_lambda(g, zero_lam("JQ(2)"))
    assert verify_homomorphism(rho_lambda(g, pi.lam, cayley(g), pi), 3).passed
