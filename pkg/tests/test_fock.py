import pytest
import sympy as sp
from hypothesis import given, strategies as st

from helpers import rank1_symbolic, tkk, zero_lam
from oracles import rank1_oracle as r1
from tkkrep.algebra import find_unit
from tkkrep.errors import SingularGram
from tkkrep.fock import (BesselFischer, IntertwinerC, SegalBargmann, bessel_fischer,
                         degree_orthogonality_check, find_v_lambda, full_space, gram,
                         intertwining_operator_check, intertwining_truncated_check, kappa,
                         max_abs_defect, pi_of_C, pi_of_C_inv, quotient_dims, reproducing_kernel,
                         sb_forward, sb_inverse, sb_roundtrip,
                         sesquilinear_superhermitian_report)
from tkkrep.realisation import BesselFamily, pi_lambda, rho_lambda
from tkkrep.scalar import ONE, Scalar
from tkkrep.superpoly import SuperPolynomial, monomials_up_to
from tkkrep.tkk import cayley

L1 = Scalar.param("l1")


def to_sympy(c):
    return sp.sympify(str(c), locals={"i": sp.I, "l1": r1.l1})


@pytest.fixture(scope="module")
def rank1():
    g, lam = rank1_symbolic()
    fam = BesselFamily(g.jordan, lam)
    return g, lam, fam, BesselFischer(fam)


def engine_for(name):
    return BesselFischer(BesselFamily(tkk(name).jordan, zero_lam(name)))


# ------------------------------------------------------------------ pairing
def test_pairing_basics(rank1):
    g, lam, fam, eng = rank1
    ctx = fam.ctx
    one = SuperPolynomial.constant(ctx)
    z = SuperPolynomial.var(ctx, "e")
    assert eng.pair(one, one) == ONE
    assert eng.pair(z, z * z).is_zero()
    assert bessel_fischer(z, z, lam) == -2 * L1


@pytest.mark.parametrize("a", range(6))
def test_rank1_pairing_matches_brute_force(rank1, a):
    _, _, fam, eng = rank1
    for b in range(6):
        got = eng.pair_monomials((a,), (b,))
        assert sp.expand(to_sympy(got) - r1.pairing(a, b)) == 0


def test_pairing_is_sesquilinear(rank1):
    _, _, fam, eng = rank1
    ctx = fam.ctx
    z = SuperPolynomial.var(ctx, "e")
    c = Scalar(2, 3)
    p = z + SuperPolynomial.constant(ctx)
    assert eng.pair(p.scale(c), p) == c * eng.pair(p, p)
    assert eng.pair(p, p.scale(c)) == c.conj() * eng.pair(p, p)


@pytest.mark.parametrize("name", ["JPe(2)", "JQ(2)"])
def test_degree_one_gram_is_fully_degenerate(name):
    G = gram(tkk(name).jordan, zero_lam(name), 1)
    assert G.radical_dim == G.size == 8
    assert all(not row for row in G.matrix)


def test_rank1_gram(rank1):
    g, lam, fam, eng = rank1
    G = gram(None, lam, 1, eng)
    assert G.matrix == [{0: -2 * L1}] and G.radical_dim == 0
    assert G.as_dict()["matrix"] == [["-2*l1"]]


def test_superhermitian_report(rank1):
    g, lam, fam, eng = rank1
    rep = sesquilinear_superhermitian_report(None, lam, 2, eng)
    assert rep["superhermitian"] and rep["sesquilinear"] and rep["nondegenerate"]
    rep = sesquilinear_superhermitian_report(tkk("JPe(2)").jordan, zero_lam("JPe(2)"), 2)
    assert rep["sesquilinear"] and not rep["nondegenerate"]
    assert set(rep["classes"]) == {"even-even", "odd-odd", "mixed"}


# ---------------------------------------------------------- V_lambda etc.
def test_v_lambda_degree_one_periplectic():
    V = find_v_lambda(tkk("JPe(2)").jordan, zero_lam("JPe(2)"), 1)
    assert V.dim == 8 and V.annihilated


def test_v_lambda_rank1_generic_is_zero(rank1):
    g, lam, fam, eng = rank1
    V = find_v_lambda(None, lam, 2, fam)
    assert V.kernel_dim == 0 and V.dim == 0


@pytest.mark.parametrize("name", ["JPe(2)", "JQ(2)"])
def test_quotient_by_linear_polynomials(name):
    V = find_v_lambda(tkk(name).jordan, zero_lam(name), 1)
    assert quotient_dims(None, None, V, 4).dims == [1, 0, 0, 0, 0]


def test_quotient_by_zero(rank1):
    g, lam, fam, eng = rank1
    assert quotient_dims(g.jordan, lam, None, 4).dims == [1, 1, 1, 1, 1]
    q = quotient_dims(tkk("JQ(2)").jordan, None, None, 2)
    assert q.dims == q.space_dims == [1, 8, 32]


def test_quotient_by_full_p2_keeps_degree_one(rank1):
    ctx = BesselFamily(tkk("JQ(2)").jordan, zero_lam("JQ(2)")).ctx
    assert quotient_dims(None, None, full_space(ctx, 2), 3).dims == [1, 8, 0, 0]


# ------------------------------------------------------------------ kernel
def test_kernel_degree_zero_and_one(rank1):
    g, lam, fam, eng = rank1
    k0 = reproducing_kernel(None, lam, 0, eng)
    assert k0.A == [{0: ONE}] and k0.valid
    k1 = reproducing_kernel(None, lam, 1, eng)
    assert k1.A == [{0: ONE / (-2 * L1)}] and k1.valid


def test_kernel_singular_for_periplectic():
    with pytest.raises(SingularGram) as info:
        reproducing_kernel(tkk("JPe(2)").jordan, zero_lam("JPe(2)"), 1)
    assert len(info.value.radical) == 8


@pytest.mark.parametrize("k", range(5))
def test_reproducing_identity(rank1, k):
    g, lam, fam, eng = rank1
    K = reproducing_kernel(None, lam, k, eng)
    p = SuperPolynomial.monomial(fam.ctx, (k,))
    assert K.pair_with(eng, p) == p and K.valid


# ------------------------------------------------------------ intertwiner
@pytest.fixture(scope="module")
def rank1_C(rank1):
    g, lam, fam, eng = rank1
    return IntertwinerC(fam, find_unit(g.jordan), 8)


def test_pi_of_C_inverse_pair(rank1, rank1_C):
    ctx = rank1_C.ctx
    for m in monomials_up_to(ctx, 8):
        p = SuperPolynomial(ctx, {m: ONE})
        assert pi_of_C_inv(rank1_C, pi_of_C(rank1_C, p)).to_poly() == p


def test_kappa_matches_oracle(rank1_C):
    N = rank1_C.N
    ser = sum(((-r1.z) ** j / sp.factorial(j) for j in range(N + 1)), sp.Integer(0))
    out, term = ser, ser
    for k in range(1, N + 2):
        term = sp.expand(r1.bessel_e(term) * sp.Rational(-1, 2) / k)
        out += term
    kap = kappa(rank1_C)
    got = sum((to_sympy(c) * r1.z ** m[0] for m, c in kap.terms.items()), sp.Integer(0))
    assert sp.expand(got - out) == 0


def test_exponential_factor_of_kappa(rank1_C):
    """exp(-e_z) 1 = 1 - e_z + ...; the Bessel factor then shifts the constant term."""
    ctx = rank1_C.ctx
    from tkkrep.superpoly import exp_series
    f = exp_series(rank1_C.e_z, -1, rank1_C.N)
    assert f.window(1) == SuperPolynomial.constant(ctx) - rank1_C.e_z
    assert kappa(rank1_C).window(0) != SuperPolynomial.constant(ctx)


def test_intertwining(rank1, rank1_C):
    g, lam, fam, eng = rank1
    pi = pi_lambda(g, lam)
    rho = rho_lambda(g, lam, cayley(g), pi)
    C = IntertwinerC(pi.bessel, find_unit(g.jordan), 8)
    assert intertwining_operator_check(pi, rho, C)["passed"]
    assert intertwining_truncated_check(pi, rho, C)["passed"]


def test_intertwining_detects_wrong_twist(rank1):
    g, lam, fam, eng = rank1
    pi = pi_lambda(g, lam)
    C = IntertwinerC(pi.bessel, find_unit(g.jordan), 8)
    assert not intertwining_truncated_check(pi, pi, C)["passed"]


# ------------------------------------------------------------ Segal-Bargmann
@pytest.fixture(scope="module")
def sb(rank1):
    g, lam, fam, eng = rank1
    return SegalBargmann(eng, IntertwinerC(fam, find_unit(g.jordan), 8), lam)


def test_sb_inverse_of_one_is_kappa(sb):
    ctx = sb.engine.ctx
    assert sb.inverse(SuperPolynomial.constant(ctx)) == kappa(sb.C)
    assert sb.forward(kappa(sb.C)) == SuperPolynomial.constant(ctx)


def test_sb_inverse_of_z(sb):
    ctx = sb.engine.ctx
    z = SuperPolynomial.var(ctx, "e")
    expected = pi_of_C_inv(sb.C, z)
    assert sb.inverse(z) == expected
    assert sb.forward(sb.inverse(z)) == z


def test_sb_linear_and_zero(sb):
    ctx = sb.engine.ctx
    z = SuperPolynomial.var(ctx, "e")
    one = SuperPolynomial.constant(ctx)
    assert (sb.inverse(z + one) - sb.inverse(z) - sb.inverse(one)).to_poly().is_zero()
    assert sb.forward(SuperPolynomial(ctx)).is_zero()


def test_sb_roundtrip_functions(rank1):
    g, lam, fam, eng = rank1
    r = sb_roundtrip(lam, 8, 4)
    assert r["max_abs_defect"] == "0" and r["checked"] == 5
    ctx = fam.ctx
    z = SuperPolynomial.var(ctx, "e")
    assert sb_forward(sb_inverse(z * z, lam, 6), lam, 6) == z * z
    with pytest.raises(ValueError):
        sb_roundtrip(lam, 4, 3)


def test_max_abs_defect_reports_first_nonzero(rank1):
    ctx = rank1[2].ctx
    z = SuperPolynomial.var(ctx, "e")
    assert max_abs_defect([SuperPolynomial(ctx)]) == "0"
    assert max_abs_defect([SuperPolynomial(ctx), z.scale(Scalar(3, 1))]) == "3 + i"


# --------------------------------------------------------- orthogonality
@pytest.mark.parametrize("name", ["JPe(2)", "JQ(2)", "JGL(1|2)"])
def test_degree_orthogonality_to_five(name):
    assert degree_orthogonality_check(engine_for(name), 5)["passed"]


def test_degree_orthogonality_rank1_symbolic(rank1):
    assert degree_orthogonality_check(rank1[3], 6)["passed"]


_JQ2 = None


def _jq2_engine():
    global _JQ2
    if _JQ2 is None:
        _JQ2 = engine_for("JQ(2)")
    return _JQ2


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_random_unequal_degree_pairs_vanish(a, b, data):
    eng = _jq2_engine()
    ctx = eng.ctx
    p = data.draw(st.sampled_from(ctx.monomials(a)))
    q = data.draw(st.sampled_from(ctx.monomials(b)))
    v = eng.pair_monomials(p, q)
    assert a == b or v.is_zero()
