import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motivic.errors import NotAbelian, PoleAtOne, TooLarge
from motivic.groups import GeneralLinear, upsilon_group
from motivic.models import (
    gl2_flag_model,
    gl3_flag_model,
    gl3_free_model,
    torus_plane_model,
    torus_weighted_line_model,
)
from motivic.ratfield import ELL, ONE, RatFunc, ZERO
from motivic.stackcalc import (
    LambdaBarElem,
    OmegaBarElem,
    StratifiedModel,
    WeightFn,
    abelianize_bgl,
    gen_euler,
    lbar_mul,
    model_total_upsilon,
    p_lattice,
    pi_mu_lbar,
    pi_re_n,
    pi_vi_n,
    upsilon_pi_mu,
    weight_mul,
)
from motivic.subgroups import AbelianGroupClass, TorusSubgroup

L = ELL

GM = AbelianGroupClass(1)
GM2 = AbelianGroupClass(2)
GM3 = AbelianGroupClass(3)
UNIT = AbelianGroupClass(0)

E2 = (ONE / (L + 1)) * (-ONE / L - Fraction(1, 2))
E3 = (ONE / (L * L + L + 1)) * (ONE / L**3 + ONE / L**2 + ONE / L + Fraction(1, 3))


def test_lbar_mul_examples():
    assert lbar_mul(LambdaBarElem.term(GM), LambdaBarElem.term(GM)) == LambdaBarElem.term(GM2)
    x = LambdaBarElem.term(GM2, L - 1) + LambdaBarElem.term(GM, 3)
    assert lbar_mul(LambdaBarElem.term(UNIT), x) == x
    got = lbar_mul(LambdaBarElem.term(GM, L - 1), LambdaBarElem.term(UNIT, 2))
    assert got == LambdaBarElem.term(GM, 2 * (L - 1))


def test_lbar_mul_with_torsion():
    a = LambdaBarElem.term(AbelianGroupClass(1, (2,)))
    b = LambdaBarElem.term(AbelianGroupClass(0, (3,)))
    assert lbar_mul(a, b) == LambdaBarElem.term(AbelianGroupClass(1, (6,)))


def test_abelianize_examples():
    assert abelianize_bgl(1) == LambdaBarElem.term(GM)
    got2 = abelianize_bgl(2)
    assert got2 == LambdaBarElem.term(GM2, Fraction(1, 2)) + LambdaBarElem.term(GM, E2)
    got3 = abelianize_bgl(3)
    expected3 = (
        LambdaBarElem.term(GM3, Fraction(1, 6))
        + LambdaBarElem.term(GM2, E2)
        + LambdaBarElem.term(GM, E3)
    )
    assert got3 == expected3
    with pytest.raises(TooLarge):
        abelianize_bgl(7)


def test_gen_euler_examples():
    got = gen_euler(abelianize_bgl(2))
    assert got == OmegaBarElem.term(GM2, Fraction(1, 2)) + OmegaBarElem.term(
        GM, Fraction(-3, 4)
    )
    assert gen_euler(LambdaBarElem.zero()) == OmegaBarElem.zero()
    assert gen_euler(LambdaBarElem.term(UNIT, L)) == OmegaBarElem.term(UNIT, 1)
    with pytest.raises(PoleAtOne) as err:
        gen_euler(LambdaBarElem.term(GM, ONE / (L - 1)))
    assert err.value.offending_class == GM


def test_pi_mu_examples():
    x = LambdaBarElem.term(GM2, Fraction(1, 2)) + LambdaBarElem.term(GM, E2)
    assert pi_mu_lbar(WeightFn.const_one(), x) == x
    assert pi_mu_lbar(WeightFn.virtual_rank(2), x) == LambdaBarElem.term(GM2, Fraction(1, 2))
    assert pi_mu_lbar(WeightFn.iso_indicator(GM), LambdaBarElem.term(GM2)) == LambdaBarElem.zero()


def test_weight_mul_examples():
    x = LambdaBarElem.term(GM2, 5) + LambdaBarElem.term(AbelianGroupClass(1, (2,)), L)
    w = WeightFn.table({GM2: Fraction(3)}, default=Fraction(1, 7))
    assert weight_mul(WeightFn.const_one(), w) == w
    z = weight_mul(WeightFn.virtual_rank(1), WeightFn.virtual_rank(2))
    assert pi_mu_lbar(z, x) == LambdaBarElem.zero()
    same = weight_mul(WeightFn.virtual_rank(2), WeightFn.virtual_rank(2))
    assert pi_mu_lbar(same, x) == pi_mu_lbar(WeightFn.virtual_rank(2), x)


def classes():
    return st.builds(
        AbelianGroupClass,
        st.integers(min_value=0, max_value=3),
        st.lists(st.sampled_from([2, 3, 4]), max_size=2).map(tuple),
    )


def lbar_elems():
    coeff = st.integers(min_value=-4, max_value=4).map(Fraction)
    return st.lists(st.tuples(classes(), coeff), max_size=4).map(LambdaBarElem)


def weights():
    q = st.integers(min_value=-3, max_value=3).map(Fraction)
    consts = st.just(WeightFn.const_one())
    vranks = st.integers(min_value=0, max_value=3).map(WeightFn.virtual_rank)
    isos = classes().map(WeightFn.iso_indicator)
    tables = st.builds(
        WeightFn.table,
        st.dictionaries(classes(), q, max_size=3),
        q,
    )
    return st.one_of(consts, vranks, isos, tables)


@settings(max_examples=200, deadline=None)
@given(weights(), weights(), lbar_elems())
def test_operator_composition_property(m1, m2, x):
    assert pi_mu_lbar(m1, pi_mu_lbar(m2, x)) == pi_mu_lbar(weight_mul(m1, m2), x)
    assert pi_mu_lbar(WeightFn.const_one(), x) == x


@settings(max_examples=100, deadline=None)
@given(lbar_elems())
def test_virtual_rank_family(x):
    # idempotent, orthogonal, and summing to the identity in bounded rank
    for n in range(4):
        pn = pi_vi_n(n, x)
        assert pi_vi_n(n, pn) == pn
        for k in range(4):
            if k != n:
                assert pi_vi_n(k, pn) == LambdaBarElem.zero()
    acc = LambdaBarElem.zero()
    for n in range(4):
        acc = acc + pi_vi_n(n, x)
    assert acc == x


@settings(max_examples=80, deadline=None)
@given(lbar_elems(), lbar_elems(), st.integers(min_value=0, max_value=4))
def test_virtual_rank_tensor_convolution(a, b, n):
    lhs = pi_vi_n(n, lbar_mul(a, b))
    rhs = LambdaBarElem.zero()
    for j in range(n + 1):
        rhs = rhs + lbar_mul(pi_vi_n(j, a), pi_vi_n(n - j, b))
    assert lhs == rhs


@settings(max_examples=80, deadline=None)
@given(lbar_elems(), lbar_elems())
def test_gen_euler_ring_morphism(a, b):
    assert gen_euler(a + b) == gen_euler(a) + gen_euler(b)
    from motivic.stackcalc import omega_mul

    assert gen_euler(lbar_mul(a, b)) == omega_mul(gen_euler(a), gen_euler(b))


# ---------------------------------------------------------------------------
# stratified models


def test_model_total_upsilon():
    empty = StratifiedModel(2, GeneralLinear(2), ())
    assert model_total_upsilon(empty) == ZERO
    m = gl2_flag_model()
    assert model_total_upsilon(m) == L * L + L
    assert model_total_upsilon(m) == upsilon_group(GeneralLinear(2)) / (L - 1) ** 2


def test_p_lattice_examples():
    single = StratifiedModel(2, GeneralLinear(2), ((TorusSubgroup.full_torus(2), ONE),))
    assert len(p_lattice(single)) == 1
    assert len(p_lattice(gl2_flag_model())) == 2
    assert len(p_lattice(torus_plane_model())) == 4


def test_gl2_model_projections():
    m = gl2_flag_model()
    expected = ONE / (L - 1) ** 2
    assert upsilon_pi_mu(m, WeightFn.const_one()) == expected
    assert upsilon_pi_mu(m, WeightFn.virtual_rank(2)) == expected
    assert upsilon_pi_mu(m, WeightFn.virtual_rank(1)) == ZERO


def test_gl3_flag_model_projections():
    m = gl3_flag_model()
    expected = ONE / (L - 1) ** 3
    assert model_total_upsilon(m) == L**3 * (L + 1) * (L * L + L + 1)
    assert upsilon_pi_mu(m, WeightFn.const_one()) == expected
    assert upsilon_pi_mu(m, WeightFn.const_one()) == model_total_upsilon(m) / upsilon_group(
        GeneralLinear(3)
    )
    assert upsilon_pi_mu(m, WeightFn.virtual_rank(3)) == expected
    assert upsilon_pi_mu(m, WeightFn.virtual_rank(2)) == ZERO
    assert upsilon_pi_mu(m, WeightFn.virtual_rank(1)) == ZERO


def test_gl3_free_model_projections():
    m = gl3_free_model()
    assert upsilon_pi_mu(m, WeightFn.const_one()) == ONE
    assert upsilon_pi_mu(m, WeightFn.virtual_rank(0)) == ONE
    for n in (1, 2, 3):
        assert upsilon_pi_mu(m, WeightFn.virtual_rank(n)) == ZERO


def test_random_gl_models_const_one_is_class_ratio():
    rng = random.Random(23)
    for _ in range(20):
        m = rng.randint(1, 4)
        n_strata = rng.randint(0, 3)
        stabs = set()
        strata = []
        for _ in range(40):
            if len(strata) >= n_strata:
                break
            rows = tuple(
                tuple(rng.randint(-1, 1) for _ in range(m)) for _ in range(rng.randint(0, m))
            )
            s = TorusSubgroup(m, rows)
            if s in stabs:
                continue
            stabs.add(s)
            coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, 3))]
            strata.append((s, RatFunc(tuple(coeffs))))
        model = StratifiedModel(m, GeneralLinear(m), tuple(strata))
        got = upsilon_pi_mu(model, WeightFn.const_one())
        assert got == model_total_upsilon(model) / upsilon_group(GeneralLinear(m))


def test_point_stack_model_matches_abelianization():
    # the single-point model with full-torus stabilizer realizes the point
    # stack; rank projections must agree with the torus-basis expansion
    # evaluated classwise through [pt over a rank-k torus] = 1/(l-1)^k
    for m in (2, 3):
        model = StratifiedModel(
            m, GeneralLinear(m), ((TorusSubgroup.full_torus(m), ONE),)
        )
        expansion = abelianize_bgl(m)
        for n in range(m + 2):
            got = upsilon_pi_mu(model, WeightFn.virtual_rank(n))
            coeff = expansion.coeff(AbelianGroupClass(n))
            assert got == coeff / (L - 1) ** n
        total = upsilon_pi_mu(model, WeightFn.const_one())
        assert total == ONE / upsilon_group(GeneralLinear(m))


def test_torus_weighted_line_model():
    m = torus_weighted_line_model()
    assert upsilon_pi_mu(m, WeightFn.const_one()) == L / (L - 1)
    assert upsilon_pi_mu(m, WeightFn.virtual_rank(1)) == ONE / (L - 1)
    assert upsilon_pi_mu(m, WeightFn.virtual_rank(0)) == ONE
    mu2 = AbelianGroupClass(0, (2,))
    assert upsilon_pi_mu(m, WeightFn.iso_indicator(mu2)) == ONE


def test_pi_re_examples():
    m = torus_plane_model()
    assert pi_re_n(m, 5).strata == ()
    kept = pi_re_n(m, 2)
    assert len(kept.strata) == 1
    assert model_total_upsilon(kept) == ONE
    # the rank filters partition the strata exactly
    recovered = []
    total = ZERO
    for n in range(3):
        sub = pi_re_n(m, n)
        recovered.extend(sub.strata)
        total = total + model_total_upsilon(sub)
    assert sorted(map(repr, recovered)) == sorted(map(repr, m.strata))
    assert total == model_total_upsilon(m)
    with pytest.raises(NotAbelian):
        pi_re_n(gl2_flag_model(), 1)


def test_model_validation():
    with pytest.raises(ValueError):
        StratifiedModel(2, GeneralLinear(3), ())
    dup = TorusSubgroup.full_torus(2)
    with pytest.raises(ValueError):
        StratifiedModel(2, GeneralLinear(2), ((dup, ONE), (dup, ONE)))
    from motivic.groups import torus

    with pytest.raises(ValueError):
        StratifiedModel(2, torus(2, (2,)), ())


def test_rendering():
    x = LambdaBarElem.term(GM2, Fraction(1, 2)) + LambdaBarElem.term(GM, Fraction(-3, 4))
    assert str(x) == "1/2*[Gm^2] - 3/4*[Gm]"
    assert str(LambdaBarElem.zero()) == "0"
    y = OmegaBarElem.term(AbelianGroupClass(1, (2,)), 1)
    assert str(y) == "[Gm x Z/2]"
    z = LambdaBarElem.term(GM, E2)
    assert str(z) == "(-l - 2)/(2*l^2 + 2*l)*[Gm]"


def test_bar_elem_json():
    x = LambdaBarElem.term(GM2, Fraction(1, 2)) + LambdaBarElem.term(GM, E2)
    data = x.to_json()
    assert data[0]["class"] == {"rank": 2, "torsion": []}
    assert data[0]["coeff"] == "1/2"
    assert data[1]["coeff"] == "(-l - 2)/(2*l^2 + 2*l)"
