from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import binom

from algser import (
    EXAMPLES,
    CoefficientOverflow,
    DegreeSpec,
    PolynomialSet,
    PredictionState,
    SingularSystem,
    SpecMismatch,
    ZeroDenominator,
    compute_C,
    compute_DJ,
    predict_k,
    predict_next,
    predict_quadratic_fast,
    residual_RJ,
    solve_hpp,
    taylor,
)
from algser.oracles import Binomial

from .conftest import LISTED_HPP, REFERENCE_TABLES, QUADRATIC


def geometric_set():
    # -1 + (1 - z) a = 0  <=>  a = 1/(1 - z)
    return PolynomialSet(([-1.0], [1.0, -1.0]), (1, 0))


def closed_form_numerator(p, a, J):
    """Numerator of the N=2, degrees (1,1,1) closed form (independent loop)."""
    (p10, p11), (p20, p21) = p[1], p[2]
    s1 = 0.0
    for k in range(J):
        s1 += a[J - k - 1] * a[k]
    s2 = 0.0
    for k in range(1, J):
        s2 += a[k] * a[J - k]
    return p11 * a[J - 1] + p21 * s1 + p20 * s2


def test_compute_C_linear():
    hpp = PolynomialSet(([0.3], [1.0]), (1, 0))
    assert compute_C(hpp, 7.5) == 1


def test_compute_C_example1():
    norm, polys = LISTED_HPP["ex1"]
    f0 = 2 ** 0.5 + 1 / 5
    C = compute_C(PolynomialSet(polys, norm), f0)
    assert C == pytest.approx(0.1947992842134984 + 2 * -0.5044536972622500 * f0, rel=1e-15)
    assert C == pytest.approx(-1.43380, abs=1e-4)


def test_compute_C_degenerate():
    hpp = PolynomialSet(([1.0, 2.0], [0.0, 1.0], [0.0, 3.0]), (0, 0))
    with pytest.raises(ZeroDenominator):
        compute_C(hpp, 1.0)


def test_compute_C_cancellation():
    # p_{1,0} + 2 p_{2,0} f_0 = 1 - 2 * 0.5 * 1 = 0
    hpp = PolynomialSet(([1.0], [1.0], [-0.5]), (0, 0))
    with pytest.raises(ZeroDenominator):
        PredictionState.seed([1.0, 0.0, 0.0], hpp)


def test_compute_DJ_hand_expansion():
    state = PredictionState.seed([1.0, 1.0], geometric_set())
    assert compute_DJ(state, 2) == -1
    with pytest.raises(ValueError):
        compute_DJ(state, 3)


def test_compute_DJ_example1(example):
    f, spec, hpp = example("ex1")
    state = PredictionState.seed(f, hpp)
    assert round(-compute_DJ(state, 5) / state.C, 3) == -0.294


def test_compute_DJ_matches_closed_form(example):
    f, spec, hpp = example("ex1")
    state = PredictionState.seed(f, hpp)
    for _ in range(8):
        _, state = predict_next(state)
        J = state.J
        expected = closed_form_numerator(hpp.polys, state.coeffs, J)
        assert compute_DJ(state, J) == pytest.approx(expected, rel=1e-13)


def test_compute_DJ_ignores_p0(example):
    f, spec, hpp = example("ex1")
    state = PredictionState.seed(f, hpp)
    other = PolynomialSet((np.array([1.0, 123.0]),) + hpp.polys[1:], (0, 0))
    state2 = PredictionState.seed(f, other)
    assert compute_DJ(state, 5) == compute_DJ(state2, 5)


@pytest.mark.parametrize("name", ["ex1", "ex2"])
def test_predict_next_first_step(example, name):
    f, spec, hpp = example(name)
    a, state = predict_next(PredictionState.seed(f, hpp))
    fj, aj, _, rel = REFERENCE_TABLES[name][5]
    assert round(float(a), 3) == aj
    assert round(100 * abs(a - f[5]) / abs(f[5]), 2) == rel
    assert state.J == 6 and state.coeffs[5] == a


def test_predict_next_geometric_exact():
    state = PredictionState.seed([1.0, 1.0], geometric_set())
    for _ in range(30):
        a, state = predict_next(state)
        assert a == 1.0


def test_predict_k_example3(example):
    f, spec, hpp = example("ex3")
    got = predict_k(f, spec, hpp, 6)
    want = [REFERENCE_TABLES["ex3"][j][1] for j in range(8, 14)]
    np.testing.assert_allclose(got, want, rtol=0, atol=1e-5)


def test_predict_k_example1(example):
    f, spec, hpp = example("ex1")
    got = [round(float(a), 3) for a in predict_k(f, spec, hpp, 6)]
    assert got == [REFERENCE_TABLES["ex1"][j][1] for j in range(5, 11)]


def test_predict_k_sqrt_binomial():
    f = [1, 0.5, -0.125]
    spec = DegreeSpec(2, (1, 0, 0))
    hpp = solve_hpp(f, spec)
    got = np.array(predict_k(f, spec, hpp, 50), dtype=float)
    want = binom(0.5, np.arange(3, 53))
    assert np.max(np.abs(got - want) / np.abs(want)) <= 1e-10


def test_predict_k_spec_checks(example):
    f, spec, hpp = example("ex1")
    with pytest.raises(SpecMismatch):
        predict_k(f, DegreeSpec(2, (2, 2, 2)), hpp, 3)
    with pytest.raises(ValueError):
        predict_k(f, spec, hpp, 0)


def test_predict_k_deterministic(example):
    f, spec, hpp = example("ex3")
    a = predict_k(f, spec, hpp, 40)
    b = predict_k(f, spec, solve_hpp(f, spec), 40)
    assert [x.hex() for x in map(float, a)] == [x.hex() for x in map(float, b)]


def test_residual_after_each_step(example):
    for name in ["ex1", "ex2", "ex3"]:
        f, spec, hpp = example(name)
        state = PredictionState.seed(f, hpp)
        for _ in range(20):
            J = state.J
            a, state = predict_next(state)
            assert abs(residual_RJ(state, J)) <= 1e-12 * abs(state.C * a) + 1e-300


def test_residual_vanishes_on_seeds(example):
    f, spec, hpp = example("ex1")
    state = PredictionState.seed(f, hpp)
    for J in range(spec.M):
        assert abs(residual_RJ(state, J)) < 1e-14


def test_residual_linear_in_aJ(example):
    f, spec, hpp = example("ex1")
    state = PredictionState.seed(f, hpp)
    for _ in range(3):
        _, state = predict_next(state)
    J = state.J - 1
    eps = 1e-3
    bumped = PredictionState(state.coeffs[:J] + (state.coeffs[J] + eps,), state.C, hpp, state.M)
    shift = residual_RJ(bumped, J) - residual_RJ(state, J)
    assert shift == pytest.approx(eps * state.C, rel=1e-9)


def test_fast_path_equivalence(example):
    for name in ["ex1", "ex2"]:
        f, spec, hpp = example(name)
        state = PredictionState.seed(f, hpp)
        for _ in range(16):
            a_fast, _ = predict_quadratic_fast(state)
            a, state = predict_next(state)
            assert a_fast == pytest.approx(a, rel=1e-13)


def test_fast_path_example2_j6(example):
    f, spec, hpp = example("ex2")
    _, state = predict_quadratic_fast(PredictionState.seed(f, hpp))
    a6, _ = predict_quadratic_fast(state)
    assert round(a6, 3) == 122.291


def test_fast_path_zero_tail():
    # a = 1 solves 1 - a + 0*a^2 + z(a^2 - a) = 0 at every order
    hpp = PolynomialSet(([1.0, 0.0], [-1.0, -1.0], [0.0, 1.0]), (0, 0))
    state = PredictionState.seed([1.0, 0, 0, 0, 0], hpp)
    a, _ = predict_quadratic_fast(state)
    assert a == 0


def test_fast_path_spec_mismatch(example):
    f, spec, hpp = example("ex3")
    with pytest.raises(SpecMismatch):
        predict_quadratic_fast(PredictionState.seed(f, hpp))


def test_overflow():
    hpp = PolynomialSet(([-1.0], [1.0, -1e200]), (1, 0))
    state = PredictionState.seed([1.0, 1e200], hpp)
    with pytest.raises(CoefficientOverflow), np.errstate(over="ignore"):
        for _ in range(3):
            _, state = predict_next(state)


def test_seed_history():
    f = taylor(EXAMPLES["ex1"], 8)
    hpp = solve_hpp(f, QUADRATIC)
    state = PredictionState.seed(f, hpp, history=7)
    assert state.J == 7 and state.M == 5
    with pytest.raises(ValueError):
        PredictionState.seed(f, hpp, history=4)


def test_inverse_cube_root_exact():
    # a = (1 - 2z)^(-1/3) satisfies (1 - 2z) a^3 - 1 = 0
    spec = DegreeSpec(3, (0, 0, 0, 1))
    f = taylor(Binomial(1, -2, Fraction(-1, 3)), spec.M + 50)
    hpp = solve_hpp(f, spec)
    got = np.array(predict_k(f, spec, hpp, 50), dtype=float)
    want = f.coeffs[spec.M:]
    assert np.max(np.abs(got - want) / np.abs(want)) <= 1e-10


def long_division(num, den, L):
    q = []
    for k in range(L):
        acc = num[k] if k < len(num) else 0.0
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * q[k - i]
        q.append(acc / den[0])
    return np.array(q)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 3), st.integers(1, 3))
def test_pade_consistency(seed, dn, dd):
    rng = np.random.default_rng(seed)
    num = rng.uniform(-1, 1, dn + 1)
    den = np.concatenate([[1.0], rng.uniform(-0.5, 0.5, dd)])
    spec = DegreeSpec(1, (dn, dd))
    f = long_division(num, den, spec.M + 30)
    try:
        hpp = solve_hpp(f, spec)
    except (SingularSystem, ZeroDenominator):
        return
    got = np.array(predict_k(f, spec, hpp, 30), dtype=float)
    want = long_division(-hpp.polys[0], hpp.polys[1], spec.M + 30)[spec.M:]
    scale = np.maximum.accumulate(np.abs(want))
    assert np.all(np.abs(got - want) <= 1e-11 * scale)


def test_extended_precision_matches_double(example):
    f, spec, hpp = example("ex1")
    double = predict_k(f, spec, hpp, 10)
    with mpmath.workdps(40):
        fh = taylor(EXAMPLES["ex1"], 5, dps=40)
        hh = solve_hpp(fh, spec)
        high = predict_k(fh, spec, hh, 10)
        assert all(isinstance(x, mpmath.mpf) for x in high)
        state = PredictionState(tuple(fh) + tuple(high), compute_C(hh, fh[0]), hh, 5)
        assert abs(residual_RJ(state, 14)) < mpmath.mpf(10) ** -35
    np.testing.assert_allclose(double, [float(x) for x in high], rtol=1e-12)
