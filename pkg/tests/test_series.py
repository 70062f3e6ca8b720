import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetasing.errors import ContractError, StructuralError
from zetasing.series import (
    BigradedSeries,
    TruncationPolicy,
    add,
    eval_numeric,
    log1p_truncated,
    mul,
    mul_truncated,
)

NU = 0.5
B1 = (NU,)


def S(terms, basis=B1):
    return BigradedSeries(terms, basis)


def test_zero_pruned_on_construction():
    s = S({(0, (0,)): 0, (1, (0,)): 2})
    assert len(s) == 1


def test_add_identity_inverse_collision():
    s = S({(1, (0,)): 1, (0, (1,)): 2.5j})
    assert add(s, BigradedSeries.zero(B1)) == s
    assert not add(s, -s)
    assert add(S({(1, (0,)): 1}), S({(1, (0,)): 2})) == S({(1, (0,)): 3})


def test_basis_mismatch():
    with pytest.raises(StructuralError):
        add(S({(0, (0,)): 1}), S({(0, (0,)): 1}, (0.3,)))
    with pytest.raises(StructuralError):
        S({(0, (0, 1)): 1})


POLICY = TruncationPolicy(xi_cutoff=10.0, ell_max=10)


def test_mul_polynomial_identity():
    one_plus = S({(0, (0,)): 1, (1, (0,)): 1})
    one_minus = S({(0, (0,)): 1, (1, (0,)): -1})
    assert mul_truncated(one_plus, one_minus, POLICY) == S({(0, (0,)): 1, (2, (0,)): -1})


def test_mul_exponent_additivity():
    y = S({(0, (1,)): 1})
    assert mul_truncated(y, y, POLICY) == S({(0, (2,)): 1})


def test_mul_negative_ell():
    t = S({(-1, (1,)): 1})
    assert mul_truncated(t, t, POLICY) == S({(-2, (2,)): 1})


def test_mul_truncated_drops_beyond_cutoff():
    y = S({(0, (1,)): 1})
    small = TruncationPolicy(xi_cutoff=0.75, ell_max=5)
    assert not mul_truncated(y, y, small)


def test_log_scalar_series():
    b, beta = 0.3 - 0.2j, 0.4
    u = BigradedSeries({(0, (1,)): b}, (beta,))
    xi_cut = 2.0
    c = log1p_truncated(u, TruncationPolicy.for_series(u, xi_cut))
    kmax = int(xi_cut / beta + 1e-9)
    assert len(c) == kmax
    for k in range(1, kmax + 1):
        assert c.coeff(0, (k,)) == pytest.approx((-1) ** (k - 1) * b ** k / k, rel=1e-14)


def test_log_example3_shape():
    tau = 0.8015566419956364
    u = S({(1, (1,)): tau})
    c = log1p_truncated(u, TruncationPolicy.for_series(u, 6 * NU + 0.1))
    for k in range(1, 7):
        assert c.coeff(k, (k,)) == pytest.approx((-1) ** (k - 1) * tau ** k / k, rel=1e-14)
    assert len(c) == 6


def test_log_negative_ell():
    tau = 1.3
    u = S({(-1, (1,)): -tau})
    c = log1p_truncated(u, TruncationPolicy.for_series(u, 5 * NU + 0.1))
    for k in range(1, 6):
        assert c.coeff(-k, (k,)) == pytest.approx(-tau ** k / k, rel=1e-14)


def test_log_pure_x_terms_respect_ell_max():
    u = S({(1, (0,)): -0.5})
    c = log1p_truncated(u, TruncationPolicy.for_series(u, 0.0, ell_max=7))
    assert sorted(ell for ell, _ in c) == list(range(1, 8))
    assert c.coeff(7, (0,)) == pytest.approx(-(0.5 ** 7) / 7)


def test_log_rejects_constant_term():
    with pytest.raises(ContractError):
        log1p_truncated(S({(0, (0,)): 0.1}), POLICY)
    with pytest.raises(ContractError):
        log1p_truncated(S({(-1, (0,)): 0.1}), POLICY)


def test_eval_numeric_examples():
    assert eval_numeric(S({(0, (0,)): 5}), 0.3, 0.7) == 5
    assert eval_numeric(S({(1, (0,)): 2}), 3, 0.2) == 6
    tau = 1.7
    # x * y**(2 nu) = 2 * 0.5**1
    assert eval_numeric(S({(1, (1,)): tau}), 2, 0.5) == pytest.approx(tau)


def test_eval_numeric_zero_x_with_negative_power():
    with pytest.raises(ZeroDivisionError):
        eval_numeric(S({(-1, (1,)): 1}), 0, 0.5)


def test_policy_bound_formula():
    u = S({(-1, (1,)): 1.0, (1, (1,)): 1.0})
    p = TruncationPolicy.for_series(u, 2.0, ell_max=4)
    assert p.beta_min == NU and p.k_min == -1 and p.k_max == 1
    assert p.kappa == pytest.approx(2.0)
    assert p.grading_bound == pytest.approx(4 + 3 * 2.0)
    assert p.grading_bound >= p.xi_cutoff


# -- properties ---------------------------------------------------------------

BASIS = (0.35, 0.6)
keys = st.tuples(st.integers(-2, 3), st.tuples(st.integers(0, 2), st.integers(0, 2)))
small_ints = st.integers(-3, 3)
series_st = st.dictionaries(keys, small_ints.filter(bool), max_size=5).map(
    lambda d: BigradedSeries(d, BASIS))
WIDE = TruncationPolicy(xi_cutoff=100.0, ell_max=100)


@given(series_st, series_st, series_st)
def test_ring_laws_exact_for_integer_coefficients(a, b, c):
    assert mul_truncated(a, b, WIDE) == mul_truncated(b, a, WIDE)
    assert mul_truncated(mul_truncated(a, b, WIDE), c, WIDE) == \
        mul_truncated(a, mul_truncated(b, c, WIDE), WIDE)
    assert mul_truncated(a, add(b, c), WIDE) == \
        add(mul_truncated(a, b, WIDE), mul_truncated(a, c, WIDE))


def _admissible(d):
    return {k: v for k, v in d.items() if any(k[1]) or k[0] >= 1}


reduced_st = st.dictionaries(
    keys, st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False)
    .filter(lambda z: abs(z) > 1e-3), max_size=4,
).map(lambda d: BigradedSeries(_admissible(d), BASIS))


@settings(max_examples=60, deadline=None)
@given(reduced_st, st.floats(0.3, 1.5), st.integers(1, 6))
def test_truncation_exactness(u, xi_cut, ell_max):
    small = log1p_truncated(u, TruncationPolicy.for_series(u, xi_cut, ell_max))
    large = log1p_truncated(u, TruncationPolicy.for_series(u, xi_cut + 0.8, ell_max + 3))
    for (ell, v), c in small.items():
        assert large.coeff(ell, v) == c


def test_log_deviation_shrinks_with_cutoff():
    u = BigradedSeries({(0, (1, 0)): 0.9, (1, (0, 1)): -0.7 + 0.4j, (0, (0, 1)): 0.5}, BASIS)
    x, y = 0.4 * cmath.exp(0.7j), 0.3
    exact = cmath.log(1 + eval_numeric(u, x, y))
    devs = []
    for xi_cut in (1.0, 2.0, 3.0, 4.0):
        c = log1p_truncated(u, TruncationPolicy.for_series(u, xi_cut, 40))
        devs.append(abs(eval_numeric(c, x, y) - exact))
    for a, b in zip(devs, devs[1:]):
        assert b <= a / 2


def test_mul_without_truncation_matches_mul_truncated_wide():
    a = BigradedSeries({(1, (1, 0)): 2, (-1, (0, 1)): 1j}, BASIS)
    assert mul(a, a) == mul_truncated(a, a, WIDE)


def test_to_list_debug_rows():
    s = BigradedSeries({(1, (1, 0)): 2 + 1j}, BASIS)
    assert s.to_list() == [[1, [1, 0], 2.0, 1.0]]
    assert math.isclose(s.xi_of((1, 0)), 0.35)
