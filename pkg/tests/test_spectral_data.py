import math

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from zetasing.errors import DomainError
from zetasing.spectral_data import (
    EigenvalueSpec,
    NuTau,
    gamma_real,
    nu_of_lambda,
    tau_of_nu,
)

# 2**(2 nu) Gamma(1 + nu) / Gamma(1 - nu) at 40 digits (mpmath)
TAU_QUARTER = 1.046049620053101648952162
TAU_POINT_SEVEN = 0.8015566419956364263446774


def test_nu_of_lambda_zero():
    assert nu_of_lambda(0.0) == 0.5


def test_nu_of_lambda_round_trip():
    assert nu_of_lambda(0.3 ** 2 - 0.25) == pytest.approx(0.3, rel=1e-15)


@pytest.mark.parametrize("lam", [0.75, -0.25, 1.0, -0.3])
def test_nu_of_lambda_rejects_closed_endpoints(lam):
    with pytest.raises(DomainError, match=r"\(-1/4, 3/4\)"):
        nu_of_lambda(lam)


def test_tau_half_is_one():
    assert tau_of_nu(0.5) == pytest.approx(1.0, rel=1e-15)


@pytest.mark.parametrize("nu, expected", [(0.25, TAU_QUARTER), (0.7, TAU_POINT_SEVEN)])
def test_tau_against_high_precision(nu, expected):
    assert tau_of_nu(nu) == pytest.approx(expected, rel=1e-12)


def test_tau_small_nu_limit():
    assert abs(tau_of_nu(1e-6) - 1.0) <= 1e-4


@pytest.mark.parametrize("nu", [0.0, 1.0, -0.1, 1.5])
def test_tau_domain(nu):
    with pytest.raises(DomainError):
        tau_of_nu(nu)


@pytest.mark.parametrize("x, expected", [
    (1.0, 1.0),
    (0.5, math.sqrt(math.pi)),
    (1.5, math.sqrt(math.pi) / 2),
])
def test_gamma_classical_values(x, expected):
    assert gamma_real(x) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("x", [0.0, 2.0, -1.0, 2.5])
def test_gamma_domain(x):
    with pytest.raises(DomainError):
        gamma_real(x)


@given(st.floats(min_value=1e-3, max_value=1.999))
def test_gamma_matches_mpmath(x):
    assert gamma_real(x) == pytest.approx(float(mpmath.gamma(x)), rel=1e-13)


@given(st.floats(min_value=1e-3, max_value=0.999))
def test_gamma_recurrence(x):
    assert gamma_real(x + 1) == pytest.approx(x * gamma_real(x), rel=1e-12)


@given(st.floats(min_value=1e-6, max_value=1 - 1e-6))
def test_tau_positive_and_closed(nu):
    t = tau_of_nu(nu)
    assert t > 0
    closure = t * 2.0 ** (-2 * nu) * gamma_real(1 - nu) / gamma_real(1 + nu)
    assert closure == pytest.approx(1.0, abs=1e-11)


@given(st.floats(min_value=-0.2499, max_value=0.7499),
       st.floats(min_value=-0.2499, max_value=0.7499))
def test_nu_strictly_increasing(a, b):
    assume(b - a > 1e-12)
    assert nu_of_lambda(a) < nu_of_lambda(b)


def test_spec_sorts_and_records_order():
    spec = EigenvalueSpec.from_nus([0.6, 0.3], q0=1)
    assert spec.nus == (0.3, 0.6)
    assert spec.order == (1, 0)
    assert spec.q == 3 and spec.q1 == 2


def test_spec_folds_quarter_eigenvalues():
    spec = EigenvalueSpec.from_lambdas([-0.25, -0.25 + 5e-15, 0.0])
    assert spec.q0 == 2
    assert spec.nus == (0.5,)


def test_spec_rejects_just_below_quarter():
    with pytest.raises(DomainError):
        EigenvalueSpec.from_lambdas([-0.25 - 1e-13])


def test_spec_rejects_empty():
    with pytest.raises(DomainError):
        EigenvalueSpec.from_nus([], q0=0)


def test_nutau_from_lambda():
    nt = NuTau.from_lambda(0.0)
    assert nt.nu == 0.5 and nt.tau == pytest.approx(1.0)
