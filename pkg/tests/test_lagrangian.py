import itertools
import math

import numpy as np
import pytest

from zetasing.errors import StructuralError
from zetasing.lagrangian import (
    LagrangianPair,
    boundary_det,
    determinant_series,
    validate_lagrangian,
)
from zetasing.oracle import full_det_leibniz, random_lagrangian
from zetasing.series import BigradedSeries
from zetasing.spectral_data import EigenvalueSpec, tau_of_nu


def series_close(a: BigradedSeries, b: BigradedSeries, rtol=1e-12) -> bool:
    keys = set(a) | set(b)
    scale = max([abs(c) for _, c in a.items()] + [abs(c) for _, c in b.items()] + [1e-300])
    return all(abs(a.coeff(*k) - b.coeff(*k)) <= rtol * scale for k in keys)


def test_validate_example3():
    assert validate_lagrangian(LagrangianPair([[0, 1], [-1, 0]], np.eye(2), 1)).ok


@pytest.mark.parametrize("q, q0", [(1, 0), (1, 1), (2, 1), (3, 0), (3, 2)])
def test_validate_friedrichs_family(q, q0):
    assert validate_lagrangian(LagrangianPair(np.zeros((q, q)), np.eye(q), q0)).ok


def test_validate_zero_pair_rank():
    res = validate_lagrangian(LagrangianPair(np.zeros((2, 2)), np.zeros((2, 2)), 0))
    assert not res.ok
    assert any(v.startswith("rank") for v in res.violations)


def test_validate_non_selfadjoint():
    res = validate_lagrangian(LagrangianPair([[1, 1], [0, 1]], np.eye(2), 0))
    assert not res.ok
    assert any(v.startswith("self-adjoint") for v in res.violations)


def test_validate_sign_flip_matters():
    # A B* is Hermitian but A' B* (first column negated) is not
    A = np.array([[1, 2], [2, 1]])
    assert validate_lagrangian(LagrangianPair(A, np.eye(2), 0)).ok
    assert not validate_lagrangian(LagrangianPair(A, np.eye(2), 1)).ok


def test_pair_shape_errors():
    with pytest.raises(StructuralError):
        LagrangianPair(np.eye(2), np.eye(3), 0)
    with pytest.raises(StructuralError):
        LagrangianPair(np.eye(2), np.eye(2), 3)


def test_det_example1():
    nu, alpha, beta = 0.3, 1.0, 0.5
    spec = EigenvalueSpec.from_nus([nu])
    p = boundary_det(LagrangianPair([[alpha]], [[beta]], 0), spec)
    tau = tau_of_nu(nu)
    assert p == BigradedSeries({(0, (0,)): alpha, (0, (1,)): -beta * tau}, (nu,))


def test_det_example3(example3):
    spec, pair = example3
    tau = tau_of_nu(0.7)
    assert boundary_det(pair, spec) == BigradedSeries({(0, (0,)): 1, (1, (1,)): tau}, (0.7,))


def test_det_example4(example4):
    spec, pair = example4
    tau = tau_of_nu(0.7)
    assert boundary_det(pair, spec) == BigradedSeries({(1, (0,)): 1, (0, (1,)): -tau}, (0.7,))


@pytest.mark.parametrize("q0, nus", [(0, [0.3]), (1, []), (1, [0.4, 0.8]), (2, [0.6])])
def test_det_friedrichs_monomial(q0, nus):
    spec = EigenvalueSpec.from_nus(nus, q0)
    pair = LagrangianPair(np.zeros((spec.q, spec.q)), np.eye(spec.q), q0)
    coef = (-1) ** spec.q * math.prod(spec.taus)
    expected = BigradedSeries({(q0, (1,) * spec.q1): coef}, spec.nus)
    assert boundary_det(pair, spec) == expected
    assert series_close(full_det_leibniz(pair, spec), expected)


def test_det_size_mismatch(example3):
    spec, _ = example3
    with pytest.raises(StructuralError):
        boundary_det(LagrangianPair(np.eye(3), np.eye(3), 1), spec)


@pytest.mark.parametrize("q", [1, 2, 3, 4])
def test_det_matches_leibniz(rng, q):
    for _ in range(10):
        q0 = int(rng.integers(0, q + 1))
        spec = EigenvalueSpec.from_nus(rng.uniform(0.05, 0.95, size=q - q0), q0)
        pair = random_lagrangian(rng, q, q0)
        assert series_close(boundary_det(pair, spec), full_det_leibniz(pair, spec))


def test_left_multiplication_scales_by_det(rng):
    for _ in range(10):
        q, q0 = 3, 1
        spec = EigenvalueSpec.from_nus(rng.uniform(0.1, 0.9, size=2), q0)
        pair = random_lagrangian(rng, q, q0)
        M = rng.normal(size=(q, q)) + 1j * rng.normal(size=(q, q))
        lhs = boundary_det(pair.left_multiply(M), spec)
        rhs = boundary_det(pair, spec).scale(np.linalg.det(M))
        assert series_close(lhs, rhs, 1e-10)


def _perm_sign(perm):
    inv = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def test_permutation_covariance(rng):
    q0, nus = 1, [0.2, 0.5, 0.85]
    pair = random_lagrangian(rng, 4, q0)
    base = determinant_series(pair.A, pair.B, q0, nus)
    for perm in itertools.permutations(range(3)):
        cols = [0] + [q0 + i for i in perm]
        p_nus = [nus[i] for i in perm]
        got = determinant_series(pair.A[:, cols], pair.B[:, cols], q0, p_nus)
        # exponent slot j of the permuted series is eigenvalue perm[j]
        back = BigradedSeries(
            {(ell, tuple(v[perm.index(i)] for i in range(3))): c for (ell, v), c in got.items()},
            nus,
        )
        assert series_close(back.scale(_perm_sign(perm)), base, 1e-12)
