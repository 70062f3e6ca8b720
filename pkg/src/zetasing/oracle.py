"""Independent checks: brute-force determinant, numeric logarithm sampling,
and closed-form expectations for the worked examples of the theory."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .analyzer import SingularityReport, analyze
from .errors import ContractError, DomainError, StructuralError
from .grading import unit_vector, zero_vector
from .lagrangian import LagrangianPair
from .series import (
    BigradedSeries,
    TruncationPolicy,
    check_log_argument,
    eval_numeric,
    log1p_truncated,
)
from .spectral_data import EigenvalueSpec, tau_of_nu

LEIBNIZ_MAX_Q = 5


def full_det_leibniz(pair: LagrangianPair, spec: EigenvalueSpec) -> BigradedSeries:
    """Permutation-sum determinant of the literal ``2q x 2q`` block matrix.

    Entries are monomials ``coef * x**l * y**(2 vec)``; only permutations
    avoiding zero entries are visited.
    """
    q = pair.q
    if q > LEIBNIZ_MAX_Q:
        raise StructuralError(f"full_det_leibniz limited to q <= {LEIBNIZ_MAX_Q}, got {q}")
    if q != spec.q or pair.q0 != spec.q0:
        raise StructuralError("pair and spectrum sizes disagree")
    d = spec.q1
    zero = zero_vector(d)
    n = 2 * q
    M: list[list[tuple[complex, int, tuple] | None]] = [[None] * n for _ in range(n)]
    for i in range(q):
        for j in range(q):
            if pair.A[i, j] != 0:
                M[i][j] = (complex(pair.A[i, j]), 0, zero)
            if pair.B[i, j] != 0:
                M[i][q + j] = (complex(pair.B[i, j]), 0, zero)
    taus = spec.taus
    for i in range(q):
        if i < spec.q0:
            M[q + i][i] = (1 + 0j, 1, zero)
        else:
            j = i - spec.q0
            M[q + i][i] = (complex(taus[j]), 0, unit_vector(d, j))
        M[q + i][q + i] = (1 + 0j, 0, zero)

    acc: dict = {}
    perm = [0] * n
    used = [False] * n

    def walk(row: int, coef: complex, ell: int, vec: tuple):
        if row == n:
            inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
            c = -coef if inversions % 2 else coef
            key = (ell, vec)
            acc[key] = acc[key] + c if key in acc else c
            return
        for col in range(n):
            entry = M[row][col]
            if used[col] or entry is None:
                continue
            used[col] = True
            perm[row] = col
            e_coef, e_ell, e_vec = entry
            walk(row + 1, coef * e_coef, ell + e_ell,
                 tuple(a + b for a, b in zip(vec, e_vec)))
            used[col] = False

    walk(0, 1 + 0j, 0, zero)
    return BigradedSeries(acc, spec.nus)


def random_lagrangian(rng: np.random.Generator, q: int, q0: int,
                      complex_entries: bool = True) -> LagrangianPair:
    """Random valid pair: ``A' B* = H`` Hermitian with one of ``A'``, ``B`` invertible."""
    def rand(shape):
        z = rng.normal(size=shape)
        if complex_entries:
            z = z + 1j * rng.normal(size=shape)
        return z

    H = rand((q, q))
    H = (H + H.conj().T) / 2
    if rng.random() < 0.5:
        B = rand((q, q))
        Ap = H @ np.linalg.inv(B.conj().T)
    else:
        Ap = rand((q, q))
        B = (np.linalg.inv(Ap) @ H).conj().T
    A = Ap.copy()
    A[:, :q0] *= -1
    return LagrangianPair(A, B, q0)


def random_reduced_series(rng: np.random.Generator, nus, n_terms: int = 4,
                          max_k: int = 2, max_m: int = 2) -> BigradedSeries:
    """Random series meeting the log precondition (``xi > 0`` or ``ell >= 1``)."""
    d = len(nus)
    available = ((max_m + 1) ** d - 1) * (2 * max_k + 1) + max_k
    n_terms = min(n_terms, available)
    terms = {}
    while len(terms) < n_terms:
        vec = tuple(int(v) for v in rng.integers(0, max_m + 1, size=d))
        ell = int(rng.integers(-max_k, max_k + 1))
        if not any(vec):
            ell = int(rng.integers(1, max_k + 1))
        c = complex(rng.normal(), rng.normal())
        terms[(ell, vec)] = c
    return BigradedSeries(terms, nus)


@dataclass
class LogCheckResult:
    max_deviation: float
    max_bound: float
    worst_ratio: float
    samples: int

    @property
    def ok(self) -> bool:
        return self.worst_ratio <= 1.0


def _dropped_min_power(u: BigradedSeries, policy: TruncationPolicy) -> float:
    """Fewest factors a product of ``u`` terms needs to leave the output window."""
    best = float(policy.max_power + 1)
    betas = [u.xi_of(v) for _, v in u]
    if any(b > 0 for b in betas):
        best = min(best, math.floor(policy.xi_cutoff / max(betas) + 1e-9) + 1)
    g_max = max(policy.grading(k, u.xi_of(v)) for k, v in u)
    best = min(best, math.floor(policy.grading_bound / g_max + 1e-9) + 1)
    return best


def _sample_point(rng, u: BigradedSeries, target: float = 0.125):
    """Sample ``(x, y)`` with every term of ``u`` at most ``target`` in modulus
    and the summed term moduli at most ``2 * target``."""
    zero = zero_vector(len(u.basis))
    flat = [(k, abs(c)) for (k, v), c in u.items() if v == zero]
    tilted = [(k, u.xi_of(v), abs(c)) for (k, v), c in u.items() if v != zero]
    r = 0.5
    for k, a in flat:
        r = min(r, (target / a) ** (1.0 / k))
    r *= rng.uniform(0.5, 1.0)
    for _ in range(200):
        y = 0.5
        for k, b, a in tilted:
            y = min(y, (target / (a * r ** k)) ** (1.0 / (2 * b)))
        y *= rng.uniform(0.5, 1.0)
        mags = [a * r ** k for k, a in flat] + [a * r ** k * y ** (2 * b) for k, b, a in tilted]
        if sum(mags) <= 2 * target:
            break
        if sum(a * r ** k for k, a in flat) > target:
            r *= 0.5
        else:
            target *= 0.5
    theta = rng.uniform(-math.pi, math.pi)
    return r * cmath.exp(1j * theta), y, sum(mags)


def log_oracle_check(u: BigradedSeries, policy: TruncationPolicy, samples: int = 16,
                     seed: int = 0) -> LogCheckResult:
    """Compare the truncated logarithm with ``cmath.log(1 + u)`` at sample points.

    Each deviation must stay below ``2 S**m`` where ``S`` sums the term
    moduli at the point and ``m`` is the fewest factors of any dropped
    product, plus a rounding allowance.
    """
    check_log_argument(u)
    if samples < 1:
        raise ContractError("samples must be positive")
    if not u:
        return LogCheckResult(0.0, 0.0, 0.0, samples)
    rng = np.random.default_rng(seed)
    c = log1p_truncated(u, policy)
    m_min = _dropped_min_power(u, policy)
    worst_dev = worst_bound = worst_ratio = 0.0
    for _ in range(samples):
        x, y, S = _sample_point(rng, u)
        if S > 0.5:
            raise ContractError("could not scale sample point into the convergence disc")
        approx = eval_numeric(c, x, y)
        exact = cmath.log(1 + eval_numeric(u, x, y))
        dev = abs(approx - exact)
        scale = sum(abs(coef) * abs(x) ** ell * y ** (2 * c.xi_of(v))
                    for (ell, v), coef in c.items())
        tail = 0.0 if math.isinf(m_min) else 2.0 * S ** m_min
        bound = tail + 64 * 2.0 ** -52 * (1.0 + scale)
        worst_dev = max(worst_dev, dev)
        worst_bound = max(worst_bound, bound)
        worst_ratio = max(worst_ratio, dev / bound)
    return LogCheckResult(worst_dev, worst_bound, worst_ratio, samples)


# -- worked examples ---------------------------------------------------------

@dataclass
class ExpectedPole:
    xi: float
    p_xi: int
    nominal_order: int
    f_at: complex
    residue: complex | None = None


@dataclass
class ExpectedBranch:
    xi: float
    ell_xi: int
    g_leading: complex
    g_power: int


@dataclass
class ExampleCase:
    example_id: int
    description: str
    spec: EigenvalueSpec
    pair: LagrangianPair
    xi_cutoff: float
    log_at_zero_coeff: int
    poles: list[ExpectedPole] = field(default_factory=list)
    branches: list[ExpectedBranch] = field(default_factory=list)
    expect_empty: bool = False
    min_zero_branch_power: int | None = None


@dataclass
class CheckRow:
    name: str
    expected: object
    observed: object
    rel_err: float
    ok: bool


def paper_example(example_id: int, K: int = 6, alpha: float = 1.0, beta: float = 0.5,
                  nu: float | None = None, degenerate: bool = False) -> ExampleCase:
    """Input encoding and closed-form expectations for worked examples 1-5.

    Example 1 is the one-dimensional operator with a single eigenvalue
    (``degenerate`` selects ``lambda = -1/4``); example 2 is the punctured
    plane, which reduces to the degenerate case of example 1.  Examples 3
    and 4 share one ``-1/4`` eigenvalue and one ``nu``; example 5 has two
    ``-1/4`` eigenvalues and one ``nu``.
    """
    if K < 1:
        raise DomainError("K must be >= 1")
    if example_id == 2:
        case = paper_example(1, K, alpha, beta, nu, degenerate=True)
        case.example_id = 2
        case.description = "punctured plane: one -1/4 eigenvalue, " + case.description
        return case
    if example_id == 1:
        return _example1(K, alpha, beta, 0.3 if nu is None else nu, degenerate)
    nu = 0.7 if nu is None else nu
    tau = tau_of_nu(nu)
    cut = nu * (K + 0.5)
    if example_id == 3:
        case = ExampleCase(3, f"countably many log branches, nu={nu}",
                           EigenvalueSpec.from_nus([nu], q0=1),
                           LagrangianPair([[0, 1], [-1, 0]], np.eye(2), 1), cut, -1)
        for k in range(1, K + 1):
            g = (-1) ** k * tau ** k * 2 ** k * nu / math.factorial(k - 1)
            case.branches.append(ExpectedBranch(nu * k, k, g, k - 1))
        return case
    if example_id == 4:
        case = ExampleCase(4, f"poles of arbitrarily large order, nu={nu}",
                           EigenvalueSpec.from_nus([nu], q0=1),
                           LagrangianPair([[-1, 1], [0, 0]], [[0, 0], [1, -1]], 1), cut, 0)
        for k in range(1, K + 1):
            f = (-1) ** k * tau ** k * math.factorial(k) * nu / 2 ** k
            case.poles.append(ExpectedPole(nu * k, -k, k + 1, f))
        return case
    if example_id == 5:
        case = ExampleCase(5, f"poles and log branches together, nu={nu}",
                           EigenvalueSpec.from_nus([nu], q0=2),
                           LagrangianPair([[0, 1, -1], [1, 0, 0], [1, 0, 0]], np.eye(3), 2),
                           cut, -1)
        for k in range(1, K + 1):
            f = (-1) ** k * tau ** k * math.factorial(k) * nu / 2 ** k
            case.poles.append(ExpectedPole(nu * k, -k, k + 1, f))
            if k % 2:
                m = (k - 1) // 2
                g = 2 * nu * (-1) ** (m + 1) * tau ** k * math.comb(k, m + 1)
                case.branches.append(ExpectedBranch(nu * k, 1, g, 0))
            else:
                m = k // 2
                g = 2 * nu * (-1) ** (m + 1) * tau ** k * math.comb(k, m + 1) * 2
                case.branches.append(ExpectedBranch(nu * k, 2, g, 1))
        return case
    raise DomainError(f"unknown example id {example_id}; choose 1-5")


def _example1(K, alpha, beta, nu, degenerate) -> ExampleCase:
    if alpha == 0 and beta == 0:
        raise DomainError("alpha and beta cannot both vanish")
    pair = LagrangianPair([[alpha]], [[beta]], 1 if degenerate else 0)
    if degenerate:
        spec = EigenvalueSpec.from_nus([], q0=1)
        if alpha == 0:
            return ExampleCase(1, "lambda=-1/4, alpha=0: Friedrichs extension",
                               spec, pair, 0.0, 0, expect_empty=True)
        case = ExampleCase(1, "lambda=-1/4: genuine log s", spec, pair, 0.0, -1)
        if beta != 0:
            # log(1 - (beta/alpha) x) starts with c[1, 0] = -beta/alpha
            case.branches.append(ExpectedBranch(0.0, 1, -2 * beta / alpha, 1))
            case.min_zero_branch_power = 1
        return case
    spec = EigenvalueSpec.from_nus([nu], q0=0)
    if alpha == 0 or beta == 0:
        label = "alpha=0: Friedrichs extension" if alpha == 0 else "beta=0"
        return ExampleCase(1, label, spec, pair, nu * (K + 0.5), 0, expect_empty=True)
    tau = tau_of_nu(nu)
    case = ExampleCase(1, f"simple poles at -nu k, nu={nu}", spec, pair, nu * (K + 0.5), 0)
    r = tau * beta / alpha
    for k in range(1, K + 1):
        f = nu * r ** k
        res = -(nu * math.sin(math.pi * nu * k) / math.pi) * r ** k
        case.poles.append(ExpectedPole(nu * k, 0, 1, f, res))
    return case


def _rel(expected: complex, observed: complex) -> float:
    denom = abs(expected)
    return abs(observed - expected) / denom if denom else abs(observed)


def compare_report(case: ExampleCase, report: SingularityReport,
                   rtol: float = 1e-10) -> list[CheckRow]:
    rows = [CheckRow("log_at_zero_coeff", case.log_at_zero_coeff, report.log_at_zero_coeff,
                     0.0, case.log_at_zero_coeff == report.log_at_zero_coeff)]
    if case.expect_empty:
        rows.append(CheckRow("empty singular lists", True,
                             not report.poles and not report.log_branches, 0.0,
                             not report.poles and not report.log_branches))
    n_exp_poles = len(case.poles)
    rows.append(CheckRow("pole count", n_exp_poles, len(report.poles), 0.0,
                         n_exp_poles == len(report.poles)))
    rows.append(CheckRow("log branch count", len(case.branches), len(report.log_branches),
                         0.0, len(case.branches) == len(report.log_branches)))
    for ep in case.poles:
        got = report.pole_at(ep.xi)
        tag = f"pole xi={ep.xi:.6g}"
        if got is None:
            rows.append(CheckRow(tag, "present", "missing", math.inf, False))
            continue
        rows.append(CheckRow(tag + " p_xi", ep.p_xi, got.p_xi, 0.0, ep.p_xi == got.p_xi))
        rows.append(CheckRow(tag + " order", ep.nominal_order, got.nominal_order, 0.0,
                             ep.nominal_order == got.nominal_order))
        err = _rel(ep.f_at, got.f_at)
        rows.append(CheckRow(tag + " f(-xi)", ep.f_at, got.f_at, err, err <= rtol))
        if ep.residue is not None:
            err = _rel(ep.residue, got.effective_leading_coeff)
            ok = err <= rtol and got.effective_order == 1
            rows.append(CheckRow(tag + " residue", ep.residue, got.effective_leading_coeff,
                                 err, ok))
    for eb in case.branches:
        got = report.branch_at(eb.xi)
        tag = f"log xi={eb.xi:.6g}"
        if got is None:
            rows.append(CheckRow(tag, "present", "missing", math.inf, False))
            continue
        rows.append(CheckRow(tag + " ell", eb.ell_xi, got.ell_xi, 0.0, eb.ell_xi == got.ell_xi))
        rows.append(CheckRow(tag + " power", eb.g_power, got.g_leading_power, 0.0,
                             eb.g_power == got.g_leading_power))
        err = _rel(eb.g_leading, got.g_leading_coeff)
        rows.append(CheckRow(tag + " g lead", eb.g_leading, got.g_leading_coeff, err,
                             err <= rtol))
    if case.min_zero_branch_power is not None:
        got = report.branch_at(0.0)
        power = got.g_leading_power if got else None
        rows.append(CheckRow("g_0 power >= %d" % case.min_zero_branch_power,
                             case.min_zero_branch_power, power, 0.0,
                             power is not None and power >= case.min_zero_branch_power))
    return rows


def check_example(case: ExampleCase, ell_max: int = 32, rtol: float = 1e-10) -> list[CheckRow]:
    report = analyze(case.spec, case.pair, case.xi_cutoff, ell_max)
    return compare_report(case, report, rtol)
