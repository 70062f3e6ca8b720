"""From ``p(x, y)`` to the inventory of singularities of the zeta function.

Pipeline: factor the leading monomial out of ``p``, take the truncated
logarithm of the remaining ``1 + U``, read off for each exponent class the
lowest nonpositive and lowest positive powers of ``x``, and turn those into
pole and logarithmic-branch entries.  Only leading coefficients are known,
so only leading coefficients are reported.

The singular part has the shape::

    sin(pi s)/pi * { (j0 - q0) exp(-2 s (log 2 - gamma)) log s
                     + sum_P f_xi(s) / (s + xi)**(|p_xi| + 1)
                     + sum_L g_xi(s) log(s + xi) }
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DegenerateInputError, LagrangianError
from .grading import DEFAULT_MERGE_TOL, ExponentVector, XiClass, merge_classes, zero_vector
from .lagrangian import LagrangianPair, boundary_det, validate_lagrangian
from .series import TRUNC_TOL, BigradedSeries, TruncationPolicy, log1p_truncated
from .spectral_data import EigenvalueSpec

EULER_GAMMA = 0.57721566490153286060
INTEGER_TOL = 1e-12


@dataclass(frozen=True)
class ReducedP:
    """``p = a0 x**j0 y**(2 alpha0) (1 + u)``."""

    a0: complex
    j0: int
    alpha0: ExponentVector
    alpha0_value: float
    u: BigradedSeries
    alpha0_resonant: bool = False


@dataclass(frozen=True)
class IndexEntry:
    xi: XiClass
    power: int
    coeff: complex


@dataclass(frozen=True)
class SingularIndices:
    P: tuple[IndexEntry, ...]
    L: tuple[IndexEntry, ...]
    undetermined: tuple[float, ...] = ()


@dataclass(frozen=True)
class PoleEntry:
    xi: float
    p_xi: int
    nominal_order: int
    f_at: complex
    effective_order: int
    effective_leading_coeff: complex
    resonant: bool = False
    possibly_regular: bool = False

    @property
    def location(self) -> float:
        return -self.xi


@dataclass(frozen=True)
class LogBranchEntry:
    xi: float
    ell_xi: int
    g_leading_coeff: complex
    g_leading_power: int
    effective_leading_coeff: complex
    effective_power: int
    resonant: bool = False

    @property
    def location(self) -> float:
        return -self.xi


@dataclass(frozen=True)
class SingularityReport:
    log_at_zero_coeff: int
    poles: tuple[PoleEntry, ...]
    log_branches: tuple[LogBranchEntry, ...]
    resonance_flags: tuple[float, ...]
    xi_cutoff: float
    ell_max: int
    undetermined_xi: tuple[float, ...] = ()
    j0: int = 0
    q0: int = 0
    notes: tuple[str, ...] = ()

    @property
    def is_empty(self) -> bool:
        return self.log_at_zero_coeff == 0 and not self.poles and not self.log_branches

    def pole_at(self, xi: float, tol: float = 1e-9) -> PoleEntry | None:
        for e in self.poles:
            if abs(e.xi - xi) <= tol:
                return e
        return None

    def branch_at(self, xi: float, tol: float = 1e-9) -> LogBranchEntry | None:
        for e in self.log_branches:
            if abs(e.xi - xi) <= tol:
                return e
        return None


def is_integer_xi(xi: float) -> bool:
    return abs(xi - round(xi)) <= INTEGER_TOL


def sin_factor(xi: float) -> tuple[float, int]:
    """Leading behaviour of ``sin(pi s)/pi`` at ``s = -xi``.

    Returns ``(factor, extra_power)``: ``(-sin(pi xi)/pi, 0)`` for
    non-integer ``xi``, ``((-1)**xi, 1)`` when ``xi`` is an integer.
    """
    if is_integer_xi(xi):
        return (-1.0 if round(xi) % 2 else 1.0), 1
    return -math.sin(math.pi * xi) / math.pi, 0


def factor_leading(p: BigradedSeries, merge_tol: float = DEFAULT_MERGE_TOL) -> ReducedP:
    if not p:
        raise DegenerateInputError(
            "p(x, y) vanishes identically; a valid Lagrangian cannot produce this"
        )
    basis = p.basis
    classes = merge_classes((v for _, v in p), basis, merge_tol)
    lead = classes[0]
    rep = lead.members[0]
    # All vectors of the lowest class are numerically the same power of y.
    rekeyed: dict = {}
    for (ell, v), c in p.items():
        key = (ell, rep if v in lead else v)
        rekeyed[key] = rekeyed[key] + c if key in rekeyed else c
    j0 = min(ell for (ell, v), c in rekeyed.items() if v == rep and c != 0)
    a0 = rekeyed[(j0, rep)]
    if a0 == 0:
        raise DegenerateInputError("leading coefficient cancelled to zero")
    zero = zero_vector(len(basis))
    u_terms = []
    for (ell, v), c in rekeyed.items():
        k = ell - j0
        beta = tuple(a - b for a, b in zip(v, rep))
        if k == 0 and beta == zero:
            continue
        u_terms.append(((k, beta), c / a0))
    return ReducedP(a0, j0, rep, lead.value, BigradedSeries(u_terms, basis), lead.resonant)


def reachable_xi(u: BigradedSeries, xi_cutoff: float) -> list[float]:
    """xi values of sums of exponent vectors of ``u`` up to ``xi_cutoff``.

    These are the only classes that can carry coefficients of ``log(1 + u)``.
    """
    gens = sorted({v for _, v in u if any(v)})
    lim = xi_cutoff + TRUNC_TOL
    seen: set[ExponentVector] = set()
    frontier = [zero_vector(len(u.basis))]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple(a + b for a, b in zip(v, g))
                if w not in seen and u.xi_of(w) <= lim:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(u.xi_of(v) for v in seen)


def singular_indices(c: BigradedSeries, policy: TruncationPolicy,
                     merge_tol: float = DEFAULT_MERGE_TOL,
                     reachable: list[float] | None = None) -> SingularIndices:
    """Lowest ``ell <= 0`` and lowest ``1 <= ell <= ell_max`` per exponent class.

    A class with no positive power up to ``ell_max`` is listed as
    undetermined when the log argument has positive ``x`` powers, since a
    positive power beyond ``ell_max`` cannot then be ruled out.  Passing the
    ``reachable`` xi values (see :func:`reachable_xi`) also catches classes
    whose every term lies past ``ell_max`` and so never enters ``c``.
    """
    classes = merge_classes((v for _, v in c), c.basis, merge_tol)
    by_vec = {v: i for i, cls in enumerate(classes) for v in cls.members}
    sums: list[dict[int, complex]] = [dict() for _ in classes]
    for (ell, v), coef in c.items():
        bucket = sums[by_vec[v]]
        bucket[ell] = bucket[ell] + coef if ell in bucket else coef
    P, L, undetermined = [], [], []
    lim = policy.xi_cutoff + TRUNC_TOL
    for cls, bucket in zip(classes, sums):
        if cls.value > lim:
            continue
        nonpos = sorted(l for l, v in bucket.items() if l <= 0 and v != 0)
        pos = sorted(l for l, v in bucket.items() if 1 <= l <= policy.ell_max and v != 0)
        if nonpos:
            P.append(IndexEntry(cls, nonpos[0], bucket[nonpos[0]]))
        if pos:
            L.append(IndexEntry(cls, pos[0], bucket[pos[0]]))
        elif policy.k_max > 0:
            undetermined.append(cls.value)
    if reachable and policy.k_max > 0:
        present = [cls.value for cls in classes]
        for xi in reachable:
            if xi > lim or any(abs(xi - v) <= merge_tol for v in present + undetermined):
                continue
            undetermined.append(xi)
        undetermined.sort()
    return SingularIndices(tuple(P), tuple(L), tuple(undetermined))


def pole_entry(entry: IndexEntry) -> PoleEntry:
    xi = entry.xi.value
    n = -entry.power
    f_at = (-1) ** (n + 1) * entry.coeff * math.factorial(n) / 2 ** n * xi
    factor, drop = sin_factor(xi)
    order = n + 1 - drop
    return PoleEntry(
        xi=xi,
        p_xi=entry.power,
        nominal_order=n + 1,
        f_at=complex(f_at),
        effective_order=order,
        effective_leading_coeff=complex(factor * f_at),
        resonant=entry.xi.resonant,
        possibly_regular=order == 0,
    )


def log_branch_entry(entry: IndexEntry) -> LogBranchEntry:
    xi = entry.xi.value
    ell = entry.power
    if xi == 0.0 or (abs(xi) <= INTEGER_TOL):
        g = entry.coeff * 2 ** ell / math.factorial(ell - 1)
        power = ell
        xi = 0.0
    else:
        g = -entry.coeff * xi * 2 ** ell / math.factorial(ell - 1)
        power = ell - 1
    factor, extra = sin_factor(xi)
    return LogBranchEntry(
        xi=xi,
        ell_xi=ell,
        g_leading_coeff=complex(g),
        g_leading_power=power,
        effective_leading_coeff=complex(factor * g),
        effective_power=power + extra,
        resonant=entry.xi.resonant,
    )


def assemble_report(reduced: ReducedP, idx: SingularIndices, q0: int,
                    policy: TruncationPolicy) -> SingularityReport:
    poles = tuple(pole_entry(e) for e in idx.P)
    branches = tuple(log_branch_entry(e) for e in idx.L)
    flags = sorted({e.xi.value for e in idx.P + idx.L if e.xi.resonant})
    notes = []
    if reduced.alpha0_resonant:
        notes.append(
            f"leading exponent class {reduced.alpha0_value!r} is resonant; "
            "its members were merged before factoring"
        )
    for xi in flags:
        notes.append(
            f"resonant exponent {xi!r}: coefficients of coincident lattice "
            "points were summed; the leading formula under resonance is unverified"
        )
    for e in poles:
        if e.possibly_regular:
            notes.append(
                f"pole at s={-e.xi!r} is cancelled to order 0 by sin(pi s); "
                "possibly regular since subleading f_xi data is unknown"
            )
    if idx.undetermined:
        notes.append(
            "positive x powers beyond ell_max are not ruled out at xi in "
            + ", ".join(repr(v) for v in idx.undetermined)
        )
    log_coeff = reduced.j0 - q0
    if log_coeff == 0 and not reduced.u:
        notes.append(
            "p(x, y) is a single monomial with j0 = q0: no singular part, "
            "as for the Friedrichs extension"
        )
    return SingularityReport(
        log_at_zero_coeff=log_coeff,
        poles=poles,
        log_branches=branches,
        resonance_flags=tuple(flags),
        xi_cutoff=policy.xi_cutoff,
        ell_max=policy.ell_max,
        undetermined_xi=idx.undetermined,
        j0=reduced.j0,
        q0=q0,
        notes=tuple(notes),
    )


def reg_residue_at_zero(res_boundary: float) -> float:
    """Residue at ``s = 0`` of the regular part from the boundary zeta residue at -1/2."""
    return -float(res_boundary) / 2.0


@dataclass
class Analysis:
    spec: EigenvalueSpec
    pair: LagrangianPair
    p: BigradedSeries
    reduced: ReducedP
    policy: TruncationPolicy
    log_series: BigradedSeries
    indices: SingularIndices
    report: SingularityReport
    warnings: list[str] = field(default_factory=list)


def run_pipeline(spec: EigenvalueSpec, pair: LagrangianPair, xi_cutoff: float,
                 ell_max: int = 32, merge_tol: float = DEFAULT_MERGE_TOL) -> Analysis:
    p = boundary_det(pair, spec)
    reduced = factor_leading(p, merge_tol)
    policy = TruncationPolicy.for_series(reduced.u, xi_cutoff, ell_max)
    log_series = log1p_truncated(reduced.u, policy)
    idx = singular_indices(log_series, policy, merge_tol,
                           reachable_xi(reduced.u, policy.xi_cutoff))
    report = assemble_report(reduced, idx, spec.q0, policy)
    return Analysis(spec, pair, p, reduced, policy, log_series, idx, report)


def analyze(spec: EigenvalueSpec, pair: LagrangianPair, xi_cutoff: float,
            ell_max: int = 32, merge_tol: float = DEFAULT_MERGE_TOL,
            check: bool = True, tol: float = 1e-10) -> SingularityReport:
    """Validate ``pair`` and return the singularity report up to ``xi_cutoff``."""
    if check:
        result = validate_lagrangian(pair, tol)
        if not result.ok:
            raise LagrangianError(result.violations)
    return run_pipeline(spec, pair, xi_cutoff, ell_max, merge_tol).report
