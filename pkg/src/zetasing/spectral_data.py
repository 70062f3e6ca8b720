"""Boundary eigenvalue data and the derived exponents and weights.

Only eigenvalues of the cross-section operator in ``[-1/4, 3/4)`` matter.
Those equal to ``-1/4`` are counted by ``q0``; the others are stored through
their exponent ``nu = sqrt(lambda + 1/4)`` in ``(0, 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DomainError

LAMBDA_MIN = -0.25
LAMBDA_MAX = 0.75

#: ``|lambda + 1/4|`` below this is classified as the ``-1/4`` eigenvalue.
QUARTER_TOL = 1e-14


def gamma_real(x: float) -> float:
    """Gamma function on ``(0, 2)``, the only range the weights need."""
    x = float(x)
    if not 0.0 < x < 2.0:
        raise DomainError(f"gamma_real needs 0 < x < 2, got {x!r}")
    return math.gamma(x)


def nu_of_lambda(lam: float) -> float:
    lam = float(lam)
    if not LAMBDA_MIN < lam < LAMBDA_MAX:
        raise DomainError(
            f"eigenvalue {lam!r} outside the open interval (-1/4, 3/4)"
        )
    return math.sqrt(lam + 0.25)


def tau_of_nu(nu: float) -> float:
    """Spectral weight ``2**(2 nu) * Gamma(1 + nu) / Gamma(1 - nu)``.

    Positive on the whole open interval; ``nu = 1`` would hit the pole of
    ``Gamma(1 - nu)``.
    """
    nu = float(nu)
    if not 0.0 < nu < 1.0:
        raise DomainError(f"nu must lie in (0, 1), got {nu!r}")
    return 2.0 ** (2.0 * nu) * gamma_real(1.0 + nu) / gamma_real(1.0 - nu)


@dataclass(frozen=True)
class NuTau:
    nu: float
    tau: float

    @classmethod
    def from_lambda(cls, lam: float) -> "NuTau":
        return cls.from_nu(nu_of_lambda(lam))

    @classmethod
    def from_nu(cls, nu: float) -> "NuTau":
        return cls(float(nu), tau_of_nu(nu))


@dataclass(frozen=True)
class EigenvalueSpec:
    """Canonical boundary spectrum: ``q0`` copies of -1/4 plus sorted ``nus``.

    ``order`` records how the caller's ``nu`` list was permuted into sorted
    order (``nus[i] == given[order[i]]``) so matrix columns can follow.
    """

    q0: int
    nus: tuple[float, ...]
    dimension_n: int | None = None
    order: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if int(self.q0) != self.q0 or self.q0 < 0:
            raise DomainError(f"q0 must be a nonnegative integer, got {self.q0!r}")
        for nu in self.nus:
            if not 0.0 < nu < 1.0:
                raise DomainError(f"nu must lie in (0, 1), got {nu!r}")
        if any(a > b for a, b in zip(self.nus, self.nus[1:])):
            raise DomainError("nus must be nondecreasing; use from_nus to sort")
        if self.q < 1:
            raise DomainError("empty spectrum: need q0 + q1 >= 1")
        if self.dimension_n is not None and self.dimension_n < 1:
            raise DomainError("dimension_n must be a positive integer")

    @property
    def q1(self) -> int:
        return len(self.nus)

    @property
    def q(self) -> int:
        return self.q0 + self.q1

    @property
    def lambdas(self) -> tuple[float, ...]:
        return tuple(nu * nu - 0.25 for nu in self.nus)

    @property
    def taus(self) -> tuple[float, ...]:
        return tuple(tau_of_nu(nu) for nu in self.nus)

    @classmethod
    def from_nus(cls, nus: Iterable[float], q0: int = 0,
                 dimension_n: int | None = None) -> "EigenvalueSpec":
        given = [float(v) for v in nus]
        for v in given:
            if not 0.0 < v < 1.0:
                raise DomainError(f"nu must lie in (0, 1), got {v!r}")
        order = tuple(sorted(range(len(given)), key=lambda i: given[i]))
        return cls(q0, tuple(given[i] for i in order), dimension_n, order)

    @classmethod
    def from_lambdas(cls, lambdas: Sequence[float], q0: int = 0,
                     dimension_n: int | None = None) -> "EigenvalueSpec":
        """Build from raw eigenvalues; entries equal to -1/4 are folded into q0.

        Folded entries must come first in ``lambdas`` so that the column
        binding of the boundary matrices stays meaningful.
        """
        extra_q0 = 0
        rest: list[float] = []
        for i, lam in enumerate(lambdas):
            lam = float(lam)
            if abs(lam - LAMBDA_MIN) <= QUARTER_TOL:
                if rest:
                    raise DomainError(
                        f"lambdas[{i}] equals -1/4 but follows an eigenvalue "
                        "above -1/4; list the -1/4 block first"
                    )
                extra_q0 += 1
                continue
            rest.append(nu_of_lambda(lam))
        return cls.from_nus(rest, q0 + extra_q0, dimension_n)

    def nu_tau(self) -> list[NuTau]:
        return [NuTau(nu, tau_of_nu(nu)) for nu in self.nus]
