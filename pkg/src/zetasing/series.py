"""Finite sums ``sum c[l, xi] x**l y**(2 xi)`` over ``l`` in Z and ``xi`` in the
exponent lattice, with the truncated products needed for ``log(1 + U)``.

Keys are ``(l, vec)`` with ``vec`` an integer :data:`ExponentVector` over the
series basis ``nus``.  Coefficients are Python complex numbers; only exact
zeros are pruned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import _kernel
from .errors import ContractError, StructuralError
from .grading import ExponentVector, xi_value, zero_vector

Key = tuple[int, ExponentVector]

#: Slack used when comparing exponent values against truncation limits.
TRUNC_TOL = 1e-9


class BigradedSeries:
    """Immutable sparse bigraded series.

    >>> s = BigradedSeries.monomial((0.5,), 1, (1,), 2.0)
    >>> s.coeff(1, (1,))
    (2+0j)
    """

    __slots__ = ("_terms", "_basis")

    def __init__(self, terms: Mapping[Key, complex] | Iterable[tuple[Key, complex]] = (),
                 basis: Sequence[float] = ()):
        basis = tuple(float(b) for b in basis)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Key, complex] = {}
        for (ell, vec), c in items:
            vec = tuple(int(m) for m in vec)
            if len(vec) != len(basis):
                raise StructuralError(
                    f"term exponent {vec} does not match basis of length {len(basis)}"
                )
            c = complex(c)
            if c != 0:
                clean[(int(ell), vec)] = c
        self._terms = {k: clean[k] for k in sorted(clean)}
        self._basis = basis

    @classmethod
    def _trusted(cls, items, basis) -> "BigradedSeries":
        obj = cls.__new__(cls)
        obj._terms = dict(items)
        obj._basis = basis
        return obj

    @classmethod
    def zero(cls, basis: Sequence[float]) -> "BigradedSeries":
        return cls((), basis)

    @classmethod
    def constant(cls, basis: Sequence[float], value: complex) -> "BigradedSeries":
        return cls({(0, zero_vector(len(basis))): value}, basis)

    @classmethod
    def monomial(cls, basis: Sequence[float], ell: int, vec: Sequence[int],
                 coef: complex = 1.0) -> "BigradedSeries":
        return cls({(ell, tuple(vec)): coef}, basis)

    @property
    def basis(self) -> tuple[float, ...]:
        return self._basis

    @property
    def terms(self) -> dict[Key, complex]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, ell: int, vec: Sequence[int]) -> complex:
        return self._terms.get((ell, tuple(vec)), 0j)

    def xi_of(self, vec: Sequence[int]) -> float:
        return xi_value(vec, self._basis)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigradedSeries):
            return NotImplemented
        return self._basis == other._basis and self._terms == other._terms

    def __repr__(self) -> str:
        body = ", ".join(f"x^{l} y^{v}: {c}" for (l, v), c in self._terms.items())
        return f"BigradedSeries({{{body}}}, basis={self._basis})"

    def __add__(self, other: "BigradedSeries") -> "BigradedSeries":
        return add(self, other)

    def __neg__(self) -> "BigradedSeries":
        return self.scale(-1.0)

    def __sub__(self, other: "BigradedSeries") -> "BigradedSeries":
        return add(self, -other)

    def __mul__(self, other: "BigradedSeries") -> "BigradedSeries":
        return mul(self, other)

    def scale(self, factor: complex) -> "BigradedSeries":
        factor = complex(factor)
        return BigradedSeries(((k, c * factor) for k, c in self._terms.items()), self._basis)

    def shift(self, ell: int, vec: Sequence[int]) -> "BigradedSeries":
        """Multiply by ``x**ell y**(2 vec)`` (``vec`` may have negative entries)."""
        return BigradedSeries(
            (((l + ell, tuple(a + b for a, b in zip(v, vec))), c)
             for (l, v), c in self._terms.items()),
            self._basis,
        )

    def to_list(self) -> list[list]:
        """Debug serialisation: ``[ell, vec, re, im]`` rows in key order."""
        return [[l, list(v), c.real, c.imag] for (l, v), c in self._terms.items()]


def _check_basis(s: BigradedSeries, t: BigradedSeries) -> None:
    if s.basis != t.basis:
        raise StructuralError(f"series bases differ: {s.basis} vs {t.basis}")


def add(s: BigradedSeries, t: BigradedSeries) -> BigradedSeries:
    _check_basis(s, t)
    acc = dict(s.items())
    for k, c in t.items():
        acc[k] = acc[k] + c if k in acc else c
    return BigradedSeries(acc, s.basis)


def mul(s: BigradedSeries, t: BigradedSeries) -> BigradedSeries:
    """Exact product, no truncation."""
    _check_basis(s, t)
    out = _kernel.mul_terms(list(s.items()), list(t.items()), s.basis,
                            math.inf, 0.0, math.inf, 0.0)
    return BigradedSeries._trusted(out, s.basis)


@dataclass(frozen=True)
class TruncationPolicy:
    """Enumeration window for the logarithm of ``1 + U``.

    Every coefficient with ``xi <= xi_cutoff`` and ``ell <= ell_max`` (and so
    every ``ell <= 0`` one) comes out exact.  Pruning uses the grading
    ``g(ell, xi) = ell + (kappa + 1) xi`` with
    ``kappa = max(-k_min, 0) / beta_min``.  Each admissible term of ``U`` has
    ``g >= min(beta_min, 1) > 0`` and ``g`` adds over products, so partial
    products never need to exceed ``grading_bound``.
    """

    xi_cutoff: float
    ell_max: int = 32
    beta_min: float | None = None
    k_min: int = 0
    k_max: int = 0

    def __post_init__(self):
        if not self.xi_cutoff >= 0:
            raise ValueError("xi_cutoff must be >= 0")
        if self.ell_max < 1:
            raise ValueError("ell_max must be >= 1")
        if self.beta_min is not None and not self.beta_min > 0:
            raise ValueError("beta_min must be positive when given")

    @classmethod
    def for_series(cls, u: BigradedSeries, xi_cutoff: float,
                   ell_max: int = 32) -> "TruncationPolicy":
        betas = []
        ks_pos = []
        ks = []
        for (k, v), _ in u.items():
            ks.append(k)
            if any(v):
                betas.append(u.xi_of(v))
                ks_pos.append(k)
        return cls(
            float(xi_cutoff),
            int(ell_max),
            min(betas) if betas else None,
            min(ks_pos) if ks_pos else 0,
            max(ks) if ks else 0,
        )

    @property
    def kappa(self) -> float:
        if self.beta_min is None:
            return 0.0
        return max(-self.k_min, 0) / self.beta_min

    @property
    def grading_bound(self) -> float:
        return self.ell_max + (self.kappa + 1.0) * self.xi_cutoff

    @property
    def min_grading(self) -> float:
        return 1.0 if self.beta_min is None else min(self.beta_min, 1.0)

    @property
    def max_power(self) -> int:
        return int(math.floor(self.grading_bound / self.min_grading + TRUNC_TOL))

    def grading(self, ell: int, xi: float) -> float:
        return ell + (self.kappa + 1.0) * xi

    def as_dict(self) -> dict:
        return {
            "xi_cutoff": self.xi_cutoff,
            "ell_max": self.ell_max,
            "beta_min": self.beta_min,
            "k_min": self.k_min,
            "k_max": self.k_max,
            "grading_bound": self.grading_bound,
            "max_power": self.max_power,
        }


def mul_truncated(s: BigradedSeries, t: BigradedSeries,
                  policy: TruncationPolicy) -> BigradedSeries:
    """Product with terms of ``xi > xi_cutoff`` or grading above the bound dropped."""
    _check_basis(s, t)
    # ell + kappa*xi + xi <= G  <=>  ell + (kappa + 1) xi <= G
    out = _kernel.mul_terms(list(s.items()), list(t.items()), s.basis,
                            policy.xi_cutoff, policy.kappa + 1.0,
                            policy.grading_bound, TRUNC_TOL)
    return BigradedSeries._trusted(out, s.basis)


def _window(s: BigradedSeries, policy: TruncationPolicy) -> BigradedSeries:
    lim = policy.xi_cutoff + TRUNC_TOL
    g_lim = policy.grading_bound + TRUNC_TOL
    return BigradedSeries._trusted(
        ((k, c) for k, c in s.items()
         if s.xi_of(k[1]) <= lim and policy.grading(k[0], s.xi_of(k[1])) <= g_lim),
        s.basis,
    )


def check_log_argument(u: BigradedSeries) -> None:
    """Raise unless every term has ``xi > 0``, or ``xi == 0`` and ``ell >= 1``."""
    zero = zero_vector(len(u.basis))
    for (k, v), _ in u.items():
        if v == zero:
            if k == 0:
                raise ContractError("log1p argument has a nonzero constant term")
            if k < 1:
                raise ContractError(
                    f"log1p argument has a term x^{k} with zero y-exponent"
                )
        elif not u.xi_of(v) > 0:
            raise ContractError(f"log1p argument has exponent {v} of value <= 0")


def log1p_truncated(u: BigradedSeries, policy: TruncationPolicy) -> BigradedSeries:
    """``log(1 + U) = sum_m (-1)**(m-1) U**m / m`` restricted to the policy window.

    The window is ``xi <= xi_cutoff`` and ``ell + (kappa + 1) xi <=
    grading_bound``; it contains every ``(ell, xi)`` with ``ell <= ell_max``
    and every coefficient in it is exact.  Powers are accumulated in
    increasing ``m`` until ``U**m`` leaves the window.
    """
    check_log_argument(u)
    power = _window(u, policy)
    acc: dict[Key, complex] = {}
    m = 1
    while power and m <= policy.max_power:
        factor = (1.0 if m % 2 else -1.0) / m
        for k, c in power.items():
            term = c * factor
            acc[k] = acc[k] + term if k in acc else term
        m += 1
        power = mul_truncated(power, u, policy)
    return BigradedSeries(acc, u.basis)


def eval_numeric(s: BigradedSeries, x: complex, y: float) -> complex:
    """Evaluate at ``x`` and real ``y > 0``, summing in key order."""
    y = float(y)
    if not y > 0:
        raise ValueError("evaluation needs real y > 0")
    x = complex(x)
    total = 0j
    for (ell, v), c in s.items():
        if ell < 0 and x == 0:
            raise ZeroDivisionError("x = 0 with negative powers of x present")
        total += c * x ** ell * y ** (2.0 * s.xi_of(v))
    return total
