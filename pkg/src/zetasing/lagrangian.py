"""Lagrangian boundary data ``(A, B)`` and the boundary determinant ``p(x, y)``.

Column ``i`` of ``A`` and ``B`` belongs to the ``i``-th eigenvalue of the
canonical spectrum: the first ``q0`` columns to the ``-1/4`` block, the rest
to the sorted ``nus``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import StructuralError
from .grading import unit_vector, zero_vector
from .series import BigradedSeries, add, mul
from .spectral_data import EigenvalueSpec, tau_of_nu

DEFAULT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class LagrangianPair:
    A: np.ndarray
    B: np.ndarray
    q0: int = 0

    def __post_init__(self):
        A = np.array(self.A, dtype=complex)
        B = np.array(self.B, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise StructuralError(f"A must be square, got shape {A.shape}")
        if B.shape != A.shape:
            raise StructuralError(f"A and B shapes differ: {A.shape} vs {B.shape}")
        if A.shape[0] < 1:
            raise StructuralError("matrices must be at least 1x1")
        if not 0 <= self.q0 <= A.shape[0]:
            raise StructuralError(f"q0={self.q0} incompatible with q={A.shape[0]}")
        A.setflags(write=False)
        B.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def q(self) -> int:
        return self.A.shape[0]

    @property
    def A_prime(self) -> np.ndarray:
        """``A`` with its first ``q0`` columns negated."""
        Ap = self.A.copy()
        Ap[:, : self.q0] *= -1
        return Ap

    def left_multiply(self, M) -> "LagrangianPair":
        M = np.asarray(M, dtype=complex)
        return LagrangianPair(M @ self.A, M @ self.B, self.q0)

    def permute_columns(self, perm: Sequence[int]) -> "LagrangianPair":
        """Reorder columns: new column ``i`` is old column ``perm[i]``."""
        perm = list(perm)
        return LagrangianPair(self.A[:, perm], self.B[:, perm], self.q0)


@dataclass
class ValidationResult:
    ok: bool
    violations: list[str] = field(default_factory=list)
    rank_margin: float = 0.0
    hermitian_defect: float = 0.0

    def __bool__(self) -> bool:
        return self.ok


def validate_lagrangian(pair: LagrangianPair, tol: float = DEFAULT_TOL) -> ValidationResult:
    """Check rank ``(A B) == q`` and self-adjointness of ``A' B*``.

    Rank is judged by ``sigma_min > tol * sigma_max``; self-adjointness by
    ``max|S - S*| <= tol * (1 + max|S|)`` with ``S = A' B*``.
    """
    AB = np.hstack([pair.A, pair.B])
    sv = np.linalg.svd(AB, compute_uv=False)
    smax = float(sv[0]) if sv.size else 0.0
    smin = float(sv[-1]) if sv.size else 0.0
    violations = []
    margin = smin / smax if smax > 0 else 0.0
    if not (smax > 0 and smin > tol * smax):
        violations.append(
            f"rank: (A B) is rank deficient, sigma_min/sigma_max = {margin:.3e} <= {tol:.1e}"
        )
    S = pair.A_prime @ pair.B.conj().T
    defect = float(np.max(np.abs(S - S.conj().T)))
    scale = 1.0 + float(np.max(np.abs(S)))
    if defect > tol * scale:
        violations.append(
            f"self-adjoint: max|A'B* - (A'B*)*| = {defect:.3e} exceeds {tol * scale:.3e}"
        )
    return ValidationResult(not violations, violations, margin, defect)


def diagonal_block(q0: int, nus: Sequence[float], taus: Sequence[float] | None = None
                   ) -> list[BigradedSeries]:
    """Diagonal entries: ``x`` for the ``-1/4`` block, ``tau_j y**(2 nu_j)`` after."""
    basis = tuple(nus)
    d = len(basis)
    if taus is None:
        taus = [tau_of_nu(nu) for nu in basis]
    diag = [BigradedSeries.monomial(basis, 1, zero_vector(d)) for _ in range(q0)]
    diag += [BigradedSeries.monomial(basis, 0, unit_vector(d, j), taus[j]) for j in range(d)]
    return diag


def determinant_series(A, B, q0: int, nus: Sequence[float],
                       taus: Sequence[float] | None = None) -> BigradedSeries:
    """``det(A - B D)`` for the diagonal ``D`` built from ``q0`` and ``nus``.

    Equals the ``2q x 2q`` block determinant with rows ``(A B)`` and
    ``(D Id)`` by the Schur complement of the identity block.  ``nus`` may be
    in any order here; column ``q0 + j`` pairs with ``nus[j]``.
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    q = A.shape[0]
    if q0 + len(nus) != q:
        raise StructuralError(f"q0 + q1 = {q0 + len(nus)} but matrices are {q}x{q}")
    diag = diagonal_block(q0, nus, taus)
    basis = tuple(float(v) for v in nus)
    entries = [[BigradedSeries.constant(basis, A[i, j]) - diag[j].scale(B[i, j])
                for j in range(q)] for i in range(q)]
    return _cofactor_det(entries, list(range(q)), list(range(q)), basis)


def _cofactor_det(M, rows: list[int], cols: list[int], basis) -> BigradedSeries:
    if len(rows) == 1:
        return M[rows[0]][cols[0]]
    # expand along the column with the fewest nonzero entries
    best = min(range(len(cols)), key=lambda c: sum(1 for r in rows if M[r][cols[c]]))
    col = cols[best]
    sub_cols = cols[:best] + cols[best + 1:]
    total = BigradedSeries.zero(basis)
    for pos, r in enumerate(rows):
        entry = M[r][col]
        if not entry:
            continue
        minor = _cofactor_det(M, rows[:pos] + rows[pos + 1:], sub_cols, basis)
        term = mul(entry, minor)
        total = add(total, -term if (pos + best) % 2 else term)
    return total


def boundary_det(pair: LagrangianPair, spec: EigenvalueSpec) -> BigradedSeries:
    if pair.q != spec.q:
        raise StructuralError(f"matrices are {pair.q}x{pair.q} but the spectrum has q={spec.q}")
    if pair.q0 != spec.q0:
        raise StructuralError(f"pair.q0={pair.q0} but spectrum q0={spec.q0}")
    return determinant_series(pair.A, pair.B, spec.q0, spec.nus, spec.taus)
