"""Exponent lattice spanned by the exponents ``nu_1, ..., nu_q1``.

An exponent is carried exactly as an integer vector ``(m_1, ..., m_q1)``
standing for ``sum m_j nu_j``.  Floating values are only used to order,
truncate and merge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import StructuralError

ExponentVector = tuple[int, ...]

DEFAULT_MERGE_TOL = 1e-12


def zero_vector(dim: int) -> ExponentVector:
    return (0,) * dim


def unit_vector(dim: int, j: int) -> ExponentVector:
    return tuple(1 if i == j else 0 for i in range(dim))


def add_vectors(v: ExponentVector, w: ExponentVector) -> ExponentVector:
    if len(v) != len(w):
        raise StructuralError(f"vector lengths differ: {len(v)} != {len(w)}")
    return tuple(a + b for a, b in zip(v, w))


def sub_vectors(v: ExponentVector, w: ExponentVector) -> ExponentVector:
    if len(v) != len(w):
        raise StructuralError(f"vector lengths differ: {len(v)} != {len(w)}")
    return tuple(a - b for a, b in zip(v, w))


def xi_value(v: Sequence[int], nus: Sequence[float]) -> float:
    """Numeric value ``sum m_j nu_j``, accumulated left to right."""
    if len(v) != len(nus):
        raise StructuralError(
            f"exponent vector has {len(v)} entries but the basis has {len(nus)}"
        )
    xi = 0.0
    for m, nu in zip(v, nus):
        xi += m * nu
    return xi


@dataclass(frozen=True)
class XiClass:
    """Exponent vectors whose numeric values agree within the merge tolerance.

    ``value`` is the smallest member value, which does not depend on the
    order in which the basis was listed.
    """

    value: float
    members: tuple[ExponentVector, ...]

    @property
    def resonant(self) -> bool:
        return len(self.members) > 1

    def __contains__(self, v) -> bool:
        return v in self.members


def merge_classes(vectors: Iterable[ExponentVector], nus: Sequence[float],
                  tol: float = DEFAULT_MERGE_TOL) -> list[XiClass]:
    """Partition ``vectors`` by numeric value, chaining neighbours within ``tol``."""
    if tol <= 0:
        raise ValueError("merge tolerance must be positive")
    valued = sorted((xi_value(v, nus), v) for v in set(vectors))
    classes: list[XiClass] = []
    group: list[tuple[float, ExponentVector]] = []
    for val, v in valued:
        if group and val - group[-1][0] > tol:
            classes.append(_close(group))
            group = []
        group.append((val, v))
    if group:
        classes.append(_close(group))
    return classes


def _close(group: list[tuple[float, ExponentVector]]) -> XiClass:
    return XiClass(group[0][0], tuple(sorted(v for _, v in group)))


def class_lookup(classes: Iterable[XiClass]) -> dict[ExponentVector, XiClass]:
    return {v: c for c in classes for v in c.members}
