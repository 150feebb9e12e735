"""Quasilinear part, rigid complements, and the extremes of Rig(q).

Every form splits as diagonal quasilinear part plus a rigid (zero-diagonal)
complement; the complements correspond bijectively to the off-diagonal
companions, so Rig(q) is represented implicitly by the companion table and
is never enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .companions import (
    CompanionTable,
    NuLtDoubled,
    companion_table,
    contains,
    is_companion,
    set_max,
    set_min,
)
from .errors import PreconditionError
from .forms import QuadraticForm, SymmetricBilinearForm
from .semiring import ZERO


@dataclass(frozen=True, slots=True)
class Decomposition:
    ql: QuadraticForm
    rigid: QuadraticForm
    companion: SymmetricBilinearForm


def quasilinear_part(q: QuadraticForm) -> QuadraticForm:
    """The diagonal-only form; the unique maximal quasilinear form below q."""
    return QuadraticForm(q.sf, q.diag)


def rigid_complement(q: QuadraticForm, b: SymmetricBilinearForm) -> QuadraticForm:
    """The zero-diagonal form carved out of a companion's off-diagonal part."""
    if not is_companion(q, b):
        raise PreconditionError(
            "companion required",
            "rigid complements come from companions of the form",
        )
    upper = {}
    for i in range(q.n):
        for j in range(i + 1, q.n):
            upper[(i, j)] = b.gram[i][j]
    return QuadraticForm(q.sf, (ZERO,) * q.n, upper)


def off_diagonal_companion(rho: QuadraticForm) -> SymmetricBilinearForm:
    """A rigid form's unique companion: zero diagonal, its own cross coefficients."""
    if any(not a.is_zero for a in rho.diag):
        raise PreconditionError("rigid form required", "the form has a nonzero diagonal coefficient")
    n = rho.n
    rows = [[ZERO] * n for _ in range(n)]
    for i, j, v in rho.upper:
        rows[i][j] = v
        rows[j][i] = v
    return SymmetricBilinearForm(rho.sf, tuple(tuple(r) for r in rows))


def decompose(q: QuadraticForm, b: Optional[SymmetricBilinearForm] = None) -> Decomposition:
    """Split q along a companion (default: the zero-diagonal minimal one)."""
    if b is None:
        ext = rig_extrema(q)
        b = off_diagonal_companion(ext.minimum)
    rho = rigid_complement(q, b)
    return Decomposition(quasilinear_part(q), rho, off_diagonal_companion(rho))


@dataclass(frozen=True, slots=True)
class RigExtrema:
    minimum: QuadraticForm
    maximum: Optional[QuadraticForm]
    no_max_cell: Optional[tuple[int, int]]  # witness when maximum is None
    table: CompanionTable


def rig_extrema(q: QuadraticForm) -> RigExtrema:
    """Cellwise extremes of the set of rigid complements in q.

    The minimum picks each cell's canonical minimal element; the maximum
    exists iff every off-diagonal cell has one (half-open cells over a
    dense gap do not).
    """
    table = companion_table(q)
    n = q.n
    min_upper = {}
    max_upper = {}
    no_max_cell = None
    for i in range(n):
        for j in range(i + 1, n):
            cell = table.cell(i, j)
            min_upper[(i, j)] = set_min(q.sf, cell)
            top = set_max(q.sf, cell)
            if top is None:
                if no_max_cell is None:
                    no_max_cell = (i, j)
                    assert isinstance(cell, NuLtDoubled)
            else:
                max_upper[(i, j)] = top
    minimum = QuadraticForm(q.sf, (ZERO,) * n, min_upper)
    maximum = None if no_max_cell is not None else QuadraticForm(q.sf, (ZERO,) * n, max_upper)
    return RigExtrema(minimum, maximum, no_max_cell, table)


def rig_contains(q: QuadraticForm, rho: QuadraticForm) -> bool:
    """Whether the zero-diagonal form rho is a rigid complement in q."""
    if any(not a.is_zero for a in rho.diag):
        raise PreconditionError("rigid form required", "the candidate has a nonzero diagonal coefficient")
    if q.n != rho.n:
        raise PreconditionError("dimension match required", "dimensions differ")
    table = companion_table(q)
    return all(
        contains(table.cell(i, j), rho.beta(i, j)) for i in range(q.n) for j in range(i + 1, q.n)
    )


def min_companion(q: QuadraticForm) -> SymmetricBilinearForm:
    """The all-minimal off-diagonal companion (zero where possible)."""
    return off_diagonal_companion(rig_extrema(q).minimum)


__all__ = [
    "Decomposition",
    "RigExtrema",
    "decompose",
    "min_companion",
    "off_diagonal_companion",
    "quasilinear_part",
    "rig_contains",
    "rig_extrema",
    "rigid_complement",
]
