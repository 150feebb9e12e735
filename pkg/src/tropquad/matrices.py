"""Matrices over the semifield; the invertible ones are exactly the
monomial (generalized permutation) matrices with tangible scales."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import PreconditionError
from .semiring import ZERO, Element, Semifield, semiring_sum


@dataclass(frozen=True, slots=True, repr=False)
class GeneralMatrix:
    """Rectangular matrix of semifield elements."""

    sf: Semifield
    rows: tuple[tuple[Element, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(self.sf.element(v) for v in row) for row in self.rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        if any(len(row) != len(rows[0]) for row in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __repr__(self) -> str:
        return "[" + "; ".join(" ".join(repr(v) for v in row) for row in self.rows) + "]"


@dataclass(frozen=True, slots=True, repr=False)
class MonomialMatrix:
    """One tangible entry per row and column: scales[j] sits at row perm[j] of column j."""

    sf: Semifield
    perm: tuple[int, ...]
    scales: tuple[Element, ...]

    def __post_init__(self):
        perm = tuple(self.perm)
        scales = tuple(self.sf.element(c) for c in self.scales)
        n = len(perm)
        if sorted(perm) != list(range(n)) or len(scales) != n:
            raise ValueError("perm must be a permutation of 0..n-1 matching scales")
        if any(not c.is_tangible for c in scales):
            raise PreconditionError(
                "tangible scales required",
                "monomial matrices must carry tangible (unit) scales",
            )
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "scales", scales)

    @property
    def n(self) -> int:
        return len(self.perm)

    def to_general(self) -> GeneralMatrix:
        rows = [[ZERO] * self.n for _ in range(self.n)]
        for j in range(self.n):
            rows[self.perm[j]][j] = self.scales[j]
        return GeneralMatrix(self.sf, tuple(tuple(r) for r in rows))

    def apply(self, x: Sequence[Element]) -> tuple[Element, ...]:
        if len(x) != self.n:
            raise PreconditionError("dimension match required", "vector length mismatch")
        out = [ZERO] * self.n
        for j in range(self.n):
            out[self.perm[j]] = self.scales[j] * x[j]
        return tuple(out)

    def __repr__(self) -> str:
        return repr(self.to_general())


def identity_matrix(sf: Semifield, n: int) -> MonomialMatrix:
    return MonomialMatrix(sf, tuple(range(n)), (sf.one,) * n)


def mat_mul(a: GeneralMatrix, b: GeneralMatrix) -> GeneralMatrix:
    if a.ncols != b.nrows:
        raise PreconditionError("dimension match required", "inner dimensions differ")
    rows = tuple(
        tuple(semiring_sum(a.rows[i][j] * b.rows[j][k] for j in range(a.ncols)) for k in range(b.ncols))
        for i in range(a.nrows)
    )
    return GeneralMatrix(a.sf, rows)


def monomial_decomposition(m: GeneralMatrix) -> MonomialMatrix:
    """Read a general matrix as monomial, or raise naming the first violation."""
    if not m.is_square:
        raise PreconditionError("square matrix required", "only square matrices can be inverted")
    n = m.nrows
    perm = [-1] * n
    scales: list[Element] = [ZERO] * n
    for j in range(n):
        hits = [i for i in range(n) if not m.rows[i][j].is_zero]
        if len(hits) != 1:
            raise PreconditionError(
                "monomial matrix required",
                f"column {j + 1} has {len(hits)} nonzero entries (need exactly 1)",
            )
        i = hits[0]
        entry = m.rows[i][j]
        if not entry.is_tangible:
            raise PreconditionError(
                "monomial matrix required",
                f"entry at row {i + 1}, column {j + 1} is ghost, hence not a unit",
            )
        perm[j] = i
        scales[j] = entry
    for i in range(n):
        if perm.count(i) != 1:
            raise PreconditionError(
                "monomial matrix required",
                f"row {i + 1} has {perm.count(i)} nonzero entries (need exactly 1)",
            )
    return MonomialMatrix(m.sf, tuple(perm), tuple(scales))


def is_invertible(m: GeneralMatrix) -> bool:
    try:
        monomial_decomposition(m)
    except PreconditionError as exc:
        if exc.precondition == "square matrix required":
            raise
        return False
    return True


def invert(m: MonomialMatrix) -> MonomialMatrix:
    inv_perm = [0] * m.n
    for j in range(m.n):
        inv_perm[m.perm[j]] = j
    scales = tuple(m.scales[inv_perm[k]].inverse() for k in range(m.n))
    return MonomialMatrix(m.sf, tuple(inv_perm), scales)
