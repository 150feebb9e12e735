"""Companion tables: which symmetric bilinear forms accompany a quadratic form.

For a pair of base vectors, the set of admissible cross coefficients is one
of four shapes, decided by comparing the cross coefficient against the
geometric mean of the two diagonal coefficients (at the exponent level):

* a singleton (the coefficient is forced),
* a closed lower interval ``{0} union {beta : 2 exp(beta) <= r}``,
* a half-open lower interval (strict bound, no maximum),
* a nu-class (all tangibles of one exponent plus its ghost).

The closed-form case analysis in :func:`companion_set_pair` is
cross-validated everywhere by :func:`companion_membership_oracle`, an
independent decision procedure that checks the defining one-parameter
family of scaling identities on a finite critical set of exponents.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import PreconditionError
from .forms import QuadraticForm, SymmetricBilinearForm
from .semiring import ZERO, Element, Exponent, Semifield, GroupKind, _canon_exp

# ---------------------------------------------------------------------------
# symbolic companion sets


@dataclass(frozen=True, slots=True)
class Singleton:
    value: Element


@dataclass(frozen=True, slots=True)
class NuLeqDoubled:
    """{0} union {beta : 2 * exp(beta) <= bound2}(closed lower set)."""

    bound2: Exponent


@dataclass(frozen=True, slots=True)
class NuLtDoubled:
    """{0} union {beta : 2 * exp(beta) < bound2} (no maximal element)."""

    bound2: Exponent


@dataclass(frozen=True, slots=True)
class NuClass:
    """All tangibles with the given exponent, plus its ghost."""

    exp: Exponent


CompanionSet = Union[Singleton, NuLeqDoubled, NuLtDoubled, NuClass]


def contains(cell: CompanionSet, beta: Element) -> bool:
    if isinstance(cell, Singleton):
        return beta == cell.value
    if isinstance(cell, NuLeqDoubled):
        return beta.is_zero or 2 * beta.exp <= cell.bound2
    if isinstance(cell, NuLtDoubled):
        return beta.is_zero or 2 * beta.exp < cell.bound2
    return (not beta.is_zero) and beta.exp == cell.exp


def set_min(sf: Semifield, cell: CompanionSet) -> Element:
    """A minimal element of the cell.

    Lower-set variants contain zero; a singleton is its own minimum.  In a
    nu-class every tangible is minimal, so the identity-fiber tangible is
    returned as the canonical pick.
    """
    if isinstance(cell, Singleton):
        return cell.value
    if isinstance(cell, (NuLeqDoubled, NuLtDoubled)):
        return ZERO
    return sf.tangible(cell.exp)


def set_max(sf: Semifield, cell: CompanionSet) -> Optional[Element]:
    """The maximum of the cell, or None when no maximal element exists."""
    if isinstance(cell, Singleton):
        return cell.value
    if isinstance(cell, NuLeqDoubled):
        half = _canon_exp(Fraction(cell.bound2) / 2)
        return sf.ghost(half) if sf.legal_exponent(half) else None
    if isinstance(cell, NuLtDoubled):
        return None
    return sf.ghost(cell.exp)


# ---------------------------------------------------------------------------
# the rank-2 case analysis


class PairBranch(enum.Enum):
    """Which branch of the cross-coefficient classification fired."""

    ZERO_SIDE = "zero_side"  # some diagonal coefficient is zero
    DOMINANT = "dominant"  # cross coefficient nu-exceeds the mean: forced
    DOMINANT_EDGE_GHOSTS = "dominant_edge_ghosts"  # discrete half-step edge, ghost diagonal
    DOMINANT_EDGE_TANGIBLE = "dominant_edge_tangible"  # discrete half-step edge, tangible side
    MEAN_IN_GROUP = "mean_in_group"  # the mean exponent is realizable
    MEAN_GAP_DENSE = "mean_gap_dense"  # dense group, mean exponent missing
    MEAN_GAP_DISCRETE_TANGIBLE = "mean_gap_discrete_tangible"
    MEAN_GAP_DISCRETE_GHOSTS = "mean_gap_discrete_ghosts"


@dataclass(frozen=True, slots=True)
class MeanContext:
    """Geometric-mean bookkeeping for a pair of nonzero diagonal coefficients.

    ``xi_exp`` is half the exponent sum (possibly a half-exponent outside
    the group).  In the discrete gap case ``sigma_exp``/``tau_exp`` bracket
    it at distance 1/2 on either side, and their sum is twice ``xi_exp``.
    """

    xi_exp: Fraction
    case: str  # "mean_in_group" | "mean_gap_dense" | "mean_gap_discrete"
    sigma_exp: Optional[int] = None
    tau_exp: Optional[int] = None


def mean_context(sf: Semifield, alpha1: Element, alpha2: Element) -> MeanContext:
    if alpha1.is_zero or alpha2.is_zero:
        raise PreconditionError("nonzero element required", "the mean needs nonzero coefficients")
    total = Fraction(alpha1.exp) + Fraction(alpha2.exp)
    xi = total / 2
    if sf.legal_exponent(xi):
        return MeanContext(xi, "mean_in_group")
    if sf.dense:
        return MeanContext(xi, "mean_gap_dense")
    return MeanContext(xi, "mean_gap_discrete", sigma_exp=int(xi + Fraction(1, 2)), tau_exp=int(xi - Fraction(1, 2)))


def pair_analysis(
    sf: Semifield, alpha1: Element, alpha2: Element, alpha: Element
) -> tuple[PairBranch, CompanionSet]:
    """Classify and compute the cross-coefficient companion set of
    the rank-2 form with diagonal (alpha1, alpha2) and cross term alpha."""
    if alpha1.is_zero or alpha2.is_zero:
        return PairBranch.ZERO_SIDE, Singleton(alpha)
    total = _canon_exp(Fraction(alpha1.exp) + Fraction(alpha2.exp))
    halvable = sf.legal_exponent(Fraction(total) / 2)
    ghost_pair = alpha1.is_ghost and alpha2.is_ghost
    if not alpha.is_zero and 2 * alpha.exp > total:
        # exactly half a discrete step above the mean, the set widens
        if sf.group is GroupKind.INT and not halvable and 2 * alpha.exp == total + 1:
            if ghost_pair:
                return PairBranch.DOMINANT_EDGE_GHOSTS, NuLeqDoubled(_canon_exp(2 * alpha.exp))
            return PairBranch.DOMINANT_EDGE_TANGIBLE, NuClass(alpha.exp)
        return PairBranch.DOMINANT, Singleton(alpha)
    if halvable:
        return PairBranch.MEAN_IN_GROUP, NuLeqDoubled(total)
    if sf.group is GroupKind.INT:
        if ghost_pair:
            return PairBranch.MEAN_GAP_DISCRETE_GHOSTS, NuLeqDoubled(total + 1)
        return PairBranch.MEAN_GAP_DISCRETE_TANGIBLE, NuLeqDoubled(total - 1)
    return PairBranch.MEAN_GAP_DENSE, NuLtDoubled(total)


def companion_set_pair(sf: Semifield, alpha1: Element, alpha2: Element, alpha: Element) -> CompanionSet:
    return pair_analysis(sf, alpha1, alpha2, alpha)[1]


def pair_branch(sf: Semifield, alpha1: Element, alpha2: Element, alpha: Element) -> PairBranch:
    return pair_analysis(sf, alpha1, alpha2, alpha)[0]


def diagonal_cell(alpha: Element) -> CompanionSet:
    """Admissible Gram diagonal entries over a diagonal coefficient."""
    if alpha.is_zero:
        return Singleton(ZERO)
    return NuLeqDoubled(_canon_exp(2 * alpha.exp))


# ---------------------------------------------------------------------------
# the independent membership oracle


def _tie_points(terms: list[tuple[int, Exponent]]) -> list[Fraction]:
    ties = set()
    for a in range(len(terms)):
        for b in range(a + 1, len(terms)):
            s1, o1 = terms[a]
            s2, o2 = terms[b]
            if s1 != s2:
                ties.add((Fraction(o2) - Fraction(o1)) / (s1 - s2))
    return sorted(ties)


def _probe_exponents(sf: Semifield, criticals: list[Fraction]) -> list[Exponent]:
    """Legal exponents covering every region the critical points cut out."""
    if not criticals:
        return [0]
    probes: list[Exponent] = []
    for c in criticals:
        if sf.legal_exponent(c):
            probes.append(_canon_exp(c))
    for lo, hi in zip(criticals, criticals[1:]):
        mid = sf.between(lo, hi)
        if mid is not None:
            probes.append(mid)
    below = sf.between(criticals[0] - 2, criticals[0])
    above = sf.between(criticals[-1], criticals[-1] + 2)
    probes.append(below if below is not None else _canon_exp(criticals[0] - 1))
    probes.append(above if above is not None else _canon_exp(criticals[-1] + 1))
    return sorted(set(probes))


def companion_membership_oracle(
    sf: Semifield, alpha1: Element, alpha2: Element, alpha: Element, beta: Element
) -> bool:
    """Decide cross-coefficient membership directly from its definition.

    beta is admissible iff for every tangible lambda the two sums

        lambda * alpha1 + lambda^-1 * alpha2 + alpha
        lambda * alpha1 + lambda^-1 * alpha2 + beta

    coincide.  As a function of exp(lambda) the four summand nu-levels are
    linear with slopes +1, -1, 0, 0, so whether the sums coincide is
    constant on each open interval between pairwise tie points of those
    lines.  Probing every legal tie point, one legal exponent inside each
    open interval, and one beyond each end therefore decides the universal
    statement exactly.  Both sums contain identical lambda-terms, so the
    outcome depends on lambda only through its exponent; when the semifield
    carries fibers one flipped fiber is probed anyway.
    """
    terms: list[tuple[int, Exponent]] = []
    if not alpha1.is_zero:
        terms.append((1, alpha1.exp))
    if not alpha2.is_zero:
        terms.append((-1, alpha2.exp))
    if not alpha.is_zero:
        terms.append((0, alpha.exp))
    if not beta.is_zero:
        terms.append((0, beta.exp))
    probes = _probe_exponents(sf, _tie_points(terms))
    fibers = [sf.identity_fiber()]
    if sf.fiber_rank > 0:
        fibers.append((-1,) + sf.identity_fiber()[1:])
    for exp in probes:
        for fib in fibers:
            lam = sf.tangible(exp, fib)
            lam_inv = lam.inverse()
            base1 = lam * alpha1
            base2 = lam_inv * alpha2
            if base1 + base2 + alpha != base1 + base2 + beta:
                return False
    return True


def diagonal_membership_oracle(sf: Semifield, alpha: Element, beta: Element) -> bool:
    """Independent check that beta is an admissible Gram diagonal entry.

    The defining family of identities, after dividing by the product of the
    two scalars, becomes one-parameter in t = lambda/mu:

        (t + t^-1 + e) * alpha  ==  (t + t^-1) * alpha + beta

    and is piecewise-constant in exp(t) between the tie points of the
    summand nu-levels, probed the same way as the cross-coefficient oracle.
    """
    terms: list[tuple[int, Exponent]] = []
    if not alpha.is_zero:
        # nu-level of (t + t^-1) * alpha is |exp(t)| + exp(alpha)
        terms.append((1, alpha.exp))
        terms.append((-1, alpha.exp))
    if not beta.is_zero:
        terms.append((0, beta.exp))
    probes = _probe_exponents(sf, _tie_points(terms))
    e = sf.e
    for exp in probes:
        t = sf.tangible(exp)
        t_inv = t.inverse()
        lhs = (t + t_inv + e) * alpha
        rhs = (t + t_inv) * alpha + beta
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True, slots=True)
class CompanionTable:
    """Symmetric grid of companion sets, one per pair of base vectors."""

    sf: Semifield
    cells: tuple[tuple[CompanionSet, ...], ...]

    @property
    def n(self) -> int:
        return len(self.cells)

    def cell(self, i: int, j: int) -> CompanionSet:
        return self.cells[i][j]


def companion_table(q: QuadraticForm) -> CompanionTable:
    """Each cell depends only on the two coefficients it indexes."""
    n = q.n
    grid: list[list[CompanionSet]] = [[None] * n for _ in range(n)]  # type: ignore[list-item]
    for i in range(n):
        grid[i][i] = diagonal_cell(q.diag[i])
        for j in range(i + 1, n):
            cell = companion_set_pair(q.sf, q.diag[i], q.diag[j], q.beta(i, j))
            grid[i][j] = cell
            grid[j][i] = cell
    return CompanionTable(q.sf, tuple(tuple(row) for row in grid))


def build_companion(table: CompanionTable, choice) -> SymmetricBilinearForm:
    """Assemble a companion from a symmetric per-cell choice of entries.

    ``choice`` maps (i, j) with i <= j to an element of cell (i, j); any
    entry outside its cell is rejected.
    """
    n = table.n
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            beta = choice.get((i, j))
            if beta is None:
                raise PreconditionError(
                    "complete choice required", f"no entry chosen for cell ({i + 1},{j + 1})"
                )
            if not contains(table.cell(i, j), beta):
                raise PreconditionError(
                    "choice within companion cell required",
                    f"entry {beta} at ({i + 1},{j + 1}) lies outside its companion set",
                )
            rows[i][j] = beta
            rows[j][i] = beta
    return SymmetricBilinearForm(table.sf, tuple(tuple(r) for r in rows))


def is_companion(q: QuadraticForm, b: SymmetricBilinearForm) -> bool:
    """Whether b accompanies q, via cellwise membership."""
    if q.n != b.n:
        raise PreconditionError("dimension match required", "form and Gram dimensions differ")
    table = companion_table(q)
    return all(
        contains(table.cell(i, j), b.gram[i][j]) for i in range(q.n) for j in range(i, q.n)
    )


# ---------------------------------------------------------------------------
# form predicates


def is_rigid(q: QuadraticForm) -> bool:
    """A form admits exactly one companion iff its diagonal vanishes."""
    return all(a.is_zero for a in q.diag)


def is_rigid_at_pair(sf: Semifield, alpha1: Element, alpha2: Element, alpha: Element) -> bool:
    """Whether the rank-2 cross coefficient is forced (singleton cell).

    With a zero diagonal coefficient the cell is always the singleton of
    the cross coefficient.  Otherwise the exponent criterion applies: the
    doubled cross exponent must strictly exceed the exponent sum, by more
    than one step in the discrete case.
    """
    if alpha1.is_zero or alpha2.is_zero:
        return True
    if alpha.is_zero:
        return False
    total = Fraction(alpha1.exp) + Fraction(alpha2.exp)
    if sf.dense:
        return total < 2 * alpha.exp
    return total < 2 * alpha.exp - 1


def quasilinear_pair(sf: Semifield, alpha1: Element, alpha2: Element, alpha: Element) -> bool:
    """Closed criterion for the zero form to accompany a rank-2 form."""
    if alpha.is_zero:
        return True
    if alpha1.is_zero or alpha2.is_zero:
        return False
    total = Fraction(alpha1.exp) + Fraction(alpha2.exp)
    if 2 * alpha.exp <= total:
        return True
    return (
        sf.group is GroupKind.INT
        and 2 * alpha.exp == total + 1
        and alpha1.is_ghost
        and alpha2.is_ghost
    )


def is_quasilinear(q: QuadraticForm) -> bool:
    """Whether the zero bilinear form accompanies q."""
    return all(
        quasilinear_pair(q.sf, q.diag[i], q.diag[j], q.beta(i, j))
        for i in range(q.n)
        for j in range(i + 1, q.n)
    )


def functionally_equal(q1: QuadraticForm, q2: QuadraticForm) -> bool:
    """Whether two triangular schemes denote the same function.

    A functional form is pinned down by its axis values together with any
    single companion, so equal diagonals plus cellwise admissibility of the
    other scheme's cross coefficients decide equality.
    """
    if q1.sf != q2.sf or q1.n != q2.n:
        raise PreconditionError("dimension match required", "forms live on different modules")
    if q1.diag != q2.diag:
        return False
    table = companion_table(q1)
    return all(
        contains(table.cell(i, j), q2.beta(i, j)) for i in range(q1.n) for j in range(i + 1, q1.n)
    )


def equality_witness(q1: QuadraticForm, q2: QuadraticForm):
    """A vector on which the two forms evaluate differently, or None.

    Unequal diagonals are separated by a unit vector.  An inadmissible
    cross coefficient is separated by a vector supported on its two
    indices, found among the oracle's probe exponents.
    """
    from .forms import eval_quadratic

    if functionally_equal(q1, q2):
        return None
    sf = q1.sf
    n = q1.n
    for i in range(n):
        if q1.diag[i] != q2.diag[i]:
            return tuple(sf.one if k == i else ZERO for k in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            b1 = q1.beta(i, j)
            b2 = q2.beta(i, j)
            if b1 == b2:
                continue
            terms: list[tuple[int, Exponent]] = []
            for slope, coeff in ((1, q1.diag[i]), (-1, q1.diag[j])):
                if not coeff.is_zero:
                    terms.append((slope, coeff.exp))
            for coeff in (b1, b2):
                if not coeff.is_zero:
                    terms.append((0, coeff.exp))
            for exp in _probe_exponents(sf, _tie_points(terms)):
                lam = sf.tangible(exp)
                x = tuple(lam if k == i else (sf.one if k == j else ZERO) for k in range(n))
                if eval_quadratic(q1, x) != eval_quadratic(q2, x):
                    return x
    raise AssertionError("unequal forms must admit a distinguishing vector")
