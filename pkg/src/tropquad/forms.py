"""Quadratic forms as triangular schemes and bilinear forms as Gram matrices.

A quadratic form is stored formally: diagonal coefficients alpha_i plus
strict-upper coefficients beta_{i,j}.  Two distinct schemes may denote one
function; functional identity is decided in :mod:`tropquad.companions`,
never by coefficient comparison here.  Indices are 0-based internally and
rendered 1-based at the JSON boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .errors import PreconditionError
from .matrices import MonomialMatrix
from .semiring import ZERO, Element, Semifield, leq_minimal, semiring_sum

DIMENSION_LIMIT = 64

Vector = tuple[Element, ...]

UpperEntries = Union[Mapping[tuple[int, int], Element], Iterable[tuple[int, int, Element]]]


def _canon_upper(sf: Semifield, n: int, upper: UpperEntries) -> tuple[tuple[int, int, Element], ...]:
    items: list[tuple[int, int, Element]] = []
    if isinstance(upper, Mapping):
        raw = [(i, j, v) for (i, j), v in upper.items()]
    else:
        raw = list(upper)
    seen = set()
    for i, j, v in raw:
        if not (0 <= i < j < n):
            raise ValueError(f"upper index ({i},{j}) out of range for n={n}")
        if (i, j) in seen:
            raise ValueError(f"duplicate upper index ({i},{j})")
        seen.add((i, j))
        v = sf.element(v)
        if not v.is_zero:
            items.append((i, j, v))
    return tuple(sorted(items, key=lambda t: (t[0], t[1])))


@dataclass(frozen=True, slots=True, repr=False)
class QuadraticForm:
    """Triangular coefficient scheme of a quadratic form."""

    sf: Semifield
    diag: tuple[Element, ...]
    upper: tuple[tuple[int, int, Element], ...] = ()

    def __post_init__(self):
        diag = tuple(self.sf.element(a) for a in self.diag)
        if not 1 <= len(diag) <= DIMENSION_LIMIT:
            raise ValueError(f"dimension {len(diag)} outside 1..{DIMENSION_LIMIT}")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "upper", _canon_upper(self.sf, len(diag), self.upper))

    @property
    def n(self) -> int:
        return len(self.diag)

    def alpha(self, i: int) -> Element:
        return self.diag[i]

    def beta(self, i: int, j: int) -> Element:
        """Strict-upper coefficient, looked up symmetrically; zero if absent."""
        if i == j:
            raise ValueError("beta is defined for distinct indices")
        if i > j:
            i, j = j, i
        for a, b, v in self.upper:
            if (a, b) == (i, j):
                return v
        return ZERO

    def upper_map(self) -> dict[tuple[int, int], Element]:
        return {(i, j): v for i, j, v in self.upper}

    def __repr__(self) -> str:
        rows = []
        for i in range(self.n):
            cells = [repr(self.diag[i])] + [repr(self.beta(i, j)) for j in range(i + 1, self.n)]
            rows.append(" ".join(cells))
        return "[" + "; ".join(rows) + "]"


@dataclass(frozen=True, slots=True, repr=False)
class SymmetricBilinearForm:
    """Symmetric Gram matrix over the semifield."""

    sf: Semifield
    gram: tuple[tuple[Element, ...], ...]

    def __post_init__(self):
        gram = tuple(tuple(self.sf.element(v) for v in row) for row in self.gram)
        n = len(gram)
        if not 1 <= n <= DIMENSION_LIMIT:
            raise ValueError(f"dimension {n} outside 1..{DIMENSION_LIMIT}")
        if any(len(row) != n for row in gram):
            raise ValueError("gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise ValueError(f"gram matrix not symmetric at ({i},{j})")
        object.__setattr__(self, "gram", gram)

    @property
    def n(self) -> int:
        return len(self.gram)

    def entry(self, i: int, j: int) -> Element:
        return self.gram[i][j]

    def __repr__(self) -> str:
        rows = ("[" + ", ".join(repr(v) for v in row) + "]" for row in self.gram)
        return "[" + ", ".join(rows) + "]"


def zero_form(sf: Semifield, n: int) -> QuadraticForm:
    return QuadraticForm(sf, (ZERO,) * n)


def zero_bilinear(sf: Semifield, n: int) -> SymmetricBilinearForm:
    return SymmetricBilinearForm(sf, ((ZERO,) * n,) * n)


def check_vector(q_or_b, x: Sequence[Element]) -> Vector:
    x = tuple(x)
    if len(x) != q_or_b.n:
        raise PreconditionError(
            "dimension match required",
            f"vector length {len(x)} does not match dimension {q_or_b.n}",
        )
    return x


def eval_quadratic(q: QuadraticForm, x: Sequence[Element]) -> Element:
    """Value of the form: sum of alpha_i x_i^2 and beta_{i,j} x_i x_j."""
    x = check_vector(q, x)
    terms = [q.diag[i] * x[i] * x[i] for i in range(q.n)]
    terms.extend(v * x[i] * x[j] for i, j, v in q.upper)
    return semiring_sum(terms)


def eval_bilinear(b: SymmetricBilinearForm, x: Sequence[Element], y: Sequence[Element]) -> Element:
    x = check_vector(b, x)
    y = check_vector(b, y)
    return semiring_sum(b.gram[i][j] * x[i] * y[j] for i in range(b.n) for j in range(b.n))


def balanced_companion(q: QuadraticForm) -> SymmetricBilinearForm:
    """The companion whose diagonal doubles the form's diagonal.

    Doubling in this semiring is the ghost map, so the Gram diagonal is
    nu(alpha_i) and the off-diagonal copies the scheme coefficients.
    """
    n = q.n
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = q.diag[i].nu()
    for i, j, v in q.upper:
        rows[i][j] = v
        rows[j][i] = v
    return SymmetricBilinearForm(q.sf, tuple(tuple(r) for r in rows))


def is_balanced_pair(q: QuadraticForm, b: SymmetricBilinearForm) -> bool:
    """Whether (q, b) is a balanced pair; b must already be a companion."""
    from .companions import is_companion

    if q.n != b.n:
        raise PreconditionError("dimension match required", "form and Gram dimensions differ")
    if not is_companion(q, b):
        raise PreconditionError(
            "companion required",
            "the bilinear form does not accompany the quadratic form",
        )
    return all(b.gram[i][i] == q.diag[i].nu() for i in range(q.n))


def add_forms(q1: QuadraticForm, q2: QuadraticForm) -> QuadraticForm:
    if q1.n != q2.n:
        raise PreconditionError("dimension match required", "cannot add forms of different dimension")
    diag = tuple(a + b for a, b in zip(q1.diag, q2.diag))
    keys = set(q1.upper_map()) | set(q2.upper_map())
    upper = {k: q1.beta(*k) + q2.beta(*k) for k in keys}
    return QuadraticForm(q1.sf, diag, upper)


def scale_form(lam: Element, q: QuadraticForm) -> QuadraticForm:
    diag = tuple(lam * a for a in q.diag)
    upper = {(i, j): lam * v for i, j, v in q.upper}
    return QuadraticForm(q.sf, diag, upper)


def pointwise_leq_rigid(r1: QuadraticForm, r2: QuadraticForm) -> bool:
    """Functional order between rigid (zero-diagonal) forms.

    For zero-diagonal forms the pointwise order over all vectors reduces to
    the coefficientwise minimal order: evaluating at the sum of two unit
    vectors recovers each coefficient, and compatibility of the order with
    addition and multiplication gives the converse.  Non-rigid inputs are
    rejected; no such reduction is available for them.
    """
    for r in (r1, r2):
        if any(not a.is_zero for a in r.diag):
            raise PreconditionError(
                "rigid form required",
                "pointwise comparison is only defined for zero-diagonal forms",
            )
    if r1.n != r2.n:
        raise PreconditionError("dimension match required", "cannot compare forms of different dimension")
    keys = set(r1.upper_map()) | set(r2.upper_map())
    return all(leq_minimal(r1.beta(*k), r2.beta(*k)) for k in keys)


def change_base(q: QuadraticForm, p: MonomialMatrix) -> QuadraticForm:
    """Rewrite q along the base change sending unit vector j to c_j * eps_{perm[j]}.

    The result evaluates as x -> q(Px).
    """
    if q.n != p.n:
        raise PreconditionError("dimension match required", "form and matrix dimensions differ")
    diag = tuple(p.scales[k] * p.scales[k] * q.diag[p.perm[k]] for k in range(q.n))
    upper = {}
    for k in range(q.n):
        for l in range(k + 1, q.n):
            v = q.beta(p.perm[k], p.perm[l])
            if not v.is_zero:
                upper[(k, l)] = p.scales[k] * p.scales[l] * v
    return QuadraticForm(q.sf, diag, upper)
