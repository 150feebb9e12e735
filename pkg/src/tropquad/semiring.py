"""Exact supertropical semifield arithmetic.

An element is zero, tangible, or ghost.  Tangibles carry an exponent in a
totally ordered abelian group plus an optional sign vector (the "fiber") in
an elementary 2-group; ghosts carry only the exponent.  Addition picks the
summand with the strictly larger exponent, and collapses ties to the ghost
of the shared exponent; multiplication adds exponents and ghosts the result
as soon as one factor is ghost.  The ghost map ``nu`` sends an element to
the ghost with the same exponent and is an idempotent semiring projection.

Everything is exact: exponents are ints or ``fractions.Fraction``, never
floats.  All values are immutable; every operation is a pure function, so
the whole module is safe for concurrent use.

Three exponent groups are supported:

* ``int``  -- the integers (discrete: each exponent has an immediate
  predecessor, and ``Tangible(-1)`` acts as the prime element);
* ``rat``  -- all rationals (dense and 2-divisible, so every nonzero
  element is a nu-square);
* ``rat3`` -- rationals whose denominator is a power of 3 (dense but not
  2-divisible, so non-nu-squares exist).

All three are nontrivial, so the degenerate one-ghost semifield cannot be
configured.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Union

from .errors import PreconditionError

Exponent = Union[int, Fraction]

_TAG_ZERO = "zero"
_TAG_TANGIBLE = "tangible"
_TAG_GHOST = "ghost"


class GroupKind(enum.Enum):
    """Which totally ordered abelian group supplies the exponents."""

    INT = "int"
    RAT = "rat"
    RAT3 = "rat3"


def _canon_exp(x: Exponent) -> Exponent:
    """Normalize denominator-1 fractions to ints (repr and speed)."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


@dataclass(frozen=True, slots=True, repr=False)
class Element:
    """A supertropical value: zero, tangible, or ghost.

    ``exp`` is None exactly for zero.  ``fiber`` is a tuple over {+1, -1},
    nonempty only for tangibles in a semifield with positive fiber rank.
    Instances compare by value; two tangibles are equal only if exponents
    and fibers both agree.
    """

    tag: str
    exp: Optional[Exponent] = None
    fiber: tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.tag == _TAG_ZERO

    @property
    def is_tangible(self) -> bool:
        return self.tag == _TAG_TANGIBLE

    @property
    def is_ghost(self) -> bool:
        return self.tag == _TAG_GHOST

    def nu(self) -> "Element":
        """Ghost map: the ghost with the same exponent (zero stays zero)."""
        if self.tag == _TAG_TANGIBLE:
            return Element(_TAG_GHOST, self.exp)
        return self

    def inverse(self) -> "Element":
        """Multiplicative inverse; only tangibles are units."""
        if self.tag != _TAG_TANGIBLE:
            raise PreconditionError(
                "tangible element required",
                f"only tangible elements are invertible, got {self}",
            )
        return Element(_TAG_TANGIBLE, -self.exp, self.fiber)

    def __add__(self, other: "Element") -> "Element":
        if self.tag == _TAG_ZERO:
            return other
        if other.tag == _TAG_ZERO:
            return self
        if self.exp > other.exp:
            return self
        if self.exp < other.exp:
            return other
        return Element(_TAG_GHOST, self.exp)

    def __mul__(self, other: "Element") -> "Element":
        if self.tag == _TAG_ZERO or other.tag == _TAG_ZERO:
            return ZERO
        exp = self.exp + other.exp
        if self.tag == _TAG_TANGIBLE and other.tag == _TAG_TANGIBLE:
            fiber = tuple(a * b for a, b in zip(self.fiber, other.fiber, strict=True))
            return Element(_TAG_TANGIBLE, exp, fiber)
        return Element(_TAG_GHOST, exp)

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE_RANK0 if not self.fiber else Element(_TAG_TANGIBLE, 0, tuple(1 for _ in self.fiber))
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self) -> str:
        return format_element(self)


ZERO = Element(_TAG_ZERO)
ONE_RANK0 = Element(_TAG_TANGIBLE, 0, ())


def semiring_sum(terms) -> Element:
    total = ZERO
    for t in terms:
        total = total + t
    return total


def leq_minimal(x: Element, y: Element) -> bool:
    """The minimal partial order: x <= y iff some z satisfies x + z = y.

    Decided by the closed rule: equal, or strictly nu-smaller, or nu-equal
    with a ghost on the right.  (A witness z then is y itself, resp. x.)
    """
    if x == y:
        return True
    if x.tag == _TAG_ZERO:
        return True
    if y.tag == _TAG_ZERO:
        return False
    if x.exp < y.exp:
        return True
    return x.exp == y.exp and y.tag == _TAG_GHOST


class NuComparison(NamedTuple):
    order: str  # "less" | "equal" | "greater"
    left_ghost: bool
    right_ghost: bool


def nu_compare(a: Element, b: Element) -> NuComparison:
    """Compare nu-values, with zero below everything."""
    if a.is_zero and b.is_zero:
        order = "equal"
    elif a.is_zero:
        order = "less"
    elif b.is_zero:
        order = "greater"
    elif a.exp < b.exp:
        order = "less"
    elif a.exp > b.exp:
        order = "greater"
    else:
        order = "equal"
    return NuComparison(order, a.is_ghost, b.is_ghost)


def nu_leq(a: Element, b: Element) -> bool:
    return nu_compare(a, b).order != "greater"


def nu_lt(a: Element, b: Element) -> bool:
    return nu_compare(a, b).order == "less"


def nu_eq(a: Element, b: Element) -> bool:
    return nu_compare(a, b).order == "equal"


@dataclass(frozen=True, slots=True)
class SquareClassTag:
    """Identifies the orbit of an element under multiplication by unit squares.

    Unit squares are the tangibles with doubled exponents and identity
    fiber, so the class of a nonzero element is determined by its
    ghost/tangible tag, its exponent modulo the doubled group, and (for
    tangibles) its full fiber.
    """

    ghost: bool
    parity: int
    fiber: Optional[tuple[int, ...]]


@dataclass(frozen=True, slots=True)
class HalfElement:
    """An element of the half-exponent extension.

    Exponents may sit in half the base group; squaring always lands back in
    the base group.  Only the handful of operations the package needs are
    provided: multiplication, squaring, and the ghost square root below.
    """

    tag: str
    exp: Optional[Exponent] = None
    fiber: tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.tag == _TAG_ZERO

    @property
    def is_ghost(self) -> bool:
        return self.tag == _TAG_GHOST

    def __mul__(self, other: "HalfElement") -> "HalfElement":
        if self.tag == _TAG_ZERO or other.tag == _TAG_ZERO:
            return HalfElement(_TAG_ZERO)
        exp = self.exp + other.exp
        if self.tag == _TAG_TANGIBLE and other.tag == _TAG_TANGIBLE:
            fiber = tuple(a * b for a, b in zip(self.fiber, other.fiber, strict=True))
            return HalfElement(_TAG_TANGIBLE, _canon_exp(Fraction(exp)), fiber)
        return HalfElement(_TAG_GHOST, _canon_exp(Fraction(exp)))

    def square(self) -> Element:
        if self.tag == _TAG_ZERO:
            return ZERO
        exp = _canon_exp(Fraction(self.exp) * 2)
        if self.tag == _TAG_TANGIBLE:
            return Element(_TAG_TANGIBLE, exp, tuple(1 for _ in self.fiber))
        return Element(_TAG_GHOST, exp)


def sqrt_ghost(a: Element) -> HalfElement:
    """The unique square root of a ghost (or zero) in the half extension.

    Tangible inputs are rejected: their square roots need not be unique.
    """
    if a.tag == _TAG_ZERO:
        return HalfElement(_TAG_ZERO)
    if a.tag == _TAG_TANGIBLE:
        raise PreconditionError(
            "ghost or zero element required",
            f"square roots of tangibles are not unique, got {a}",
        )
    return HalfElement(_TAG_GHOST, _canon_exp(Fraction(a.exp) / 2))


_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


def parse_rational(text: str) -> Exponent:
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return _canon_exp(Fraction(text))


def format_exponent(x: Exponent) -> str:
    return str(x)


def format_element(a: Element) -> str:
    """Render an element in the shared text encoding.

    ``"0"``; ``"t:<rat>"`` or ``"t:<rat>:<signs>"`` for tangibles;
    ``"g:<rat>"`` for ghosts.  Signs are '+'/'-' characters, one per fiber
    coordinate.
    """
    if a.tag == _TAG_ZERO:
        return "0"
    if a.tag == _TAG_GHOST:
        return f"g:{format_exponent(a.exp)}"
    if a.fiber:
        signs = "".join("+" if s > 0 else "-" for s in a.fiber)
        return f"t:{format_exponent(a.exp)}:{signs}"
    return f"t:{format_exponent(a.exp)}"


@dataclass(frozen=True, slots=True)
class Semifield:
    """Configuration of the ambient semifield: exponent group + fiber rank.

    Acts as a factory with validation; the elements themselves stay plain
    values so arithmetic never needs the configuration.
    """

    group: GroupKind = GroupKind.INT
    fiber_rank: int = 0

    def __post_init__(self):
        if self.fiber_rank < 0:
            raise ValueError("fiber_rank must be nonnegative")

    # -- exponent group ---------------------------------------------------

    def legal_exponent(self, x: Exponent) -> bool:
        if isinstance(x, float):
            return False
        if self.group is GroupKind.INT:
            return x.denominator == 1
        if self.group is GroupKind.RAT:
            return True
        q = x.denominator
        while q % 3 == 0:
            q //= 3
        return q == 1

    @property
    def dense(self) -> bool:
        return self.group is not GroupKind.INT

    def check_exponent(self, x: Exponent) -> Exponent:
        if not self.legal_exponent(x):
            raise ValueError(f"exponent {x} not in the {self.group.value} group")
        return _canon_exp(x)

    def between(self, lo: Exponent, hi: Exponent) -> Optional[Exponent]:
        """Some legal exponent strictly between lo and hi, or None."""
        if lo >= hi:
            return None
        if self.group is GroupKind.RAT:
            return _canon_exp((Fraction(lo) + Fraction(hi)) / 2)
        if self.group is GroupKind.INT:
            m = math.floor(lo) + 1
            return m if m < hi else None
        step = Fraction(1)
        while step >= Fraction(hi) - Fraction(lo):
            step /= 3
        m = math.floor(Fraction(lo) / step) + 1
        value = m * step
        return _canon_exp(value)

    # -- element factories -------------------------------------------------

    def identity_fiber(self) -> tuple[int, ...]:
        return (1,) * self.fiber_rank

    def check_fiber(self, fiber: tuple[int, ...]) -> tuple[int, ...]:
        fiber = tuple(fiber)
        if len(fiber) != self.fiber_rank or any(s not in (1, -1) for s in fiber):
            raise ValueError(f"bad fiber {fiber} for rank {self.fiber_rank}")
        return fiber

    @property
    def zero(self) -> Element:
        return ZERO

    @property
    def one(self) -> Element:
        return Element(_TAG_TANGIBLE, 0, self.identity_fiber())

    @property
    def e(self) -> Element:
        """The additive double of one: the smallest ghost unit."""
        return Element(_TAG_GHOST, 0)

    def tangible(self, exp: Exponent, fiber: Optional[tuple[int, ...]] = None) -> Element:
        if fiber is None:
            fiber = self.identity_fiber()
        return Element(_TAG_TANGIBLE, self.check_exponent(exp), self.check_fiber(fiber))

    def ghost(self, exp: Exponent) -> Element:
        return Element(_TAG_GHOST, self.check_exponent(exp))

    def prime(self) -> Element:
        """Tangible whose ghost is the largest ghost below e (discrete only)."""
        if self.group is not GroupKind.INT:
            raise PreconditionError(
                "discrete exponent group required",
                "a prime element exists only over the integer exponent group",
            )
        return self.tangible(-1)

    def sqrt_prime(self) -> HalfElement:
        """A square root of the prime element in the half extension."""
        self.prime()  # group check
        return HalfElement(_TAG_TANGIBLE, Fraction(-1, 2), self.identity_fiber())

    def element(self, a: Element) -> Element:
        """Validate that an element fits this semifield and return it."""
        if a.tag == _TAG_ZERO:
            if a.exp is not None or a.fiber:
                raise ValueError("zero carries no exponent or fiber")
            return a
        self.check_exponent(a.exp)
        if a.tag == _TAG_TANGIBLE:
            self.check_fiber(a.fiber)
        elif a.fiber:
            raise ValueError("ghosts carry no fiber")
        return a

    # -- square structure --------------------------------------------------

    def is_nu_square(self, a: Element) -> bool:
        """Whether a is nu-equivalent to a square; rejects zero."""
        if a.is_zero:
            raise PreconditionError("nonzero element required", "zero has no nu-square class")
        return self.legal_exponent(Fraction(a.exp) / 2)

    def _exp_parity(self, x: Exponent) -> int:
        # residue of the exponent modulo the doubled group; for `rat`
        # everything is halvable so the residue is always 0
        if self.group is GroupKind.RAT:
            return 0
        return Fraction(x).numerator % 2

    def square_class(self, a: Element) -> SquareClassTag:
        if a.is_zero:
            raise PreconditionError("nonzero element required", "zero has no square class")
        if a.is_ghost:
            return SquareClassTag(True, self._exp_parity(a.exp), None)
        return SquareClassTag(False, self._exp_parity(a.exp), a.fiber)

    # -- text encoding -----------------------------------------------------

    def parse_element(self, text: str) -> Element:
        text = text.strip()
        if text == "0":
            return ZERO
        parts = text.split(":")
        if parts[0] == "g" and len(parts) == 2:
            return self.ghost(parse_rational(parts[1]))
        if parts[0] == "t" and len(parts) in (2, 3):
            exp = parse_rational(parts[1])
            if len(parts) == 2:
                return self.tangible(exp)
            if any(c not in "+-" for c in parts[2]) or not parts[2]:
                raise ValueError(f"bad fiber signs in {text!r}")
            fiber = tuple(1 if c == "+" else -1 for c in parts[2])
            return self.tangible(exp, fiber)
        raise ValueError(f"bad element literal: {text!r}")
