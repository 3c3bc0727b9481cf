"""Finite probability spaces, events as bit vectors, and atom decompositions.

Outcome ``s`` of an ``n``-point space corresponds to bit ``s`` of an event's
bit vector. For ``k`` events the ``2**k`` atoms are indexed so that bit ``i``
of the atom index is set exactly when the atom lies inside ``events[i]``.
"""

import itertools
import math
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from pathlib import Path

from indep_census._errors import ValidationError

MAX_BRUTE_OUTCOMES = 63

type WeightLike = int | Fraction | str


def _as_weight(value: WeightLike) -> Fraction:
    """Convert an exact weight literal to a positive ``Fraction``."""
    if isinstance(value, bool) or not isinstance(value, int | Fraction | str):
        raise ValidationError(f"weight must be an exact rational, got {value!r}")
    try:
        weight = Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"invalid weight {value!r}") from exc
    if weight <= 0:
        raise ValidationError(f"weight must be positive, got {weight}")
    return weight


@dataclass(frozen=True, order=True)
class Event:
    """A subset of the outcomes of an ``n``-point space, stored as a bit vector."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValidationError(f"event width must be positive, got {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise ValidationError(f"bits {self.bits:#x} do not fit in {self.n} outcomes")

    @classmethod
    def of(cls, n: int, outcomes: Iterable[int]) -> "Event":
        """Build an event from outcome indices."""
        bits = 0
        for s in outcomes:
            if not 0 <= s < n:
                raise ValidationError(f"outcome {s} outside 0..{n - 1}")
            bits |= 1 << s
        return cls(bits, n)

    @property
    def cardinality(self) -> int:
        return self.bits.bit_count()

    @property
    def is_trivial(self) -> bool:
        """True for the empty event and the full space."""
        return self.bits == 0 or self.bits == (1 << self.n) - 1

    def complement(self) -> "Event":
        return Event(((1 << self.n) - 1) & ~self.bits, self.n)

    def outcomes(self) -> tuple[int, ...]:
        return tuple(s for s in range(self.n) if self.bits >> s & 1)

    def __and__(self, other: "Event") -> "Event":
        _check_same_width(self, other)
        return Event(self.bits & other.bits, self.n)

    def __or__(self, other: "Event") -> "Event":
        _check_same_width(self, other)
        return Event(self.bits | other.bits, self.n)

    def __str__(self) -> str:
        return "{" + ",".join(str(s) for s in self.outcomes()) + "}"


def _check_same_width(*events: Event) -> None:
    widths = {e.n for e in events}
    if len(widths) > 1:
        raise ValidationError(f"events come from spaces of different sizes: {sorted(widths)}")


@dataclass(frozen=True)
class SampleSpace:
    """A finite outcome set with exact relative weights.

    Probabilities are ``weight / total``. When ``factors`` is present the space
    is a product: outcome indices are mixed-radix coordinates with factor 0 most
    significant, and each weight is the product of its coordinate weights.
    """

    weights: tuple[Fraction, ...]
    factors: tuple[tuple[Fraction, ...], ...] | None = None

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValidationError("a sample space needs at least one outcome")
        if any(w <= 0 for w in self.weights):
            raise ValidationError("every outcome weight must be positive")
        if self.factors is not None:
            if math.prod(len(f) for f in self.factors) != len(self.weights):
                raise ValidationError("factor sizes do not multiply to the outcome count")
            expected = tuple(math.prod(c) for c in itertools.product(*self.factors))
            if expected != self.weights:
                raise ValidationError("weights are not the product of the factor weights")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def full(self) -> Event:
        return Event((1 << self.n) - 1, self.n)

    @cached_property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @cached_property
    def is_uniform(self) -> bool:
        return len(set(self.weights)) == 1

    @property
    def factor_sizes(self) -> tuple[int, ...] | None:
        if self.factors is None:
            return None
        return tuple(len(f) for f in self.factors)

    @cached_property
    def integer_weights(self) -> tuple[int, ...]:
        """Weights rescaled to coprime positive integers with the same ratios."""
        scale = reduce(math.lcm, (w.denominator for w in self.weights), 1)
        scaled = [int(w * scale) for w in self.weights]
        common = math.gcd(*scaled)
        return tuple(w // common for w in scaled)

    @cached_property
    def integer_total(self) -> int:
        return sum(self.integer_weights)

    def mass(self, bits: int) -> int:
        """Integer mass of a bit vector under ``integer_weights``."""
        weights = self.integer_weights
        total = 0
        while bits:
            low = bits & -bits
            total += weights[low.bit_length() - 1]
            bits ^= low
        return total

    def coordinates(self, outcome: int) -> tuple[int, ...]:
        """Mixed-radix coordinates of an outcome in a product space."""
        sizes = self.factor_sizes
        if sizes is None:
            raise ValidationError("space has no product structure")
        coords = []
        for size in reversed(sizes):
            outcome, digit = divmod(outcome, size)
            coords.append(digit)
        return tuple(reversed(coords))

    def check_event(self, *events: Event) -> None:
        """Raise if any event was built for a differently sized space."""
        for e in events:
            if e.n != self.n:
                raise ValidationError(
                    f"event over {e.n} outcomes used with a {self.n}-outcome space"
                )


def uniform_space(n: int) -> SampleSpace:
    """The ``n``-point space with equal weights."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValidationError(f"outcome count must be a positive integer, got {n!r}")
    return SampleSpace(tuple(Fraction(1) for _ in range(n)))


def weighted_space(weights: Sequence[WeightLike]) -> SampleSpace:
    """A space whose outcome weights are given relative to each other."""
    if not weights:
        raise ValidationError("weight list is empty")
    return SampleSpace(tuple(_as_weight(w) for w in weights))


def make_space(outcomes: int | Sequence[WeightLike]) -> SampleSpace:
    """Build a space from an outcome count (uniform) or a weight list."""
    if isinstance(outcomes, int) and not isinstance(outcomes, bool):
        return uniform_space(outcomes)
    if isinstance(outcomes, str):
        raise ValidationError("weights must be a sequence, not a string")
    return weighted_space(outcomes)


def product_space(factors: Sequence[Sequence[WeightLike]]) -> SampleSpace:
    """The product of independent finite coordinates."""
    if not factors:
        raise ValidationError("a product space needs at least one factor")
    parsed = []
    for index, factor in enumerate(factors):
        if len(factor) < 2:
            raise ValidationError(f"factor {index} has fewer than two outcomes")
        parsed.append(tuple(_as_weight(w) for w in factor))
    weights = tuple(math.prod(c) for c in itertools.product(*parsed))
    return SampleSpace(weights, tuple(parsed))


def cylinder_event(space: SampleSpace, coord: int, subset: Iterable[int]) -> Event:
    """The event that coordinate ``coord`` takes a value in ``subset``."""
    sizes = space.factor_sizes
    if sizes is None:
        raise ValidationError("cylinder events need a product space")
    if not 0 <= coord < len(sizes):
        raise ValidationError(f"coordinate {coord} outside 0..{len(sizes) - 1}")
    values = set(subset)
    if not values <= set(range(sizes[coord])):
        raise ValidationError(f"subset {sorted(values)} is not within factor {coord}")
    if not values or len(values) == sizes[coord]:
        raise ValidationError("cylinder subset must be a nonempty proper subset")
    return Event.of(
        space.n, (s for s in range(space.n) if space.coordinates(s)[coord] in values)
    )


def complement(e: Event) -> Event:
    return e.complement()


def event_prob(space: SampleSpace, e: Event) -> Fraction:
    """Exact probability of an event."""
    space.check_event(e)
    return Fraction(space.mass(e.bits), space.integer_total)


def atom_masks(n: int, bits: Sequence[int]) -> list[int]:
    """Bit masks of the ``2**k`` atoms generated by ``k`` bit vectors."""
    full = (1 << n) - 1
    masks = [full]
    for b in bits:
        masks = [m & ~b & full for m in masks] + [m & b for m in masks]
    return masks


def atom_cardinalities(space: SampleSpace, events: Sequence[Event]) -> list[int]:
    """Outcome counts of the atoms generated by ``events``."""
    if not events:
        raise ValidationError("atoms need at least one event")
    space.check_event(*events)
    return [m.bit_count() for m in atom_masks(space.n, [e.bits for e in events])]


def atom_weights(space: SampleSpace, events: Sequence[Event]) -> list[Fraction]:
    """Exact weight masses of the atoms generated by ``events``; they sum to the total."""
    if not events:
        raise ValidationError("atoms need at least one event")
    space.check_event(*events)
    return [
        sum((space.weights[s] for s in range(space.n) if m >> s & 1), Fraction(0))
        for m in atom_masks(space.n, [e.bits for e in events])
    ]


_WEIGHT_LINE = re.compile(r"\d+(/\d+)?", re.ASCII)


def parse_weights(text: str) -> tuple[Fraction, ...]:
    """Parse a weights file: one ``INT`` or ``INT/INT`` per line, ``#`` comments."""
    weights = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not _WEIGHT_LINE.fullmatch(line):
            raise ValidationError(f"line {lineno}: expected INT or INT/INT, got {line!r}")
        try:
            weights.append(_as_weight(line))
        except ValidationError as exc:
            raise ValidationError(f"line {lineno}: {exc}") from exc
    if not weights:
        raise ValidationError("weights file contains no weights")
    return tuple(weights)


def load_weights(path: Path) -> SampleSpace:
    """Read a weights file into a weighted space."""
    return SampleSpace(parse_weights(path.read_text(encoding="utf-8")))
