"""Exact independence predicates and the three-coins fixture."""

import itertools
import math
from collections.abc import Sequence

from indep_census._errors import ValidationError
from indep_census._space import Event, SampleSpace, cylinder_event, product_space


def pair_independent(space: SampleSpace, a: Event, b: Event) -> bool:
    """Exact test of P(A∩B) = P(A)·P(B).

    Uniform spaces reduce to ``|A|·|B| = n·|A∩B|``; otherwise the integer
    masses are cross-multiplied.
    """
    space.check_event(a, b)
    if space.is_uniform:
        return a.cardinality * b.cardinality == space.n * (a.bits & b.bits).bit_count()
    return space.mass(a.bits & b.bits) * space.integer_total == space.mass(a.bits) * space.mass(
        b.bits
    )


def _check_tuple(space: SampleSpace, events: Sequence[Event]) -> None:
    if len(events) < 2:
        raise ValidationError(f"independence needs at least two events, got {len(events)}")
    space.check_event(*events)


def mutually_independent(space: SampleSpace, events: Sequence[Event]) -> bool:
    """True iff every sub-tuple of two or more events satisfies the product rule."""
    _check_tuple(space, events)
    total = space.integer_total
    masses = [space.mass(e.bits) for e in events]
    for size in range(2, len(events) + 1):
        for chosen in itertools.combinations(range(len(events)), size):
            common = (1 << space.n) - 1
            for i in chosen:
                common &= events[i].bits
            lhs = space.mass(common) * total ** (size - 1)
            if lhs != math.prod(masses[i] for i in chosen):
                return False
    return True


def pairwise_independent(space: SampleSpace, events: Sequence[Event]) -> bool:
    """True iff every two-element sub-tuple is independent."""
    _check_tuple(space, events)
    return all(pair_independent(space, a, b) for a, b in itertools.combinations(events, 2))


def conditionally_independent(space: SampleSpace, a: Event, b: Event, c: Event) -> bool:
    """Exact test of P(A∩B∩C)·P(C) = P(A∩C)·P(B∩C); requires P(C) > 0."""
    space.check_event(a, b, c)
    if c.bits == 0:
        raise ValidationError("conditioning event has probability zero")
    return space.mass(a.bits & b.bits & c.bits) * space.mass(c.bits) == space.mass(
        a.bits & c.bits
    ) * space.mass(b.bits & c.bits)


def complement_family(a: Event, b: Event) -> tuple[tuple[Event, Event], ...]:
    """The pairs (A,B), (A,Bᶜ), (Aᶜ,B), (Aᶜ,Bᶜ); all share one independence verdict."""
    ac, bc = a.complement(), b.complement()
    return ((a, b), (a, bc), (ac, b), (ac, bc))


def bernstein_fixture() -> tuple[SampleSpace, tuple[Event, Event, Event]]:
    """Two fair coins and a third coin showing heads when the first two differ.

    Outcomes are HH, HT, TH, TT (coin 1 most significant, heads = 0). The three
    "coin shows heads" events are pairwise but not mutually independent.
    """
    space = product_space([(1, 1), (1, 1)])
    first = cylinder_event(space, 0, {0})
    second = cylinder_event(space, 1, {0})
    third = Event.of(space.n, [1, 2])
    return space, (first, second, third)
