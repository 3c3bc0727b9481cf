"""Property-based tests for independence and the census engines."""

import itertools
import math
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from indep_census import (
    CensusOptions,
    Event,
    atom_weights,
    brute_pair_census,
    brute_tuple_census,
    complement_family,
    event_prob,
    mutually_independent,
    pair_independent,
    tuple_classes,
    uniform_space,
    weighted_space,
)


@st.composite
def weighted_events(draw: st.DrawFn, k: int) -> tuple[list[int], list[Event]]:
    n = draw(st.integers(min_value=2, max_value=7))
    weights = draw(st.lists(st.integers(1, 6), min_size=n, max_size=n))
    events = [Event(draw(st.integers(0, (1 << n) - 1)), n) for _ in range(k)]
    return weights, events


def _atoms_factor(weights: list[int], events: list[Event]) -> bool:
    space = weighted_space(weights)
    probs = [event_prob(space, e) for e in events]
    for index, atom in enumerate(atom_weights(space, events)):
        expected = math.prod(
            (p if index >> i & 1 else 1 - p for i, p in enumerate(probs)), start=Fraction(1)
        )
        if atom / space.total != expected:
            return False
    return True


SMALL_SPACES = [[1] * n for n in range(1, 7)] + [
    [1, 2, 2, 4],
    [1, 2, 3, 6, 2],
    [1, 1, 2, 2, 2, 4],
]


def _masses(weights: list[int]) -> list[int]:
    masses = [0] * (1 << len(weights))
    for mask in range(1, len(masses)):
        low = mask & -mask
        masses[mask] = masses[mask ^ low] + weights[low.bit_length() - 1]
    return masses


def _integer_atoms_factor(masses: list[int], masks: tuple[int, ...]) -> bool:
    full = len(masses) - 1
    total = masses[full]
    k = len(masks)
    for index in range(1 << k):
        atom, product = full, 1
        for i, mask in enumerate(masks):
            inside = index >> i & 1
            atom &= mask if inside else full ^ mask
            product *= masses[mask] if inside else total - masses[mask]
        if masses[atom] * total ** (k - 1) != product:
            return False
    return True


class TestExhaustiveSmallSpaces:
    """Every pair and triple of events of small spaces, trivial events included."""

    def test_complements_share_verdict(self) -> None:
        """All four complement variants of every pair agree."""
        for weights in SMALL_SPACES:
            space = weighted_space(weights)
            n = space.n
            for a, b in itertools.combinations_with_replacement(range(1 << n), 2):
                family = complement_family(Event(a, n), Event(b, n))
                assert len({pair_independent(space, x, y) for x, y in family}) == 1

    def test_pairs_independent_iff_atoms_factor(self) -> None:
        """Pair independence holds exactly when all four atoms factor."""
        for weights in SMALL_SPACES:
            space = weighted_space(weights)
            n = space.n
            masses = _masses(weights)
            for masks in itertools.combinations_with_replacement(range(1 << n), 2):
                events = [Event(m, n) for m in masks]
                assert mutually_independent(space, events) == _integer_atoms_factor(
                    masses, masks
                )

    def test_triples_independent_iff_atoms_factor(self) -> None:
        """Mutual independence of three events holds exactly when all eight atoms factor."""
        for weights in SMALL_SPACES:
            space = weighted_space(weights)
            n = space.n
            masses = _masses(weights)
            for masks in itertools.combinations_with_replacement(range(1 << n), 3):
                events = [Event(m, n) for m in masks]
                assert mutually_independent(space, events) == _integer_atoms_factor(
                    masses, masks
                )

    def test_integer_and_rational_factoring_agree(self) -> None:
        """The integer atom check agrees with the rational one on a weighted space."""
        weights = [1, 2, 2, 4]
        masses = _masses(weights)
        for masks in itertools.combinations(range(16), 3):
            events = [Event(m, 4) for m in masks]
            assert _integer_atoms_factor(masses, masks) == _atoms_factor(weights, events)


class TestPredicateProperties:
    """Properties of the independence predicates."""

    @settings(max_examples=200)
    @given(weighted_events(2))
    def test_complements_share_verdict(self, case: tuple[list[int], list[Event]]) -> None:
        """Complementing either event never changes the pair verdict."""
        weights, (a, b) = case
        space = weighted_space(weights)
        verdicts = {pair_independent(space, x, y) for x, y in complement_family(a, b)}
        assert len(verdicts) == 1

    @settings(max_examples=200)
    @given(weighted_events(3))
    def test_mutual_iff_atoms_factor(self, case: tuple[list[int], list[Event]]) -> None:
        """Mutual independence holds exactly when every atom factors."""
        weights, events = case
        assert mutually_independent(weighted_space(weights), events) == _atoms_factor(
            weights, events
        )

    @settings(max_examples=100)
    @given(weighted_events(2), st.integers(2, 9))
    def test_scaling_weights_changes_nothing(
        self, case: tuple[list[int], list[Event]], factor: int
    ) -> None:
        """Scaling all weights by a constant keeps every verdict."""
        weights, (a, b) = case
        scaled = weighted_space([w * factor for w in weights])
        assert pair_independent(weighted_space(weights), a, b) == pair_independent(scaled, a, b)


class TestCensusProperties:
    """Properties of whole censuses."""

    @settings(max_examples=25, deadline=None)
    @given(st.permutations(list(range(1, 8))))
    def test_relabeling_outcomes(self, order: list[int]) -> None:
        """Permuting outcomes keeps the pair total."""
        base = weighted_space([1, 2, 2, 4, 3, 6, 6])
        shuffled = weighted_space([base.integer_weights[i - 1] for i in order])
        assert brute_pair_census(shuffled).total == brute_pair_census(base).total

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.integers(1, 4), min_size=2, max_size=7))
    def test_brute_pairs_match_predicate(self, weights: list[int]) -> None:
        """The vectorized pair count equals counting with the predicate."""
        space = weighted_space(weights)
        n = space.n
        expected = sum(
            pair_independent(space, Event(a, n), Event(b, n))
            for a, b in itertools.combinations(range(1, (1 << n) - 1), 2)
        )
        assert brute_pair_census(space).total == expected

    def test_triples_match_predicate_exhaustively(self) -> None:
        """Triple counts agree across the predicate and both engines."""
        for n in range(2, 7):
            space = uniform_space(n)
            expected = sum(
                mutually_independent(space, [Event(m, n) for m in combo])
                for combo in itertools.combinations(range(1, (1 << n) - 1), 3)
            )
            brute = brute_tuple_census(space, 3, CensusOptions(prune=False))
            assert brute.total == expected == sum(c.count for c in tuple_classes(n, 3))
