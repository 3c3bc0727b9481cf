"""Tests for sample spaces, events and atoms."""

from fractions import Fraction
from pathlib import Path

import pytest

from indep_census import (
    Event,
    SampleSpace,
    ValidationError,
    atom_cardinalities,
    atom_weights,
    complement,
    cylinder_event,
    event_prob,
    load_weights,
    make_space,
    product_space,
    uniform_space,
    weighted_space,
)
from indep_census._space import parse_weights


class TestEvent:
    """Tests for bit-vector events."""

    def test_of_sets_outcome_bits(self) -> None:
        """Outcome indices become bits."""
        e = Event.of(6, [0, 2, 5])
        assert e.bits == 0b100101
        assert e.cardinality == 3
        assert e.outcomes() == (0, 2, 5)

    def test_str_lists_outcomes(self) -> None:
        """Events print as outcome sets."""
        assert str(Event.of(4, [1, 3])) == "{1,3}"
        assert str(Event(0, 4)) == "{}"

    def test_trivial_events(self) -> None:
        """∅ and Ω are trivial, everything else is not."""
        assert Event(0, 5).is_trivial
        assert Event(0b11111, 5).is_trivial
        assert not Event(0b00100, 5).is_trivial

    def test_complement_is_involution(self) -> None:
        """Complementing twice gives the event back."""
        e = Event.of(7, [1, 4])
        assert e.complement().outcomes() == (0, 2, 3, 5, 6)
        assert complement(complement(e)) == e

    def test_set_operations(self) -> None:
        """Intersection and union act on bits."""
        a, b = Event.of(5, [0, 1, 2]), Event.of(5, [2, 3])
        assert (a & b).outcomes() == (2,)
        assert (a | b).outcomes() == (0, 1, 2, 3)

    def test_mixed_widths_rejected(self) -> None:
        """Events of different widths do not combine."""
        with pytest.raises(ValidationError):
            Event.of(4, [0]) & Event.of(5, [0])

    def test_outcome_out_of_range(self) -> None:
        """Outcomes beyond the width are rejected."""
        with pytest.raises(ValidationError):
            Event.of(3, [3])

    def test_bits_must_fit(self) -> None:
        """Bits beyond the width are rejected."""
        with pytest.raises(ValidationError):
            Event(0b1000, 3)

    def test_width_must_be_positive(self) -> None:
        """Events need at least one outcome."""
        with pytest.raises(ValidationError):
            Event(0, 0)


class TestSampleSpace:
    """Tests for constructing spaces."""

    def test_uniform(self) -> None:
        """A uniform space has unit weights."""
        space = uniform_space(12)
        assert space.n == 12
        assert space.is_uniform
        assert space.integer_weights == (1,) * 12
        assert space.integer_total == 12

    def test_uniform_rejects_nonpositive(self) -> None:
        """Zero and booleans are not outcome counts."""
        with pytest.raises(ValidationError):
            uniform_space(0)
        with pytest.raises(ValidationError):
            uniform_space(True)

    def test_weighted_accepts_rational_strings(self) -> None:
        """Weights may be rational strings and are scaled to integers."""
        space = weighted_space(["1/2", 1, Fraction(3, 2)])
        assert not space.is_uniform
        assert space.integer_weights == (1, 2, 3)
        assert space.total == 3

    def test_equal_weights_are_uniform(self) -> None:
        """Equal weights make a uniform space."""
        assert weighted_space([3, 3, 3]).is_uniform

    def test_weighted_rejects_floats_and_zero(self) -> None:
        """Floats, zero weights and empty lists are rejected."""
        with pytest.raises(ValidationError):
            weighted_space([0.5, 1])
        with pytest.raises(ValidationError):
            weighted_space([1, 0])
        with pytest.raises(ValidationError):
            weighted_space([])

    def test_make_space_dispatch(self) -> None:
        """An int builds a uniform space and a list a weighted one."""
        assert make_space(4) == uniform_space(4)
        assert make_space([1, 2]).integer_weights == (1, 2)
        with pytest.raises(ValidationError):
            make_space("12")

    def test_direct_construction_validates(self) -> None:
        """Direct construction checks the weights."""
        with pytest.raises(ValidationError):
            SampleSpace(())
        with pytest.raises(ValidationError):
            SampleSpace((Fraction(1), Fraction(-1)))

    def test_factor_structure_validated(self) -> None:
        """Factors must multiply to the outcome count and to the weights."""
        one, two = Fraction(1), Fraction(2)
        with pytest.raises(ValidationError, match="multiply to the outcome count"):
            SampleSpace((one, one), ((one, one), (one, one)))
        with pytest.raises(ValidationError, match="not the product"):
            SampleSpace((one, two), ((one, one),))

    def test_coordinates_need_product(self) -> None:
        """Plain spaces have no coordinates."""
        with pytest.raises(ValidationError):
            uniform_space(4).coordinates(0)

    def test_mass_sums_integer_weights(self) -> None:
        """Mass sums the integer weights of an event."""
        space = weighted_space([1, 2, 4])
        assert space.mass(0b101) == 5
        assert space.mass(0) == 0


class TestProductSpace:
    """Tests for product spaces and cylinder events."""

    def test_weights_multiply(self) -> None:
        """Product weights multiply coordinate weights."""
        space = product_space([[1, 2], [1, 3]])
        assert space.factor_sizes == (2, 2)
        assert space.integer_weights == (1, 3, 2, 6)

    def test_coordinates_are_mixed_radix(self, coin_die: SampleSpace) -> None:
        """Outcome indices decode as mixed-radix coordinates."""
        assert coin_die.n == 12
        assert coin_die.coordinates(0) == (0, 0)
        assert coin_die.coordinates(7) == (1, 1)

    def test_cylinder_event(self, coin_die: SampleSpace) -> None:
        """Cylinders select outcomes by one coordinate."""
        heads = cylinder_event(coin_die, 0, {0})
        assert heads.outcomes() == (0, 1, 2, 3, 4, 5)
        odd = cylinder_event(coin_die, 1, {0, 2, 4})
        assert odd.outcomes() == (0, 2, 4, 6, 8, 10)

    def test_cylinder_requires_proper_subset(self, coin_die: SampleSpace) -> None:
        """Cylinders need a proper value set of a real coordinate."""
        with pytest.raises(ValidationError):
            cylinder_event(coin_die, 0, {0, 1})
        with pytest.raises(ValidationError):
            cylinder_event(coin_die, 2, {0})

    def test_cylinder_requires_product(self) -> None:
        """Cylinders need a product space."""
        with pytest.raises(ValidationError):
            cylinder_event(uniform_space(4), 0, {0})

    def test_single_outcome_factor_rejected(self) -> None:
        """A factor with one outcome is rejected."""
        with pytest.raises(ValidationError):
            product_space([[1], [1, 1]])

    def test_empty_product_rejected(self) -> None:
        """A product needs at least one factor."""
        with pytest.raises(ValidationError):
            product_space([])

    def test_cylinder_values_within_factor(self, coin_die: SampleSpace) -> None:
        """Cylinder values must exist in the coordinate."""
        with pytest.raises(ValidationError, match="not within factor"):
            cylinder_event(coin_die, 0, {5})


class TestProbabilities:
    """Tests for exact probabilities and atoms."""

    def test_event_prob_uniform(self, uniform12: SampleSpace) -> None:
        """Uniform probabilities are cardinality over n."""
        assert event_prob(uniform12, Event.of(12, range(4))) == Fraction(1, 3)

    def test_event_prob_weighted(self) -> None:
        """Weighted probabilities use the weights."""
        space = weighted_space([1, 2, 3])
        assert event_prob(space, Event.of(3, [2])) == Fraction(1, 2)

    def test_event_prob_checks_width(self, uniform12: SampleSpace) -> None:
        """Probabilities check the event width."""
        with pytest.raises(ValidationError):
            event_prob(uniform12, Event.of(6, [0]))

    def test_atom_cardinalities_index_bits(self) -> None:
        """Atoms are indexed by membership bits."""
        space = uniform_space(6)
        a, b = Event.of(6, [0, 1]), Event.of(6, [1, 2, 3])
        # atoms: outside both, only A, only B, both
        assert atom_cardinalities(space, [a, b]) == [2, 1, 2, 1]

    def test_atom_weights_sum_to_total(self) -> None:
        """Atom weights partition the total."""
        space = weighted_space([1, 2, 3, 4])
        atoms = atom_weights(space, [Event.of(4, [0, 1]), Event.of(4, [1, 3])])
        assert atoms == [Fraction(3), Fraction(1), Fraction(4), Fraction(2)]
        assert sum(atoms) == space.total

    def test_atoms_need_events(self, uniform6: SampleSpace) -> None:
        """Atoms need at least one event."""
        with pytest.raises(ValidationError):
            atom_cardinalities(uniform6, [])
        with pytest.raises(ValidationError):
            atom_weights(uniform6, [])


class TestWeightsFile:
    """Tests for reading weights from disk."""

    def test_load(self, weights_file: Path) -> None:
        """A weights file loads into a weighted space."""
        space = load_weights(weights_file)
        assert space.integer_weights == (1, 2, 2, 4)

    def test_parse_reports_line_number(self) -> None:
        """Parse errors name the offending line."""
        with pytest.raises(ValidationError, match="line 3"):
            parse_weights("1\n2\nabc\n")

    @pytest.mark.parametrize("text", ["1.5", "1e2", "-2", "1/-2", "0x10", "½"])
    def test_parse_rejects_non_integer_forms(self, text: str) -> None:
        """Decimals, exponents, signs and other numerals are not weights."""
        with pytest.raises(ValidationError, match="line 2"):
            parse_weights(f"1\n{text}\n")

    def test_parse_accepts_ratios(self) -> None:
        """Integers and p/q ratios are read exactly."""
        assert parse_weights(" 3/2 \n4\n") == (Fraction(3, 2), Fraction(4))

    def test_parse_rejects_zero_denominator(self) -> None:
        """A ratio over zero is reported with its line."""
        with pytest.raises(ValidationError, match="line 1"):
            parse_weights("1/0\n")

    def test_parse_rejects_empty(self) -> None:
        """A file without weights is rejected."""
        with pytest.raises(ValidationError):
            parse_weights("# nothing\n\n")
