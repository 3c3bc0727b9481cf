"""Exact census of independent events in finite probability spaces."""

from indep_census._analytic import (
    PatternSignature,
    SolutionClass,
    all_pairs_count,
    complement_classes,
    grand_total,
    independent_share,
    max_pair_intersection,
    multinomial,
    pair_classes,
    pattern_signature,
    prop1_bound,
    prop1_max_k,
    satisfies_prop1,
    total_pairs,
    total_tuples,
    tuple_classes,
)
from indep_census._brute import (
    CensusMode,
    CensusOptions,
    CensusReport,
    VerificationReport,
    brute_pair_census,
    brute_tuple_census,
    verify,
)
from indep_census._errors import CapabilityError, CrossCheckError, IndepError, ValidationError
from indep_census._indep import (
    bernstein_fixture,
    complement_family,
    conditionally_independent,
    mutually_independent,
    pair_independent,
    pairwise_independent,
)
from indep_census._report import pair_table, pattern_labels
from indep_census._space import (
    Event,
    SampleSpace,
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
from indep_census._stability import (
    PUBLISHED_SEEDS,
    identically_independent,
    perturb,
    perturbed_census,
    persistent_pairs,
    symbolic_prob,
)
from indep_census.census import (
    Engine,
    analytic_report,
    grand_census,
    grand_report,
    pair_census,
    tuple_census,
)

__all__ = [
    "PUBLISHED_SEEDS",
    "CapabilityError",
    "CensusMode",
    "CensusOptions",
    "CensusReport",
    "CrossCheckError",
    "Engine",
    "Event",
    "IndepError",
    "PatternSignature",
    "SampleSpace",
    "SolutionClass",
    "ValidationError",
    "VerificationReport",
    "all_pairs_count",
    "analytic_report",
    "atom_cardinalities",
    "atom_weights",
    "bernstein_fixture",
    "brute_pair_census",
    "brute_tuple_census",
    "complement",
    "complement_classes",
    "complement_family",
    "conditionally_independent",
    "cylinder_event",
    "event_prob",
    "grand_census",
    "grand_report",
    "grand_total",
    "identically_independent",
    "independent_share",
    "load_weights",
    "make_space",
    "max_pair_intersection",
    "multinomial",
    "mutually_independent",
    "pair_census",
    "pair_classes",
    "pair_independent",
    "pair_table",
    "pairwise_independent",
    "pattern_labels",
    "pattern_signature",
    "perturb",
    "perturbed_census",
    "persistent_pairs",
    "product_space",
    "prop1_bound",
    "prop1_max_k",
    "satisfies_prop1",
    "symbolic_prob",
    "total_pairs",
    "total_tuples",
    "tuple_census",
    "tuple_classes",
    "uniform_space",
    "verify",
    "weighted_space",
]
