"""Independence under perturbation: accidental pairs vanish, product-induced pairs persist.

A product space with factor sizes ``m_0..m_{f-1}`` is parameterized by the
biases of its coordinates: factor ``i`` contributes variables
``x{i}_1 .. x{i}_{m_i-1}`` for its first outcomes and ``1 - Σ x{i}_j`` for
its last one. A pair of events is persistent when its defect
``P(A∩B) - P(A)·P(B)`` is the zero polynomial in those variables.
"""

import logging
import math
import random
import time
from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache

from indep_census._brute import (
    CensusMode,
    CensusOptions,
    CensusReport,
    brute_pair_census,
    collect_independent_pairs,
    representative_signature,
)
from indep_census._errors import CapabilityError, CrossCheckError, ValidationError
from indep_census._indep import pair_independent
from indep_census._poly import ParamPoly
from indep_census._space import (
    MAX_BRUTE_OUTCOMES,
    Event,
    SampleSpace,
    event_prob,
    product_space,
)

logger = logging.getLogger(__name__)

PUBLISHED_SEEDS = (1, 2, 3, 5, 8, 13, 21, 34, 55, 89)
CROSS_CHECK_POINTS = 5
_SAMPLE_RANGE = 1000


def _structure_of(structure: SampleSpace | Sequence[int]) -> tuple[int, ...]:
    if isinstance(structure, SampleSpace):
        if structure.factor_sizes is None:
            raise ValidationError("space has no product structure")
        return structure.factor_sizes
    sizes = tuple(structure)
    if not sizes or any(m < 2 for m in sizes):
        raise ValidationError(f"factor sizes must be at least 2, got {list(sizes)}")
    return sizes


def factor_variables(structure: SampleSpace | Sequence[int]) -> tuple[str, ...]:
    """Names of the free bias parameters, factor by factor."""
    return tuple(
        f"x{i}_{j}" for i, m in enumerate(_structure_of(structure)) for j in range(1, m)
    )


@lru_cache(maxsize=16)
def _outcome_polys(sizes: tuple[int, ...]) -> tuple[ParamPoly, ...]:
    names = factor_variables(sizes)
    nvars = len(names)
    coordinate_polys = []
    offset = 0
    for m in sizes:
        free = [ParamPoly.variable(nvars, offset + j, names) for j in range(m - 1)]
        coordinate_polys.append([*free, 1 - sum(free, ParamPoly.constant(nvars, 0, names))])
        offset += m - 1
    polys = []
    for outcome in range(math.prod(sizes)):
        weight = ParamPoly.constant(nvars, 1, names)
        rest = outcome
        for m, coordinate in zip(reversed(sizes), reversed(coordinate_polys)):
            rest, digit = divmod(rest, m)
            weight = weight * coordinate[digit]
        polys.append(weight)
    return tuple(polys)


def symbolic_prob(structure: SampleSpace | Sequence[int], e: Event) -> ParamPoly:
    """Probability of an event as a polynomial in the coordinate biases."""
    sizes = _structure_of(structure)
    polys = _outcome_polys(sizes)
    if e.n != len(polys):
        raise ValidationError(
            f"event over {e.n} outcomes used with a {len(polys)}-outcome product"
        )
    zero = ParamPoly.constant(polys[0].nvars, 0, polys[0].names)
    return sum((polys[s] for s in e.outcomes()), zero)


def defect(structure: SampleSpace | Sequence[int], a: Event, b: Event) -> ParamPoly:
    """``P(A∩B) - P(A)·P(B)`` as a polynomial."""
    return symbolic_prob(structure, a & b) - symbolic_prob(structure, a) * symbolic_prob(
        structure, b
    )


def identically_independent(structure: SampleSpace | Sequence[int], a: Event, b: Event) -> bool:
    """True when A and B stay independent for every choice of coordinate biases."""
    return defect(structure, a, b).is_zero


def _sample_factors(sizes: Sequence[int], rng: random.Random) -> list[list[int]]:
    return [[rng.randint(1, _SAMPLE_RANGE) for _ in range(m)] for m in sizes]


def _as_point(factors: Sequence[Sequence[int]]) -> list[Fraction]:
    """Variable values matching integer factor weights."""
    point = []
    for weights in factors:
        total = sum(weights)
        point.extend(Fraction(w, total) for w in weights[:-1])
    return point


def persistent_pairs(
    structure: SampleSpace | Sequence[int],
    options: CensusOptions | None = None,
    seed: int = 0,
) -> CensusReport:
    """Count pairs of nontrivial events whose independence survives any coordinate bias.

    Pairs are screened at seeded random bias points: a nonzero defect at any
    point certifies dependence. Every survivor is then confirmed by the exact
    symbolic identity, and the sampled points must agree with it.
    """
    options = options or CensusOptions()
    sizes = _structure_of(structure)
    n = math.prod(sizes)
    if n > MAX_BRUTE_OUTCOMES:
        raise CapabilityError(f"persistence census handles at most {MAX_BRUTE_OUTCOMES} outcomes")
    started = time.perf_counter()
    rng = random.Random(seed)
    samples = [_sample_factors(sizes, rng) for _ in range(CROSS_CHECK_POINTS)]
    spaces = [product_space(s) for s in samples]
    points = [_as_point(s) for s in samples]

    survivors = collect_independent_pairs(spaces[0], options.workers)
    for space in spaces[1:]:
        survivors = [
            (a, b) for a, b in survivors if pair_independent(space, Event(a, n), Event(b, n))
        ]
    logger.debug("%d pairs independent at all %d sampled points", len(survivors), len(spaces))

    fair = product_space([[1] * m for m in sizes])
    report = CensusReport(n, 2, CensusMode.PERSISTENT, workers=options.workers)
    participants: set[int] = set()
    for a, b in survivors:
        ea, eb = Event(a, n), Event(b, n)
        if not identically_independent(sizes, ea, eb):
            raise CrossCheckError(f"pair {ea} {eb} is independent at every sampled point only")
        for e in (ea, eb):
            if e.bits in participants:
                continue
            prob = symbolic_prob(sizes, e)
            for space, point in zip(spaces, points):
                if prob.evaluate(point) != event_prob(space, e):
                    raise CrossCheckError(f"symbolic probability of {e} disagrees with sampling")
            participants.add(e.bits)
        key = (tuple(sorted((ea.cardinality, eb.cardinality))), (a & b).bit_count())
        report.add(representative_signature(fair, (a, b)), 1, key)
        if len(report.witnesses) < options.list_cap:
            report.witnesses.append((ea, eb))
    report.distinct_events = len(participants)
    report.elapsed_seconds = time.perf_counter() - started
    logger.info(
        "persistent pairs for factors %s: %d pairs over %d events",
        list(sizes),
        report.total,
        report.distinct_events,
    )
    return report


def _as_epsilon(epsilon: Fraction | int | str) -> Fraction:
    try:
        value = Fraction(epsilon)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"invalid epsilon {epsilon!r}") from exc
    if value <= 0:
        raise ValidationError(f"epsilon must be positive, got {value}")
    return value


def perturb(space: SampleSpace, epsilon: Fraction | int | str, seed: int) -> SampleSpace:
    """Scale each weight by ``1 + δ_s`` with distinct seeded rationals ``|δ_s| < epsilon``.

    All ``δ_s`` share the denominator ``q·(1000·n + seed mod 1000)`` where
    ``epsilon = p/q``, so the result is exact and reproducible. For ``epsilon >= 1``
    the offsets are capped at ``|δ_s| < 1`` so every weight stays positive.
    """
    eps = _as_epsilon(epsilon)
    if space.n > MAX_BRUTE_OUTCOMES:
        raise CapabilityError(f"perturbation handles at most {MAX_BRUTE_OUTCOMES} outcomes")
    rng = random.Random(seed)
    scale = 1000 * space.n + seed % 1000
    denominator = eps.denominator * scale
    bound = min(eps.numerator * scale, denominator)
    offsets = rng.sample(range(-(bound - 1), bound), space.n)
    return SampleSpace(
        tuple(w * Fraction(denominator + j, denominator) for w, j in zip(space.weights, offsets))
    )


def perturbed_census(
    space: SampleSpace,
    epsilon: Fraction | int | str,
    seed: int,
    options: CensusOptions | None = None,
) -> CensusReport:
    """Pair census of a seeded perturbation of ``space``."""
    return brute_pair_census(perturb(space, epsilon, seed), options)
