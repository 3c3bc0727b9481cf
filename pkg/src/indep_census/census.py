"""Census entry points that pick between the analytic and brute-force engines."""

import logging
from enum import StrEnum

from indep_census._analytic import pair_classes, prop1_max_k, tuple_classes
from indep_census._brute import (
    CensusMode,
    CensusOptions,
    CensusReport,
    brute_pair_census,
    brute_tuple_census,
)
from indep_census._errors import ValidationError
from indep_census._space import SampleSpace, uniform_space

logger = logging.getLogger(__name__)


class Engine(StrEnum):
    """Which counting engine serves a census."""

    AUTO = "auto"
    ANALYTIC = "analytic"
    BRUTE = "brute"


def analytic_report(n: int, k: int) -> CensusReport:
    """Census of the uniform n-point space built from the solution classes."""
    classes = pair_classes(n) if k == 2 else tuple_classes(n, k)
    report = CensusReport(n, k, CensusMode.PAIRS if k == 2 else CensusMode.TUPLES)
    for cls in classes:
        report.add(cls.signature, cls.count, cls.key)
    return report


def _resolve(engine: Engine, space: SampleSpace, options: CensusOptions) -> Engine:
    wants_enumeration = options.include_trivial or options.list_cap > 0
    if engine is Engine.AUTO:
        return Engine.BRUTE if wants_enumeration or not space.is_uniform else Engine.ANALYTIC
    if engine is Engine.ANALYTIC:
        if not space.is_uniform:
            raise ValidationError("the analytic engine counts uniform spaces only")
        if wants_enumeration:
            raise ValidationError("witnesses and trivial events need the brute engine")
    return engine


def pair_census(
    space: SampleSpace, options: CensusOptions | None = None, engine: Engine = Engine.AUTO
) -> CensusReport:
    options = options or CensusOptions()
    if _resolve(engine, space, options) is Engine.ANALYTIC:
        return analytic_report(space.n, 2)
    return brute_pair_census(space, options)


def tuple_census(
    space: SampleSpace,
    k: int,
    options: CensusOptions | None = None,
    engine: Engine = Engine.AUTO,
) -> CensusReport:
    options = options or CensusOptions()
    if k < 2:
        raise ValidationError(f"tuples need k >= 2, got {k}")
    if _resolve(engine, space, options) is Engine.ANALYTIC:
        return analytic_report(space.n, k)
    if k == 2:
        return brute_pair_census(space, options)
    return brute_tuple_census(space, k, options)


def grand_census(
    space: SampleSpace, options: CensusOptions | None = None, engine: Engine = Engine.AUTO
) -> CensusReport:
    """Independent tuples of every size k ≥ 2, pairs included.

    Uniform spaces stop at ``prop1_max_k(n)``. Weighted spaces stop at the
    first size without independent tuples, and never beyond ``2**k ≤ n``
    since every atom of an independent tuple is nonempty.
    """
    options = options or CensusOptions()
    if space.is_uniform and space.n >= 2:
        top = prop1_max_k(space.n)
    else:
        top = space.n.bit_length() - 1
    report = CensusReport(
        space.n, 1, CensusMode.GRAND, uniform=space.is_uniform, workers=options.workers
    )
    for k in range(2, top + 1):
        part = tuple_census(space, k, options, engine)
        report.absorb(part)
        report.k = k
        if not part.total and not space.is_uniform:
            break
    logger.info("grand census n=%d: total=%d up to k=%d", space.n, report.total, report.k)
    return report


def grand_report(n: int) -> CensusReport:
    """Analytic grand census of the uniform n-point space."""
    return grand_census(uniform_space(n), engine=Engine.ANALYTIC)
