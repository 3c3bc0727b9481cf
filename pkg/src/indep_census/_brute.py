"""Exhaustive bit-vector census of independent pairs and tuples.

Every event of an ``n``-point space is an integer mask. A lookup table
``mass[mask]`` holds the integer weight of each of the ``2**n`` masks (plain
popcounts for uniform spaces), so independence of a leading event against a
whole range of candidates is a handful of vectorized numpy operations.

Work is split into fixed ranges of the leading event (its high bits). The
split depends only on ``n``, never on the worker count, and partial results
are merged in range order, so every reported number is the same for any
number of workers.
"""

import itertools
import logging
import time
from collections import Counter
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache, reduce
from operator import and_

import numpy as np

from indep_census._analytic import (
    ClassKey,
    PatternSignature,
    class_order,
    pair_classes,
    prop1_max_k,
    tuple_classes,
)
from indep_census._errors import CapabilityError, ValidationError
from indep_census._space import MAX_BRUTE_OUTCOMES, Event, SampleSpace, atom_masks, uniform_space

logger = logging.getLogger(__name__)

_INT64_SAFE = 2**62
_CHUNK_BITS = 6

type MassKey = tuple[tuple[int, ...], int]


class CensusMode(Enum):
    """What a census report counts."""

    PAIRS = "pairs"
    TUPLES = "tuples"
    GRAND = "grand"
    PERSISTENT = "persistent"


@dataclass(frozen=True)
class CensusOptions:
    """Knobs shared by the enumerating censuses."""

    include_trivial: bool = False
    list_cap: int = 0
    workers: int = 1
    prune: bool = True

    def __post_init__(self) -> None:
        if self.list_cap < 0:
            raise ValidationError(f"list cap must be nonnegative, got {self.list_cap}")
        if self.workers < 1:
            raise ValidationError(f"worker count must be positive, got {self.workers}")


@dataclass
class CensusReport:
    """Counts of independent tuples grouped by pattern signature and by class.

    ``by_class`` is keyed by ``(sizes, intersection)`` and is filled for
    uniform spaces only. ``total`` always equals the sum of ``by_signature``.
    """

    n: int
    k: int
    mode: CensusMode
    total: int = 0
    by_signature: dict[PatternSignature, int] = field(default_factory=dict)
    by_class: dict[ClassKey, int] = field(default_factory=dict)
    witnesses: list[tuple[Event, ...]] = field(default_factory=list)
    uniform: bool = True
    elapsed_seconds: float = 0.0
    workers: int = 1
    distinct_events: int | None = None
    class_signature: dict[ClassKey, PatternSignature] = field(default_factory=dict)

    def add(self, signature: PatternSignature, count: int, key: ClassKey | None = None) -> None:
        self.by_signature[signature] = self.by_signature.get(signature, 0) + count
        if key is not None:
            self.by_class[key] = self.by_class.get(key, 0) + count
            self.class_signature[key] = signature
        self.total += count

    def absorb(self, other: "CensusReport") -> None:
        """Fold another report's counts into this one."""
        for signature, count in other.by_signature.items():
            self.by_signature[signature] = self.by_signature.get(signature, 0) + count
        for key, count in other.by_class.items():
            self.by_class[key] = self.by_class.get(key, 0) + count
        self.class_signature.update(other.class_signature)
        self.total += other.total
        self.witnesses.extend(other.witnesses)
        self.elapsed_seconds += other.elapsed_seconds

    def classes(self) -> list[tuple[ClassKey, int]]:
        return sorted(self.by_class.items(), key=lambda item: class_order(item[0]))

    def signatures(self) -> list[tuple[PatternSignature, int]]:
        """Signatures in first-appearance order over the canonical class order."""
        ordered: list[PatternSignature] = []
        for key, _ in self.classes():
            if self.class_signature[key] not in ordered:
                ordered.append(self.class_signature[key])
        ordered.extend(sorted(s for s in self.by_signature if s not in ordered))
        return [(s, self.by_signature[s]) for s in ordered if s in self.by_signature]


@dataclass(frozen=True)
class _Tables:
    total: int
    mass: np.ndarray
    events: np.ndarray


@lru_cache(maxsize=8)
def _tables(weights: tuple[int, ...], power: int, include_trivial: bool) -> _Tables:
    """Mass of every mask plus the ascending array of candidate events."""
    n = len(weights)
    total = sum(weights)
    masks = np.arange(1 << n, dtype=np.int64)
    dtype = np.int64 if total**power < _INT64_SAFE else object
    if dtype is np.int64 and all(w == 1 for w in weights):
        mass = np.bitwise_count(masks).astype(np.int64)
    else:
        mass = np.zeros(1, dtype=dtype)
        for w in weights:
            mass = np.concatenate([mass, mass + w])
    lo, hi = (0, (1 << n) - 1) if include_trivial else (1, (1 << n) - 2)
    return _Tables(total, mass, masks[lo : hi + 1])


def _chunk_bounds(n: int, events: np.ndarray) -> list[tuple[int, int]]:
    """Half-open ranges of leading events sharing their high bits."""
    if not events.size:
        return []
    lo, hi = int(events[0]), int(events[-1]) + 1
    width = 1 << (n - min(n, _CHUNK_BITS))
    bounds = []
    for start in range(0, 1 << n, width):
        s, e = max(lo, start), min(hi, start + width)
        if s < e:
            bounds.append((s, e))
    return bounds


@dataclass
class _Partial:
    counts: Counter[MassKey] = field(default_factory=Counter)
    reps: dict[MassKey, tuple[int, ...]] = field(default_factory=dict)
    witnesses: list[tuple[int, ...]] = field(default_factory=list)
    hits: list[tuple[int, int]] = field(default_factory=list)

    def record(
        self,
        prefix: tuple[int, ...],
        prefix_masses: tuple[int, ...],
        hits: list[int],
        hit_masses: list[int],
        commons: list[int],
        list_cap: int,
    ) -> None:
        local = Counter(zip(hit_masses, commons))
        for (w, common), count in local.items():
            key = (tuple(sorted((*prefix_masses, w))), common)
            self.counts[key] += count
            if key not in self.reps:
                first = next(
                    h for h, hw, hc in zip(hits, hit_masses, commons) if hw == w and hc == common
                )
                self.reps[key] = (*prefix, first)
        room = list_cap - len(self.witnesses)
        if room > 0:
            self.witnesses.extend((*prefix, h) for h in hits[:room])

    def merge(self, other: "_Partial", list_cap: int) -> None:
        self.counts.update(other.counts)
        for key, rep in other.reps.items():
            self.reps.setdefault(key, rep)
        room = list_cap - len(self.witnesses)
        if room > 0:
            self.witnesses.extend(other.witnesses[:room])
        self.hits.extend(other.hits)


@dataclass(frozen=True)
class _PairJob:
    weights: tuple[int, ...]
    include_trivial: bool
    start: int
    stop: int
    list_cap: int
    collect: bool = False


def _pair_chunk(job: _PairJob) -> _Partial:
    tables = _tables(job.weights, 2, job.include_trivial)
    mass, total, events = tables.mass, tables.total, tables.events
    first = int(events[0])
    partial = _Partial()
    for a in range(job.start, job.stop):
        bs = events[a - first + 1 :]
        if not bs.size:
            break
        common = mass[bs & a]
        wb = mass[bs]
        ok = common * total == wb * mass[a]
        if not ok.any():
            continue
        hits = bs[ok].tolist()
        partial.record(
            (a,), (int(mass[a]),), hits, wb[ok].tolist(), common[ok].tolist(), job.list_cap
        )
        if job.collect:
            partial.hits.extend((a, b) for b in hits)
    return partial


@dataclass(frozen=True)
class _TupleJob:
    weights: tuple[int, ...]
    include_trivial: bool
    k: int
    start: int
    stop: int
    list_cap: int
    feasible: frozenset[tuple[int, ...]] | None


class _TupleSearch:
    """Depth-first extension of independent prefixes by larger events."""

    def __init__(self, job: _TupleJob) -> None:
        self.job = job
        tables = _tables(job.weights, job.k, job.include_trivial)
        self.mass, self.total, self.events = tables.mass, tables.total, tables.events
        self.partial = _Partial()
        self._buckets_by_size: dict[int, np.ndarray] = {}
        self._allowed: dict[tuple[int, ...], list[np.ndarray]] = {}

    def run(self) -> _Partial:
        leads = self.events[(self.events >= self.job.start) & (self.events < self.job.stop)]
        for lead in leads.tolist():
            w = int(self.mass[lead])
            if self.job.feasible is not None and (w,) not in self.job.feasible:
                continue
            self._descend((lead,), (w,), [(lead, w, 1)])
        return self.partial

    def _buckets(self, prefix_masses: tuple[int, ...]) -> list[np.ndarray]:
        feasible = self.job.feasible
        if feasible is None:
            return [self.events]
        sizes = tuple(sorted(prefix_masses))
        if sizes not in self._allowed:
            self._allowed[sizes] = [
                self._bucket(c)
                for c in sorted({s for t in feasible for s in t})
                if tuple(sorted((*sizes, c))) in feasible
            ]
        return self._allowed[sizes]

    def _bucket(self, size: int) -> np.ndarray:
        if size not in self._buckets_by_size:
            self._buckets_by_size[size] = self.events[self.mass[self.events] == size]
        return self._buckets_by_size[size]

    def _descend(
        self,
        prefix: tuple[int, ...],
        prefix_masses: tuple[int, ...],
        subsets: list[tuple[int, int, int]],
    ) -> None:
        # subsets holds (intersection mask, product of masses, size) for every
        # nonempty sub-tuple of the prefix
        mass, total = self.mass, self.total
        last_level = len(prefix) + 1 == self.job.k
        for bucket in self._buckets(prefix_masses):
            cand = bucket[np.searchsorted(bucket, prefix[-1], side="right") :]
            wc = mass[cand]
            for common, product, size in subsets:
                if not cand.size:
                    break
                keep = mass[cand & common] * total**size == wc * product
                cand, wc = cand[keep], wc[keep]
            if not cand.size:
                continue
            if last_level:
                shared = reduce(and_, prefix)
                self.partial.record(
                    prefix,
                    prefix_masses,
                    cand.tolist(),
                    wc.tolist(),
                    mass[cand & shared].tolist(),
                    self.job.list_cap,
                )
                continue
            for c, w in zip(cand.tolist(), wc.tolist()):
                extended = [
                    (common & c, product * w, size + 1) for common, product, size in subsets
                ]
                extended.append((c, w, 1))
                self._descend((*prefix, c), (*prefix_masses, w), subsets + extended)


def _tuple_chunk(job: _TupleJob) -> _Partial:
    return _TupleSearch(job).run()


def _run_jobs[J](fn: Callable[[J], _Partial], jobs: Sequence[J], workers: int) -> list[_Partial]:
    if workers == 1 or len(jobs) < 2:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def _merge(partials: Iterable[_Partial], list_cap: int) -> _Partial:
    merged = _Partial()
    for index, partial in enumerate(partials):
        logger.debug("chunk %d: %d independent tuples", index, partial.counts.total())
        merged.merge(partial, list_cap)
    return merged


def _check_capacity(space: SampleSpace) -> None:
    if space.n > MAX_BRUTE_OUTCOMES:
        raise CapabilityError(
            f"brute force handles at most {MAX_BRUTE_OUTCOMES} outcomes, got {space.n}"
        )


def representative_signature(space: SampleSpace, masks: Sequence[int]) -> PatternSignature:
    """Signature of a concrete tuple: atom cardinalities, or atom probabilities when weighted."""
    atoms = [space.mass(m) for m in atom_masks(space.n, masks)]
    if space.is_uniform:
        return PatternSignature.from_atoms(atoms)
    return PatternSignature.from_atoms([Fraction(a, space.integer_total) for a in atoms])


def _build_report(
    space: SampleSpace,
    k: int,
    mode: CensusMode,
    merged: _Partial,
    options: CensusOptions,
    started: float,
) -> CensusReport:
    report = CensusReport(space.n, k, mode, uniform=space.is_uniform, workers=options.workers)
    for key in sorted(merged.counts, key=class_order):
        signature = representative_signature(space, merged.reps[key])
        report.add(signature, merged.counts[key], key if space.is_uniform else None)
    report.witnesses = [tuple(Event(m, space.n) for m in w) for w in merged.witnesses]
    report.elapsed_seconds = time.perf_counter() - started
    logger.info(
        "%s census n=%d k=%d workers=%d: total=%d in %.2fs",
        mode.value,
        space.n,
        k,
        options.workers,
        report.total,
        report.elapsed_seconds,
    )
    return report


def collect_independent_pairs(space: SampleSpace, workers: int = 1) -> list[tuple[int, int]]:
    """Every independent pair of nontrivial events as ``(A, B)`` masks with ``A < B``."""
    _check_capacity(space)
    tables = _tables(space.integer_weights, 2, False)
    jobs = [
        _PairJob(space.integer_weights, False, s, e, 0, collect=True)
        for s, e in _chunk_bounds(space.n, tables.events)
    ]
    return _merge(_run_jobs(_pair_chunk, jobs, workers), 0).hits


def brute_pair_census(space: SampleSpace, options: CensusOptions | None = None) -> CensusReport:
    """Count unordered pairs ``A < B`` of events with P(A∩B) = P(A)·P(B)."""
    options = options or CensusOptions()
    _check_capacity(space)
    started = time.perf_counter()
    tables = _tables(space.integer_weights, 2, options.include_trivial)
    jobs = [
        _PairJob(space.integer_weights, options.include_trivial, s, e, options.list_cap)
        for s, e in _chunk_bounds(space.n, tables.events)
    ]
    merged = _merge(_run_jobs(_pair_chunk, jobs, options.workers), options.list_cap)
    return _build_report(space, 2, CensusMode.PAIRS, merged, options, started)


def _feasible_prefixes(n: int, k: int) -> frozenset[tuple[int, ...]]:
    """Every sub-multiset of a size tuple admitted by the analytic solution table."""
    return frozenset(
        combo
        for cls in tuple_classes(n, k)
        for r in range(1, k + 1)
        for combo in itertools.combinations(cls.sizes, r)
    )


def brute_tuple_census(
    space: SampleSpace, k: int, options: CensusOptions | None = None
) -> CensusReport:
    """Count unordered mutually independent k-tuples by depth-first extension.

    Uniform spaces restrict candidate sizes to those the analytic solution
    table allows unless ``options.prune`` is off or trivial events are included.
    """
    options = options or CensusOptions()
    if k < 2:
        raise ValidationError(f"tuples need k >= 2, got {k}")
    _check_capacity(space)
    started = time.perf_counter()
    feasible = None
    if space.is_uniform and options.prune and not options.include_trivial:
        feasible = _feasible_prefixes(space.n, k)
    tables = _tables(space.integer_weights, k, options.include_trivial)
    jobs = [
        _TupleJob(
            space.integer_weights, options.include_trivial, k, s, e, options.list_cap, feasible
        )
        for s, e in _chunk_bounds(space.n, tables.events)
    ]
    merged = _merge(_run_jobs(_tuple_chunk, jobs, options.workers), options.list_cap)
    return _build_report(space, k, CensusMode.TUPLES, merged, options, started)


@dataclass
class VerificationRow:
    """Brute-force and analytic counts for one tuple size."""

    k: int
    analytic_total: int
    brute_total: int
    mismatches: list[str] = field(default_factory=list)

    @property
    def matched(self) -> bool:
        return not self.mismatches


@dataclass
class VerificationReport:
    n: int
    rows: list[VerificationRow] = field(default_factory=list)

    @property
    def matched(self) -> bool:
        return all(row.matched for row in self.rows)

    @property
    def first_mismatch(self) -> str | None:
        for row in self.rows:
            if row.mismatches:
                return f"k={row.k}: {row.mismatches[0]}"
        return None


def _compare[K](label: str, expected: dict[K, int], actual: dict[K, int]) -> list[str]:
    problems = []
    for key in sorted(set(expected) | set(actual), key=str):
        want, got = expected.get(key, 0), actual.get(key, 0)
        if want != got:
            problems.append(f"{label} {key}: analytic {want} != brute {got}")
    return problems


def verify(n: int, k_max: int, options: CensusOptions | None = None) -> VerificationReport:
    """Compare brute-force and analytic counts for k = 2 .. min(k_max, prop1_max_k(n))."""
    options = options or CensusOptions()
    space = uniform_space(n)
    _check_capacity(space)
    top = max(2, min(k_max, prop1_max_k(n))) if n >= 2 else 2
    report = VerificationReport(n)
    for k in range(2, top + 1):
        classes = pair_classes(n) if k == 2 else tuple_classes(n, k)
        brute = (
            brute_pair_census(space, options) if k == 2 else brute_tuple_census(space, k, options)
        )
        expected_classes = {c.key: c.count for c in classes}
        expected_signatures: dict[PatternSignature, int] = {}
        for c in classes:
            expected_signatures[c.signature] = expected_signatures.get(c.signature, 0) + c.count
        row = VerificationRow(k, sum(expected_classes.values()), brute.total)
        if row.analytic_total != row.brute_total:
            row.mismatches.append(
                f"total: analytic {row.analytic_total} != brute {row.brute_total}"
            )
        row.mismatches += _compare("class", expected_classes, brute.by_class)
        row.mismatches += _compare("signature", expected_signatures, brute.by_signature)
        report.rows.append(row)
    return report

