"""Pattern-based exact counting of independent pairs and tuples in uniform spaces.

A mutually independent k-tuple of events in the uniform ``n``-point space has
atom cardinalities fixed by the event sizes alone:
``c_ω = ∏ m_i(ω_i) / n**(k-1)`` with ``m_i(1) = a_i`` and ``m_i(0) = n - a_i``.
Every assignment of outcomes to atoms with those cardinalities gives one
ordered tuple, so a class of size tuple ``(a_1..a_k)`` holds
``multinomial(n, atoms) / ∏ (multiplicity of each size)!`` unordered tuples.
"""

import math
from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

from indep_census._errors import ValidationError

type ClassKey = tuple[tuple[int, ...], int]


@dataclass(frozen=True, order=True)
class PatternSignature:
    """Sorted multiset of atom masses: cardinalities, or probabilities when weighted."""

    cells: tuple[int | Fraction, ...]

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.cells) + "]"

    @classmethod
    def from_atoms(cls, atoms: Sequence[int | Fraction]) -> "PatternSignature":
        return cls(tuple(sorted(atoms)))


@dataclass(frozen=True)
class SolutionClass:
    """All unordered independent k-tuples sharing one size tuple."""

    n: int
    sizes: tuple[int, ...]
    atoms: tuple[int, ...]
    symmetry: int
    count: int

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def intersection(self) -> int:
        """Cardinality of the common part of all events (the all-ones atom)."""
        return self.atoms[-1]

    @property
    def key(self) -> ClassKey:
        return self.sizes, self.intersection

    @property
    def signature(self) -> PatternSignature:
        return PatternSignature.from_atoms(self.atoms)


def class_order(key: ClassKey) -> tuple[int, int, tuple[int, ...]]:
    """Canonical ordering: tuple size, intersection, then sizes read from the largest."""
    sizes, intersection = key
    return len(sizes), intersection, tuple(reversed(sizes))


def multinomial(n: int, parts: Sequence[int]) -> int:
    """``n! / ∏ parts!``."""
    if any(p < 0 for p in parts):
        raise ValidationError(f"parts must be nonnegative, got {list(parts)}")
    if sum(parts) != n:
        raise ValidationError(f"parts {list(parts)} do not sum to {n}")
    result = math.factorial(n)
    for p in parts:
        result //= math.factorial(p)
    return result


def size_symmetry(sizes: Sequence[int]) -> int:
    """Number of reorderings of a tuple that keep its size sequence."""
    return math.prod(math.factorial(m) for m in Counter(sizes).values())


def _make_class(n: int, sizes: tuple[int, ...], atoms: tuple[int, ...]) -> SolutionClass:
    symmetry = size_symmetry(sizes)
    return SolutionClass(n, sizes, atoms, symmetry, multinomial(n, atoms) // symmetry)


def pair_classes(n: int) -> list[SolutionClass]:
    """Every (a, b, d) with a ≤ b, 0 < a, b < n, d ≥ 1 and a·b = n·d."""
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    classes = []
    for a in range(1, n):
        for b in range(a, n):
            d, rest = divmod(a * b, n)
            if rest:
                continue
            classes.append(_make_class(n, (a, b), (n - a - b + d, a - d, b - d, d)))
    return sorted(classes, key=lambda c: class_order(c.key))


def _extend(n: int, sizes: tuple[int, ...], atoms: tuple[int, ...], k: int) -> Iterator[
    tuple[tuple[int, ...], tuple[int, ...]]
]:
    if len(sizes) == k:
        yield sizes, atoms
        return
    for a in range(sizes[-1], n):
        # every prefix of an independent tuple is independent, so its atoms are integers
        if any(c * a % n for c in atoms):
            continue
        inside = tuple(c * a // n for c in atoms)
        outside = tuple(c - i for c, i in zip(atoms, inside))
        yield from _extend(n, (*sizes, a), outside + inside, k)


def tuple_classes(n: int, k: int) -> list[SolutionClass]:
    """Every nondecreasing size tuple whose independence atoms are positive integers."""
    if k < 2:
        raise ValidationError(f"tuples need k >= 2, got {k}")
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    classes = [
        _make_class(n, sizes, atoms)
        for first in range(1, n)
        for sizes, atoms in _extend(n, (first,), (n - first, first), k)
    ]
    return sorted(classes, key=lambda c: class_order(c.key))


def pattern_signature(cls: SolutionClass) -> PatternSignature:
    return cls.signature


def complement_classes(cls: SolutionClass) -> list[tuple[int, int]]:
    """Size pairs reached by complementing one or both events of a pair class."""
    if cls.k != 2:
        raise ValidationError("complement classes are defined for pairs")
    a, b = cls.sizes
    n = cls.n
    flipped = {tuple(sorted(p)) for p in ((a, n - b), (n - a, b), (n - a, n - b))}
    return sorted(flipped)


def total_pairs(n: int) -> int:
    return sum(c.count for c in pair_classes(n))


def total_tuples(n: int, k: int) -> int:
    return sum(c.count for c in tuple_classes(n, k))


def grand_total(n: int) -> int:
    """Independent tuples of every size k ≥ 2, pairs included."""
    if n < 2:
        return 0
    return sum(total_tuples(n, k) for k in range(2, prop1_max_k(n) + 1))


def prop1_bound(n: int, k: int) -> Fraction:
    """Upper bound ``(⌊n/2⌋/n)**k`` on the common-part share of k independent events."""
    if n < 2:
        raise ValidationError(f"the bound needs n >= 2, got {n}")
    if k < 1:
        raise ValidationError(f"the bound needs k >= 1, got {k}")
    return Fraction(n // 2, n) ** k


def prop1_max_k(n: int) -> int:
    """Largest k for which the bound still admits a common part of one outcome."""
    if n < 2:
        raise ValidationError(f"the bound needs n >= 2, got {n}")
    half = n // 2
    k = 1
    while half ** (k + 1) >= n**k:
        k += 1
    return k


def satisfies_prop1(n: int, sizes: Sequence[int]) -> bool:
    """Check ``∏ min(a_i, n - a_i) ≥ n**(k-1)`` for a tuple of event sizes."""
    return math.prod(min(a, n - a) for a in sizes) >= n ** (len(sizes) - 1)


def all_pairs_count(n: int) -> int:
    """Unordered pairs of subsets of an n-set, a pair of equal subsets included."""
    return 2**n * (2**n + 1) // 2


def independent_share(n: int) -> Fraction:
    return Fraction(total_pairs(n), all_pairs_count(n))


def max_pair_intersection(n: int) -> int:
    """Largest common part among independent pairs, 0 when there are none."""
    return max((c.intersection for c in pair_classes(n)), default=0)
