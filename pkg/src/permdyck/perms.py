"""Permutations, length-3 patterns, occurrence counting, and graph symmetries.

Conventions used throughout the package:

- A permutation of {1, ..., n} is written in one-line notation; values and
  positions are both 1-based.  ``Permutation`` is a thin tuple subclass, so
  ``rho[i - 1]`` is the value at position ``i``.
- An *occurrence* of a pattern ``tau`` (itself a permutation of length k)
  in ``rho`` is a strictly increasing k-tuple of positions whose subword
  has the same relative order as ``tau``.
- The *graph* of ``rho`` is the point set {(i, rho_i)}; the symmetry
  operations below act on this graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "PatternError",
    "Permutation",
    "HeightVector",
    "OccurrenceSet",
    "PATTERN_312",
    "PATTERN_321",
    "as_pattern",
    "standardize",
    "find_occurrences",
    "count_occurrences",
    "count_occurrences_fast",
    "left_to_right_maxima",
    "heights_312",
    "heights_321",
    "tau_base",
    "rotate_quarter",
    "reflect_main_diag",
    "reflect_anti_diag",
]


class PatternError(ValueError):
    """Raised for inputs that are not valid permutations/patterns."""


class Permutation(tuple):
    """A permutation of {1, ..., n} in one-line notation.

    The empty permutation (n = 0) and n = 1 are both legal.

    >>> Permutation((4, 3, 5, 1, 2)).n
    5
    >>> Permutation.from_text("2,1")
    Permutation(2, 1)
    """

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()) -> "Permutation":
        vals = tuple(int(v) for v in values)
        if sorted(vals) != list(range(1, len(vals) + 1)):
            raise PatternError(f"not a permutation of 1..{len(vals)}: {vals!r}")
        return tuple.__new__(cls, vals)

    @property
    def n(self) -> int:
        return len(self)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_text(cls, text: str) -> "Permutation":
        """Parse comma-separated one-line notation, e.g. ``"4,3,5,1,2"``."""
        text = text.strip()
        if not text:
            return cls()
        try:
            return cls(int(part) for part in text.split(","))
        except ValueError as exc:
            raise PatternError(f"cannot parse permutation {text!r}") from exc

    def to_text(self) -> str:
        return ",".join(str(v) for v in self)

    def graph(self) -> tuple[tuple[int, int], ...]:
        """The point set {(i, rho_i)} of the permutation graph."""
        return tuple((i, v) for i, v in enumerate(self, 1))

    def __repr__(self) -> str:
        return f"Permutation{tuple(self)!r}"


PATTERN_312 = Permutation((3, 1, 2))
PATTERN_321 = Permutation((3, 2, 1))


def as_pattern(tau) -> Permutation:
    """Normalise a pattern argument: Permutation, int sequence, or "312"-style text."""
    if isinstance(tau, Permutation):
        return tau
    if isinstance(tau, str):
        if "," in tau:
            return Permutation.from_text(tau)
        return Permutation(int(ch) for ch in tau.strip())
    return Permutation(tau)


class HeightVector(tuple):
    """Per-entry heights (h_1, ..., h_n); nonnegative, with h_n = 0."""

    __slots__ = ()

    def __new__(cls, heights: Iterable[int]) -> "HeightVector":
        hs = tuple(int(h) for h in heights)
        if any(h < 0 for h in hs):
            raise ValueError(f"negative height in {hs!r}")
        if hs and hs[-1] != 0:
            raise ValueError(f"last height must be 0, got {hs!r}")
        return tuple.__new__(cls, hs)


def standardize(word: Sequence[int]) -> Permutation:
    """Reduce a word of distinct integers to the permutation with the same
    relative order (smallest entry becomes 1, second-smallest 2, ...).

    >>> standardize((5, 2, 4))
    Permutation(3, 1, 2)
    >>> standardize((9, 6, 4))
    Permutation(3, 2, 1)
    """
    vals = tuple(word)
    if len(set(vals)) != len(vals):
        raise PatternError(f"entries must be pairwise distinct: {vals!r}")
    rank = {v: r for r, v in enumerate(sorted(vals), 1)}
    return Permutation(rank[v] for v in vals)


@dataclass(frozen=True)
class OccurrenceSet:
    """All occurrences of a pattern in a host permutation.

    ``positions`` holds strictly increasing index tuples (1-based), pairwise
    distinct and in lexicographic order.
    """

    pattern: Permutation
    positions: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.positions)

    def value_tuples(self, rho: Permutation) -> tuple[tuple[int, ...], ...]:
        """The occurrences as value tuples instead of position tuples."""
        return tuple(tuple(rho[i - 1] for i in pos) for pos in self.positions)


def find_occurrences(rho: Permutation, tau) -> OccurrenceSet:
    """Enumerate every occurrence of ``tau`` in ``rho`` by scanning all
    position k-subsets.  This is the slow, obviously-correct reference used
    as ground truth for the fast counters.
    """
    tau = as_pattern(tau)
    if tau.n < 2:
        raise PatternError("patterns must have length >= 2")
    hits = []
    target = tuple(tau)
    for pos in itertools.combinations(range(1, len(rho) + 1), tau.n):
        if tuple(standardize([rho[i - 1] for i in pos])) == target:
            hits.append(pos)
    return OccurrenceSet(pattern=tau, positions=tuple(hits))


def count_occurrences(rho: Permutation, tau) -> int:
    """|find_occurrences(rho, tau)|; kept deliberately on the brute-force path."""
    return find_occurrences(rho, tau).count


def _reverse(rho: Sequence[int]) -> tuple[int, ...]:
    return tuple(reversed(rho))


def _complement(rho: Sequence[int]) -> tuple[int, ...]:
    n = len(rho)
    return tuple(n + 1 - v for v in rho)


def count_occurrences_fast(rho: Sequence[int], tau) -> int:
    """Count occurrences of a length-3 pattern in O(n^2).

    All six patterns of S_3 are supported by reducing to the (3,1,2) and
    (3,2,1) kernels via reversal/complementation of the host:
    reversing positions reverses the pattern, complementing values
    complements it, and both are occurrence-count-preserving bijections.
    """
    from permdyck import kernels

    tau = as_pattern(tau)
    if tau.n != 3:
        raise PatternError(f"fast counting supports length-3 patterns only, got {tau!r}")
    t = tuple(tau)
    if t == (3, 1, 2):
        return kernels.count_312(tuple(rho))
    if t == (3, 2, 1):
        return kernels.count_321(tuple(rho))
    if t == (1, 2, 3):
        return kernels.count_321(_complement(rho))
    if t == (1, 3, 2):
        return kernels.count_312(_complement(rho))
    if t == (2, 1, 3):
        return kernels.count_312(_reverse(rho))
    if t == (2, 3, 1):
        return kernels.count_312(_complement(_reverse(rho)))
    raise PatternError(f"unrecognised length-3 pattern {tau!r}")  # pragma: no cover


def left_to_right_maxima(rho: Sequence[int]) -> tuple[int, ...]:
    """Positions i such that rho_i is greater than every entry to its left.

    >>> left_to_right_maxima((4, 3, 5, 1, 2))
    (1, 3)
    """
    out = []
    best = 0
    for i, v in enumerate(rho, 1):
        if v > best:
            out.append(i)
            best = v
    return tuple(out)


def heights_312(rho: Sequence[int]) -> HeightVector:
    """h_i = number of entries smaller than rho_i lying to its right.

    This is the inversion-table encoding of ``rho``; it determines ``rho``
    uniquely.

    >>> tuple(heights_312((4, 3, 5, 1, 2)))
    (3, 2, 2, 0, 0)
    """
    n = len(rho)
    return HeightVector(
        sum(1 for k in range(i + 1, n) if rho[k] < rho[i]) for i in range(n)
    )


def heights_321(rho: Sequence[int]) -> HeightVector:
    """The two-branch height of each entry.

    For a left-to-right maximum, h_i counts smaller entries to its right;
    for a remaining entry, h_i counts entries to its right that are bigger
    than rho_i but smaller than the preceding left-to-right maximum.

    >>> tuple(heights_321((4, 3, 5, 1, 2)))
    (3, 0, 2, 1, 0)
    """
    n = len(rho)
    maxima = set(left_to_right_maxima(rho))
    out = []
    running_max = 0
    for i in range(1, n + 1):
        v = rho[i - 1]
        if i in maxima:
            running_max = v
            out.append(sum(1 for k in range(i, n) if rho[k] < v))
        else:
            out.append(sum(1 for k in range(i, n) if v < rho[k] < running_max))
    return HeightVector(out)


def tau_base(rho: Permutation, tau) -> Permutation:
    """The reduction of the subword of all entries involved in at least one
    occurrence of ``tau``; the empty permutation if ``rho`` avoids ``tau``.

    >>> tau_base(Permutation((1, 5, 2, 4, 3)), "312")
    Permutation(4, 1, 3, 2)
    """
    tau = as_pattern(tau)
    if tau.n != 3:
        raise PatternError("tau-bases are defined here for length-3 patterns")
    occ = find_occurrences(rho, tau)
    involved = sorted({i for pos in occ.positions for i in pos})
    return standardize([rho[i - 1] for i in involved])


def rotate_quarter(rho: Permutation) -> Permutation:
    """Rotate the permutation graph by a quarter turn: (i, v) -> (n+1-v, i)."""
    n = len(rho)
    out = [0] * n
    for i, v in enumerate(rho, 1):
        out[n - v] = i
    return Permutation(out)


def reflect_main_diag(rho: Permutation) -> Permutation:
    """Reflect the graph at the upwards-sloping diagonal: (i, v) -> (v, i).

    This is the group inverse of ``rho``.
    """
    n = len(rho)
    out = [0] * n
    for i, v in enumerate(rho, 1):
        out[v - 1] = i
    return Permutation(out)


def reflect_anti_diag(rho: Permutation) -> Permutation:
    """Reflect the graph at the downwards-sloping diagonal:
    (i, v) -> (n+1-v, n+1-i)."""
    n = len(rho)
    out = [0] * n
    for i, v in enumerate(rho, 1):
        out[n - v] = n + 1 - i
    return Permutation(out)


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order."""
    for p in itertools.permutations(range(1, n + 1)):
        yield Permutation(p)
