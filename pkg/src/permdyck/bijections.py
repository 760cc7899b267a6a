"""Encodings of permutations as Dyck paths with down-jumps, their inverses
on pattern-avoiding permutations, and the jump/occurrence structure theory.

Three encoders share one translation step (``paths.path_from_down_heights``):

- ``psi_avoiding``: the staircase map defined on all of S_n.  Mark the
  left-to-right maxima of the permutation graph, take the region of cells
  lying weakly below-and-right of some maximum, rotate its upper boundary
  by -pi/4.  It is implemented here through the equivalent height rule
  (maximum at position m with value v has height v - m; a remaining entry
  at position k under that maximum has height h_m - (k - m)); the literal
  geometric construction is kept as ``psi_avoiding_by_rotation`` and the
  two are asserted equal in the test suite.
- ``psi312`` / ``psi321``: translate ``heights_312`` / ``heights_321``.
  Both are injections into the paths with down-jumps; they agree with
  ``psi_avoiding`` exactly on the (3,1,2)- resp. (3,2,1)-avoiding
  permutations, where the image is jump-free.

The i-th down-step of an image always corresponds to the i-th entry of the
permutation, and every left-to-right maximum becomes a peak of the path.

``analyze_jumps`` packages the local statistics of each jump (depth d,
following down-run l, preceding down-run m, preceding left-to-right
maximum, the d "causing" entries) together with the occurrence triples
those statistics force, and is validated exhaustively against brute-force
occurrence sets.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Optional, Sequence

from permdyck import paths
from permdyck.paths import Jump, PathError
from permdyck.perms import (
    PATTERN_312,
    PATTERN_321,
    PatternError,
    Permutation,
    as_pattern,
    count_occurrences_fast,
    heights_312,
    heights_321,
    left_to_right_maxima,
)

__all__ = [
    "NotInImageError",
    "psi_avoiding",
    "psi_avoiding_by_rotation",
    "staircase_heights",
    "psi312",
    "psi321",
    "psi_tau",
    "decode_321_avoiding",
    "decode_312_avoiding",
    "decode_psi312",
    "MaximumBeforeJump",
    "JumpContext",
    "OccurrencePrediction",
    "JumpAnalysis",
    "analyze_jumps",
    "check_jumpsum",
    "is_single_occurrence_shape_312",
]


class NotInImageError(ValueError):
    """Raised when decoding a path that is not an encoder image."""


# ---------------------------------------------------------------------------
# encoders


def staircase_heights(rho: Sequence[int]) -> tuple[int, ...]:
    """Down-step heights of the staircase map: v - m for a maximum (m, v),
    and h_m - (k - m) for a remaining entry at position k whose preceding
    maximum sits at position m."""
    out = []
    max_pos = 0
    max_val = 0
    for k, v in enumerate(rho, 1):
        if v > max_val:
            max_pos, max_val = k, v
            out.append(v - k)
        else:
            out.append((max_val - max_pos) - (k - max_pos))
    return tuple(out)


def psi_avoiding(rho: Permutation) -> str:
    """The staircase map S_n -> D_n (never produces jumps)."""
    return paths.path_from_down_heights(staircase_heights(rho))


def psi_avoiding_by_rotation(rho: Permutation) -> str:
    """The literal geometric construction: rasterise the cells weakly
    below-and-right of the left-to-right maxima and walk the rotated upper
    boundary column by column.  Kept as an independent cross-check of
    ``psi_avoiding``."""
    n = len(rho)
    maxima = [(i, rho[i - 1]) for i in left_to_right_maxima(rho)]
    covered = {
        (x, y)
        for (i, v) in maxima
        for x in range(i, n + 1)
        for y in range(1, v + 1)
    }
    steps = []
    prev_top = 0
    for x in range(1, n + 1):
        top = max((y for y in range(1, n + 1) if (x, y) in covered), default=0)
        steps.append(paths.UP * (top - prev_top))
        steps.append(paths.DOWN)
        prev_top = top
    return "".join(steps)


def psi312(rho: Permutation) -> str:
    """Encode via the smaller-entries-to-the-right heights; injective on S_n.

    >>> psi312(Permutation((4, 3, 5, 1, 2)))
    'UUUUDDUDJDUD'
    """
    return paths.path_from_down_heights(heights_312(rho))


def psi321(rho: Permutation) -> str:
    """Encode via the two-branch heights; injective on S_n.

    >>> psi321(Permutation((4, 3, 5, 1, 2)))
    'UUUUDJJDUUUDDD'
    """
    return paths.path_from_down_heights(heights_321(rho))


def psi_tau(rho: Permutation, tau) -> str:
    tau = as_pattern(tau)
    if tuple(tau) == tuple(PATTERN_312):
        return psi312(rho)
    if tuple(tau) == tuple(PATTERN_321):
        return psi321(rho)
    raise PatternError(f"no encoder for pattern {tau!r}")


# ---------------------------------------------------------------------------
# decoders


def _peak_maxima(path: str) -> list[tuple[int, int]]:
    """(position, value) of the left-to-right maxima encoded by a jump-free
    Dyck path: its peaks, with value = height + down-step index."""
    return [
        (d.index, d.height + d.index)
        for d in paths.down_steps(path)
        if d.peak == d.index
    ]


def _require_dyck(path: str) -> None:
    check = paths.validate(path)
    if check.kind == "invalid":
        raise PathError(f"invalid path: {check.reason} (prefix {check.prefix})")
    if check.kind != "dyck":
        raise PathError("decoding is defined for jump-free Dyck paths only")


def decode_321_avoiding(path: str) -> Permutation:
    """The unique (3,2,1)-avoiding preimage of a jump-free Dyck path under
    the staircase map: place the maxima read off the peaks, then fill the
    remaining positions left to right with the unused values in ascending
    order.

    >>> decode_321_avoiding("UUDD")
    Permutation(2, 1)
    """
    _require_dyck(path)
    n, _ = paths.path_counts(path)
    out = [0] * n
    used = set()
    for pos, val in _peak_maxima(path):
        out[pos - 1] = val
        used.add(val)
    free = sorted(set(range(1, n + 1)) - used)
    it = iter(free)
    for i in range(n):
        if out[i] == 0:
            out[i] = next(it)
    return Permutation(out)


def decode_312_avoiding(path: str) -> Permutation:
    """The unique (3,1,2)-avoiding preimage: place the maxima, then fill each
    remaining position (left to right) with the largest unused value below
    the preceding maximum.

    >>> decode_312_avoiding("UUDD")
    Permutation(2, 1)
    """
    _require_dyck(path)
    n, _ = paths.path_counts(path)
    maxima = _peak_maxima(path)
    out = [0] * n
    free: list[int] = sorted(set(range(1, n + 1)) - {v for _, v in maxima})
    for pos, val in maxima:
        out[pos - 1] = val
    positions = [p for p, _ in maxima]
    values = [v for _, v in maxima]
    for i in range(1, n + 1):
        if out[i - 1]:
            continue
        bound = values[bisect.bisect_right(positions, i) - 1]
        j = bisect.bisect_left(free, bound) - 1
        if j < 0:
            raise NotInImageError(f"no fill value below {bound} at position {i}")
        out[i - 1] = free.pop(j)
    return Permutation(out)


def decode_psi312(path: str) -> Permutation:
    """Invert ``psi312``.  The path must satisfy the jump sandwich condition
    and its down-step heights must form a valid inversion table
    (h_i <= n - i); the entry at position i is then the (h_i + 1)-th
    smallest value not used so far.

    >>> decode_psi312("UUUUDDUDJDUD")
    Permutation(4, 3, 5, 1, 2)
    """
    check = paths.validate(path)
    if not check.ok:
        raise PathError(f"invalid path: {check.reason} (prefix {check.prefix})")
    if not paths.is_psi_shaped(path):
        raise NotInImageError("jumps must be sandwiched between down-steps")
    heights = paths.down_step_heights(path)
    n = len(heights)
    free = list(range(1, n + 1))
    out = []
    for i, h in enumerate(heights, 1):
        if h > n - i:
            raise NotInImageError(f"height {h} at entry {i} exceeds n - i = {n - i}")
        out.append(free.pop(h))
    return Permutation(out)


# ---------------------------------------------------------------------------
# jump structure and predicted occurrences


@dataclass(frozen=True)
class MaximumBeforeJump:
    """A left-to-right maximum to the left of a jump, with its height and
    the count of intervening non-maximum steps used by the summation
    clauses (up-steps for the (3,1,2) clause, down-steps for (3,2,1))."""

    position: int
    value: int
    height: int
    steps_between: int


@dataclass(frozen=True)
class JumpContext:
    """Local statistics of one jump in an encoder image.

    ``m`` counts the consecutive down-steps immediately before the jump,
    ``l`` those immediately after (both >= 1 on encoder images);
    ``causing`` holds the positions of the d entries to the right of the
    jump that force its depth: for (3,1,2) the entries with values strictly
    between rho_{i+1} and rho_i, for (3,2,1) the entries smaller than
    rho_{i+1}.
    """

    jump: Jump
    m: int
    l: int
    pre_run: tuple[int, ...]
    post_run: tuple[int, ...]
    causing: tuple[int, ...]
    preceding_max: int
    maxima_before: tuple[MaximumBeforeJump, ...]
    threshold_index: Optional[int]


@dataclass(frozen=True)
class OccurrencePrediction:
    """Occurrence triples (as position tuples) forced by one jump.

    ``base`` is the d*l count from the preceding maximum, ``before_downs``
    the m*d*l count from the down-run before the jump ((3,1,2) only),
    ``maxima_sum`` the contribution of earlier maxima; ``total`` counts the
    distinct triples of the union.
    """

    base: int
    before_downs: int
    maxima_sum: int
    total: int
    triples: tuple[tuple[int, int, int], ...]

    def value_triples(self, rho: Sequence[int]) -> tuple[tuple[int, int, int], ...]:
        return tuple(
            tuple(rho[i - 1] for i in trip) for trip in self.triples
        )


@dataclass(frozen=True)
class JumpAnalysis:
    context: JumpContext
    prediction: OccurrencePrediction


def _run_lengths_around(path: str, jump_start: int, jump_end: int) -> tuple[int, int]:
    """(m, l): consecutive 'D' counts immediately before/after path[jump_start:jump_end]."""
    m = 0
    k = jump_start - 1
    while k >= 0 and path[k] == paths.DOWN:
        m += 1
        k -= 1
    l = 0
    k = jump_end
    while k < len(path) and path[k] == paths.DOWN:
        l += 1
        k += 1
    return m, l


def _jump_spans(path: str) -> list[tuple[int, int, int]]:
    """(string start, string end, down-steps before) of each maximal J-run."""
    spans = []
    downs = 0
    i = 0
    while i < len(path):
        if path[i] == paths.JUMP:
            j = i
            while j < len(path) and path[j] == paths.JUMP:
                j += 1
            spans.append((i, j, downs))
            i = j
        else:
            if path[i] == paths.DOWN:
                downs += 1
            i += 1
    return spans


def _nonpeak_ups_between(path: str, maxima: Sequence[int], start: int, end: int) -> int:
    """Up-steps strictly inside path[start:end] that are not the peak
    up-step of a left-to-right maximum (the up immediately preceding a
    maximum's down-step)."""
    down_idx = path[:start].count(paths.DOWN)
    mx = set(maxima)
    count = 0
    for k in range(start, end):
        if path[k] == paths.UP:
            is_peak_up = (
                k + 1 < len(path)
                and path[k + 1] == paths.DOWN
                and (down_idx + 1) in mx
            )
            if not is_peak_up:
                count += 1
        elif path[k] == paths.DOWN:
            down_idx += 1
    return count


def analyze_jumps(rho: Permutation, tau) -> tuple[JumpAnalysis, ...]:
    """Analyse each jump of ``psi_tau(rho)`` and list the occurrence triples
    it forces.

    For (3,1,2), a jump of depth d at position i followed by l down-steps
    yields d*l occurrences (preceding maximum, rho_{i+j}, causing entry),
    m*d*l occurrences with the m down-run entries before the jump in the
    first slot, and for each earlier maximum M one occurrence per
    (following down-step, causing entry below M) pair.

    For (3,2,1), the first jump yields, per maximum M_g left of it with
    height h_g and s_g intervening non-maximum down-steps,
    d * min(h_g - d - s_g, l) occurrences (M_g, rho_{i+j}, causing entry),
    starting from the first maximum where that quantity is positive; later
    jumps are reported with their d*l base triples only.

    Every emitted triple is a genuine occurrence; for hosts with exactly
    one or two occurrences in total the union over jumps is exhaustive
    (verified against brute force in the test suite).
    """
    tau = as_pattern(tau)
    key = tuple(tau)
    if key not in ((3, 1, 2), (3, 2, 1)):
        raise PatternError(f"jump analysis is defined for (3,1,2) and (3,2,1), got {tau!r}")
    n = len(rho)
    path = psi312(rho) if key == (3, 1, 2) else psi321(rho)
    maxima = left_to_right_maxima(rho)
    mx_set = set(maxima)
    heights = heights_312(rho) if key == (3, 1, 2) else heights_321(rho)
    analyses = []
    for jn, (start, end, pos) in enumerate(_jump_spans(path)):
        d = end - start
        m, l = _run_lengths_around(path, start, end)
        pre_run = tuple(range(pos - m + 1, pos + 1))
        post_run = tuple(range(pos + 1, pos + l + 1))
        pm = maxima[bisect.bisect_right(maxima, pos) - 1]
        if key == (3, 1, 2):
            lo, hi = rho[pos], rho[pos - 1]
            causing = tuple(k for k in range(pos + 1, n + 1) if lo < rho[k - 1] < hi)
            earlier = [i for i in maxima if i < pm]
            before: list[MaximumBeforeJump] = []
            for ig in earlier:
                peak_str_idx = _string_index_of_down(path, ig)
                s_g = _nonpeak_ups_between(path, maxima, peak_str_idx + 1, start)
                before.append(
                    MaximumBeforeJump(
                        position=ig, value=rho[ig - 1], height=heights[ig - 1], steps_between=s_g
                    )
                )
            threshold = next(
                (g + 1 for g, rec in enumerate(before) if rec.steps_between < m), None
            )
            base = {(pm, j, k) for j in post_run for k in causing}
            runs = {(g, j, k) for g in pre_run for j in post_run for k in causing}
            extra = {
                (rec.position, j, k)
                for rec in before
                for j in post_run
                for k in causing
                if rho[k - 1] < rec.value
            }
            triples = tuple(sorted(base | runs | extra))
            prediction = OccurrencePrediction(
                base=d * l,
                before_downs=m * d * l,
                maxima_sum=len(extra),
                total=len(triples),
                triples=triples,
            )
        else:
            causing = tuple(k for k in range(pos + 1, n + 1) if rho[k - 1] < rho[pos])
            mx_left = [i for i in maxima if i <= pos]
            before = []
            for ig in mx_left:
                s_g = sum(1 for k in range(ig + 1, pos + 1) if k not in mx_set)
                before.append(
                    MaximumBeforeJump(
                        position=ig, value=rho[ig - 1], height=heights[ig - 1], steps_between=s_g
                    )
                )
            base_triples = {(pm, j, k) for j in post_run for k in causing}
            if jn == 0:
                threshold = next(
                    (
                        g + 1
                        for g, rec in enumerate(before)
                        if rec.height - d - rec.steps_between > 0
                    ),
                    None,
                )
                chosen = set()
                if threshold is not None:
                    for rec in before[threshold - 1 :]:
                        reach = min(rec.height - d - rec.steps_between, l)
                        for j in post_run[: max(0, reach)]:
                            if rho[j - 1] >= rec.value:
                                continue
                            for k in causing:
                                chosen.add((rec.position, j, k))
                triples = tuple(sorted(chosen | base_triples))
                prediction = OccurrencePrediction(
                    base=d * l,
                    before_downs=0,
                    maxima_sum=len(chosen),
                    total=len(triples),
                    triples=triples,
                )
            else:
                threshold = None
                triples = tuple(sorted(base_triples))
                prediction = OccurrencePrediction(
                    base=d * l,
                    before_downs=0,
                    maxima_sum=0,
                    total=len(triples),
                    triples=triples,
                )
        context = JumpContext(
            jump=Jump(position=pos, depth=d),
            m=m,
            l=l,
            pre_run=pre_run,
            post_run=post_run,
            causing=causing,
            preceding_max=pm,
            maxima_before=tuple(before),
            threshold_index=threshold,
        )
        analyses.append(JumpAnalysis(context=context, prediction=prediction))
    return tuple(analyses)


def _string_index_of_down(path: str, down_index: int) -> int:
    seen = 0
    for si, ch in enumerate(path):
        if ch == paths.DOWN:
            seen += 1
            if seen == down_index:
                return si
    raise ValueError(f"path has fewer than {down_index} down-steps")


def predicted_occurrences(rho: Permutation, tau) -> tuple[tuple[int, int, int], ...]:
    """Union of the occurrence triples predicted for all jumps of psi_tau(rho)."""
    out = set()
    for analysis in analyze_jumps(rho, tau):
        out.update(analysis.prediction.triples)
    return tuple(sorted(out))


def check_jumpsum(rho: Permutation, tau) -> bool:
    """True iff the number of down-jump steps of psi_tau(rho) is at most the
    occurrence count of tau in rho, with zero jumps exactly for avoiders."""
    tau = as_pattern(tau)
    path = psi_tau(rho, tau)
    _, s = paths.path_counts(path)
    r = count_occurrences_fast(rho, tau)
    return s <= r and (s == 0) == (r == 0)


def is_single_occurrence_shape_312(path: str) -> bool:
    """The local path shape equivalent to "exactly one (3,1,2)-occurrence":
    a single jump with d = l = m = 1 whose preceding down-step is itself
    preceded by at least two up-steps (a second peak immediately before
    would force a second occurrence).  Verified exhaustively for n <= 7.
    """
    spans = _jump_spans(path)
    if len(spans) != 1 or not paths.is_psi_shaped(path):
        return False
    start, end, _pos = spans[0]
    if end - start != 1:
        return False
    m, l = _run_lengths_around(path, start, end)
    if m != 1 or l != 1:
        return False
    ups = 0
    k = start - 2  # step before the single pre-jump down-step
    while k >= 0 and path[k] == paths.UP:
        ups += 1
        k -= 1
    return ups >= 2
