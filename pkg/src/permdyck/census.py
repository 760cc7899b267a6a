"""Exhaustive ground truth over S_n: occurrence-count distributions,
pattern-base catalogs, and full bijection audits.

Distributions are computed by sweeping all n! permutations with the
quadratic counting kernel (compiled when available).  The sweep is
embarrassingly parallel: S_n is partitioned by the choices of the first
few positions, each shard yields an independent histogram, and the merge
is component-wise addition, so results are identical for any worker count.

Computed tables can be cached as human-readable JSON files under
``<cache>/<tau>/<n>.json`` with a content checksum; a file whose checksum
does not match its payload is refused.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass
from multiprocessing import get_context
from pathlib import Path
from typing import Iterator, Optional, Sequence

from permdyck import bijections, kernels, paths, series
from permdyck.perms import (
    PATTERN_312,
    PATTERN_321,
    Permutation,
    as_pattern,
    all_permutations,
    count_occurrences_fast,
    find_occurrences,
    heights_312,
    heights_321,
    left_to_right_maxima,
    tau_base,
)

__all__ = [
    "DEFAULT_LIMIT",
    "ResourceGuardError",
    "CacheError",
    "DistributionTable",
    "brute_distribution",
    "oracle_distribution",
    "enumerate_class",
    "TauBaseCatalog",
    "enumerate_tau_bases",
    "CheckResult",
    "AuditReport",
    "audit_bijections",
    "VerificationRow",
    "VerificationReport",
    "verify_formulas",
    "verify_conjectures",
]

DEFAULT_LIMIT = 10

# bump when the kernel/sharding semantics change; stale cache entries are recomputed
CODE_VERSION = "1"

ENV_CACHE_DIR = "PERMDYCK_CACHE"


class ResourceGuardError(RuntimeError):
    """Raised when an exhaustive sweep would exceed the configured size limit."""


class CacheError(RuntimeError):
    """Raised when a cache file fails its checksum."""


def _pattern_key(tau) -> str:
    t = tuple(as_pattern(tau))
    if t == tuple(PATTERN_312):
        return "312"
    if t == tuple(PATTERN_321):
        return "321"
    raise ValueError(f"distributions are tabulated for (3,1,2) and (3,2,1); got {t!r}")


@dataclass(frozen=True)
class DistributionTable:
    """Histogram of occurrence counts over all of S_n for one pattern."""

    n: int
    pattern: str  # "312" or "321"
    counts: tuple[tuple[int, int], ...]  # sorted (r, count), zero entries omitted

    def count(self, r: int) -> int:
        for rr, c in self.counts:
            if rr == r:
                return c
        return 0

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)


def _guard(n: int, limit: int) -> None:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > limit:
        raise ResourceGuardError(
            f"n={n} exceeds the sweep limit {limit} (about {math.factorial(n):,} "
            f"permutations); raise the limit explicitly to proceed"
        )


def _hist_to_counts(hist: Sequence[int]) -> tuple[tuple[int, int], ...]:
    return tuple((r, c) for r, c in enumerate(hist) if c)


def _shard_prefixes(n: int, workers: int) -> list[tuple[int, ...]]:
    """Partition S_n by the first ceil(log2(workers)) positions' choices."""
    if workers <= 1 or n <= 1:
        return [()]
    q = min(max(1, math.ceil(math.log2(workers))), n - 1)
    import itertools

    return list(itertools.permutations(range(1, n + 1), q))


def _shard_histograms(args: tuple[int, tuple[int, ...]]) -> tuple[list[int], list[int]]:
    n, prefix = args
    return kernels.histogram_pair(n, prefix)


def _sweep(n: int, workers: int) -> tuple[list[int], list[int]]:
    prefixes = _shard_prefixes(n, workers)
    if len(prefixes) == 1:
        return kernels.histogram_pair(n, prefixes[0])
    size = n * (n - 1) * (n - 2) // 6 + 1 if n >= 3 else 1
    h312 = [0] * size
    h321 = [0] * size
    ctx = get_context()
    with ctx.Pool(processes=workers) as pool:
        for part312, part321 in pool.imap_unordered(
            _shard_histograms, [(n, p) for p in prefixes], chunksize=1
        ):
            for i, v in enumerate(part312):
                h312[i] += v
            for i, v in enumerate(part321):
                h321[i] += v
    return h312, h321


_memo: dict[int, tuple[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]]] = {}


def _cache_payload(n: int, key: str, counts: tuple[tuple[int, int], ...]) -> dict:
    return {"n": n, "tau": key, "counts": {str(r): str(c) for r, c in counts}}


def _checksum(payload: dict) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _cache_path(cache_dir: str | Path, key: str, n: int) -> Path:
    return Path(cache_dir) / key / f"{n}.json"


def _cache_load(cache_dir: str | Path, key: str, n: int) -> Optional[tuple[tuple[int, int], ...]]:
    path = _cache_path(cache_dir, key, n)
    if not path.is_file():
        return None
    data = json.loads(path.read_text())
    if data.get("version") != CODE_VERSION:
        return None
    payload = {"n": data.get("n"), "tau": data.get("tau"), "counts": data.get("counts")}
    if data.get("checksum") != _checksum(payload):
        raise CacheError(f"checksum mismatch in {path}")
    if data.get("n") != n or data.get("tau") != key:
        return None
    return tuple(sorted((int(r), int(c)) for r, c in data["counts"].items()))


def _cache_store(cache_dir: str | Path, key: str, n: int, counts: tuple[tuple[int, int], ...]) -> None:
    path = _cache_path(cache_dir, key, n)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = _cache_payload(n, key, counts)
    record = dict(payload)
    record["checksum"] = _checksum(payload)
    record["version"] = CODE_VERSION
    path.write_text(json.dumps(record, indent=1, sort_keys=True) + "\n")


def brute_distribution(
    n: int,
    tau,
    *,
    workers: int = 1,
    cache_dir: Optional[str | Path] = None,
    limit: int = DEFAULT_LIMIT,
) -> DistributionTable:
    """Exact histogram {r: #S_n(tau, r)} over all n! permutations.

    Both patterns are tabulated in one sweep and memoised, so asking for the
    second pattern at the same n is free.  Deterministic for any ``workers``.
    """
    key = _pattern_key(tau)
    _guard(n, limit)
    if cache_dir is None:
        cache_dir = os.environ.get(ENV_CACHE_DIR) or None

    if n in _memo:
        c312, c321 = _memo[n]
        return DistributionTable(n, key, c312 if key == "312" else c321)

    if cache_dir is not None:
        cached = _cache_load(cache_dir, key, n)
        if cached is not None:
            return DistributionTable(n, key, cached)

    h312, h321 = _sweep(n, workers)
    c312 = _hist_to_counts(h312)
    c321 = _hist_to_counts(h321)
    _memo[n] = (c312, c321)
    if cache_dir is not None:
        _cache_store(cache_dir, "312", n, c312)
        _cache_store(cache_dir, "321", n, c321)
    return DistributionTable(n, key, c312 if key == "312" else c321)


def oracle_distribution(n: int, tau) -> dict[int, int]:
    """Distribution computed entirely with the brute-force occurrence finder
    (any pattern of length >= 2).  Slow; this is the independent oracle used
    to validate the kernel path."""
    out: dict[int, int] = {}
    for rho in all_permutations(n):
        r = find_occurrences(rho, tau).count
        out[r] = out.get(r, 0) + 1
    return out


def enumerate_class(
    n: int, tau, r: int, *, limit: int = DEFAULT_LIMIT
) -> Iterator[Permutation]:
    """All permutations in S_n with exactly r occurrences of tau, in
    lexicographic order."""
    _guard(n, limit)
    tau = as_pattern(tau)
    for rho in all_permutations(n):
        if count_occurrences_fast(rho, tau) == r:
            yield rho


@dataclass(frozen=True)
class TauBaseCatalog:
    """All pattern-bases with exactly r occurrences: the permutations that
    equal their own base.  Their lengths are at most 3r."""

    pattern: str
    r: int
    bases: tuple[Permutation, ...]


def enumerate_tau_bases(tau, r: int) -> TauBaseCatalog:
    """Search S_k for 3 <= k <= 3r (every entry of a base participates in an
    occurrence, so bases cannot be longer than 3r).

    >>> [tuple(b) for b in enumerate_tau_bases("312", 1).bases]
    [(3, 1, 2)]
    """
    key = _pattern_key(tau)
    tau = as_pattern(tau)
    if r < 0 or r > 2:
        raise ValueError("base catalogs are tabulated for r in {0, 1, 2}")
    if r == 0:
        return TauBaseCatalog(key, 0, (Permutation(),))
    found = []
    for k in range(3, 3 * r + 1):
        for rho in all_permutations(k):
            if count_occurrences_fast(rho, tau) != r:
                continue
            if tau_base(rho, tau) == rho:
                found.append(rho)
    return TauBaseCatalog(key, r, tuple(found))


# ---------------------------------------------------------------------------
# audits


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    counterexample: Optional[str] = None

    def __str__(self) -> str:
        if self.passed:
            return f"{self.name}: ok"
        return f"{self.name}: FAIL ({self.counterexample})"


@dataclass(frozen=True)
class AuditReport:
    n: int
    pattern: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def audit_bijections(n: int, tau, *, limit: int = DEFAULT_LIMIT) -> AuditReport:
    """Sweep all of S_n and check every structural claim about the encoder
    for ``tau``: injectivity, validity and the jump sandwich condition,
    maxima mapping to peaks, the jump-count bound, jump-freeness exactly on
    avoiders, the avoider image being all of D_n, decoder round-trips, and
    the predicted occurrence triples being genuine (with exact totals for
    hosts having one or two occurrences).
    """
    key = _pattern_key(tau)
    _guard(n, limit)
    tau = as_pattern(tau)
    encode = bijections.psi312 if key == "312" else bijections.psi321
    heights_fn = heights_312 if key == "312" else heights_321

    failures: dict[str, str] = {}

    def fail(name: str, detail: str) -> None:
        failures.setdefault(name, detail)

    images: dict[str, Permutation] = {}
    avoider_images: set[str] = set()
    n_avoiders = 0

    for rho in all_permutations(n):
        path = encode(rho)
        prev = images.get(path)
        if prev is not None:
            fail("injective", f"{prev} and {rho} share image {path}")
        images[path] = rho

        check = paths.validate(path)
        if not check.ok or path.count(paths.DOWN) != n:
            fail("valid-image", f"{rho} -> {path}")
        if not paths.is_psi_shaped(path):
            fail("jump-sandwich", f"{rho} -> {path}")

        if tuple(paths.down_step_heights(path)) != tuple(heights_fn(rho)):
            fail("down-step-heights", f"{rho} -> {path}")

        steps = paths.down_steps(path)
        peaks = {d.index for d in steps if d.peak == d.index}
        if not set(left_to_right_maxima(rho)) <= peaks:
            fail("maxima-are-peaks", f"{rho} -> {path}")

        # at least h down-steps right of a height-h down-step; at least d
        # up-steps right of a depth-d jump
        for d in steps:
            if n - d.index < d.height:
                fail("descents-available", f"{rho} -> {path}")
                break
        for jump, span in zip(paths.jumps(path), bijections._jump_spans(path)):
            ups_right = path[span[1] :].count(paths.UP)
            if ups_right < jump.depth:
                fail("ups-after-jump", f"{rho} -> {path}")

        r = count_occurrences_fast(rho, tau)
        s = path.count(paths.JUMP)
        if not (s <= r and (s == 0) == (r == 0)):
            fail("jump-count-bound", f"{rho}: {s} jumps, {r} occurrences")

        if r == 0:
            n_avoiders += 1
            avoider_images.add(path)
            if path != bijections.psi_avoiding(rho):
                fail("avoider-staircase-agreement", f"{rho}")
            decoded = (
                bijections.decode_312_avoiding(path)
                if key == "312"
                else bijections.decode_321_avoiding(path)
            )
            if decoded != rho:
                fail("decode-roundtrip", f"{rho} -> {path} -> {decoded}")

        if key == "312":
            if bijections.decode_psi312(path) != rho:
                fail("decode-psi312-roundtrip", f"{rho} -> {path}")
            single = bijections.is_single_occurrence_shape_312(path)
            if single != (r == 1):
                fail("single-occurrence-shape", f"{rho} -> {path}, r={r}")

        if r == 1 and tau_base(rho, tau) != tau:
            fail("single-occurrence-base", f"{rho}")

        jump_list = paths.jumps(path)
        if jump_list:
            predicted = bijections.predicted_occurrences(rho, tau)
            if len(jump_list) == 1 or r in (1, 2):
                truth = set(find_occurrences(rho, tau).positions)
                if not set(predicted) <= truth:
                    fail("predicted-subset", f"{rho}: {sorted(set(predicted) - truth)}")
                if r in (1, 2) and len(predicted) != r:
                    fail("predicted-total", f"{rho}: predicted {len(predicted)}, r={r}")

    cn = series.catalan_number(n)
    if n_avoiders != cn or len(avoider_images) != cn:
        fail("avoider-count", f"{n_avoiders} avoiders, {len(avoider_images)} images, C_n={cn}")
    dyck = set(paths.enumerate_paths(n, 0))
    if avoider_images != dyck:
        fail("avoider-image-is-all-dyck", f"missing {sorted(dyck - avoider_images)[:3]}")

    # decoding every Dyck path yields an avoider that encodes back to it
    decode = bijections.decode_312_avoiding if key == "312" else bijections.decode_321_avoiding
    for path in dyck:
        rho = decode(path)
        if count_occurrences_fast(rho, tau) != 0 or encode(rho) != path:
            fail("decode-covers-dyck", f"{path} -> {rho}")
            break

    names = [
        "injective",
        "valid-image",
        "jump-sandwich",
        "down-step-heights",
        "maxima-are-peaks",
        "descents-available",
        "ups-after-jump",
        "jump-count-bound",
        "avoider-staircase-agreement",
        "decode-roundtrip",
        "decode-covers-dyck",
        "avoider-count",
        "avoider-image-is-all-dyck",
        "single-occurrence-base",
        "predicted-subset",
        "predicted-total",
    ]
    if key == "312":
        names[13:13] = ["decode-psi312-roundtrip", "single-occurrence-shape"]
    checks = tuple(
        CheckResult(name, name not in failures, failures.get(name)) for name in names
    )
    return AuditReport(n=n, pattern=key, checks=checks)


# ---------------------------------------------------------------------------
# formula and conjecture verification


@dataclass(frozen=True)
class VerificationRow:
    pattern: str
    r: int
    n: int
    brute: int
    predicted: int

    @property
    def passed(self) -> bool:
        return self.brute == self.predicted


@dataclass(frozen=True)
class VerificationReport:
    kind: str
    rows: tuple[VerificationRow, ...]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def first_failure(self) -> Optional[VerificationRow]:
        for row in self.rows:
            if not row.passed:
                return row
        return None


def verify_formulas(
    n_max: int,
    *,
    workers: int = 1,
    cache_dir: Optional[str | Path] = None,
    limit: int = DEFAULT_LIMIT,
) -> VerificationReport:
    """Brute-force counts against the proven closed-form counts, r = 0, 1, 2,
    both patterns, for every n <= n_max."""
    rows = []
    for n in range(n_max + 1):
        for key in ("312", "321"):
            table = brute_distribution(n, key, workers=workers, cache_dir=cache_dir, limit=limit)
            for r in (0, 1, 2):
                rows.append(
                    VerificationRow(
                        pattern=key,
                        r=r,
                        n=n,
                        brute=table.count(r),
                        predicted=series.count_closed_form(key, r, n),
                    )
                )
    return VerificationReport(kind="formulas", rows=tuple(rows))


def verify_conjectures(
    n_max: int,
    *,
    workers: int = 1,
    cache_dir: Optional[str | Path] = None,
    limit: int = DEFAULT_LIMIT,
) -> VerificationReport:
    """Brute-force counts against the conjectured generating functions for
    three and four occurrences of (3,2,1), for every n <= n_max."""
    rows = []
    for r in (3, 4):
        g = series.gf("321", r, 2 * n_max)
        for n in range(n_max + 1):
            table = brute_distribution(n, "321", workers=workers, cache_dir=cache_dir, limit=limit)
            rows.append(
                VerificationRow(
                    pattern="321",
                    r=r,
                    n=n,
                    brute=table.count(r),
                    predicted=int(g.x_coeff(n)),
                )
            )
    return VerificationReport(kind="conjectures", rows=tuple(rows))
