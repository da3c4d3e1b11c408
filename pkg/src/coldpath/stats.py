"""Nonparametric statistics for the comparison reports.

Mann-Whitney U and Wilcoxon signed-rank use exact enumeration for the
small sample sizes a benchmark corpus produces (n*m <= 100, respectively
n <= 12 nonzero differences) and a tie-corrected normal approximation
beyond that. Cliff's delta ships a seeded percentile-bootstrap confidence
interval so reports are reproducible bit for bit.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

METHOD_EXACT = "exact"
METHOD_NORMAL = "normal_approx"

# Exact-method cutoffs; enumeration stays cheap below these.
MANN_WHITNEY_EXACT_LIMIT = 100  # n*m
WILCOXON_EXACT_LIMIT = 12  # nonzero differences


class EmptySample(ValueError):
    pass


class AllZeroDiffs(ValueError):
    pass


@dataclass(frozen=True)
class TestResult:
    statistic: float
    p_value: float
    method: str
    n: int
    m: int


@dataclass(frozen=True)
class EffectSize:
    delta: float
    ci_low: float
    ci_high: float
    bootstrap_reps: int
    seed: int


def _midranks(values: Sequence[float]) -> list[float]:
    """Fractional ranks (ties share the mean of their rank block)."""
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        mean_rank = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = mean_rank
        i = j + 1
    return ranks


def _normal_sf(x: float) -> float:
    """Survival function of the standard normal distribution."""
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def _tie_term(pooled: Sequence[float]) -> float:
    """Sum of t^3 - t over tie groups of the pooled sample."""
    groups: dict[float, int] = {}
    for v in pooled:
        groups[v] = groups.get(v, 0) + 1
    return float(sum(t**3 - t for t in groups.values()))


def mann_whitney_u(a: Sequence[float], b: Sequence[float]) -> TestResult:
    """Two-sided Mann-Whitney U test; the statistic is U for sample ``a``
    (greater-than pairs plus half the ties)."""
    if not a or not b:
        raise EmptySample("both samples must be non-empty")
    n, m = len(a), len(b)
    pooled = list(a) + list(b)
    ranks = _midranks(pooled)
    rank_sum_a = sum(ranks[:n])
    u_a = rank_sum_a - n * (n + 1) / 2

    if n * m <= MANN_WHITNEY_EXACT_LIMIT:
        p = _mwu_exact_p(pooled, n, m, u_a)
        return TestResult(statistic=u_a, p_value=p, method=METHOD_EXACT, n=n, m=m)

    mean = n * m / 2
    tie = _tie_term(pooled)
    total = n + m
    var = n * m / 12 * ((total + 1) - tie / (total * (total - 1)))
    if var == 0:
        return TestResult(statistic=u_a, p_value=1.0, method=METHOD_NORMAL, n=n, m=m)
    # Continuity correction of 0.5 toward the mean.
    z = (abs(u_a - mean) - 0.5) / math.sqrt(var)
    p = min(1.0, 2 * _normal_sf(max(z, 0.0)))
    return TestResult(statistic=u_a, p_value=p, method=METHOD_NORMAL, n=n, m=m)


def _mwu_exact_p(pooled: Sequence[float], n: int, m: int, u_obs: float) -> float:
    """Exact two-sided p by enumerating every labeling of the pooled values
    into groups of sizes n and m: the fraction of labelings whose U is at
    least as far from n*m/2 as the observed one."""
    ranks = _midranks(pooled)
    center = n * m / 2
    threshold = abs(u_obs - center) - 1e-12
    extreme = 0
    count = 0
    for chosen in combinations(range(n + m), n):
        u = sum(ranks[i] for i in chosen) - n * (n + 1) / 2
        if abs(u - center) >= threshold:
            extreme += 1
        count += 1
    return extreme / count


def wilcoxon_signed_rank(paired_diffs: Sequence[float]) -> TestResult:
    """Two-sided Wilcoxon signed-rank test on paired differences.

    Zero differences are dropped; the statistic is W = min(W+, W-) over
    signed fractional ranks of |d|.
    """
    diffs = [d for d in paired_diffs if d != 0]
    if not paired_diffs:
        raise EmptySample("need at least one difference")
    if not diffs:
        raise AllZeroDiffs("all differences are zero")
    n = len(diffs)
    ranks = _midranks([abs(d) for d in diffs])
    w_plus = sum(r for d, r in zip(diffs, ranks) if d > 0)
    total = n * (n + 1) / 2
    w = min(w_plus, total - w_plus)

    if n <= WILCOXON_EXACT_LIMIT:
        extreme = 0
        for mask in range(1 << n):
            wp = sum(ranks[i] for i in range(n) if mask >> i & 1)
            if min(wp, total - wp) <= w + 1e-12:
                extreme += 1
        p = extreme / (1 << n)
        return TestResult(statistic=w, p_value=p, method=METHOD_EXACT, n=n, m=0)

    mean = total / 2
    tie = _tie_term([abs(d) for d in diffs])
    var = n * (n + 1) * (2 * n + 1) / 24 - tie / 48
    if var <= 0:
        return TestResult(statistic=w, p_value=1.0, method=METHOD_NORMAL, n=n, m=0)
    z = (abs(w - mean) - 0.5) / math.sqrt(var)
    p = min(1.0, 2 * _normal_sf(max(z, 0.0)))
    return TestResult(statistic=w, p_value=p, method=METHOD_NORMAL, n=n, m=0)


def holm_bonferroni(p_values: Sequence[float], alpha: float = 0.05) -> list[bool]:
    """Step-down Holm correction; returns reject flags in input order."""
    for p in p_values:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p-value {p} outside [0, 1]")
    m = len(p_values)
    order = sorted(range(m), key=lambda i: p_values[i])
    flags = [False] * m
    for step, idx in enumerate(order):
        if p_values[idx] <= alpha / (m - step):
            flags[idx] = True
        else:
            break
    return flags


def cliffs_delta(
    a: Sequence[float],
    b: Sequence[float],
    bootstrap_reps: int = 2000,
    seed: int = 0,
) -> EffectSize:
    """Cliff's delta with a seeded 95% percentile-bootstrap interval.

    delta = (#. x>y - #. x<y) / (|a| * |b|) over pairs of a x b. The
    interval is widened to include the point estimate if resampling is
    degenerate, keeping the reported orientation consistent.
    """
    if not a or not b:
        raise EmptySample("both samples must be non-empty")
    delta = _delta_sorted(a, sorted(b))
    rng = random.Random(seed)
    n, m = len(a), len(b)
    reps = []
    for _ in range(bootstrap_reps):
        ra = [a[rng.randrange(n)] for _ in range(n)]
        rb = sorted(b[rng.randrange(m)] for _ in range(m))
        reps.append(_delta_sorted(ra, rb))
    reps.sort()
    ci_low = min(_percentile(reps, 2.5), delta)
    ci_high = max(_percentile(reps, 97.5), delta)
    return EffectSize(
        delta=delta,
        ci_low=ci_low,
        ci_high=ci_high,
        bootstrap_reps=bootstrap_reps,
        seed=seed,
    )


def _delta_sorted(a: Sequence[float], b_sorted: list[float]) -> float:
    """Dominance statistic computed by binary search against sorted b."""
    gt = 0
    lt = 0
    for x in a:
        gt += bisect_left(b_sorted, x)
        lt += len(b_sorted) - bisect_right(b_sorted, x)
    return (gt - lt) / (len(a) * len(b_sorted))


def _percentile(sorted_xs: list[float], q: float) -> float:
    """Linear-interpolation percentile of an already sorted list."""
    if not sorted_xs:
        raise EmptySample("empty sample")
    if len(sorted_xs) == 1:
        return sorted_xs[0]
    pos = (len(sorted_xs) - 1) * q / 100.0
    lo = math.floor(pos)
    hi = math.ceil(pos)
    if lo == hi:
        return sorted_xs[lo]
    frac = pos - lo
    return sorted_xs[lo] * (1 - frac) + sorted_xs[hi] * frac
