import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coldpath.stats import (
    AllZeroDiffs,
    EmptySample,
    METHOD_EXACT,
    METHOD_NORMAL,
    cliffs_delta,
    holm_bonferroni,
    mann_whitney_u,
    wilcoxon_signed_rank,
)


# --- independent oracles -------------------------------------------------

def pair_count_u(xs, ys):
    u = 0.0
    for x in xs:
        for y in ys:
            if x > y:
                u += 1.0
            elif x == y:
                u += 0.5
    return u


def mwu_enumeration_p(a, b):
    """Full enumeration oracle: label every split of the pooled values and
    count splits at least as extreme (by |U - nm/2|) as the observed one."""
    pooled = list(a) + list(b)
    n, m = len(a), len(b)
    center = n * m / 2
    observed = abs(pair_count_u(a, b) - center)
    extreme = total = 0
    for idxs in combinations(range(n + m), n):
        chosen = set(idxs)
        xs = [pooled[i] for i in idxs]
        ys = [pooled[i] for i in range(n + m) if i not in chosen]
        if abs(pair_count_u(xs, ys) - center) >= observed - 1e-12:
            extreme += 1
        total += 1
    return extreme / total


def insertion_ranks(values):
    """Average ranks computed by counting, not sorting."""
    out = []
    for v in values:
        less = sum(1 for u in values if u < v)
        equal = sum(1 for u in values if u == v)
        out.append(less + (equal + 1) / 2)
    return out


def wilcoxon_enumeration_p(diffs):
    nz = [d for d in diffs if d != 0]
    ranks = insertion_ranks([abs(d) for d in nz])
    total = sum(ranks)
    w_plus = sum(r for d, r in zip(nz, ranks) if d > 0)
    observed = min(w_plus, total - w_plus)
    extreme = 0
    count = 0
    for signs in product((1, -1), repeat=len(nz)):
        wp = sum(r for s, r in zip(signs, ranks) if s > 0)
        if min(wp, total - wp) <= observed + 1e-12:
            extreme += 1
        count += 1
    return extreme / count


def cliffs_pairs(a, b):
    num = 0
    for x in a:
        for y in b:
            num += (x > y) - (x < y)
    return num / (len(a) * len(b))


# --- Mann-Whitney --------------------------------------------------------

def test_mwu_separated_samples():
    # Enumeration over all C(4,2) labelings gives p = 2/6.
    res = mann_whitney_u([1, 2], [3, 4])
    assert res.statistic == 0
    assert res.p_value == pytest.approx(1 / 3)
    assert res.method == METHOD_EXACT


def test_mwu_interleaved_symmetric():
    res = mann_whitney_u([1, 4], [2, 3])
    assert res.statistic == 2 == len([1, 4]) * len([2, 3]) / 2


def test_mwu_single_tied_pair():
    res = mann_whitney_u([5], [5])
    assert res.statistic == 0.5


def test_mwu_empty():
    with pytest.raises(EmptySample):
        mann_whitney_u([], [1])


def test_mwu_identity_u_sum():
    rng = random.Random(5)
    for _ in range(50):
        a = [rng.randint(0, 6) for _ in range(rng.randint(1, 8))]
        b = [rng.randint(0, 6) for _ in range(rng.randint(1, 8))]
        ua = mann_whitney_u(a, b).statistic
        ub = mann_whitney_u(b, a).statistic
        assert ua + ub == pytest.approx(len(a) * len(b))


def test_mwu_exact_matches_enumeration_seeded():
    rng = random.Random(17)
    for _ in range(60):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        a = [rng.randint(0, 4) for _ in range(n)]
        b = [rng.randint(0, 4) for _ in range(m)]
        res = mann_whitney_u(a, b)
        assert res.method == METHOD_EXACT
        assert res.statistic == pytest.approx(pair_count_u(a, b))
        assert res.p_value == pytest.approx(mwu_enumeration_p(a, b), abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    a=st.lists(st.integers(0, 5), min_size=1, max_size=6),
    b=st.lists(st.integers(0, 5), min_size=1, max_size=6),
)
def test_mwu_exact_matches_enumeration_property(a, b):
    res = mann_whitney_u(a, b)
    assert res.p_value == pytest.approx(mwu_enumeration_p(a, b), abs=1e-12)


def test_mwu_method_cutoff():
    a = list(range(11))
    b = list(range(100, 111))
    assert mann_whitney_u(a, b).method == METHOD_NORMAL  # 11*11 > 100
    assert mann_whitney_u(a[:10], b[:10]).method == METHOD_EXACT  # 100 <= 100


def test_mwu_normal_approx_against_scipy():
    scipy_stats = pytest.importorskip("scipy.stats")
    rng = random.Random(31)
    for _ in range(20):
        a = [rng.gauss(0, 1) for _ in range(15)]
        b = [rng.gauss(0.5, 1) for _ in range(12)]
        ours = mann_whitney_u(a, b)
        ref = scipy_stats.mannwhitneyu(a, b, alternative="two-sided",
                                       method="asymptotic", use_continuity=True)
        assert ours.method == METHOD_NORMAL
        assert ours.statistic == pytest.approx(ref.statistic)
        assert ours.p_value == pytest.approx(ref.pvalue, rel=1e-9)


# --- Wilcoxon ------------------------------------------------------------

def test_wilcoxon_all_positive():
    # Sign-pattern enumeration over 2^3 gives p = 2/8.
    res = wilcoxon_signed_rank([1, 2, 3])
    assert res.statistic == 0
    assert res.p_value == pytest.approx(0.25)
    assert res.method == METHOD_EXACT


def test_wilcoxon_hand_ranking():
    res = wilcoxon_signed_rank([-1, 2])
    assert res.statistic == 1


def test_wilcoxon_zeros_dropped_then_error():
    with pytest.raises(AllZeroDiffs):
        wilcoxon_signed_rank([0, 0, 0])
    with pytest.raises(EmptySample):
        wilcoxon_signed_rank([])


def test_wilcoxon_exact_matches_enumeration_seeded():
    rng = random.Random(23)
    for _ in range(60):
        n = rng.randint(1, 6)
        diffs = [rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(n)]
        res = wilcoxon_signed_rank(diffs)
        assert res.method == METHOD_EXACT
        assert res.p_value == pytest.approx(wilcoxon_enumeration_p(diffs), abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(diffs=st.lists(st.integers(-4, 4).filter(lambda d: d != 0), min_size=1, max_size=6))
def test_wilcoxon_exact_matches_enumeration_property(diffs):
    res = wilcoxon_signed_rank(diffs)
    assert res.p_value == pytest.approx(wilcoxon_enumeration_p(diffs), abs=1e-12)


def test_wilcoxon_normal_approx_against_scipy():
    scipy_stats = pytest.importorskip("scipy.stats")
    rng = random.Random(41)
    for _ in range(20):
        diffs = [rng.gauss(0.3, 1) for _ in range(25)]
        ours = wilcoxon_signed_rank(diffs)
        ref = scipy_stats.wilcoxon(diffs, correction=True, mode="approx")
        assert ours.method == METHOD_NORMAL
        assert ours.p_value == pytest.approx(ref.pvalue, rel=1e-9)


# --- Holm-Bonferroni -----------------------------------------------------

def test_holm_stepwise_example():
    # 0.01 <= 0.05/3 rejects; 0.03 > 0.05/2 halts the walk.
    assert holm_bonferroni([0.01, 0.03, 0.04]) == [True, False, False]


def test_holm_no_rejections():
    assert holm_bonferroni([0.2, 0.9, 0.6]) == [False, False, False]


def test_holm_single_p():
    assert holm_bonferroni([0.04]) == [True]


def test_holm_validates_range():
    with pytest.raises(ValueError):
        holm_bonferroni([0.5, 1.5])


def test_holm_empty():
    assert holm_bonferroni([]) == []


@settings(max_examples=200, deadline=None)
@given(ps=st.lists(st.floats(0, 1), min_size=1, max_size=10), alpha=st.sampled_from([0.01, 0.05, 0.1]))
def test_holm_dominates_bonferroni(ps, alpha):
    holm = holm_bonferroni(ps, alpha=alpha)
    bonferroni = [p <= alpha / len(ps) for p in ps]
    for plain, stepped in zip(bonferroni, holm):
        if plain:
            assert stepped


# --- Cliff's delta -------------------------------------------------------

def test_cliffs_complete_dominance():
    eff = cliffs_delta([1, 2, 3], [4, 5, 6], seed=1)
    assert eff.delta == -1.0
    assert eff.ci_low <= eff.delta <= eff.ci_high


def test_cliffs_identical_samples():
    eff = cliffs_delta([2, 2, 3], [2, 2, 3], seed=1)
    assert eff.delta == 0.0


def test_cliffs_cancelling_pairs():
    # (1 vs 2) counts -1, (3 vs 2) counts +1.
    assert cliffs_delta([1, 3], [2], seed=1).delta == 0.0


def test_cliffs_antisymmetry():
    rng = random.Random(3)
    for _ in range(30):
        a = [rng.randint(0, 9) for _ in range(rng.randint(1, 10))]
        b = [rng.randint(0, 9) for _ in range(rng.randint(1, 10))]
        assert cliffs_delta(a, b, seed=7).delta == pytest.approx(
            -cliffs_delta(b, a, seed=7).delta
        )


def test_cliffs_matches_pair_enumeration():
    rng = random.Random(13)
    for _ in range(40):
        a = [rng.randint(0, 50) for _ in range(rng.randint(1, 20))]
        b = [rng.randint(0, 50) for _ in range(rng.randint(1, 20))]
        eff = cliffs_delta(a, b, bootstrap_reps=10, seed=0)
        assert eff.delta == pytest.approx(cliffs_pairs(a, b), abs=1e-12)


def test_cliffs_deterministic_with_seed():
    a = [1, 5, 3, 7, 7]
    b = [2, 2, 6, 4]
    first = cliffs_delta(a, b, seed=42)
    second = cliffs_delta(a, b, seed=42)
    assert first == second
    third = cliffs_delta(a, b, seed=43)
    assert third.bootstrap_reps == first.bootstrap_reps


def test_cliffs_empty():
    with pytest.raises(EmptySample):
        cliffs_delta([], [1])
