import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coldpath.scoring import (
    EmptyInput,
    ModuleScore,
    combined_score,
    rank_modules,
    score_cct,
    u_score,
)

MS = 1_000_000


def test_u_score_examples():
    assert u_score(800 * MS, 0) == 800 * MS
    assert u_score(800 * MS, 4) == 200 * MS
    assert u_score(0, 100) == 0


def test_u_score_rejects_negatives():
    with pytest.raises(ValueError):
        u_score(-1, 0)
    with pytest.raises(ValueError):
        u_score(1, -1)


def test_u_score_non_increasing_in_usage():
    for init in range(0, 2000, 97):
        values = [u_score(init, usage) for usage in range(0, 30)]
        assert values == sorted(values, reverse=True)


def test_combined_hand_example():
    # m1 = (100 ms, 10 uses), m2 = (900 ms, 0 uses):
    #   m1 -> 0.8 * (100/900) + 0.2 * (1 - 10/10) = 0.08888...
    #   m2 -> 0.8 * 1 + 0.2 * 1 = 1.0
    values = combined_score([(100 * MS, 10), (900 * MS, 0)])
    assert values[0] == pytest.approx(0.8 * (100 / 900), abs=1e-12)
    assert values[1] == pytest.approx(1.0, abs=1e-12)


def test_combined_single_module_unused():
    assert combined_score([(50 * MS, 0)]) == [1.0]


def test_combined_symmetry():
    values = combined_score([(30 * MS, 7), (30 * MS, 7)])
    assert values[0] == values[1]


def test_combined_degenerate_maxima():
    # All-zero init: latency term drops out; all-zero usage: rarity is 1.
    assert combined_score([(0, 0), (0, 5)]) == [
        pytest.approx(0.2 * 1.0),
        pytest.approx(0.2 * 0.0),
    ]
    assert combined_score([(10, 0), (40, 0)]) == [
        pytest.approx(0.8 * 0.25 + 0.2),
        pytest.approx(1.0),
    ]


def test_combined_validation():
    with pytest.raises(EmptyInput):
        combined_score([])
    with pytest.raises(ValueError):
        combined_score([(1, 1)], w_latency=0.9, w_usage=0.2)
    with pytest.raises(ValueError):
        combined_score([(1, 1)], w_latency=-0.1, w_usage=1.1)


def _scores(pairs, names=None):
    names = names or [f"mod{i}" for i in range(len(pairs))]
    combined = combined_score(pairs)
    return rank_modules(
        ModuleScore(
            module=name,
            init_exclusive_ns=init,
            init_inclusive_ns=init,
            usage_count=usage,
            u_score=u_score(init, usage),
            combined=comb,
        )
        for name, (init, usage), comb in zip(names, pairs, combined)
    )


def test_rank_descending():
    ranked = _scores([(90 * MS, 0), (10 * MS, 5)], names=["a", "b"])
    assert [s.module for s in ranked] == ["a", "b"]
    assert [s.rank for s in ranked] == [1, 2]


def test_rank_tie_lexicographic():
    combined = combined_score([(30 * MS, 2), (30 * MS, 2)])
    scores = [
        ModuleScore("b", 30 * MS, 30 * MS, 2, u_score(30 * MS, 2), combined[0]),
        ModuleScore("a", 30 * MS, 30 * MS, 2, u_score(30 * MS, 2), combined[1]),
    ]
    assert [s.module for s in rank_modules(scores)] == ["a", "b"]


def test_rank_tie_higher_exclusive_first():
    scores = [
        ModuleScore("low", 5 * MS, 5 * MS, 0, 5 * MS, 0.5),
        ModuleScore("high", 9 * MS, 9 * MS, 0, 9 * MS, 0.5),
    ]
    assert [s.module for s in rank_modules(scores)] == ["high", "low"]


def test_rank_hand_example_order():
    ranked = _scores([(100 * MS, 10), (900 * MS, 0)], names=["m1", "m2"])
    assert [s.module for s in ranked] == ["m2", "m1"]


@settings(max_examples=80, deadline=None)
@given(
    data=st.lists(
        st.tuples(st.integers(0, 10**9), st.integers(0, 50)), min_size=1, max_size=12
    ),
    scale=st.sampled_from([2, 3, 7, 1000, 2**20]),
)
def test_rank_scale_invariance(data, scale):
    base = _scores(data)
    scaled = _scores([(init * scale, usage) for init, usage in data])
    assert [s.module for s in base] == [s.module for s in scaled]


@settings(max_examples=80, deadline=None)
@given(
    data=st.lists(
        st.tuples(st.integers(0, 10**6), st.integers(0, 20)), min_size=2, max_size=10
    ),
    which=st.integers(0, 100),
    bump=st.integers(1, 10**6),
)
def test_rank_monotone_in_own_init(data, which, bump):
    which %= len(data)
    before = _scores(data)
    pos_before = next(i for i, s in enumerate(before) if s.module == f"mod{which}")
    bumped = list(data)
    bumped[which] = (bumped[which][0] + bump, bumped[which][1])
    after = _scores(bumped)
    pos_after = next(i for i, s in enumerate(after) if s.module == f"mod{which}")
    assert pos_after <= pos_before


def test_score_cct_end_to_end(tmp_path):
    from coldpath.cct import attribute_usage, build_cct, merge
    from conftest import begin_rec, end_rec, meta_rec, sample_rec, trace_from

    cold = trace_from(tmp_path, [
        meta_rec(),
        begin_rec("app", 0, file="/app.py"),
        begin_rec("heavy", 1 * MS, depth=1, parent="app", file="/heavy.py"),
        end_rec("heavy", 41 * MS, 40 * MS),
        end_rec("app", 50 * MS, 50 * MS),
    ])
    warm = trace_from(tmp_path, [
        meta_rec(phase="warm"),
        sample_rec(60 * MS, [("app", "handler", "/app.py", 9)]),
    ], name="warm.jsonl")
    annotated = merge(build_cct(cold), attribute_usage(warm))
    ranked = score_cct(annotated)
    assert [s.module for s in ranked] == ["heavy", "app"]
    heavy = ranked[0]
    assert heavy.init_exclusive_ns == 40 * MS
    assert heavy.init_inclusive_ns == 40 * MS
    assert heavy.usage_count == 0
    assert heavy.combined == pytest.approx(1.0)
    assert heavy.u_score == 40 * MS
    app = ranked[1]
    assert app.init_exclusive_ns == 10 * MS
    assert app.init_inclusive_ns == 50 * MS
    assert app.usage_count == 1


def test_score_cct_inclusive_basis(tmp_path):
    from coldpath.cct import UsageTable, build_cct, merge
    from conftest import begin_rec, end_rec, meta_rec, trace_from

    cold = trace_from(tmp_path, [
        meta_rec(),
        begin_rec("outer", 0),
        begin_rec("inner", 10, depth=1, parent="outer"),
        end_rec("inner", 90, 80),
        end_rec("outer", 100, 100),
    ])
    annotated = merge(build_cct(cold), UsageTable(counts={}, total_samples=0))
    ranked = score_cct(annotated, basis="inclusive")
    by_name = {s.module: s for s in ranked}
    assert by_name["outer"].u_score == 100
    assert by_name["outer"].combined == pytest.approx(1.0)
    with pytest.raises(ValueError):
        score_cct(annotated, basis="bogus")


def test_score_cct_empty():
    from coldpath.cct import AnnotatedCct, CctNode

    root = CctNode("<root>", None, 0, 0, ())
    annotated = AnnotatedCct(root=root, usage={}, untraced=(), total_init_ns=0)
    assert score_cct(annotated) == []
