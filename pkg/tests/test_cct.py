import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coldpath.cct import (
    InvalidPhase,
    ROOT_NAME,
    UnmatchedImports,
    attribute_usage,
    build_cct,
    iter_nodes,
    merge,
)

from conftest import (
    begin_rec,
    cct_as_dict,
    end_rec,
    meta_rec,
    oracle_tree,
    random_cold_records,
    sample_rec,
    trace_from,
    write_trace,
)
from coldpath.trace import parse_trace


def nested_fixture(tmp_path):
    # A begins t=0, B begins t=10 inside A, B ends t=40, A ends t=100.
    return trace_from(tmp_path, [
        meta_rec(ts=0),
        begin_rec("A", 0, depth=0, file="/x/a.py"),
        begin_rec("B", 10, depth=1, parent="A", file="/x/b.py"),
        end_rec("B", 40, 30),
        end_rec("A", 100, 100),
    ])


def test_nested_pair_inclusive_exclusive(tmp_path):
    root = build_cct(nested_fixture(tmp_path))
    assert root.module == ROOT_NAME
    assert root.inclusive_ns == 100
    (a,) = root.children
    assert (a.module, a.inclusive_ns, a.exclusive_ns) == ("A", 100, 70)
    (b,) = a.children
    assert (b.module, b.inclusive_ns, b.exclusive_ns) == ("B", 30, 30)


def test_single_import_leaf_identity(tmp_path):
    trace = trace_from(tmp_path, [meta_rec(), begin_rec("solo", 5), end_rec("solo", 47, 42)])
    (node,) = build_cct(trace).children
    assert node.inclusive_ns == node.exclusive_ns == 42


def test_sibling_sum(tmp_path):
    trace = trace_from(tmp_path, [
        meta_rec(),
        begin_rec("a", 0), end_rec("a", 40, 40),
        begin_rec("b", 50), end_rec("b", 110, 60),
    ])
    root = build_cct(trace)
    assert root.inclusive_ns == 100
    assert [c.module for c in root.children] == ["a", "b"]


def test_duplicate_import_merges_and_adds(tmp_path):
    trace = trace_from(tmp_path, [
        meta_rec(),
        begin_rec("p", 0),
        begin_rec("q", 1, depth=1, parent="p"), end_rec("q", 11, 10),
        begin_rec("q", 20, depth=1, parent="p"), end_rec("q", 25, 5),
        end_rec("p", 40, 40),
    ])
    (p,) = build_cct(trace).children
    assert [c.module for c in p.children] == ["q"]
    assert p.children[0].inclusive_ns == 15
    assert p.exclusive_ns == 25


def test_cross_thread_merge_under_root(tmp_path):
    trace = trace_from(tmp_path, [
        meta_rec(ts=0, tid=1),
        begin_rec("a", 1, tid=1), end_rec("a", 11, 10, tid=1),
        begin_rec("b", 2, tid=2), end_rec("b", 32, 30, tid=2),
    ])
    root = build_cct(trace)
    assert {c.module for c in root.children} == {"a", "b"}
    assert root.inclusive_ns == 40


def test_invalid_phase(tmp_path):
    warm = trace_from(tmp_path, [meta_rec(phase="warm")])
    with pytest.raises(InvalidPhase):
        build_cct(warm)
    cold = trace_from(tmp_path, [meta_rec()], name="c.jsonl")
    with pytest.raises(InvalidPhase):
        attribute_usage(cold)


def test_unmatched_imports_propagated(tmp_path):
    trace = trace_from(tmp_path, [meta_rec(), begin_rec("a", 1)])
    with pytest.raises(UnmatchedImports):
        build_cct(trace)


def test_conservation_seeded():
    rng = random.Random(123)
    for _ in range(50):
        records, _ = random_cold_records(rng, max_imports=30, tids=(1, 2))
        trace = _parse(records)
        root = build_cct(trace)
        total_exclusive = sum(n.exclusive_ns for n, _ in iter_nodes(root))
        assert total_exclusive == root.inclusive_ns
        for node, _ in iter_nodes(root):
            assert node.exclusive_ns >= 0
            assert node.inclusive_ns == node.exclusive_ns + sum(
                c.inclusive_ns for c in node.children
            )


def _parse(records):
    import tempfile
    from pathlib import Path

    with tempfile.TemporaryDirectory() as tmp:
        return parse_trace(write_trace(Path(tmp) / "t.jsonl", records))


def test_matches_interval_oracle_seeded():
    rng = random.Random(99)
    for _ in range(60):
        records, pairs = random_cold_records(rng, max_imports=8, tids=(1, 2))
        root = build_cct(_parse(records))
        assert cct_as_dict(root) == oracle_tree(pairs)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_order_independence(seed):
    rng = random.Random(seed)
    records, _ = random_cold_records(rng, max_imports=15, tids=(1, 2))
    ordered = build_cct(_parse(records))
    shuffled = records[1:]
    rng.shuffle(shuffled)
    rebuilt = build_cct(_parse([records[0]] + shuffled))
    assert cct_as_dict(rebuilt) == cct_as_dict(ordered)
    assert rebuilt.inclusive_ns == ordered.inclusive_ns


def warm_fixture(tmp_path, samples):
    return trace_from(tmp_path, [meta_rec(phase="warm")] + samples, name="warm.jsonl")


def test_usage_presence_counting(tmp_path):
    frames_x = [("x", "f", "/x.py", 1)]
    frames_other = [("y", "g", "/y.py", 2)]
    samples = [
        sample_rec(10, frames_x),
        sample_rec(20, frames_other),
        sample_rec(30, frames_x),
        sample_rec(40, frames_other),
        sample_rec(50, frames_other),
    ]
    usage = attribute_usage(warm_fixture(tmp_path, samples))
    assert usage.get("x") == 2
    assert usage.total_samples == 5


def test_usage_dedup_within_sample(tmp_path):
    recursive = [("x", "f", "/x.py", 3), ("x", "f", "/x.py", 9), ("x", "g", "/x.py", 1)]
    usage = attribute_usage(warm_fixture(tmp_path, [sample_rec(10, recursive)]))
    assert usage.get("x") == 1


def test_usage_weighted_samples(tmp_path):
    samples = [sample_rec(10, [("x", "f", "/x.py", 1)], w=4)]
    usage = attribute_usage(warm_fixture(tmp_path, samples))
    assert usage.get("x") == 4
    assert usage.total_samples == 4


def test_usage_monotone_under_appended_samples(tmp_path):
    frames = [("x", "f", "/x.py", 1)]
    base = [sample_rec(10 * i, frames) for i in range(1, 4)]
    before = attribute_usage(warm_fixture(tmp_path, base))
    after = attribute_usage(warm_fixture(tmp_path, base + [sample_rec(99, frames)]))
    for mod, count in before.counts.items():
        assert after.get(mod) >= count


def test_merge_defaults_and_untraced(tmp_path):
    trace = trace_from(tmp_path, [
        meta_rec(),
        begin_rec("a", 1), end_rec("a", 5, 4),
        begin_rec("b", 6), end_rec("b", 10, 4),
    ])
    root = build_cct(trace)
    usage = attribute_usage(warm_fixture(tmp_path, [sample_rec(10, [("a", "f", "/a.py", 1)]),
                                                    sample_rec(20, [("a", "f", "/a.py", 1)]),
                                                    sample_rec(30, [("a", "f", "/a.py", 1)])]))
    annotated = merge(root, usage)
    assert annotated.usage == {"a": 3, "b": 0}
    assert annotated.untraced == ()
    assert annotated.total_init_ns == 8


def test_merge_untraced_side_list(tmp_path):
    trace = trace_from(tmp_path, [meta_rec(), begin_rec("a", 1), end_rec("a", 5, 4)])
    usage = attribute_usage(warm_fixture(tmp_path, [sample_rec(9, [("c", "f", "/c.py", 1)])]))
    annotated = merge(build_cct(trace), usage)
    assert annotated.untraced == ("c",)
    assert annotated.usage == {"a": 0}


def test_merge_empty_is_identity(tmp_path):
    trace = trace_from(tmp_path, [meta_rec()])
    usage = attribute_usage(warm_fixture(tmp_path, []))
    annotated = merge(build_cct(trace), usage)
    assert annotated.total_init_ns == 0
    assert annotated.usage == {}
    assert annotated.untraced == ()
