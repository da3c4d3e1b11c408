"""Usage-normalized inefficiency scoring and module ranking.

The per-module score is initialization time divided by max(1, usage
count): the cost per observed use. The combined score mixes max-normalized
latency with a usage rarity term (1 - normalized usage) under configurable
weights, defaulting to 0.8 latency / 0.2 usage, so modules that are costly
to load yet rarely used rank first.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .cct import ROOT_NAME, AnnotatedCct, iter_nodes

DEFAULT_W_LATENCY = 0.8
DEFAULT_W_USAGE = 0.2

BASIS_EXCLUSIVE = "exclusive"
BASIS_INCLUSIVE = "inclusive"


class EmptyInput(ValueError):
    pass


@dataclass(frozen=True)
class ModuleScore:
    module: str
    init_exclusive_ns: int
    init_inclusive_ns: int
    usage_count: int
    u_score: float
    combined: float
    rank: int = 0


def u_score(init_time_ns: int | float, usage_count: int) -> float:
    """Initialization cost per observed use: init / max(1, usage)."""
    if init_time_ns < 0:
        raise ValueError("init_time_ns must be >= 0")
    if usage_count < 0:
        raise ValueError("usage_count must be >= 0")
    return init_time_ns / max(1, usage_count)


def combined_score(
    modules: Sequence[tuple[int | float, int]],
    w_latency: float = DEFAULT_W_LATENCY,
    w_usage: float = DEFAULT_W_USAGE,
) -> list[float]:
    """Combined (init, usage) score per module, order preserved.

    Latency is normalized by the corpus max; usage enters as rarity,
    1 - usage/max_usage. Degenerate maxima: all-zero init scores 0 on the
    latency term, all-zero usage scores 1 on the rarity term.
    """
    if not modules:
        raise EmptyInput("combined_score needs at least one module")
    if w_latency < 0 or w_usage < 0:
        raise ValueError("weights must be non-negative")
    if abs((w_latency + w_usage) - 1.0) > 1e-9:
        raise ValueError("weights must sum to 1")
    max_init = max(init for init, _ in modules)
    max_usage = max(usage for _, usage in modules)
    out = []
    for init, usage in modules:
        lat = init / max_init if max_init > 0 else 0.0
        rarity = 1.0 - usage / max_usage if max_usage > 0 else 1.0
        out.append(w_latency * lat + w_usage * rarity)
    return out


def rank_modules(scores: Iterable[ModuleScore]) -> list[ModuleScore]:
    """Order by combined score descending; ties fall back to higher
    exclusive init, then module name. Rank fields are reassigned 1..N."""
    ordered = sorted(
        scores,
        key=lambda s: (-s.combined, -s.init_exclusive_ns, s.module),
    )
    return [replace(score, rank=i) for i, score in enumerate(ordered, start=1)]


def score_cct(
    annotated: AnnotatedCct,
    w_latency: float = DEFAULT_W_LATENCY,
    w_usage: float = DEFAULT_W_USAGE,
    basis: str = BASIS_EXCLUSIVE,
) -> list[ModuleScore]:
    """Score every module in an annotated tree and return the ranked list.

    ``basis`` picks the time fed into the scores: exclusive by default,
    which avoids double-blaming parents for their children's cost.
    """
    if basis not in (BASIS_EXCLUSIVE, BASIS_INCLUSIVE):
        raise ValueError(f"unknown basis {basis!r}")
    exclusive: dict[str, int] = {}
    inclusive: dict[str, int] = {}
    for node, _ in iter_nodes(annotated.root):
        if node.module == ROOT_NAME:
            continue
        exclusive[node.module] = exclusive.get(node.module, 0) + node.exclusive_ns
        inclusive[node.module] = inclusive.get(node.module, 0) + node.inclusive_ns
    if not exclusive:
        return []
    modules = sorted(exclusive)
    basis_of = exclusive if basis == BASIS_EXCLUSIVE else inclusive
    usage = {mod: annotated.usage.get(mod, 0) for mod in modules}
    combined = combined_score(
        [(basis_of[mod], usage[mod]) for mod in modules], w_latency, w_usage
    )
    scores = [
        ModuleScore(
            module=mod,
            init_exclusive_ns=exclusive[mod],
            init_inclusive_ns=inclusive[mod],
            usage_count=usage[mod],
            u_score=u_score(basis_of[mod], usage[mod]),
            combined=comb,
        )
        for mod, comb in zip(modules, combined)
    ]
    return rank_modules(scores)
