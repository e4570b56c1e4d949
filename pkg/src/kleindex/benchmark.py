"""Benchmark the index search against the baselines and across backends."""

from __future__ import annotations

import dataclasses

from .backend import numba_available
from .baselines import WalkConfig, render_dictionary, render_probabilistic
from .render import RenderConfig, render_index_search
from .report import ReportRow, stats_row


def run_benchmark(config: RenderConfig, steps: int | None = None, rng_seed: int = 1) -> list[ReportRow]:
    """Render the same scene with every algorithm and return report rows.

    The index search runs once per available kernel backend (numba and the
    numpy fallback) so their wall times can be compared directly; the
    dictionary baseline follows, and a random-walk row is added when steps
    is given.
    """
    rows: list[ReportRow] = []
    scale = f"depth={config.depth}"
    backends = ("numba", "numpy") if numba_available() else ("numpy",)
    for backend in backends:
        cfg = dataclasses.replace(config, backend=backend)
        if backend == "numba":
            # JIT warm-up render so the row times the kernel, not the compiler
            tiny = dataclasses.replace(cfg, depth=1, mode="limit_set")
            render_index_search(tiny)
        _, stats = render_index_search(cfg)
        rows.append(stats_row(f"index[{backend}]", scale, stats))
    _, stats = render_dictionary(config)
    rows.append(stats_row("dictionary", scale, stats))
    if steps is not None:
        walk = WalkConfig(steps=steps, rng_seed=rng_seed, start=_walk_start(config))
        _, stats = render_probabilistic(
            config.group, walk, config.viewport, config.width, config.height, config.backend
        )
        rows.append(stats_row("random", f"steps={steps}", stats))
    return rows


def _walk_start(config: RenderConfig):
    from .render import collect_seed_points

    seeds = collect_seed_points(config.group.generators, config.seed_policy, config.explicit_seeds)
    return seeds[0]
