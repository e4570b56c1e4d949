"""Baseline word enumerators the index search is checked against.

Two baselines: a breadth-first stored-word dictionary (the memory-hungry
classic the index codec replaces) and a probabilistic random walk that
samples one long word instead of enumerating.  Both plot through the same
arithmetic as the index kernels, so canvases are directly comparable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .backend import get_kernels
from .groups import GroupSpec, Word
from .moebius import ComplexPoint
from .render import (
    Canvas,
    DEFAULT_VIEWPORT,
    MODES,
    RenderConfig,
    RenderStats,
    Viewport,
    _coeff_arrays,
    _seed_parts,
    collect_seed_points,
    plot,
    word_value,
)

# 200e6 stored digits (a few GB of tuples) before the dictionary gives up.
DEFAULT_DIGIT_BUDGET = 200_000_000

_MASK64 = (1 << 64) - 1


class DictionaryBudgetError(RuntimeError):
    """Raised when the stored-word dictionary outgrows its digit budget."""


class DictionaryEntry(NamedTuple):
    word: Word
    state: int


@dataclass(frozen=True)
class MemoryCounters:
    """Peak simultaneous storage used by the dictionary enumeration."""

    peak_words: int
    peak_digits: int


def enumerate_dictionary_bfs(
    group: GroupSpec,
    depth: int,
    mode: str = "limit_set",
    max_stored_digits: int = DEFAULT_DIGIT_BUDGET,
) -> tuple[list[DictionaryEntry], MemoryCounters]:
    """Enumerate accepted words level by level, storing whole levels.

    Children extend a parent by one digit on the left (applied later), and
    crashes are pruned with the parent's cached acceptor state.  limit_set
    returns the depth-`depth` level, holding parent and child levels at the
    peak; tiling returns every level 1..depth, holding all of them.  The
    running digit count is checked against max_stored_digits and overflow
    raises DictionaryBudgetError; the counters report the high-water marks.
    """
    if depth < 1:
        raise ValueError(f"depth must be at least 1, got {depth}")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; choose one of {MODES}")
    cells = group.table.cells
    m = group.m
    cur_words = 0
    cur_digits = 0
    peak_words = 0
    peak_digits = 0

    def admit(length: int) -> None:
        nonlocal cur_words, cur_digits, peak_words, peak_digits
        cur_words += 1
        cur_digits += length
        if cur_digits > max_stored_digits:
            raise DictionaryBudgetError(
                f"dictionary for depth {depth} needs more than {max_stored_digits} stored digits"
            )
        peak_words = max(peak_words, cur_words)
        peak_digits = max(peak_digits, cur_digits)

    level: list[DictionaryEntry] = []
    for g in range(1, m + 1):
        state = int(cells[0, g])
        if state != 0:
            admit(1)
            level.append(DictionaryEntry((g,), state))
    kept: list[DictionaryEntry] = []
    for d in range(1, depth):
        nxt: list[DictionaryEntry] = []
        for entry in level:
            for g in range(1, m + 1):
                state = int(cells[entry.state, g])
                if state != 0:
                    admit(d + 1)
                    nxt.append(DictionaryEntry((g,) + entry.word, state))
        if mode == "tiling":
            kept.extend(level)
        else:
            cur_words -= len(level)
            cur_digits -= len(level) * d
        level = nxt
    entries = kept + level
    return entries, MemoryCounters(peak_words=peak_words, peak_digits=peak_digits)


def _level_counts(group: GroupSpec, depth: int) -> list[int]:
    """Accepted-word counts per level, via state occupancy (no stored words)."""
    cells = group.table.cells
    m = group.m
    occupancy = np.zeros(m + 1, dtype=np.int64)
    for g in range(1, m + 1):
        state = int(cells[0, g])
        if state != 0:
            occupancy[state] += 1
    counts = [int(occupancy.sum())]
    for _ in range(depth - 1):
        nxt = np.zeros(m + 1, dtype=np.int64)
        for state in range(1, m + 1):
            if occupancy[state]:
                for g in range(1, m + 1):
                    s2 = int(cells[state, g])
                    if s2 != 0:
                        nxt[s2] += occupancy[state]
        occupancy = nxt
        counts.append(int(occupancy.sum()))
    return counts


def render_dictionary(
    config: RenderConfig,
    max_stored_digits: int = DEFAULT_DIGIT_BUDGET,
) -> tuple[Canvas, RenderStats]:
    """Render from a stored dictionary instead of decoding indexes.

    The enumeration runs once; every entry is then orbit-evaluated per seed
    point with the same arithmetic as the index kernels, so the canvas is
    bit-identical to render_index_search for the same configuration.
    words_tested/accepted/rejected count the single enumeration pass, while
    the plot counters cover seeds x entries; peak_word_buffer_len is the
    dictionary's peak stored digits.
    """
    t0 = time.perf_counter()
    group = config.group
    gens = group.generators
    entries, mem = enumerate_dictionary_bfs(group, config.depth, config.mode, max_stored_digits)
    seeds = collect_seed_points(gens, config.seed_policy, config.explicit_seeds)
    canvas = Canvas.create(config.width, config.height)
    stats = RenderStats(peak_word_buffer_len=mem.peak_digits)

    counts = _level_counts(group, config.depth)
    tested = group.m + group.m * sum(counts[:-1])
    accepted = sum(counts)
    stats.words_tested = tested
    stats.words_accepted = accepted
    stats.words_rejected = tested - accepted

    for seed in seeds:
        for entry in entries:
            outcome = plot(canvas, config.viewport, word_value(entry.word, gens, seed))
            if outcome == "plotted":
                stats.points_plotted += 1
            elif outcome == "outside":
                stats.points_outside += 1
            else:
                stats.points_at_infinity += 1
    stats.wall_time = time.perf_counter() - t0
    return canvas, stats


@dataclass(frozen=True)
class WalkConfig:
    """Parameters of the probabilistic renderer.

    The walk applies one uniformly chosen generator per step, never picking
    the inverse of the previous digit, and starts plotting after burn_in
    steps.  Digits come from the splitmix64 stream of rng_seed: draw k
    (k = 0, 1, ...) is mix64(seed + (k+1)*0x9E3779B97F4A7C15) mod 2^64,
    reduced modulo the number of allowed digits, so a seed fixes the walk
    exactly, bit for bit.
    """

    steps: int
    burn_in: int = 50
    rng_seed: int = 1
    start: ComplexPoint = 0j

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError(f"steps must be at least 1, got {self.steps}")
        if not 0 <= self.burn_in < self.steps:
            raise ValueError(f"burn_in must be in 0..steps-1, got {self.burn_in}")


def walk_digit_log(group: GroupSpec, walk: WalkConfig, backend: str | None = None) -> np.ndarray:
    """The digit sequence the walk will follow, as an int64 array."""
    m = group.m
    if m < 2:
        raise ValueError("the random walk needs at least two generators")
    if group.generators is None:
        raise ValueError(f"group {group.name!r} has no Moebius generators to walk with")
    inverse_of = np.asarray(group.generators.inverse_of, dtype=np.int64)
    kern = get_kernels(backend)
    return kern.walk_digits(walk.steps, m, inverse_of, np.uint64(walk.rng_seed & _MASK64))


def render_probabilistic(
    group: GroupSpec,
    walk: WalkConfig,
    viewport: Viewport = DEFAULT_VIEWPORT,
    width: int = 800,
    height: int = 600,
    backend: str | None = None,
) -> tuple[Canvas, RenderStats]:
    """Render by random walk; deterministic given walk.rng_seed.

    Returns (canvas, stats) with words_tested = words_accepted = steps and
    the three plot counters summing to steps - burn_in.
    """
    t0 = time.perf_counter()
    digits = walk_digit_log(group, walk, backend)
    gens = group.generators
    coeffs = _coeff_arrays(gens)
    canvas = Canvas.create(width, height)
    sre, sim, sinf = _seed_parts(walk.start)
    kern = get_kernels(backend)
    plotted, outside, at_inf = kern.walk_scan(
        digits,
        coeffs[0], coeffs[1], coeffs[2], coeffs[3],
        coeffs[4], coeffs[5], coeffs[6], coeffs[7],
        sre, sim, sinf, walk.burn_in, canvas.hits,
        viewport.x_min, viewport.x_max, viewport.y_min, viewport.y_max,
        viewport.dx(width), viewport.dy(height),
    )
    stats = RenderStats(
        words_tested=walk.steps,
        words_accepted=walk.steps,
        words_rejected=0,
        points_plotted=int(plotted),
        points_outside=int(outside),
        points_at_infinity=int(at_inf),
        peak_word_buffer_len=walk.steps,
    )
    stats.wall_time = time.perf_counter() - t0
    return canvas, stats
