"""Index-search rendering: decode, check and plot words straight from indexes.

The renderer walks the node indexes of the depth-D word tree instead of a
stored word list.  For every index it decodes the digits, runs them through
the group's acceptor, and for accepted words evaluates the Moebius orbit of
a seed point, accumulating hit counts on an integer canvas.  Memory per
in-flight word is one digit buffer, so depth is bounded by index range, not
by storage.

Hit counts are merged by integer addition, which makes the canvas
independent of how the index range is chunked across worker threads.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .backend import default_workers, get_kernels, resolve_backend
from .codec import max_depth
from .groups import GroupSpec
from .moebius import INFINITY, ComplexPoint, GeneratorSet, Moebius

MODES = ("limit_set", "tiling")
SEED_POLICIES = ("generator_fixed_points", "commutator_fixed_point", "explicit")

# 2^26 pixels (512 MB of int64 counts) is the canvas ceiling.
MAX_PIXELS = 1 << 26

_SEED_DEDUP_TOL = 1e-12


@dataclass(frozen=True)
class Viewport:
    """Axis-aligned window of the complex plane mapped onto the canvas."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError(
                f"degenerate viewport [{self.x_min}, {self.x_max}] x [{self.y_min}, {self.y_max}]"
            )

    def dx(self, width: int) -> float:
        return (self.x_max - self.x_min) / width

    def dy(self, height: int) -> float:
        return (self.y_max - self.y_min) / height


DEFAULT_VIEWPORT = Viewport(-2.0, 4.0, -1.0, 3.0)


@dataclass
class Canvas:
    """Integer hit grid, row 0 at the top of the viewport."""

    hits: np.ndarray

    @classmethod
    def create(cls, width: int, height: int) -> "Canvas":
        return cls(hits=np.zeros((height, width), dtype=np.int64))

    @property
    def width(self) -> int:
        return self.hits.shape[1]

    @property
    def height(self) -> int:
        return self.hits.shape[0]

    def total_hits(self) -> int:
        return int(self.hits.sum())


@dataclass
class RenderStats:
    """Counters reported by every renderer.

    peak_word_buffer_len is the largest number of word digits held at once:
    the depth of the single decode buffer for index search, the dictionary
    size for the stored-word baseline, and the digit-log length for the
    random walk.
    """

    words_tested: int = 0
    words_accepted: int = 0
    words_rejected: int = 0
    points_plotted: int = 0
    points_outside: int = 0
    points_at_infinity: int = 0
    wall_time: float = 0.0
    peak_word_buffer_len: int = 0


@dataclass(frozen=True)
class RenderConfig:
    """Everything an index-search render needs; validated on construction."""

    group: GroupSpec
    depth: int
    mode: str = "limit_set"
    seed_policy: str = "generator_fixed_points"
    explicit_seeds: tuple = ()
    viewport: Viewport = DEFAULT_VIEWPORT
    width: int = 800
    height: int = 600
    workers: int | None = None
    backend: str | None = None

    def __post_init__(self):
        if self.group.generators is None:
            raise ValueError(f"group {self.group.name!r} has no Moebius generators to render with")
        if self.depth < 1:
            raise ValueError(f"depth must be at least 1, got {self.depth}")
        limit = max_depth(self.group.m)
        if self.depth > limit:
            raise OverflowError(
                f"depth {self.depth} exceeds the maximum {limit} for m={self.group.m}"
            )
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; choose one of {MODES}")
        if self.seed_policy not in SEED_POLICIES:
            raise ValueError(f"unknown seed policy {self.seed_policy!r}; choose one of {SEED_POLICIES}")
        if self.seed_policy == "explicit" and not self.explicit_seeds:
            raise ValueError("seed policy 'explicit' needs at least one seed point")
        if self.width < 1 or self.height < 1:
            raise ValueError(f"canvas {self.width}x{self.height} is empty")
        if self.width * self.height > MAX_PIXELS:
            raise ValueError(f"canvas {self.width}x{self.height} exceeds {MAX_PIXELS} pixels")
        if self.workers is not None and self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")
        resolve_backend(self.backend)


def word_value(word, gens: GeneratorSet, seed: ComplexPoint) -> ComplexPoint:
    """Apply a word to a seed right to left; the result is the word's value."""
    z = seed
    for digit in reversed(word):
        z = gens[digit](z)
    return z


def plot(canvas: Canvas, viewport: Viewport, z: ComplexPoint) -> str:
    """Bin one point; returns "plotted", "outside" or "at_infinity".

    Same mapping as the kernels: floor of the viewport offset, top row at
    y_max, points exactly on the max edges clamped to the last row/column.
    """
    if z is INFINITY:
        return "at_infinity"
    z = complex(z)
    zr, zi = z.real, z.imag
    if viewport.x_min <= zr <= viewport.x_max and viewport.y_min <= zi <= viewport.y_max:
        px = int((zr - viewport.x_min) / viewport.dx(canvas.width))
        py = int((viewport.y_max - zi) / viewport.dy(canvas.height))
        if px >= canvas.width:
            px = canvas.width - 1
        if py >= canvas.height:
            py = canvas.height - 1
        canvas.hits[py, px] += 1
        return "plotted"
    return "outside"


def _points_close(a: ComplexPoint, b: ComplexPoint) -> bool:
    if a is INFINITY or b is INFINITY:
        return a is b
    return abs(complex(a) - complex(b)) <= _SEED_DEDUP_TOL


def _is_identity_map(g: Moebius) -> bool:
    return g.p == 0 and g.n == 0 and g.m == g.q


def collect_seed_points(gens: GeneratorSet, policy: str, explicit_seeds=()) -> list[ComplexPoint]:
    """Gather orbit seed points under the given policy.

    generator_fixed_points: fixed points of every generator, deduplicated.
    commutator_fixed_point: fixed points of g1 g2 g1^-1 g2^-1.
    explicit: the caller's points, passed through unchanged.
    An identity generator (or identity commutator) has no isolated fixed
    points and raises ValueError.
    """
    if policy == "explicit":
        out: list[ComplexPoint] = []
        for z in explicit_seeds:
            out.append(z if z is INFINITY else complex(z))
        if not out:
            raise ValueError("no explicit seed points given")
        return out
    for k, g in enumerate(gens.maps, start=1):
        if _is_identity_map(g):
            raise ValueError(f"generator {k} is the identity and has no isolated fixed points")
    if policy == "generator_fixed_points":
        points: list[ComplexPoint] = []
        for g in gens.maps:
            for z in g.fixed_points():
                if not any(_points_close(z, w) for w in points):
                    points.append(z)
        return points
    if policy == "commutator_fixed_point":
        if len(gens) < 2:
            raise ValueError("the commutator seed policy needs at least two generators")
        g1, g2 = gens[1], gens[2]
        j1, j2 = gens.inverse_of[1], gens.inverse_of[2]
        inv1 = gens[j1] if j1 else g1.inverse()
        inv2 = gens[j2] if j2 else g2.inverse()
        comm = g1.compose(g2).compose(inv1).compose(inv2)
        if _is_identity_map(comm):
            raise ValueError("the commutator of generators 1 and 2 is the identity")
        points = []
        for z in comm.fixed_points():
            if not any(_points_close(z, w) for w in points):
                points.append(z)
        return points
    raise ValueError(f"unknown seed policy {policy!r}")


def _seed_parts(z: ComplexPoint) -> tuple[float, float, bool]:
    if z is INFINITY:
        return (0.0, 0.0, True)
    z = complex(z)
    return (z.real, z.imag, False)


def _coeff_arrays(gens: GeneratorSet):
    """Generator coefficients as digit-indexed float arrays (slot 0 unused)."""
    m = len(gens)
    arrays = [np.zeros(m + 1, dtype=np.float64) for _ in range(8)]
    gmr, gmi, gnr, gni, gpr, gpi, gqr, gqi = arrays
    for k, g in enumerate(gens.maps, start=1):
        gmr[k], gmi[k] = g.m.real, g.m.imag
        gnr[k], gni[k] = g.n.real, g.n.imag
        gpr[k], gpi[k] = g.p.real, g.p.imag
        gqr[k], gqi[k] = g.q.real, g.q.imag
    return arrays


def _partition(total: int, parts: int) -> list[tuple[int, int]]:
    """Split [0, total) into at most `parts` contiguous non-empty ranges."""
    base = total // parts
    rem = total % parts
    ranges = []
    lo = 0
    for i in range(parts):
        size = base + (1 if i < rem else 0)
        if size:
            ranges.append((lo, lo + size))
            lo += size
    return ranges


def render_index_search(config: RenderConfig) -> tuple[Canvas, RenderStats]:
    """Render by scanning tree-node indexes; returns (canvas, stats).

    limit_set mode scans the m^D leaves; tiling mode scans every depth
    1..D.  The full scan runs once per seed point, so words_tested is
    len(seeds) * (leaves or total nodes).  The canvas is bit-identical for
    any worker count and either kernel backend.
    """
    t0 = time.perf_counter()
    group = config.group
    gens = group.generators
    m = group.m
    kern = get_kernels(config.backend)
    workers = config.workers if config.workers is not None else default_workers()
    seeds = collect_seed_points(gens, config.seed_policy, config.explicit_seeds)
    coeffs = _coeff_arrays(gens)
    cells = group.table.cells
    vp = config.viewport
    dx = vp.dx(config.width)
    dy = vp.dy(config.height)
    canvas = Canvas.create(config.width, config.height)
    depths = range(1, config.depth + 1) if config.mode == "tiling" else (config.depth,)

    tasks = []
    for seed in seeds:
        sre, sim, sinf = _seed_parts(seed)
        for d in depths:
            for lo, hi in _partition(m**d, workers):
                tasks.append((lo, hi, d, sre, sim, sinf))

    stats = RenderStats(peak_word_buffer_len=config.depth)

    def run_task(task):
        lo, hi, d, sre, sim, sinf = task
        grid = np.zeros_like(canvas.hits) if workers > 1 else canvas.hits
        counters = kern.index_scan_chunk(
            lo, hi, d, m, cells,
            coeffs[0], coeffs[1], coeffs[2], coeffs[3],
            coeffs[4], coeffs[5], coeffs[6], coeffs[7],
            sre, sim, sinf, grid,
            vp.x_min, vp.x_max, vp.y_min, vp.y_max, dx, dy,
        )
        return grid, counters

    if workers == 1:
        results = map(run_task, tasks)
        for _, counters in results:
            _accumulate(stats, counters)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for grid, counters in pool.map(run_task, tasks):
                canvas.hits += grid
                _accumulate(stats, counters)

    stats.wall_time = time.perf_counter() - t0
    return canvas, stats


def _accumulate(stats: RenderStats, counters) -> None:
    accepted, rejected, plotted, outside, at_inf = (int(c) for c in counters)
    stats.words_tested += accepted + rejected
    stats.words_accepted += accepted
    stats.words_rejected += rejected
    stats.points_plotted += plotted
    stats.points_outside += outside
    stats.points_at_infinity += at_inf
