import dataclasses

import numpy as np
import pytest

from kleindex.baselines import render_dictionary
from kleindex.codec import node_counts
from kleindex.groups import builtin_group
from kleindex.moebius import INFINITY, GeneratorSet, Moebius, chordal_distance, maskit_generators
from kleindex.render import (
    DEFAULT_VIEWPORT,
    Canvas,
    RenderConfig,
    Viewport,
    collect_seed_points,
    plot,
    render_index_search,
    word_value,
)

MU = complex(-0.097, 1.838)


def torus_group(mu=MU):
    return builtin_group("once_punctured_torus").with_generators(maskit_generators(mu))


def small_config(**kwargs):
    defaults = dict(group=torus_group(), depth=5, mode="limit_set", width=64, height=48)
    defaults.update(kwargs)
    return RenderConfig(**defaults)


def test_viewport_validation():
    with pytest.raises(ValueError):
        Viewport(1.0, 1.0, 0.0, 2.0)
    with pytest.raises(ValueError):
        Viewport(0.0, 1.0, 2.0, -2.0)
    assert DEFAULT_VIEWPORT == Viewport(-2.0, 4.0, -1.0, 3.0)


def test_config_validation():
    group = torus_group()
    with pytest.raises(ValueError):
        RenderConfig(group=builtin_group("klein_four"), depth=3)
    with pytest.raises(ValueError):
        RenderConfig(group=group, depth=0)
    with pytest.raises(OverflowError):
        RenderConfig(group=group, depth=32)
    with pytest.raises(ValueError):
        RenderConfig(group=group, depth=3, mode="both")
    with pytest.raises(ValueError):
        RenderConfig(group=group, depth=3, seed_policy="explicit")
    with pytest.raises(ValueError):
        RenderConfig(group=group, depth=3, width=0)
    with pytest.raises(ValueError):
        RenderConfig(group=group, depth=3, width=1 << 14, height=1 << 13)
    with pytest.raises(ValueError):
        RenderConfig(group=group, depth=3, workers=0)
    with pytest.raises(ValueError):
        RenderConfig(group=group, depth=3, backend="cuda")


def test_word_value_reads_right_to_left():
    gens = torus_group(2j).generators
    # digit 2 is z + 2
    assert word_value((2,), gens, 0j) == 2 + 0j
    assert word_value((2, 2), gens, 0j) == 4 + 0j
    # inverse pair cancels
    assert word_value((1, 3), gens, 0.7 + 0.3j) == pytest.approx(0.7 + 0.3j)
    # rightmost applied first: word "12" maps z to a(z + 2)
    gens_mu = torus_group().generators
    lhs = word_value((1, 2), gens_mu, 0.5j)
    rhs = gens_mu[1](gens_mu[2](0.5j))
    assert lhs == rhs
    assert word_value((), gens, 0.25j) == 0.25j


def test_collect_seed_points_generator_policy():
    gens = torus_group(2j).generators
    seeds = collect_seed_points(gens, "generator_fixed_points")
    # a is parabolic at mu=2i (one point), b fixes infinity; inverses add nothing
    assert len(seeds) == 2
    assert seeds[0] == pytest.approx(1j)
    assert seeds[1] is INFINITY
    seeds = collect_seed_points(torus_group().generators, "generator_fixed_points")
    assert len(seeds) == 3
    assert INFINITY in seeds


def test_collect_seed_points_commutator():
    gens = torus_group().generators
    seeds = collect_seed_points(gens, "commutator_fixed_point")
    comm = gens[1].compose(gens[2]).compose(gens[3]).compose(gens[4])
    assert seeds
    for z in seeds:
        w = comm(z)
        if z is INFINITY or w is INFINITY:
            assert chordal_distance(w, z) <= 1e-9
        else:
            assert abs(w - z) <= 1e-9


def test_collect_seed_points_explicit():
    gens = torus_group().generators
    seeds = collect_seed_points(gens, "explicit", (0j, INFINITY, 1 + 1j))
    assert seeds == [0j, INFINITY, 1 + 1j]
    with pytest.raises(ValueError):
        collect_seed_points(gens, "explicit", ())


def test_identity_generator_rejected():
    ident = Moebius(1, 0, 0, 1)
    shift = Moebius(1, 2, 0, 1)
    gens = GeneratorSet(maps=(ident, shift), inverse_of=(0, 0, 0))
    with pytest.raises(ValueError):
        collect_seed_points(gens, "generator_fixed_points")


def test_plot_outcomes():
    canvas = Canvas.create(100, 100)
    view = Viewport(-1.0, 1.0, -1.0, 1.0)
    assert plot(canvas, view, INFINITY) == "at_infinity"
    assert plot(canvas, view, 5 + 0j) == "outside"
    assert plot(canvas, view, 0j) == "plotted"
    assert canvas.hits[50, 50] == 1
    # max edges clamp onto the last row/column
    assert plot(canvas, view, complex(1.0, -1.0)) == "plotted"
    assert canvas.hits[99, 99] == 1
    assert plot(canvas, view, complex(-1.0, 1.0)) == "plotted"
    assert canvas.hits[0, 0] == 1
    assert canvas.total_hits() == 3


def test_accepted_counts_single_seed():
    for depth in range(1, 7):
        config = small_config(depth=depth, seed_policy="explicit", explicit_seeds=(0j,))
        _, stats = render_index_search(config)
        assert stats.words_tested == 4**depth
        assert stats.words_accepted == 4 * 3 ** (depth - 1)
        assert stats.words_rejected == stats.words_tested - stats.words_accepted
        assert (
            stats.points_plotted + stats.points_outside + stats.points_at_infinity
            == stats.words_accepted
        )
        assert stats.peak_word_buffer_len == depth


def test_tiling_scans_all_depths():
    config = small_config(depth=4, mode="tiling")
    _, stats = render_index_search(config)
    seeds = len(collect_seed_points(config.group.generators, config.seed_policy))
    assert stats.words_tested == seeds * node_counts(4, 4).total
    per_seed = sum(4 * 3 ** (d - 1) for d in range(1, 5))
    assert stats.words_accepted == seeds * per_seed


def test_acceptance_independent_of_seed():
    a = render_index_search(small_config(seed_policy="explicit", explicit_seeds=(0j,)))[1]
    b = render_index_search(small_config(seed_policy="explicit", explicit_seeds=(5 + 5j,)))[1]
    assert a.words_accepted == b.words_accepted


def test_render_deterministic_across_runs_workers_backends():
    base = small_config(depth=6)
    first, _ = render_index_search(base)
    second, _ = render_index_search(base)
    assert np.array_equal(first.hits, second.hits)
    many, _ = render_index_search(dataclasses.replace(base, workers=3))
    assert np.array_equal(first.hits, many.hits)
    nb, _ = render_index_search(dataclasses.replace(base, backend="numba"))
    np_, _ = render_index_search(dataclasses.replace(base, backend="numpy"))
    assert np.array_equal(nb.hits, np_.hits)
    assert np.array_equal(first.hits, nb.hits)


def test_worker_counter_totals_match():
    base = small_config(depth=6, mode="tiling")
    _, s1 = render_index_search(base)
    _, s4 = render_index_search(dataclasses.replace(base, workers=4))
    assert (s1.words_tested, s1.words_accepted, s1.points_plotted) == (
        s4.words_tested,
        s4.words_accepted,
        s4.points_plotted,
    )


def test_dictionary_render_matches_index_render():
    # The dictionary's words_accepted counts BFS acceptance events across
    # all levels regardless of mode, so the counters only line up with the
    # per-seed index scan in tiling mode; the canvases must always agree.
    level_counts = [4 * 3 ** (d - 1) for d in range(1, 6)]
    for mode, plotted_per_seed in (("limit_set", level_counts[-1]), ("tiling", sum(level_counts))):
        config = small_config(depth=5, mode=mode)
        ci, si = render_index_search(config)
        cd, sd = render_dictionary(config)
        assert np.array_equal(ci.hits, cd.hits)
        seeds = len(collect_seed_points(config.group.generators, config.seed_policy))
        assert si.points_plotted == sd.points_plotted
        assert sd.words_accepted == sum(level_counts)
        assert si.words_accepted == seeds * plotted_per_seed
        plot_total = sd.points_plotted + sd.points_outside + sd.points_at_infinity
        assert plot_total == seeds * plotted_per_seed


def test_depth_refinement():
    # structure at depth D survives at depth D+2: every lit pixel keeps a
    # lit neighbor within one pixel, with a 0.5% allowance
    def lit(depth):
        config = RenderConfig(group=torus_group(), depth=depth, width=240, height=180)
        canvas, _ = render_index_search(config)
        return canvas.hits > 0

    coarse, fine = lit(6), lit(8)
    padded = np.pad(fine, 1)
    near = np.zeros_like(coarse)
    for dy in range(3):
        for dx in range(3):
            near |= padded[dy : dy + 180, dx : dx + 240]
    misses = int((coarse & ~near).sum())
    assert misses <= 0.005 * max(int(coarse.sum()), 1)


def test_infinity_seed_orbit():
    # all-b words keep an infinity seed at infinity
    config = small_config(depth=3, seed_policy="explicit", explicit_seeds=(INFINITY,))
    _, stats = render_index_search(config)
    assert stats.points_at_infinity > 0
