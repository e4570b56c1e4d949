"""Command-line interface.

Subcommands: render (PPM image of a limit set or tiling), benchmark
(compare algorithms and kernel backends), enumerate (list accepted words).
Values that start with a minus sign must use the --flag=value form, e.g.
--mu=-0.097,1.838 or --viewport=-2,4,-1,3.

Exit codes: 0 success, 1 runtime failure (I/O and similar), 2 bad usage.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .backend import WORKERS_ENV
from .baselines import (
    WalkConfig,
    enumerate_dictionary_bfs,
    render_dictionary,
    render_probabilistic,
)
from .benchmark import run_benchmark
from .codec import decode_index
from .groups import GroupSpec, builtin_group, check_word_run, digits_to_letters, load_group_file
from .moebius import maskit_generators
from .ppm import tone_map, write_ppm
from .render import RenderConfig, Viewport, collect_seed_points, render_index_search
from .report import format_table, format_tsv, stats_extra, stats_row

DEFAULT_MU = complex(-0.097, 1.838)

_MODE_NAMES = {"limit": "limit_set", "tiling": "tiling"}
_TONE_NAMES = {"binary": "binary", "log": "log_density"}


def _parse_mu(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}") from None


def _parse_size(text: str):
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected WIDTHxHEIGHT, got {text!r}")
    try:
        width, height = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WIDTHxHEIGHT, got {text!r}") from None
    if width < 1 or height < 1:
        raise argparse.ArgumentTypeError(f"canvas {text!r} is empty")
    return (width, height)


def _parse_viewport(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected XMIN,XMAX,YMIN,YMAX, got {text!r}")
    try:
        x_min, x_max, y_min, y_max = (float(p) for p in parts)
        return Viewport(x_min, x_max, y_min, y_max)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_group_arguments(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--group", default="once_punctured_torus",
                     help="built-in group name (default: %(default)s)")
    src.add_argument("--spec-file", type=Path, metavar="FILE",
                     help="load the group table from FILE instead of a built-in")
    p.add_argument("--mu", type=_parse_mu, default=DEFAULT_MU, metavar="RE,IM",
                   help="Maskit parameter for the once_punctured_torus generators "
                        "(default: -0.097,1.838; use --mu=RE,IM when RE is negative)")


def _resolve_group(args) -> GroupSpec:
    if args.spec_file is not None:
        return load_group_file(args.spec_file)
    spec = builtin_group(args.group)
    if args.group == "once_punctured_torus":
        spec = spec.with_generators(maskit_generators(args.mu))
    return spec


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kleindex",
        description="Render Kleinian-group limit sets by decoding words from integer tree indexes.",
        epilog=f"The {WORKERS_ENV} and KLEINDEX_BACKEND environment variables select "
               "worker threads and the kernel backend; neither changes the output bytes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    render = sub.add_parser("render", help="render a PPM image")
    _add_group_arguments(render)
    render.add_argument("--depth", type=int, default=8, help="word tree depth (default: %(default)s)")
    render.add_argument("--mode", choices=sorted(_MODE_NAMES), default="limit",
                        help="plot leaves only (limit) or all depths (tiling)")
    render.add_argument("--algo", choices=("index", "dictionary", "random"), default="index",
                        help="word source (default: %(default)s)")
    render.add_argument("--size", type=_parse_size, default=(800, 600), metavar="WxH",
                        help="canvas size (default: 800x600)")
    render.add_argument("--viewport", type=_parse_viewport, default=None, metavar="XMIN,XMAX,YMIN,YMAX",
                        help="complex-plane window (default: -2,4,-1,3)")
    render.add_argument("--steps", type=int, default=None,
                        help="walk length for --algo random")
    render.add_argument("--rng-seed", type=int, default=1,
                        help="random-walk seed (default: %(default)s)")
    render.add_argument("--tone", choices=sorted(_TONE_NAMES), default="binary",
                        help="tone mapping (default: %(default)s)")
    render.add_argument("--out", type=Path, required=True, metavar="FILE",
                        help="output PPM file")
    render.add_argument("--stats", type=Path, default=None, metavar="FILE",
                        help="also write run counters as TSV")
    render.set_defaults(func=cmd_render)

    bench = sub.add_parser("benchmark", help="time index search against the baselines")
    _add_group_arguments(bench)
    bench.add_argument("--depth", type=int, default=8, help="word tree depth (default: %(default)s)")
    bench.add_argument("--mode", choices=sorted(_MODE_NAMES), default="limit")
    bench.add_argument("--size", type=_parse_size, default=(800, 600), metavar="WxH")
    bench.add_argument("--viewport", type=_parse_viewport, default=None, metavar="XMIN,XMAX,YMIN,YMAX")
    bench.add_argument("--steps", type=int, default=None,
                       help="also benchmark a random walk of this many steps")
    bench.add_argument("--rng-seed", type=int, default=1)
    bench.add_argument("--stats", type=Path, default=None, metavar="FILE",
                       help="write the rows as TSV")
    bench.set_defaults(func=cmd_benchmark)

    enum = sub.add_parser("enumerate", help="list accepted words")
    _add_group_arguments(enum)
    enum.add_argument("--depth", type=int, required=True, help="word tree depth")
    enum.add_argument("--mode", choices=sorted(_MODE_NAMES), default="limit")
    enum.add_argument("--algo", choices=("index", "dictionary"), default="dictionary",
                      help="enumeration strategy (default: %(default)s)")
    enum.add_argument("--out", type=Path, default=None, metavar="FILE",
                      help="write words here instead of stdout")
    enum.set_defaults(func=cmd_enumerate)

    return parser


def cmd_render(args, parser) -> int:
    try:
        group = _resolve_group(args)
        width, height = args.size
        viewport = args.viewport if args.viewport is not None else Viewport(-2.0, 4.0, -1.0, 3.0)
        mode = _MODE_NAMES[args.mode]
        walk = None
        config = None
        if args.algo == "random":
            if args.steps is None:
                parser.error("--algo random requires --steps")
            if group.generators is None:
                raise ValueError(f"group {group.name!r} has no Moebius generators to render with")
            start = collect_seed_points(group.generators, "generator_fixed_points")[0]
            walk = WalkConfig(steps=args.steps, rng_seed=args.rng_seed, start=start)
        else:
            config = RenderConfig(group=group, depth=args.depth, mode=mode,
                                  viewport=viewport, width=width, height=height)
    except (ValueError, OverflowError) as exc:
        parser.error(str(exc))

    if args.algo == "index":
        canvas, stats = render_index_search(config)
        seeds = len(collect_seed_points(group.generators, config.seed_policy, config.explicit_seeds))
        scale = f"depth={args.depth}"
    elif args.algo == "dictionary":
        canvas, stats = render_dictionary(config)
        seeds = len(collect_seed_points(group.generators, config.seed_policy, config.explicit_seeds))
        scale = f"depth={args.depth}"
    else:
        canvas, stats = render_probabilistic(group, walk, viewport, width, height)
        seeds = 1
        scale = f"steps={args.steps}"

    image = tone_map(canvas, _TONE_NAMES[args.tone])
    write_ppm(image, args.out)
    if args.stats is not None:
        extra = {"group": group.name, "mode": args.mode, "seeds": seeds}
        extra.update(stats_extra(stats))
        args.stats.write_text(format_tsv([stats_row(args.algo, scale, stats)], extra))
    return 0


def cmd_benchmark(args, parser) -> int:
    try:
        group = _resolve_group(args)
        width, height = args.size
        viewport = args.viewport if args.viewport is not None else Viewport(-2.0, 4.0, -1.0, 3.0)
        config = RenderConfig(group=group, depth=args.depth, mode=_MODE_NAMES[args.mode],
                              viewport=viewport, width=width, height=height)
        if args.steps is not None and args.steps < 1:
            raise ValueError(f"--steps must be positive, got {args.steps}")
    except (ValueError, OverflowError) as exc:
        parser.error(str(exc))
    rows = run_benchmark(config, steps=args.steps, rng_seed=args.rng_seed)
    print(format_table(rows))
    if args.stats is not None:
        args.stats.write_text(format_tsv(rows))
    return 0


def cmd_enumerate(args, parser) -> int:
    try:
        group = _resolve_group(args)
        mode = _MODE_NAMES[args.mode]
        if args.depth < 1:
            raise ValueError(f"depth must be at least 1, got {args.depth}")
    except (ValueError, OverflowError) as exc:
        parser.error(str(exc))

    if args.algo == "dictionary":
        entries, _ = enumerate_dictionary_bfs(group, args.depth, mode)
        words = [entry.word for entry in entries]
    else:
        depths = range(1, args.depth + 1) if mode == "tiling" else (args.depth,)
        words = []
        for d in depths:
            for n in range(group.m**d):
                word = decode_index(n, group.m, d)
                accepted, _ = check_word_run(word, group.table)
                if accepted:
                    words.append(word)

    lines = "".join(digits_to_letters(word, group) + "\n" for word in words)
    if args.out is not None:
        args.out.write_text(lines)
    else:
        sys.stdout.write(lines)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except OSError as exc:
        print(f"kleindex: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OverflowError, RuntimeError) as exc:
        print(f"kleindex: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
