"""Render Kleinian-group limit sets by decoding words from integer tree indexes.

Words of the group are identified with nodes of a depth-D tree over the
alphabet digits 1..m.  Instead of storing words, the renderer recovers each
word from its integer node index by repeated divmod, validates it against an
indexed Cayley table acting as a finite-state acceptor, and plots the
Moebius orbit of a seed point.  Stored-dictionary and random-walk baselines
are included for equivalence checks and benchmarking.
"""

from .backend import BACKEND_ENV, WORKERS_ENV, get_kernels, numba_available, resolve_backend
from .baselines import (
    DEFAULT_DIGIT_BUDGET,
    DictionaryBudgetError,
    DictionaryEntry,
    MemoryCounters,
    WalkConfig,
    enumerate_dictionary_bfs,
    render_dictionary,
    render_probabilistic,
    walk_digit_log,
)
from .codec import INT64_MAX, NodeCount, decode_index, encode_word, max_depth, node_counts
from .groups import (
    KLEIN_FOUR_TABLE,
    TORUS_TABLE,
    CayleyTable,
    GroupSpec,
    builtin_group,
    check_word_run,
    digits_to_letters,
    letters_to_digits,
    load_group_file,
    validate_table,
)
from .moebius import (
    INFINITY,
    ComplexPoint,
    GeneratorSet,
    Moebius,
    chordal_distance,
    identity,
    is_identity,
    maskit_generators,
    proj_close,
)
from .ppm import PpmImage, ppm_bytes, tone_map, write_ppm
from .render import (
    DEFAULT_VIEWPORT,
    Canvas,
    RenderConfig,
    RenderStats,
    Viewport,
    collect_seed_points,
    plot,
    render_index_search,
    word_value,
)
from .report import ReportRow, format_table, format_tsv
from .benchmark import run_benchmark

__version__ = "0.1.0"

__all__ = [
    "BACKEND_ENV",
    "WORKERS_ENV",
    "get_kernels",
    "numba_available",
    "resolve_backend",
    "DEFAULT_DIGIT_BUDGET",
    "DictionaryBudgetError",
    "DictionaryEntry",
    "MemoryCounters",
    "WalkConfig",
    "enumerate_dictionary_bfs",
    "render_dictionary",
    "render_probabilistic",
    "walk_digit_log",
    "INT64_MAX",
    "NodeCount",
    "decode_index",
    "encode_word",
    "max_depth",
    "node_counts",
    "KLEIN_FOUR_TABLE",
    "TORUS_TABLE",
    "CayleyTable",
    "GroupSpec",
    "builtin_group",
    "check_word_run",
    "digits_to_letters",
    "letters_to_digits",
    "load_group_file",
    "validate_table",
    "INFINITY",
    "ComplexPoint",
    "GeneratorSet",
    "Moebius",
    "chordal_distance",
    "identity",
    "is_identity",
    "maskit_generators",
    "proj_close",
    "PpmImage",
    "ppm_bytes",
    "tone_map",
    "write_ppm",
    "DEFAULT_VIEWPORT",
    "Canvas",
    "RenderConfig",
    "RenderStats",
    "Viewport",
    "collect_seed_points",
    "plot",
    "render_index_search",
    "word_value",
    "ReportRow",
    "format_table",
    "format_tsv",
    "run_benchmark",
]
