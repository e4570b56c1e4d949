"""Benchmark and stats reporting: human tables and machine-readable TSV."""

from __future__ import annotations

from dataclasses import dataclass

from .render import RenderStats

TSV_COLUMNS = ("algorithm", "depth_or_steps", "words", "peak_stored_digits", "wall_time_s")


@dataclass(frozen=True)
class ReportRow:
    """One benchmark line: how much work, how much storage, how long."""

    algorithm: str
    depth_or_steps: str
    words: int
    peak_stored_digits: int
    wall_time_s: float


def format_table(rows) -> str:
    """Fixed-width human-readable table."""
    header = TSV_COLUMNS
    cells = [header] + [
        (r.algorithm, r.depth_or_steps, str(r.words), str(r.peak_stored_digits), f"{r.wall_time_s:.4f}")
        for r in rows
    ]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = []
    for j, row in enumerate(cells):
        lines.append("  ".join(col.ljust(widths[i]) for i, col in enumerate(row)).rstrip())
        if j == 0:
            lines.append("  ".join("-" * widths[i] for i in range(len(header))).rstrip())
    return "\n".join(lines)


def format_tsv(rows, extra: dict | None = None) -> str:
    """Tab-separated rows with a header line; extra counters become
    trailing comment lines of the form "# key<TAB>value"."""
    lines = ["\t".join(TSV_COLUMNS)]
    for r in rows:
        lines.append(
            "\t".join((r.algorithm, r.depth_or_steps, str(r.words), str(r.peak_stored_digits), f"{r.wall_time_s:.6f}"))
        )
    if extra:
        for key, value in extra.items():
            lines.append(f"# {key}\t{value}")
    return "\n".join(lines) + "\n"


def stats_row(algorithm: str, scale: str, stats: RenderStats) -> ReportRow:
    """Summarize RenderStats as a ReportRow."""
    return ReportRow(
        algorithm=algorithm,
        depth_or_steps=scale,
        words=stats.words_tested,
        peak_stored_digits=stats.peak_word_buffer_len,
        wall_time_s=stats.wall_time,
    )


def stats_extra(stats: RenderStats) -> dict:
    """RenderStats counters as a dict for TSV comment lines."""
    return {
        "words_tested": stats.words_tested,
        "words_accepted": stats.words_accepted,
        "words_rejected": stats.words_rejected,
        "points_plotted": stats.points_plotted,
        "points_outside": stats.points_outside,
        "points_at_infinity": stats.points_at_infinity,
        "peak_word_buffer_len": stats.peak_word_buffer_len,
        "wall_time_s": f"{stats.wall_time:.6f}",
    }
