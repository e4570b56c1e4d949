"""Group presentations as indexed Cayley tables.

A group with m alphabet symbols is described by an (m+1) x (m+1) table of
digit codes.  Digit 0 is the identity/crash state, digits 1..m stand for the
alphabet symbols.  ``cells[i][j]`` is the code of symbol i times symbol j,
with 0 meaning the product falls out of the alphabet (for free products this
is a cancellation).  Because row and column 0 repeat the digit codes, the
table doubles as the transition function of a finite-state acceptor: feed a
word digit by digit from the right, starting at state 0, and reject as soon
as the state hits 0 again.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .moebius import GeneratorSet

Word = tuple[int, ...]


def validate_table(cells) -> tuple[int, int, str] | None:
    """Check indexed-Cayley-table invariants on a raw square array.

    Returns None when the table is valid, otherwise (row, col, reason) for
    the first violation in row-major order.  Required: cells[0][j] == j,
    cells[i][0] == i, and every value within 0..m.
    """
    cells = np.asarray(cells)
    if cells.ndim != 2 or cells.shape[0] != cells.shape[1]:
        raise ValueError(f"table must be square, got shape {cells.shape}")
    if cells.shape[0] < 2:
        raise ValueError("table needs at least one alphabet symbol")
    m = cells.shape[0] - 1
    for i in range(m + 1):
        for j in range(m + 1):
            v = int(cells[i, j])
            if i == 0 and v != j:
                return (i, j, f"identity row must echo the column digit, got {v} != {j}")
            if j == 0 and v != i:
                return (i, j, f"identity column must echo the row digit, got {v} != {i}")
            if not 0 <= v <= m:
                return (i, j, f"cell value {v} outside 0..{m}")
    return None


@dataclass(frozen=True)
class CayleyTable:
    """A validated indexed Cayley table; ``cells`` is read-only int64."""

    cells: np.ndarray

    def __post_init__(self):
        cells = np.ascontiguousarray(np.asarray(self.cells, dtype=np.int64))
        bad = validate_table(cells)
        if bad is not None:
            row, col, reason = bad
            raise ValueError(f"invalid table at row {row}, col {col}: {reason}")
        cells.flags.writeable = False
        object.__setattr__(self, "cells", cells)

    @property
    def m(self) -> int:
        return self.cells.shape[0] - 1


def check_word_run(word, table: CayleyTable) -> tuple[bool, int]:
    """Run a word through the acceptor; digits are consumed right to left.

    Returns (accepted, final_state).  The empty word is rejected, and the
    run stops at the first 0 state.  Rejected words report state 0.
    """
    cells = table.cells
    m = table.m
    if len(word) == 0:
        return (False, 0)
    state = 0
    for digit in reversed(word):
        if not 1 <= digit <= m:
            raise ValueError(f"digit {digit} outside 1..{m}")
        state = int(cells[state, digit])
        if state == 0:
            return (False, 0)
    return (True, state)


@dataclass(frozen=True)
class GroupSpec:
    """A named group: alphabet labels, Cayley table, optional Moebius maps."""

    name: str
    alphabet: tuple[str, ...]
    table: CayleyTable
    generators: GeneratorSet | None = None

    def __post_init__(self):
        if len(self.alphabet) != self.table.m:
            raise ValueError(
                f"alphabet has {len(self.alphabet)} labels but the table encodes {self.table.m} symbols"
            )
        seen = set()
        for label in self.alphabet:
            if not label or any(c in "() \t" for c in label):
                raise ValueError(f"bad alphabet label {label!r}")
            if label in seen:
                raise ValueError(f"duplicate alphabet label {label!r}")
            seen.add(label)
        if self.generators is not None and len(self.generators) != self.table.m:
            raise ValueError(
                f"{len(self.generators)} generators for {self.table.m} alphabet symbols"
            )

    @property
    def m(self) -> int:
        return self.table.m

    def with_generators(self, generators: GeneratorSet) -> "GroupSpec":
        return dataclasses.replace(self, generators=generators)


def letters_to_digits(text: str, spec: GroupSpec) -> Word:
    """Parse a word string into digits.

    Multi-character labels must be written in parentheses, one token each,
    e.g. "(a)(b)(ab)".  When the string contains no parentheses it is read
    as a plain concatenation with greedy longest-label matching.
    """
    index = {label: i + 1 for i, label in enumerate(spec.alphabet)}
    tokens: list[tuple[str, int]] = []
    if "(" in text or ")" in text:
        pos = 0
        while pos < len(text):
            if text[pos] != "(":
                raise ValueError(f"unexpected character {text[pos]!r} at position {pos}, expected '('")
            end = text.find(")", pos + 1)
            if end < 0:
                raise ValueError(f"unterminated '(' at position {pos}")
            tokens.append((text[pos + 1 : end], pos + 1))
            pos = end + 1
    else:
        by_length = sorted(spec.alphabet, key=len, reverse=True)
        pos = 0
        while pos < len(text):
            for label in by_length:
                if text.startswith(label, pos):
                    tokens.append((label, pos))
                    pos += len(label)
                    break
            else:
                raise ValueError(f"unknown letter {text[pos]!r} at position {pos}")
    digits = []
    for token, pos in tokens:
        if token not in index:
            raise ValueError(f"unknown token {token!r} at position {pos}")
        digits.append(index[token])
    return tuple(digits)


def digits_to_letters(word, spec: GroupSpec) -> str:
    """Format digits as a word string, parenthesized when labels need it."""
    for digit in word:
        if not 1 <= digit <= spec.m:
            raise ValueError(f"digit {digit} outside 1..{spec.m}")
    if any(len(label) > 1 for label in spec.alphabet):
        return "".join(f"({spec.alphabet[d - 1]})" for d in word)
    return "".join(spec.alphabet[d - 1] for d in word)


# Free product of the cyclic groups <a> and <b> on a, b, A, B: a symbol is
# killed only by its inverse, everything else concatenates.
TORUS_TABLE = (
    (0, 1, 2, 3, 4),
    (1, 1, 2, 0, 4),
    (2, 1, 2, 3, 0),
    (3, 0, 2, 3, 4),
    (4, 1, 0, 3, 4),
)

# Z/2 x Z/2 written on the coset alphabet a, b, ab; no Moebius generators.
KLEIN_FOUR_TABLE = (
    (0, 1, 2, 3),
    (1, 0, 3, 2),
    (2, 3, 0, 1),
    (3, 2, 1, 0),
)

_BUILTINS = {
    "once_punctured_torus": (("a", "b", "A", "B"), TORUS_TABLE),
    "klein_four": (("a", "b", "ab"), KLEIN_FOUR_TABLE),
}


def builtin_group(name: str) -> GroupSpec:
    """Return a built-in GroupSpec; unknown names list what is available."""
    try:
        alphabet, rows = _BUILTINS[name]
    except KeyError:
        known = ", ".join(sorted(_BUILTINS))
        raise ValueError(f"unknown group {name!r}; built-in groups: {known}") from None
    return GroupSpec(name=name, alphabet=alphabet, table=CayleyTable(np.array(rows, dtype=np.int64)))


def load_group_file(path) -> GroupSpec:
    """Load a group from a text file.

    Line 1 is m, line 2 the m alphabet labels separated by spaces, and the
    next m+1 lines are the table rows (m+1 integers each).  Trailing
    whitespace and trailing blank lines are ignored.
    """
    path = Path(path)
    lines = [line.rstrip() for line in path.read_text().splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    if len(lines) < 2:
        raise ValueError(f"{path}: expected a symbol count line and an alphabet line")
    try:
        m = int(lines[0])
    except ValueError:
        raise ValueError(f"{path}: line 1 must be the symbol count, got {lines[0]!r}") from None
    if m < 1:
        raise ValueError(f"{path}: symbol count must be positive, got {m}")
    alphabet = tuple(lines[1].split())
    if len(alphabet) != m:
        raise ValueError(f"{path}: line 2 has {len(alphabet)} labels, expected {m}")
    if len(lines) != 2 + m + 1:
        raise ValueError(f"{path}: expected {m + 1} table rows, found {len(lines) - 2}")
    rows = []
    for i, line in enumerate(lines[2:]):
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise ValueError(f"{path}: line {i + 3} is not a row of integers: {line!r}") from None
        if len(row) != m + 1:
            raise ValueError(f"{path}: line {i + 3} has {len(row)} entries, expected {m + 1}")
        rows.append(row)
    return GroupSpec(name=path.stem, alphabet=alphabet, table=CayleyTable(np.array(rows, dtype=np.int64)))
