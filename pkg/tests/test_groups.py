import itertools

import numpy as np
import pytest

from kleindex.codec import decode_index
from kleindex.groups import (
    KLEIN_FOUR_TABLE,
    TORUS_TABLE,
    CayleyTable,
    builtin_group,
    check_word_run,
    digits_to_letters,
    letters_to_digits,
    load_group_file,
    validate_table,
)

from oracle_helpers import free_reduce, klein_accepts, torus_accepts


def test_builtin_tables_exact():
    torus = builtin_group("once_punctured_torus")
    assert torus.m == 4
    assert torus.alphabet == ("a", "b", "A", "B")
    assert torus.table.cells.tolist() == [list(row) for row in TORUS_TABLE]
    klein = builtin_group("klein_four")
    assert klein.m == 3
    assert klein.alphabet == ("a", "b", "ab")
    assert klein.table.cells.tolist() == [list(row) for row in KLEIN_FOUR_TABLE]


def test_builtin_unknown_name_lists_choices():
    with pytest.raises(ValueError) as err:
        builtin_group("nope")
    message = str(err.value)
    assert "once_punctured_torus" in message and "klein_four" in message


def test_validate_table_passes_builtins():
    assert validate_table(np.array(TORUS_TABLE)) is None
    assert validate_table(np.array(KLEIN_FOUR_TABLE)) is None


def test_validate_table_first_violation():
    cells = [list(row) for row in KLEIN_FOUR_TABLE]
    cells[0][2] = 3
    assert validate_table(cells)[:2] == (0, 2)
    cells = [list(row) for row in KLEIN_FOUR_TABLE]
    cells[2][0] = 1
    assert validate_table(cells)[:2] == (2, 0)
    cells = [list(row) for row in KLEIN_FOUR_TABLE]
    cells[1][2] = 4
    row, col, reason = validate_table(cells)
    assert (row, col) == (1, 2) and "4" in reason
    cells = [list(row) for row in KLEIN_FOUR_TABLE]
    cells[1][1] = -1
    assert validate_table(cells)[:2] == (1, 1)


def test_cayley_table_constructor_validates():
    with pytest.raises(ValueError):
        CayleyTable(np.array([[0, 1], [1, 2]]))
    with pytest.raises(ValueError):
        CayleyTable(np.zeros((2, 3), dtype=np.int64))
    table = CayleyTable(np.array(TORUS_TABLE))
    with pytest.raises(ValueError):
        table.cells[0, 0] = 9


def test_word_runs_torus():
    table = builtin_group("once_punctured_torus").table
    assert check_word_run((1, 2, 3), table) == (True, 1)
    assert check_word_run((3, 1, 2, 3), table) == (False, 0)
    assert check_word_run((2,), table) == (True, 2)
    assert check_word_run((1, 3), table) == (False, 0)
    assert check_word_run((), table) == (False, 0)


def test_word_runs_klein():
    table = builtin_group("klein_four").table
    assert check_word_run((1, 2, 3), table) == (False, 0)
    assert check_word_run((1, 2), table) == (True, 3)
    assert check_word_run((1, 1), table) == (False, 0)


def test_word_run_digit_out_of_range():
    table = builtin_group("klein_four").table
    with pytest.raises(ValueError):
        check_word_run((1, 4), table)
    with pytest.raises(ValueError):
        check_word_run((0,), table)


def test_word_run_is_pure():
    table = builtin_group("once_punctured_torus").table
    word = (1, 2, 3)
    first = check_word_run(word, table)
    for _ in range(5):
        assert check_word_run(word, table) == first


def test_final_state_is_leftmost_surviving_symbol():
    table = builtin_group("once_punctured_torus").table
    for word in itertools.product((1, 2, 3, 4), repeat=4):
        accepted, state = check_word_run(word, table)
        if accepted:
            assert state == word[0]
        else:
            assert state == 0


def test_torus_acceptance_matches_free_reduction():
    table = builtin_group("once_punctured_torus").table
    for length in range(1, 7):
        for word in itertools.product((1, 2, 3, 4), repeat=length):
            assert check_word_run(word, table)[0] == torus_accepts(word)


def test_klein_acceptance_matches_vector_oracle():
    table = builtin_group("klein_four").table
    for length in range(1, 7):
        for word in itertools.product((1, 2, 3), repeat=length):
            assert check_word_run(word, table)[0] == klein_accepts(word)


def test_prefix_monotonicity():
    for name in ("once_punctured_torus", "klein_four"):
        group = builtin_group(name)
        digits = range(1, group.m + 1)
        for length in range(1, 6):
            for word in itertools.product(digits, repeat=length):
                if not check_word_run(word, group.table)[0]:
                    for g in digits:
                        assert not check_word_run((g,) + word, group.table)[0]


def test_acceptance_counts_torus():
    group = builtin_group("once_punctured_torus")
    for depth in range(1, 7):
        count = sum(
            check_word_run(decode_index(n, 4, depth), group.table)[0]
            for n in range(4**depth)
        )
        assert count == 4 * 3 ** (depth - 1)


def test_letters_to_digits_plain():
    torus = builtin_group("once_punctured_torus")
    assert letters_to_digits("abA", torus) == (1, 2, 3)
    assert letters_to_digits("Ba", torus) == (4, 1)
    assert letters_to_digits("", torus) == ()
    with pytest.raises(ValueError) as err:
        letters_to_digits("abX", torus)
    assert "'X'" in str(err.value) and "2" in str(err.value)


def test_letters_to_digits_parenthesized():
    klein = builtin_group("klein_four")
    assert letters_to_digits("(a)(b)(ab)", klein) == (1, 2, 3)
    assert letters_to_digits("(ab)", klein) == (3,)
    with pytest.raises(ValueError):
        letters_to_digits("(a)(c)", klein)
    with pytest.raises(ValueError):
        letters_to_digits("(a", klein)
    with pytest.raises(ValueError):
        letters_to_digits("x(a)", klein)
    # greedy longest match without parentheses
    assert letters_to_digits("ab", klein) == (3,)
    assert letters_to_digits("ba", klein) == (2, 1)


def test_digits_to_letters():
    torus = builtin_group("once_punctured_torus")
    assert digits_to_letters((4, 1), torus) == "Ba"
    assert digits_to_letters((), torus) == ""
    klein = builtin_group("klein_four")
    assert digits_to_letters((1, 2, 3), klein) == "(a)(b)(ab)"
    with pytest.raises(ValueError):
        digits_to_letters((5,), torus)


def test_letters_roundtrip_exhaustive():
    for name in ("once_punctured_torus", "klein_four"):
        group = builtin_group(name)
        for length in range(0, 4):
            for word in itertools.product(range(1, group.m + 1), repeat=length):
                assert letters_to_digits(digits_to_letters(word, group), group) == word


def test_free_reduce_oracle_sanity():
    assert free_reduce((1, 3)) == ()
    assert free_reduce((2, 1, 3)) == (2,)
    assert free_reduce((1, 2, 3)) == (1, 2, 3)


def test_load_group_file_roundtrip(tmp_path):
    torus = builtin_group("once_punctured_torus")
    lines = ["4", "a b A B"]
    lines += [" ".join(str(v) for v in row) for row in torus.table.cells.tolist()]
    path = tmp_path / "free_two.grp"
    path.write_text("\n".join(lines) + "\n")
    loaded = load_group_file(path)
    assert loaded.name == "free_two"
    assert loaded.alphabet == torus.alphabet
    assert np.array_equal(loaded.table.cells, torus.table.cells)
    assert loaded.generators is None


def test_load_group_file_trailing_whitespace(tmp_path):
    path = tmp_path / "k4.grp"
    rows = ["3  ", "a b ab\t", "0 1 2 3 ", "1 0 3 2", "2 3 0 1  ", "3 2 1 0", "", ""]
    path.write_text("\n".join(rows))
    loaded = load_group_file(path)
    assert loaded.table.cells.tolist() == [list(r) for r in KLEIN_FOUR_TABLE]


def test_load_group_file_errors(tmp_path):
    path = tmp_path / "bad.grp"
    path.write_text("x\na b\n")
    with pytest.raises(ValueError):
        load_group_file(path)
    path.write_text("2\na\n0 1 2\n1 0 0\n2 0 0\n")
    with pytest.raises(ValueError):
        load_group_file(path)
    path.write_text("2\na b\n0 1 2\n1 0 0\n")
    with pytest.raises(ValueError):
        load_group_file(path)
    # table rows that break the acceptor invariants
    path.write_text("2\na b\n0 1 2\n1 0 0\n2 0 9\n")
    with pytest.raises(ValueError):
        load_group_file(path)
