import io

import pytest

from kprimitive.errors import SetFileError
from kprimitive.primitivity import IntegerSet
from kprimitive.setfile import format_set, parse_element, parse_set, read_set_file, write_set_file


def test_parse_element_forms():
    assert parse_element("150") == 150
    assert parse_element("2^3*5*11^2") == 8 * 5 * 121
    assert parse_element(" 2 ^ 4 ") == 16


def test_comments_and_blank_lines():
    A = parse_set(["# header", "", "6", "  10  ", "# note", "15"])
    assert list(A) == [6, 10, 15]


@pytest.mark.parametrize(
    "lines,lineno,fragment",
    [
        (["6", "1"], 2, "exceed 1"),
        (["6", "abc"], 2, "cannot parse"),
        (["6", "# c", "2*3"], 3, "duplicate"),
        (["0"], 1, "exceed 1"),
    ],
)
def test_errors_carry_line_numbers(lines, lineno, fragment):
    with pytest.raises(SetFileError) as info:
        parse_set(lines)
    assert info.value.lineno == lineno
    assert fragment in str(info.value)


def test_roundtrip(tmp_path):
    A = IntegerSet([30, 49, 121, 2**40 * 3])
    for factored in (False, True):
        path = tmp_path / f"set_{factored}.txt"
        write_set_file(A, path, factored=factored, header="demo set")
        assert read_set_file(path) == A
    assert read_set_file(io.StringIO(format_set(A))) == A
