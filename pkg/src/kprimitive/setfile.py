"""Reading and writing set files.

One element per line, either a decimal integer or a factored form such as
``2^3*5*11^2``.  Blank lines and lines starting with ``#`` are ignored;
duplicates and elements <= 1 are errors.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable, TextIO

from .errors import SetFileError
from .primitivity import IntegerSet

__all__ = ["parse_element", "parse_set", "read_set_file", "format_set", "write_set_file"]

_FACTOR = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_element(token: str) -> int:
    token = token.replace(" ", "").replace("\t", "")
    if not token:
        raise ValueError("empty element")
    if token.isdigit():
        return int(token)
    value = 1
    for part in token.split("*"):
        m = _FACTOR.match(part)
        if not m:
            raise ValueError(f"cannot parse {token!r}")
        value *= int(m.group(1)) ** int(m.group(2) or 1)
    return value


def parse_set(lines: Iterable[str]) -> IntegerSet:
    seen: dict[int, int] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            n = parse_element(line)
        except ValueError as exc:
            raise SetFileError(str(exc), lineno) from None
        if n <= 1:
            raise SetFileError(f"element {n} must exceed 1", lineno)
        if n in seen:
            raise SetFileError(f"duplicate element {n} (first on line {seen[n]})", lineno)
        seen[n] = lineno
    return IntegerSet(seen)


def read_set_file(path: str | Path | TextIO) -> IntegerSet:
    if hasattr(path, "read"):
        return parse_set(path.read().splitlines())
    with open(path, encoding="utf-8") as fh:
        return parse_set(fh.read().splitlines())


def format_set(A: IntegerSet, factored: bool = False, header: str | None = None) -> str:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    for n in A:
        lines.append(str(A.factorizations[n]) if factored else str(n))
    return "\n".join(lines) + "\n"


def write_set_file(A: IntegerSet, path: str | Path, factored: bool = False, header: str | None = None) -> None:
    Path(path).write_text(format_set(A, factored, header), encoding="utf-8")
