"""Text formats for inputs, plus deterministic random generators.

Formats
-------
binary string   one line of '0'/'1' characters; whitespace is ignored
weights         whitespace-separated signed decimal integers
tree            line 1: node count n; lines 2..n+1: "parent label" for
                nodes 1..n, parent 0 marking the root (exactly one);
                weighted trees carry a signed integer in the label field
"""

from __future__ import annotations

import random
import re

import numpy as np


class ParseError(ValueError):
    """Input text rejected; carries 1-based line/char of the offense."""

    def __init__(self, message: str, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}"
            if col is not None:
                where += f", char {col}"
            where += ": "
        super().__init__(where + message)


def parse_binary_string_text(text: str) -> np.ndarray:
    bits = []
    for ln, line in enumerate(text.split("\n"), start=1):
        for col, ch in enumerate(line, start=1):
            if ch in "01":
                bits.append(ord(ch) - ord("0"))
            elif not ch.isspace():
                raise ParseError(f"invalid character {ch!r}, expected '0' or '1'", ln, col)
    if not bits:
        raise ParseError("empty input, expected at least one bit", 1, 1)
    return np.array(bits, dtype=np.uint8)


def parse_weights_text(text: str) -> np.ndarray:
    weights = []
    for ln, line in enumerate(text.split("\n"), start=1):
        for m in re.finditer(r"\S+", line):
            try:
                weights.append(int(m.group()))
            except ValueError:
                raise ParseError(f"invalid integer {m.group()!r}", ln, m.start() + 1) from None
    if not weights:
        raise ParseError("empty input, expected at least one weight", 1, 1)
    return np.array(weights, dtype=np.int64)


def _int_field(tok: str, ln: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"invalid {what} {tok!r}", ln) from None


def parse_tree_text(text: str, weighted: bool = False):
    """Returns (parents, labels): 0-based parents with -1 for the root."""
    lines = text.split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines or not lines[0].strip():
        raise ParseError("missing node count", 1)
    n = _int_field(lines[0].strip(), 1, "node count")
    if n < 1:
        raise ParseError(f"node count must be >= 1, got {n}", 1)
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} node lines, found {len(lines) - 1}", len(lines))
    parents = np.empty(n, dtype=np.int64)
    labels = np.empty(n, dtype=np.int64)
    for i in range(n):
        ln = i + 2
        fields = lines[ln - 1].split()
        if len(fields) != 2:
            raise ParseError(f"expected 'parent label', got {lines[ln - 1]!r}", ln)
        parent = _int_field(fields[0], ln, "parent")
        label = _int_field(fields[1], ln, "label")
        if parent < 0 or parent > n:
            raise ParseError(f"parent {parent} out of range [0, {n}]", ln)
        if parent == i + 1:
            raise ParseError(f"node {i + 1} cannot be its own parent", ln)
        if not weighted and label not in (0, 1):
            raise ParseError(f"label must be 0 or 1, got {label}", ln)
        parents[i] = parent - 1
        labels[i] = label
    if int((parents == -1).sum()) != 1:
        raise ParseError("tree must declare exactly one root (parent 0)", 1)
    return parents, labels


def gen_string(n: int, seed: int, density: float = 0.5) -> str:
    rng = random.Random(seed)
    return "".join("1" if rng.random() < density else "0" for _ in range(n)) + "\n"


def gen_weights(n: int, seed: int) -> str:
    rng = random.Random(seed)
    return " ".join(str(rng.randint(-9, 9)) for _ in range(n)) + "\n"


def random_parents(n: int, rng: random.Random) -> list:
    """Random recursive tree: node i attaches to a uniform earlier node."""
    return [-1] + [rng.randrange(i) for i in range(1, n)]


def gen_tree(n: int, seed: int, density: float = 0.5, weighted: bool = False) -> str:
    rng = random.Random(seed)
    parents = random_parents(n, rng)
    lines = [str(n)]
    for i in range(n):
        if weighted:
            label = rng.randint(-9, 9)
        else:
            label = 1 if rng.random() < density else 0
        lines.append(f"{parents[i] + 1} {label}")
    return "\n".join(lines) + "\n"
