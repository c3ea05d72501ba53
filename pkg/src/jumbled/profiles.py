"""The index surface: per-size min/max 1-count profiles, occurrence
queries, profile merging, and the profile CSV format."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .inputs import ParseError
from .minplus import INF, NEG_INF

CSV_HEADER = "size,min_ones,max_ones"
SUMS_CSV_HEADER = "size,max_sum"


@dataclass(frozen=True)
class Profile:
    """min_ones[i-1] / max_ones[i-1] are the extrema over windows or
    connected subgraphs of size i; sentinel entries mark infeasible sizes."""

    min_ones: np.ndarray
    max_ones: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "min_ones", np.asarray(self.min_ones, dtype=np.int64))
        object.__setattr__(self, "max_ones", np.asarray(self.max_ones, dtype=np.int64))
        if self.min_ones.shape != self.max_ones.shape or self.min_ones.ndim != 1:
            raise ValueError("profile arrays must be 1-d and of equal length")

    @property
    def n(self) -> int:
        return int(self.min_ones.size)

    @staticmethod
    def infeasible(n: int) -> "Profile":
        """Neutral element of merge_profiles: no size is realizable."""
        return Profile(np.full(n, INF, dtype=np.int64), np.full(n, NEG_INF, dtype=np.int64))

    def occurs(self, i: int, j: int) -> bool:
        return occurs(self, i, j)

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return bool(np.array_equal(self.min_ones, other.min_ones)
                    and np.array_equal(self.max_ones, other.max_ones))


def occurs(p: Profile, i: int, j: int) -> bool:
    """True iff some window/subgraph of size i has exactly j ones.

    Out-of-domain arguments answer False. Two array reads, no scan.
    """
    if i < 1 or i > p.n:
        return False
    return bool(p.min_ones[i - 1] <= j <= p.max_ones[i - 1])


def merge_profiles(a: Profile, b: Profile) -> Profile:
    """Pointwise fold; the shorter operand counts as infeasible beyond its end."""
    n = max(a.n, b.n)
    mins = np.full(n, INF, dtype=np.int64)
    maxs = np.full(n, NEG_INF, dtype=np.int64)
    np.minimum(mins[:a.n], a.min_ones, out=mins[:a.n])
    np.minimum(mins[:b.n], b.min_ones, out=mins[:b.n])
    np.maximum(maxs[:a.n], a.max_ones, out=maxs[:a.n])
    np.maximum(maxs[:b.n], b.max_ones, out=maxs[:b.n])
    return Profile(mins, maxs)


def write_profile_csv(p: Profile, path) -> None:
    if p.n < 1:
        raise ValueError("cannot serialize an empty profile")
    if p.min_ones.max() >= INF or p.max_ones.min() <= NEG_INF:
        raise ValueError("cannot serialize a profile with infeasible sizes")
    with open(path, "w", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for i in range(p.n):
            fh.write(f"{i + 1},{int(p.min_ones[i])},{int(p.max_ones[i])}\n")


def read_profile_csv(path) -> Profile:
    with open(path, "r") as fh:
        lines = fh.read().split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines or lines[0] != CSV_HEADER:
        raise ParseError(f"expected header {CSV_HEADER!r}", 1)
    mins, maxs = [], []
    for ln, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != 3:
            raise ParseError(f"expected 3 comma-separated fields, got {line!r}", ln)
        try:
            size, lo, hi = (int(f) for f in fields)
        except ValueError:
            raise ParseError(f"non-integer field in {line!r}", ln) from None
        if size != ln - 1:
            raise ParseError(f"expected size {ln - 1}, got {size}", ln)
        if not 0 <= lo <= hi <= size:
            raise ParseError(f"requires 0 <= min <= max <= size, got {lo}, {hi}", ln)
        mins.append(lo)
        maxs.append(hi)
    if not mins:
        raise ParseError("profile has no rows", 2)
    return Profile(np.array(mins, dtype=np.int64), np.array(maxs, dtype=np.int64))


def write_sums_csv(values, path) -> None:
    """Weighted results: values[i-1] = maximum weight sum at size i."""
    arr = np.asarray(values, dtype=np.int64)
    if arr.size < 1:
        raise ValueError("cannot serialize an empty result")
    with open(path, "w", newline="") as fh:
        fh.write(SUMS_CSV_HEADER + "\n")
        for i in range(arr.size):
            fh.write(f"{i + 1},{int(arr[i])}\n")
