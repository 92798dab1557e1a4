"""Young diagrams, interlacing and horizontal strips."""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, List, Mapping, Tuple


class Partition(tuple):
    """A weakly decreasing tuple of positive integers. ``Partition()`` is the empty diagram."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """0-based part access, reading missing parts as 0."""
        return self[i] if 0 <= i < len(self) else 0

    def occupations(self) -> dict:
        counts: dict = {}
        for p in self:
            counts[p] = counts.get(p, 0) + 1
        return counts

    def serialize(self) -> str:
        return ",".join(str(p) for p in self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})" if self else "Partition(())"


EMPTY = Partition()


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return EMPTY
    return Partition(int(tok) for tok in text.split(","))


def sort_key(lam: Partition):
    """Graded order: by weight, then reverse-lexicographic within a weight."""
    return (lam.weight, tuple(-p for p in lam))


def sorted_partitions(parts: Iterable[Partition]) -> List[Partition]:
    return sorted(parts, key=sort_key)


def from_occupations(counts: Mapping[int, int]) -> Partition:
    """The partition 1^{c_1} 2^{c_2} ... with ``counts[k]`` rows of length k."""
    rows: List[int] = []
    for k, c in counts.items():
        if c < 0:
            raise ValueError(f"negative multiplicity {c} for part {k}")
        if c == 0:
            continue
        if k <= 0:
            raise ValueError("occupation index must be positive; zero-energy sites carry no rows")
        rows.extend([k] * c)
    return Partition(sorted(rows, reverse=True))


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return EMPTY
    return Partition(sum(1 for p in lam if p > j) for j in range(lam[0]))


def interlaces(nu: Partition, lam: Partition) -> bool:
    """nu_1 >= lam_1 >= nu_2 >= lam_2 >= ... (missing parts are 0)."""
    n = max(len(nu), len(lam)) + 1
    for i in range(n):
        if not nu.part(i) >= lam.part(i):
            return False
        if not lam.part(i) >= nu.part(i + 1):
            return False
    return True


def fits_in_box(lam: Partition, rows: int, cols: int) -> bool:
    return len(lam) <= rows and (not lam or lam[0] <= cols)


def _strip_additions(lam: Tuple[int, ...], n: int) -> Iterator[Tuple[int, ...]]:
    # Row i can grow up to lam[i-1] (row 0 without bound); a new row is allowed at the end.
    rows = list(lam) + [0]

    def rec(i: int, left: int, acc: List[int]):
        if i == len(rows):
            if left == 0:
                yield tuple(p for p in acc if p > 0)
            return
        limit = left if i == 0 else min(left, rows[i - 1] - rows[i])
        if i == len(rows) - 1:
            if left <= limit:
                yield tuple(p for p in acc + [rows[i] + left] if p > 0)
            return
        for add in range(limit, -1, -1):
            yield from rec(i + 1, left - add, acc + [rows[i] + add])

    yield from rec(0, n, [])


@lru_cache(maxsize=None)
def _add_strips(lam: Tuple[int, ...], n: int) -> Tuple[Partition, ...]:
    return tuple(sorted_partitions({Partition(p) for p in _strip_additions(lam, n)}))


@lru_cache(maxsize=None)
def _remove_strips(lam: Tuple[int, ...], n: int) -> Tuple[Partition, ...]:
    if n > sum(lam):
        return ()
    out = set()
    rows = list(lam)

    def rec(i: int, left: int, acc: List[int]):
        if i == len(rows):
            if left == 0:
                out.add(Partition(p for p in acc if p > 0))
            return
        # new row i must stay >= old row i+1
        floor = rows[i + 1] if i + 1 < len(rows) else 0
        for take in range(min(left, rows[i] - floor), -1, -1):
            rec(i + 1, left - take, acc + [rows[i] - take])

    rec(0, n, [])
    return tuple(sorted_partitions(out))


def add_horizontal_strips(lam: Partition, n: int) -> List[Partition]:
    """All nu with nu/lam a horizontal n-strip, in graded order."""
    if n < 0:
        return []
    return list(_add_strips(tuple(lam), n))


def remove_horizontal_strips(lam: Partition, n: int) -> List[Partition]:
    """All nu with lam/nu a horizontal n-strip, in graded order."""
    if n < 0:
        return []
    return list(_remove_strips(tuple(lam), n))


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> Tuple[Partition, ...]:
    """All partitions of n (optionally with parts <= max_part), in graded order."""
    if max_part is None:
        max_part = n
    out: List[Tuple[int, ...]] = []

    def rec(left: int, cap: int, acc: Tuple[int, ...]):
        if left == 0:
            out.append(acc)
            return
        for p in range(min(left, cap), 0, -1):
            rec(left - p, p, acc + (p,))

    rec(n, max_part, ())
    return tuple(Partition(p) for p in out)


def partitions_in_box(rows: int, cols: int) -> List[Partition]:
    out = []
    for n in range(rows * cols + 1):
        out.extend(p for p in partitions_of(n, cols) if len(p) <= rows)
    return sorted_partitions(out)


def partitions_up_to(max_weight: int) -> List[Partition]:
    out: List[Partition] = []
    for n in range(max_weight + 1):
        out.extend(partitions_of(n))
    return out
