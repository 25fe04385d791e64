"""Strict partitions, shifted skew diagrams, and shape statistics.

Cells are (row, column) pairs with rows counted from the bottom (French
notation); the shifted diagram of a strict partition puts row i at columns
i .. i + parts[i-1] - 1, i.e. cells {(i, j) : 0 < i <= j < i + parts[i-1]}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InvalidShapeError

Cell = tuple[int, int]


@dataclass(frozen=True, order=False)
class StrictPartition:
    """A strictly decreasing sequence of positive integers; () is empty."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        p = tuple(int(x) for x in self.parts)
        object.__setattr__(self, "parts", p)
        for i, x in enumerate(p):
            if x <= 0:
                raise ValueError(f"parts must be positive: {p}")
            if i + 1 < len(p) and p[i + 1] >= x:
                raise ValueError(f"parts must strictly decrease: {p}")

    @classmethod
    def parse(cls, text: str) -> "StrictPartition":
        """Parse the comma-separated form, e.g. "4,2,1"; "" is empty."""
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(int(t) for t in text.split(",")))

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """The i-th part (1-indexed); 0 beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def cells(self) -> frozenset[Cell]:
        return frozenset(
            (i, j)
            for i, p in enumerate(self.parts, start=1)
            for j in range(i, i + p)
        )

    def sort_key(self) -> tuple:
        """Graded-lex key: by size, then decreasing lexicographic on parts."""
        return (self.size, tuple(-x for x in self.parts))


EMPTY = StrictPartition(())


def delta(m: int) -> StrictPartition:
    """The staircase (m, m-1, ..., 2, 1)."""
    return StrictPartition(tuple(range(m, 0, -1)))


def contains(mu: StrictPartition, lam: StrictPartition) -> bool:
    """True iff mu_i <= lam_i for all i (missing parts read as 0)."""
    return len(mu) <= len(lam) and all(
        m <= l for m, l in zip(mu.parts, lam.parts)
    )


@dataclass(frozen=True)
class SkewShape:
    """A pair outer/inner; valid iff inner is contained in outer.

    Invalid pairs are representable (their tableau sets are empty and the
    associated generating functions are zero); operations that need a genuine
    diagram raise InvalidShapeError.
    """

    outer: StrictPartition
    inner: StrictPartition = EMPTY

    @classmethod
    def parse(cls, text: str) -> "SkewShape":
        """Parse "outer/inner"; a bare "outer" means inner is empty."""
        outer, _, inner = text.partition("/")
        return cls(StrictPartition.parse(outer), StrictPartition.parse(inner))

    def __str__(self) -> str:
        return f"{self.outer}/{self.inner}"

    @property
    def valid(self) -> bool:
        return contains(self.inner, self.outer)

    def require_valid(self) -> None:
        if not self.valid:
            raise InvalidShapeError(f"inner not contained in outer: {self}")

    def cells(self) -> frozenset[Cell]:
        self.require_valid()
        return self.outer.cells() - self.inner.cells()

    def sorted_cells(self) -> tuple[Cell, ...]:
        """Cells in reading order: by row from the bottom, then by column."""
        return tuple(sorted(self.cells()))

    @property
    def size(self) -> int:
        return len(self.cells())

    def row_interval(self, i: int) -> tuple[int, int]:
        """Half-open column interval [start, stop) of skew cells in row i."""
        return (i + self.inner.part(i), i + self.outer.part(i))


def straight(lam: StrictPartition) -> SkewShape:
    return SkewShape(lam, EMPTY)


@dataclass(frozen=True)
class ShapeStats:
    cols: int
    overlap: int
    is_vertical_strip: bool


def shape_stats(shape: SkewShape) -> ShapeStats:
    """Column count, vertical-adjacency count, and the vertical-strip flag."""
    cells = shape.cells()
    cols = len({j for _, j in cells})
    overlap = sum(1 for (i, j) in cells if (i - 1, j) in cells)
    rows = [i for i, _ in cells]
    vstrip = len(rows) == len(set(rows))
    return ShapeStats(cols=cols, overlap=overlap, is_vertical_strip=vstrip)


def _graded_lex_sorted(ps: Iterable[StrictPartition]) -> list[StrictPartition]:
    return sorted(ps, key=StrictPartition.sort_key)


def vertical_strip_extensions(mu: StrictPartition) -> list[StrictPartition]:
    """All strict lam >= mu of the same length with lam/mu a vertical strip.

    These are exactly the shapes mu + e_S for subsets S of rows, kept when
    still strictly decreasing; includes mu itself.  Graded-lex order.
    """
    out = []
    n = len(mu)
    for mask in itertools.product((0, 1), repeat=n):
        parts = tuple(p + m for p, m in zip(mu.parts, mask))
        if all(parts[i] > parts[i + 1] for i in range(n - 1)):
            out.append(StrictPartition(parts))
    return _graded_lex_sorted(out)


def vertical_strip_extensions_signed(
    mu: StrictPartition,
) -> tuple[list[StrictPartition], list[StrictPartition]]:
    """The split of the extensions by the sign (-1)^(cols + strip size)."""
    plus, minus = [], []
    for lam in vertical_strip_extensions(mu):
        shape = SkewShape(lam, mu)
        st = shape_stats(shape)
        (plus if (st.cols + shape.size) % 2 == 0 else minus).append(lam)
    return plus, minus


def vertical_strip_subsets(lam: StrictPartition) -> list[StrictPartition]:
    """All strict mu <= lam of the same length with lam/mu a vertical strip."""
    out = []
    n = len(lam)
    for mask in itertools.product((0, 1), repeat=n):
        parts = tuple(p - m for p, m in zip(lam.parts, mask))
        if all(x > 0 for x in parts) and all(
            parts[i] > parts[i + 1] for i in range(n - 1)
        ):
            out.append(StrictPartition(parts))
    return _graded_lex_sorted(out)


def removable_boxes(mu: StrictPartition) -> frozenset[Cell]:
    """Cells whose removal leaves the diagram of a strict partition.

    Such a cell is the last one of its row; row i qualifies iff it is the
    final row or its part exceeds the next part by at least two.
    """
    out = set()
    n = len(mu)
    for i, p in enumerate(mu.parts, start=1):
        if i == n or p - mu.parts[i] >= 2:
            out.add((i, i + p - 1))
    return frozenset(out)


def doubleslash_inners(mu: StrictPartition) -> list[StrictPartition]:
    """All strict nu <= mu with every cell of mu/nu a removable box of mu."""
    rows = sorted(i for i, _ in removable_boxes(mu))
    out = []
    for k in range(len(rows) + 1):
        for chosen in itertools.combinations(rows, k):
            parts = list(mu.parts)
            for i in chosen:
                parts[i - 1] -= 1
            while parts and parts[-1] == 0:
                parts.pop()
            if all(parts[i] > parts[i + 1] for i in range(len(parts) - 1)) and all(
                x > 0 for x in parts
            ):
                out.append(StrictPartition(tuple(parts)))
    return _graded_lex_sorted(set(out))


def _shape_from_cells(cells: frozenset[Cell]) -> SkewShape:
    """Reconstruct outer/inner from a cell set whose rows are intervals.

    Rows above the top occupied one are absent; empty rows in between (and an
    empty bottom stretch) get the minimal padding outer_r = inner_r that keeps
    both partitions strict.
    """
    if not cells:
        raise ValueError("cannot reconstruct an empty shape")
    top = max(i for i, _ in cells)
    outer = [0] * top
    inner = [0] * top
    for r in range(top, 0, -1):
        row = sorted(j for i, j in cells if i == r)
        if row:
            if row != list(range(row[0], row[-1] + 1)):
                raise InvalidShapeError(f"row {r} is not an interval: {row}")
            outer[r - 1] = row[-1] - r + 1
            inner[r - 1] = row[0] - r
        else:
            pad = outer[r] + 1 if r < top else 1
            outer[r - 1] = pad
            inner[r - 1] = pad
        if outer[r - 1] <= 0 or inner[r - 1] < 0:
            raise InvalidShapeError("cell set is not a shifted skew diagram")
    while inner and inner[-1] == 0:
        inner.pop()
    try:
        shape = SkewShape(StrictPartition(tuple(outer)), StrictPartition(tuple(inner)))
    except ValueError as exc:
        raise InvalidShapeError(f"cell set is not a shifted skew diagram: {exc}")
    shape.require_valid()
    return shape


def flip(shape: SkewShape) -> SkewShape:
    """Reflect the diagram across the anti-diagonal direction.

    The bottom row becomes the rightmost column: cell (i, j) maps to
    (c - j, c - i) with c = (least occupied row) + (greatest occupied column),
    and the image is re-read as a skew shape of strict partitions.
    """
    shape.require_valid()
    cells = shape.cells()
    if not cells:
        return shape
    c = min(i for i, _ in cells) + max(j for _, j in cells)
    flipped = frozenset((c - j, c - i) for i, j in cells)
    out = _shape_from_cells(flipped)
    if len(out.cells()) != len(cells):
        raise InvalidShapeError(f"flip broke the diagram of {shape}")
    return out


def enumerate_strict_partitions(
    max_size: int,
    max_length: int | None = None,
    max_part: int | None = None,
) -> list[StrictPartition]:
    """All strict partitions of size <= max_size, graded-lex, no duplicates."""
    if max_size < 0:
        raise ValueError("max_size must be >= 0")
    out = [EMPTY]

    def extend(prefix: list[int], remaining: int) -> None:
        if max_length is not None and len(prefix) >= max_length:
            return
        top = min(remaining, (prefix[-1] - 1) if prefix else remaining)
        if max_part is not None:
            top = min(top, max_part)
        for nxt in range(top, 0, -1):
            prefix.append(nxt)
            out.append(StrictPartition(tuple(prefix)))
            extend(prefix, remaining - nxt)
            prefix.pop()

    extend([], max_size)
    return _graded_lex_sorted(set(out))


def strict_partitions_of(size: int, max_length: int | None = None) -> list[StrictPartition]:
    """Strict partitions of exactly `size`, in decreasing lex order."""
    return sorted(
        (p for p in enumerate_strict_partitions(size, max_length=max_length) if p.size == size),
        key=lambda p: tuple(-x for x in p.parts),
    )


def subshapes(lam: StrictPartition) -> list[StrictPartition]:
    """All strict mu contained in lam, graded-lex order."""
    out = [EMPTY]

    def rec(i: int, prefix: list[int]) -> None:
        if i >= len(lam):
            return
        hi = lam.parts[i] if not prefix else min(lam.parts[i], prefix[-1] - 1)
        for v in range(hi, 0, -1):
            prefix.append(v)
            out.append(StrictPartition(tuple(prefix)))
            rec(i + 1, prefix)
            prefix.pop()

    rec(0, [])
    return _graded_lex_sorted(out)
