"""Irreducible components of simple orthomatroids and disjoint unions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .axioms import is_orthomatroid, rank
from .errors import NotOrthomatroid, NotSimple, NotTransitive
from .orthoset import Orthoset, bits, closure, induced, members


@dataclass(frozen=True)
class ComponentPartition:
    """Blocks are bitmasks ordered by smallest member; ``index[x]`` is x's block."""

    blocks: tuple[int, ...]
    index: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> list[int]:
        return [b.bit_count() for b in self.blocks]


def _require_simple(M: Orthoset) -> None:
    for x in range(M.n):
        cl = closure(M, 1 << x)
        if cl != 1 << x:
            raise NotSimple(x, members(cl))


def similar(M: Orthoset, x: int, y: int, check: bool = True) -> bool:
    """``x ~ y`` iff the closure of ``{x, y}`` does not have exactly two elements."""
    if check:
        _require_simple(M)
    return closure(M, 1 << x | 1 << y).bit_count() != 2


def similarity_rows(M: Orthoset) -> list[int]:
    """``rows[x]`` is the bitmask of elements similar to ``x``."""
    rows = [0] * M.n
    for x in range(M.n):
        rows[x] |= 1 << x
        for y in range(x + 1, M.n):
            if closure(M, 1 << x | 1 << y).bit_count() != 2:
                rows[x] |= 1 << y
                rows[y] |= 1 << x
    return rows


def components(M: Orthoset, check: bool = True) -> ComponentPartition:
    """Partition a simple orthomatroid into its similarity classes.

    Transitivity is verified rather than assumed; a failure raises
    :class:`NotTransitive` with the first offending triple.
    """
    _require_simple(M)
    if check:
        verdict = is_orthomatroid(M)
        if not verdict:
            raise NotOrthomatroid(verdict)
    rows = similarity_rows(M)
    for x in range(M.n):
        for y in bits(rows[x]):
            stray = rows[y] & ~rows[x]
            if stray:
                raise NotTransitive(x, y, (stray & -stray).bit_length() - 1)
    blocks: list[int] = []
    index = [-1] * M.n
    for x in range(M.n):
        if index[x] == -1:
            for y in bits(rows[x]):
                index[y] = len(blocks)
            blocks.append(rows[x])
    return ComponentPartition(tuple(blocks), tuple(index))


def is_irreducible(M: Orthoset, check: bool = True) -> bool:
    return M.n >= 1 and len(components(M, check)) == 1


def component_orthosets(M: Orthoset, partition: ComponentPartition) -> list[Orthoset]:
    return [induced(M, block)[0] for block in partition.blocks]


def component_ranks(M: Orthoset, partition: ComponentPartition) -> list[int]:
    """Rank of each block's closure, assuming ``M`` was already checked."""
    return [rank(M, block, check=False) for block in partition.blocks]


def disjoint_union(parts: Sequence[Orthoset]) -> Orthoset:
    """Tagged union: elements of different parts are always orthogonal.

    Part ``i`` occupies a contiguous index range after parts ``0..i-1``.
    """
    total = sum(p.n for p in parts)
    full = (1 << total) - 1
    perp: list[int] = []
    offset = 0
    for part in parts:
        own = ((1 << part.n) - 1) << offset
        for x in range(part.n):
            perp.append((part.perp[x] << offset) | (full & ~own))
        offset += part.n
    labels = None
    if any(p.labels is not None for p in parts):
        labels = tuple(f"{i}.{p.name(x)}" for i, p in enumerate(parts) for x in range(p.n))
    return Orthoset(total, tuple(perp), labels)
