"""Finite orthosets, orthogonal complement and bi-orthogonal closure.

Subsets of the ground set ``{0, ..., n-1}`` are plain Python ints used as
bitmasks: bit ``i`` set means element ``i`` belongs to the subset.  Every
function here is pure; an :class:`Orthoset` never changes after construction.
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidInstance, NotSymmetric, OutOfRange, SelfOrthogonal

DEFAULT_EXHAUSTIVE_LIMIT = 1 << 20
DEFAULT_SAMPLE_SIZE = 4096
DEFAULT_SEED = 20240101


def bits(mask: int) -> Iterator[int]:
    """Yield the members of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> list[int]:
    return list(bits(mask))


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key for subsets: by cardinality, then lexicographically by members."""
    return (mask.bit_count(), tuple(bits(mask)))


@dataclass(frozen=True)
class Orthoset:
    """A finite set with a symmetric, anti-reflexive orthogonality relation.

    ``perp[i]`` is the bitmask of elements orthogonal to ``i``.  Labels are
    cosmetic; all semantics use indices.
    """

    n: int
    perp: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInstance(f"element count must be non-negative, got {self.n}")
        if len(self.perp) != self.n:
            raise InvalidInstance(f"expected {self.n} neighbourhood masks, got {len(self.perp)}")
        full = self.full
        for i, row in enumerate(self.perp):
            if row >> i & 1:
                raise SelfOrthogonal(i)
            if row & ~full:
                raise OutOfRange(row.bit_length() - 1, self.n)
            for j in bits(row):
                if not self.perp[j] >> i & 1:
                    raise NotSymmetric(i, j)
        if self.labels is not None and len(self.labels) != self.n:
            raise InvalidInstance(f"expected {self.n} labels, got {len(self.labels)}")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def orthogonal(self, i: int, j: int) -> bool:
        return bool(self.perp[i] >> j & 1)

    def pairs(self) -> list[tuple[int, int]]:
        """Orthogonal pairs ``(i, j)`` with ``i < j``, in lexicographic order."""
        return [(i, j) for i in range(self.n) for j in bits(self.perp[i] >> (i + 1) << (i + 1))]

    @property
    def relation(self) -> list[list[bool]]:
        return [[self.orthogonal(i, j) for j in range(self.n)] for i in range(self.n)]

    def name(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def describe(self, mask: int) -> str:
        return "{" + ",".join(self.name(i) for i in bits(mask)) + "}"

    def degree(self, i: int) -> int:
        return self.perp[i].bit_count()

    def to_json(self) -> dict:
        out: dict = {"n": self.n}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        out["orthogonal_pairs"] = [list(p) for p in self.pairs()]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict) -> "Orthoset":
        if not isinstance(data, dict) or "n" not in data:
            raise InvalidInstance("orthoset JSON must be an object with key 'n'")
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise InvalidInstance(f"'n' must be a non-negative integer, got {n!r}")
        raw_pairs = data.get("orthogonal_pairs", [])
        if not isinstance(raw_pairs, list):
            raise InvalidInstance("'orthogonal_pairs' must be a list")
        pairs = []
        for p in raw_pairs:
            if (
                not isinstance(p, (list, tuple))
                or len(p) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in p)
            ):
                raise InvalidInstance(f"malformed pair {p!r}")
            pairs.append((p[0], p[1]))
        labels = data.get("labels")
        if labels is not None:
            if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
                raise InvalidInstance("'labels' must be a list of strings")
        return new_orthoset(n, pairs, labels)

    @classmethod
    def loads(cls, text: str) -> "Orthoset":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInstance(f"invalid JSON: {exc}") from exc
        return cls.from_json(data)


def new_orthoset(
    n: int, pairs: Iterable[Sequence[int]], labels: Sequence[str] | None = None
) -> Orthoset:
    """Build an orthoset from a list of orthogonal pairs (either order, duplicates ok).

    Self-pairs are rejected, never dropped.
    """
    if n < 0:
        raise InvalidInstance(f"element count must be non-negative, got {n}")
    perp = [0] * n
    for i, j in pairs:
        for v in (i, j):
            if not 0 <= v < n:
                raise OutOfRange(v, n)
        if i == j:
            raise SelfOrthogonal(i)
        perp[i] |= 1 << j
        perp[j] |= 1 << i
    return Orthoset(n, tuple(perp), tuple(labels) if labels is not None else None)


def orthocomplement(M: Orthoset, F: int) -> int:
    """Elements orthogonal to every member of ``F``."""
    out = M.full
    perp = M.perp
    while F and out:
        low = F & -F
        out &= perp[low.bit_length() - 1]
        F ^= low
    return out


def closure(M: Orthoset, F: int) -> int:
    return orthocomplement(M, orthocomplement(M, F))


def is_closed(M: Orthoset, F: int) -> bool:
    return closure(M, F) == F


def induced(M: Orthoset, mask: int) -> tuple[Orthoset, list[int]]:
    """Restriction of ``M`` to ``mask``, plus the list mapping new indices to old."""
    keep = members(mask)
    pos = {old: new for new, old in enumerate(keep)}
    perp = tuple(mask_of(pos[j] for j in bits(M.perp[i] & mask)) for i in keep)
    labels = tuple(M.name(i) for i in keep) if M.labels is not None else None
    return Orthoset(len(keep), perp, labels), keep


class Law(str, enum.Enum):
    SYMMETRY = "symmetry"
    ANTI_REFLEXIVITY = "anti_reflexivity"
    GALOIS_DISJOINT = "galois_disjoint"
    GALOIS_ADJUNCTION = "galois_adjunction"
    EXTENSIVITY = "extensivity"
    MONOTONY = "monotony"
    IDEMPOTENCE = "idempotence"


@dataclass(frozen=True)
class LawReport:
    law: Law
    holds: bool
    checked_count: int
    exhaustive: bool = True
    witness: dict | None = None

    def to_json(self) -> dict:
        return {
            "law": self.law.value,
            "holds": self.holds,
            "exhaustive": self.exhaustive,
            "checked_count": self.checked_count,
            "witness": self.witness,
        }


def check_relation(M: Orthoset) -> list[LawReport]:
    """Re-verify symmetry and anti-reflexivity of the stored relation."""
    sym_witness = None
    anti_witness = None
    for i in range(M.n):
        if anti_witness is None and M.orthogonal(i, i):
            anti_witness = {"x": i}
        for j in range(M.n):
            if sym_witness is None and M.orthogonal(i, j) != M.orthogonal(j, i):
                sym_witness = {"x": i, "y": j}
    return [
        LawReport(Law.SYMMETRY, sym_witness is None, M.n * M.n, witness=sym_witness),
        LawReport(Law.ANTI_REFLEXIVITY, anti_witness is None, M.n, witness=anti_witness),
    ]


def _perp_table(M: Orthoset) -> np.ndarray:
    """``table[F]`` is the orthocomplement of subset ``F``, for all ``2**n`` subsets."""
    table = np.empty(1 << M.n, dtype=np.int64)
    table[0] = M.full
    for i in range(M.n):
        half = 1 << i
        table[half : 2 * half] = table[:half] & M.perp[i]
    return table


def _subset_witness(F: int, G: int | None = None) -> dict:
    w = {"F": members(F)}
    if G is not None:
        w["G"] = members(G)
    return w


def _pair_sampler(M: Orthoset, sample_size: int, seed: int):
    rng = random.Random(seed)
    for _ in range(sample_size):
        yield rng.getrandbits(M.n) if M.n else 0, rng.getrandbits(M.n) if M.n else 0


def check_galois(
    M: Orthoset,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    seed: int = DEFAULT_SEED,
) -> list[LawReport]:
    """Check ``F & F^perp == 0`` and ``G <= F^perp  <=>  F <= G^perp``.

    Single-subset laws run over all ``2**n`` subsets when that count fits in
    ``exhaustive_limit``; pair laws need ``4**n`` evaluations to be
    exhaustive.  Otherwise a seeded sample of ``sample_size`` draws is used.
    """
    reports = []
    if (1 << M.n) <= exhaustive_limit:
        table = _perp_table(M)
        subsets = np.arange(1 << M.n, dtype=np.int64)
        bad = np.nonzero(subsets & table)[0]
        witness = _subset_witness(int(bad[0])) if len(bad) else None
        reports.append(LawReport(Law.GALOIS_DISJOINT, witness is None, 1 << M.n, True, witness))
    else:
        witness = None
        rng = random.Random(seed)
        for _ in range(sample_size):
            F = rng.getrandbits(M.n)
            if F & orthocomplement(M, F):
                witness = _subset_witness(F)
                break
        reports.append(LawReport(Law.GALOIS_DISJOINT, witness is None, sample_size, False, witness))

    if (1 << (2 * M.n)) <= exhaustive_limit:
        table = _perp_table(M)
        subsets = np.arange(1 << M.n, dtype=np.int64)
        witness = None
        for F in range(1 << M.n):
            lhs = (subsets & ~table[F]) == 0  # G <= F^perp
            rhs = (F & ~table) == 0  # F <= G^perp
            bad = np.nonzero(lhs != rhs)[0]
            if len(bad):
                witness = _subset_witness(F, int(bad[0]))
                break
        reports.append(
            LawReport(Law.GALOIS_ADJUNCTION, witness is None, 1 << (2 * M.n), True, witness)
        )
    else:
        witness = None
        for F, G in _pair_sampler(M, sample_size, seed):
            lhs = G & ~orthocomplement(M, F) == 0
            rhs = F & ~orthocomplement(M, G) == 0
            if lhs != rhs:
                witness = _subset_witness(F, G)
                break
        reports.append(LawReport(Law.GALOIS_ADJUNCTION, witness is None, sample_size, False, witness))
    return reports


def check_closure_laws(
    M: Orthoset,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    seed: int = DEFAULT_SEED,
) -> list[LawReport]:
    """Check extensivity, monotony and idempotence of the bi-orthogonal closure."""
    reports = []
    size = 1 << M.n
    if size <= exhaustive_limit:
        table = _perp_table(M)
        subsets = np.arange(size, dtype=np.int64)
        clos = table[table]
        bad = np.nonzero(subsets & ~clos)[0]
        witness = _subset_witness(int(bad[0])) if len(bad) else None
        reports.append(LawReport(Law.EXTENSIVITY, witness is None, size, True, witness))
    else:
        rng = random.Random(seed)
        witness = None
        for _ in range(sample_size):
            F = rng.getrandbits(M.n)
            if F & ~closure(M, F):
                witness = _subset_witness(F)
                break
        reports.append(LawReport(Law.EXTENSIVITY, witness is None, sample_size, False, witness))

    if size * size <= exhaustive_limit:
        witness = None
        checked = 0
        for F in range(size):
            supersets = (subsets & F) == F
            checked += int(supersets.sum())
            bad = np.nonzero(supersets & ((clos[F] & ~clos) != 0))[0]
            if len(bad):
                witness = _subset_witness(F, int(bad[0]))
                break
        reports.append(LawReport(Law.MONOTONY, witness is None, checked, True, witness))
    else:
        witness = None
        for F, extra in _pair_sampler(M, sample_size, seed):
            G = F | extra
            if closure(M, F) & ~closure(M, G):
                witness = _subset_witness(F, G)
                break
        reports.append(LawReport(Law.MONOTONY, witness is None, sample_size, False, witness))

    if size <= exhaustive_limit:
        bad = np.nonzero(clos[clos] != clos)[0]
        witness = _subset_witness(int(bad[0])) if len(bad) else None
        reports.append(LawReport(Law.IDEMPOTENCE, witness is None, size, True, witness))
    else:
        rng = random.Random(seed)
        witness = None
        for _ in range(sample_size):
            F = rng.getrandbits(M.n)
            once = closure(M, F)
            if closure(M, once) != once:
                witness = _subset_witness(F)
                break
        reports.append(LawReport(Law.IDEMPOTENCE, witness is None, sample_size, False, witness))
    return reports
