"""Independence, orthoindependence and the orthomatroid axioms.

The exchange and straightening checks only quantify over *closed* sets.
Since ``(F + y)^perp = F^perp & {y}^perp = (cl(F) + y)^perp``, the closure of
``F + y`` depends on ``F`` only through ``cl(F)``, so running over the closed
sets gives the same verdict as running over the whole powerset.

Witness iteration order: closed sets in canonical order (cardinality, then
members lexicographically), then ``y`` ascending, then ``x`` ascending.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

from .errors import NotInClosure, NotOrthoindependent, NotOrthomatroid, RankMismatch
from .lattice import closed_sets
from .orthoset import Orthoset, bits, canonical_key, closure, members, orthocomplement

RANK_VERIFY_MAX_N = 16


class Axiom(str, enum.Enum):
    EXCHANGE = "exchange"
    STRAIGHTENING = "straightening"
    ORTHOBASIS = "orthobasis"


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: Axiom
    holds: bool
    closed_sets_checked: int
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom.value,
            "holds": self.holds,
            "witness": self.witness,
            "closed_sets_checked": self.closed_sets_checked,
        }


@dataclass(frozen=True)
class OrthomatroidVerdict:
    exchange: AxiomVerdict
    straightening: AxiomVerdict

    @property
    def holds(self) -> bool:
        return self.exchange.holds and self.straightening.holds

    def __bool__(self) -> bool:
        return self.holds

    def __iter__(self):
        return iter((self.exchange, self.straightening))


@dataclass(frozen=True)
class Orthobasis:
    elements: int
    spans: int

    @property
    def size(self) -> int:
        return self.elements.bit_count()


def is_orthoindependent(M: Orthoset, F: int) -> bool:
    return find_non_orthogonal_pair(M, F) is None


def find_non_orthogonal_pair(M: Orthoset, F: int) -> tuple[int, int] | None:
    for x in bits(F):
        rest = F & ~(1 << x) & ~M.perp[x]
        if rest:
            return x, (rest & -rest).bit_length() - 1
    return None


def is_independent(M: Orthoset, F: int) -> bool:
    """No member lies in the closure of the others."""
    return all(not closure(M, F & ~(1 << x)) >> x & 1 for x in bits(F))


def maximal_orthoindependent(M: Orthoset, within: int) -> list[int]:
    """All maximal pairwise-orthogonal subsets of ``within`` (Bron-Kerbosch with pivot)."""
    found: list[int] = []
    perp = M.perp

    def expand(chosen: int, cand: int, excluded: int) -> None:
        if not cand and not excluded:
            found.append(chosen)
            return
        pivot = max(bits(cand | excluded), key=lambda u: (perp[u] & cand).bit_count())
        for v in bits(cand & ~perp[pivot]):
            bit = 1 << v
            expand(chosen | bit, cand & perp[v], excluded & perp[v])
            cand &= ~bit
            excluded |= bit

    expand(0, within, 0)
    found.sort(key=canonical_key)
    return found


def _closed(M: Orthoset, closed: list[int] | None) -> list[int]:
    return closed_sets(M) if closed is None else closed


def check_exchange(M: Orthoset, closed: list[int] | None = None) -> AxiomVerdict:
    closed = _closed(M, closed)
    for count, F in enumerate(closed, start=1):
        outside = M.full & ~F
        grown = {z: closure(M, F | 1 << z) for z in bits(outside)}
        for y in bits(outside):
            for x in bits(grown[y] & ~F):
                if not grown[x] >> y & 1:
                    return AxiomVerdict(Axiom.EXCHANGE, False, count, {"F": members(F), "x": x, "y": y})
    return AxiomVerdict(Axiom.EXCHANGE, True, len(closed))


def check_straightening(M: Orthoset, closed: list[int] | None = None) -> AxiomVerdict:
    closed = _closed(M, closed)
    for count, F in enumerate(closed, start=1):
        comp = orthocomplement(M, F)
        spans = [closure(M, F | 1 << y) for y in bits(comp)]
        reachable = 0
        for s in spans:
            reachable |= s
        missing = M.full & ~F & ~reachable
        if missing:
            x = (missing & -missing).bit_length() - 1
            return AxiomVerdict(Axiom.STRAIGHTENING, False, count, {"F": members(F), "x": x, "y": None})
    return AxiomVerdict(Axiom.STRAIGHTENING, True, len(closed))


def check_orthobasis_axiom(M: Orthoset, closed: list[int] | None = None) -> AxiomVerdict:
    """Every maximal orthoindependent subset of every closed set spans it."""
    closed = _closed(M, closed)
    for count, C in enumerate(closed, start=1):
        for J in maximal_orthoindependent(M, C):
            spanned = closure(M, J)
            if spanned != C:
                gap = C & ~spanned
                x = (gap & -gap).bit_length() - 1
                witness = {"F": members(C), "x": x, "y": None, "J": members(J)}
                return AxiomVerdict(Axiom.ORTHOBASIS, False, count, witness)
    return AxiomVerdict(Axiom.ORTHOBASIS, True, len(closed))


def is_orthomatroid(M: Orthoset, closed: list[int] | None = None) -> OrthomatroidVerdict:
    closed = _closed(M, closed)
    return OrthomatroidVerdict(check_exchange(M, closed), check_straightening(M, closed))


def _require_orthomatroid(M: Orthoset) -> None:
    verdict = is_orthomatroid(M)
    if not verdict:
        raise NotOrthomatroid(verdict)


def complete_orthobasis(M: Orthoset, F: int, I: int = 0, check: bool = True) -> Orthobasis:
    """Extend the orthoindependent set ``I`` to an orthobasis of ``cl(F)``.

    Greedy in ascending element order.  ``check=False`` skips the
    orthomatroid test when the caller has already done it.
    """
    if check:
        _require_orthomatroid(M)
    bad = find_non_orthogonal_pair(M, I)
    if bad is not None:
        raise NotOrthoindependent(members(I), bad)
    target = closure(M, F)
    if I & ~target:
        outside = I & ~target
        raise NotInClosure(members(I), members(target), (outside & -outside).bit_length() - 1)

    basis = I
    room = target & orthocomplement(M, basis)
    while room:
        low = room & -room
        basis |= low
        room &= M.perp[low.bit_length() - 1]

    spans = closure(M, basis)
    assert I & ~basis == 0 and is_orthoindependent(M, basis)
    if spans != target:
        # only reachable when the straightening property fails
        raise NotOrthomatroid()
    return Orthobasis(basis, spans)


def orthobases(M: Orthoset, F: int) -> Iterator[int]:
    """Maximal orthoindependent subsets of ``cl(F)``."""
    yield from maximal_orthoindependent(M, closure(M, F))


def rank(M: Orthoset, F: int | None = None, verify: bool | None = None, check: bool = True) -> int:
    """Size of any orthobasis of ``cl(F)`` (``F`` defaults to the whole ground set).

    With ``verify`` (default on for ``n <= 16``) every maximal
    orthoindependent subset of ``cl(F)`` is enumerated and must have the
    same size.
    """
    if F is None:
        F = M.full
    basis = complete_orthobasis(M, F, 0, check=check)
    if verify is None:
        verify = M.n <= RANK_VERIFY_MAX_N
    if verify:
        sizes = {J.bit_count() for J in orthobases(M, F)}
        if sizes != {basis.size}:
            raise RankMismatch(sizes | {basis.size})
    return basis.size
