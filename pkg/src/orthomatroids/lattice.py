"""Lattices of closed sets and propositional-system certification.

Two lattice flavours share one interface:

* :class:`ClosedSetLattice` -- the closed subsets of an orthoset, ordered by
  inclusion, with complement as orthocomplementation.
* :class:`FiniteOrthoLattice` -- an abstract lattice read from JSON, given by
  order pairs and an ortho map (used for negative controls such as O6 and
  for round-tripping exported lattices).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidLattice, ResourceLimit
from .orthoset import Orthoset, bits, canonical_key, closure, mask_of, orthocomplement

DEFAULT_NODE_BUDGET = 50_000


def closed_sets(M: Orthoset, node_budget: int = DEFAULT_NODE_BUDGET) -> list[int]:
    """All closed subsets of ``M`` in canonical order.

    Every closed set is an intersection of singleton complements ``{x}^perp``
    (with the empty intersection being the whole ground set), so the family
    is generated by breadth-first intersection starting from ``E``.
    """
    seen = {M.full}
    queue = deque([M.full])
    while queue:
        C = queue.popleft()
        for row in M.perp:
            D = C & row
            if D not in seen:
                seen.add(D)
                if len(seen) > node_budget:
                    raise ResourceLimit("closed-set count", node_budget, len(seen))
                queue.append(D)
    if 0 not in seen:
        seen.add(0)
        if len(seen) > node_budget:
            raise ResourceLimit("closed-set count", node_budget, len(seen))
    return sorted(seen, key=canonical_key)


class OrthoLattice:
    """Common interface: nodes are ``0..size-1``.

    Subclasses provide ``leq``, ``meet``, ``join``, ``join_all`` and fill in
    ``ortho``, ``bottom``, ``top`` and ``hasse`` (pairs ``(i, j)`` where
    ``j`` covers ``i``).
    """

    size: int
    ortho: tuple[int, ...]
    bottom: int
    top: int
    hasse: tuple[tuple[int, int], ...]

    def leq(self, i: int, j: int) -> bool:
        raise NotImplementedError

    def meet(self, i: int, j: int) -> int:
        raise NotImplementedError

    def join(self, i: int, j: int) -> int:
        raise NotImplementedError

    def join_all(self, nodes: Iterable[int]) -> int:
        out = self.bottom
        for v in nodes:
            out = self.join(out, v)
        return out

    def node_label(self, i: int) -> str:
        raise NotImplementedError

    def node_json(self, i: int):
        return self.node_label(i)

    def above(self, i: int) -> list[int]:
        return [j for j in range(self.size) if self.leq(i, j)]

    def _cover_set(self) -> frozenset[tuple[int, int]]:
        cached = getattr(self, "_covers_cache", None)
        if cached is None:
            cached = frozenset(self.hasse)
            self._covers_cache = cached
        return cached

    def covers(self, upper: int, lower: int) -> bool:
        """True iff ``upper`` covers ``lower``."""
        return (lower, upper) in self._cover_set()

    @property
    def atoms(self) -> tuple[int, ...]:
        return tuple(sorted(j for i, j in self.hasse if i == self.bottom))

    def linear_extension(self) -> list[int]:
        raise NotImplementedError

    def height(self) -> int:
        """Length of the longest chain from bottom to top."""
        up: dict[int, list[int]] = {}
        for i, j in self.hasse:
            up.setdefault(i, []).append(j)
        depth = [0] * self.size
        for i in self.linear_extension():
            for j in up.get(i, ()):
                depth[j] = max(depth[j], depth[i] + 1)
        return depth[self.top] if self.size else 0

    def to_json(self) -> dict:
        return {
            "nodes": [self.node_json(i) for i in range(self.size)],
            "leq_pairs": [list(e) for e in self.hasse],
            "ortho": list(self.ortho),
            "bottom": self.bottom,
            "top": self.top,
            "atoms": list(self.atoms),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def to_dot(self) -> str:
        atoms = set(self.atoms)
        lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=box];"]
        for i in range(self.size):
            attrs = [f"label={json.dumps(self.node_label(i), ensure_ascii=False)}"]
            if i in atoms:
                attrs.append('style=filled, fillcolor="lightblue"')
            lines.append(f"  n{i} [{', '.join(attrs)}];")
        for i, j in self.hasse:
            lines.append(f"  n{i} -> n{j};")
        for i, k in enumerate(self.ortho):
            if i < k:
                lines.append(
                    f'  n{i} -> n{k} [dir=none, style=dashed, color="gray", constraint=false, label="⊥"];'
                )
        lines.append("}")
        return "\n".join(lines) + "\n"


class ClosedSetLattice(OrthoLattice):
    """The lattice L(M) of closed subsets of an orthoset."""

    def __init__(self, M: Orthoset, sets: Sequence[int]):
        self.orthoset = M
        self.sets = tuple(sets)
        self.size = len(self.sets)
        self.index = {s: i for i, s in enumerate(self.sets)}
        self.ortho = tuple(self.index[orthocomplement(M, s)] for s in self.sets)
        self.bottom = self.index[0]
        self.top = self.index[M.full]
        self.hasse = self._compute_hasse()

    def _compute_hasse(self) -> tuple[tuple[int, int], ...]:
        # every upper cover of F is cl(F + x) for some x outside F
        M = self.orthoset
        edges = []
        for i, F in enumerate(self.sets):
            cands = {closure(M, F | 1 << x) for x in bits(M.full & ~F)}
            for G in cands:
                if not any(H != G and H & ~G == 0 for H in cands):
                    edges.append((i, self.index[G]))
        edges.sort()
        return tuple(edges)

    def leq(self, i: int, j: int) -> bool:
        return self.sets[i] & ~self.sets[j] == 0

    def meet(self, i: int, j: int) -> int:
        return self.index[self.sets[i] & self.sets[j]]

    def join(self, i: int, j: int) -> int:
        return self.index[closure(self.orthoset, self.sets[i] | self.sets[j])]

    def join_all(self, nodes: Iterable[int]) -> int:
        union = 0
        for v in nodes:
            union |= self.sets[v]
        return self.index[closure(self.orthoset, union)]

    def node_of(self, elements: Iterable[int] | int) -> int:
        mask = elements if isinstance(elements, int) else mask_of(elements)
        return self.index[mask]

    def node_label(self, i: int) -> str:
        s = self.sets[i]
        if s.bit_count() == 1:
            return self.orthoset.name(s.bit_length() - 1)
        return self.orthoset.describe(s)

    def node_json(self, i: int):
        return list(bits(self.sets[i]))

    def linear_extension(self) -> list[int]:
        return list(range(self.size))


class FiniteOrthoLattice(OrthoLattice):
    """Abstract finite lattice given by its order and an ortho map.

    ``down[i]`` is the bitmask of nodes below ``i`` (``i`` included).
    """

    def __init__(self, labels: Sequence[str], leq_pairs: Iterable[Sequence[int]], ortho: Sequence[int]):
        k = len(labels)
        self.size = k
        self.labels = tuple(labels)
        down = [1 << i for i in range(k)]
        for p in leq_pairs:
            if len(p) != 2 or not all(isinstance(v, int) and 0 <= v < k for v in p):
                raise InvalidLattice(f"malformed order pair {p!r}")
            down[p[1]] |= 1 << p[0]
        # transitive closure (Warshall on bitmask rows)
        for m in range(k):
            bit = 1 << m
            for j in range(k):
                if down[j] & bit:
                    down[j] |= down[m]
        up = [0] * k
        for j in range(k):
            for i in bits(down[j]):
                up[i] |= 1 << j
        for i in range(k):
            for j in bits(down[i] & up[i]):
                if j != i:
                    raise InvalidLattice(f"order is not antisymmetric on nodes {i} and {j}")
        self.down = tuple(down)
        self.up = tuple(up)
        self._by_down = {d: i for i, d in enumerate(down)}
        self._by_up = {u: i for i, u in enumerate(up)}
        full = (1 << k) - 1
        if k == 0:
            raise InvalidLattice("a lattice needs at least one node")
        bottoms = [i for i in range(k) if up[i] == full]
        tops = [i for i in range(k) if down[i] == full]
        if not bottoms or not tops:
            raise InvalidLattice("order has no least or no greatest element")
        self.bottom, self.top = bottoms[0], tops[0]
        for i in range(k):
            for j in range(i + 1, k):
                # the meet is the common lower bound whose down-set is all of them
                if (down[i] & down[j]) not in self._by_down:
                    raise InvalidLattice(f"nodes {i} and {j} have no meet")
                if (up[i] & up[j]) not in self._by_up:
                    raise InvalidLattice(f"nodes {i} and {j} have no join")
        if sorted(ortho) != list(range(k)) or len(ortho) != k:
            raise InvalidLattice("ortho must be a permutation of the nodes")
        self.ortho = tuple(ortho)
        edges = []
        for j in range(k):
            for i in bits(down[j]):
                if i != j and (up[i] & down[j]).bit_count() == 2:
                    edges.append((i, j))
        edges.sort()
        self.hasse = tuple(edges)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def meet(self, i: int, j: int) -> int:
        return self._by_down[self.down[i] & self.down[j]]

    def join(self, i: int, j: int) -> int:
        return self._by_up[self.up[i] & self.up[j]]

    def above(self, i: int) -> list[int]:
        return list(bits(self.up[i]))

    def node_label(self, i: int) -> str:
        return self.labels[i]

    def linear_extension(self) -> list[int]:
        return sorted(range(self.size), key=lambda i: (self.down[i].bit_count(), i))

    @classmethod
    def from_json(cls, data: dict) -> "FiniteOrthoLattice":
        if not isinstance(data, dict) or not {"nodes", "leq_pairs", "ortho"} <= data.keys():
            raise InvalidLattice("lattice JSON needs keys 'nodes', 'leq_pairs' and 'ortho'")
        labels = [_label_of(v) for v in data["nodes"]]
        return cls(labels, data["leq_pairs"], data["ortho"])

    @classmethod
    def from_lattice(cls, L: OrthoLattice) -> "FiniteOrthoLattice":
        return cls([L.node_label(i) for i in range(L.size)], L.hasse, L.ortho)


def _label_of(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, list):
        return "{" + ",".join(str(v) for v in value) + "}"
    return json.dumps(value)


def build_lattice(M: Orthoset, node_budget: int = DEFAULT_NODE_BUDGET) -> ClosedSetLattice:
    return ClosedSetLattice(M, closed_sets(M, node_budget))


def atoms_below(L: OrthoLattice, F: int) -> list[int]:
    return [a for a in L.atoms if L.leq(a, F)]


@dataclass(frozen=True)
class LatticeVerdict:
    property: str
    holds: bool
    witness: dict | None = None
    note: str | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self, L: OrthoLattice | None = None) -> dict:
        witness = self.witness
        if witness is not None and L is not None:
            witness = {
                k: (L.node_label(v) if k != "x" and v is not None else v)
                for k, v in witness.items()
            }
        out = {"property": self.property, "holds": self.holds, "witness": witness}
        if self.note:
            out["note"] = self.note
        return out


def check_complete(L: OrthoLattice) -> LatticeVerdict:
    return LatticeVerdict(
        "complete", True, note="finite lattice: every subset has a meet and a join"
    )


def check_ortholattice(L: OrthoLattice) -> LatticeVerdict:
    """Ortho is an order-reversing involution with P ^ P' = 0 and P v P' = 1."""
    for p in range(L.size):
        q = L.ortho[p]
        if L.ortho[q] != p:
            return LatticeVerdict("ortholattice", False, {"P": p})
        if L.meet(p, q) != L.bottom or L.join(p, q) != L.top:
            return LatticeVerdict("ortholattice", False, {"P": p})
        for r in L.above(p):
            if not L.leq(L.ortho[r], q):
                return LatticeVerdict("ortholattice", False, {"P": p, "Q": r})
    return LatticeVerdict("ortholattice", True)


def check_orthomodular(L: OrthoLattice) -> LatticeVerdict:
    """``P <= Q`` implies ``P == Q ^ (P v Q')``; witness is the first failing (P, Q)."""
    for p in range(L.size):
        for q in L.above(p):
            if L.meet(q, L.join(p, L.ortho[q])) != p:
                return LatticeVerdict("orthomodular", False, {"P": p, "Q": q})
    return LatticeVerdict("orthomodular", True)


def check_atomistic(L: OrthoLattice) -> LatticeVerdict:
    for p in range(L.size):
        if L.join_all(atoms_below(L, p)) != p:
            return LatticeVerdict("atomistic", False, {"P": p})
    return LatticeVerdict("atomistic", True)


def _between(L: OrthoLattice, low: int, high: int) -> int | None:
    for h in L.above(low):
        if h != low and h != high and L.leq(h, high):
            return h
    return None


def check_atom_covering(L: OrthoLattice, M: Orthoset | None = None) -> LatticeVerdict:
    """Covering law.

    With an orthoset ``M`` (and ``L`` its closed-set lattice): for every
    closed ``F`` and ``x`` outside it, ``cl(F + x)`` covers ``F``.  Without
    one: for every node ``F`` and atom ``p`` not below it, ``F v p`` covers
    ``F``.  Witness carries an intermediate node ``H``.
    """
    if M is not None:
        if not isinstance(L, ClosedSetLattice):
            raise InvalidLattice("element-based covering check needs the closed-set lattice of M")
        for f, F in enumerate(L.sets):
            for x in bits(M.full & ~F):
                g = L.index[closure(M, F | 1 << x)]
                if not L.covers(g, f):
                    return LatticeVerdict(
                        "atom_covering", False, {"F": f, "x": x, "G": g, "H": _between(L, f, g)}
                    )
        return LatticeVerdict("atom_covering", True)
    atoms = L.atoms
    for f in range(L.size):
        for p in atoms:
            if L.leq(p, f):
                continue
            g = L.join(f, p)
            if not L.covers(g, f):
                return LatticeVerdict(
                    "atom_covering", False, {"F": f, "p": p, "G": g, "H": _between(L, f, g)}
                )
    return LatticeVerdict("atom_covering", True)


@dataclass(frozen=True)
class PropSysReport:
    complete: LatticeVerdict
    atomistic: LatticeVerdict
    ortholattice: LatticeVerdict
    orthomodular: LatticeVerdict
    atom_covering: LatticeVerdict
    order: tuple[str, ...] = field(
        default=("complete", "atomistic", "ortholattice", "orthomodular", "atom_covering"),
        repr=False,
    )

    def verdicts(self) -> list[LatticeVerdict]:
        return [getattr(self, name) for name in self.order]

    @property
    def is_propositional_system(self) -> bool:
        return all(v.holds for v in self.verdicts())

    def __bool__(self) -> bool:
        return self.is_propositional_system

    def failing(self) -> list[str]:
        return [v.property for v in self.verdicts() if not v.holds]

    def to_json(self, L: OrthoLattice | None = None) -> dict:
        return {
            "is_propositional_system": self.is_propositional_system,
            "properties": [v.to_json(L) for v in self.verdicts()],
        }


def is_propositional_system(L: OrthoLattice, M: Orthoset | None = None) -> PropSysReport:
    """Run all five checks; the orthomodularity check assumes only a lattice with ortho map."""
    return PropSysReport(
        complete=check_complete(L),
        atomistic=check_atomistic(L),
        ortholattice=check_ortholattice(L),
        orthomodular=check_orthomodular(L),
        atom_covering=check_atom_covering(L, M),
    )
