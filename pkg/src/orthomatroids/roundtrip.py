"""Atom orthosets of lattices, simplification, and isomorphism tests."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .axioms import is_orthomatroid
from .errors import NotOrthomatroid, OrthoError, NotPropositionalSystem
from .lattice import OrthoLattice, atoms_below, build_lattice, check_atomistic, is_propositional_system
from .orthoset import Orthoset, bits, closure, new_orthoset


@dataclass(frozen=True)
class OrthoIso:
    """Bijection ``mapping[x]`` from the first ground set onto the second."""

    mapping: tuple[int, ...]

    def inverse(self) -> "OrthoIso":
        inv = [0] * len(self.mapping)
        for x, y in enumerate(self.mapping):
            inv[y] = x
        return OrthoIso(tuple(inv))

    def then(self, other: "OrthoIso") -> "OrthoIso":
        return OrthoIso(tuple(other.mapping[y] for y in self.mapping))


@dataclass(frozen=True)
class LatticeIso:
    mapping: tuple[int, ...]


def orthoset_of_lattice(S: OrthoLattice, check: bool = True) -> Orthoset:
    """Orthoset on the atoms of ``S`` with ``p perp q`` iff ``p <= q'``.

    Atoms keep the lattice's node order; labels are the node labels.
    """
    if check:
        report = is_propositional_system(S)
        if not report:
            raise NotPropositionalSystem(report)
    atoms = S.atoms
    pairs = [
        (a, b)
        for a in range(len(atoms))
        for b in range(a + 1, len(atoms))
        if S.leq(atoms[a], S.ortho[atoms[b]])
    ]
    return new_orthoset(len(atoms), pairs, [S.node_label(p) for p in atoms])


def is_simple(M: Orthoset) -> bool:
    return all(closure(M, 1 << x) == 1 << x for x in range(M.n))


def simplify(M: Orthoset, check: bool = True) -> tuple[Orthoset, tuple[int, ...]]:
    """Simple orthomatroid with the same lattice, and the map ``x -> atom cl({x})``."""
    if check:
        verdict = is_orthomatroid(M)
        if not verdict:
            raise NotOrthomatroid(verdict)
    L = build_lattice(M)
    simple = orthoset_of_lattice(L, check=False)
    position = {node: k for k, node in enumerate(L.atoms)}
    quotient = tuple(position[L.index[closure(M, 1 << x)]] for x in range(M.n))
    return simple, quotient


def _invariant(M: Orthoset, v: int) -> tuple[int, tuple[int, ...]]:
    return M.degree(v), tuple(sorted(M.degree(u) for u in bits(M.perp[v])))


def iso_obstruction(M1: Orthoset, M2: Orthoset) -> str | None:
    """A cheap invariant telling the two orthosets apart, if one does."""
    if M1.n != M2.n:
        return f"element counts differ: {M1.n} vs {M2.n}"
    e1, e2 = len(M1.pairs()), len(M2.pairs())
    if e1 != e2:
        return f"orthogonal pair counts differ: {e1} vs {e2}"
    d1 = sorted(M1.degree(v) for v in range(M1.n))
    d2 = sorted(M2.degree(v) for v in range(M2.n))
    if d1 != d2:
        return f"degree sequences differ: {d1} vs {d2}"
    if sorted(_invariant(M1, v) for v in range(M1.n)) != sorted(_invariant(M2, v) for v in range(M2.n)):
        return "neighbour-degree multisets differ"
    return None


def _search_order(M: Orthoset) -> list[int]:
    # next vertex: most orthogonal partners among those already placed
    order: list[int] = []
    placed = 0
    remaining = set(range(M.n))
    while remaining:
        v = max(remaining, key=lambda u: ((M.perp[u] & placed).bit_count(), M.degree(u), -u))
        order.append(v)
        placed |= 1 << v
        remaining.remove(v)
    return order


def iter_ortho_isomorphisms(M1: Orthoset, M2: Orthoset) -> Iterator[OrthoIso]:
    """All relation-preserving bijections, found by backtracking."""
    if iso_obstruction(M1, M2) is not None:
        return
    n = M1.n
    inv2: dict[tuple, list[int]] = {}
    for w in range(n):
        inv2.setdefault(_invariant(M2, w), []).append(w)
    cands = [inv2.get(_invariant(M1, v), []) for v in range(n)]
    order = _search_order(M1)
    mapping = [-1] * n
    used = [False] * n

    def extend(depth: int) -> Iterator[OrthoIso]:
        if depth == n:
            yield OrthoIso(tuple(mapping))
            return
        v = order[depth]
        for w in cands[v]:
            if used[w]:
                continue
            if all(M1.orthogonal(v, u) == M2.orthogonal(w, mapping[u]) for u in order[:depth]):
                mapping[v] = w
                used[w] = True
                yield from extend(depth + 1)
                used[w] = False
                mapping[v] = -1

    yield from extend(0)


def ortho_isomorphic(M1: Orthoset, M2: Orthoset) -> OrthoIso | None:
    return next(iter_ortho_isomorphisms(M1, M2), None)


def is_ortho_isomorphism(M1: Orthoset, M2: Orthoset, iso: OrthoIso) -> bool:
    m = iso.mapping
    if M1.n != M2.n or sorted(m) != list(range(M2.n)):
        return False
    return all(
        M1.orthogonal(x, y) == M2.orthogonal(m[x], m[y]) for x in range(M1.n) for y in range(M1.n)
    )


def is_lattice_isomorphism(L1: OrthoLattice, L2: OrthoLattice, f: tuple[int, ...]) -> bool:
    k = L1.size
    if L2.size != k or sorted(f) != list(range(k)):
        return False
    if any(f[L1.ortho[i]] != L2.ortho[f[i]] for i in range(k)):
        return False
    return all(L1.leq(i, j) == L2.leq(f[i], f[j]) for i in range(k) for j in range(k))


def lattice_obstruction(L1: OrthoLattice, L2: OrthoLattice) -> str | None:
    if L1.size != L2.size:
        return f"node counts differ: {L1.size} vs {L2.size}"
    if len(L1.atoms) != len(L2.atoms):
        return f"atom counts differ: {len(L1.atoms)} vs {len(L2.atoms)}"
    h1, h2 = L1.height(), L2.height()
    if h1 != h2:
        return f"heights differ: {h1} vs {h2}"
    return None


def _direct_lattice_isos(L1: OrthoLattice, L2: OrthoLattice) -> Iterator[tuple[int, ...]]:
    k = L1.size

    def profile(L: OrthoLattice, i: int) -> tuple[int, int]:
        ups = L.above(i)
        downs = sum(1 for j in range(L.size) if L.leq(j, i))
        return len(ups), downs

    by_profile: dict[tuple, list[int]] = {}
    for w in range(k):
        by_profile.setdefault(profile(L2, w), []).append(w)
    cands = [by_profile.get(profile(L1, v), []) for v in range(k)]
    order = L1.linear_extension()
    f = [-1] * k
    used = [False] * k

    def extend(depth: int) -> Iterator[tuple[int, ...]]:
        if depth == k:
            yield tuple(f)
            return
        v = order[depth]
        for w in cands[v]:
            if used[w]:
                continue
            ok = all(
                L1.leq(u, v) == L2.leq(f[u], w) and L1.leq(v, u) == L2.leq(w, f[u])
                for u in order[:depth]
            )
            ov = L1.ortho[v]
            if ok and f[ov] != -1 and L2.ortho[w] != f[ov]:
                ok = False
            if ok and ov == v and L2.ortho[w] != w:
                ok = False
            if not ok:
                continue
            f[v] = w
            used[w] = True
            yield from extend(depth + 1)
            used[w] = False
            f[v] = -1

    yield from extend(0)


def lattice_isomorphic(L1: OrthoLattice, L2: OrthoLattice) -> LatticeIso | None:
    """Order- and ortho-preserving bijection between two lattices, if any.

    For atomistic lattices the search runs over isomorphisms of the atom
    orthosets, each extended to all nodes by joins; otherwise it backtracks
    over nodes directly.  Every candidate is verified before it is returned.
    """
    if lattice_obstruction(L1, L2) is not None:
        return None
    atom_sets = None
    if check_atomistic(L1) and check_atomistic(L2):
        try:
            atom_sets = orthoset_of_lattice(L1, check=False), orthoset_of_lattice(L2, check=False)
        except OrthoError:
            # ortho map not anti-reflexive on atoms; fall through to the direct search
            atom_sets = None
    if atom_sets is not None:
        A1, A2 = atom_sets
        atoms1, atoms2 = L1.atoms, L2.atoms
        below = [atoms_below(L1, p) for p in range(L1.size)]
        pos1 = {a: k for k, a in enumerate(atoms1)}
        for phi in iter_ortho_isomorphisms(A1, A2):
            f = tuple(L2.join_all(atoms2[phi.mapping[pos1[a]]] for a in below[p]) for p in range(L1.size))
            if is_lattice_isomorphism(L1, L2, f):
                return LatticeIso(f)
        return None
    for f in _direct_lattice_isos(L1, L2):
        if is_lattice_isomorphism(L1, L2, f):
            return LatticeIso(f)
    return None
