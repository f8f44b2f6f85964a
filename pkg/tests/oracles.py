"""Brute-force reference implementations used only by the tests.

Everything here works from the raw boolean relation table and quantifies
over the full powerset, straight from the definitions.  Nothing is imported
from the package apart from reading ``M.relation``.
"""

from __future__ import annotations

from itertools import combinations


def relation_of(M) -> list[list[bool]]:
    return M.relation


class PowersetOracle:
    """Complements and closures of every subset, tabulated from the relation."""

    def __init__(self, rel: list[list[bool]]):
        n = len(rel)
        self.n = n
        self.rel = rel
        self.full = (1 << n) - 1
        nbr = [sum(1 << j for j in range(n) if rel[i][j]) for i in range(n)]
        perp = [self.full] * (1 << n)
        for F in range(1, 1 << n):
            low = (F & -F).bit_length() - 1
            perp[F] = perp[F & (F - 1)] & nbr[low]
        self.perp = perp
        self.cl = [perp[perp[F]] for F in range(1 << n)]

    @classmethod
    def of(cls, M) -> "PowersetOracle":
        return cls(relation_of(M))

    def perp_direct(self, F: int) -> int:
        """Complement straight from the quantifier, no table."""
        out = 0
        for x in range(self.n):
            if all(self.rel[x][y] for y in range(self.n) if F >> y & 1):
                out |= 1 << x
        return out

    def exchange(self) -> bool:
        n, cl = self.n, self.cl
        for F in range(1 << n):
            cF = cl[F]
            for y in range(n):
                cFy = cl[F | 1 << y]
                for x in range(n):
                    if cFy >> x & 1 and not cF >> x & 1 and not cl[F | 1 << x] >> y & 1:
                        return False
        return True

    def straightening(self) -> bool:
        n, cl, perp = self.n, self.cl, self.perp
        for F in range(1 << n):
            for x in range(n):
                if cl[F] >> x & 1:
                    continue
                if not any(perp[F] >> y & 1 and cl[F | 1 << y] >> x & 1 for y in range(n)):
                    return False
        return True

    def orthoindependent(self, F: int) -> bool:
        xs = [i for i in range(self.n) if F >> i & 1]
        return all(self.rel[a][b] for a, b in combinations(xs, 2))

    def orthobasis_axiom(self) -> bool:
        """(OB) as stated: every orthoindependent I inside cl(F) extends to a basis of cl(F)."""
        n, cl = self.n, self.cl
        ortho = [B for B in range(1 << n) if self.orthoindependent(B)]
        for F in set(cl):
            for I in ortho:
                if I & ~F:
                    continue
                if not any(B & I == I and cl[B] == F for B in ortho):
                    return False
        return True

    def closed_sets(self) -> set[int]:
        return set(self.cl)

    def rank(self, F: int) -> int:
        """Largest orthoindependent subset of cl(F)."""
        target = self.cl[F]
        best = 0
        sub = target
        while True:
            if self.orthoindependent(sub):
                best = max(best, sub.bit_count())
            if sub == 0:
                break
            sub = (sub - 1) & target
        return best


def is_orthomatroid(M) -> bool:
    o = PowersetOracle.of(M)
    return o.exchange() and o.straightening()


def orthomodular_on_sets(o: PowersetOracle) -> bool:
    """Orthomodular law on L(M), from the tabulated closures."""
    closed = sorted(o.closed_sets())
    for P in closed:
        for Q in closed:
            if P & ~Q:
                continue
            join = o.cl[P | o.perp[Q]]
            if Q & join != P:
                return False
    return True


def covering_on_sets(o: PowersetOracle) -> bool:
    closed = o.closed_sets()
    for F in closed:
        for x in range(o.n):
            if F >> x & 1:
                continue
            G = o.cl[F | 1 << x]
            if any(F & ~H == 0 and H & ~G == 0 and H not in (F, G) for H in closed):
                return False
    return True
