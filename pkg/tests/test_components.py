import random

import pytest

from orthomatroids import (
    FormKind,
    FormSpec,
    components,
    discrete,
    disjoint_union,
    from_rays,
    is_irreducible,
    mo,
    new_orthoset,
    ortho_isomorphic,
    rank,
    similar,
    simplify,
)
from orthomatroids.components import component_orthosets, component_ranks
from orthomatroids.errors import NotOrthomatroid, NotSimple, NotTransitive
from orthomatroids.generators import enumerate_orthomatroids
from orthomatroids.orthoset import closure, members

from oracles import is_orthomatroid


class TestSimilar:
    def test_mo2_pair_similar(self, mo2):
        # nothing is orthogonal to both a1 and a1', so {a1, a1'} closes to everything
        assert similar(mo2, 0, 1)

    def test_mo2_across_pairs_similar(self, mo2):
        assert similar(mo2, 0, 2)

    def test_discrete_never_similar(self, triangle):
        assert not similar(triangle, 0, 1)

    def test_reflexive(self, mo2):
        assert similar(mo2, 3, 3)

    def test_requires_simple(self, path3):
        with pytest.raises(NotSimple) as exc:
            similar(path3, 0, 1)
        assert exc.value.element == 0


class TestComponents:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_discrete(self, n):
        part = components(discrete(n))
        assert len(part) == n and part.sizes == [1] * n

    @pytest.mark.parametrize("n", range(2, 6))
    def test_mo(self, n):
        part = components(mo(n))
        assert len(part) == 1 and is_irreducible(mo(n))

    def test_mo1_is_boolean(self):
        # a single orthogonal pair is the 4-element Boolean algebra
        assert len(components(mo(1))) == 2

    def test_union_of_mo(self):
        M = disjoint_union([mo(2), mo(3)])
        part = components(M)
        assert part.sizes == [4, 6]
        assert members(part.blocks[0]) == [0, 1, 2, 3]
        assert component_ranks(M, part) == [2, 2]

    def test_not_orthomatroid(self, edge_plus_point):
        with pytest.raises((NotOrthomatroid, NotSimple)):
            components(edge_plus_point)

    def test_ray_fixture_blocks(self):
        vecs = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, -1, 0]]
        M, _ = from_rays(vecs, FormSpec(FormKind.EUCLIDEAN, 3))
        part = components(M)
        assert [members(b) for b in part.blocks] == [[0, 1, 3, 4], [2]]

    def test_intransitive_similarity_detected(self):
        # simple but not an orthomatroid; skipping that check exposes the raw relation
        M = new_orthoset(5, [(0, 4), (1, 2), (1, 3), (2, 3)])
        with pytest.raises(NotTransitive) as exc:
            components(M, check=False)
        x, y, z = exc.value.triple
        assert similar(M, x, y) and similar(M, y, z) and not similar(M, x, z)


def test_components_over_catalog():
    for n in range(1, 6):
        for M0 in enumerate_orthomatroids(n):
            M, _ = simplify(M0)
            part = components(M)
            covered = 0
            for block in part.blocks:
                assert covered & block == 0
                covered |= block
            assert covered == M.full
            # elements in different blocks are orthogonal
            for x in range(M.n):
                for y in range(M.n):
                    if part.index[x] != part.index[y]:
                        assert M.orthogonal(x, y)
            assert sum(component_ranks(M, part)) == rank(M)
            rebuilt = disjoint_union(component_orthosets(M, part))
            assert ortho_isomorphic(rebuilt, M) is not None
            for C in component_orthosets(M, part):
                assert is_irreducible(C)


class TestDisjointUnion:
    def test_offsets_and_labels(self):
        M = disjoint_union([mo(1), discrete(2)])
        assert M.n == 4
        assert M.orthogonal(0, 1) and M.orthogonal(0, 2) and M.orthogonal(2, 3)
        assert M.labels == ("0.a1", "0.a1p", "1.0", "1.1")

    def test_unlabelled(self):
        assert disjoint_union([discrete(1), discrete(2)]).labels is None

    def test_discrete_union(self):
        assert disjoint_union([discrete(2), discrete(3)]) == discrete(5)

    def test_empty(self):
        assert disjoint_union([]).n == 0

    def test_rank_additivity_on_random_pairs(self):
        rng = random.Random(2024)
        catalog = [M for n in range(1, 6) for M in enumerate_orthomatroids(n)]
        for _ in range(20):
            A, B = rng.choice(catalog), rng.choice(catalog)
            U = disjoint_union([A, B])
            assert is_orthomatroid(U)
            assert rank(U) == rank(A) + rank(B)

    def test_closure_splits_over_parts(self, path3, mo2):
        U = disjoint_union([path3, mo2])
        # closing an element of the first part never reaches the second
        assert closure(U, 1 << 0) == 0b101
