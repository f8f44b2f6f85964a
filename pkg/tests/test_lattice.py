import json

import pytest
from hypothesis import given, settings

from orthomatroids import (
    FiniteOrthoLattice,
    atoms_below,
    build_lattice,
    check_atom_covering,
    check_atomistic,
    check_orthomodular,
    closed_sets,
    discrete,
    is_propositional_system,
    mo,
    new_orthoset,
)
from orthomatroids.errors import InvalidLattice, ResourceLimit
from orthomatroids.generators import enumerate_orthosets, random_orthoset
from orthomatroids.lattice import check_ortholattice
from orthomatroids.orthoset import mask_of

from conftest import O6_JSON
from oracles import PowersetOracle, covering_on_sets, is_orthomatroid, orthomodular_on_sets
from test_orthoset import orthosets


def o6():
    return FiniteOrthoLattice.from_json(O6_JSON)


class TestClosedSets:
    def test_triangle_is_boolean(self, triangle):
        assert len(closed_sets(triangle)) == 8

    def test_mo2(self, mo2):
        sets = closed_sets(mo2)
        assert sets == [0, 0b0001, 0b0010, 0b0100, 0b1000, 0b1111]

    def test_path(self, path3):
        assert closed_sets(path3) == [0, 0b010, 0b101, 0b111]

    def test_budget(self):
        with pytest.raises(ResourceLimit) as exc:
            closed_sets(discrete(6), node_budget=10)
        assert exc.value.limit == 10 and exc.value.reached == 11

    @pytest.mark.parametrize("n", range(1, 8))
    def test_discrete_is_powerset(self, n):
        assert len(closed_sets(discrete(n))) == 2**n


@settings(max_examples=80, deadline=None)
@given(orthosets())
def test_closed_sets_match_oracle(M):
    assert set(closed_sets(M)) == PowersetOracle.of(M).closed_sets()


def _brute_lattice_laws(L):
    k = L.size
    for i in range(k):
        for j in range(k):
            m, s = L.meet(i, j), L.join(i, j)
            lower = [z for z in range(k) if L.leq(z, i) and L.leq(z, j)]
            upper = [z for z in range(k) if L.leq(i, z) and L.leq(j, z)]
            assert m in lower and all(L.leq(z, m) for z in lower)
            assert s in upper and all(L.leq(s, z) for z in upper)
            # De Morgan
            assert L.ortho[L.join(i, j)] == L.meet(L.ortho[i], L.ortho[j])


@pytest.mark.parametrize(
    "M",
    [discrete(3), mo(2), mo(3), new_orthoset(3, [(0, 1), (1, 2)]), random_orthoset(7, 0.5, 2)],
    ids=["triangle", "mo2", "mo3", "path", "random7"],
)
def test_meet_and_join_are_bounds(M):
    L = build_lattice(M)
    _brute_lattice_laws(L)
    assert check_ortholattice(L).holds


def test_hasse_edges_are_irredundant_covers():
    M = random_orthoset(8, 0.4, seed=9)
    L = build_lattice(M)
    k = L.size
    strict = {(i, j) for i in range(k) for j in range(k) if i != j and L.leq(i, j)}
    expected = {
        (i, j) for i, j in strict if not any((i, z) in strict and (z, j) in strict for z in range(k))
    }
    assert set(L.hasse) == expected


class TestLatticeShapes:
    def test_mo2_height_and_atoms(self, mo2):
        L = build_lattice(mo2)
        assert L.size == 6 and L.height() == 2 and len(L.atoms) == 4

    def test_mo2_ortho(self, mo2):
        L = build_lattice(mo2)
        a1 = L.node_of([0])
        assert L.sets[L.ortho[a1]] == 0b0010

    def test_atoms_below(self, triangle):
        L = build_lattice(triangle)
        assert [L.sets[a] for a in atoms_below(L, L.node_of([0, 2]))] == [0b001, 0b100]


class TestPropositionalSystem:
    @pytest.mark.parametrize("M", [discrete(4), mo(3), new_orthoset(3, [(0, 1), (1, 2)])])
    def test_orthomatroids_pass(self, M):
        L = build_lattice(M)
        report = is_propositional_system(L, M)
        assert report.is_propositional_system and report.failing() == []
        assert is_propositional_system(L).is_propositional_system

    def test_catalog_agrees_with_oracle(self):
        for n in range(5):
            for M in enumerate_orthosets(n):
                o = PowersetOracle.of(M)
                L = build_lattice(M)
                assert check_orthomodular(L).holds == orthomodular_on_sets(o)
                assert check_atom_covering(L, M).holds == covering_on_sets(o)
                if is_orthomatroid(M):
                    assert is_propositional_system(L, M)

    def test_edge_plus_point_covering_fails_element_wise(self, edge_plus_point):
        L = build_lattice(edge_plus_point)
        v = check_atom_covering(L, edge_plus_point)
        assert not v.holds and v.witness["x"] == 2
        F, G, H = (L.sets[v.witness[k]] for k in ("F", "G", "H"))
        assert F == 0 and G == 0b111 and H not in (F, G)
        assert F & ~H == 0 and H & ~G == 0
        # the abstract lattice {0, {a}, {b}, E} still satisfies the covering law
        assert check_atom_covering(L).holds


class TestO6:
    def test_not_orthomodular(self):
        L = o6()
        v = check_orthomodular(L)
        assert not v.holds
        P, Q = v.witness["P"], v.witness["Q"]
        assert L.leq(P, Q) and L.meet(Q, L.join(P, L.ortho[Q])) != P
        assert (L.node_label(P), L.node_label(Q)) == ("a", "b")

    def test_is_ortholattice(self):
        assert check_ortholattice(o6()).holds

    def test_not_atomistic(self):
        # b sits above the single atom a, so it is not a join of atoms
        v = check_atomistic(o6())
        assert not v.holds and o6().node_label(v.witness["P"]) == "b"

    def test_report(self):
        report = is_propositional_system(o6())
        assert not report and "orthomodular" in report.failing()


class TestFiniteOrthoLattice:
    def test_round_trip_through_json(self, mo2):
        L = build_lattice(mo2)
        again = FiniteOrthoLattice.from_json(json.loads(L.dumps()))
        assert again.size == L.size and again.hasse == L.hasse and again.ortho == L.ortho
        assert is_propositional_system(again)

    def test_json_shape(self, mo2):
        data = build_lattice(mo2).to_json()
        assert set(data) == {"nodes", "leq_pairs", "ortho", "bottom", "top", "atoms"}
        assert data["nodes"][0] == [] and data["nodes"][-1] == [0, 1, 2, 3]

    def test_dot(self, mo2):
        dot = build_lattice(mo2).to_dot()
        assert dot.startswith("digraph lattice {")
        assert dot.count(" [label=") == 6
        assert dot.count("->") == 8 + 3
        assert 'label="a1"' in dot

    @pytest.mark.parametrize(
        "labels, pairs, ortho",
        [
            (["0", "1"], [[0, 1], [1, 0]], [1, 0]),
            (["0", "a", "b"], [[0, 1], [0, 2]], [0, 2, 1]),
            (["0", "1"], [[0, 1]], [0, 0]),
            (["0", "1"], [[0, 5]], [1, 0]),
            ([], [], []),
        ],
        ids=["cycle", "no-top", "ortho-not-perm", "range", "empty"],
    )
    def test_invalid(self, labels, pairs, ortho):
        with pytest.raises(InvalidLattice):
            FiniteOrthoLattice(labels, pairs, ortho)

    def test_missing_join(self):
        # two incomparable upper bounds of a and b, neither least
        labels = ["0", "a", "b", "c", "d", "1"]
        pairs = [[0, 1], [0, 2], [1, 3], [2, 3], [1, 4], [2, 4], [3, 5], [4, 5]]
        with pytest.raises(InvalidLattice):
            FiniteOrthoLattice(labels, pairs, [5, 4, 3, 2, 1, 0])

    def test_from_json_requires_keys(self):
        with pytest.raises(InvalidLattice):
            FiniteOrthoLattice.from_json({"nodes": ["0"]})


def test_node_of_accepts_lists_and_masks(mo2):
    L = build_lattice(mo2)
    assert L.node_of([0, 1, 2, 3]) == L.top == L.node_of(mask_of(range(4)))
