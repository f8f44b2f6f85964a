"""Orthosets, orthomatroids and the lattices of their bi-orthogonally closed sets."""

from .axioms import (
    Axiom,
    AxiomVerdict,
    Orthobasis,
    check_exchange,
    check_orthobasis_axiom,
    check_straightening,
    complete_orthobasis,
    is_independent,
    is_orthoindependent,
    is_orthomatroid,
    rank,
)
from .components import ComponentPartition, components, disjoint_union, is_irreducible, similar
from .errors import OrthoError
from .generators import FormKind, FormSpec, Ray, discrete, enumerate_orthomatroids, from_rays, mo, random_orthoset
from .lattice import (
    ClosedSetLattice,
    FiniteOrthoLattice,
    OrthoLattice,
    PropSysReport,
    atoms_below,
    build_lattice,
    check_atom_covering,
    check_atomistic,
    check_orthomodular,
    closed_sets,
    is_propositional_system,
)
from .orthoset import (
    Law,
    LawReport,
    Orthoset,
    check_closure_laws,
    check_galois,
    closure,
    new_orthoset,
    orthocomplement,
)
from .roundtrip import (
    LatticeIso,
    OrthoIso,
    is_simple,
    lattice_isomorphic,
    ortho_isomorphic,
    orthoset_of_lattice,
    simplify,
)

__version__ = "0.1.0"
