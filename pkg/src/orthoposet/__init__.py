"""Monoidal posets on Weyl-group orbits of orthogonal root sets and their Artin-monoid action."""
from .coxeter_hecke import CoxeterGroup, HeckeElement, Poly, compute_C, hecke_gen, hecke_mul
from .h_elements import HTable, build_htable, h_value, v_chain, verify_h_relations, verify_h_well_defined
from .orbit import Orbit, OrthoSet, enumerate_orbit, is_admissible_def, is_admissible_moves, make_orthoset
from .poset import EdgeClass, MonoidalPoset, build_poset, classify_edge, compare, verify_order_axioms
from .representation import RepReport, matrix_of_generator, tau, tau_word, verify_braid
from .root_system import DiagramType, RootSystem, build_root_system, parse_root
from .tables import orbit_classes, seed_from_table

__all__ = [
    "CoxeterGroup",
    "DiagramType",
    "EdgeClass",
    "HTable",
    "HeckeElement",
    "MonoidalPoset",
    "Orbit",
    "OrthoSet",
    "Poly",
    "RepReport",
    "RootSystem",
    "build_htable",
    "build_poset",
    "build_root_system",
    "classify_edge",
    "compare",
    "compute_C",
    "enumerate_orbit",
    "h_value",
    "hecke_gen",
    "hecke_mul",
    "is_admissible_def",
    "is_admissible_moves",
    "make_orthoset",
    "matrix_of_generator",
    "orbit_classes",
    "parse_root",
    "seed_from_table",
    "tau",
    "tau_word",
    "v_chain",
    "verify_braid",
    "verify_h_relations",
    "verify_h_well_defined",
    "verify_order_axioms",
]
