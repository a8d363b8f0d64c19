"""Exact verification of Hopf-algebra module, comodule and contramodule constructions."""

from .linalg import Field, Fp, LinMap, Q, VecSpace
from .hopf import (
    GroupTable, HopfAlgebra, corpus, dual_hopf, group_algebra, sweedler_h4, taft_algebra,
    trivial_hopf, verify_hopf_axioms,
)
from .reps import BiStructure, LeftModule, RightComodule, RightContramodule
from .report import Report
from .yd import (
    YdContramodule, YdModule, check_tau_center, check_yd_contramodule, check_yd_module, iota,
    iota_inverse, is_stable, right_integrals, sigma, tensor_yd, twist_yd_contramodule,
    twist_yd_module,
)
from .functors import (
    bimodule_iso, check_adjunction, check_equalizer, check_first_periodicity, fd_equivalence_formula,
    hat, j_module, prime, prime_bimodule_iso, second_periodicity_triangle, stability_transport,
)
from .instances import random_yd_module, sweep_instances
from .fileio import ParseError, dump_hopf, dump_structure, load_hopf, load_structure, parse_hopf

__all__ = [
    "Field", "Fp", "LinMap", "Q", "VecSpace",
    "GroupTable", "HopfAlgebra", "corpus", "dual_hopf", "group_algebra", "sweedler_h4",
    "taft_algebra", "trivial_hopf", "verify_hopf_axioms",
    "BiStructure", "LeftModule", "RightComodule", "RightContramodule", "Report",
    "YdContramodule", "YdModule", "check_tau_center", "check_yd_contramodule", "check_yd_module",
    "iota", "iota_inverse", "is_stable", "right_integrals", "sigma", "tensor_yd",
    "twist_yd_contramodule", "twist_yd_module",
    "bimodule_iso", "check_adjunction", "check_equalizer", "check_first_periodicity",
    "fd_equivalence_formula", "hat", "j_module", "prime", "prime_bimodule_iso",
    "second_periodicity_triangle", "stability_transport",
    "random_yd_module", "sweep_instances",
    "ParseError", "dump_hopf", "dump_structure", "load_hopf", "load_structure", "parse_hopf",
]
