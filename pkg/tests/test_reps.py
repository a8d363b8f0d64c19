import numpy as np
import pytest

from hopfcat.hopf import GroupTable, group_algebra, sweedler_h4
from hopfcat.reps import (
    BiStructure, LeftModule, RightComodule, change_basis_comodule, check_rigidity, comodule_from_grouplike,
    dual_comodule, hom_l, internal_hom_adjunction, invariants, is_comodule_map, is_module_map,
    module_from_character, regular_comodule, regular_module, tensor_comodules, tensor_modules,
    trivial_comodule, trivial_contramodule, trivial_module, twist_comodule, twist_contramodule,
    twist_module, verify_comodule, verify_contramodule, verify_module,
)
from hopfcat.yd import iota_contramodule
from oracles import nullity_oracle, to_lists


def test_standard_objects_verify(corpus):
    for name, h in corpus.items():
        for m in (trivial_module(h, 2), regular_module(h), twist_module(regular_module(h), 1)):
            assert verify_module(m).passed, name
        for c in (trivial_comodule(h, 2), regular_comodule(h), twist_comodule(regular_comodule(h), -1)):
            assert verify_comodule(c).passed, name
        reg = regular_comodule(h)
        for n in (trivial_contramodule(h), iota_contramodule(reg), twist_contramodule(iota_contramodule(reg), 1)):
            assert verify_contramodule(n).passed, name
        for g in h.grouplikes:
            assert verify_comodule(comodule_from_grouplike(h, g)).passed
        for chi in h.characters:
            assert verify_module(module_from_character(h, chi)).passed


def test_tensor_products_verify():
    h = sweedler_h4()
    reg = regular_comodule(h)
    assert verify_comodule(tensor_comodules(reg, reg)).passed
    assert verify_module(tensor_modules(regular_module(h), regular_module(h))).passed


def test_broken_action_reports_witness():
    h = sweedler_h4()
    m = regular_module(h)
    act = m.act3.copy()
    act[:, 1, :] = act[:, 2, :]  # g acts like x
    rep = verify_module(LeftModule.from_tensor(h, m.space, act))
    assert not rep.passed
    assert rep.failures()[0].witness is not None


def test_broken_coaction_fails():
    h = group_algebra(GroupTable.cyclic(2))
    c = RightComodule.from_tensor(h, regular_comodule(h).space, h.field.array([[[1, 0], [1, 0]], [[0, 1], [0, 1]]]))
    rep = verify_comodule(c)  # ρ(m) = m⊗(e+g)
    assert not rep["counitality"].passed


def test_rigidity_everywhere(corpus):
    for name, h in corpus.items():
        if h.dim > 6:
            continue
        assert check_rigidity(regular_comodule(h)).passed, name


def test_double_dual_needs_the_twist():
    h = sweedler_h4()
    v = regular_comodule(h)
    vss = dual_comodule(dual_comodule(v))
    assert is_comodule_map(h.field.eye(4), twist_comodule(v, 1), vss)
    assert not is_comodule_map(h.field.eye(4), v, vss)


def test_internal_hom_adjunction():
    h = sweedler_h4()
    reg, k = regular_comodule(h), trivial_comodule(h)
    for t, w, v in ((reg, reg, k), (k, reg, reg), (reg, k, reg)):
        assert internal_hom_adjunction(t, w, v).verified


def test_invariants_against_oracle():
    h = sweedler_h4()
    reg = regular_comodule(h)
    from hopfcat.reps import invariants_matrix
    rows = to_lists(invariants_matrix(reg, reg))
    # Hom(H, H)^H = End of the regular comodule has dimension dim H
    assert invariants(reg, reg).dim == nullity_oracle(rows, 16) == 4


def test_change_of_basis_is_an_isomorphism():
    h = sweedler_h4()
    reg = regular_comodule(h)
    P = h.field.array([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 2], [0, 0, 0, 1]])
    c = change_basis_comodule(reg, P)
    assert verify_comodule(c).passed
    assert is_comodule_map(P, reg, c)
    assert not is_comodule_map(h.field.eye(4), reg, c)
    assert is_module_map(h.field.eye(4), regular_module(h), regular_module(h))


def test_bistructure_requires_exactly_one_partner():
    h = sweedler_h4()
    with pytest.raises(ValueError):
        BiStructure(regular_module(h))
    with pytest.raises(ValueError):
        BiStructure(trivial_module(h), comodule=regular_comodule(h))


def test_hom_l_is_a_comodule():
    h = sweedler_h4()
    reg = regular_comodule(h)
    assert verify_comodule(hom_l(reg, trivial_comodule(h, 2))).passed
