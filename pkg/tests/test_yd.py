import numpy as np
import pytest

from conftest import bundled_struct as load_structure
from hopfcat.hopf import GroupTable, group_algebra, sweedler_h4
from hopfcat.instances import adjoint_yd_module, one_dim_yd_modules, random_yd_module, sweep_instances
from hopfcat.reps import BiStructure, regular_comodule
from hopfcat.yd import (
    NotAYD, check_sigma, check_tau_center, check_tau_comodule_map, check_tau_on_hom, check_yd_module,
    iota, iota_inverse, is_stable, is_stable_via_tau, right_integrals, sigma, tau_from_action, tensor_yd,
    trivial_yd_module, twist_yd_module,
)
from oracles import group_integral_oracle, nullity_oracle, rank_oracle, to_lists
from hopfcat.yd import left_integral_relations, right_integral_conditions


def test_integrals_are_one_dimensional(corpus):
    for name, h in corpus.items():
        ints = right_integrals(h)
        rows = to_lists(right_integral_conditions(h))
        assert ints.J.dim == nullity_oracle(rows, h.dim, h.field.p) == 1, name
        rel = left_integral_relations(h)
        assert ints.K.space.dim == h.dim - rank_oracle(to_lists(rel), h.field.p) == 1, name


def test_group_integral_is_delta_identity():
    for g in (GroupTable.cyclic(2), GroupTable.symmetric(3)):
        h = group_algebra(g)
        J = right_integrals(h).J.basis[:, 0]
        want = group_integral_oracle(g)
        k = next(x for x in range(h.dim) if J[x] != 0)
        assert [J[x] / J[k] for x in range(h.dim)] == want


def test_adjoint_module_is_yd_at_every_charge(corpus):
    for name, h in corpus.items():
        for i in range(-2, 3):
            assert adjoint_yd_module(h, i).verified, (name, i)


def test_one_dimensional_sweedler_objects():
    h = sweedler_h4()
    # grouplikes 1, g and characters ε, sign: YD_0 needs g·χ compatibility
    assert len(one_dim_yd_modules(h, 0)) == 2
    assert len(one_dim_yd_modules(h, -1)) == 2


def test_sweedler_yd0_is_not_ayd():
    s = load_structure("sweedler_yd0")
    assert check_yd_module(s.bistructure, 0).passed
    assert not check_yd_module(s.bistructure, -1).passed
    with pytest.raises(NotAYD):
        tau_from_action(s.bistructure)


def test_tau_center_on_ayd_instances(corpus):
    for name in ("kZ2", "kS3", "sweedler_h4"):
        for m in sweep_instances(corpus[name], -1, 4, 1):
            rep = check_tau_center(m)
            assert rep.passed, (name, rep.format_text())
            assert check_tau_on_hom(m, regular_comodule(m.over)).passed


def test_tau_fails_off_ayd():
    s = load_structure("sweedler_yd0")
    h = s.hopf
    rep = check_tau_comodule_map(s.bistructure, regular_comodule(h))
    assert not rep["tau-comodule-map"].passed
    assert not check_tau_center(s.bistructure).passed


def test_iota_roundtrip_and_charge(corpus):
    for name, h in corpus.items():
        for m in sweep_instances(h, 0, 3, 5):
            n = iota(m)
            assert n.verified and n.charge == m.charge
            back = iota_inverse(n)
            assert np.array_equal(back.comodule.coact3, m.comodule.coact3)


def test_sigma_is_an_invertible_morphism(corpus):
    for name, h in corpus.items():
        for i in (-2, 0, 1):
            for m in sweep_instances(h, i - 1, 3, 7):
                assert check_sigma(m).passed, (name, i)


def test_stability_agrees_with_tau_criterion(corpus):
    for name in ("kS3", "sweedler_h4", "taft_3_7_2"):
        for m in sweep_instances(corpus[name], -1, 6, 11):
            assert is_stable(m) == is_stable_via_tau(m), name


def test_stable_struct_file_is_stable():
    assert is_stable(_yd(load_structure("sweedler_stable")))
    assert is_stable(_yd(load_structure("kS3_transpositions")))


def _yd(s):
    from hopfcat.yd import YdModule
    return YdModule.make(s.module, s.comodule, s.charge)


def test_tensor_adds_charges():
    h = sweedler_h4()
    from hopfcat.functors import j_module
    a = j_module(h)
    rng = np.random.default_rng(0)
    b = random_yd_module(h, -1, rng)
    p = tensor_yd(a, b)
    assert p.verified and p.charge == 1 and p.dim == b.dim


def test_twist_shifts_charge():
    h = sweedler_h4()
    m = adjoint_yd_module(h, 0)
    t = twist_yd_module(m, 1)
    assert t.verified
    assert sigma(m).target.charge == m.charge
