import numpy as np
import pytest

from hopfcat.functors import (
    bimodule_iso, check_adjunction, check_bimodule_isos, check_equalizer,
    check_first_periodicity, fd_equivalence_formula, hat, hat_contramodule, j_module, prime,
    prime_bimodule_iso, second_periodicity_triangle, stability_transport,
)
from hopfcat.hopf import sweedler_h4
from hopfcat.instances import random_yd_contramodule, sweep_instances
from hopfcat.reps import regular_comodule, trivial_comodule
from hopfcat.yd import ChargeMismatch, NotVerified, YdModule, check_sigma, is_stable, right_integrals

SMALL = ("kZ2", "kS3", "sweedler_h4", "taft_3_7_2")


@pytest.mark.parametrize("i", [-2, 0, 1, 3])
def test_hat_and_prime_shift_charges(corpus, i):
    rng = np.random.default_rng(i + 10)
    for name in SMALL:
        h = corpus[name]
        for m in sweep_instances(h, i - 1, 3, 2):
            hm = hat(m, i)
            assert hm.carrier.verified and hm.carrier.charge == i + 1
        n = random_yd_contramodule(h, i + 1, rng)
        pn = prime(n, i)
        assert pn.action_descends and pn.coaction_descends
        assert pn.carrier.verified and pn.carrier.charge == i - 1


def test_hat_rejects_wrong_charge(corpus):
    m = sweep_instances(corpus["kZ2"], 0, 1, 0)[0]
    with pytest.raises(ChargeMismatch):
        hat(m, 0)


def test_hat_rejects_unverified_input():
    from conftest import bundled_struct
    s = bundled_struct("sweedler_yd0")
    bad = YdModule.make(s.module, s.comodule, -1)
    assert not bad.verified
    with pytest.raises(NotVerified):
        hat(bad)


def test_hat_dimension_equals_source(corpus):
    # finite dimensional H: Ŵ M ≅ M^{S²}⊗J and dim J = 1
    for name in SMALL:
        for m in sweep_instances(corpus[name], 0, 4, 3):
            assert hat(m).carrier.dim == m.dim


def test_literal_prime_formula_does_not_descend(corpus):
    for name in ("kS3", "sweedler_h4", "taft_3_7_2"):
        m = sweep_instances(corpus[name], -1, 1, 1)[0]
        assert not prime(hat(m).carrier, variant="literal").action_descends
        assert prime(hat(m).carrier).action_descends


def test_adjunction_on_a_few_instances(corpus):
    for name in SMALL:
        for i in (-1, 0, 2):
            for m in sweep_instances(corpus[name], i - 1, 2, 4):
                rep = check_adjunction(m).report
                assert rep.passed, rep.format_text()


def test_adjunction_with_independent_contramodule():
    h = sweedler_h4()
    rng = np.random.default_rng(8)
    n = random_yd_contramodule(h, 1, rng)
    m = sweep_instances(h, -1, 1, 0)[0]
    assert check_adjunction(m, n).report.passed


def test_fd_formula_and_untwisted_control(corpus):
    for name, h in corpus.items():
        for m in sweep_instances(h, 0, 3, 6):
            assert fd_equivalence_formula(m.comodule).verified, name
    for name in ("sweedler_h4", "taft_3_7_2"):
        reg = regular_comodule(corpus[name])
        assert not fd_equivalence_formula(reg, no_twist=True).verified
    assert fd_equivalence_formula(regular_comodule(corpus["kS3"]), no_twist=True).verified


def test_bimodule_isos_and_dropped_twists():
    h = sweedler_h4()
    w = sweep_instances(h, 0, 1, 9)[0].comodule
    assert check_bimodule_isos(w).passed
    assert not check_bimodule_isos(w, twists=False).passed
    reg = regular_comodule(h)
    assert bimodule_iso(reg, w, reg).verified
    assert not bimodule_iso(reg, w, reg, twist_t=0, twist_l=-1).verified
    assert not bimodule_iso(reg, w, reg, twist_t=1, twist_l=0).verified
    # S² in place of S on t₁ and S⁻² on l₁
    assert not bimodule_iso(reg, w, reg, formula=(2, -2)).verified
    n = hat_contramodule(w)[0]
    assert prime_bimodule_iso(reg, n, reg).verified
    assert not prime_bimodule_iso(reg, n, reg, twist_t=0, twist_l=1).verified
    assert not prime_bimodule_iso(reg, n, reg, twist_t=-1, twist_l=0).verified


def test_stability_transport_and_triangle(corpus):
    for name in SMALL:
        for i in range(-2, 4):
            for m in sweep_instances(corpus[name], i - 1, 2, 12):
                assert stability_transport(m).passed, (name, i)
                assert second_periodicity_triangle(m).passed
                assert check_sigma(hat(m).carrier).passed


def test_stable_objects_stay_stable(corpus):
    from conftest import bundled_struct
    s = bundled_struct("sweedler_stable")
    m = YdModule.make(s.module, s.comodule, s.charge)
    assert is_stable(m) and is_stable(hat(m).carrier) and is_stable(prime(hat(m).carrier).carrier)


def test_equalizer_matches_invariants(corpus):
    for name in SMALL:
        for i in (-1, 0, 1):
            for m in sweep_instances(corpus[name], i - 1, 2, 13):
                assert check_equalizer(m).passed, (name, i)


def test_first_periodicity(corpus):
    for name, h in corpus.items():
        j = j_module(h)
        assert j.verified and j.charge == 2 and j.dim == 1
        for m in sweep_instances(h, -1, 2, 14):
            assert check_first_periodicity(m).passed


def test_integral_space_is_nonzero(corpus):
    for h in corpus.values():
        assert right_integrals(h).J.dim == 1
