"""One test per acceptance criterion; the terminal summary lists PASS/FAIL per criterion."""

import time

import numpy as np
import pytest

from conftest import CHARGES, SWEEP_COUNT, bundled_struct
from hopfcat.functors import (
    bimodule_iso, check_adjunction, check_bimodule_isos, check_equalizer, check_first_periodicity,
    fd_equivalence_formula, hat, j_module, prime, prime_bimodule_iso, stability_transport,
)
from hopfcat.groupcase import Z, class_coefficient, compare_engines, contratrace_eval, direct_sum, integer_point
from hopfcat.hopf import GroupTable, corpus as build_corpus, verify_hopf_axioms
from hopfcat.instances import random_yd_contramodule, sweep_instances
from hopfcat.reps import regular_comodule, trivial_comodule
from hopfcat.yd import (
    YdModule, check_sigma, check_tau_center, check_tau_comodule_map, left_integral_relations, right_integrals,
    right_integral_conditions,
)
from oracles import group_integral_oracle, nullity_oracle, rank_oracle, to_lists

criterion = pytest.mark.criterion


def _failures(rep):
    return [c.id for c in rep.failures()]


@criterion(1, "Hopf axioms on the corpus, < 5 s")
def test_c01_hopf_axioms():
    t = time.perf_counter()
    for name, h in build_corpus().items():
        rep = verify_hopf_axioms(h)
        assert rep.passed, (name, _failures(rep))
        assert rep["antipode-invertible"].passed
    assert time.perf_counter() - t < 5


@criterion(2, "integrals: dim J = 1 = dim K; kG integral is δ_e")
def test_c02_integrals(corpus):
    for name, h in corpus.items():
        ints = right_integrals(h)
        p = h.field.p
        assert ints.J.dim == nullity_oracle(to_lists(right_integral_conditions(h)), h.dim, p) == 1, name
        assert ints.K.space.dim == h.dim - rank_oracle(to_lists(left_integral_relations(h)), p) == 1, name
    for g in (GroupTable.cyclic(2), GroupTable.symmetric(3)):
        h = corpus["kZ2" if g.order == 2 else "kS3"]
        j = right_integrals(h).J.basis[:, 0]
        e = g.identity
        assert [x / j[e] for x in j] == group_integral_oracle(g)


@criterion(3, "charge contract sweep for hat and prime, < 60 s")
def test_c03_charge_contract(corpus, seed):
    t = time.perf_counter()
    for name, h in corpus.items():
        for i in CHARGES:
            rng = np.random.default_rng([seed, 3, i % 1000, h.dim])
            for m in sweep_instances(h, i - 1, SWEEP_COUNT, seed):
                assert m.dim <= 4 and m.verified and m.charge == i - 1
                c = hat(m, i).carrier
                assert c.verified and c.charge == i + 1, (name, i)
            for _ in range(SWEEP_COUNT):
                n = random_yd_contramodule(h, i + 1, rng)
                assert n.verified and n.dim <= 4
                pn = prime(n, i)
                assert pn.action_descends and pn.coaction_descends
                assert pn.carrier.verified and pn.carrier.charge == i - 1, (name, i)
    elapsed = time.perf_counter() - t
    print(f"charge sweep: {elapsed:.1f} s")
    assert elapsed < 60


@criterion(4, "adjunction: triangle identities, unit and counit invertible")
def test_c04_adjunction(sweep):
    for name, i, m in sweep.items():
        rep = check_adjunction(m).report
        assert rep.passed, (name, i, _failures(rep))


@criterion(5, "fd formula Ŵ M ≅ M^{S²}⊗J; untwisted fails on sweedler and taft")
def test_c05_fd_formula(sweep, corpus):
    for name, i, m in sweep.items():
        assert fd_equivalence_formula(m.comodule).verified, (name, i)
    for name in ("sweedler_h4", "taft_3_7_2"):
        h = corpus[name]
        assert not fd_equivalence_formula(regular_comodule(h), no_twist=True).verified
        broken = [m for m in sweep(name, 0) if not fd_equivalence_formula(m.comodule, no_twist=True).verified]
        assert broken, name


@criterion(6, "τ-center: comodule isomorphisms on k, H, H⊗H; fails off aYD; exact roundtrips")
def test_c06_tau_center(sweep, corpus):
    for name in corpus:
        for m in sweep(name, 0)[:5]:  # charge -1: anti-Yetter-Drinfeld
            rep = check_tau_center(m)
            assert rep.passed, (name, _failures(rep))
    s = bundled_struct("sweedler_yd0")
    bad = YdModule.make(s.module, s.comodule, 0).carrier
    assert not check_tau_comodule_map(bad, regular_comodule(s.hopf))["tau-comodule-map"].passed
    assert check_tau_comodule_map(bad, trivial_comodule(s.hopf)).passed


@criterion(7, "equalizer presentation agrees with the invariant-subspace hat")
def test_c07_equalizer(sweep):
    for name, i, m in sweep.items():
        rep = check_equalizer(m)
        assert rep.passed, (name, i, _failures(rep))


@criterion(8, "bimodule isomorphisms on T, L ∈ {k, H}; dropped twists fail where S² ≠ id")
def test_c08_bimodule_isos(corpus, seed):
    for name in ("kS3", "sweedler_h4"):
        h = corpus[name]
        for m in sweep_instances(h, 0, 2, seed, max_dim=2):
            rep = check_bimodule_isos(m.comodule)
            assert rep.passed, (name, _failures(rep))
            untwisted = check_bimodule_isos(m.comodule, twists=False)
            s2_id = np.array_equal(h.S(2), h.field.eye(h.dim))
            assert untwisted.passed == s2_id, name
    h = corpus["sweedler_h4"]
    reg = regular_comodule(h)
    w = sweep_instances(h, 0, 1, seed, max_dim=2)[0].comodule
    n = hat(sweep_instances(h, 0, 1, seed, max_dim=2)[0]).carrier.contramodule
    for tt, tl in ((0, -1), (1, 0)):
        assert not bimodule_iso(reg, w, reg, twist_t=tt, twist_l=tl).verified
    for tt, tl in ((0, 1), (-1, 0)):
        assert not prime_bimodule_iso(reg, n, reg, twist_t=tt, twist_l=tl).verified


@criterion(9, "stability: σ invertible, transported by hat and prime, second periodicity triangle")
def test_c09_stability(sweep):
    for name, i, m in sweep.items():
        assert check_sigma(m).passed, (name, i)
        hm = hat(m).carrier
        assert check_sigma(hm).passed, (name, i)
        assert check_sigma(prime(hm).carrier).passed, (name, i)
        rep = stability_transport(m)
        assert rep.passed, (name, i, _failures(rep))


@criterion(10, "first periodicity: ι⁻¹J ∈ YD₂, tensoring raises charge by 2")
def test_c10_first_periodicity(sweep, corpus):
    for name, h in corpus.items():
        j = j_module(h)
        assert j.verified and j.charge == 2, name
    for name, i, m in sweep.items():
        rep = check_first_periodicity(m)
        assert rep.passed, (name, i, _failures(rep))


@criterion(11, "group case: engines agree on S3, trace-form iso, ℤ contratrace ledger")
def test_c11_group_case(seed):
    cmp = compare_engines(GroupTable.symmetric(3), count=20, seed=seed)
    assert len(cmp.instances) >= 20
    assert cmp.report.passed, _failures(cmp.report)
    assert cmp.iso_reports and all(r.passed for r in cmp.iso_reports)
    v = direct_sum(integer_point(3), integer_point(5))
    led = contratrace_eval(v, [class_coefficient(Z, n) for n in range(-2, 9)])
    assert [d for _, d in led.rows] == [1 if n in (3, 5) else 0 for n in range(-2, 9)]
    assert led.total == 2 and led.report.passed
