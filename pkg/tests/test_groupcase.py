import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopfcat.groupcase import (
    Z, InfiniteGroup, NotEquivariant, UnstableCoefficient, class_coefficient, class_space, compare_engines,
    contratrace_eval, direct_sum, equivariant_space, gamma, gamma_c, generic_verdicts, graded_space,
    graded_verdicts, hat_graded, integer_point, random_graded_instance, sign_characters, trace_form_iso,
    zero_space,
)
from hopfcat.hopf import GroupTable
from hopfcat.linalg import Q
from oracles import coaction_from_grading, kg_equivariant_hom_dim

S3 = GroupTable.symmetric(3)


def _classes(g):
    return {len(c): c for c in g.conjugacy_classes()}


def test_class_sizes():
    assert sorted(_classes(S3)) == [1, 2, 3]


def test_sign_twisted_stability_by_class():
    sign = sign_characters(S3)[0]
    cl = _classes(S3)
    transp, cyc = cl[3][0], cl[2][0]
    # g acts on the g-component by sign(g): -1 on transpositions, +1 on 3-cycles
    assert not class_space(S3, transp, sign).is_stable
    assert class_space(S3, cyc, sign).is_stable
    assert class_space(S3, transp).is_stable and class_space(S3, cyc).is_stable


def test_non_equivariant_action_is_rejected():
    g = GroupTable.cyclic(2)
    # grades 0 and 1 swapped by the nontrivial element: not conjugation-compatible
    act = {0: [[1, 0], [0, 1]], 1: [[0, 1], [1, 0]]}
    v = graded_space(g, [0, 1], act)
    assert not v.is_equivariant
    assert v.check()["grading"].witness is not None
    with pytest.raises(NotEquivariant):
        equivariant_space(g, [0, 1], act)


def test_gamma_c_matches_grading_oracle():
    v = direct_sum(class_space(S3, _classes(S3)[3][0]), class_space(S3, 0))
    m = gamma_c(v)
    want = coaction_from_grading(list(v.grades), S3.order)
    assert [[[m.comodule.coact3[p, a, q] for q in range(v.dim)] for a in range(6)] for p in range(v.dim)] == want
    assert m.verified and m.charge == -1
    n = gamma(v)
    assert n.verified and n.charge == 1


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_verdict_engines_agree(seed):
    v = random_graded_instance(S3, np.random.default_rng(seed))
    assert graded_verdicts(v) == generic_verdicts(v)


def test_compare_engines_report():
    cmp = compare_engines(S3, count=20, seed=20240611)
    assert cmp.report.passed
    ayd = [a.ayd for a in cmp.graded]
    stable = [a.stable for a in cmp.graded]
    assert any(ayd) and not all(ayd)
    assert any(stable) and not all(stable)


def test_hat_graded_and_trace_form():
    v = direct_sum(class_space(S3, _classes(S3)[3][0]), class_space(S3, _classes(S3)[2][0], sign_characters(S3)[0]))
    hv = hat_graded(v)
    assert hv.assembly == "product" and hv.dim == v.dim
    assert trace_form_iso(v).verified


def _oracle_dim(v, m):
    return kg_equivariant_hom_dim(list(v.grades), lambda x: v.act(x).tolist(),
                                  list(m.grades), lambda x: m.act(x).tolist(), range(S3.order))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_equivariant_contratrace_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    v = random_graded_instance(S3, rng)
    coeffs = [class_coefficient(S3, c[0]) for c in S3.conjugacy_classes()]
    led = contratrace_eval(v, coeffs, equivariant=True) if v.is_equivariant else None
    if led is None:
        return
    assert [d for _, d in led.rows] == [_oracle_dim(v, c.base) for c in coeffs]


def test_contratrace_is_additive():
    a, b = class_space(S3, _classes(S3)[3][0]), class_space(S3, 0)
    coeffs = [class_coefficient(S3, c[0]) for c in S3.conjugacy_classes()]
    ta = contratrace_eval(a, coeffs).total
    tb = contratrace_eval(b, coeffs).total
    assert contratrace_eval(direct_sum(a, b), coeffs).total == ta + tb


def test_integer_contratrace_ledger():
    v = direct_sum(integer_point(3), integer_point(5))
    led = contratrace_eval(v, [class_coefficient(Z, n) for n in (3, 5, 7)])
    assert led.rows == [("3", 1), ("5", 1), ("7", 0)]
    assert led.total == 2 and led.contributing == ["3", "5"]
    assert led.report.passed
    assert "total" in led.format_text()


def test_integer_group_refuses_finite_engines():
    with pytest.raises(InfiniteGroup):
        gamma_c(integer_point(2))


def test_unstable_coefficient_is_refused():
    sign = sign_characters(S3)[0]
    from hopfcat.groupcase import ConjClassCoefficient
    bad = ConjClassCoefficient(class_space(S3, _classes(S3)[3][0], sign))
    with pytest.raises(UnstableCoefficient):
        contratrace_eval(class_space(S3, 0), [bad])


def test_zero_space():
    z = zero_space(S3)
    assert z.dim == 0 and z.is_stable
    coeffs = [class_coefficient(S3, 0)]
    assert contratrace_eval(z, coeffs).total == 0
