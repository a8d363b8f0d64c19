import numpy as np
import pytest

from hopfcat.fileio import (
    AxiomError, ParseError, bundled_names, dump_hopf, dump_structure, load_hopf, parse_hopf,
    parse_structure,
)
from hopfcat.hopf import verify_hopf_axioms
from conftest import bundled_struct

KZ2 = load_hopf("kZ2")


def test_bundled_corpus_roundtrips(corpus):
    assert set(bundled_names()) == set(corpus)
    for name in bundled_names():
        h = load_hopf(name)
        again = parse_hopf(dump_hopf(h), "roundtrip")
        for a in ("m3", "D3", "one", "eps"):
            assert np.array_equal(getattr(h, a), getattr(again, a)), (name, a)
        assert np.array_equal(h.S(1), again.S(1))
        ref = corpus[name]
        assert np.array_equal(h.m3, ref.m3) and np.array_equal(h.D3, ref.D3)


def test_parse_error_carries_line_and_field():
    text = "hopf x\nfield Q\ndim 2\nmult\n0 0 zz 1\n"
    with pytest.raises(ParseError) as ei:
        parse_hopf(text, "t")
    assert ei.value.line == 5 and ei.value.field == "mult"


def test_empty_file_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_hopf("", "t")


def test_out_of_range_index():
    text = dump_hopf(KZ2).replace("mult\n0 0 0 1", "mult\n0 0 7 1")
    with pytest.raises(ParseError):
        parse_hopf(text)


def test_axiom_violation_is_an_axiom_error():
    text = dump_hopf(KZ2).replace("antipode\n0 0 1\n1 1 1", "antipode\n0 0 1\n1 1 2")
    with pytest.raises(AxiomError) as ei:
        parse_hopf(text)
    assert not ei.value.report.passed
    h = parse_hopf(text, verify=False)
    assert not verify_hopf_axioms(h).passed


def test_rational_and_finite_field_scalars():
    text = dump_hopf(KZ2).replace("character\n0 1\n1 -1", "character\n0 2/2\n1 -1")
    assert parse_hopf(text).dim == 2
    taft = load_hopf("taft_3_7_2")
    assert taft.field.p == 7


def test_structure_roundtrip(tmp_path):
    s = bundled_struct("sweedler_stable")
    text = dump_structure("sweedler_h4", "copy", module=s.module, comodule=s.comodule, charge=s.charge)
    again = parse_structure(text, "copy")
    assert again.dim == s.dim and again.charge == -1
    assert np.array_equal(again.module.act3, s.module.act3)
    assert np.array_equal(again.comodule.coact3, s.comodule.coact3)


def test_structure_missing_section():
    text = "structure s\nhopf kZ2\nkind bistructure\ndim 1\ncharge 0\naction\n0 0 0 1\n1 0 0 1\n"
    with pytest.raises(ParseError):
        parse_structure(text)


def test_unknown_hopf_reference():
    with pytest.raises((ParseError, FileNotFoundError)):
        parse_structure("structure s\nhopf nowhere\nkind module\ndim 1\naction\n0 0 0 1\n")
