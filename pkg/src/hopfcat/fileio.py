"""Line-oriented text format for Hopf algebras and their representations.

A file is a sequence of header lines (``key value...``) followed by sections.
A section starts with a bare keyword and holds sparse entries: integer indices
followed by one exact scalar (``3``, ``-1/2``).  ``#`` starts a comment.

Hopf files::

    hopf sweedler_h4
    field Q                 # or: field Fp 7
    dim 4
    labels 1 g x gx
    unit                    # i s        : 1 has coefficient s on e_i
    counit                  # i s        : ε(e_i) = s
    mult                    # i j k s    : e_i e_j has coefficient s on e_k
    comult                  # i j k s    : Δ(e_i) has coefficient s on e_j⊗e_k
    antipode                # i j s      : S(e_i) has coefficient s on e_j
    grouplike / character   # i s        : one vector per section (optional)

Structure files::

    structure hat_of_m
    hopf kS3                # a path relative to this file, or a bundled name
    kind bistructure        # module | comodule | contramodule | bistructure
    dim 3
    labels m0 m1 m2         # optional
    charge -1               # optional
    action                  # a p q s    : e_a·m_p has coefficient s on m_q
    coaction                # p q a s    : ρ(m_p) has coefficient s on m_q⊗e_a
    contraaction            # a p q s    : α(δ_a⊗m_p) has coefficient s on m_q
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from .hopf import HopfAlgebra, verify_hopf_axioms
from .linalg import Field, Fp, Q, VecSpace
from .reps import BiStructure, LeftModule, RightComodule, RightContramodule
from .report import Report


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None,
                 source: str | None = None):
        self.line = line
        self.field = field
        self.source = source
        where = []
        if source:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field '{field}'")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


class AxiomError(ValueError):
    def __init__(self, report: Report):
        self.report = report
        bad = report.failures()[0]
        super().__init__(f"{report.suite}: {bad.id} fails (witness {bad.witness})")


HOPF_SECTIONS = {"unit": 1, "counit": 1, "mult": 3, "comult": 3, "antipode": 2,
                 "grouplike": 1, "character": 1}
STRUCT_SECTIONS = {"action": 3, "coaction": 3, "contraaction": 3}
KINDS = ("module", "comodule", "contramodule", "bistructure")


# ---------------------------------------------------------------------------
# lexing


@dataclass
class _Entry:
    line: int
    idx: tuple
    value: object


@dataclass
class _Parsed:
    header: dict  # key -> (line, [tokens])
    sections: list  # (name, line, [entries])


def _scalar(tok: str, line: int, field: str) -> object:
    try:
        v = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad scalar {tok!r}", line, field) from None
    return int(v) if v.denominator == 1 else v


def _lex(text: str, sections: dict, source=None) -> _Parsed:
    header: dict = {}
    secs: list = []
    cur = None
    for no, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        key = toks[0]
        if key in sections and len(toks) == 1:
            cur = (key, no, [])
            secs.append(cur)
            continue
        if cur is None:
            if key in header:
                raise ParseError("duplicate header", no, key, source)
            header[key] = (no, toks[1:])
            continue
        arity = sections[cur[0]]
        if len(toks) != arity + 1:
            raise ParseError(f"expected {arity} indices and a scalar", no, cur[0], source)
        try:
            idx = tuple(int(t) for t in toks[:arity])
        except ValueError:
            raise ParseError("indices must be integers", no, cur[0], source) from None
        cur[2].append(_Entry(no, idx, _scalar(toks[-1], no, cur[0])))
    if not header and not secs:
        raise ParseError("empty file", None, None, source)
    return _Parsed(header, secs)


def _get(p: _Parsed, key: str, source, required: bool = True):
    if key not in p.header:
        if required:
            raise ParseError("missing header", None, key, source)
        return None, None
    return p.header[key]


def _int_header(p: _Parsed, key: str, source, required: bool = True):
    line, toks = _get(p, key, source, required)
    if toks is None:
        return None
    if len(toks) != 1:
        raise ParseError("expected one integer", line, key, source)
    try:
        return int(toks[0])
    except ValueError:
        raise ParseError("expected an integer", line, key, source) from None


def _field(p: _Parsed, source) -> Field:
    line, toks = _get(p, "field", source)
    if toks == ["Q"]:
        return Q
    if len(toks) == 2 and toks[0] == "Fp":
        try:
            return Fp(int(toks[1]))
        except ValueError as exc:
            raise ParseError(str(exc), line, "field", source) from None
    raise ParseError("expected 'Q' or 'Fp <p>'", line, "field", source)


def _fill(shape, entries, field: Field, name: str, source, bounds=None) -> np.ndarray:
    out = field.zeros(shape)
    bounds = bounds or shape
    for e in entries:
        for k, b in zip(e.idx, bounds):
            if not 0 <= k < b:
                raise ParseError(f"index {k} out of range 0..{b - 1}", e.line, name, source)
        out[e.idx] = field.reduce(np.array([out[e.idx] + e.value], dtype=object))[0]
    return out


def _scalar_for(field: Field, v):
    if field.p is not None and isinstance(v, Fraction):
        return v.numerator * pow(v.denominator, -1, field.p) % field.p
    return v


def _labels(p: _Parsed, dim: int, source, default_prefix: str) -> tuple:
    line, toks = _get(p, "labels", source, required=False)
    if toks is None:
        return tuple(f"{default_prefix}{k}" for k in range(dim))
    if len(toks) != dim:
        raise ParseError(f"expected {dim} labels, got {len(toks)}", line, "labels", source)
    return tuple(toks)


# ---------------------------------------------------------------------------
# Hopf files


def parse_hopf(text: str, source=None, verify: bool = True) -> HopfAlgebra:
    p = _lex(text, HOPF_SECTIONS, source)
    if "hopf" not in p.header:
        raise ParseError("not a Hopf file", None, "hopf", source)
    name = " ".join(p.header["hopf"][1]) or "H"
    f = _field(p, source)
    n = _int_header(p, "dim", source)
    if n is None or n <= 0:
        raise ParseError("dimension must be positive", p.header["dim"][0], "dim", source)
    labels = _labels(p, n, source, "e")
    got: dict = {}
    vectors: dict = {"grouplike": [], "character": []}
    for name_, line, entries in p.sections:
        entries = [_Entry(e.line, e.idx, _scalar_for(f, e.value)) for e in entries]
        if name_ in vectors:
            vectors[name_].append(_fill((n,), entries, f, name_, source))
            continue
        if name_ in got:
            raise ParseError("duplicate section", line, name_, source)
        got[name_] = entries
    for req in ("unit", "counit", "mult", "comult", "antipode"):
        if req not in got:
            raise ParseError("missing section", None, req, source)
    one = _fill((n,), got["unit"], f, "unit", source)
    eps = _fill((n,), got["counit"], f, "counit", source)
    mult = _fill((n, n, n), got["mult"], f, "mult", source)  # [i, j, k]
    comult = _fill((n, n, n), got["comult"], f, "comult", source)  # [i, j, k]
    anti = _fill((n, n), got["antipode"], f, "antipode", source)  # [i, j]
    m3 = np.transpose(mult, (2, 0, 1))
    D3 = np.transpose(comult, (1, 2, 0))
    try:
        h = HopfAlgebra.from_tensors(f, labels, m3, one, D3, eps, anti.T, name=name,
                                     grouplikes=vectors["grouplike"], characters=vectors["character"])
    except ValueError as exc:
        raise ParseError(str(exc), None, "antipode", source) from None
    if verify:
        rep = verify_hopf_axioms(h)
        if not rep.passed:
            raise AxiomError(rep)
    return h


def _fmt(x) -> str:
    return str(x)


def _sparse(arr: np.ndarray):
    for idx in zip(*np.nonzero(arr != 0)):
        idx = tuple(int(k) for k in idx)
        yield " ".join(str(k) for k in idx) + " " + _fmt(arr[idx])


def dump_hopf(h: HopfAlgebra) -> str:
    f = h.field
    lines = [f"hopf {h.name}", "field Q" if f.p is None else f"field Fp {f.p}",
             f"dim {h.dim}", "labels " + " ".join(h.labels)]
    lines += ["unit", *_sparse(h.one)]
    lines += ["counit", *_sparse(h.eps)]
    lines += ["mult", *_sparse(np.transpose(h.m3, (1, 2, 0)))]
    lines += ["comult", *_sparse(np.transpose(h.D3, (2, 0, 1)))]
    lines += ["antipode", *_sparse(h.S(1).T)]
    for g in h.grouplikes:
        lines += ["grouplike", *_sparse(g)]
    for c in h.characters:
        lines += ["character", *_sparse(c)]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# structure files


@dataclass(frozen=True, eq=False)
class StructureFile:
    name: str
    hopf: HopfAlgebra
    kind: str
    module: LeftModule | None = None
    comodule: RightComodule | None = None
    contramodule: RightContramodule | None = None
    charge: int | None = None
    hopf_ref: str | None = None

    @property
    def bistructure(self) -> BiStructure:
        if self.module is None:
            raise ValueError(f"a {self.kind} file has no action")
        return BiStructure(self.module, comodule=self.comodule, contramodule=self.contramodule)

    @property
    def dim(self) -> int:
        for x in (self.module, self.comodule, self.contramodule):
            if x is not None:
                return x.dim
        return 0


def bundled_names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files("hopfcat.data").iterdir() if p.name.endswith(".hopf"))


def resolve_hopf_path(ref: str, base: Path | None = None):
    """A path (absolute, relative to ``base``, or to the cwd) or the name of a bundled algebra."""
    cands = [Path(ref)]
    if base is not None:
        cands.insert(0, base / ref)
    for c in cands:
        if c.is_file():
            return c
    stem = Path(ref).name
    stem = stem[:-5] if stem.endswith(".hopf") else stem
    data = resources.files("hopfcat.data") / f"{stem}.hopf"
    if data.is_file():
        return data
    raise FileNotFoundError(ref)


def load_hopf(ref, verify: bool = True) -> HopfAlgebra:
    path = resolve_hopf_path(str(ref))
    return parse_hopf(path.read_text(encoding="utf-8"), source=str(ref), verify=verify)


def parse_structure(text: str, source=None, base: Path | None = None,
                    hopf: HopfAlgebra | None = None) -> StructureFile:
    p = _lex(text, STRUCT_SECTIONS, source)
    if "structure" not in p.header:
        raise ParseError("not a structure file", None, "structure", source)
    name = " ".join(p.header["structure"][1]) or "M"
    line, ref = _get(p, "hopf", source)
    if len(ref) != 1:
        raise ParseError("expected one reference", line, "hopf", source)
    if hopf is None:
        try:
            hopf = parse_hopf(resolve_hopf_path(ref[0], base).read_text(encoding="utf-8"), source=ref[0])
        except FileNotFoundError:
            raise ParseError(f"cannot find Hopf file {ref[0]!r}", line, "hopf", source) from None
    line, kind = _get(p, "kind", source)
    if len(kind) != 1 or kind[0] not in KINDS:
        raise ParseError(f"kind must be one of {', '.join(KINDS)}", line, "kind", source)
    kind = kind[0]
    d = _int_header(p, "dim", source)
    if d is None or d < 0:
        raise ParseError("dimension must be non-negative", p.header["dim"][0], "dim", source)
    charge = _int_header(p, "charge", source, required=False)
    f = hopf.field
    n = hopf.dim
    space = VecSpace(d, _labels(p, d, source, "m"), f)
    got: dict = {}
    for sec, sline, entries in p.sections:
        if sec in got:
            raise ParseError("duplicate section", sline, sec, source)
        got[sec] = [_Entry(e.line, e.idx, _scalar_for(f, e.value)) for e in entries]
    want = {"module": {"action"}, "comodule": {"coaction"}, "contramodule": {"contraaction"}}.get(kind)
    if kind == "bistructure":
        if "action" not in got or len({"coaction", "contraaction"} & set(got)) != 1:
            raise ParseError("a bistructure needs an action and exactly one of coaction / contraaction",
                             None, "kind", source)
    elif set(got) != want:
        raise ParseError(f"a {kind} file needs exactly the section {sorted(want)[0]}", None, "kind", source)
    module = comodule = contra = None
    if "action" in got:
        t = _fill((n, d, d), got["action"], f, "action", source)  # [a, p, q]
        module = LeftModule.from_tensor(hopf, space, np.transpose(t, (2, 0, 1)))
    if "coaction" in got:
        t = _fill((d, d, n), got["coaction"], f, "coaction", source)  # [p, q, a]
        comodule = RightComodule.from_tensor(hopf, space, np.transpose(t, (1, 2, 0)))
    if "contraaction" in got:
        t = _fill((n, d, d), got["contraaction"], f, "contraaction", source)  # [a, p, q]
        contra = RightContramodule.from_tensor(hopf, space, np.transpose(t, (2, 0, 1)))
    return StructureFile(name, hopf, kind, module, comodule, contra, charge, ref[0])


def load_structure(path, hopf: HopfAlgebra | None = None) -> StructureFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ParseError("no such file", None, None, str(path)) from None
    return parse_structure(text, source=str(path), base=path.parent, hopf=hopf)


def dump_structure(hopf_ref: str, name: str, module: LeftModule | None = None,
                   comodule: RightComodule | None = None, contramodule: RightContramodule | None = None,
                   charge: int | None = None) -> str:
    present = [x for x in (module, comodule, contramodule) if x is not None]
    if not present:
        raise ValueError("nothing to write")
    if module is not None and (comodule is None) == (contramodule is None):
        kind = "module" if comodule is None else "bistructure"
        if comodule is not None and contramodule is not None:
            raise ValueError("give a comodule or a contramodule, not both")
    elif module is not None:
        kind = "bistructure"
    else:
        kind = "comodule" if comodule is not None else "contramodule"
    space = present[0].space
    lines = [f"structure {name}", f"hopf {hopf_ref}", f"kind {kind}", f"dim {space.dim}",
             "labels " + " ".join(space.labels)]
    if charge is not None:
        lines.append(f"charge {charge}")
    if module is not None:
        lines += ["action", *_sparse(np.transpose(module.act3, (1, 2, 0)))]
    if comodule is not None:
        lines += ["coaction", *_sparse(np.transpose(comodule.coact3, (2, 0, 1)))]
    if contramodule is not None:
        lines += ["contraaction", *_sparse(np.transpose(contramodule.contra3, (1, 2, 0)))]
    return "\n".join(lines) + "\n"
