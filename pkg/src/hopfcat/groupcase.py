"""Group algebras through graded-equivariant vector spaces.

A YD module over kG is a G-graded space ``⊕ M_g`` with a G-action sending
``M_g`` to ``M_{xgx⁻¹}``.  This module works with that description directly,
which also covers the infinite cyclic group at finite support, and compares it
with the structure-constant engine for finite G.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from .functors import hat
from .hopf import GroupTable, HopfAlgebra, group_algebra, group_characters
from .linalg import Field, LinMap, Q, VecSpace, coordinates, invert, matmul, nullspace, rref
from .reps import LeftModule, RightComodule, RightContramodule
from .report import Report
from .yd import YdContramodule, YdModule, is_yd_morphism, sigma_module_matrix


class InfiniteGroup(ValueError):
    pass


class UnstableCoefficient(ValueError):
    pass


class NotEquivariant(ValueError):
    pass


class IntegerGroup:
    """The infinite cyclic group (ℤ, +); elements are Python ints."""

    name = "Z"
    identity = 0
    finite = False

    def mul(self, a: int, b: int) -> int:
        return a + b

    def inv(self, a: int) -> int:
        return -a

    def conj(self, x: int, g: int) -> int:
        return g

    def generators(self) -> list[int]:
        return [1]

    def is_abelian(self) -> bool:
        return True

    def label(self, g: int) -> str:
        return str(g)

    def __repr__(self):
        return "Z"


Z = IntegerGroup()


def _is_finite(group) -> bool:
    return isinstance(group, GroupTable)


def _inv(a: np.ndarray, f: Field) -> np.ndarray:
    sp = VecSpace.of_dim(a.shape[0], f)
    return invert(LinMap(sp, sp, a)).matrix


def _rank(a: np.ndarray, f: Field) -> int:
    return len(rref(a, f)[1])


def _label(group, g) -> str:
    return group.labels[g] if _is_finite(group) else str(g)


@dataclass(frozen=True, eq=False)
class GradedEquivariantSpace:
    """``grades[k]`` is the degree of basis vector k.

    For a finite group ``action`` holds a matrix for every element; for ℤ it
    holds the matrix of the generator 1 and other elements act by its powers.
    The structure is not required to be equivariant: ``check()`` decides.
    """

    group: object
    grades: tuple
    action: dict
    field: Field = Q
    assembly: str = "sum"  # "product" for contramodule-side objects (⊕ vs ∏)

    @property
    def dim(self) -> int:
        return len(self.grades)

    @property
    def support(self) -> list:
        return sorted(set(self.grades))

    def indices(self, g) -> list[int]:
        return [k for k, d in enumerate(self.grades) if d == g]

    @property
    def components(self) -> dict:
        return {g: VecSpace.of_dim(len(self.indices(g)), self.field, f"m{_label(self.group, g)}_")
                for g in self.support}

    def act(self, x) -> np.ndarray:
        if _is_finite(self.group):
            return self.action[x]
        t = self.action[1]
        out = self.field.eye(self.dim)
        base = t if x >= 0 else _inv(t, self.field)
        for _ in range(abs(x)):
            out = matmul(base, out, self.field)
        return out

    def _elements(self) -> list:
        if _is_finite(self.group):
            return list(range(self.group.order))
        # ℤ: the generator, its inverse, and the degrees present
        return sorted({1, -1, *self.support})

    def check(self) -> Report:
        f = self.field
        g = self.group
        rep = Report("graded equivariant space")
        d = self.dim
        if _is_finite(g):
            e = g.identity
            hom = bool(np.all(self.act(e) == f.eye(d)))
            bad = None
            for x in range(g.order):
                for y in range(g.order):
                    if not np.all(matmul(self.act(x), self.act(y), f) == self.act(g.mul(x, y))):
                        bad = (g.labels[x], g.labels[y])
                        break
                if bad:
                    break
            rep.add("action-homomorphism", "e acts as id and (xy)·m = x·(y·m)", hom and bad is None, bad)
        else:
            t = self.action[1]
            rep.add("action-homomorphism", "the generator acts invertibly",
                    d == 0 or _rank(t, f) == d)
        rep.add("finite-support", "finitely many nonzero components", True)
        if not rep.passed:
            rep.add("grading", "x maps M_g into M_{xgx⁻¹}", False, "action is not a group action")
            return rep
        rep.add("grading", "x maps M_g into M_{xgx⁻¹}", self._grading_witness() is None,
                self._grading_witness())
        return rep

    def _grading_witness(self):
        g = self.group
        for x in self._elements():
            a = self.act(x)
            for col, deg in enumerate(self.grades):
                target = g.conj(x, deg)
                for row, rdeg in enumerate(self.grades):
                    if rdeg != target and a[row, col] != 0:
                        return {"x": _label(g, x), "source": _label(g, deg), "hit": _label(g, rdeg)}
        return None

    @property
    def is_equivariant(self) -> bool:
        return self.check().passed

    def stability_defect(self):
        """First ``(x, m_x)`` with ``x·m_x ≠ m_x``, or None."""
        for deg in self.support:
            idx = self.indices(deg)
            block = self.act(deg)[np.ix_(idx, idx)]
            if not np.all(block == self.field.eye(len(idx))):
                return _label(self.group, deg)
        return None

    @property
    def is_stable(self) -> bool:
        return self.is_equivariant and self.stability_defect() is None


def graded_space(group, grades: Sequence, action: dict, field: Field = Q) -> GradedEquivariantSpace:
    act = {x: field.reduce(np.asarray(a, dtype=object).reshape(len(grades), len(grades)))
           for x, a in action.items()}
    return GradedEquivariantSpace(group, tuple(grades), act, field)


def equivariant_space(group, grades: Sequence, action: dict, field: Field = Q) -> GradedEquivariantSpace:
    """Like ``graded_space`` but rejects structures that are not equivariant."""
    v = graded_space(group, grades, action, field)
    rep = v.check()
    if not rep.passed:
        raise NotEquivariant(rep.failures()[0].id)
    return v


def zero_space(group, field: Field = Q) -> GradedEquivariantSpace:
    keys = range(group.order) if _is_finite(group) else [1]
    return GradedEquivariantSpace(group, (), {x: field.zeros((0, 0)) for x in keys}, field)


def class_space(group: GroupTable, g: int, twist: Callable[[int], int] | None = None,
                field: Field = Q) -> GradedEquivariantSpace:
    """k on every element of the class of g; ``x·e_c = twist(x) e_{xcx⁻¹}`` (twist a character)."""
    cls = sorted({group.conj(x, g) for x in range(group.order)})
    pos = {c: k for k, c in enumerate(cls)}
    action = {}
    for x in range(group.order):
        a = field.zeros((len(cls), len(cls)))
        for c in cls:
            a[pos[group.conj(x, c)], pos[c]] = 1 if twist is None else twist(x)
        action[x] = a
    return equivariant_space(group, cls, action, field)


def integer_point(n: int, dim: int = 1, field: Field = Q) -> GradedEquivariantSpace:
    """``k^dim`` in degree n of ℤ with the trivial action."""
    return GradedEquivariantSpace(Z, (n,) * dim, {1: field.eye(dim)}, field)


def sign_characters(group: GroupTable) -> list[Callable[[int], int]]:
    """The nontrivial ±1-valued characters of G (the sign, for symmetric groups)."""
    out = []
    for chi in group_characters(group, Q):
        vals = [int(v) for v in chi]
        if set(vals) == {1, -1}:
            out.append(lambda x, vals=vals: vals[x])
    return out


def direct_sum(*parts: GradedEquivariantSpace) -> GradedEquivariantSpace:
    group = parts[0].group
    f = parts[0].field
    grades = tuple(d for p in parts for d in p.grades)
    n = len(grades)
    action = {}
    for x in parts[0].action:
        a = f.zeros((n, n))
        off = 0
        for p in parts:
            a[off:off + p.dim, off:off + p.dim] = p.action[x]
            off += p.dim
        action[x] = a
    return GradedEquivariantSpace(group, grades, action, f, parts[0].assembly)


def change_basis(v: GradedEquivariantSpace, P) -> GradedEquivariantSpace:
    """Conjugate the action by an invertible P that preserves each component."""
    f = v.field
    Pinv = _inv(P, f)
    action = {x: matmul(matmul(Pinv, a, f), P, f) for x, a in v.action.items()}
    return GradedEquivariantSpace(v.group, v.grades, action, f, v.assembly)


def regrade(v: GradedEquivariantSpace, grades: Sequence) -> GradedEquivariantSpace:
    return GradedEquivariantSpace(v.group, tuple(grades), v.action, v.field, v.assembly)


# ---------------------------------------------------------------------------
# comparison with the structure-constant engine


def _algebra(group: GroupTable, field: Field) -> HopfAlgebra:
    cache = group.__dict__.setdefault("_algebras", {})
    key = (field.p,)
    if key not in cache:
        cache[key] = group_algebra(group, field)
    return cache[key]


def _module_tensor(v: GradedEquivariantSpace) -> np.ndarray:
    act3 = v.field.zeros((v.dim, v.group.order, v.dim))
    for x in range(v.group.order):
        act3[:, x, :] = v.action[x]
    return act3


def _grading_tensor(v: GradedEquivariantSpace) -> np.ndarray:
    t = v.field.zeros((v.dim, v.group.order, v.dim))
    for k, d in enumerate(v.grades):
        t[k, d, k] = 1
    return t


def gamma_c(v: GradedEquivariantSpace, charge: int = -1) -> YdModule:
    """``⊕ M_g`` as a kG module and comodule (``m_g ↦ m_g⊗g``)."""
    if not _is_finite(v.group):
        raise InfiniteGroup("kℤ is infinite dimensional; use the graded engine")
    h = _algebra(v.group, v.field)
    space = VecSpace.of_dim(v.dim, v.field, "m")
    return YdModule.make(LeftModule.from_tensor(h, space, _module_tensor(v)),
                         RightComodule.from_tensor(h, space, _grading_tensor(v)), charge)


def gamma(v: GradedEquivariantSpace, charge: int = 1) -> YdContramodule:
    """``∏ M_g`` as a kG module and contramodule (``α(f) = Σ_g f(g)_g``)."""
    if not _is_finite(v.group):
        raise InfiniteGroup("kℤ is infinite dimensional; use the graded engine")
    h = _algebra(v.group, v.field)
    space = VecSpace.of_dim(v.dim, v.field, "m")
    return YdContramodule.make(LeftModule.from_tensor(h, space, _module_tensor(v)),
                               RightContramodule.from_tensor(h, space, _grading_tensor(v)), charge)


@dataclass
class Verdicts:
    ayd: bool
    stable: bool


def graded_verdicts(v: GradedEquivariantSpace) -> Verdicts:
    return Verdicts(v.is_equivariant, v.is_stable)


def generic_verdicts(v: GradedEquivariantSpace, charge: int = -1) -> Verdicts:
    m = gamma_c(v, charge)
    if not m.verified:
        return Verdicts(False, False)
    s = sigma_module_matrix(m, 2 * (charge + 1))
    return Verdicts(True, bool(np.all(s == v.field.eye(v.dim))))


# ---------------------------------------------------------------------------
# hat through the coalgebra decomposition


def hat_graded(v: GradedEquivariantSpace) -> GradedEquivariantSpace:
    """Componentwise identity; only the assembly changes from ⊕ to ∏."""
    return GradedEquivariantSpace(v.group, v.grades, dict(v.action), v.field, "product")


def trace_form(h: HopfAlgebra, block: Sequence[int]) -> np.ndarray:
    """``μ(δ_a)(δ_b) = tr(l_{δ_a δ_b})`` on ``A = C*`` for the subcoalgebra C spanned by ``block``.

    Returned as the matrix of ``μ: A → A* = C`` in the dual basis ``δ`` and the basis of C.
    """
    f = h.field
    idx = list(block)
    D = h.D3[np.ix_(idx, idx, idx)]  # (δ_a δ_b)(e_c) = D[a, b, c]
    # l_{δ_c} has matrix L[c'', b] = D[c, b, c'']; its trace is Σ_b D[c, b, b]
    tr = np.array([sum(D[c, b, b] for b in range(len(idx))) for c in range(len(idx))], dtype=object)
    mu = np.empty((len(idx), len(idx)), dtype=object)
    for a in range(len(idx)):
        for b in range(len(idx)):
            mu[b, a] = sum(D[a, b, c] * tr[c] for c in range(len(idx)))
    return f.reduce(mu)


def simple_blocks(group: GroupTable) -> list[list[int]]:
    """kG = ⊕_g k·g."""
    return [[g] for g in range(group.order)]


@dataclass
class TraceFormIso:
    matrix: np.ndarray  # columns: images of the basis of ∏ M_g in hat coordinates
    report: Report = dc_field(default_factory=lambda: Report("trace-form isomorphism"))

    @property
    def verified(self) -> bool:
        return self.report.passed


def trace_form_iso(v: GradedEquivariantSpace, charge: int = -1) -> TraceFormIso:
    """Compare Γ(hat_graded(v)) with hat(Γ_c(v)) through ``μ``.

    For m in the C-isotypic part, f is fixed by ``f(μ(δ_a)) = δ_a ⇀ m`` on C and
    vanishes elsewhere, giving ``∏ M_C → Hom(H, M)^H``.
    """
    m = gamma_c(v, charge)
    rep = Report("trace-form isomorphism")
    rep.add("source-ayd", "Γ_c(v) is a YD module", m.verified)
    if not m.verified:
        return TraceFormIso(np.zeros((0, 0), dtype=object), rep)
    h = m.over
    f = h.field
    n = h.dim
    generic = hat(m)
    graded = gamma(hat_graded(v), generic.carrier.charge)
    rep.add("graded-side", "Γ(hat_graded(v)) is a YD contramodule", graded.verified)
    co = m.comodule.coact3
    cols = []
    for block in simple_blocks(v.group):
        mu = trace_form(h, block)
        mu_inv = _inv(mu, f)
        # δ_a ⇀ m = Σ_p co[p, a, q] m_q restricted to the block
        for q in range(v.dim):
            if v.grades[q] not in block:
                continue
            fm = f.zeros((v.dim, n))
            for ci, c in enumerate(block):
                for ai, a in enumerate(block):
                    if mu_inv[ai, ci] != 0:
                        fm[:, c] = f.reduce(fm[:, c] + mu_inv[ai, ci] * co[:, a, q])
            cols.append((q, fm.reshape(-1)))
    cols.sort(key=lambda t: t[0])
    big = np.stack([c for _, c in cols], axis=1) if cols else f.zeros((v.dim * n, 0))
    lands = generic.inclusion.contains(big)
    rep.add("lands-in-invariants", "each μ-image is a comodule map H → M", lands)
    if not lands:
        return TraceFormIso(big, rep)
    phi = coordinates(generic.basis, big, f)
    square = phi.shape[0] == phi.shape[1]
    rep.add("bijective", "the comparison map is invertible", square and _rank(phi, f) == v.dim)
    rep.add("yd-morphism", "the comparison map intertwines action and contraaction",
            square and is_yd_morphism(phi, graded, generic.carrier))
    return TraceFormIso(phi, rep)


# ---------------------------------------------------------------------------
# contratraces from conjugacy-class coefficients


@dataclass(frozen=True, eq=False)
class ConjClassCoefficient:
    base: GradedEquivariantSpace

    def __post_init__(self):
        if not self.base.is_equivariant:
            raise NotEquivariant("coefficient is not graded-equivariant")
        cls = _conj_class(self.base.group, self.base.support[0]) if self.base.support else set()
        if not set(self.base.support) <= cls:
            raise ValueError("coefficient must be supported on a single conjugacy class")

    @property
    def representative(self):
        return self.base.support[0] if self.base.support else None

    @property
    def stable(self) -> bool:
        return self.base.stability_defect() is None


def _conj_class(group, g) -> set:
    if _is_finite(group):
        return {group.conj(x, g) for x in range(group.order)}
    return {g}


def class_coefficient(group, g, field: Field = Q) -> ConjClassCoefficient:
    """k on the class of g with the trivial action (permuting the class)."""
    if _is_finite(group):
        return ConjClassCoefficient(class_space(group, g, field=field))
    return ConjClassCoefficient(integer_point(g, 1, field))


def _hom_dimension(v: GradedEquivariantSpace, m: GradedEquivariantSpace, equivariant: bool) -> int:
    """Brute force: unknown φ: V → M, graded, and commuting with the generators if asked."""
    f = v.field
    dv, dm = v.dim, m.dim
    if dv == 0 or dm == 0:
        return 0
    rows = []
    # grading: φ[r, c] = 0 unless deg r = deg c
    for r in range(dm):
        for c in range(dv):
            if m.grades[r] != v.grades[c]:
                e = f.zeros(dm * dv)
                e[r * dv + c] = 1
                rows.append(e)
    if equivariant:
        gens = v.group.generators() if _is_finite(v.group) else [1]
        for x in gens:
            ax, bx = m.act(x), v.act(x)
            # (ax φ - φ bx)[r, c] as a linear form in φ
            op = np.kron(ax, f.eye(dv)) - np.kron(f.eye(dm), bx.T)
            rows.extend(f.reduce(op))
    if not rows:
        return dm * dv
    return nullspace(np.stack(rows), f).shape[1]


@dataclass
class ContratraceLedger:
    rows: list  # (class label, dim F_class(V))
    total: int
    contributing: list
    report: Report

    def format_text(self) -> str:
        out = [f"{'class':>8}  dim F"]
        out += [f"{c:>8}  {d}" for c, d in self.rows]
        out.append(f"{'⊕ total':>8}  {self.total}")
        out.append(f"contributing classes: {', '.join(self.contributing) or 'none'}")
        return "\n".join(out)


def contratrace_eval(v: GradedEquivariantSpace, coefficients: Sequence[ConjClassCoefficient],
                     equivariant: bool = False) -> ContratraceLedger:
    """``dim Hom(V, Γ_c(M_c))^H`` per class coefficient, and the ⊕ total.

    The default counts comodule maps (graded maps); ``equivariant=True`` also
    asks the maps to commute with the G-action.
    """
    rep = Report("contratrace")
    rows = []
    for c in coefficients:
        if not c.stable:
            raise UnstableCoefficient(f"coefficient on {_label(c.base.group, c.representative)} is not stable")
        rows.append((_label(c.base.group, c.representative), _hom_dimension(v, c.base, equivariant)))
    total = sum(d for _, d in rows)
    contributing = [c for c, d in rows if d]
    touched = {_label(v.group, g) for g in v.support}
    rep.add("finite-contribution", "only classes meeting supp V contribute",
            set(contributing) <= touched, sorted(set(contributing) - touched))
    rep.add("sum-equals-product", "at finite support ⊕ and ∏ of the values agree", True,
            detail=f"{len(contributing)} nonzero term(s)")
    return ContratraceLedger(rows, total, contributing, rep)


# ---------------------------------------------------------------------------
# random instances for the comparison sweep


def random_graded_instance(group: GroupTable, rng: np.random.Generator, max_dim: int = 6,
                           field: Field = Q) -> GradedEquivariantSpace:
    """A sum of twisted class spaces, conjugated within components; sometimes regraded."""
    twists = [None, *sign_characters(group)]
    classes = group.conjugacy_classes()
    parts = []
    total = 0
    while True:
        fits = [c for c in classes if total + len(c) <= max_dim]
        if not fits or (parts and rng.random() < 0.35):
            break
        c = fits[int(rng.integers(len(fits)))]
        tw = twists[int(rng.integers(len(twists)))]
        parts.append(class_space(group, c[0], tw, field))
        total += len(c)
    v = direct_sum(*parts)
    P = field.zeros((v.dim, v.dim))
    for g in v.support:
        idx = v.indices(g)
        blk = field.eye(len(idx))
        if len(idx) > 1:
            a, b = rng.choice(len(idx), size=2, replace=False)
            blk[a, b] = int(rng.integers(-2, 3))
        P[np.ix_(idx, idx)] = blk
    v = change_basis(v, P)
    if rng.random() < 0.3:
        grades = list(v.grades)
        k = int(rng.integers(len(grades)))
        grades[k] = int(rng.integers(group.order))
        v = regrade(v, grades)
    return v


@dataclass
class KgeqComparison:
    instances: list
    graded: list
    generic: list
    iso_reports: list
    report: Report


def compare_engines(group: GroupTable, count: int = 20, seed: int = 0) -> KgeqComparison:
    rng = np.random.default_rng([seed, group.order])
    rep = Report(f"graded vs structure-constant engine on k{group.name}")
    insts, gr, ge, isos = [], [], [], []
    for k in range(count):
        v = random_graded_instance(group, rng)
        a, b = graded_verdicts(v), generic_verdicts(v)
        insts.append(v)
        gr.append(a)
        ge.append(b)
        rep.add(f"instance-{k}.verdicts", "aYD and stability verdicts agree", a == b,
                {"graded": (a.ayd, a.stable), "generic": (b.ayd, b.stable)},
                detail=f"dim {v.dim}, aYD {a.ayd}, stable {a.stable}")
        if a.ayd:
            iso = trace_form_iso(v)
            isos.append(iso.report)
            rep.add(f"instance-{k}.hat", "hat_graded ≅ hat∘Γ_c via the trace form", iso.verified)
    return KgeqComparison(insts, gr, ge, isos, rep)
