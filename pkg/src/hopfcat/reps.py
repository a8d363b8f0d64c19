"""Modules, comodules and contramodules over a finite-dimensional Hopf algebra.

Structure tensors (``d = dim M``, ``n = dim H``):

* module       ``act3[p, a, q]``    coefficient of ``m_p`` in ``e_a · m_q``
* comodule     ``coact3[p, a, q]``  coefficient of ``m_p ⊗ e_a`` in ``ρ(m_q)``
* contramodule ``contra3[p, a, q]`` coefficient of ``m_p`` in ``α(e^a ⊗ m_q)``

A contramodule is stored through ``Hom(H, N) = H* ⊗ N``: the contraaction is a
left action of the convolution algebra H*, with ``e^a e^b = Σ_c D3[a,b,c] e^c``.

Linear maps ``f: W -> V`` are flattened row-major as elements of ``V ⊗ W*``,
i.e. entry ``f[p, j]`` sits at index ``p * dim W + j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .hopf import AlgebraMismatch, HopfAlgebra
from .linalg import (
    LinMap, SubspaceWitness, VecSpace, coordinates, einsum, invert, nullspace, tensor_space,
)
from .report import Report, first_nonzero


def _same_algebra(*objs) -> HopfAlgebra:
    h = objs[0].over
    for o in objs[1:]:
        if o.over is not h:
            raise AlgebraMismatch(f"structures over {h.name} and {o.over.name}")
    return h


def cached(h: HopfAlgebra, key, build: Callable[[], np.ndarray]) -> np.ndarray:
    """Memoize an H-only tensor on the algebra object."""
    store = h.__dict__.setdefault("_tensor_cache", {})
    if key not in store:
        store[key] = build()
    return store[key]


# ---------------------------------------------------------------------------
# carriers


@dataclass(frozen=True, eq=False)
class LeftModule:
    over: HopfAlgebra
    space: VecSpace
    act: LinMap

    def __post_init__(self):
        h = self.over
        if self.act.dom != tensor_space(h.space, self.space) or self.act.cod != self.space:
            raise ValueError("action must be a map H⊗M -> M")

    @classmethod
    def from_tensor(cls, h: HopfAlgebra, space: VecSpace, act3) -> LeftModule:
        d = space.dim
        mat = h.field.reduce(np.asarray(act3, dtype=object).reshape(d, h.dim * d))
        return cls(h, space, LinMap(tensor_space(h.space, space), space, mat))

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def act3(self) -> np.ndarray:
        return self.act.matrix.reshape(self.dim, self.over.dim, self.dim)

    def action_of(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``m ↦ x·m`` for a vector x in H."""
        return einsum("paq,a->pq", self.act3, x, field=self.over.field)


@dataclass(frozen=True, eq=False)
class RightComodule:
    over: HopfAlgebra
    space: VecSpace
    coact: LinMap

    def __post_init__(self):
        h = self.over
        if self.coact.dom != self.space or self.coact.cod != tensor_space(self.space, h.space):
            raise ValueError("coaction must be a map M -> M⊗H")

    @classmethod
    def from_tensor(cls, h: HopfAlgebra, space: VecSpace, coact3) -> RightComodule:
        d = space.dim
        mat = h.field.reduce(np.asarray(coact3, dtype=object).reshape(d * h.dim, d))
        return cls(h, space, LinMap(space, tensor_space(space, h.space), mat))

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def coact3(self) -> np.ndarray:
        return self.coact.matrix.reshape(self.dim, self.over.dim, self.dim)


@dataclass(frozen=True, eq=False)
class RightContramodule:
    over: HopfAlgebra
    space: VecSpace
    contra: LinMap

    def __post_init__(self):
        h = self.over
        hs = VecSpace(h.dim, tuple(f"{x}*" for x in h.labels), h.field)
        if self.contra.dom != tensor_space(hs, self.space) or self.contra.cod != self.space:
            raise ValueError("contraaction must be a map H*⊗N -> N")

    @classmethod
    def from_tensor(cls, h: HopfAlgebra, space: VecSpace, contra3) -> RightContramodule:
        d = space.dim
        hs = VecSpace(h.dim, tuple(f"{x}*" for x in h.labels), h.field)
        mat = h.field.reduce(np.asarray(contra3, dtype=object).reshape(d, h.dim * d))
        return cls(h, space, LinMap(tensor_space(hs, space), space, mat))

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def contra3(self) -> np.ndarray:
        return self.contra.matrix.reshape(self.dim, self.over.dim, self.dim)


@dataclass(frozen=True, eq=False)
class BiStructure:
    """A module together with a comodule or a contramodule on the same space."""

    module: LeftModule
    comodule: RightComodule | None = None
    contramodule: RightContramodule | None = None

    def __post_init__(self):
        other = self.comodule if self.comodule is not None else self.contramodule
        if (self.comodule is None) == (self.contramodule is None):
            raise ValueError("exactly one of comodule / contramodule must be given")
        _same_algebra(self.module, other)
        if self.module.space != other.space:
            raise ValueError("module and co/contramodule live on different spaces")

    @property
    def over(self) -> HopfAlgebra:
        return self.module.over

    @property
    def space(self) -> VecSpace:
        return self.module.space

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def kind(self) -> str:
        return "comodule" if self.comodule is not None else "contramodule"


# ---------------------------------------------------------------------------
# standard objects


def _space(h: HopfAlgebra, dim: int, prefix: str = "m") -> VecSpace:
    return VecSpace.of_dim(dim, h.field, prefix=prefix)


def trivial_module(h: HopfAlgebra, dim: int = 1) -> LeftModule:
    d = dim
    act3 = einsum("a,pq->paq", h.eps, h.field.eye(d), field=h.field)
    return LeftModule.from_tensor(h, _space(h, d), act3)


def trivial_comodule(h: HopfAlgebra, dim: int = 1) -> RightComodule:
    coact3 = einsum("a,pq->paq", h.one, h.field.eye(dim), field=h.field)
    return RightComodule.from_tensor(h, _space(h, dim), coact3)


def trivial_contramodule(h: HopfAlgebra, dim: int = 1) -> RightContramodule:
    """``α(f) = f(1)``."""
    contra3 = einsum("a,pq->paq", h.one, h.field.eye(dim), field=h.field)
    return RightContramodule.from_tensor(h, _space(h, dim), contra3)


def regular_module(h: HopfAlgebra) -> LeftModule:
    return LeftModule.from_tensor(h, h.space, h.m3)


def regular_comodule(h: HopfAlgebra) -> RightComodule:
    """H with ρ = Δ."""
    return RightComodule.from_tensor(h, h.space, h.D3)


def comodule_from_grouplike(h: HopfAlgebra, g: np.ndarray) -> RightComodule:
    return RightComodule.from_tensor(h, _space(h, 1), np.asarray(g, dtype=object).reshape(1, h.dim, 1))


def module_from_character(h: HopfAlgebra, chi: np.ndarray) -> LeftModule:
    return LeftModule.from_tensor(h, _space(h, 1), np.asarray(chi, dtype=object).reshape(1, h.dim, 1))


# ---------------------------------------------------------------------------
# axiom checks


def _check(rep: Report, cid: str, anchor: str, diff, axes):
    w = first_nonzero(diff, axes)
    rep.add(cid, anchor, w is None, w)


def verify_module(m: LeftModule) -> Report:
    h, f = m.over, m.over.field
    A = m.act3
    L, ML = h.labels, m.space.labels
    rep = Report("module axioms")
    lhs = einsum("cab,pcq->pabq", h.m3, A, field=f)
    rhs = einsum("par,rbq->pabq", A, A, field=f)
    _check(rep, "associativity", "(xy)m = x(ym)", lhs - rhs, [("out", ML), ("x", L), ("y", L), ("m", ML)])
    _check(rep, "unitality", "1m = m", einsum("a,paq->pq", h.one, A, field=f) - f.eye(m.dim),
           [("out", ML), ("m", ML)])
    return rep


def verify_comodule(c: RightComodule) -> Report:
    h, f = c.over, c.over.field
    C = c.coact3
    L, ML = h.labels, c.space.labels
    rep = Report("comodule axioms")
    lhs = einsum("rbp,paq->rbaq", C, C, field=f)
    rhs = einsum("rcq,bac->rbaq", C, h.D3, field=f)
    _check(rep, "coassociativity", "(ρ⊗id)ρ = (id⊗Δ)ρ", lhs - rhs,
           [("m0", ML), ("h1", L), ("h2", L), ("m", ML)])
    _check(rep, "counitality", "(id⊗ε)ρ = id", einsum("a,paq->pq", h.eps, C, field=f) - f.eye(c.dim),
           [("out", ML), ("m", ML)])
    return rep


def verify_contramodule(n: RightContramodule) -> Report:
    h, f = n.over, n.over.field
    A = n.contra3
    L, ML = tuple(f"{x}*" for x in h.labels), n.space.labels
    rep = Report("contramodule axioms")
    lhs = einsum("abc,pcq->pabq", h.D3, A, field=f)
    rhs = einsum("par,rbq->pabq", A, A, field=f)
    _check(rep, "contraassociativity", "α(φψ⊗n) = α(φ⊗α(ψ⊗n))", lhs - rhs,
           [("out", ML), ("phi", L), ("psi", L), ("n", ML)])
    _check(rep, "unitality", "α(ε⊗n) = n", einsum("a,paq->pq", h.eps, A, field=f) - f.eye(n.dim),
           [("out", ML), ("n", ML)])
    return rep


def verify_bistructure(b: BiStructure) -> Report:
    rep = Report("bistructure axioms")
    rep.extend(verify_module(b.module), "module.")
    if b.comodule is not None:
        rep.extend(verify_comodule(b.comodule), "comodule.")
    else:
        rep.extend(verify_contramodule(b.contramodule), "contramodule.")
    return rep


# ---------------------------------------------------------------------------
# morphism predicates (φ given as a d_N x d_M matrix)


def module_map_defect(phi, m: LeftModule, n: LeftModule) -> np.ndarray:
    f = m.over.field
    return (einsum("rp,paq->raq", phi, m.act3, field=f)
            - einsum("rap,pq->raq", n.act3, phi, field=f))


def comodule_map_defect(phi, m: RightComodule, n: RightComodule) -> np.ndarray:
    f = m.over.field
    return (einsum("rp,paq->raq", phi, m.coact3, field=f)
            - einsum("rap,pq->raq", n.coact3, phi, field=f))


def contramodule_map_defect(phi, m: RightContramodule, n: RightContramodule) -> np.ndarray:
    f = m.over.field
    return (einsum("rp,paq->raq", phi, m.contra3, field=f)
            - einsum("rap,pq->raq", n.contra3, phi, field=f))


def is_module_map(phi, m, n) -> bool:
    return not np.any(module_map_defect(phi, m, n) != 0)


def is_comodule_map(phi, m, n) -> bool:
    return not np.any(comodule_map_defect(phi, m, n) != 0)


def is_contramodule_map(phi, m, n) -> bool:
    return not np.any(contramodule_map_defect(phi, m, n) != 0)


# ---------------------------------------------------------------------------
# twists and tensor products


def twist_comodule(c: RightComodule, k: int) -> RightComodule:
    """``C^{S^{2k}}``: coaction followed by ``id ⊗ S^{2k}``."""
    h = c.over
    coact3 = einsum("ba,paq->pbq", h.S(2 * k), c.coact3, field=h.field)
    return RightComodule.from_tensor(h, c.space, coact3)


def twist_module(m: LeftModule, k: int) -> LeftModule:
    """``_{S^{2k}}M``: action precomposed with ``S^{2k} ⊗ id``."""
    h = m.over
    act3 = einsum("ba,pbq->paq", h.S(2 * k), m.act3, field=h.field)
    return LeftModule.from_tensor(h, m.space, act3)


def twist_contramodule(n: RightContramodule, k: int) -> RightContramodule:
    """``N^{S^{2k}}``: ``α'(f) = α(f ∘ S^{2k})``."""
    h = n.over
    contra3 = einsum("ab,pbq->paq", h.S(2 * k), n.contra3, field=h.field)
    return RightContramodule.from_tensor(h, n.space, contra3)


def tensor_comodules(a: RightComodule, b: RightComodule) -> RightComodule:
    """``ρ(m⊗n) = m₀⊗n₀⊗m₁n₁``."""
    h = _same_algebra(a, b)
    co = einsum("paq,rbs,cab->prcqs", a.coact3, b.coact3, h.m3, field=h.field)
    d = a.dim * b.dim
    return RightComodule.from_tensor(h, tensor_space(a.space, b.space), co.reshape(d, h.dim, d))


def tensor_modules(a: LeftModule, b: LeftModule) -> LeftModule:
    """``x(m⊗n) = x¹m⊗x²n``."""
    h = _same_algebra(a, b)
    act = einsum("xyc,pxq,rys->prcqs", h.D3, a.act3, b.act3, field=h.field)
    d = a.dim * b.dim
    return LeftModule.from_tensor(h, tensor_space(a.space, b.space), act.reshape(d, h.dim, d))


def change_basis_comodule(c: RightComodule, P) -> RightComodule:
    """Transport along the isomorphism ``P`` (new = P · old)."""
    f = c.over.field
    Pi = invert(LinMap(c.space, c.space, P)).matrix
    return RightComodule.from_tensor(c.over, c.space, einsum("rp,paq,qs->ras", P, c.coact3, Pi, field=f))


def change_basis_module(m: LeftModule, P) -> LeftModule:
    f = m.over.field
    Pi = invert(LinMap(m.space, m.space, P)).matrix
    return LeftModule.from_tensor(m.over, m.space, einsum("rp,paq,qs->ras", P, m.act3, Pi, field=f))


def change_basis_contramodule(n: RightContramodule, P) -> RightContramodule:
    f = n.over.field
    Pi = invert(LinMap(n.space, n.space, P)).matrix
    return RightContramodule.from_tensor(n.over, n.space,
                                         einsum("rp,paq,qs->ras", P, n.contra3, Pi, field=f))


# ---------------------------------------------------------------------------
# internal Homs and invariants


def hom_l(w: RightComodule, v: RightComodule) -> RightComodule:
    """Hom(W, V) with ``ρf(w) = f(w₀)₀ ⊗ f(w₀)₁ S(w₁)``."""
    h = _same_algebra(w, v)
    f = h.field
    # E_{pj} ↦ Σ E_{sq} ⊗ e_d · cW[j,b,q] cV[s,c,p] m3[d,c,t] S[t,b]
    hs = cached(h, "m3S", lambda: einsum("dct,tb->dcb", h.m3, h.S(1), field=f))
    co = einsum("jbq,scp,dcb->sqdpj", w.coact3, v.coact3, hs, field=f)
    d = v.dim * w.dim
    return RightComodule.from_tensor(h, _hom_space(w.space, v.space), co.reshape(d, h.dim, d))


def hom_r(w: RightComodule, v: RightComodule) -> RightComodule:
    """Hom(W, V) with ``ρf(w) = f(w₀)₀ ⊗ S⁻¹(w₁) f(w₀)₁``."""
    h = _same_algebra(w, v)
    f = h.field
    hs = cached(h, "Sinv_m3", lambda: einsum("dtc,tb->dcb", h.m3, h.S(-1), field=f))
    co = einsum("jbq,scp,dcb->sqdpj", w.coact3, v.coact3, hs, field=f)
    d = v.dim * w.dim
    return RightComodule.from_tensor(h, _hom_space(w.space, v.space), co.reshape(d, h.dim, d))


def _hom_space(w: VecSpace, v: VecSpace) -> VecSpace:
    labels = tuple(f"{y}←{x}" for y in v.labels for x in w.labels)
    return VecSpace(v.dim * w.dim, labels, v.field)


def invariants_matrix(w: RightComodule, v: RightComodule) -> np.ndarray:
    """Linear conditions on vec(f) expressing ``ρ_V f = (f⊗id) ρ_W``."""
    h = _same_algebra(w, v)
    f = h.field
    Iv, Iw = f.eye(v.dim), f.eye(w.dim)
    cond = einsum("paq,rj->pajqr", v.coact3, Iw, field=f) - einsum("pq,raj->pajqr", Iv, w.coact3, field=f)
    return cond.reshape(v.dim * h.dim * w.dim, v.dim * w.dim)


def invariants(w: RightComodule, v: RightComodule) -> SubspaceWitness:
    """Hom(W, V)^H as a subspace of the flattened linear Hom."""
    f = w.over.field
    return SubspaceWitness(_hom_space(w.space, v.space), nullspace(invariants_matrix(w, v), f))


@dataclass(frozen=True)
class Bijection:
    """Explicit mutually inverse matrices between two coordinate spaces."""

    forward: np.ndarray
    backward: np.ndarray
    verified: bool


def internal_hom_adjunction(t: RightComodule, w: RightComodule, v: RightComodule) -> Bijection:
    """``Hom(T⊗W, V)^H ≅ Hom(T, Hom^l(W, V))^H`` via ``f ↦ (t ↦ f(t⊗-))``."""
    h = _same_algebra(t, w, v)
    f = h.field
    src = invariants(tensor_comodules(t, w), v)
    dst = invariants(t, hom_l(w, v))
    dv, dt, dw = v.dim, t.dim, w.dim

    def curry(vecs):  # columns of vec(f), f[p, (t, j)] -> phi[(p, j), t]
        k = vecs.shape[1]
        return vecs.reshape(dv, dt, dw, k).transpose(0, 2, 1, 3).reshape(dv * dw * dt, k)

    def uncurry(vecs):
        k = vecs.shape[1]
        return vecs.reshape(dv, dw, dt, k).transpose(0, 2, 1, 3).reshape(dv * dt * dw, k)

    if src.dim != dst.dim:
        return Bijection(f.zeros((dst.dim, src.dim)), f.zeros((src.dim, dst.dim)), False)
    fwd = coordinates(dst.basis, curry(src.basis), f)
    bwd = coordinates(src.basis, uncurry(dst.basis), f)
    ok = bool(np.all(f.reduce(fwd.dot(bwd)) == f.eye(dst.dim))) and bool(
        np.all(f.reduce(bwd.dot(fwd)) == f.eye(src.dim)))
    return Bijection(fwd, bwd, ok)


# ---------------------------------------------------------------------------
# rigidity


def dual_comodule(v: RightComodule) -> RightComodule:
    """``V* = Hom^l(V, k)``."""
    return hom_l(v, trivial_comodule(v.over))


def predual_comodule(v: RightComodule) -> RightComodule:
    """``*V = Hom^r(V, k)``."""
    return hom_r(v, trivial_comodule(v.over))


def evaluation(v: RightComodule) -> np.ndarray:
    """``V*⊗V -> k``, ``f⊗v ↦ f(v)`` as a 1 x d² matrix."""
    return v.over.field.eye(v.dim).reshape(1, v.dim * v.dim)


def coevaluation(v: RightComodule) -> np.ndarray:
    """``k -> V⊗V*``, ``1 ↦ Σ v_p ⊗ v^p``."""
    return v.over.field.eye(v.dim).reshape(v.dim * v.dim, 1)


def check_rigidity(v: RightComodule) -> Report:
    h = v.over
    f = h.field
    k = trivial_comodule(h)
    vs = dual_comodule(v)
    sv = predual_comodule(v)
    rep = Report("rigidity")
    rep.add("ev", "ev: V*⊗V -> k is a comodule map",
            is_comodule_map(evaluation(v), tensor_comodules(vs, v), k))
    rep.add("coev", "coev: k -> V⊗V* is a comodule map",
            is_comodule_map(coevaluation(v), k, tensor_comodules(v, vs)))
    rep.add("ev-r", "ev: V⊗*V -> k is a comodule map",
            is_comodule_map(evaluation(v), tensor_comodules(v, sv), k))
    rep.add("coev-r", "coev: k -> *V⊗V is a comodule map",
            is_comodule_map(coevaluation(v), k, tensor_comodules(sv, v)))
    # canonical v ↦ (f ↦ f(v)) is the identity matrix in dual-of-dual coordinates
    ident = f.eye(v.dim)
    rep.add("double-dual", "V** ≅ V^{S²}",
            is_comodule_map(ident, twist_comodule(v, 1), dual_comodule(vs)))
    rep.add("double-predual", "**V ≅ V^{S⁻²}",
            is_comodule_map(ident, twist_comodule(v, -1), predual_comodule(sv)))
    return rep
