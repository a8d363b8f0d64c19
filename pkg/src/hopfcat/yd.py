"""Generalized Yetter-Drinfeld objects of charge i, the central structure τ,
stability maps σ, integrals J and K, and the comodule/contramodule switch ι.

Charge conventions: a module+comodule M is YD_i when

    (hm)₀ ⊗ (hm)₁ = h²m₀ ⊗ h³m₁S^{-1-2i}(h¹)

(i = 0 Yetter-Drinfeld, i = -1 anti-Yetter-Drinfeld), and a module+contramodule
N is YD_i when α is H-equivariant for ``h·f = h² f(S(h³) - S^{2-2i}(h¹))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hopf import HopfAlgebra
from .linalg import (
    LinMap, QuotientWitness, SubspaceWitness, VecSpace, cokernel, einsum, invert, kernel,
    tensor_space,
)
from .report import Report, first_nonzero
from .reps import (
    BiStructure, LeftModule, RightComodule, RightContramodule, _same_algebra, cached,
    comodule_map_defect, contramodule_map_defect, hom_l, hom_r, is_comodule_map,
    module_map_defect, tensor_comodules, trivial_comodule, trivial_contramodule,
    trivial_module, twist_comodule, twist_contramodule, twist_module, verify_bistructure,
)


class NotVerified(ValueError):
    pass


class ChargeMismatch(ValueError):
    pass


class NotAYD(ValueError):
    pass


# ---------------------------------------------------------------------------
# H-only tensors


def _module_rhs_tensor(h: HopfAlgebra, i: int) -> np.ndarray:
    """``G[a, y, c, b]``: coefficient of e_y ⊗ e_c in Σ h² ⊗ h³ e_b S^{-1-2i}(h¹), h = e_a."""
    f = h.field

    def build():
        k = -1 - 2 * i
        inner = einsum("czbt,tx->czbx", h.m4, h.S(k), field=f)  # e_z e_b S^k(e_x)
        return einsum("xyza,czbx->aycb", h.D4, inner, field=f)
    return cached(h, ("yd-mod", i), build)


def _contra_action_tensor(h: HopfAlgebra, k: int) -> np.ndarray:
    """``G[a, v, b, c]`` with ``e_a · (e^b ⊗ n) = Σ e^c ⊗ G[a,v,b,c] e_v n``
    for the twisted action ``h·f = h² f(S(h³) - S^k(h¹))``."""
    f = h.field

    def build():
        # e^b(S(e_z) e_c S^k(e_x)) = Σ_{s,t} m4[b, s, c, t] S[s, z] S^k[t, x]
        w = einsum("bsct,sz,tx->bcxz", h.m4, h.S(1), h.S(k), field=f)
        return einsum("xvza,bcxz->avbc", h.D4, w, field=f)
    return cached(h, ("hom-action", k), build)


# ---------------------------------------------------------------------------
# YD objects


def check_yd_module(b: BiStructure, i: int) -> Report:
    h = b.over
    f = h.field
    A, C = b.module.act3, b.comodule.coact3
    lhs = einsum("raq,pcr->pcaq", A, C, field=f)
    rhs = einsum("aycb,pyr,rbq->pcaq", _module_rhs_tensor(h, i), A, C, field=f)
    rep = Report(f"YD_{i} module condition")
    ML, L = b.space.labels, h.labels
    w = first_nonzero(lhs - rhs, [("m0", ML), ("m1", L), ("h", L), ("m", ML)])
    rep.add("yd-module", f"(hm)₀⊗(hm)₁ = h²m₀⊗h³m₁S^({-1 - 2 * i})(h¹)", w is None, w)
    return rep


def check_yd_contramodule(b: BiStructure, i: int) -> Report:
    h = b.over
    f = h.field
    A, N = b.module.act3, b.contramodule.contra3
    lhs = einsum("par,rbq->pabq", A, N, field=f)
    rhs = einsum("avbc,rvq,pcr->pabq",
                 _contra_action_tensor(h, 2 - 2 * i), A, N, field=f)
    rep = Report(f"YD_{i} contramodule condition")
    ML, L = b.space.labels, h.labels
    w = first_nonzero(lhs - rhs, [("out", ML), ("h", L), ("f", tuple(f"{x}*" for x in L)), ("n", ML)])
    rep.add("yd-contramodule", f"hα(f) = α(h²f(S(h³)-S^({2 - 2 * i})(h¹)))", w is None, w)
    return rep


@dataclass(frozen=True, eq=False)
class YdModule:
    carrier: BiStructure
    charge: int
    verified: bool

    @classmethod
    def make(cls, module: LeftModule, comodule: RightComodule, charge: int) -> YdModule:
        b = BiStructure(module, comodule=comodule)
        ok = verify_bistructure(b).passed and check_yd_module(b, charge).passed
        return cls(b, charge, ok)

    @property
    def module(self) -> LeftModule:
        return self.carrier.module

    @property
    def comodule(self) -> RightComodule:
        return self.carrier.comodule

    @property
    def over(self) -> HopfAlgebra:
        return self.carrier.over

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def space(self) -> VecSpace:
        return self.carrier.space


@dataclass(frozen=True, eq=False)
class YdContramodule:
    carrier: BiStructure
    charge: int
    verified: bool

    @classmethod
    def make(cls, module: LeftModule, contramodule: RightContramodule, charge: int) -> YdContramodule:
        b = BiStructure(module, contramodule=contramodule)
        ok = verify_bistructure(b).passed and check_yd_contramodule(b, charge).passed
        return cls(b, charge, ok)

    @property
    def module(self) -> LeftModule:
        return self.carrier.module

    @property
    def contramodule(self) -> RightContramodule:
        return self.carrier.contramodule

    @property
    def over(self) -> HopfAlgebra:
        return self.carrier.over

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def space(self) -> VecSpace:
        return self.carrier.space


def trivial_yd_module(h: HopfAlgebra, charge: int = 0, dim: int = 1) -> YdModule:
    return YdModule.make(trivial_module(h, dim), trivial_comodule(h, dim), charge)


def trivial_yd_contramodule(h: HopfAlgebra, charge: int = 0, dim: int = 1) -> YdContramodule:
    return YdContramodule.make(trivial_module(h, dim), trivial_contramodule(h, dim), charge)


def yd_morphism_defects(phi, src, dst) -> dict[str, np.ndarray]:
    """Module-map and co/contramodule-map defects of φ between YD objects."""
    out = {"module": module_map_defect(phi, src.module, dst.module)}
    if isinstance(src, YdModule):
        out["comodule"] = comodule_map_defect(phi, src.comodule, dst.comodule)
    else:
        out["contramodule"] = contramodule_map_defect(phi, src.contramodule, dst.contramodule)
    return out


def is_yd_morphism(phi, src, dst) -> bool:
    return all(not np.any(d != 0) for d in yd_morphism_defects(phi, src, dst).values())


# ---------------------------------------------------------------------------
# twists of YD objects


def twist_yd_module(m: YdModule, k: int) -> YdModule:
    """``k·M = _{S^{-2k}}M^{S^{2k}}`` (same charge)."""
    return YdModule.make(twist_module(m.module, -k), twist_comodule(m.comodule, k), m.charge)


def twist_yd_contramodule(n: YdContramodule, k: int) -> YdContramodule:
    """``k·N = _{S^{-2k}}N^{S^{2k}}`` with ``α^{S^{2k}}(f) = α(f ∘ S^{2k})``."""
    return YdContramodule.make(twist_module(n.module, -k), twist_contramodule(n.contramodule, k), n.charge)


def tensor_yd(m: YdModule, n: YdModule) -> YdModule:
    """``M ⊗ N`` of charge i+j: codiagonal coaction, ``x(m⊗n) = x²m ⊗ S^{-2i}(x¹)n``."""
    h = _same_algebra(m.carrier, n.carrier)
    f = h.field
    i = m.charge
    act = einsum("xya,pyq,bx,rbs->praqs",
                 h.D3, m.module.act3, h.S(-2 * i), n.module.act3, field=f)
    d = m.dim * n.dim
    module = LeftModule.from_tensor(h, tensor_space(m.space, n.space), act.reshape(d, h.dim, d))
    return YdModule.make(module, tensor_comodules(m.comodule, n.comodule), m.charge + n.charge)


# ---------------------------------------------------------------------------
# central structure


def tau_matrix(m: YdModule | BiStructure, t: RightComodule) -> np.ndarray:
    """``τ_T: T⊗M -> M⊗T^{S²}``, ``t⊗m ↦ t₁m ⊗ t₀``."""
    b = m.carrier if isinstance(m, YdModule) else m
    f = b.over.field
    tau = einsum("sat,paq->pstq", t.coact3, b.module.act3, field=f)
    dm, dt = b.dim, t.dim
    return tau.reshape(dm * dt, dt * dm)


def tau_inverse_matrix(m: YdModule | BiStructure, t: RightComodule) -> np.ndarray:
    """``m⊗t ↦ t₀ ⊗ S(t₁)m``."""
    b = m.carrier if isinstance(m, YdModule) else m
    h = b.over
    f = h.field
    inv = einsum("sat,ba,pbq->spqt", t.coact3, h.S(1), b.module.act3, field=f)
    dm, dt = b.dim, t.dim
    return inv.reshape(dt * dm, dm * dt)


@dataclass(frozen=True, eq=False)
class CentralStructure:
    """A comodule M with a family of maps ``τ_T: T⊗M -> M⊗T^{S²}``."""

    comodule: RightComodule
    family: tuple[RightComodule, ...]
    tau: tuple[np.ndarray, ...]

    @property
    def over(self) -> HopfAlgebra:
        return self.comodule.over


def generating_family(h: HopfAlgebra) -> tuple[RightComodule, ...]:
    """The test family k, H, H⊗H used for τ-naturality checks."""
    from .reps import regular_comodule
    reg = regular_comodule(h)
    return (trivial_comodule(h), reg, tensor_comodules(reg, reg))


def tau_from_action(b: YdModule | BiStructure, require_ayd: bool = True) -> CentralStructure:
    carrier = b.carrier if isinstance(b, YdModule) else b
    if require_ayd and not check_yd_module(carrier, -1).passed:
        raise NotAYD("central structure requires an anti-Yetter-Drinfeld module")
    fam = generating_family(carrier.over)
    return CentralStructure(carrier.comodule, fam, tuple(tau_matrix(carrier, t) for t in fam))


def action_from_tau(c: CentralStructure) -> LeftModule:
    """``hm = (id⊗ε)τ_H(h⊗m)``; τ_H is the member of the family indexed by H."""
    h = c.over
    f = h.field
    t_h = c.tau[1]
    d = c.comodule.dim
    act = einsum("pbaq,b->paq", t_h.reshape(d, h.dim, h.dim, d), h.eps, field=f)
    return LeftModule.from_tensor(h, c.comodule.space, act)


def check_tau_comodule_map(m: YdModule | BiStructure, t: RightComodule) -> Report:
    b = m.carrier if isinstance(m, YdModule) else m
    f = b.over.field
    src = tensor_comodules(t, b.comodule)
    dst = tensor_comodules(b.comodule, twist_comodule(t, 1))
    tau = tau_matrix(b, t)
    rep = Report("τ_T comodule map")
    rep.add("tau-comodule-map", "τ_T(t⊗m) = t₁m⊗t₀ is a map T⊗M -> M⊗T^{S²} in M^H",
            is_comodule_map(tau, src, dst))
    inv = tau_inverse_matrix(b, t)
    n = tau.shape[0]
    rep.add("tau-invertible", "m⊗t ↦ t₀⊗S(t₁)m inverts τ_T",
            bool(np.all(f.reduce(tau.dot(inv)) == f.eye(n))) and bool(np.all(f.reduce(inv.dot(tau)) == f.eye(n))))
    return rep


def tau_on_hom(m: YdModule | BiStructure, w: RightComodule) -> np.ndarray:
    """``τf(w) = w₁ f(w₀)`` on the flattened Hom(W, M)."""
    b = m.carrier if isinstance(m, YdModule) else m
    f = b.over.field
    # f = E_{pj}: τf(w_q) = Σ_a cW[j,a,q] e_a · m_p
    t = einsum("jaq,rap->rqpj", w.coact3, b.module.act3, field=f)
    n = b.dim * w.dim
    return t.reshape(n, n)


def check_tau_on_hom(m: YdModule | BiStructure, w: RightComodule) -> Report:
    b = m.carrier if isinstance(m, YdModule) else m
    rep = Report("τ on internal Hom")
    rep.add("tau-hom", "τ: Hom^l(W,M) -> Hom^r(W,M) is a comodule map",
            is_comodule_map(tau_on_hom(b, w), hom_l(w, b.comodule), hom_r(w, b.comodule)))
    return rep


def is_stable_via_tau(m: YdModule | BiStructure) -> bool:
    """``τ(Id_M) = Id_M``, i.e. ``m₁m₀ = m``."""
    b = m.carrier if isinstance(m, YdModule) else m
    f = b.over.field
    ident = f.eye(b.dim).reshape(-1)
    return bool(np.all(f.reduce(tau_on_hom(b, b.comodule).dot(ident)) == ident))


def check_tau_center(m: YdModule | BiStructure) -> Report:
    """τ_T on the generating family, the action↔τ roundtrip and stability via τ(Id)."""
    b = m.carrier if isinstance(m, YdModule) else m
    rep = Report("central structure τ")
    names = ("k", "H", "H⊗H")
    for name, t in zip(names, generating_family(b.over)):
        rep.extend(check_tau_comodule_map(b, t), f"T={name}.")
    try:
        c = tau_from_action(b)
    except NotAYD:
        rep.add("roundtrip", "action -> τ -> action is the identity", False, "not an aYD module")
        return rep
    back = action_from_tau(c)
    rep.add("roundtrip", "action -> τ -> action is the identity", bool(np.all(back.act3 == b.module.act3)))
    again = tau_from_action(BiStructure(back, comodule=b.comodule))
    rep.add("roundtrip-tau", "τ -> action -> τ is the identity",
            all(np.array_equal(x, y) for x, y in zip(c.tau, again.tau)))
    return rep


# ---------------------------------------------------------------------------
# integrals


@dataclass(frozen=True, eq=False)
class IntegralSpace:
    J: SubspaceWitness
    K: QuotientWitness


def right_integral_conditions(h: HopfAlgebra) -> np.ndarray:
    """Rows express ``χ(h¹)h² - χ(h)1 = 0`` for each basis h and output coordinate."""
    f = h.field
    cond = h.D3.transpose(1, 2, 0) - einsum("b,ca->bca", h.one, h.field.eye(h.dim), field=f)
    return f.reduce(cond.reshape(h.dim * h.dim, h.dim))


def left_integral_relations(h: HopfAlgebra) -> np.ndarray:
    """Columns ``μ(h¹)h² - μ(1)h`` for ``μ = e^a``, ``h = e_c``."""
    f = h.field
    rel = h.D3.transpose(1, 0, 2) - einsum("a,bc->bac", h.one, f.eye(h.dim), field=f)
    return f.reduce(rel.reshape(h.dim, h.dim * h.dim))


def right_integrals(h: HopfAlgebra) -> IntegralSpace:
    f = h.field
    hs = VecSpace(h.dim, tuple(f"{x}*" for x in h.labels), f)
    cond = LinMap(hs, VecSpace.of_dim(h.dim * h.dim, f, "c"), right_integral_conditions(h))
    J = kernel(cond)
    rel = left_integral_relations(h)
    K = cokernel(LinMap(VecSpace.of_dim(rel.shape[1], f, "r"), h.space, rel))
    return IntegralSpace(J, K)


# ---------------------------------------------------------------------------
# comodule <-> contramodule switch


def iota_contramodule(c: RightComodule) -> RightContramodule:
    """``χ⊗m ↦ χ(S²(m₁)) m₀``."""
    h = c.over
    return RightContramodule.from_tensor(h, c.space,
                                         einsum("ab,pbq->paq", h.S(2), c.coact3, field=h.field))


def iota_inverse_comodule(n: RightContramodule) -> RightComodule:
    h = n.over
    return RightComodule.from_tensor(h, n.space,
                                     einsum("ba,paq->pbq", h.S(-2), n.contra3, field=h.field))


def iota(m: YdModule) -> YdContramodule:
    return YdContramodule.make(m.module, iota_contramodule(m.comodule), m.charge)


def iota_inverse(n: YdContramodule) -> YdModule:
    return YdModule.make(n.module, iota_inverse_comodule(n.contramodule), n.charge)


# ---------------------------------------------------------------------------
# stability


@dataclass(frozen=True, eq=False)
class StabilityMap:
    sigma: np.ndarray
    inverse: np.ndarray
    target: YdModule | YdContramodule
    shift: int  # σ lands in (-shift)·X

    def is_identity(self) -> bool:
        return bool(np.all(self.sigma == np.eye(self.sigma.shape[0], dtype=np.int64)))


def sigma_module_matrix(m: YdModule, power: int) -> np.ndarray:
    """``m ↦ S^{power}(m₁) m₀``."""
    h = m.over
    return einsum("rbq,cb,pcr->pq", m.comodule.coact3, h.S(power), m.module.act3, field=h.field)


def sigma_contramodule_matrix(n: YdContramodule, power: int) -> np.ndarray:
    """``n ↦ α(h ↦ S^{power}(h) n)``; power 0 gives ``α(r_n)``."""
    h = n.over
    return einsum("par,ba,rbq->pq", n.contramodule.contra3, h.S(power), n.module.act3, field=h.field)


def sigma(x: YdModule | YdContramodule) -> StabilityMap:
    """σ for a YD_{i-1} module (``m ↦ S^{2i}(m₁)m₀``) or a YD_{i+1} contramodule
    (``n ↦ α(r_n)``), landing in ``(-i)·X = _{S^{2i}}X^{S^{-2i}}``."""
    if isinstance(x, YdModule):
        i = x.charge + 1
        s = sigma_module_matrix(x, 2 * i)
        inv = sigma_module_matrix(x, -1)
        target = twist_yd_module(x, -i)
    else:
        i = x.charge - 1
        s = sigma_contramodule_matrix(x, 0)
        inv = sigma_contramodule_matrix(x, 2 * i - 1)
        target = twist_yd_contramodule(x, -i)
    return StabilityMap(s, inv, target, i)


def check_sigma(x: YdModule | YdContramodule) -> Report:
    f = x.over.field
    st = sigma(x)
    n = x.dim
    rep = Report("stability map")
    rep.add("sigma-inverse", "σ∘σ⁻¹ = id = σ⁻¹∘σ",
            bool(np.all(f.reduce(st.sigma.dot(st.inverse)) == f.eye(n)))
            and bool(np.all(f.reduce(st.inverse.dot(st.sigma)) == f.eye(n))))
    rep.add("sigma-morphism", "σ: X -> (-i)·X is a YD morphism", is_yd_morphism(st.sigma, x, st.target))
    return rep


def is_stable(x: YdModule | YdContramodule) -> bool:
    return sigma(x).is_identity()
