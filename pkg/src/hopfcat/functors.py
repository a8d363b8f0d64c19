"""The hat functor ``M ↦ Hom(H, M)^H``, its left adjoint ``N ↦ H ⊙_H N``, and
the identities relating them (adjunction, bimodule compatibility, stability).

Elements of ``Hom(H, M)`` are flattened as ``f[p, c]`` at index ``p * dim H + c``
(coefficient of ``m_p`` in ``f(e_c)``); elements of ``H ⊗ N`` sit at
``x * dim N + q``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hopf import HopfAlgebra
from .linalg import (
    LinMap, NotInSpan, QuotientWitness, SubspaceWitness, VecSpace, cokernel, column_basis,
    coordinates, einsum, matmul, nullspace, rref, same_span, tensor_space,
)
from .report import Report
from .reps import (
    LeftModule, RightComodule, RightContramodule, _same_algebra, cached, invariants,
    is_comodule_map, is_contramodule_map, regular_comodule, tensor_comodules,
    trivial_comodule, twist_comodule,
)
from .yd import (
    ChargeMismatch, NotVerified, YdContramodule, YdModule, _contra_action_tensor, iota_inverse,
    is_yd_morphism, right_integrals, sigma, tensor_yd, trivial_yd_module, twist_yd_module,
)


class ZeroIntegral(ValueError):
    pass


def _is_identity(m: np.ndarray) -> bool:
    return m.shape[0] == m.shape[1] and bool(np.all(m == np.eye(m.shape[0], dtype=np.int64)))


def _invertible(m: np.ndarray, field) -> bool:
    return m.shape[0] == m.shape[1] and len(rref(m, field)[1]) == m.shape[0]


# ---------------------------------------------------------------------------
# hat


def hat_contramodule(m: RightComodule) -> tuple[RightContramodule, SubspaceWitness]:
    """``Hom(H, M)^H`` with ``αθ(h) = θ_{h¹}(h²)`` (comodule level, no action)."""
    h = m.over
    f = h.field
    inv = invariants(regular_comodule(h), m)
    d, n, r = m.dim, h.dim, inv.dim
    B = inv.basis.reshape(d, n, r)
    # α(e^a ⊗ φ)(e_b) = Σ_y D3[a, y, b] φ(e_y)
    img = einsum("ayb,qys->qbas", h.D3, B, field=f).reshape(d * n, n * r)
    contra3 = coordinates(inv.basis, img, f).reshape(r, n, r)
    space = VecSpace.of_dim(r, f, "f")
    return RightContramodule.from_tensor(h, space, contra3), inv


def hat_action_images(module: LeftModule, basis: np.ndarray, i: int) -> np.ndarray:
    """``h·f = h² f(S(h³) - S^{-2i}(h¹))`` applied to flattened maps (columns of basis)."""
    h = module.over
    f = h.field
    d, n = module.dim, h.dim
    r = basis.shape[1]
    G = _contra_action_tensor(h, -2 * i)
    B = basis.reshape(d, n, r)
    return einsum("avbc,pvq,qbs->pcas", G, module.act3, B, field=f).reshape(d * n, n * r)


@dataclass(frozen=True, eq=False)
class HatImage:
    source: YdModule
    carrier: YdContramodule
    inclusion: SubspaceWitness
    i: int

    @property
    def basis(self) -> np.ndarray:
        return self.inclusion.basis


def _require(m, charge_shift: int, i: int | None):
    if i is not None and m.charge != i + charge_shift:
        raise ChargeMismatch(f"expected charge {i + charge_shift}, got {m.charge}")
    if not m.verified:
        raise NotVerified("input structure failed its axiom or YD check")


def hat(m: YdModule, i: int | None = None) -> HatImage:
    """YD_{i-1} module -> YD_{i+1} contramodule."""
    _require(m, -1, i)
    i = m.charge + 1
    h = m.over
    f = h.field
    contra, inv = hat_contramodule(m.comodule)
    r = inv.dim
    try:
        act = coordinates(inv.basis, hat_action_images(m.module, inv.basis, i), f)
    except NotInSpan as exc:
        raise NotVerified("action does not preserve comodule maps") from exc
    module = LeftModule.from_tensor(h, contra.space, act.reshape(r, h.dim, r))
    return HatImage(m, YdContramodule.make(module, contra, i + 1), inv, i)


def hat_action_preserves_invariants(module: LeftModule, comodule: RightComodule, i: int) -> bool:
    inv = invariants(regular_comodule(module.over), comodule)
    imgs = hat_action_images(module, inv.basis, i)
    return inv.contains(imgs)


def hat_map(phi, src: HatImage, dst: HatImage) -> np.ndarray:
    """``Ŵφ: f ↦ φ∘f`` in hat coordinates."""
    f = src.source.over.field
    n = src.source.over.dim
    img = einsum("rp,pcs->rcs", phi, src.basis.reshape(src.source.dim, n, -1), field=f)
    return coordinates(dst.basis, img.reshape(dst.source.dim * n, -1), f)


# ---------------------------------------------------------------------------
# prime


def prime_relations(n: RightContramodule) -> np.ndarray:
    """Image of ``h⊗f ↦ h⊗α(f) - h²⊗f(h¹)`` on ``H ⊗ Hom(H, N)`` inside ``H ⊗ N``."""
    h = n.over
    f = h.field
    d, dim = n.dim, h.dim
    rel = (einsum("yx,paq->ypxaq", f.eye(dim), n.contra3, field=f)
           - einsum("ayx,pq->ypxaq", h.D3, f.eye(d), field=f))
    return rel.reshape(dim * d, dim * dim * d)


def _prime_coaction_full(h: HopfAlgebra, d: int) -> np.ndarray:
    """``(h⊗n) ↦ (h¹⊗n) ⊗ h²`` on H⊗N as tensor ``[(y,p), b, (x,q)]``."""
    f = h.field
    return einsum("ybx,pq->ypbxq", h.D3, f.eye(d), field=f).reshape(h.dim * d, h.dim, h.dim * d)


def prime_comodule(n: RightContramodule) -> tuple[RightComodule, QuotientWitness, bool]:
    """``H ⊙_H N`` with coaction ``(h⊗n)₀⊗(h⊗n)₁ = (h¹⊗n)⊗h²``; flag = coaction descends."""
    h = n.over
    f = h.field
    d = n.dim
    rel = _relation_basis(n)
    q = cokernel(LinMap(VecSpace.of_dim(rel.shape[1], f, "r"), tensor_space(h.space, n.space), rel))
    P, Sc = q.projection.matrix, q.section.matrix
    C = _prime_coaction_full(h, d)
    return RightComodule.from_tensor(h, q.space, _induced(P, C, Sc, f)), q, _descends(P, C, rel, f)


def _relation_basis(n: RightContramodule) -> np.ndarray:
    return column_basis(prime_relations(n), n.over.field)


def _slices(op: np.ndarray):
    return [op[:, a, :] for a in range(op.shape[1])]


def _descends(P, op, rel, f) -> bool:
    """``P ∘ op_a`` kills the relation space for every a."""
    return all(not np.any(matmul(P, matmul(o, rel, f), f) != 0) for o in _slices(op))


def _induced(P, op, Sc, f) -> np.ndarray:
    return np.stack([matmul(P, matmul(o, Sc, f), f) for o in _slices(op)], axis=1)


def prime_action_tensor(h: HopfAlgebra, i: int, variant: str = "derived") -> np.ndarray:
    """``T[a, v, c, x]``: ``e_a·(e_x⊗n) = Σ e_c ⊗ T[a,v,c,x] e_v n``.

    ``derived``: ``h·(x⊗n) = h³ x S^{1-2i}(h¹) ⊗ h²n``;
    ``literal``: ``h·(x⊗n) = S^{1-2i}(h³) x S(h¹) ⊗ h²n``.
    """
    f = h.field
    k = 1 - 2 * i

    def build():
        if variant == "derived":
            return einsum("uvwa,cwxt,tu->avcx", h.D4, h.m4, h.S(k), field=f)
        return einsum("uvwa,csxt,sw,tu->avcx", h.D4, h.m4, h.S(k), h.S(1), field=f)
    return cached(h, ("prime-action", i, variant), build)


@dataclass(frozen=True, eq=False)
class PrimeImage:
    source: YdContramodule
    carrier: YdModule
    projection: QuotientWitness
    i: int
    action_descends: bool
    coaction_descends: bool

    @property
    def P(self) -> np.ndarray:
        return self.projection.projection.matrix

    @property
    def section(self) -> np.ndarray:
        return self.projection.section.matrix


def prime_action_full(module: LeftModule, i: int, variant: str = "derived") -> np.ndarray:
    """Action on ``H ⊗ N`` as tensor ``[(c,p), a, (x,q)]``."""
    h = module.over
    f = h.field
    d = module.dim
    T = prime_action_tensor(h, i, variant)
    return einsum("avcx,pvq->cpaxq", T, module.act3, field=f).reshape(h.dim * d, h.dim, h.dim * d)


def prime(n: YdContramodule, i: int | None = None, variant: str = "derived") -> PrimeImage:
    """YD_{i+1} contramodule -> YD_{i-1} module."""
    _require(n, 1, i)
    i = n.charge - 1
    h = n.over
    f = h.field
    comod, q, co_ok = prime_comodule(n.contramodule)
    P, Sc = q.projection.matrix, q.section.matrix
    A = prime_action_full(n.module, i, variant)
    act_ok = _descends(P, A, _relation_basis(n.contramodule), f)
    act = _induced(P, A, Sc, f)
    module = LeftModule.from_tensor(h, q.space, act)
    return PrimeImage(n, YdModule.make(module, comod, i - 1), q, i, act_ok, co_ok)


def prime_map(psi, src: PrimeImage, dst: PrimeImage) -> np.ndarray:
    """``ψ′: h⊗n ↦ h⊗ψ(n)`` on the quotients."""
    h = src.source.over
    f = h.field
    full = np.kron(f.eye(h.dim), np.asarray(psi, dtype=object))
    return f.reduce(dst.P.dot(f.reduce(full.dot(src.section))))


# ---------------------------------------------------------------------------
# adjunction


def adjunction_counit(hm: HatImage, phm: PrimeImage) -> np.ndarray:
    """``(Ŵ M)′ -> M``, ``h⊗f ↦ f(h)``; ``phm`` must be ``prime(hat(M))``."""
    h = hm.source.over
    f = h.field
    d, n, r = hm.source.dim, h.dim, hm.inclusion.dim
    ev = hm.basis.reshape(d, n, r).reshape(d, n * r)  # e_x⊗b_s ↦ B[:, x, s]
    return f.reduce(ev.dot(phm.section))


def adjunction_counit_well_defined(hm: HatImage) -> bool:
    h = hm.source.over
    f = h.field
    d, n, r = hm.source.dim, h.dim, hm.inclusion.dim
    ev = hm.basis.reshape(d, n * r)
    return not np.any(f.reduce(ev.dot(prime_relations(hm.carrier.contramodule))) != 0)


def adjunction_unit(pn: PrimeImage, hpn: HatImage) -> np.ndarray:
    """``N -> Ŵ(N′)``, ``n ↦ (h ↦ h⊗n)``; ``hpn`` must be ``hat(prime(N))``."""
    h = pn.source.over
    f = h.field
    d, n = pn.source.dim, h.dim
    r = pn.P.shape[0]
    funcs = pn.P.reshape(r, n, d)  # f_q[s, x] = P[s, (x, q)]
    return coordinates(hpn.basis, funcs.reshape(r * n, d), f)


@dataclass(frozen=True)
class AdjunctionData:
    counit: np.ndarray
    unit: np.ndarray
    report: Report


def check_adjunction(m: YdModule, n: YdContramodule | None = None) -> AdjunctionData:
    """Counit at M, unit at N (default ``Ŵ M``), both triangle identities."""
    h = m.over
    f = h.field
    rep = Report("adjunction")
    hm = hat(m)
    phm = prime(hm.carrier)
    eps = adjunction_counit(hm, phm)
    rep.add("counit-well-defined", "h⊗f ↦ f(h) vanishes on the defining relations",
            adjunction_counit_well_defined(hm))
    rep.add("counit-morphism", "counit (Ŵ M)′ -> M is a YD morphism", is_yd_morphism(eps, phm.carrier, m))
    rep.add("counit-iso", "counit is invertible", _invertible(eps, f))
    if n is None:
        n = hm.carrier
    pn = prime(n)
    hpn = hat(pn.carrier)
    eta = adjunction_unit(pn, hpn)
    rep.add("unit-morphism", "unit N -> Ŵ(N′) is a YD morphism", is_yd_morphism(eta, n, hpn.carrier))
    rep.add("unit-iso", "unit is invertible", _invertible(eta, f))
    # ε_{N′} ∘ (η_N)′ = id_{N′}
    hpn_prime = prime(hpn.carrier)
    tri1 = f.reduce(adjunction_counit(hpn, hpn_prime).dot(prime_map(eta, pn, hpn_prime)))
    rep.add("triangle-prime", "ε_{N′}∘(η_N)′ = id", _is_identity(tri1))
    # Ŵ(ε_M) ∘ η_{Ŵ M} = id_{Ŵ M}
    hphm = hat(phm.carrier)
    eta_hm = adjunction_unit(phm, hphm)
    tri2 = f.reduce(hat_map(eps, hphm, hm).dot(eta_hm))
    rep.add("triangle-hat", "Ŵ(ε_M)∘η_{Ŵ M} = id", _is_identity(tri2))
    return AdjunctionData(eps, eta, rep)


# ---------------------------------------------------------------------------
# fd formula and bimodule compatibility


def hat_contramodule_action_free(m: RightComodule) -> RightContramodule:
    return hat_contramodule(m)[0]


def contratensor(t: RightComodule, n: RightContramodule, l: RightComodule) -> RightContramodule:
    """``α(t⊗f⊗l) = t₀ ⊗ α_N(f(t₁ - l₁)) ⊗ l₀`` on ``T ⊗ N ⊗ L``."""
    h = _same_algebra(t, n, l)
    f = h.field
    c = einsum("pbq,uev,abce,rcs->pruaqsv", t.coact3, l.coact3, h.m4, n.contra3, field=f)
    d = t.dim * n.dim * l.dim
    space = tensor_space(tensor_space(t.space, n.space), l.space)
    return RightContramodule.from_tensor(h, space, c.reshape(d, h.dim, d))


@dataclass(frozen=True)
class Isomorphism:
    matrix: np.ndarray
    report: Report

    @property
    def verified(self) -> bool:
        return self.report.passed


def _hom_image_map(t: RightComodule, l: RightComodule, basis_w: np.ndarray, dim_w: int,
                   kt: int, kl: int) -> np.ndarray:
    """``t⊗f⊗l ↦ (h ↦ t₀ ⊗ f(S^{kt}(t₁) h S^{kl}(l₁)) ⊗ l₀)`` into flattened Hom(H, T⊗W⊗L)."""
    h = t.over
    f = h.field
    n = h.dim
    w4 = einsum("cbxe,bB,eE->cBxE", h.m4, h.S(kt), h.S(kl), field=f)
    B = basis_w.reshape(dim_w, n, -1)
    phi = einsum("pbq,uev,cbxe,rcs->pruxqsv", t.coact3, l.coact3, w4, B, field=f)
    rows = t.dim * dim_w * l.dim * n
    return phi.reshape(rows, -1)


def bimodule_iso(t: RightComodule, w: RightComodule, l: RightComodule,
                 twist_t: int = 1, twist_l: int = -1, formula: tuple[int, int] = (1, -1)) -> Isomorphism:
    """``T^{S²} ⊗ Ŵ W ⊗ L^{S⁻²} -> Ŵ(T⊗W⊗L)``, ``t⊗f⊗l ↦ t₀⊗f(S(t₁)-S⁻¹(l₁))⊗l₀``.

    ``twist_t`` / ``twist_l`` are the powers of S² twisting the source
    coactions, ``formula`` the powers of S applied to ``t₁`` and ``l₁``.
    """
    h = _same_algebra(t, w, l)
    f = h.field
    hw, inv_w = hat_contramodule(w)
    twl = tensor_comodules(tensor_comodules(t, w), l)
    target, inv_t = hat_contramodule(twl)
    src = contratensor(twist_comodule(t, twist_t), hw, twist_comodule(l, twist_l))
    img = _hom_image_map(t, l, inv_w.basis, w.dim, *formula)
    rep = Report("bimodule isomorphism")
    lands = inv_t.contains(img)
    rep.add("lands-in-invariants", "image lies in Hom(H, T⊗W⊗L)^H", lands)
    if not lands:
        rep.add("bijective", "map is invertible", False)
        rep.add("contramodule-map", "map intertwines contraactions", False)
        return Isomorphism(f.zeros((target.dim, src.dim)), rep)
    mat = coordinates(inv_t.basis, img, f)
    rep.add("bijective", "map is invertible", _invertible(mat, f))
    rep.add("contramodule-map", "map intertwines contraactions", is_contramodule_map(mat, src, target))
    return Isomorphism(mat, rep)


def prime_bimodule_iso(t: RightComodule, n: RightContramodule, l: RightComodule,
                       twist_t: int = -1, twist_l: int = 1) -> Isomorphism:
    """``H⊙(T⊗N⊗L) -> T^{S⁻²} ⊗ (H⊙N) ⊗ L^{S²}``,
    ``h⊗t⊗n⊗l ↦ t₀ ⊗ S⁻¹(t₁)hS(l₁) ⊗ n ⊗ l₀``."""
    h = _same_algebra(t, n, l)
    f = h.field
    dim = h.dim
    tnl = contratensor(t, n, l)
    src, q_src, _ = prime_comodule(tnl)
    pn, q_n, _ = prime_comodule(n)
    target = tensor_comodules(tensor_comodules(twist_comodule(t, twist_t), pn), twist_comodule(l, twist_l))
    # full map H⊗T⊗N⊗L -> T⊗(H⊗N)⊗L, then project the middle factor
    mid = einsum("cbxe,bB,eE->cBxE", h.m4, h.S(-1), h.S(1), field=f)  # S⁻¹(e_B) e_x S(e_E)
    full = einsum("pbq,uev,cbxe,rs->pcruxqsv", t.coact3, l.coact3, mid, f.eye(n.dim), field=f)
    dt, dn, dl = t.dim, n.dim, l.dim
    full = full.reshape(dt, dim * dn, dl, dim * dt * dn * dl)
    Pn = q_n.projection.matrix
    proj = einsum("sy,pyuk->psuk", Pn, full, field=f).reshape(dt * Pn.shape[0] * dl, -1)
    rep = Report("prime bimodule isomorphism")
    rel = prime_relations(tnl)
    descends = not np.any(matmul(proj, rel, f) != 0)
    rep.add("descends", "map vanishes on the defining relations", descends)
    mat = matmul(proj, q_src.section.matrix, f)
    rep.add("bijective", "induced map is invertible", _invertible(mat, f))
    rep.add("comodule-map", "induced map is a comodule map", is_comodule_map(mat, src, target))
    return Isomorphism(mat, rep)


def fd_equivalence_formula(m: RightComodule, no_twist: bool = False) -> Isomorphism:
    """``M^{S²} ⊗ J -> Ŵ M``, ``t⊗χ ↦ (h ↦ t₀ χ(S(t₁)h))``; ``no_twist`` uses M itself."""
    h = m.over
    ints = right_integrals(h)
    if ints.J.dim == 0:
        raise ZeroIntegral("no nonzero right integral")
    k = trivial_comodule(h)
    iso = bimodule_iso(m, k, k, twist_t=0 if no_twist else 1, twist_l=0, formula=(1, 0))
    iso.report.suite = "fd formula Ŵ M ≅ M^{S²}⊗J" + (" (untwisted)" if no_twist else "")
    return iso


def check_bimodule_isos(w: RightComodule, n: RightContramodule | None = None,
                        twists: bool = True) -> Report:
    """Both bimodule isomorphisms for T, L ∈ {k, H}; ``twists=False`` drops the S^{±2} twists."""
    h = w.over
    if n is None:
        n = hat_contramodule(w)[0]
    k, reg = trivial_comodule(h), regular_comodule(h)
    rep = Report("bimodule isomorphisms" + ("" if twists else " (untwisted)"))
    for tn, t in (("k", k), ("H", reg)):
        for ln, l in (("k", k), ("H", reg)):
            a = bimodule_iso(t, w, l, *((1, -1) if twists else (0, 0)))
            rep.extend(a.report, f"hat[T={tn},L={ln}].")
            b = prime_bimodule_iso(t, n, l, *((-1, 1) if twists else (0, 0)))
            rep.extend(b.report, f"prime[T={tn},L={ln}].")
    return rep


# ---------------------------------------------------------------------------
# stability and the second periodicity


def _precompose_S(h: HopfAlgebra, d: int, power: int) -> np.ndarray:
    """Flattened ``f ↦ f ∘ S^{power}`` on Hom(H, M)."""
    f = h.field
    return np.kron(f.eye(d), np.asarray(h.S(power), dtype=object).T)


def second_periodicity_triangle(m: YdModule) -> Report:
    """``Ŵ(σ_M) = (f ↦ f∘S^{2i}) ∘ σ_{Ŵ M}`` for M of charge i-1."""
    h = m.over
    f = h.field
    i = m.charge + 1
    hm = hat(m)
    sm = sigma(m)
    target = hat(twist_yd_module(m, -i))
    B = hm.basis
    d = m.dim
    lhs = f.reduce(np.kron(sm.sigma, f.eye(h.dim)).dot(B))
    s_hat = sigma(hm.carrier).sigma
    leg = _precompose_S(h, d, 2 * i)
    rhs = f.reduce(leg.dot(f.reduce(B.dot(s_hat))))
    rep = Report(f"second periodicity (i={i})")
    rep.add("lands", "Ŵ(σ_M) lands in Ŵ((-i)·M)", target.inclusion.contains(lhs))
    rep.add("triangle", "Ŵ(σ_M) = (f ↦ f(S^{2i}(-)))∘σ_{Ŵ M}", bool(np.all(lhs == rhs)))
    leg_coords = coordinates(target.basis, f.reduce(leg.dot(B)), f)
    rep.add("leg-morphism", "f ↦ f(S^{2i}(-)) is a YD morphism (-i)·Ŵ M -> Ŵ((-i)·M)",
            is_yd_morphism(leg_coords, sigma(hm.carrier).target, target.carrier))
    return rep


def prime_stability_leg(h: HopfAlgebra, d: int, i: int) -> np.ndarray:
    """``h⊗n ↦ S^{-2i}(h)⊗n`` on H⊗N."""
    return np.kron(np.asarray(h.S(-2 * i), dtype=object), h.field.eye(d))


def stability_transport(m: YdModule) -> Report:
    """Hat side: ``Ŵ(σ_M)`` against ``σ_{Ŵ M}``; prime side: ``(σ_N)′`` against ``σ_{N′}``
    for ``N = Ŵ M``, each composed with the S^{2i}-leg (identity when i = 0)."""
    h = m.over
    f = h.field
    i = m.charge + 1
    rep = Report(f"stability transport (i={i})")
    rep.extend(second_periodicity_triangle(m), "hat.")
    n = hat(m).carrier
    pn = prime(n)
    sn = sigma(n)
    tn = prime(sn.target)
    lhs = prime_map(sn.sigma, pn, tn)
    s_prime = sigma(pn.carrier).sigma
    leg = f.reduce(tn.P.dot(f.reduce(prime_stability_leg(h, n.dim, i).dot(pn.section))))
    rhs = f.reduce(leg.dot(s_prime))
    rep.add("prime.triangle", "(σ_N)′ = (h⊗n ↦ S^{-2i}(h)⊗n)∘σ_{N′}", bool(np.all(lhs == rhs)))
    rep.add("prime.leg-morphism", "h⊗n ↦ S^{-2i}(h)⊗n is a YD morphism (-i)·N′ -> ((-i)·N)′",
            is_yd_morphism(leg, sigma(pn.carrier).target, tn.carrier))
    if i == 0:
        rep.add("hat.equal", "σ̂_M = σ_{Ŵ M}",
                bool(np.all(hat_map(sigma(m).sigma, hat(m), hat(m)) == sigma(n).sigma)))
        rep.add("prime.equal", "(σ_N)′ = σ_{N′}", bool(np.all(lhs == s_prime)))
    return rep


def j_module(h: HopfAlgebra) -> YdModule:
    """ι⁻¹J with J = Ŵ k for the trivial YD_0 module k."""
    return iota_inverse(hat(trivial_yd_module(h, 0)).carrier)


def check_first_periodicity(m: YdModule) -> Report:
    h = m.over
    j = j_module(h)
    rep = Report(f"first periodicity (charge {m.charge})")
    rep.add("j-module", "ι⁻¹J is a YD_2 module", j.verified and j.charge == 2)
    p = tensor_yd(j, m)
    rep.add("charge", "ι⁻¹J⊗M is a YD module of charge +2", p.verified and p.charge == m.charge + 2,
            detail=f"{m.charge} -> {p.charge}")
    rep.add("dimension", "ι⁻¹J⊗M has the dimension of M", p.dim == m.dim)
    return rep


# ---------------------------------------------------------------------------
# equalizer presentation


def _free_bimodule_right_action(h: HopfAlgebra, v: LeftModule, power: int = -1) -> np.ndarray:
    """``(x⊗v)·y = x y² ⊗ S^{power}(y¹) v`` on ``H ⊗ V`` as ``[(c,p), (x,q), y]``."""
    f = h.field
    t = einsum("cxt,aty,ba,pbq->cpxqy", h.m3, h.D3, h.S(power), v.act3, field=f)
    n, d = h.dim, v.dim
    return t.reshape(n * d, n * d, n)


def equalizer(m: YdModule, v: LeftModule) -> tuple[SubspaceWitness, np.ndarray]:
    """Pullback of ``F = Hom(-, M)^H`` to the H-module V.

    V becomes the free H-bimodule ``V♮ = H ⊗ V`` in comodules, with right action
    ``(x⊗v)·y = xy² ⊗ S^{2i-1}(y¹)v``.  The result is the subspace of ``F(V♮)``
    on which ``g(b·y)`` agrees with the symmetric leg
    ``σ⁻¹(S^{2i}(b₁)·g(S^{2i}(y)·b₀))``.  For i = 0 and stable M this is the
    plain symmetry of F.  Returns the subspace and the basis of ``F(V♮)``.
    """
    h = m.over
    f = h.field
    n, d, dv = h.dim, m.dim, v.dim
    i = m.charge + 1
    co = einsum("ybx,pq->ypbxq", h.D3, f.eye(dv), field=f).reshape(n * dv, n, n * dv)
    vnat = RightComodule.from_tensor(h, VecSpace.of_dim(n * dv, f, "b"), co)
    fv = invariants(vnat, m.comodule)
    G = fv.basis.reshape(d, n * dv, -1)  # g[p, b, s]
    right = _free_bimodule_right_action(h, v, 2 * i - 1)
    left = einsum("pcs,cby->pbys", G, right, field=f)
    lmult = einsum("cyx,pq->cpyxq", h.m3, f.eye(dv), field=f).reshape(n * dv, n, n * dv)
    inv = sigma(m).inverse
    sym = einsum("Bab,ea,rep,pcs,cYB,Yy,tr->tbys", co, h.S(2 * i), m.module.act3, G, lmult,
                 h.S(2 * i), inv, field=f)
    ker = nullspace((left - sym).reshape(d * n * dv * n, -1), f)
    return SubspaceWitness(fv.space, ker), fv.basis


def hat_via_equalizer(m: YdModule) -> SubspaceWitness:
    """Equalizer at the regular module V = H, restricted along ``g ↦ g(- ⊗ 1)``."""
    h = m.over
    f = h.field
    from .reps import regular_module
    v = regular_module(h)
    eq, fbasis = equalizer(m, v)
    n, d = h.dim, m.dim
    maps = f.reduce(fbasis.dot(eq.basis)) if eq.dim else f.zeros((fbasis.shape[0], 0))
    g = maps.reshape(d, n, n, -1)  # g[p, x, q, s] = coefficient of m_p in g(e_x ⊗ e_q)
    restricted = einsum("pxqs,q->pxs", g, h.one, field=f).reshape(d * n, -1)
    return SubspaceWitness(VecSpace.of_dim(d * n, f, "f"), restricted)


def check_equalizer(m: YdModule) -> Report:
    f = m.over.field
    hm = hat(m)
    sub = hat_via_equalizer(m)
    rep = Report("equalizer presentation")
    rank = len(rref(sub.basis.T, f)[1]) if sub.dim else 0
    rep.add("injective", "restriction g ↦ g(-⊗1) is injective on the equalizer", rank == sub.dim)
    rep.add("same-span", "equalizer image = Hom(H, M)^H", same_span(sub.basis, hm.basis, f))
    return rep
