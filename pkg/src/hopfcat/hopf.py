"""Finite-dimensional Hopf algebras given by structure constants.

Tensor conventions (``n = dim H``, basis ``e_0..e_{n-1}``):

* ``m3[c, a, b]``  coefficient of ``e_c`` in ``e_a e_b``
* ``D3[a, b, c]``  coefficient of ``e_a ⊗ e_b`` in ``Δ(e_c)``
* ``S[b, a]``      coefficient of ``e_b`` in ``S(e_a)`` (matrix columns = images)
* ``eps[a]``, ``one[a]`` the counit and the unit vector

These are reshapes of the stored :class:`LinMap` matrices under the row-major
tensor convention of :mod:`hopfcat.linalg`.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Sequence

import numpy as np

from .linalg import (
    Field, LinMap, Q, Singular, VecSpace, dual_map, einsum, invert, tensor_space,
)
from .report import Report, first_nonzero


class BadGroupTable(ValueError):
    pass


class BadRootOfUnity(ValueError):
    pass


class AlgebraMismatch(ValueError):
    """Structures over different Hopf algebras were combined."""


# ---------------------------------------------------------------------------
# groups


class GroupTable:
    """A finite group by its multiplication table; validated on construction."""

    def __init__(self, mult_table, labels: Sequence[str] | None = None, name: str = "G"):
        t = np.asarray(mult_table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n) or n == 0:
            raise BadGroupTable("table must be a nonempty square array")
        if t.min() < 0 or t.max() >= n:
            raise BadGroupTable("table entries out of range")
        ids = [e for e in range(n) if all(t[e, g] == g and t[g, e] == g for g in range(n))]
        if len(ids) != 1:
            raise BadGroupTable("no two-sided identity")
        e = ids[0]
        inverse = np.full(n, -1, dtype=np.int64)
        for g in range(n):
            inv = [h for h in range(n) if t[g, h] == e and t[h, g] == e]
            if not inv:
                raise BadGroupTable(f"element {g} has no inverse")
            inverse[g] = inv[0]
        # associativity, vectorised over the first two indices
        lhs = t[t[:, :, None], np.arange(n)[None, None, :]]
        rhs = t[np.arange(n)[:, None, None], t[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise BadGroupTable("table is not associative")
        self.order = n
        self.mult_table = t
        self.inverse = inverse
        self.identity = e
        self.labels = tuple(labels) if labels is not None else tuple(f"g{k}" for k in range(n))
        self.name = name

    def mul(self, a: int, b: int) -> int:
        return int(self.mult_table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, x: int, g: int) -> int:
        """``x g x^{-1}``."""
        return self.mul(self.mul(x, g), self.inv(x))

    def power(self, a: int, k: int) -> int:
        r = self.identity
        base = a if k >= 0 else self.inv(a)
        for _ in range(abs(k)):
            r = self.mul(r, base)
        return r

    def element_order(self, a: int) -> int:
        k, r = 1, a
        while r != self.identity:
            r = self.mul(r, a)
            k += 1
        return k

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        classes = []
        for g in range(self.order):
            if g in seen:
                continue
            cls = tuple(sorted({self.conj(x, g) for x in range(self.order)}))
            seen.update(cls)
            classes.append(cls)
        return classes

    def centralizer(self, g: int) -> list[int]:
        return [x for x in range(self.order) if self.mul(x, g) == self.mul(g, x)]

    def generators(self) -> list[int]:
        """A small generating set, chosen greedily."""
        gens: list[int] = []
        span = {self.identity}
        for g in range(self.order):
            if g in span:
                continue
            gens.append(g)
            span = self._closure(gens)
            if len(span) == self.order:
                break
        return gens

    def _closure(self, gens: list[int]) -> set[int]:
        span = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(a, g)
                    if b not in span:
                        span.add(b)
                        nxt.append(b)
            frontier = nxt
        return span

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult_table, self.mult_table.T))

    def __repr__(self):
        return f"GroupTable({self.name}, order={self.order})"

    # constructors ---------------------------------------------------------
    @classmethod
    def cyclic(cls, n: int) -> GroupTable:
        t = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
        return cls(t, [str(k) for k in range(n)], name=f"Z{n}")

    @classmethod
    def from_permutations(cls, perms: Sequence[Sequence[int]], labels=None, name: str = "G") -> GroupTable:
        perms = [tuple(p) for p in perms]
        index = {p: k for k, p in enumerate(perms)}
        n = len(perms)
        t = np.zeros((n, n), dtype=np.int64)
        for a, p in enumerate(perms):
            for b, q in enumerate(perms):
                # (p q)(i) = p(q(i))
                comp = tuple(p[q[i]] for i in range(len(q)))
                if comp not in index:
                    raise BadGroupTable("permutations are not closed under composition")
                t[a, b] = index[comp]
        return cls(t, labels, name)

    @classmethod
    def symmetric(cls, k: int) -> GroupTable:
        perms = sorted(itertools.permutations(range(k)))
        labels = ["".join(str(i + 1) for i in p) for p in perms]
        return cls.from_permutations(perms, labels, name=f"S{k}")

    @classmethod
    def direct_product(cls, a: GroupTable, b: GroupTable) -> GroupTable:
        n, m = a.order, b.order
        t = np.zeros((n * m, n * m), dtype=np.int64)
        for i, j, k, l in itertools.product(range(n), range(m), range(n), range(m)):
            t[i * m + j, k * m + l] = a.mul(i, k) * m + b.mul(j, l)
        labels = [f"({x},{y})" for x in a.labels for y in b.labels]
        return cls(t, labels, name=f"{a.name}x{b.name}")


# ---------------------------------------------------------------------------
# Hopf algebras


class HopfAlgebra:
    """A Hopf algebra with invertible antipode, stored as dense structure maps.

    ``grouplikes`` and ``characters`` are optional metadata supplied by the
    builders (vectors in H and covectors on H); they seed the construction of
    one-dimensional Yetter-Drinfeld objects.
    """

    def __init__(self, space: VecSpace, mult: LinMap, unit: LinMap, comult: LinMap,
                 counit: LinMap, antipode: LinMap, name: str = "H",
                 grouplikes: Sequence[np.ndarray] = (), characters: Sequence[np.ndarray] = ()):
        k = VecSpace.line(space.field)
        hh = tensor_space(space, space)
        for label, f, dom, cod in (("mult", mult, hh, space), ("unit", unit, k, space),
                                   ("comult", comult, space, hh), ("counit", counit, space, k),
                                   ("antipode", antipode, space, space)):
            if f.dom != dom or f.cod != cod:
                raise ValueError(f"{label} has the wrong shape")
        self.space = space
        self.mult = mult
        self.unit = unit
        self.comult = comult
        self.counit = counit
        self.antipode = antipode
        self.name = name
        try:
            self.antipode_inv = invert(antipode)
        except Singular as exc:
            raise Singular(f"antipode of {name} is not invertible") from exc
        self.grouplikes = tuple(space.field.reduce(g) for g in grouplikes)
        self.characters = tuple(space.field.reduce(c) for c in characters)
        self._powers: dict[int, np.ndarray] = {0: space.field.eye(space.dim),
                                               1: antipode.matrix,
                                               -1: self.antipode_inv.matrix}

    @classmethod
    def from_tensors(cls, field: Field, labels: Sequence[str], m3, one, D3, eps, S,
                     name: str = "H", grouplikes=(), characters=()) -> HopfAlgebra:
        n = len(labels)
        H = VecSpace(n, tuple(labels), field)
        k = VecSpace.line(field)
        hh = tensor_space(H, H)
        m3 = field.reduce(np.asarray(m3, dtype=object))
        D3 = field.reduce(np.asarray(D3, dtype=object))
        return cls(H,
                   LinMap(hh, H, m3.reshape(n, n * n)),
                   LinMap(k, H, np.asarray(one, dtype=object).reshape(n, 1)),
                   LinMap(H, hh, D3.reshape(n * n, n)),
                   LinMap(H, k, np.asarray(eps, dtype=object).reshape(1, n)),
                   LinMap(H, H, np.asarray(S, dtype=object)),
                   name=name, grouplikes=grouplikes, characters=characters)

    def __repr__(self):
        return f"HopfAlgebra({self.name}, dim={self.dim}, field={self.field.name})"

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def field(self) -> Field:
        return self.space.field

    @property
    def labels(self) -> tuple[str, ...]:
        return self.space.labels

    # tensor views ---------------------------------------------------------
    @cached_property
    def m3(self) -> np.ndarray:
        n = self.dim
        return self.mult.matrix.reshape(n, n, n)

    @cached_property
    def D3(self) -> np.ndarray:
        n = self.dim
        return self.comult.matrix.reshape(n, n, n)

    @cached_property
    def D4(self) -> np.ndarray:
        """``D4[a, b, c, k]``: coefficient of ``e_a⊗e_b⊗e_c`` in ``Δ²(e_k)``."""
        return einsum("abd,dck->abck", self.D3, self.D3, field=self.field)

    @cached_property
    def m4(self) -> np.ndarray:
        """``m4[c, a, b, d]``: coefficient of ``e_c`` in ``e_a e_b e_d``."""
        return einsum("tab,ctd->cabd", self.m3, self.m3, field=self.field)

    @cached_property
    def eps(self) -> np.ndarray:
        return self.counit.matrix[0]

    @cached_property
    def one(self) -> np.ndarray:
        return self.unit.matrix[:, 0]

    def S(self, k: int = 1) -> np.ndarray:
        """Matrix of ``S^k`` (negative powers use the inverse antipode)."""
        if k not in self._powers:
            base = self.S(1) if k > 0 else self.S(-1)
            prev = self.S(k - 1) if k > 0 else self.S(k + 1)
            self._powers[k] = self.field.reduce(base.dot(prev))
        return self._powers[k]

    def basis_vector(self, a: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[a] = 1
        return v

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return einsum("cab,a,b->c", self.m3, x, y, field=self.field)

    def coproduct(self, x: np.ndarray) -> np.ndarray:
        return einsum("abc,c->ab", self.D3, x, field=self.field)


# ---------------------------------------------------------------------------
# verification


def verify_hopf_axioms(h: HopfAlgebra) -> Report:
    """Check every Hopf algebra axiom exactly, with a basis witness on failure."""
    f = h.field
    n = h.dim
    L = h.labels
    I = f.eye(n)
    m3, D3, eps, one, S, Sinv = h.m3, h.D3, h.eps, h.one, h.S(1), h.S(-1)
    rep = Report(f"hopf axioms: {h.name}")

    def add(cid, anchor, diff, roles):
        w = first_nonzero(diff, [(r, L) for r in roles])
        rep.add(cid, anchor, w is None, w)

    add("associativity", "m∘(m⊗id) = m∘(id⊗m)",
        einsum("tab,ctd->cabd", m3, m3, field=f) - einsum("tbd,cat->cabd", m3, m3, field=f),
        ["out", "a", "b", "c"])
    add("unit-left", "m∘(u⊗id) = id", einsum("a,cab->cb", one, m3, field=f) - I, ["out", "h"])
    add("unit-right", "m∘(id⊗u) = id", einsum("b,cab->ca", one, m3, field=f) - I, ["out", "h"])
    add("coassociativity", "(Δ⊗id)∘Δ = (id⊗Δ)∘Δ",
        einsum("abd,dck->abck", D3, D3, field=f) - einsum("adk,bcd->abck", D3, D3, field=f),
        ["a", "b", "c", "h"])
    add("counit-left", "(ε⊗id)∘Δ = id", einsum("a,abk->bk", eps, D3, field=f) - I, ["out", "h"])
    add("counit-right", "(id⊗ε)∘Δ = id", einsum("b,abk->ak", eps, D3, field=f) - I, ["out", "h"])
    lhs = einsum("cij,abc->abij", m3, D3, field=f)
    rhs = einsum("xyi,zwj,axz,byw->abij", D3, D3, m3, m3, field=f)
    add("comult-multiplicative", "Δ(ab) = Δ(a)Δ(b)", lhs - rhs, ["a", "b", "x", "y"])
    add("comult-unital", "Δ(1) = 1⊗1",
        (einsum("c,abc->ab", one, D3, field=f) - np.outer(one, one)).reshape(n, n), ["a", "b"])
    add("counit-multiplicative", "ε(ab) = ε(a)ε(b)",
        einsum("c,cij->ij", eps, m3, field=f) - f.reduce(np.outer(eps, eps)), ["x", "y"])
    rep.add("counit-unital", "ε(1) = 1", f.reduce(eps.dot(one)) == 1)
    unit_counit = f.reduce(np.outer(one, eps))
    add("antipode-left", "m∘(S⊗id)∘Δ = u∘ε",
        einsum("abk,xa,cxb->ck", D3, S, m3, field=f) - unit_counit, ["out", "h"])
    add("antipode-right", "m∘(id⊗S)∘Δ = u∘ε",
        einsum("abk,yb,cay->ck", D3, S, m3, field=f) - unit_counit, ["out", "h"])
    add("antipode-invertible", "S⁻¹∘S = id = S∘S⁻¹",
        np.concatenate([f.reduce(Sinv.dot(S)) - I, f.reduce(S.dot(Sinv)) - I]), ["out", "h"])
    return rep


def antipode_power(h: HopfAlgebra, k: int) -> LinMap:
    return LinMap(h.space, h.space, h.S(k))


def convolution(h: HopfAlgebra, f: LinMap, g: LinMap) -> LinMap:
    """``m ∘ (f ⊗ g) ∘ Δ`` for endomorphisms of H."""
    from .linalg import tensor_map
    return h.mult @ tensor_map(f, g) @ h.comult


def check_antipode_antihomomorphism(h: HopfAlgebra) -> Report:
    """S(ab) = S(b)S(a) and Δ∘S = (S⊗S)∘Δ^op on all basis pairs."""
    f = h.field
    S = h.S(1)
    rep = Report(f"antipode anti-homomorphism: {h.name}")
    lhs = einsum("tab,ct->cab", h.m3, S, field=f)
    rhs = einsum("xa,yb,cyx->cab", S, S, h.m3, field=f)
    rep.add("algebra-anti", "S(ab) = S(b)S(a)", bool(np.all(lhs == rhs)))
    lhs = einsum("abt,tk->abk", h.D3, S, field=f)
    rhs = einsum("bak,xa,yb->xyk", h.D3, S, S, field=f)
    rep.add("coalgebra-anti", "Δ(S(h)) = S(h²)⊗S(h¹)", bool(np.all(lhs == rhs)))
    return rep


def check_inverse_antipode_identities(h: HopfAlgebra) -> Report:
    """``h² S⁻¹(h¹) = ε(h)1 = S⁻¹(h²) h¹`` on every basis element."""
    f = h.field
    Si = h.S(-1)
    target = f.reduce(np.outer(h.one, h.eps))
    rep = Report(f"inverse antipode identities: {h.name}")
    rep.add("h2-Sinv-h1", "h²S⁻¹(h¹) = ε(h)1",
            bool(np.all(einsum("abk,xa,cbx->ck", h.D3, Si, h.m3, field=f) == target)))
    rep.add("Sinv-h2-h1", "S⁻¹(h²)h¹ = ε(h)1",
            bool(np.all(einsum("abk,xb,cxa->ck", h.D3, Si, h.m3, field=f) == target)))
    return rep


# ---------------------------------------------------------------------------
# derived algebras


def dual_hopf(h: HopfAlgebra) -> HopfAlgebra:
    """The dual Hopf algebra H* in the dual basis (convolution product)."""
    f = h.field
    n = h.dim
    labels = tuple(f"{x}*" for x in h.labels)
    Hs = VecSpace(n, labels, f)
    k = VecSpace.line(f)
    hh = tensor_space(Hs, Hs)
    return HopfAlgebra(
        Hs,
        LinMap(hh, Hs, h.comult.matrix.T),
        LinMap(k, Hs, h.counit.matrix.T),
        LinMap(Hs, hh, h.mult.matrix.T),
        LinMap(Hs, k, h.unit.matrix.T),
        LinMap(Hs, Hs, dual_map(h.antipode).matrix),
        name=f"{h.name}*",
        grouplikes=h.characters,
        characters=h.grouplikes,
    )


def evaluation_pairing_iso(h: HopfAlgebra) -> LinMap:
    """Canonical identification ``H -> H**`` (identity on coordinates)."""
    hss = dual_hopf(dual_hopf(h))
    return LinMap(h.space, hss.space, h.field.eye(h.dim))


# ---------------------------------------------------------------------------
# builders


def trivial_hopf(field: Field = Q) -> HopfAlgebra:
    one = [[[1]]]
    return HopfAlgebra.from_tensors(field, ["1"], one, [1], one, [1], [[1]], name="k",
                                    grouplikes=[np.array([1], dtype=object)],
                                    characters=[np.array([1], dtype=object)])


def _roots_of_unity(field: Field, n: int) -> list[int]:
    """Elements ω of the field with ω^n = 1 (raw values)."""
    if field.p is None:
        return [1, -1] if n % 2 == 0 else [1]
    return [w for w in range(1, field.p) if pow(w, n, field.p) == 1]


def group_characters(g: GroupTable, field: Field) -> list[np.ndarray]:
    """All homomorphisms ``G -> k^×`` as value vectors (brute force on generators)."""
    gens = g.generators()
    orders = [g.element_order(x) for x in gens]
    out = []
    for values in itertools.product(*[_roots_of_unity(field, o) for o in orders]):
        chi = {g.identity: 1}
        frontier = [g.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for a in frontier:
                for x, v in zip(gens, values):
                    b = g.mul(a, x)
                    val = field.reduce(np.array([chi[a] * v], dtype=object))[0]
                    if b in chi:
                        if chi[b] != val:
                            ok = False
                            break
                    else:
                        chi[b] = val
                        nxt.append(b)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(chi) != g.order:
            continue
        vec = np.array([chi[a] for a in range(g.order)], dtype=object)
        prod = all(field.reduce(np.array([vec[a] * vec[b] - vec[g.mul(a, b)]], dtype=object))[0] == 0
                   for a in range(g.order) for b in range(g.order))
        if prod:
            out.append(vec)
    return out


def group_algebra(g: GroupTable, field: Field = Q) -> HopfAlgebra:
    """kG with Δ(g) = g⊗g, ε(g) = 1, S(g) = g⁻¹."""
    n = g.order
    m3 = np.zeros((n, n, n), dtype=np.int64)
    D3 = np.zeros((n, n, n), dtype=np.int64)
    S = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        D3[a, a, a] = 1
        S[g.inv(a), a] = 1
        for b in range(n):
            m3[g.mul(a, b), a, b] = 1
    one = np.zeros(n, dtype=np.int64)
    one[g.identity] = 1
    grouplikes = [np.eye(n, dtype=np.int64)[a].astype(object) for a in range(n)]
    return HopfAlgebra.from_tensors(field, g.labels, m3.astype(object), one.astype(object),
                                    D3.astype(object), np.ones(n, dtype=object), S.astype(object),
                                    name=f"k{g.name}", grouplikes=grouplikes,
                                    characters=group_characters(g, field))


def _taft_labels(n: int) -> list[str]:
    def mono(a, b):
        g = "" if a == 0 else ("g" if a == 1 else f"g{a}")
        x = "" if b == 0 else ("x" if b == 1 else f"x{b}")
        return (g + x) or "1"
    return [mono(a, b) for b in range(n) for a in range(n)]


def _taft(n: int, field: Field, q, name: str) -> HopfAlgebra:
    q = field.raw(q)
    order = None
    acc = 1
    for k in range(1, 4 * n + 2):
        acc = field.reduce(np.array([acc * q], dtype=object))[0]
        if acc == 1:
            order = k
            break
    if order != n:
        raise BadRootOfUnity(f"q = {q} does not have multiplicative order {n} in {field.name}")
    dim = n * n

    def idx(a, b):
        return b * n + a

    def qpow(e):
        return field.reduce(np.array([q ** e if field.p is None else pow(int(q), e, field.p)], dtype=object))[0]

    m3 = field.zeros((dim, dim, dim))
    for a, b, c, d in itertools.product(range(n), repeat=4):
        if b + d < n:
            m3[idx((a + c) % n, b + d), idx(a, b), idx(c, d)] = qpow(b * c)
    one = field.zeros(dim)
    one[idx(0, 0)] = 1
    eps = field.zeros(dim)
    for a in range(n):
        eps[idx(a, 0)] = 1

    def mul(x, y):
        return einsum("cab,a,b->c", m3, x, y, field=field)

    def mul2(X, Y):  # product in H⊗H, X and Y are dim x dim coefficient arrays
        return einsum("pab,qcd,ac,bd->pq", m3, m3, X, Y, field=field)

    def basis(a, b):
        v = field.zeros(dim)
        v[idx(a, b)] = 1
        return v

    g_vec, x_vec = basis(1, 0), basis(0, 1)
    g_inv = basis(n - 1, 0)
    dg = np.outer(g_vec, g_vec).astype(object)
    dx = (np.outer(x_vec, one) + np.outer(g_vec, x_vec)).astype(object)
    s_g = g_inv
    s_x = field.reduce(-mul(g_inv, x_vec))
    D3 = field.zeros((dim, dim, dim))
    S = field.zeros((dim, dim))
    for a in range(n):
        for b in range(n):
            cop = np.outer(one, one).astype(object)
            sv = one.copy()
            for _ in range(a):
                cop = mul2(cop, dg)
            for _ in range(b):
                cop = mul2(cop, dx)
            # S(g^a x^b) = S(x)^b S(g)^a
            for _ in range(b):
                sv = mul(sv, s_x)
            for _ in range(a):
                sv = mul(sv, s_g)
            D3[:, :, idx(a, b)] = cop
            S[:, idx(a, b)] = sv
    grouplikes = [basis(a, 0) for a in range(n)]
    characters = []
    for w in _roots_of_unity(field, n):
        chi = field.zeros(dim)
        for a in range(n):
            chi[idx(a, 0)] = field.reduce(np.array([w ** a if field.p is None else pow(w, a, field.p)],
                                                   dtype=object))[0]
        characters.append(chi)
    return HopfAlgebra.from_tensors(field, _taft_labels(n), m3, one, D3, eps, S, name=name,
                                    grouplikes=grouplikes, characters=characters)


def sweedler_h4() -> HopfAlgebra:
    """Sweedler's 4-dimensional algebra over Q, basis ``1, g, x, gx``."""
    return _taft(2, Q, -1, name="H4")


def taft_algebra(n: int, p: int, q: int) -> HopfAlgebra:
    """Taft algebra of dimension n² over F_p; q must have order exactly n."""
    return _taft(n, Field(p), q, name=f"T({n},{p},{q})")


def corpus() -> dict[str, HopfAlgebra]:
    """The standard test corpus used by the sweeps and the CLI."""
    s3 = group_algebra(GroupTable.symmetric(3))
    return {
        "trivial": trivial_hopf(),
        "kZ2": group_algebra(GroupTable.cyclic(2)),
        "kS3": s3,
        "kS3_dual": dual_hopf(s3),
        "sweedler_h4": sweedler_h4(),
        "taft_3_7_2": taft_algebra(3, 7, 2),
    }
