"""Seeded random Yetter-Drinfeld instances of small dimension.

Each draw is a direct sum of pieces taken from a pool, followed by a random
change of basis.  The pool for ``(H, i)`` holds the 1-dimensional YD_i modules
(grouplike ⊗ character), sub-YD modules of the adjoint YD_i module on H, and
their twists and tensor products with 1-dimensional charge-0 objects.
"""

from __future__ import annotations

import os

import numpy as np

from .hopf import HopfAlgebra
from .linalg import VecSpace, block_diag, column_basis, coordinates, einsum, random_invertible
from .reps import (
    LeftModule, RightComodule, change_basis_comodule, change_basis_module, comodule_from_grouplike,
    module_from_character, regular_comodule,
)
from .yd import YdContramodule, YdModule, iota, tensor_yd, twist_yd_module

DEFAULT_SEED = 20240611
MAX_DIM = 4


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    raw = os.environ.get("HOPFCAT_SEED")
    return int(raw) if raw not in (None, "") else default


def adjoint_yd_module(h: HopfAlgebra, i: int) -> YdModule:
    """H with ``x·m = x² m S^{-1-2i}(x¹)`` and coaction Δ."""
    act = einsum("xya,cyqt,tx->caq", h.D3, h.m4, h.S(-1 - 2 * i), field=h.field)
    return YdModule.make(LeftModule.from_tensor(h, h.space, act), regular_comodule(h), i)


def one_dim_yd_modules(h: HopfAlgebra, i: int) -> list[YdModule]:
    out = []
    for g in h.grouplikes:
        for chi in h.characters:
            m = YdModule.make(module_from_character(h, chi), comodule_from_grouplike(h, g), i)
            if m.verified:
                out.append(m)
    return out


def _closure(m: YdModule, vectors: np.ndarray) -> np.ndarray:
    """Smallest subspace containing ``vectors`` stable under action and coaction."""
    f = m.over.field
    span = column_basis(vectors, f)
    ops = [m.module.act3[:, a, :] for a in range(m.over.dim)]
    ops += [m.comodule.coact3[:, a, :] for a in range(m.over.dim)]
    while True:
        imgs = [f.reduce(op.dot(span)) for op in ops]
        new = column_basis(np.concatenate([span] + imgs, axis=1), f)
        if new.shape[1] == span.shape[1]:
            return span
        span = new


def restrict(m: YdModule, basis: np.ndarray) -> YdModule:
    """The sub-YD module spanned by the columns of ``basis``."""
    h = m.over
    f = h.field
    r = basis.shape[1]
    n = h.dim
    act = einsum("paq,qs->pas", m.module.act3, basis, field=f).reshape(m.dim, n * r)
    co = einsum("paq,qs->pas", m.comodule.coact3, basis, field=f).reshape(m.dim, n * r)
    act3 = coordinates(basis, act, f).reshape(r, n, r)
    co3 = coordinates(basis, co, f).reshape(r, n, r)
    space = VecSpace.of_dim(r, f, "m")
    return YdModule.make(LeftModule.from_tensor(h, space, act3),
                         RightComodule.from_tensor(h, space, co3), m.charge)


def direct_sum(*parts: YdModule) -> YdModule:
    h = parts[0].over
    f = h.field
    n = h.dim
    dims = [p.dim for p in parts]
    d = sum(dims)
    act = f.zeros((d, n, d))
    co = f.zeros((d, n, d))
    off = 0
    for p in parts:
        s = slice(off, off + p.dim)
        act[s, :, s] = p.module.act3
        co[s, :, s] = p.comodule.coact3
        off += p.dim
    space = VecSpace.of_dim(d, f, "m")
    return YdModule.make(LeftModule.from_tensor(h, space, act),
                         RightComodule.from_tensor(h, space, co), parts[0].charge)


def change_basis(m: YdModule, P) -> YdModule:
    return YdModule.make(change_basis_module(m.module, P), change_basis_comodule(m.comodule, P), m.charge)


def random_unimodular(field, n: int, rng: np.random.Generator, steps: int = 6) -> np.ndarray:
    """Over Q: a product of integer elementary matrices (inverse stays integral)."""
    if field.p is not None:
        return random_invertible(field, n, rng)
    out = field.eye(n)
    if n < 2:
        return out if rng.integers(2) else -out
    for _ in range(steps):
        a, b = rng.choice(n, size=2, replace=False)
        e = field.eye(n)
        e[a, b] = int(rng.choice([-1, 1]))
        out = field.reduce(e.dot(out))
    perm = rng.permutation(n)
    return out[perm]


def _span_key(basis: np.ndarray) -> tuple:
    return tuple(basis.reshape(-1).tolist()) + basis.shape


def instance_pool(h: HopfAlgebra, i: int, max_dim: int = MAX_DIM) -> list[YdModule]:
    """Verified YD_i modules of dim ≤ max_dim (deterministic)."""
    cache = h.__dict__.setdefault("_instance_pools", {})
    if (i, max_dim) in cache:
        return cache[(i, max_dim)]
    f = h.field
    pool = list(one_dim_yd_modules(h, i))
    adj = adjoint_yd_module(h, i)
    seen = set()
    if adj.verified:
        rng = np.random.default_rng(1000 + 7 * i)
        candidates = [f.eye(h.dim)[:, [k]] for k in range(h.dim)]
        candidates += [f.reduce(f.random_matrix(rng, h.dim, 1, 1)) for _ in range(2 * h.dim)]
        for v in candidates:
            if not np.any(v != 0):
                continue
            span = _closure(adj, v)
            key = _span_key(span)
            if 0 < span.shape[1] <= max_dim and key not in seen:
                seen.add(key)
                sub = restrict(adj, span)
                if sub.verified:
                    pool.append(sub)
    extra = []
    units = one_dim_yd_modules(h, 0)
    for m in pool:
        t = twist_yd_module(m, 1)
        if t.verified:
            extra.append(t)
        for u in units[:3]:
            if u.dim * m.dim <= max_dim:
                p = tensor_yd(u, m)
                if p.verified and p.charge == i:
                    extra.append(p)
    pool.extend(extra)
    cache[(i, max_dim)] = pool
    return pool


def random_yd_module(h: HopfAlgebra, i: int, rng: np.random.Generator, max_dim: int = MAX_DIM) -> YdModule:
    pool = instance_pool(h, i, max_dim)
    if not pool:
        raise ValueError(f"no YD_{i} modules available over {h.name}")
    parts = []
    total = 0
    while True:
        fits = [m for m in pool if total + m.dim <= max_dim]
        if not fits or (parts and rng.random() < 0.4):
            break
        m = fits[int(rng.integers(len(fits)))]
        parts.append(m)
        total += m.dim
    m = direct_sum(*parts) if len(parts) > 1 else parts[0]
    return change_basis(m, random_unimodular(h.field, m.dim, rng))


def random_yd_contramodule(h: HopfAlgebra, i: int, rng: np.random.Generator,
                           max_dim: int = MAX_DIM) -> YdContramodule:
    """``ι`` of a random YD_i module."""
    return iota(random_yd_module(h, i, rng, max_dim))


def sweep_instances(h: HopfAlgebra, i: int, count: int, seed: int, max_dim: int = MAX_DIM) -> list[YdModule]:
    rng = np.random.default_rng([seed, i % 1000, h.dim])
    return [random_yd_module(h, i, rng, max_dim) for _ in range(count)]
