"""Exact finite-dimensional linear algebra over Q and prime fields.

Matrices are numpy object arrays holding *raw* field values: Python ``int``
or ``Fraction`` for Q, and ints reduced into ``[0, p)`` for F_p.  Typed
scalars (``Fraction`` / :class:`FpElement`) are produced at the API edge by
calling the field, e.g. ``Q("3/4")`` or ``Fp(7)(10)``.

Tensor products follow one global row-major convention: the basis vector
``a_i ⊗ b_j`` of ``A ⊗ B`` has index ``i * B.dim + j``.  Every structure
tensor elsewhere in the package is stated relative to that ordering.

Row reduction is delegated to python-flint (``fmpq_mat`` / ``nmod_mat``);
the reduced row echelon form is unique, so results do not depend on the
backend's pivoting strategy.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
import math
from fractions import Fraction
from functools import reduce as _fold
from math import gcd, lcm
from typing import Iterable, Sequence

import flint
import numpy as np


class FieldMismatch(ValueError):
    """Raised when values or spaces over different fields are combined."""


class Singular(ValueError):
    pass


class NotSquare(ValueError):
    pass


class NotInSpan(ValueError):
    """A vector that was expected to lie in a subspace does not."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FpElement:
    """An element of the prime field F_p, always reduced into [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = int(value) % p
        self.p = p

    def _other(self, other) -> int:
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return int(other) % self.p
        raise FieldMismatch(f"cannot combine F_{self.p} element with {type(other).__name__}")

    def __add__(self, other):
        return FpElement(self.value + self._other(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FpElement(self.value - self._other(other), self.p)

    def __rsub__(self, other):
        return FpElement(self._other(other) - self.value, self.p)

    def __mul__(self, other):
        return FpElement(self.value * self._other(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def inverse(self) -> FpElement:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return FpElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * FpElement(self._other(other), self.p).inverse()

    def __rtruediv__(self, other):
        return FpElement(self._other(other), self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return FpElement(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, np.integer)) and not isinstance(other, bool):
            return self.value == int(other) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Field:
    """Field descriptor: ``Field()`` is Q, ``Field(p)`` is F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __repr__(self):
        return self.name

    # scalars --------------------------------------------------------------
    def raw(self, x) -> int | Fraction:
        """Convert ``x`` (int, Fraction, string, FpElement) into a raw value."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            if isinstance(x, FpElement):
                raise FieldMismatch("F_p element used over Q")
            x = Fraction(x)
            return int(x) if x.denominator == 1 else x
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise FieldMismatch(f"F_{x.p} element used over F_{self.p}")
            return x.value
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.p}")
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def __call__(self, x):
        r = self.raw(x)
        return Fraction(r) if self.p is None else FpElement(r, self.p)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("division by zero")
        if self.p is None:
            r = 1 / Fraction(x)
            return int(r) if r.denominator == 1 else r
        return pow(int(x), -1, self.p)

    def is_member(self, x) -> bool:
        """True if ``x`` is a valid raw value of this field."""
        if self.p is None:
            return isinstance(x, (int, Fraction)) and not isinstance(x, bool)
        return isinstance(x, int) and 0 <= x < self.p

    def format(self, x) -> str:
        return str(x)

    # arrays ---------------------------------------------------------------
    def reduce(self, arr) -> np.ndarray:
        """Normalize an object array in place-semantics (returns new array)."""
        arr = np.asarray(arr, dtype=object)
        if self.p is None:
            if not arr.size:
                return arr.copy()
            small = _as_int64(arr)
            if small is not None:
                return small.astype(object)
            return np.asarray(_Q_NORMALIZE(arr), dtype=object)
        return np.asarray(arr % self.p, dtype=object) if arr.size else arr.copy()

    def array(self, data) -> np.ndarray:
        a = np.array(data, dtype=object)
        out = np.empty(a.shape, dtype=object)
        flat_in, flat_out = a.reshape(-1), out.reshape(-1)
        for k, x in enumerate(flat_in):
            flat_out[k] = self.raw(x)
        return out

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64).astype(object)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64).astype(object)

    def random_matrix(self, rng: np.random.Generator, rows: int, cols: int, bound: int = 3) -> np.ndarray:
        if self.p is None:
            vals = rng.integers(-bound, bound + 1, size=(rows, cols))
        else:
            vals = rng.integers(0, self.p, size=(rows, cols))
        return vals.astype(object)


def _q_normalize(x):
    if type(x) is int:
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    if isinstance(x, np.integer):
        return int(x)
    return x


_Q_NORMALIZE = np.frompyfunc(_q_normalize, 1, 1)

Q = Field()


def Fp(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------------------
# spaces and maps


@dataclass(frozen=True, eq=False)
class VecSpace:
    """A finite-dimensional space with basis labels (labels are reporting only)."""

    dim: int
    labels: tuple[str, ...]
    field: Field = Q

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if self.dim < 0:
            raise ValueError("negative dimension")
        if len(labels) != self.dim:
            raise ValueError(f"{len(labels)} labels for dimension {self.dim}")
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be unique")

    @classmethod
    def of_dim(cls, dim: int, field: Field = Q, prefix: str = "e") -> VecSpace:
        return cls(dim, tuple(f"{prefix}{i}" for i in range(dim)), field)

    @classmethod
    def line(cls, field: Field = Q) -> VecSpace:
        return cls(1, ("1",), field)

    def __eq__(self, other):
        if not isinstance(other, VecSpace):
            return NotImplemented
        return self.dim == other.dim and self.field == other.field

    def __hash__(self):
        return hash((self.dim, self.field))

    def __repr__(self):
        return f"VecSpace(dim={self.dim}, field={self.field.name})"

    def relabel(self, labels: Sequence[str]) -> VecSpace:
        return VecSpace(self.dim, tuple(labels), self.field)


def _check_same_field(*spaces: VecSpace) -> Field:
    fields = {s.field for s in spaces}
    if len(fields) != 1:
        raise FieldMismatch(f"fields differ: {sorted(f.name for f in fields)}")
    return spaces[0].field


class LinMap:
    """A linear map ``dom -> cod``; ``matrix[:, j]`` is the image of basis vector j."""

    __slots__ = ("dom", "cod", "matrix")

    def __init__(self, dom: VecSpace, cod: VecSpace, matrix):
        _check_same_field(dom, cod)
        m = np.asarray(matrix, dtype=object)
        if m.shape != (cod.dim, dom.dim):
            raise ValueError(f"matrix shape {m.shape} does not match {cod.dim}x{dom.dim}")
        m = dom.field.reduce(m)
        m.flags.writeable = False
        self.dom = dom
        self.cod = cod
        self.matrix = m

    @property
    def field(self) -> Field:
        return self.dom.field

    @classmethod
    def identity(cls, space: VecSpace) -> LinMap:
        return cls(space, space, space.field.eye(space.dim))

    @classmethod
    def zero(cls, dom: VecSpace, cod: VecSpace) -> LinMap:
        return cls(dom, cod, dom.field.zeros((cod.dim, dom.dim)))

    def __matmul__(self, other: LinMap) -> LinMap:
        """Composition ``self ∘ other``."""
        if not isinstance(other, LinMap):
            return NotImplemented
        if other.cod != self.dom:
            raise ValueError("composition of incompatible maps")
        _check_same_field(self.dom, other.dom)
        return LinMap(other.dom, self.cod, self.matrix.dot(other.matrix) if self.matrix.size and other.matrix.size
                      else self.field.zeros((self.cod.dim, other.dom.dim)))

    def __add__(self, other: LinMap) -> LinMap:
        self._same_shape(other)
        return LinMap(self.dom, self.cod, self.matrix + other.matrix)

    def __sub__(self, other: LinMap) -> LinMap:
        self._same_shape(other)
        return LinMap(self.dom, self.cod, self.matrix - other.matrix)

    def __neg__(self) -> LinMap:
        return LinMap(self.dom, self.cod, -self.matrix)

    def scale(self, c) -> LinMap:
        return LinMap(self.dom, self.cod, self.matrix * self.field.raw(c))

    def _same_shape(self, other: LinMap):
        if other.dom != self.dom or other.cod != self.cod:
            raise ValueError("maps have different domain or codomain")

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and bool(np.all(self.matrix == other.matrix)))

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return bool(np.all(self.matrix == 0))

    def is_identity(self) -> bool:
        return self.dom == self.cod and bool(np.all(self.matrix == self.field.eye(self.dom.dim)))

    def entry(self, i: int, j: int):
        return self.field(self.matrix[i, j])

    def __call__(self, vec):
        v = np.asarray(vec, dtype=object)
        return self.field.reduce(self.matrix.dot(v))

    @property
    def rank(self) -> int:
        return rank(self)

    def __repr__(self):
        return f"LinMap({self.dom.dim} -> {self.cod.dim}, {self.field.name})"


# ---------------------------------------------------------------------------
# tensor products


def tensor_space(a: VecSpace, b: VecSpace) -> VecSpace:
    field = _check_same_field(a, b)
    labels = tuple(f"{x}⊗{y}" for x in a.labels for y in b.labels)
    return VecSpace(a.dim * b.dim, labels, field)


def tensor_spaces(*spaces: VecSpace) -> VecSpace:
    return _fold(tensor_space, spaces)


def tensor_map(f: LinMap, g: LinMap) -> LinMap:
    _check_same_field(f.dom, g.dom)
    dom = tensor_space(f.dom, g.dom)
    cod = tensor_space(f.cod, g.cod)
    return LinMap(dom, cod, np.kron(f.matrix, g.matrix) if f.matrix.size and g.matrix.size
                  else f.field.zeros((cod.dim, dom.dim)))


def tensor_maps(*maps: LinMap) -> LinMap:
    return _fold(tensor_map, maps)


def dual_map(f: LinMap) -> LinMap:
    """Transpose: ``f: V -> W`` gives ``f*: W* -> V*`` in dual bases."""
    dom = VecSpace(f.cod.dim, tuple(f"{x}*" for x in f.cod.labels), f.field)
    cod = VecSpace(f.dom.dim, tuple(f"{x}*" for x in f.dom.labels), f.field)
    return LinMap(dom, cod, f.matrix.T)


# ---------------------------------------------------------------------------
# elimination


def _to_flint(m: np.ndarray, field: Field):
    r, c = m.shape
    small = _as_int64(m)
    if field.p is not None:
        vals = small.ravel().tolist() if small is not None else [int(x) for x in m.reshape(-1)]
        return flint.nmod_mat(r, c, vals, field.p)
    if small is not None:
        return flint.fmpq_mat(flint.fmpz_mat(r, c, small.ravel().tolist()))
    entries = [flint.fmpq(x.numerator, x.denominator) if isinstance(x, Fraction) else int(x)
               for x in m.reshape(-1)]
    return flint.fmpq_mat(r, c, entries)


def _from_flint(fm, field: Field, rows: int | None = None) -> np.ndarray:
    """Convert back, keeping only the first ``rows`` rows."""
    r, c = fm.nrows(), fm.ncols()
    r = r if rows is None else rows
    if field.p is not None:
        vals = [int(x) for x in fm.entries()[: r * c]]
    else:
        num, den = fm.numer_denom()
        den = int(den)
        vals = [int(x) for x in num.entries()[: r * c]]
        if den != 1:
            vals = [v // den if v % den == 0 else Fraction(v, den) for v in vals]
    out = np.empty(r * c, dtype=object)
    out[:] = vals
    return out.reshape(r, c)


def _prune_rows(m: np.ndarray) -> np.ndarray:
    """Drop zero and duplicate rows; the row space is unchanged."""
    if m.shape[0] == 0:
        return m
    seen: set = set()
    keep = []
    for i, row in enumerate(m):
        key = tuple(row)
        if key in seen:
            continue
        seen.add(key)
        if any(x != 0 for x in key):
            keep.append(i)
    return m[keep] if keep else m[:0]


def rref(matrix, field: Field) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    m = np.asarray(matrix, dtype=object)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    cols = m.shape[1]
    m = _prune_rows(m)
    if m.shape[0] == 0 or cols == 0:
        return field.zeros((0, cols)), []
    fm = _to_flint(m, field)
    red, rk = fm.rref()
    out = _from_flint(red, field, rows=rk)
    pivots = []
    for row in out:
        for j, x in enumerate(row):
            if x != 0:
                pivots.append(j)
                break
    return out, pivots


def rank(f: LinMap) -> int:
    return len(rref(f.matrix, f.field)[1])


def _primitive(vec: np.ndarray) -> np.ndarray:
    """Scale a rational vector to a primitive integer vector with positive leading entry."""
    dens = [x.denominator for x in vec if isinstance(x, Fraction)]
    scale = lcm(*dens) if dens else 1
    ints = [int(x * scale) for x in vec]
    g = _fold(gcd, ints, 0) or 1
    lead = next((x for x in ints if x != 0), 1)
    if lead < 0:
        g = -g
    return np.array([x // g for x in ints], dtype=object)


def nullspace(matrix, field: Field) -> np.ndarray:
    """Columns spanning ``{v : matrix v = 0}`` (shape ``cols x k``)."""
    m = np.asarray(matrix, dtype=object)
    cols = m.shape[1]
    red, pivots = rref(m, field)
    free = [j for j in range(cols) if j not in set(pivots)]
    basis = field.zeros((cols, len(free)))
    for k, j in enumerate(free):
        v = field.zeros(cols)
        v[j] = 1
        for r, pc in enumerate(pivots):
            v[pc] = -red[r, j]
        if field.p is None:
            v = _primitive(v)
        basis[:, k] = field.reduce(v)
    return basis


def _as_int64(a: np.ndarray):
    """``a`` as int64 when every entry is a machine-size integer, else None."""
    try:
        b = a.astype(np.int64)
    except (OverflowError, TypeError, ValueError):
        return None
    return b if np.array_equal(b, a) else None


_DENOM = np.frompyfunc(lambda x: x.denominator if type(x) is Fraction else 1, 1, 1)


def _integerize(a: np.ndarray) -> tuple[np.ndarray, int]:
    """``(a * den, den)`` with integer entries."""
    if _as_int64(a) is not None:
        return a, 1
    dens = set(_DENOM(a).ravel().tolist()) if a.size else {1}
    den = math.lcm(*dens)
    if den == 1:
        return a, 1
    return np.asarray(_NUMER(a * den), dtype=object), den


_NUMER = np.frompyfunc(lambda x: x.numerator if type(x) is Fraction else x, 1, 1)


def _int_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ai, bi = _as_int64(a), _as_int64(b)
    if ai is not None and bi is not None:
        bound = int(np.abs(ai).max()) * int(np.abs(bi).max()) * a.shape[1]
        if bound < 2 ** 53:  # every partial sum is exact in a double
            return (ai.astype(np.float64) @ bi.astype(np.float64)).astype(np.int64).astype(object)
        if bound < 2 ** 62:
            return (ai @ bi).astype(object)
    return a.dot(b)


def matmul(a, b, field: Field) -> np.ndarray:
    """Exact matrix product; rationals are cleared to integers first."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if 0 in a.shape + b.shape:
        return field.zeros((a.shape[0], b.shape[1]))
    if field.p is not None:
        return field.reduce(_int_product(a, b))
    a, da = _integerize(a)
    b, db = _integerize(b)
    prod = _int_product(a, b)
    den = da * db
    if den == 1:
        return prod
    out = np.empty(prod.shape, dtype=object)
    flat = out.reshape(-1)
    for k, v in enumerate(prod.reshape(-1).tolist()):
        flat[k] = v // den if v % den == 0 else Fraction(v, den)
    return out


def column_basis(matrix, field: Field) -> np.ndarray:
    """A basis (as columns, in echelon form) of the column space."""
    m = np.asarray(matrix, dtype=object)
    red, _ = rref(m.T, field)
    return field.reduce(red.T) if red.size else field.zeros((m.shape[0], 0))


def solve(a, b, field: Field) -> np.ndarray:
    """Return one ``X`` with ``a X = b``; raise :class:`NotInSpan` if none exists."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    n = a.shape[1]
    aug = np.concatenate([a, b], axis=1) if a.size or b.size else field.zeros((a.shape[0], n + b.shape[1]))
    red, pivots = rref(aug, field)
    if any(pc >= n for pc in pivots):
        raise NotInSpan("inconsistent linear system")
    x = field.zeros((n, b.shape[1]))
    for r, pc in enumerate(pivots):
        x[pc, :] = red[r, n:]
    x = field.reduce(x)
    return x[:, 0] if vec else x


def coordinates(basis, vectors, field: Field) -> np.ndarray:
    """Coordinates of ``vectors`` (columns) in the independent column ``basis``."""
    return solve(basis, vectors, field)


def same_span(a, b, field: Field) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    ra = rref(a.T, field)[0] if a.size else field.zeros((0, a.shape[0]))
    rb = rref(b.T, field)[0] if b.size else field.zeros((0, b.shape[0]))
    return ra.shape == rb.shape and bool(np.all(ra == rb))


def in_span(basis, vectors, field: Field) -> bool:
    try:
        solve(basis, vectors, field)
    except NotInSpan:
        return False
    return True


# ---------------------------------------------------------------------------
# kernels, cokernels, inverses


@dataclass(frozen=True, eq=False)
class SubspaceWitness:
    """A subspace of ``ambient`` given by an independent list of basis vectors."""

    ambient: VecSpace
    basis: np.ndarray  # ambient.dim x k, independent columns
    inclusion: LinMap = dc_field(init=False)

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=object).reshape(self.ambient.dim, -1)
        b = self.ambient.field.reduce(b)
        b.flags.writeable = False
        object.__setattr__(self, "basis", b)
        sub = VecSpace.of_dim(b.shape[1], self.ambient.field, prefix="b")
        object.__setattr__(self, "inclusion", LinMap(sub, self.ambient, b))

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def space(self) -> VecSpace:
        return self.inclusion.dom

    @property
    def vectors(self) -> list[np.ndarray]:
        return [self.basis[:, k] for k in range(self.dim)]

    def coordinates(self, vectors) -> np.ndarray:
        return coordinates(self.basis, vectors, self.ambient.field)

    def contains(self, vectors) -> bool:
        return in_span(self.basis, vectors, self.ambient.field)


@dataclass(frozen=True, eq=False)
class QuotientWitness:
    """A quotient ``ambient -> ambient / U`` with a linear section."""

    ambient: VecSpace
    projection: LinMap
    section: LinMap

    @property
    def dim(self) -> int:
        return self.projection.cod.dim

    @property
    def space(self) -> VecSpace:
        return self.projection.cod


def kernel(f: LinMap) -> SubspaceWitness:
    return SubspaceWitness(f.dom, nullspace(f.matrix, f.field))


def cokernel(f: LinMap) -> QuotientWitness:
    field = f.field
    m = f.cod.dim
    red, pivots = rref(f.matrix.T, field) if f.matrix.size else (field.zeros((0, m)), [])
    rest = [j for j in range(m) if j not in set(pivots)]
    quot = VecSpace(len(rest), tuple(f"[{f.cod.labels[j]}]" for j in rest), field)
    proj = field.zeros((len(rest), m))
    for k, j in enumerate(rest):
        proj[k, j] = 1
        for r, pc in enumerate(pivots):
            proj[k, pc] = -red[r, j]
    sec = field.zeros((m, len(rest)))
    for k, j in enumerate(rest):
        sec[j, k] = 1
    return QuotientWitness(f.cod, LinMap(f.cod, quot, proj), LinMap(quot, f.cod, sec))


def invert(f: LinMap) -> LinMap:
    if f.dom.dim != f.cod.dim:
        raise NotSquare(f"{f.cod.dim}x{f.dom.dim} map is not square")
    n = f.dom.dim
    if n == 0:
        return LinMap(f.cod, f.dom, f.field.zeros((0, 0)))
    try:
        inv = _to_flint(f.matrix, f.field).inv()
    except ZeroDivisionError as exc:
        raise Singular("matrix is not invertible") from exc
    return LinMap(f.cod, f.dom, _from_flint(inv, f.field))


def direct_sum_space(*spaces: VecSpace) -> VecSpace:
    field = _check_same_field(*spaces)
    labels = [f"{x}[{k}]" for k, s in enumerate(spaces) for x in s.labels]
    return VecSpace(len(labels), tuple(labels), field)


def block_diag(blocks: Iterable[np.ndarray], field: Field) -> np.ndarray:
    blocks = [np.asarray(b, dtype=object) for b in blocks]
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = field.zeros((rows, cols))
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def random_invertible(field: Field, n: int, rng: np.random.Generator, bound: int = 2) -> np.ndarray:
    while True:
        m = field.reduce(field.random_matrix(rng, n, n, bound))
        if n == 0 or len(rref(m, field)[1]) == n:
            return m


def _contract_pair(sa: str, a: np.ndarray, sb: str, b: np.ndarray, keep: str, field: Field):
    """Contract two operands, keeping the indices in ``keep``; big sums go through flint."""
    out = "".join(dict.fromkeys(c for c in sa + sb if c in keep))
    batch = set(sa) & set(sb) & set(out)
    if batch or len(set(sa)) < len(sa) or len(set(sb)) < len(sb):
        return out, field.reduce(np.einsum(f"{sa},{sb}->{out}", a, b))
    # indices summed inside a single operand first
    own_a = "".join(c for c in sa if c not in sb and c not in out)
    if own_a:
        sa2 = "".join(c for c in sa if c not in own_a)
        a, sa = field.reduce(np.einsum(f"{sa}->{sa2}", a)), sa2
    own_b = "".join(c for c in sb if c not in sa and c not in out)
    if own_b:
        sb2 = "".join(c for c in sb if c not in own_b)
        b, sb = field.reduce(np.einsum(f"{sb}->{sb2}", b)), sb2
    summed = [c for c in sa if c in sb]
    fa = [c for c in sa if c not in summed]
    fb = [c for c in sb if c not in summed]
    size = {c: a.shape[k] for k, c in enumerate(sa)} | {c: b.shape[k] for k, c in enumerate(sb)}
    ra = int(np.prod([size[c] for c in fa], dtype=np.int64))
    rb = int(np.prod([size[c] for c in fb], dtype=np.int64))
    rs = int(np.prod([size[c] for c in summed], dtype=np.int64))
    am = np.transpose(a, [sa.index(c) for c in fa + summed]).reshape(ra, rs)
    bm = np.transpose(b, [sb.index(c) for c in summed + fb]).reshape(rs, rb)
    res = matmul(am, bm, field).reshape([size[c] for c in fa + fb])
    return "".join(fa + fb), res


def einsum(subscripts: str, *operands, field: Field) -> np.ndarray:
    """Exact tensor contraction over ``field`` (object arrays, greedy pairwise order)."""
    ops = [np.asarray(o, dtype=object) for o in operands]
    if any(o.size == 0 for o in ops):
        out = np.einsum(subscripts, *[np.zeros(o.shape, dtype=np.int64) for o in ops])
        return field.zeros(out.shape)
    lhs, out = subscripts.replace(" ", "").split("->")
    subs = lhs.split(",")
    size = {}
    for sub, o in zip(subs, ops):
        size.update(zip(sub, o.shape))
    if len(ops) == 1 or math.prod(size.values()) <= 4096:
        return field.reduce(np.einsum(subscripts, *ops))
    shapes = [np.zeros(o.shape, dtype=np.int8) for o in ops]
    path = np.einsum_path(subscripts, *shapes, optimize="greedy")[0][1:]
    subs, ops = list(subs), list(ops)
    for group in path:
        if len(group) == 1:
            continue
        taken = [(subs.pop(k), ops.pop(k)) for k in sorted(group, reverse=True)]
        sa, a = taken.pop()
        while taken:
            sb, b = taken.pop()
            keep = set(out) | {c for s in subs for c in s} | {c for s, _ in taken for c in s}
            sa, a = _contract_pair(sa, a, sb, b, "".join(keep), field)
        subs.append(sa)
        ops.append(a)
    while len(ops) > 1:
        sb, b = subs.pop(), ops.pop()
        sa, a = subs.pop(), ops.pop()
        keep = set(out) | {c for s in subs for c in s}
        sc, c = _contract_pair(sa, a, sb, b, "".join(keep), field)
        subs.append(sc)
        ops.append(c)
    return field.reduce(np.einsum(f"{subs[0]}->{out}", ops[0]))
