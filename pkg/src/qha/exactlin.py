"""Exact dense linear algebra over GF(p) or the rationals.

Matrices are plain numpy arrays. Over GF(p) they hold int64 entries in
``[0, p)``; over the rationals they are object arrays of ``Fraction``.
Vectors are rows: a linear map ``V -> W`` is a ``dim V x dim W`` matrix
acting by ``v @ A``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy import isprime

DEFAULT_CHARACTERISTIC = 101


class NoSolution(ArithmeticError):
    """Raised by :func:`solve` when the system is inconsistent."""


@dataclass(frozen=True)
class Field:
    """A prime field GF(p) (``characteristic=p``) or the rationals (``0``)."""

    characteristic: int = DEFAULT_CHARACTERISTIC

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not (c >= 2 and isprime(c)):
            raise ValueError(f"characteristic must be 0 or a prime, got {c}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def __str__(self):
        return "Q" if self.is_rational else f"GF({self.characteristic})"

    # -- element level -------------------------------------------------
    def element(self, x):
        if self.is_rational:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.characteristic)) % self.characteristic
        return int(x) % self.characteristic

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.characteristic)

    def elements(self):
        """All field elements (prime fields only)."""
        if self.is_rational:
            raise ValueError("the rationals are infinite")
        return range(self.characteristic)

    # -- array level ---------------------------------------------------
    def array(self, data, shape=None) -> np.ndarray:
        if self.is_rational:
            a = np.array(data, dtype=object)
            if shape is not None:
                a = a.reshape(shape)
            flat = [Fraction(x) for x in a.flat]
            out = np.empty(a.shape, dtype=object)
            out.flat[:] = flat if flat else []
            return out
        if isinstance(data, np.ndarray) and data.dtype.kind in "iu":
            a = data if shape is None else data.reshape(shape)
            return a.astype(np.int64) % self.characteristic
        a = np.array(data, dtype=object) if _has_fraction(data) else np.asarray(data)
        if a.dtype == object:
            a = np.vectorize(self.element, otypes=[np.int64])(a) if a.size else a.astype(np.int64)
        if shape is not None:
            a = a.reshape(shape)
        return np.asarray(a, dtype=np.int64) % self.characteristic

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a if self.is_rational else a % self.characteristic

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.is_rational:
            out = np.empty((rows, cols), dtype=object)
            out.fill(Fraction(0))
            return out
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        if not self.is_rational:
            return np.eye(n, dtype=np.int64)
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.element(1)
        return out

    def matmul(self, *ms: np.ndarray) -> np.ndarray:
        out = ms[0]
        for m in ms[1:]:
            if out.shape[1] == 0 or out.shape[0] == 0 or m.shape[1] == 0:
                out = self.zeros(out.shape[0], m.shape[1])
            else:
                out = self.reduce(out @ m)
        return out

    def random(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        if self.is_rational:
            return self.array(rng.integers(-5, 6, size=(rows, cols)))
        return rng.integers(0, self.characteristic, size=(rows, cols), dtype=np.int64)


def _has_fraction(data) -> bool:
    if isinstance(data, Fraction):
        return True
    if isinstance(data, (list, tuple)):
        return any(_has_fraction(x) for x in data)
    return False


def default_field() -> Field:
    """GF(101), or the characteristic named by ``QHA_FIELD`` (``Q`` or ``0`` for rationals)."""
    env = os.environ.get("QHA_FIELD")
    if not env:
        return Field(DEFAULT_CHARACTERISTIC)
    return Field(0 if env.strip().upper() in ("Q", "0") else int(env))


def is_zero(a: np.ndarray) -> bool:
    return a.size == 0 or not np.any(a != 0)


def rref(m: np.ndarray, field: Field) -> tuple[np.ndarray, list[int], int]:
    """Reduced row echelon form, pivot columns and rank."""
    a = field.array(m)
    if a is m:
        a = a.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = field.reduce(a[r] * field.inv(a[r, c]))
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = field.reduce(a[hit] - np.outer(col[hit], a[r]))
        pivots.append(c)
        r += 1
    return a, pivots, r


def rank(m: np.ndarray, field: Field) -> int:
    if m.size == 0:
        return 0
    return rref(m, field)[2]


def row_basis(m: np.ndarray, field: Field) -> np.ndarray:
    """Rows of the rref spanning the row space of ``m``."""
    if m.shape[0] == 0:
        return field.zeros(0, m.shape[1])
    r, _, k = rref(m, field)
    return r[:k]


def kernel_basis(m: np.ndarray, field: Field) -> np.ndarray:
    """Rows spanning the right null space ``{x : m @ x = 0}``."""
    rows, cols = m.shape
    if rows == 0:
        return field.eye(cols)
    r, pivots, k = rref(m, field)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = field.zeros(len(free), cols)
    for t, f in enumerate(free):
        out[t, f] = field.element(1)
        for i, pc in enumerate(pivots):
            out[t, pc] = field.reduce(-r[i, f])
    return out


def left_kernel(m: np.ndarray, field: Field) -> np.ndarray:
    """Rows spanning ``{y : y @ m = 0}``."""
    return kernel_basis(m.T, field)


def solve(m: np.ndarray, rhs: np.ndarray, field: Field) -> np.ndarray:
    """A solution ``x`` of ``m @ x = rhs``; raises :class:`NoSolution` if none exists."""
    if m.shape[0] != rhs.shape[0]:
        raise ValueError(f"dimension mismatch: {m.shape} vs rhs {rhs.shape}")
    rows, cols = m.shape
    k = rhs.shape[1]
    if rows == 0:
        return field.zeros(cols, k)
    aug = np.concatenate([field.array(m), field.array(rhs)], axis=1)
    r, pivots, rk = rref(aug, field)
    if any(p >= cols for p in pivots):
        raise NoSolution("inconsistent linear system")
    x = field.zeros(cols, k)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols:]
    return x


def solve_left(m: np.ndarray, rhs: np.ndarray, field: Field) -> np.ndarray:
    """A solution ``x`` of ``x @ m = rhs``."""
    return solve(m.T, rhs.T, field).T


def in_row_space(vectors: np.ndarray, basis: np.ndarray, field: Field) -> bool:
    """Whether every row of ``vectors`` lies in the row span of ``basis``."""
    if vectors.shape[0] == 0:
        return True
    if basis.shape[0] == 0:
        return is_zero(vectors)
    return rank(np.concatenate([basis, vectors]), field) == rank(basis, field)


def complement_rows(sub: np.ndarray, dim: int, field: Field) -> np.ndarray:
    """Standard basis vectors completing the row space of ``sub`` to the whole space."""
    if sub.shape[0] == 0:
        return field.eye(dim)
    _, pivots, _ = rref(sub, field)
    eye = field.eye(dim)
    return eye[[c for c in range(dim) if c not in set(pivots)]]


def block_diag(blocks: list[np.ndarray], field: Field) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = field.zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def inverse(m: np.ndarray, field: Field) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    return solve(m, field.eye(n), field)
