"""Residues mod q, Lee absolute value / distance, and L1 distance on the box."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ParameterError


@dataclass(frozen=True, order=True)
class Symbol:
    """A point of ``[0, n-1]^d``; channel input/output and confusion-graph vertex."""

    coords: tuple[int, ...]
    n: int

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if self.n < 1:
            raise ParameterError(f"n must be positive, got {self.n}")
        if not coords:
            raise ParameterError("a symbol needs at least one coordinate")
        for c in coords:
            if not 0 <= c <= self.n - 1:
                raise ParameterError(f"coordinate {c} outside [0, {self.n - 1}]")

    @property
    def d(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def index(self) -> int:
        """Mixed-radix vertex index, first coordinate most significant."""
        idx = 0
        for c in self.coords:
            idx = idx * self.n + c
        return idx

    @classmethod
    def from_index(cls, idx: int, d: int, n: int) -> "Symbol":
        if not 0 <= idx < n**d:
            raise ParameterError(f"index {idx} outside [0, {n**d - 1}]")
        out = []
        for _ in range(d):
            idx, r = divmod(idx, n)
            out.append(r)
        return cls(tuple(reversed(out)), n)


@dataclass(frozen=True)
class ZqVector:
    """A vector over ``Z_q`` stored with canonical representatives in ``[0, q-1]``."""

    coords: tuple[int, ...]
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ParameterError(f"modulus must be positive, got {self.q}")
        object.__setattr__(self, "coords", tuple(int(c) % self.q for c in self.coords))

    @property
    def d(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other: "ZqVector") -> "ZqVector":
        _check_compatible(self, other)
        return ZqVector(tuple(a + b for a, b in zip(self, other)), self.q)

    def __sub__(self, other: "ZqVector") -> "ZqVector":
        _check_compatible(self, other)
        return ZqVector(tuple(a - b for a, b in zip(self, other)), self.q)

    def __neg__(self) -> "ZqVector":
        return ZqVector(tuple(-a for a in self), self.q)


def _check_compatible(u: ZqVector, v: ZqVector) -> None:
    if u.q != v.q:
        raise ParameterError(f"modulus mismatch: {u.q} vs {v.q}")
    if u.d != v.d:
        raise ParameterError(f"dimension mismatch: {u.d} vs {v.d}")


def psi(a: int, q: int) -> int:
    """Canonical representative of the residue class of ``a`` modulo ``q``.

    The class of zero maps to 0, not q.
    """
    if q < 1:
        raise ParameterError(f"modulus must be positive, got {q}")
    return a % q


def lee_abs(x: int, q: int) -> int:
    """Lee absolute value ``min(psi(x), q - psi(x))``."""
    b = psi(x, q)
    return min(b, q - b)


def lee_distance(u: ZqVector, v: ZqVector) -> int:
    _check_compatible(u, v)
    return sum(lee_abs(a - b, u.q) for a, b in zip(u, v))


def l1_distance(u: Sequence[int], v: Sequence[int]) -> int:
    """Integer L1 distance, no wraparound."""
    if len(u) != len(v):
        raise ParameterError(f"dimension mismatch: {len(u)} vs {len(v)}")
    if isinstance(u, Symbol) and isinstance(v, Symbol) and u.n != v.n:
        raise ParameterError(f"alphabet mismatch: n={u.n} vs n={v.n}")
    return sum(abs(int(a) - int(b)) for a, b in zip(u, v))
