"""Perfect Lee codes PL(d, 1, q) and the window extraction that turns them into
sets of symbols with pairwise L1 distance at least 3."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import ceil

import numpy as np

from . import kernels
from .core import Symbol, ZqVector, l1_distance, lee_distance
from .errors import CapacityError, ParameterError, UnsupportedRegimeError

DEFAULT_ENUMERATION_BUDGET = 10_000_000


def _prime_factors(m: int) -> list[int]:
    out, p = [], 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def radical(m: int) -> int:
    """Product of the distinct prime factors of ``m``."""
    r = 1
    for p in _prime_factors(m):
        r *= p
    return r


def exists_pl(d: int, q: int) -> bool:
    """Whether a perfect radius-1 Lee code of length ``d`` over ``Z_q`` exists."""
    if d < 1 or q < 1:
        raise ParameterError(f"need d >= 1 and q >= 1, got d={d}, q={q}")
    return q % radical(2 * d + 1) == 0


@dataclass(frozen=True)
class LeeCode:
    d: int
    q: int
    codewords: tuple[tuple[int, ...], ...]
    # Syndrome weights w with C = {x : sum w_i x_i = 0 mod 2d+1}, when known.
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.d < 1 or self.q < 1:
            raise ParameterError(f"need d >= 1 and q >= 1, got d={self.d}, q={self.q}")
        words = sorted({tuple(int(c) % self.q for c in w) for w in self.codewords})
        if any(len(w) != self.d for w in words):
            raise ParameterError("codeword length differs from d")
        object.__setattr__(self, "codewords", tuple(words))

    def __len__(self):
        return len(self.codewords)

    def __contains__(self, x):
        return tuple(int(c) % self.q for c in x) in self._set

    @property
    def _set(self):
        return frozenset(self.codewords)

    def vectors(self) -> list[ZqVector]:
        return [ZqVector(w, self.q) for w in self.codewords]

    def array(self) -> np.ndarray:
        return np.array(self.codewords, dtype=np.int64).reshape(len(self.codewords), self.d)

    def minimum_distance(self) -> int:
        vs = self.vectors()
        return min((lee_distance(a, b) for a, b in itertools.combinations(vs, 2)), default=0)

    def to_json(self) -> str:
        return json.dumps({"d": self.d, "q": self.q, "codewords": [list(w) for w in self.codewords]})

    @classmethod
    def from_json(cls, text: str) -> "LeeCode":
        obj = json.loads(text)
        return cls(obj["d"], obj["q"], tuple(tuple(w) for w in obj["codewords"]))


def construct_pl(d: int, q: int) -> LeeCode:
    """Linear perfect Lee code ``{x : sum_i (d + 1 - i) x_i = 0 (mod 2d+1)}``.

    The single-step errors +-e_i have syndromes +-(d + 1 - i), which run over
    every nonzero residue mod 2d+1 once, so the radius-1 spheres tile Z_q^d
    whenever 2d+1 divides q. For d = 2, q = 5 this is exactly
    {(0,0), (1,3), (2,1), (3,4), (4,2)}.
    """
    if d < 1 or q < 1:
        raise ParameterError(f"need d >= 1 and q >= 1, got d={d}, q={q}")
    m = 2 * d + 1
    if q % m:
        if exists_pl(d, q):
            raise UnsupportedRegimeError(
                f"PL({d},1,{q}) exists but is only constructed when {m} divides q"
            )
        raise UnsupportedRegimeError(f"no PL({d},1,{q}): {radical(m)} does not divide {q}")
    weights = tuple(range(d, 0, -1))
    inv_first = pow(weights[0], -1, m)
    words = []
    for tail in itertools.product(range(q), repeat=d - 1):
        s = sum(w * x for w, x in zip(weights[1:], tail))
        r = (-s * inv_first) % m
        for x1 in range(r, q, m):
            words.append((x1, *tail))
    return LeeCode(d, q, tuple(words), weights)


def verify_perfect(code: LeeCode, budget: int = DEFAULT_ENUMERATION_BUDGET, backend=None) -> bool:
    """True iff radius-1 Lee spheres around the codewords partition Z_q^d."""
    total = code.q**code.d
    if total > budget:
        raise CapacityError(f"Z_{code.q}^{code.d} has {total} points, budget is {budget}")
    if not code.codewords:
        return False
    counts = kernels.sphere_cover_counts(code.array(), code.q, backend=backend)
    return bool(np.all(counts == 1))


def lee_sphere(center: ZqVector, r: int) -> set[ZqVector]:
    """All points at Lee distance <= r from ``center``."""
    if r < 0:
        raise ParameterError(f"radius must be non-negative, got {r}")
    out = set()
    for off in itertools.product(range(-r, r + 1), repeat=center.d):
        if sum(abs(o) for o in off) <= r:
            out.add(ZqVector(tuple(c + o for c, o in zip(center, off)), center.q))
    return out


def window_modulus(d: int, n: int) -> int:
    """Smallest multiple of 2d+1 that is at least n."""
    m = 2 * d + 1
    return m * max(1, ceil(n / m))


@dataclass(frozen=True)
class WindowSet:
    """Codewords inside the box ``shift + [0, n-1]^d`` and their images in ``[0, n-1]^d``."""

    n: int
    shift: ZqVector
    members_in_Zq: tuple[ZqVector, ...]
    members_mapped: tuple[Symbol, ...]

    def __post_init__(self):
        if len(set(self.members_mapped)) != len(self.members_in_Zq):
            raise ParameterError("window map is not one-to-one")

    def __len__(self):
        return len(self.members_mapped)

    def verify(self) -> bool:
        """Pairwise L1 distance >= 3 among mapped members (O(|V|^2))."""
        pts = np.array([s.coords for s in self.members_mapped], dtype=np.int64)
        if len(pts) < 2:
            return True
        for i in range(len(pts) - 1):
            if np.abs(pts[i + 1:] - pts[i]).sum(axis=1).min() < 3:
                return False
        return True


def window_at(code: LeeCode, n: int, shift) -> WindowSet:
    if n > code.q:
        raise ParameterError(f"window size n={n} exceeds modulus q={code.q}")
    x = shift if isinstance(shift, ZqVector) else ZqVector(tuple(shift), code.q)
    if x.q != code.q or x.d != code.d:
        raise ParameterError("shift does not live in Z_q^d of the code")
    inside, mapped = [], []
    for w in code.codewords:
        img = tuple((u - s) % code.q for u, s in zip(w, x))
        if all(c < n for c in img):
            inside.append(ZqVector(w, code.q))
            mapped.append(Symbol(img, n))
    order = sorted(range(len(mapped)), key=lambda i: mapped[i].coords)
    return WindowSet(n, x, tuple(inside[i] for i in order), tuple(mapped[i] for i in order))


def syndrome(code: LeeCode, x) -> int:
    if code.weights is None:
        raise ParameterError("code carries no syndrome weights")
    return sum(w * int(c) for w, c in zip(code.weights, x)) % (2 * code.d + 1)


def class_representative(code: LeeCode, sigma: int) -> ZqVector:
    """The shift ``(s, 0, ..., 0)`` whose syndrome is ``sigma``."""
    m = 2 * code.d + 1
    s = sigma * pow(code.weights[0], -1, m) % m
    return ZqVector((s,) + (0,) * (code.d - 1), code.q)


def window_sizes(code: LeeCode, n: int, backend=None) -> np.ndarray:
    """``|U(x)|`` for every shift x of Z_q^d, mixed-radix order."""
    if n > code.q:
        raise ParameterError(f"window size n={n} exceeds modulus q={code.q}")
    return kernels.window_counts(code.array(), code.q, n, backend=backend)


def extract_window(code: LeeCode, n: int, backend=None) -> WindowSet:
    """Window with the most codewords; at least ceil(n^d / (2d+1)) of them for a perfect code.

    For syndrome codes the window size depends only on the syndrome of the
    shift (translating by a codeword permutes U), so the 2d+1 classes are
    searched and the smallest maximizing syndrome wins. Other codes fall back
    to all q^d shifts, smallest maximizing shift in lexicographic order.
    """
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    if n > code.q:
        raise ParameterError(f"window size n={n} exceeds modulus q={code.q}")
    if code.weights is not None:
        best = None
        for sigma in range(2 * code.d + 1):
            ws = window_at(code, n, class_representative(code, sigma))
            if best is None or len(ws) > len(best):
                best = ws
        return best
    sizes = window_sizes(code, n, backend=backend)
    idx = int(np.argmax(sizes))
    shift = []
    for _ in range(code.d):
        idx, r = divmod(idx, code.q)
        shift.append(r)
    return window_at(code, n, tuple(reversed(shift)))


def lower_bound_set(d: int, n: int) -> WindowSet:
    """Independent set of the (d, n) confusion graph built from PL(d, 1, q), q >= n."""
    code = construct_pl(d, window_modulus(d, n))
    return extract_window(code, n)


def window_pairwise_ok(ws: WindowSet) -> bool:
    """Check pairwise Lee distance <= L1 distance of the images, which keeps L1 >= 3."""
    for (a, fa), (b, fb) in itertools.combinations(zip(ws.members_in_Zq, ws.members_mapped), 2):
        if lee_distance(a, b) > l1_distance(fa, fb):
            return False
    return True
