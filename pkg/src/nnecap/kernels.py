"""Hot inner loops.

Every kernel has a loop implementation compiled with numba and a numpy (or
plain-Python) twin; both return identical results. Adjacency rows are bitsets
packed little-endian into ``uint64`` words: vertex ``j`` is bit ``j & 63`` of
word ``j >> 6``.
"""
from __future__ import annotations

import numpy as np

from ._accel import njit, resolve_backend

_ONE = np.uint64(1)
_ZERO = np.uint64(0)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


def n_words(n_vertices: int) -> int:
    return max(1, (n_vertices + 63) // 64)


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Pack a ``(m, V)`` boolean matrix into ``(m, n_words(V))`` uint64 words."""
    bits = np.asarray(bits, dtype=bool)
    m, v = bits.shape
    w = n_words(v)
    padded = np.zeros((m, w * 64), dtype=bool)
    padded[:, :v] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def unpack_rows(words: np.ndarray, n_vertices: int) -> np.ndarray:
    as_bytes = np.ascontiguousarray(words.astype("<u8")).view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :n_vertices].astype(bool)


def words_to_int(row: np.ndarray) -> int:
    return int.from_bytes(np.ascontiguousarray(row.astype("<u8")).tobytes(), "little")


# ---------------------------------------------------------------- bit helpers

@njit
def _popcount(x):
    x = x - ((x >> _ONE) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit
def _row_popcount(row):
    total = 0
    for k in range(row.shape[0]):
        total += _popcount(row[k])
    return total


@njit
def _and_popcount(a, b):
    total = 0
    for k in range(a.shape[0]):
        total += _popcount(a[k] & b[k])
    return total


@njit
def _lowest_bit(row):
    for k in range(row.shape[0]):
        w = row[k]
        if w != _ZERO:
            low = w & (~w + _ONE)
            return k * 64 + _popcount(low - _ONE)
    return -1


@njit
def _set_bit(row, j):
    row[j >> 6] |= _ONE << np.uint64(j & 63)


@njit
def _clear_bit(row, j):
    row[j >> 6] &= ~(_ONE << np.uint64(j & 63))


@njit
def _test_bit(row, j):
    return (row[j >> 6] >> np.uint64(j & 63)) & _ONE != _ZERO


# ------------------------------------------------------------ L1 adjacency

@njit
def _l1_adjacency_loops(coords, radius):
    m, d = coords.shape
    w = max(1, (m + 63) // 64)
    out = np.zeros((m, w), dtype=np.uint64)
    for i in range(m):
        for j in range(i + 1, m):
            s = 0
            for t in range(d):
                s += abs(coords[i, t] - coords[j, t])
                if s > radius:
                    break
            if s <= radius:
                _set_bit(out[i], j)
                _set_bit(out[j], i)
    return out


def _l1_adjacency_numpy(coords, radius, block=256):
    m = coords.shape[0]
    out = np.zeros((m, n_words(m)), dtype=np.uint64)
    for start in range(0, m, block):
        stop = min(m, start + block)
        dist = np.abs(coords[start:stop, None, :] - coords[None, :, :]).sum(axis=2)
        bits = dist <= radius
        bits[np.arange(stop - start), np.arange(start, stop)] = False
        out[start:stop] = pack_rows(bits)
    return out


def l1_adjacency(coords: np.ndarray, radius: int, backend=None) -> np.ndarray:
    """Bitset rows of the graph joining distinct points at L1 distance <= radius."""
    coords = np.ascontiguousarray(coords, dtype=np.int64)
    if resolve_backend(backend) == "numba":
        return _l1_adjacency_loops(coords, np.int64(radius))
    return _l1_adjacency_numpy(coords, radius)


# ---------------------------------------------------------- strong product

@njit
def _strong_product_loops(wg, ng, wh, nh):
    m = ng * nh
    w = max(1, (m + 63) // 64)
    out = np.zeros((m, w), dtype=np.uint64)
    ng_list = np.empty(ng, dtype=np.int64)
    nh_list = np.empty(nh, dtype=np.int64)
    for a in range(ng):
        ca = 0
        for a2 in range(ng):
            if a2 == a or _test_bit(wg[a], a2):
                ng_list[ca] = a2
                ca += 1
        for b in range(nh):
            cb = 0
            for b2 in range(nh):
                if b2 == b or _test_bit(wh[b], b2):
                    nh_list[cb] = b2
                    cb += 1
            row = out[a * nh + b]
            for s in range(ca):
                base = ng_list[s] * nh
                for t in range(cb):
                    _set_bit(row, base + nh_list[t])
            _clear_bit(row, a * nh + b)
    return out


def _strong_product_numpy(wg, ng, wh, nh):
    closed_g = unpack_rows(wg, ng) | np.eye(ng, dtype=bool)
    closed_h = unpack_rows(wh, nh) | np.eye(nh, dtype=bool)
    m = ng * nh
    out = np.zeros((m, n_words(m)), dtype=np.uint64)
    for a in range(ng):
        rows = (closed_g[a][None, :, None] & closed_h[:, None, :]).reshape(nh, m)
        rows[np.arange(nh), a * nh + np.arange(nh)] = False
        out[a * nh:(a + 1) * nh] = pack_rows(rows)
    return out


def strong_product_words(wg, ng, wh, nh, backend=None) -> np.ndarray:
    """Bitset rows of ``G x H`` (strong product), right factor fastest."""
    if resolve_backend(backend) == "numba":
        return _strong_product_loops(wg, np.int64(ng), wh, np.int64(nh))
    return _strong_product_numpy(wg, ng, wh, nh)


# ------------------------------------------- maximum independent set (B&B)
#
# Binary branching on the highest-degree candidate (ties: smallest index):
# take it (drop its closed neighbourhood) or discard it. The bound is a greedy
# partition of the candidates into cliques, lowest index first; an independent
# set meets every clique at most once.

@njit
def _clique_cover_count(cand, adj, scratch_q, scratch_c):
    for k in range(cand.shape[0]):
        scratch_q[k] = cand[k]
    count = 0
    while True:
        u = _lowest_bit(scratch_q)
        if u < 0:
            return count
        count += 1
        _clear_bit(scratch_q, u)
        for k in range(cand.shape[0]):
            scratch_c[k] = scratch_q[k] & adj[u, k]
        while True:
            w = _lowest_bit(scratch_c)
            if w < 0:
                break
            _clear_bit(scratch_q, w)
            for k in range(cand.shape[0]):
                scratch_c[k] &= adj[w, k]


@njit
def _mis_loops(adj, n_vertices, budget, init):
    w = adj.shape[1]
    depth = n_vertices + 2
    P = np.zeros((depth, w), dtype=np.uint64)
    R = np.zeros((depth, w), dtype=np.uint64)
    size = np.zeros(depth, dtype=np.int64)
    pivot = np.zeros(depth, dtype=np.int64)
    stage = np.zeros(depth, dtype=np.int64)
    best = init.copy()
    scratch_q = np.zeros(w, dtype=np.uint64)
    scratch_c = np.zeros(w, dtype=np.uint64)
    best_size = _row_popcount(init)
    for j in range(n_vertices):
        _set_bit(P[0], j)
    top = 0
    nodes = 0
    while top >= 0:
        if stage[top] == 0:
            nodes += 1
            if nodes > budget:
                return best_size, best, nodes - 1, False
            cnt = _row_popcount(P[top])
            if size[top] + cnt <= best_size:
                top -= 1
                continue
            if cnt == 0:
                best_size = size[top]
                best[:] = R[top]
                top -= 1
                continue
            bound = _clique_cover_count(P[top], adj, scratch_q, scratch_c)
            if size[top] + bound <= best_size:
                top -= 1
                continue
            v = -1
            vdeg = -1
            for k in range(w):
                word = P[top, k]
                while word != _ZERO:
                    low = word & (~word + _ONE)
                    j = k * 64 + _popcount(low - _ONE)
                    word ^= low
                    dj = _and_popcount(adj[j], P[top])
                    if dj > vdeg:
                        vdeg = dj
                        v = j
            if vdeg == 0:
                best_size = size[top] + cnt
                for k in range(w):
                    best[k] = R[top, k] | P[top, k]
                top -= 1
                continue
            pivot[top] = v
            stage[top] = 1
            for k in range(w):
                P[top + 1, k] = P[top, k] & ~adj[v, k]
                R[top + 1, k] = R[top, k]
            _clear_bit(P[top + 1], v)
            _set_bit(R[top + 1], v)
            size[top + 1] = size[top] + 1
            stage[top + 1] = 0
            top += 1
        elif stage[top] == 1:
            v = pivot[top]
            stage[top] = 2
            for k in range(w):
                P[top + 1, k] = P[top, k]
                R[top + 1, k] = R[top, k]
            _clear_bit(P[top + 1], v)
            size[top + 1] = size[top]
            stage[top + 1] = 0
            top += 1
        else:
            top -= 1
    return best_size, best, nodes, True


def _lowest(x: int) -> int:
    return (x & -x).bit_length() - 1


def _mis_python(masks: list[int], budget: int, init: int = 0):
    """Same search as ``_mis_loops`` on Python-int bitsets."""
    state = {"best": init.bit_count(), "best_set": init, "nodes": 0}

    class _Out(Exception):
        pass

    def cover(cand: int) -> int:
        count = 0
        while cand:
            u = _lowest(cand)
            count += 1
            cand &= ~(1 << u)
            c = cand & masks[u]
            while c:
                w = _lowest(c)
                cand &= ~(1 << w)
                c &= masks[w]
        return count

    def search(P: int, R: int, size: int) -> None:
        state["nodes"] += 1
        if state["nodes"] > budget:
            state["nodes"] -= 1
            raise _Out
        cnt = P.bit_count()
        if size + cnt <= state["best"]:
            return
        if cnt == 0:
            state["best"], state["best_set"] = size, R
            return
        if size + cover(P) <= state["best"]:
            return
        v, vdeg = -1, -1
        rest = P
        while rest:
            j = _lowest(rest)
            rest &= rest - 1
            dj = (masks[j] & P).bit_count()
            if dj > vdeg:
                v, vdeg = j, dj
        if vdeg == 0:
            state["best"], state["best_set"] = size + cnt, R | P
            return
        bit = 1 << v
        search(P & ~masks[v] & ~bit, R | bit, size + 1)
        search(P & ~bit, R, size)

    complete = True
    try:
        search((1 << len(masks)) - 1, 0, 0)
    except _Out:
        complete = False
    return state["best"], state["best_set"], state["nodes"], complete


def max_independent_set_words(adj: np.ndarray, n_vertices: int, budget: int, backend=None,
                              initial=()):
    """Return ``(size, members, nodes, complete)`` for the bitset graph ``adj``.

    ``initial`` is a known independent set used as the starting incumbent; the
    search then only looks for strictly larger sets.
    """
    if n_vertices == 0:
        return 0, [], 0, True
    init = np.zeros(adj.shape[1], dtype=np.uint64)
    for j in initial:
        init[j >> 6] |= np.uint64(1) << np.uint64(j & 63)
    if resolve_backend(backend) == "numba":
        size, best, nodes, complete = _mis_loops(
            np.ascontiguousarray(adj, dtype=np.uint64), np.int64(n_vertices), np.int64(budget),
            init,
        )
        members = np.flatnonzero(unpack_rows(best[None, :], n_vertices)[0]).tolist()
        return int(size), members, int(nodes), bool(complete)
    import sys

    masks = [words_to_int(row) for row in adj]
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n_vertices + 100))
    size, best, nodes, complete = _mis_python(masks, budget, words_to_int(init))
    members = [j for j in range(n_vertices) if best >> j & 1]
    return size, members, nodes, complete


# -------------------------------------------------------- Lee sphere counts

@njit
def _sphere_cover_loops(codewords, q):
    m, d = codewords.shape
    total = q**d
    counts = np.zeros(total, dtype=np.int64)
    point = np.empty(d, dtype=np.int64)
    for c in range(m):
        for t in range(d):
            point[t] = codewords[c, t]
        counts[_flat(point, q)] += 1
        for t in range(d):
            orig = point[t]
            up = (orig + 1) % q
            down = (orig + q - 1) % q
            if up != orig:
                point[t] = up
                counts[_flat(point, q)] += 1
            if down != orig and down != up:
                point[t] = down
                counts[_flat(point, q)] += 1
            point[t] = orig
    return counts


@njit
def _flat(point, q):
    idx = 0
    for t in range(point.shape[0]):
        idx = idx * q + point[t]
    return idx


def _sphere_offsets(d: int, q: int) -> np.ndarray:
    """Distinct residue offsets of the radius-1 Lee sphere around the origin."""
    offs = {tuple([0] * d)}
    for t in range(d):
        for step in (1, -1):
            o = [0] * d
            o[t] = step % q
            offs.add(tuple(o))
    return np.array(sorted(offs), dtype=np.int64)


def _sphere_cover_numpy(codewords, q):
    d = codewords.shape[1]
    offs = _sphere_offsets(d, q)
    pts = (codewords[:, None, :] + offs[None, :, :]) % q
    radix = q ** np.arange(d - 1, -1, -1, dtype=np.int64)
    flat = (pts * radix).sum(axis=2).ravel()
    return np.bincount(flat, minlength=q**d).astype(np.int64)


def sphere_cover_counts(codewords: np.ndarray, q: int, backend=None) -> np.ndarray:
    """How many radius-1 Lee spheres around ``codewords`` contain each point of Z_q^d.

    Points are indexed mixed-radix, first coordinate most significant.
    """
    codewords = np.ascontiguousarray(codewords, dtype=np.int64)
    if resolve_backend(backend) == "numba":
        return _sphere_cover_loops(codewords, np.int64(q))
    return _sphere_cover_numpy(codewords, q)


# ------------------------------------------------------- window occupancy

@njit
def _window_counts_loops(codewords, q, n):
    m, d = codewords.shape
    total = q**d
    counts = np.zeros(total, dtype=np.int64)
    shift = np.zeros(d, dtype=np.int64)
    for s in range(total):
        rem = s
        for t in range(d - 1, -1, -1):
            shift[t] = rem % q
            rem //= q
        for c in range(m):
            inside = True
            for t in range(d):
                if (codewords[c, t] - shift[t]) % q >= n:
                    inside = False
                    break
            if inside:
                counts[s] += 1
    return counts


def _window_counts_numpy(codewords, q, n):
    d = codewords.shape[1]
    grid = np.indices((q,) * d).reshape(d, -1).T
    counts = np.zeros(grid.shape[0], dtype=np.int64)
    for c in codewords:
        inside = np.all((c[None, :] - grid) % q < n, axis=1)
        counts += inside
    return counts


def window_counts(codewords: np.ndarray, q: int, n: int, backend=None) -> np.ndarray:
    """For every shift x of Z_q^d, count codewords u with (u_i - x_i) mod q < n for all i."""
    codewords = np.ascontiguousarray(codewords, dtype=np.int64)
    if resolve_backend(backend) == "numba":
        return _window_counts_loops(codewords, np.int64(q), np.int64(n))
    return _window_counts_numpy(codewords, q, n)
