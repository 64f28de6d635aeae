"""Hot numeric kernels with numba-jitted and pure-numpy implementations.

The backend is picked by the environment variable GUESSLAB_KERNELS:
"numba" forces the jitted path, "numpy" forces the vectorised fallback,
anything else (or unset) means "numba when importable, numpy otherwise".
Both paths must return identical results; benchmarks/bench_kernels.py
compares their speed.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None
    HAS_NUMBA = False


def backend() -> str:
    choice = os.environ.get("GUESSLAB_KERNELS", "auto").strip().lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("GUESSLAB_KERNELS=numba but numba is not importable")
        return "numba"
    return "numba" if HAS_NUMBA else "numpy"


def _flatten_tables(n, q, supports, tables):
    sup_flat = []
    sup_off = [0]
    tab_flat = []
    tab_off = [0]
    for v in range(n):
        sup_flat.extend(supports[v])
        sup_off.append(len(sup_flat))
        tab_flat.extend(tables[v])
        tab_off.append(len(tab_flat))
    return (
        np.asarray(sup_flat, dtype=np.int64),
        np.asarray(sup_off, dtype=np.int64),
        np.asarray(tab_flat, dtype=np.int64),
        np.asarray(tab_off, dtype=np.int64),
    )


# ---------------------------------------------------------------------------
# fixed-point mask over the full state space
# ---------------------------------------------------------------------------

def _fix_mask_py(n, q, sup_flat, sup_off, tab_flat, tab_off):
    total = q**n
    out = np.zeros(total, dtype=np.uint8)
    digits = np.empty(n, dtype=np.int64)
    for code in range(total):
        c = code
        for v in range(n - 1, -1, -1):
            digits[v] = c % q
            c //= q
        ok = True
        for v in range(n):
            row = 0
            for k in range(sup_off[v], sup_off[v + 1]):
                row = row * q + digits[sup_flat[k]]
            if tab_flat[tab_off[v] + row] != digits[v]:
                ok = False
                break
        if ok:
            out[code] = 1
    return out


if HAS_NUMBA:
    _fix_mask_nb = njit(cache=True)(_fix_mask_py)


def _fix_mask_np(n, q, sup_flat, sup_off, tab_flat, tab_off, chunk=1 << 18):
    total = q**n
    out = np.zeros(total, dtype=np.uint8)
    weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)  # big-endian digits
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digs = (codes[:, None] // weights[None, :]) % q
        ok = np.ones(codes.shape[0], dtype=bool)
        for v in range(n):
            sup = sup_flat[sup_off[v] : sup_off[v + 1]]
            if sup.size:
                w = q ** np.arange(sup.size - 1, -1, -1, dtype=np.int64)
                rows = digs[:, sup] @ w
            else:
                rows = np.zeros(codes.shape[0], dtype=np.int64)
            vals = tab_flat[tab_off[v] + rows]
            ok &= vals == digs[:, v]
        out[codes[ok]] = 1
    return out


def fixed_point_mask(n, q, supports, tables):
    """uint8 mask over state codes 0..q**n-1, 1 where f(x) == x.

    State code c encodes x big-endian: x[0] is the most significant digit,
    so ascending codes are lexicographically ascending tuples.
    """
    if n == 0:
        return np.ones(1, dtype=np.uint8)
    sup_flat, sup_off, tab_flat, tab_off = _flatten_tables(n, q, supports, tables)
    if backend() == "numba":
        return _fix_mask_nb(n, q, sup_flat, sup_off, tab_flat, tab_off)
    return _fix_mask_np(n, q, sup_flat, sup_off, tab_flat, tab_off)


# ---------------------------------------------------------------------------
# batched rank of (A - I) mod prime q, reported as fixed-point counts
# ---------------------------------------------------------------------------

def _ranks_mod_py(mats, q, inv):
    B, n, _ = mats.shape
    out = np.empty(B, dtype=np.int64)
    for b in range(B):
        A = mats[b]
        r = 0
        for c in range(n):
            piv = -1
            for i in range(r, n):
                if A[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, n):
                    t = A[r, j]
                    A[r, j] = A[piv, j]
                    A[piv, j] = t
            iv = inv[A[r, c]]
            for j in range(c, n):
                A[r, j] = (A[r, j] * iv) % q
            for i in range(r + 1, n):
                f = A[i, c]
                if f != 0:
                    for j in range(c, n):
                        A[i, j] = (A[i, j] - f * A[r, j]) % q
            r += 1
            if r == n:
                break
        out[b] = r
    return out


if HAS_NUMBA:
    _ranks_mod_nb = njit(cache=True)(_ranks_mod_py)


def _ranks_mod_np(mats, q, inv):
    A = mats
    B, n, _ = A.shape
    r = np.zeros(B, dtype=np.int64)
    rows = np.arange(n, dtype=np.int64)
    bidx = np.arange(B, dtype=np.int64)
    for c in range(n):
        candidates = (A[:, :, c] != 0) & (rows[None, :] >= r[:, None])
        has = candidates.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(candidates, axis=1)
        sel = bidx[has]
        rr = r[has]
        pp = piv[has]
        tmp = A[sel, rr].copy()
        A[sel, rr] = A[sel, pp]
        A[sel, pp] = tmp
        iv = inv[A[sel, rr, c]]
        A[sel, rr] = (A[sel, rr] * iv[:, None]) % q
        below = rows[None, :] > rr[:, None]
        factors = np.where(below, A[sel][:, :, c], 0)
        A[sel] = (A[sel] - factors[:, :, None] * A[sel, rr][:, None, :]) % q
        r[has] += 1
    return r


def modular_ranks(mats, q):
    """Ranks of a (B, n, n) int64 batch over GF(q), q prime. Mutates mats."""
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = pow(a, -1, q)
    if mats.shape[0] == 0 or mats.shape[1] == 0:
        return np.zeros(mats.shape[0], dtype=np.int64)
    if backend() == "numba":
        return _ranks_mod_nb(mats, q, inv)
    return _ranks_mod_np(mats, q, inv)


# ---------------------------------------------------------------------------
# in-dominating set counts by size
# ---------------------------------------------------------------------------

def _ids_counts_py(in_masks, need, n):
    counts = np.zeros(n + 1, dtype=np.int64)
    for x in range(1 << n):
        ok = True
        for v in range(n):
            if need[v] and (x >> v) & 1 == 0 and (x & in_masks[v]) == 0:
                ok = False
                break
        if ok:
            pc = 0
            y = x
            while y:
                y &= y - 1
                pc += 1
            counts[pc] += 1
    return counts


if HAS_NUMBA:
    _ids_counts_nb = njit(cache=True)(_ids_counts_py)


def _ids_counts_np(in_masks, need, n, chunk=1 << 20):
    counts = np.zeros(n + 1, dtype=np.int64)
    total = 1 << n
    for start in range(0, total, chunk):
        xs = np.arange(start, min(start + chunk, total), dtype=np.int64)
        ok = np.ones(xs.shape[0], dtype=bool)
        for v in range(n):
            if need[v]:
                ok &= ((xs >> v) & 1 == 1) | ((xs & in_masks[v]) != 0)
        good = xs[ok]
        pc = np.zeros(good.shape[0], dtype=np.int64)
        for v in range(n):
            pc += (good >> v) & 1
        counts += np.bincount(pc, minlength=n + 1)
    return counts


def ids_size_counts(in_masks, need, n):
    """counts[k] = number of in-dominating sets of size k (loopless digraph)."""
    in_masks = np.asarray(in_masks, dtype=np.int64)
    need = np.asarray(need, dtype=np.uint8)
    if n == 0:
        return np.ones(1, dtype=np.int64)
    if backend() == "numba":
        return _ids_counts_nb(in_masks, need, n)
    return _ids_counts_np(in_masks, need, n)
