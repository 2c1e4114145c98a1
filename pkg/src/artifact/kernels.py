"""
Integer fold-mask enumeration kernels.

Every quantity the depth-first search needs is tabulated up front as a small
integer array (Weyl indices, translation steps, panel hyperplanes, chimney
data), so the inner loop never touches Fractions or Python objects.  The
kernel is compiled with numba when available; set ``ARTIFACT_NO_NUMBA=1`` to
run the same source as plain Python.  ``ARTIFACT_WORKERS`` sets the number
of threads used to split the mask space by prefix.
"""

from __future__ import annotations

__all__ = [
    "USING_NUMBA", "Tables", "build_tables", "chimney_arrays", "dfs_masks",
    "enumerate_masks", "default_workers",
]

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .eaw import ExtAffine, simple_affine, wall
from .rootdata import RootDatum, pairing, root_act, weyl_act, weyl_group

try:
    if os.environ.get("ARTIFACT_NO_NUMBA", "") not in ("", "0"):
        raise ImportError("numba disabled by ARTIFACT_NO_NUMBA")
    from numba import njit

    USING_NUMBA = True
except ImportError:  # pragma: no cover - depends on the environment
    USING_NUMBA = False


def _jit(fn):
    if USING_NUMBA:
        return njit(nogil=True, cache=True)(fn)
    return fn


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("ARTIFACT_WORKERS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class Tables:
    """Per-root-datum lookup tables, indexed by Weyl element number."""
    elements: tuple
    index: dict
    roots: np.ndarray    # (m, n) positive roots
    wnext: np.ndarray    # (|W|, n+1) Weyl index of w v_j
    wmu: np.ndarray      # (|W|, n+1, n) translation added by a step
    hroot: np.ndarray    # (|W|, n+1) positive root of the panel
    hsign: np.ndarray    # (|W|, n+1) sign relating w(wall root) to it
    kwall: np.ndarray    # (n+1,) wall index of each letter
    bw_rho: np.ndarray   # (|W|, m) <beta, w rho_check>
    h: int


@lru_cache(maxsize=None)
def build_tables(R: RootDatum) -> Tables:
    W = weyl_group(R)
    index = {w: k for k, w in enumerate(W)}
    roots = np.array(R.pos_roots, dtype=np.int64)
    rix = R.root_index
    n1 = R.rank + 1
    wnext = np.zeros((len(W), n1), dtype=np.int64)
    wmu = np.zeros((len(W), n1, R.rank), dtype=np.int64)
    hroot = np.zeros((len(W), n1), dtype=np.int64)
    hsign = np.zeros((len(W), n1), dtype=np.int64)
    kwall = np.array([wall(R, j).index for j in range(n1)], dtype=np.int64)
    bw_rho = np.zeros((len(W), len(R.pos_roots)), dtype=np.int64)
    for a, w in enumerate(W):
        for j in range(n1):
            s = simple_affine(R, j)
            wnext[a, j] = index[w * s.w]
            wmu[a, j] = [int(c) for c in weyl_act(w, s.lam)]
            beta = root_act(w, wall(R, j).root)
            if beta in rix:
                hroot[a, j], hsign[a, j] = rix[beta], 1
            else:
                hroot[a, j], hsign[a, j] = rix[tuple(-b for b in beta)], -1
        wr = weyl_act(w, R.rho_check)
        for b, beta in enumerate(R.pos_roots):
            bw_rho[a, b] = int(pairing(beta, wr))
    return Tables(tuple(W), index, roots, wnext, wmu, hroot, hsign, kwall, bw_rho, R.coxeter_number)


def chimney_arrays(R: RootDatum, orientation) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """(deep_a, deep_mu, deep_r, h_M) so that the deep side of H_{beta_b,k} is
    -sign(deep_a[b]) when nonzero, else sign(h_M (deep_mu[b] - k) + deep_r[b])."""
    m = len(R.pos_roots)
    deep_a = np.zeros(m, dtype=np.int64)
    deep_mu = np.zeros(m, dtype=np.int64)
    deep_r = np.zeros(m, dtype=np.int64)
    for b, beta in enumerate(R.pos_roots):
        deep_a[b] = int(pairing(beta, orientation.u_varpi_n))
        deep_mu[b] = int(pairing(beta, orientation.mu))
        deep_r[b] = int(pairing(beta, orientation.u_rho_m))
    return deep_a, deep_mu, deep_r, orientation.h_m


@_jit
def _sign(roots, bw_rho, h, deep_a, deep_mu, deep_r, h_m, lam, w, b, k):
    pl = 0
    for c in range(lam.shape[0]):
        pl += roots[b, c] * lam[c]
    alc = 1 if h * (pl - k) + bw_rho[w, b] > 0 else -1
    if deep_a[b] != 0:
        deep = -1 if deep_a[b] > 0 else 1
    else:
        deep = 1 if h_m * (deep_mu[b] - k) + deep_r[b] > 0 else -1
    return 1 if alc != deep else -1


@_jit
def _separation(roots, bw_rho, h, lam, w, tlam, tw):
    total = 0
    for b in range(roots.shape[0]):
        p = 0
        q = 0
        for c in range(lam.shape[0]):
            p += roots[b, c] * lam[c]
            q += roots[b, c] * tlam[c]
        d = (h * p + bw_rho[w, b]) // h - (h * q + bw_rho[tw, b]) // h
        total += d if d >= 0 else -d
    return total


@_jit
def _dfs(types, pos0, lam0, w0, mask0, p0, f0,
         roots, wnext, wmu, hroot, hsign, kwall, bw_rho, h,
         deep_a, deep_mu, deep_r, h_m,
         use_target, tlam, tw, prune):
    L = types.shape[0]
    n = lam0.shape[0]
    depth = L - pos0
    lam = np.zeros((depth + 1, n), dtype=np.int64)
    wv = np.zeros(depth + 1, dtype=np.int64)
    pv = np.zeros(depth + 1, dtype=np.int64)
    fv = np.zeros(depth + 1, dtype=np.int64)
    mv = np.zeros(depth + 1, dtype=np.int64)
    state = np.zeros(depth + 1, dtype=np.int64)
    for c in range(n):
        lam[0, c] = lam0[c]
    wv[0] = w0
    pv[0] = p0
    fv[0] = f0
    mv[0] = mask0
    cap = 64
    out_m = np.zeros(cap, dtype=np.int64)
    out_p = np.zeros(cap, dtype=np.int64)
    out_f = np.zeros(cap, dtype=np.int64)
    count = 0
    d = 0
    while d >= 0:
        pos = pos0 + d
        if state[d] == 0 and use_target and prune:
            if _separation(roots, bw_rho, h, lam[d], wv[d], tlam, tw) > L - pos:
                d -= 1
                continue
        if pos == L:
            keep = True
            if use_target:
                if wv[d] != tw:
                    keep = False
                for c in range(n):
                    if lam[d, c] != tlam[c]:
                        keep = False
            if keep:
                if count == cap:
                    cap *= 2
                    nm = np.zeros(cap, dtype=np.int64)
                    np_ = np.zeros(cap, dtype=np.int64)
                    nf = np.zeros(cap, dtype=np.int64)
                    nm[:count] = out_m[:count]
                    np_[:count] = out_p[:count]
                    nf[:count] = out_f[:count]
                    out_m, out_p, out_f = nm, np_, nf
                out_m[count] = mv[d]
                out_p[count] = pv[d]
                out_f[count] = fv[d]
                count += 1
            d -= 1
            continue
        j = types[pos]
        w = wv[d]
        b = hroot[w, j]
        k = hsign[w, j] * kwall[j]
        for c in range(n):
            k += roots[b, c] * lam[d, c]
        if state[d] == 0:
            # cross the panel
            state[d] = 1
            w2 = wnext[w, j]
            for c in range(n):
                lam[d + 1, c] = lam[d, c] + wmu[w, j, c]
            wv[d + 1] = w2
            sg = _sign(roots, bw_rho, h, deep_a, deep_mu, deep_r, h_m, lam[d + 1], w2, b, k)
            pv[d + 1] = pv[d] + (1 if sg > 0 else 0)
            fv[d + 1] = fv[d]
            mv[d + 1] = mv[d]
            state[d + 1] = 0
            d += 1
        elif state[d] == 1:
            state[d] = 2
            sg = _sign(roots, bw_rho, h, deep_a, deep_mu, deep_r, h_m, lam[d], w, b, k)
            if sg > 0:
                for c in range(n):
                    lam[d + 1, c] = lam[d, c]
                wv[d + 1] = w
                pv[d + 1] = pv[d]
                fv[d + 1] = fv[d] + 1
                mv[d + 1] = mv[d] | (np.int64(1) << np.int64(pos))
                state[d + 1] = 0
                d += 1
        else:
            d -= 1
    return out_m[:count], out_p[:count], out_f[:count]


def dfs_masks(types, pos0, lam0, w0, mask0, p0, f0, tables: Tables, chim, target, prune):
    """Run the kernel from an intermediate state; returns (masks, p, f) arrays."""
    deep_a, deep_mu, deep_r, h_m = chim
    if target is None:
        use, tlam, tw = False, np.zeros(len(lam0), dtype=np.int64), 0
    else:
        use, tlam, tw = True, np.asarray(target[0], dtype=np.int64), target[1]
    return _dfs(
        np.asarray(types, dtype=np.int64), pos0, np.asarray(lam0, dtype=np.int64), w0,
        mask0, p0, f0, tables.roots, tables.wnext, tables.wmu, tables.hroot, tables.hsign,
        tables.kwall, tables.bw_rho, tables.h, deep_a, deep_mu, deep_r, h_m,
        use, tlam, tw, prune,
    )


def _prefix_states(types, lam0, w0, tables: Tables, chim, depth):
    """All positive prefixes of the given depth as kernel start states."""
    deep_a, deep_mu, deep_r, h_m = chim
    states = [(tuple(lam0), w0, 0, 0, 0)]
    for pos in range(depth):
        j = types[pos]
        nxt = []
        for lam, w, mask, p, f in states:
            b = int(tables.hroot[w, j])
            k = int(tables.hsign[w, j] * tables.kwall[j]) + int(tables.roots[b] @ np.array(lam))
            lam2 = tuple(int(a) for a in np.array(lam) + tables.wmu[w, j])
            w2 = int(tables.wnext[w, j])
            sg = _sign.py_func if USING_NUMBA else _sign
            s_cross = sg(tables.roots, tables.bw_rho, tables.h, deep_a, deep_mu, deep_r, h_m,
                         np.array(lam2), w2, b, k)
            nxt.append((lam2, w2, mask, p + (s_cross > 0), f))
            if sg(tables.roots, tables.bw_rho, tables.h, deep_a, deep_mu, deep_r, h_m,
                  np.array(lam), w, b, k) > 0:
                nxt.append((lam, w, mask | (1 << pos), p, f + 1))
        states = nxt
    return states


def enumerate_masks(R: RootDatum, types, start: ExtAffine, orientation, target: ExtAffine | None = None,
                    prune: bool = True, workers: int | None = None):
    """All positively folded masks of the given type from ``start``.

    Returns int64 arrays (masks, p, f) sorted by mask, where bit j of a mask
    marks a fold at step j.
    """
    tables = build_tables(R)
    chim = chimney_arrays(R, orientation)
    types = tuple(types)
    if len(types) > 62:
        raise ValueError("type vector too long for 64-bit masks")
    tgt = None if target is None else (target.lam, tables.index[target.w])
    w0 = tables.index[start.w]
    workers = default_workers() if workers is None else max(1, workers)
    depth = 0
    if workers > 1:
        depth = min(len(types), max(1, (4 * workers - 1).bit_length()))
    states = _prefix_states(types, start.lam, w0, tables, chim, depth)

    def run(st):
        lam, w, mask, p, f = st
        return dfs_masks(types, depth, lam, w, mask, p, f, tables, chim, tgt, prune)

    if workers > 1 and len(states) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, states))
    else:
        parts = [run(st) for st in states]
    if not parts:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    masks = np.concatenate([q[0] for q in parts])
    ps = np.concatenate([q[1] for q in parts])
    fs = np.concatenate([q[2] for q in parts])
    order = np.argsort(masks, kind="stable")
    return masks[order], ps[order], fs[order]
