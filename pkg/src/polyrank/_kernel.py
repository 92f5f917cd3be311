"""Compiled depth-first search for factorizing cycles in J(k, floor(k/2)).

Vertices of the Johnson graph are indexed 0..N-1 in increasing bitmask
order. Sets of vertices are little arrays of uint64 words. For every arc
(u, c) -- the c-th neighbour of u -- ``clq[u, c]`` is the set of all
m-subsets of u | nbr[u, c]; a later path vertex must avoid all of them and
the arc itself may not swallow an earlier path vertex.

Search state lives in plain arrays owned by the caller so a search can be
paused after a node quota and resumed, which is how time limits, progress
reporting and prefix partitioning are layered on top in Python.

Pruning used, all of it sound:
  * the first arc is fixed to {1..m} -> {1..m-1, m+1};
  * label classes: labels with identical membership along the path are
    interchangeable, so only the smallest label of a class is removed or
    added when extending;
  * rotation canonicity: every turn gets a label-invariant type and the
    sequence of types must stay a prenecklace, i.e. the cycle is explored
    from a rotation whose type sequence is lexicographically minimal;
  * counting: enough unclaimed vertices must remain, and the start vertex
    must still have a usable closing neighbour.
"""

from __future__ import annotations

import numpy as np
from numba import njit

FOUND = 1
EXHAUSTED = 0
PAUSED = 2
EMIT = 3

# meta slots
M_T = 0  # current path index
M_BASE = 1  # path index of the root of this (sub)search
M_NODES = 2  # nodes explored so far

NTYPES = 27


@njit(cache=True)
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True)
def _lowbit(x):
    i = 0
    while (x >> i) & 1 == 0:
        i += 1
    return i


@njit(cache=True)
def _has(bits, v):
    return (bits[v >> 6] >> np.uint64(v & 63)) & np.uint64(1) != 0


@njit(cache=True)
def _turn_type(r2, a2, r1, a1, r0, a0):
    # steps (r, a) = (label removed, label added); 0 is the newest step
    if r0 == a1:
        rel = 0
    elif a0 == r1:
        rel = 1
    else:
        rel = 2
    if r0 == r2:
        x = 0
    elif r0 == a2:
        x = 1
    else:
        x = 2
    if a0 == r2:
        y = 0
    elif a0 == a2:
        y = 1
    else:
        y = 2
    return rel * 9 + x * 3 + y


@njit(cache=True)
def _push(t, u, c, v, verts, clq, path, F, vis, cls, rem, add, typ, per, rank, k):
    """Extend the path from index t with arc (u, c) landing on v at t + 1."""
    W = F.shape[1]
    path[t + 1] = v
    for w in range(W):
        vis[t + 1, w] = vis[t, w]
        F[t + 1, w] = F[t, w] | clq[u, c, w]
    vis[t + 1, v >> 6] |= np.uint64(1) << np.uint64(v & 63)
    # refine label classes by membership in v, renumbered by first occurrence
    for x in range(k):
        cls[t + 1, x] = -1
    nxt = 0
    for x in range(k):
        if cls[t + 1, x] >= 0:
            continue
        bx = (verts[v] >> x) & 1
        for y in range(x, k):
            if cls[t, y] == cls[t, x] and ((verts[v] >> y) & 1) == bx:
                cls[t + 1, y] = nxt
        nxt += 1
    d = verts[v] ^ verts[u]
    rem[t] = _lowbit(d & verts[u])
    add[t] = _lowbit(d & verts[v])
    if t >= 2:
        q = t - 1
        typ[q] = rank[_turn_type(rem[t - 2], add[t - 2], rem[t - 1], add[t - 1], rem[t], add[t])]
        if q == 1:
            per[q] = 1
        elif typ[q] > typ[q - per[q - 1]]:
            per[q] = q
        else:
            per[q] = per[q - 1]


@njit(cache=True)
def init_state(prefix, n, k, verts, nbr, clq, rank, path, F, vis, cls, ncand, rem, add, typ, per, meta):
    """Replay a prefix (vertex indices) into fresh state arrays."""
    deg = nbr.shape[1]
    F[:, :] = 0
    vis[:, :] = 0
    c1 = prefix[0]
    path[0] = c1
    vis[0, c1 >> 6] |= np.uint64(1) << np.uint64(c1 & 63)
    for x in range(k):
        cls[0, x] = (verts[c1] >> x) & 1
    L = prefix.shape[0]
    for t in range(L - 1):
        u = path[t]
        v = prefix[t + 1]
        ci = -1
        for c in range(deg):
            if nbr[u, c] == v:
                ci = c
        if ci < 0:
            return False
        _push(t, u, ci, v, verts, clq, path, F, vis, cls, rem, add, typ, per, rank, k)
    meta[M_T] = L - 1
    meta[M_BASE] = L - 1
    meta[M_NODES] = 0
    ncand[L - 1] = -1
    return True


@njit(cache=True)
def advance(n, k, verts, nbr, clq, rank, order, use_classes, use_necklace, emit_len,
            path, F, vis, cls, cand, ncand, pos, rem, add, typ, per, meta, quota):
    """Run the search for at most ``quota`` more nodes.

    Returns FOUND (path[0:n] is a factorizing cycle), EXHAUSTED, PAUSED
    (quota used up; call again to continue) or EMIT (path[0:emit_len] is an
    unexplored prefix handed to the caller; call again to continue).
    """
    N = verts.shape[0]
    W = F.shape[1]
    deg = nbr.shape[1]
    c1 = path[0]
    base = meta[M_BASE]
    t = meta[M_T]
    nodes = meta[M_NODES]
    stop = nodes + quota
    avail = np.zeros(W, np.uint64)
    key = np.zeros(deg, np.int64)
    full = np.zeros(W, np.uint64)
    for v in range(N):
        full[v >> 6] |= np.uint64(1) << np.uint64(v & 63)
    c1_word = c1 >> 6
    c1_bit = np.uint64(1) << np.uint64(c1 & 63)

    while t >= base:
        if ncand[t] < 0:
            if emit_len > 0 and t + 1 == emit_len and t > base:
                # hand the node to the caller and step back to its parent
                ncand[t] = 0
                pos[t] = 0
                meta[M_T] = t - 1
                meta[M_NODES] = nodes
                return EMIT
            if nodes >= stop:
                meta[M_T] = t
                meta[M_NODES] = nodes
                return PAUSED
            nodes += 1
            ncand[t] = 0
            pos[t] = 0
            cur = path[t]
            cur_word = cur >> 6
            cur_bit = np.uint64(1) << np.uint64(cur & 63)
            if t + 1 == n:
                for c in range(deg):
                    if nbr[cur, c] != c1:
                        continue
                    ok = True
                    for w in range(W):
                        o = vis[t, w]
                        if w == cur_word:
                            o &= ~cur_bit
                        if w == c1_word:
                            o &= ~c1_bit
                        if clq[cur, c, w] & o:
                            ok = False
                            break
                    if ok:
                        meta[M_T] = t
                        meta[M_NODES] = nodes
                        return FOUND
                t -= 1
                continue
            cnt = 0
            for w in range(W):
                avail[w] = full[w] & ~F[t, w] & ~vis[t, w]
                cnt += _popcount(avail[w])
            if cnt < n - t - 1:
                t -= 1
                continue
            closable = False
            for c in range(deg):
                x = nbr[c1, c]
                if not _has(avail, x):
                    continue
                good = True
                for w in range(W):
                    o = vis[t, w]
                    if w == c1_word:
                        o &= ~c1_bit
                    if clq[c1, c, w] & o:
                        good = False
                        break
                if good:
                    closable = True
                    break
            if not closable:
                t -= 1
                continue
            cv = verts[cur]
            nc = 0
            for c in range(deg):
                v = nbr[cur, c]
                if not _has(avail, v):
                    continue
                d = verts[v] ^ cv
                r0 = _lowbit(d & cv)
                a0 = _lowbit(d & verts[v])
                if use_classes:
                    rep = True
                    for y in range(r0):
                        if cls[t, y] == cls[t, r0]:
                            rep = False
                            break
                    if rep:
                        for y in range(a0):
                            if cls[t, y] == cls[t, a0]:
                                rep = False
                                break
                    if not rep:
                        continue
                if use_necklace and t >= 2:
                    q = t - 1
                    ty = rank[_turn_type(rem[t - 2], add[t - 2], rem[t - 1], add[t - 1], r0, a0)]
                    if q >= 2 and ty < typ[q - per[q - 1]]:
                        continue
                bad = False
                for w in range(W):
                    o = vis[t, w]
                    if w == cur_word:
                        o &= ~cur_bit
                    if clq[cur, c, w] & o:
                        bad = True
                        break
                if bad:
                    continue
                if order == 1:
                    fresh = 0
                    for w in range(W):
                        fresh += _popcount(clq[cur, c, w] & ~F[t, w])
                    key[nc] = fresh * 4096 + c
                else:
                    key[nc] = c
                cand[t, nc] = c
                nc += 1
            for i in range(1, nc):
                kk = key[i]
                cc = cand[t, i]
                j = i - 1
                while j >= 0 and key[j] > kk:
                    key[j + 1] = key[j]
                    cand[t, j + 1] = cand[t, j]
                    j -= 1
                key[j + 1] = kk
                cand[t, j + 1] = cc
            ncand[t] = nc
        if pos[t] >= ncand[t]:
            t -= 1
            continue
        c = cand[t, pos[t]]
        pos[t] += 1
        u = path[t]
        _push(t, u, c, nbr[u, c], verts, clq, path, F, vis, cls, rem, add, typ, per, rank, k)
        t += 1
        ncand[t] = -1
    meta[M_T] = t
    meta[M_NODES] = nodes
    return EXHAUSTED


def build_graph(k: int):
    """Vertex masks, neighbour table and arc clique sets of J(k, k // 2)."""
    from itertools import combinations

    m = k // 2
    verts = sorted(sum(1 << x for x in c) for c in combinations(range(k), m))
    index = {v: i for i, v in enumerate(verts)}
    N = len(verts)
    W = (N + 63) // 64
    deg = m * (k - m)
    nbr = np.zeros((N, max(deg, 1)), np.int64)
    clq = np.zeros((N, max(deg, 1), W), np.uint64)
    for i, a in enumerate(verts):
        c = 0
        for x in range(k):
            if not (a >> x) & 1:
                continue
            for y in range(k):
                if (a >> y) & 1:
                    continue
                b = (a & ~(1 << x)) | (1 << y)
                nbr[i, c] = index[b]
                c += 1
        # neighbours in increasing vertex order
        nbr[i, :c] = np.sort(nbr[i, :c])
        for c2 in range(c):
            b = verts[nbr[i, c2]]
            u = a | b
            for x in range(k):
                if (u >> x) & 1:
                    q = index[u & ~(1 << x)]
                    clq[i, c2, q >> 6] |= np.uint64(1) << np.uint64(q & 63)
    return np.array(verts, np.int64), index, nbr, clq
