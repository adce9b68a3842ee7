"""Compiled inner loop of the simple-optiongraph sweep.

A labelled digraph on ``n`` positions is an ``n*n``-bit mask; arrow
``i -> j`` is bit ``n*n - 1 - (i*n + j)``, so reading the mask from its most
significant bit gives the adjacency matrix row by row.  Comparing masks as
integers therefore compares flattened adjacency strings lexicographically,
and a graph's canonical code is the least mask among its relabellings.
"""

import itertools

import numpy as np
from numba import njit


def permutation_table(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


@njit(cache=True)
def _decode(mask, n, adj):
    nn = n * n
    for i in range(n):
        for j in range(n):
            adj[i, j] = (mask >> (nn - 1 - (i * n + j))) & 1


@njit(cache=True)
def _is_simple(adj, n, cls, new, key):
    for p in range(n):
        cls[p] = 0
    count = 1
    while True:
        for p in range(n):
            s = 0
            for q in range(n):
                if adj[p, q]:
                    s |= 1 << cls[q]
            key[p] = (cls[p] << n) | s
        k = 0
        for p in range(n):
            new[p] = -1
            for r in range(p):
                if key[r] == key[p]:
                    new[p] = new[r]
                    break
            if new[p] < 0:
                new[p] = k
                k += 1
        if k == count:
            return count == n
        count = k
        for p in range(n):
            cls[p] = new[p]


@njit(cache=True)
def _is_canonical(mask, adj, n, perms):
    # True iff no relabelling yields a smaller mask
    nn = n * n
    full = (1 << n) - 1
    for t in range(perms.shape[0]):
        for i in range(n):
            row = 0
            pi = perms[t, i]
            for j in range(n):
                row = (row << 1) | adj[pi, perms[t, j]]
            orig = (mask >> (nn - n * (i + 1))) & full
            if row < orig:
                return False
            if row > orig:
                break
    return True


@njit(cache=True)
def sweep_range(n, lo, hi, perms, out):
    """Scan masks ``lo <= m < hi``; write canonical simple masks into ``out``.

    Returns ``(number of simple masks, number written)``.
    """
    adj = np.zeros((n, n), dtype=np.int64)
    cls = np.zeros(n, dtype=np.int64)
    new = np.zeros(n, dtype=np.int64)
    key = np.zeros(n, dtype=np.int64)
    simple = 0
    written = 0
    for m in range(lo, hi):
        _decode(m, n, adj)
        if _is_simple(adj, n, cls, new, key):
            simple += 1
            if _is_canonical(m, adj, n, perms):
                out[written] = m
                written += 1
    return simple, written
