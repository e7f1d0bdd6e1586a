"""Whole-group element census held as a numpy array.

Rows are elements in the same order as ``perm.elements``.  Row lookup goes
through a 64-bit random-weight hash that is checked to be collision free.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .perm import Permutation, check_cap

__all__ = ["Census", "census", "element_array"]


def _dtype(n):
    return np.uint8 if n <= 256 else np.uint16


def element_array(G, cap=None):
    """All elements of ``G`` as an ``|G| x n`` array, identity first."""
    check_cap(G.order(), cap)
    n = G.degree
    dt = _dtype(n)
    chain = G.chain
    arr = np.arange(n, dtype=dt)[None, :]
    for i in reversed(range(len(chain.levels))):
        U = np.array(chain.transversal(i), dtype=dt)
        # row (a, u) is a * u, i.e. u applied after a
        arr = U[:, arr].transpose(1, 0, 2).reshape(-1, n)
    return np.ascontiguousarray(arr)


class Census:
    """Elements of a group with indexed lookup and class data."""

    def __init__(self, G, cap=None, seed=20240601):
        self.group = G
        self.degree = G.degree
        self.E = element_array(G, cap)
        self.size = self.E.shape[0]
        rng = np.random.default_rng(seed)
        for _ in range(8):
            self._w = rng.integers(1, 2**63, size=self.degree, dtype=np.uint64) | np.uint64(1)
            h = self._hash(self.E)
            order = np.argsort(h, kind="stable")
            hs = h[order]
            if self.size < 2 or np.all(hs[1:] != hs[:-1]):
                break
        else:  # pragma: no cover - astronomically unlikely
            raise RuntimeError("could not find a collision free element hash")
        self._sorted_hash = hs
        self._sorted_idx = order
        self._classes = None
        self._orders = None

    def _hash(self, rows):
        rows = np.atleast_2d(rows)
        h = np.zeros(rows.shape[0], dtype=np.uint64)
        with np.errstate(over="ignore"):
            for i in range(self.degree):
                h += rows[:, i].astype(np.uint64) * self._w[i]
        return h

    def index(self, rows):
        """Row indices of the given permutations, ``-1`` where absent."""
        rows = np.atleast_2d(np.asarray(rows, dtype=self.E.dtype))
        h = self._hash(rows)
        pos = np.searchsorted(self._sorted_hash, h)
        pos = np.minimum(pos, self.size - 1)
        idx = self._sorted_idx[pos]
        ok = (self._sorted_hash[pos] == h) & np.all(self.E[idx] == rows, axis=1)
        return np.where(ok, idx, -1)

    def permutation(self, i):
        return Permutation(self.E[i].tolist(), check=False)

    def fixities(self):
        return (self.E == np.arange(self.degree, dtype=self.E.dtype)).sum(axis=1)

    def element_orders(self):
        if self._orders is None:
            ident = np.arange(self.degree, dtype=self.E.dtype)
            orders = np.zeros(self.size, dtype=np.int64)
            orders[0] = 1
            P = self.E.copy()
            k = 1
            while True:
                done = (orders == 0) & np.all(P == ident, axis=1)
                orders[done] = k
                if np.all(orders > 0):
                    break
                # P <- P * E, apply P then E
                P = np.take_along_axis(self.E, P.astype(np.intp), axis=1)
                k += 1
            self._orders = orders
        return self._orders

    def involution_count(self):
        return int(np.sum(self.element_orders() == 2))

    def conjugacy_classes(self):
        """``(labels, count)``: class label for every element, labels ordered by first element."""
        if self._classes is None:
            if not self.group.generators:
                self._classes = (np.zeros(self.size, dtype=np.int64), 1)
                return self._classes
            src, dst = [], []
            allidx = np.arange(self.size)
            for s in self.group.generators:
                s_arr = np.array(s, dtype=self.E.dtype)
                sinv = np.argsort(s_arr)
                conj = s_arr[self.E[:, sinv]]  # s^-1 x s
                j = self.index(conj)
                if np.any(j < 0):
                    raise RuntimeError("census is not closed under conjugation")
                src.append(allidx)
                dst.append(j)
            src = np.concatenate(src)
            dst = np.concatenate(dst)
            graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(self.size, self.size))
            count, labels = connected_components(graph, directed=True, connection="weak")
            # relabel by first occurrence so class 0 is the identity class
            _, first = np.unique(labels, return_index=True)
            rank = np.empty(count, dtype=np.int64)
            rank[np.argsort(first)] = np.arange(count)
            self._classes = (rank[labels], count)
        return self._classes

    def class_representatives(self):
        labels, count = self.conjugacy_classes()
        _, first = np.unique(labels, return_index=True)
        return first

    def class_sizes(self):
        labels, count = self.conjugacy_classes()
        return np.bincount(labels, minlength=count)


def census(G, cap=None):
    """Cached census of ``G``."""
    c = G._cache.get("census")
    if c is None:
        c = Census(G, cap)
        G._cache["census"] = c
    return c
