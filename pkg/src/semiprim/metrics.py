"""Base size, minimal degree, fixed point ratio and the two quotient checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .actions import orbit_block_system, is_semiregular
from .census import census
from .perm import PermGroup, Permutation, build_chain
from .structure import chief_length

__all__ = [
    "stabilizer_of_point",
    "is_base",
    "greedy_base",
    "base_size_exact",
    "block_base_transfer",
    "minimal_degree",
    "fpr",
    "block_degree_values",
    "block_degree_bound_check",
    "MetricReport",
    "metric_report",
    "CLASS_MODE_THRESHOLD",
]

CLASS_MODE_THRESHOLD = 10**5


def stabilizer_of_point(K, p):
    """``K_p`` with a chain read off a base change putting ``p`` first."""
    if K.order() == 1 or all(g[p] == p for g in K.generators):
        return K
    chain = build_chain(K, base_prefix=[p], known_order=K.order())
    sub = chain.sub_chain(1)
    sub.levels = [lev for lev in sub.levels if len(lev.orbit) > 1]
    gens = [Permutation(g, check=False) for g in sub.strong_gens]
    return PermGroup(gens, degree=K.degree, order=sub.order(), chain=sub)


def _stabilizer(G, points):
    K = G
    for p in points:
        K = stabilizer_of_point(K, p)
    return K


def is_base(G, points):
    return _stabilizer(G, points).order() == 1


def _orbit_reps(K):
    """Smallest point of every nontrivial orbit, with the largest orbit size."""
    reps, big = [], 0
    for o in K.orbits():
        if len(o) > 1:
            reps.append(min(o))
            big = max(big, len(o))
    return sorted(reps), big


def greedy_base(G):
    """Repeatedly add the smallest point of a largest orbit of the current stabilizer."""
    K, base = G, []
    while K.order() > 1:
        orbits = [o for o in K.orbits() if len(o) > 1]
        big = max(len(o) for o in orbits)
        p = min(min(o) for o in orbits if len(o) == big)
        base.append(p)
        K = stabilizer_of_point(K, p)
    return base


def base_size_exact(G):
    """Minimum base size and the lexicographically smallest base of that size.

    Iterative deepening over orbit representatives of the running stabilizer.
    A branch is cut when the stabilizer is bigger than the largest orbit size
    raised to the remaining depth, and failed stabilizers are remembered by
    their fixed point sets.
    """
    if G.order() == 1:
        return 0, []
    upper = greedy_base(G)
    failed = {}

    def fixkey(K):
        moved = set()
        for g in K.generators:
            moved.update(i for i, x in enumerate(g) if i != x)
        return frozenset(i for i in range(K.degree) if i not in moved)

    def search(K, depth, prefix):
        if K.order() == 1:
            return list(prefix)
        if depth == 0:
            return None
        key = fixkey(K)
        if failed.get(key, -1) >= depth:
            return None
        reps, big = _orbit_reps(K)
        if K.order() > big ** depth:
            failed[key] = max(failed.get(key, -1), depth)
            return None
        for p in reps:
            prefix.append(p)
            found = search(stabilizer_of_point(K, p), depth - 1, prefix)
            prefix.pop()
            if found is not None:
                return found
        failed[key] = max(failed.get(key, -1), depth)
        return None

    for k in range(1, len(upper) + 1):
        found = search(G, k, [])
        if found is not None:
            return k, found
    return len(upper), upper


def block_base_transfer(G, blocks, base_delta):
    """Lift a base of the block action to a base of ``G``, one point per block."""
    if not is_semiregular(blocks.kernel):
        raise ValueError("kernel of the block action is not semiregular")
    if not is_base(blocks.induced_image, base_delta):
        raise ValueError("block list is not a base of the induced action")
    pts = [blocks.partition[j][0] for j in base_delta]
    if not is_base(G, pts):
        raise AssertionError("transferred points do not form a base")
    return pts


def minimal_degree(G, mode="auto", cap=None):
    """``(m(G), witness)``: fewest points moved by a nontrivial element.

    The witness is the first such element in enumeration order.  In class mode
    only the first element of each conjugacy class is inspected.
    """
    if G.order() == 1:
        raise ValueError("trivial group has no nontrivial element")
    c = census(G, cap)
    if mode == "auto":
        mode = "class" if G.order() > CLASS_MODE_THRESHOLD else "census"
    n = G.degree
    if mode == "census":
        moved = n - c.fixities()
        moved[0] = n + 1
        i = int(np.argmin(moved))
    elif mode == "class":
        reps = c.class_representatives()[1:]
        moved = n - (c.E[reps] == np.arange(n, dtype=c.E.dtype)).sum(axis=1)
        i = int(reps[int(np.argmin(moved))])
    else:
        raise ValueError(f"unknown mode {mode!r}")
    w = c.permutation(i)
    return w.moved_count(), w


def fpr(G, mode="auto"):
    m, _ = minimal_degree(G, mode)
    return Fraction(G.degree - m, G.degree)


def block_degree_values(G, N):
    """``(m(G), s, m(G^Delta))`` for the system of ``N``-orbits."""
    bs = orbit_block_system(G, N)
    img = bs.induced_image
    return minimal_degree(G)[0], bs.block_size, minimal_degree(img)[0]


def block_degree_bound_check(G, N):
    mg, s, md = block_degree_values(G, N)
    return mg >= s * md


@dataclass
class MetricReport:
    order: int
    base_size: int
    base: list
    minimal_degree: int
    witness: Permutation | None
    fpr: Fraction
    chief_length: int

    def check(self, degree):
        assert self.minimal_degree == degree * (1 - self.fpr)


def metric_report(G):
    b, base = base_size_exact(G)
    if G.order() > 1:
        m, w = minimal_degree(G)
    else:
        m, w = 0, None
    f = Fraction(G.degree - m, G.degree) if w is not None else Fraction(0)
    return MetricReport(G.order(), b, [x for x in base], m, w, f, chief_length(G))
