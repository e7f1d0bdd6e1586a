"""Constructors for the standard families used throughout the package."""

from __future__ import annotations

from itertools import product as _product
from math import factorial, prod

from .actions import coset_action
from .fields import field
from .perm import PermGroup, Permutation

__all__ = [
    "symmetric",
    "alternating",
    "cyclic",
    "dihedral",
    "affine_general_linear",
    "general_linear",
    "semilinear",
    "direct_product",
    "wreath_product",
    "cosets",
    "c3_a5_graph_subgroup",
    "vectors",
    "matrix_action",
    "gl_generators",
    "gl_order",
]


def _cycle(points, n):
    img = list(range(n))
    for a, b in zip(points, points[1:] + points[:1]):
        img[a] = b
    return Permutation(img)


def _check_degree(n):
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"degree must be a positive integer, got {n!r}")


def symmetric(n):
    _check_degree(n)
    if n == 1:
        return PermGroup.trivial(1)
    gens = [_cycle(list(range(n)), n), _cycle([0, 1], n)] if n > 2 else [_cycle([0, 1], n)]
    return PermGroup(gens, degree=n, order=factorial(n))


def alternating(n):
    _check_degree(n)
    if n < 3:
        return PermGroup.trivial(n)
    if n == 3:
        return PermGroup([_cycle([0, 1, 2], 3)], degree=3, order=3)
    long = list(range(n)) if n % 2 else list(range(1, n))
    return PermGroup([_cycle([0, 1, 2], n), _cycle(long, n)], degree=n, order=factorial(n) // 2)


def cyclic(n):
    _check_degree(n)
    if n == 1:
        return PermGroup.trivial(1)
    return PermGroup([_cycle(list(range(n)), n)], degree=n, order=n)


def dihedral(n):
    """Symmetries of an n-gon on its vertices (order 2n for n >= 3)."""
    _check_degree(n)
    if n < 3:
        raise ValueError("dihedral group needs n >= 3")
    refl = Permutation([(-i) % n for i in range(n)])
    return PermGroup([_cycle(list(range(n)), n), refl], degree=n, order=2 * n)


# -- linear groups --------------------------------------------------------

def vectors(d, q):
    """All vectors of GF(q)^d in a fixed order (first coordinate varies slowest)."""
    return list(_product(range(q), repeat=d))


def _vec_mat(F, v, A):
    d = len(v)
    out = []
    for j in range(d):
        s = 0
        for i in range(d):
            if v[i]:
                s = F.add(s, F.mul(v[i], A[i][j]))
        out.append(s)
    return tuple(out)


def gl_generators(d, q):
    """Matrices generating GL(d, q): transvections over a prime-field basis and one diagonal."""
    F = field(q)
    ident = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    mats = []
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            for a in F.basis():
                m = [row[:] for row in ident]
                m[i][j] = a
                mats.append(m)
    if q > 2:
        m = [row[:] for row in ident]
        m[0][0] = F.primitive
        mats.append(m)
    if d == 1:
        mats = [[[F.primitive]]] if q > 2 else []
    return mats


def gl_order(d, q):
    return prod(q ** d - q ** i for i in range(d))


def matrix_action(points, index, F, A, frob=False):
    img = []
    for v in points:
        w = _vec_mat(F, v, A)
        if frob:
            w = tuple(F.frobenius(x) for x in w)
        img.append(index[w])
    return Permutation(img)


def general_linear(d, q):
    """GL(d, q) acting on the nonzero row vectors, v -> vA."""
    F = field(q)
    pts = [v for v in vectors(d, q) if any(v)]
    index = {v: i for i, v in enumerate(pts)}
    gens = [matrix_action(pts, index, F, A) for A in gl_generators(d, q)]
    return PermGroup(gens, degree=len(pts), order=gl_order(d, q))


def semilinear(d, q):
    """GammaL(d, q): GL(d, q) extended by the coordinatewise Frobenius map."""
    F = field(q)
    pts = [v for v in vectors(d, q) if any(v)]
    index = {v: i for i, v in enumerate(pts)}
    ident = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    gens = [matrix_action(pts, index, F, A) for A in gl_generators(d, q)]
    gens.append(matrix_action(pts, index, F, ident, frob=True))
    return PermGroup(gens, degree=len(pts), order=gl_order(d, q) * F.k)


def affine_general_linear(d, q):
    """AGL(d, q) on the q^d vectors: one translation plus GL generators."""
    F = field(q)
    pts = vectors(d, q)
    index = {v: i for i, v in enumerate(pts)}
    e1 = tuple(1 if i == 0 else 0 for i in range(d))
    trans = Permutation([index[tuple(F.add(a, b) for a, b in zip(v, e1))] for v in pts])
    gens = [trans] + [matrix_action(pts, index, F, A) for A in gl_generators(d, q)]
    return PermGroup(gens, degree=len(pts), order=q ** d * gl_order(d, q))


# -- products -------------------------------------------------------------

def direct_product(G1, G2):
    """Action on the disjoint union of the two point sets."""
    n1, n2 = G1.degree, G2.degree
    gens = [Permutation(tuple(g) + tuple(range(n1, n1 + n2))) for g in G1.generators]
    gens += [Permutation(tuple(range(n1)) + tuple(n1 + x for x in g)) for g in G2.generators]
    return PermGroup(gens, degree=n1 + n2, order=G1.order() * G2.order())


def wreath_product(A, B):
    """Imprimitive action of A wr B on deg(A) * deg(B) points.

    Point ``j * deg(A) + i`` is point ``i`` of block ``j``.  A acts on the first
    block of every B-orbit and B permutes the blocks.
    """
    na, nb = A.degree, B.degree
    n = na * nb
    gens = []
    for orb in B.orbits():
        j = orb[0]
        for g in A.generators:
            img = list(range(n))
            for i in range(na):
                img[j * na + i] = j * na + g[i]
            gens.append(Permutation(img))
    for h in B.generators:
        gens.append(Permutation([h[p // na] * na + p % na for p in range(n)]))
    order = A.order() ** nb * B.order()
    return PermGroup(gens, degree=n, order=order)


def cosets(G, gens, cap=10**5):
    """Coset action of ``G`` on the right cosets of the subgroup generated by ``gens``."""
    K = PermGroup(gens, degree=G.degree)
    return coset_action(G, K, cap)


def c3_a5_graph_subgroup():
    """``C3 x A5`` on 3 + 5 points and the graph of ``A4 -> C3`` killing ``V``.

    Returns ``(G, H)`` with ``|H| = 12``; the coset action of ``G`` on ``H``
    has degree 15.
    """
    G = direct_product(cyclic(3), alternating(5))
    c = Permutation.from_cycles("(1 2 3)", 8)
    a = Permutation.from_cycles("(4 5 6)", 8)  # maps onto a generator of A4/V
    v = Permutation.from_cycles("(4 5)(6 7)", 8)
    H = PermGroup([c * a, v], degree=8)
    return G, H
