"""Normal structure of desk-scale groups.

The normal subgroup lattice is built from normal closures of one element per
conjugacy class, closed under joins.  A normal subgroup is a union of classes,
so the set of class ids it contains is used as its identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .census import census
from .perm import PermGroup, Permutation, build_chain, pointwise_stabilizer

__all__ = [
    "normal_closure",
    "derived_subgroup",
    "center",
    "centralizer_of_normal",
    "NormalLattice",
    "normal_lattice",
    "minimal_normals",
    "socle",
    "is_simple",
    "chief_series",
    "chief_length",
    "MinimalNormalShape",
    "shape_of_minimal_normal",
    "alternating_degree_of_order",
    "extension_kernel",
    "commutator",
]


def commutator(a, b):
    return ~a * ~b * a * b


def _subgroup(gens, degree, limit=None):
    gens = [g for g in gens if not g.is_identity()]
    chain = build_chain(gens, order_limit=limit) if gens else None
    if chain is None:
        return PermGroup.trivial(degree)
    return PermGroup(gens, degree=degree, order=chain.order(), chain=chain)


def normal_closure(G, S):
    """Smallest normal subgroup of ``G`` containing the elements of ``S``."""
    S = [s if isinstance(s, Permutation) else Permutation(s) for s in S]
    for s in S:
        if s not in G:
            raise ValueError(f"{s} is not an element of the group")
    gens = [s for s in S if not s.is_identity()]
    N = _subgroup(gens, G.degree)
    queue = list(gens)
    while queue:
        x = queue.pop()
        for g in G.generators:
            c = x.conjugate(g)
            if c not in N:
                gens.append(c)
                queue.append(c)
                N = _subgroup(gens, G.degree, G.order())
    return N


def derived_subgroup(G):
    if "derived" not in G._cache:
        gs = G.generators
        comms = [commutator(a, b) for i, a in enumerate(gs) for b in gs[i + 1:]]
        G._cache["derived"] = normal_closure(G, comms)
    return G._cache["derived"]


def center(G, cap=None):
    """Elements commuting with every generator, found by census."""
    if "center" not in G._cache:
        c = census(G, cap)
        E = c.E
        mask = np.ones(c.size, dtype=bool)
        for s in G.generators:
            s_arr = np.array(s, dtype=E.dtype)
            mask &= np.all(s_arr[E] == E[:, s_arr], axis=1)
        elts = [c.permutation(i) for i in np.nonzero(mask)[0]]
        Z = _subgroup(elts, G.degree)
        G._cache["center"] = Z
    return G._cache["center"]


def extension_kernel(G, extra_images, fixed):
    """Kernel of an action of ``G`` given alongside its natural one.

    ``extra_images[k]`` is the permutation of the extra points induced by
    ``G.generators[k]``.  The result is the subgroup of ``G`` fixing every extra
    point listed in ``fixed`` (0-based within the extra points).
    """
    n = G.degree
    if not G.generators:
        return G
    gens = [Permutation(tuple(g) + tuple(n + x for x in e)) for g, e in zip(G.generators, extra_images)]
    big = PermGroup(gens, degree=n + len(extra_images[0]), order=G.order())
    K = pointwise_stabilizer(big, [n + f for f in fixed])
    kg = [Permutation(g[:n]) for g in K.generators]
    return PermGroup(kg, degree=n, order=K.order())


def _conjugation_orbit(G, seeds):
    pts = [tuple(s) for s in seeds]
    index = {p: i for i, p in enumerate(pts)}
    i = 0
    while i < len(pts):
        x = Permutation(pts[i], check=False)
        for g in G.generators:
            c = tuple(x.conjugate(g))
            if c not in index:
                index[c] = len(pts)
                pts.append(c)
        i += 1
    return pts, index


def centralizer_of_normal(G, M):
    """``C_G(M)`` for ``M`` normal in ``G``, as a kernel of conjugation.

    The conjugation action is taken on the ``G``-classes of the generators of
    ``M``, which is enough since fixing every generator centralizes ``M``.
    """
    if not M.is_normal_in(G):
        raise ValueError("subgroup is not normal")
    if not M.generators:
        return G
    pts, index = _conjugation_orbit(G, M.generators)
    extra = []
    for g in G.generators:
        extra.append([index[tuple(Permutation(p, check=False).conjugate(g))] for p in pts])
    return extension_kernel(G, extra, list(range(len(M.generators))))


@dataclass
class NormalLattice:
    """All normal subgroups of a group with the Hasse diagram of containment."""

    group: PermGroup
    members: list
    keys: list
    covers: dict = field(default_factory=dict)  # member index -> indices of members covering it

    def __len__(self):
        return len(self.members)

    def key_of(self, N):
        """Class-id set of a normal subgroup ``N`` of the ambient group."""
        c = census(self.group)
        reps = c.class_representatives()
        return frozenset(k for k, r in enumerate(reps) if c.permutation(r) in N)

    def index_of(self, N):
        return self.keys.index(self.key_of(N))

    @property
    def trivial_index(self):
        return 0

    @property
    def top_index(self):
        return len(self.members) - 1

    def below(self, i):
        """Indices of members strictly contained in member ``i``."""
        return [j for j, k in enumerate(self.keys) if j != i and k < self.keys[i]]

    def minimal_indices(self):
        return [i for i in range(1, len(self.members)) if all(j == 0 for j in self.below(i))]

    def maximal_chain(self, choose=None):
        """Indices of a maximal chain from the trivial group to the whole group.

        ``choose`` picks among covering members and defaults to the first.
        """
        chain = [0]
        i = 0
        while i != self.top_index:
            ups = self.covers[i]
            i = ups[0] if choose is None else choose(ups)
            chain.append(i)
        return chain


def normal_lattice(G, cap=None):
    if "lattice" in G._cache:
        return G._cache["lattice"]
    c = census(G, cap)
    labels, count = c.conjugacy_classes()
    reps = [c.permutation(r) for r in c.class_representatives()]

    def key(N):
        if N.order() == 1:
            return frozenset([0])
        if N.order() == G.order():
            return frozenset(range(count))
        return frozenset(k for k, r in enumerate(reps) if r in N)

    found = {}

    def add(N):
        k = key(N)
        if k not in found:
            found[k] = N
        return k

    add(PermGroup.trivial(G.degree))
    add(G)
    for k in range(1, count):
        add(normal_closure(G, [reps[k]]))
    # join closure
    tried = set()
    changed = True
    while changed:
        changed = False
        ks = list(found)
        for i, a in enumerate(ks):
            for b in ks[i + 1:]:
                if a <= b or b <= a or (a, b) in tried:
                    continue
                tried.add((a, b))
                A, B = found[a], found[b]
                J = _subgroup(A.generators + B.generators, G.degree)
                if key(J) not in found:
                    add(J)
                    changed = True
    items = sorted(found.items(), key=lambda kv: (kv[1].order(), sorted(kv[0])))
    keys = [k for k, _ in items]
    members = [N for _, N in items]
    covers = {}
    for i, ki in enumerate(keys):
        above = [j for j, kj in enumerate(keys) if ki < kj]
        covers[i] = [j for j in above if not any(keys[i] < keys[l] < keys[j] for l in above)]
    L = NormalLattice(G, members, keys, covers)
    G._cache["lattice"] = L
    return L


def minimal_normals(G):
    L = normal_lattice(G)
    return [L.members[i] for i in L.minimal_indices()]


def socle(G):
    mins = minimal_normals(G)
    gens = [g for N in mins for g in N.generators]
    return _subgroup(gens, G.degree) if gens else PermGroup.trivial(G.degree)


def is_simple(G):
    return G.order() > 1 and len(normal_lattice(G)) == 2


def chief_series(G, choose=None):
    L = normal_lattice(G)
    return [L.members[i] for i in L.maximal_chain(choose)]


def chief_length(G, choose=None):
    return len(chief_series(G, choose)) - 1


@dataclass
class MinimalNormalShape:
    kind: str
    d: int
    factor_order: int
    p: int | None = None
    alternating_degree: int | None = None

    @property
    def order(self):
        return self.factor_order ** self.d


def alternating_degree_of_order(order):
    """``k >= 5`` with ``k!/2 == order``, or None."""
    k = 5
    while factorial(k) // 2 < order:
        k += 1
    return k if factorial(k) // 2 == order else None


def _prime_power(n):
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    d = 0
    m = n
    while m % p == 0:
        m //= p
        d += 1
    return (p, d) if m == 1 else None


def shape_of_minimal_normal(M, G):
    if M.order() == 1 or not M.is_normal_in(G):
        raise ValueError("not a nontrivial normal subgroup")
    L = normal_lattice(G)
    km = L.key_of(M)
    if any(0 < j and L.keys[j] < km for j in range(len(L))):
        raise ValueError("subgroup is not minimal normal")
    if M.is_abelian():
        pd = _prime_power(M.order())
        if pd is None or any(g.order() != pd[0] for g in M.generators):
            raise ValueError("abelian minimal normal subgroup is not elementary")
        return MinimalNormalShape("abelian", pd[1], pd[0], p=pd[0])
    factors = minimal_normals(M)
    t = factors[0].order()
    if any(F.order() != t for F in factors) or t ** len(factors) != M.order():
        raise ValueError("minimal normal subgroup is not a power of one simple group")
    k = alternating_degree_of_order(t)
    if k == 8 and not np.any(census(factors[0]).element_orders() == 15):
        k = None
    return MinimalNormalShape("nonabelian", len(factors), t, alternating_degree=k)
