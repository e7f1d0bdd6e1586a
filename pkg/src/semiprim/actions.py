"""Block systems, quotient and coset actions, kernels and the taxonomy classifier."""

from __future__ import annotations

from dataclasses import dataclass, field

from .perm import PermGroup, Permutation
from .structure import extension_kernel, normal_lattice

__all__ = [
    "is_transitive",
    "is_semiregular",
    "BlockSystem",
    "block_system",
    "orbit_block_system",
    "minimal_blocks",
    "minimal_block_partition",
    "is_primitive",
    "coset_action",
    "coset_action_kernel",
    "canonical_coset_rep",
    "TaxonomyLabel",
    "LABELS",
    "classify",
    "is_semiprimitive",
    "is_semiprimitive_two_ways",
    "antiplinths",
]

LABELS = (
    "primitive",
    "quasiprimitive_not_primitive",
    "innately_transitive_not_qp",
    "semiprimitive_not_it",
    "transitive_not_semiprimitive",
    "intransitive",
)


def is_transitive(G):
    return G.is_transitive()


def is_semiregular(N):
    k = N.order()
    return all(len(o) == k for o in N.orbits())


class BlockSystem:
    """A ``G``-invariant partition with its induced action and kernel.

    Blocks are sorted tuples of 0-based points, ordered by smallest point.
    """

    def __init__(self, G, partition):
        blocks = sorted(tuple(sorted(b)) for b in partition)
        n = G.degree
        block_of = [-1] * n
        for i, b in enumerate(blocks):
            for x in b:
                if block_of[x] != -1:
                    raise ValueError("blocks overlap")
                block_of[x] = i
        if -1 in block_of:
            raise ValueError("blocks do not cover the point set")
        sizes = {len(b) for b in blocks}
        if len(sizes) != 1:
            raise ValueError("blocks of unequal size")
        images = []
        for g in G.generators:
            img = []
            for b in blocks:
                t = {block_of[g[x]] for x in b}
                if len(t) != 1:
                    raise ValueError(f"partition is not invariant under {g}")
                img.append(t.pop())
            images.append(img)
        self.group = G
        self.partition = blocks
        self.block_of = block_of
        self.block_size = sizes.pop()
        self.block_count = len(blocks)
        self._images = images
        self._image = None
        self._kernel = None

    @property
    def induced_image(self):
        if self._image is None:
            self._image = PermGroup([Permutation(im) for im in self._images], degree=self.block_count)
        return self._image

    @property
    def kernel(self):
        if self._kernel is None:
            if self.block_count == 1:
                self._kernel = self.group
            else:
                self._kernel = extension_kernel(self.group, self._images, list(range(self.block_count)))
        return self._kernel

    def is_trivial(self):
        return self.block_count in (1, self.group.degree)

    def __repr__(self):
        return f"<BlockSystem {self.block_count} blocks of size {self.block_size}>"


def block_system(G, partition):
    return BlockSystem(G, partition)


def orbit_block_system(G, N):
    """Blocks formed by the orbits of a normal intransitive subgroup ``N``."""
    if not N.is_normal_in(G):
        raise ValueError("subgroup is not normal")
    orbits = N.orbits()
    if len(orbits) == 1:
        raise ValueError("normal subgroup is transitive: single block")
    return BlockSystem(G, orbits)


def minimal_block_partition(G, alpha, beta):
    """Finest block system joining ``alpha`` and ``beta`` (union-find refinement)."""
    n = G.degree
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = G.generators
    parent[find(beta)] = find(alpha)
    queue = [beta]
    while queue:
        x = queue.pop()
        r = find(x)
        for g in gens:
            a, b = find(g[x]), find(g[r])
            if a != b:
                parent[b] = a
                queue.append(b)
    groups = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return list(groups.values())


def minimal_blocks(G, alpha, beta):
    if not G.is_transitive():
        raise ValueError("group is not transitive")
    if alpha == beta:
        raise ValueError("need two distinct points")
    return BlockSystem(G, minimal_block_partition(G, alpha, beta))


def is_primitive(G):
    if not G.is_transitive():
        return False
    if G.degree <= 2:
        return True
    return all(len(minimal_block_partition(G, 0, b)) == 1 for b in range(1, G.degree))


def nontrivial_block_system(G):
    for b in range(1, G.degree):
        part = minimal_block_partition(G, 0, b)
        if len(part) > 1:
            return BlockSystem(G, part)
    return None


# -- coset actions --------------------------------------------------------

def canonical_coset_rep(K, x):
    """Canonical element of the right coset ``K x``.

    Level by level down ``K``'s chain, pick the transversal element that makes
    the image of the base point smallest.
    """
    h = tuple(x)
    for lev in K.chain.levels:
        best = min(lev.orbit, key=h.__getitem__)
        u = lev.trans[best]
        if u is not None:
            h = tuple(map(h.__getitem__, u))
    return h


def _coset_images(G, K, cap):
    index = G.order() // K.order()
    if G.order() % K.order():
        raise ValueError("subgroup order does not divide group order")
    if index > cap:
        raise ValueError(f"index {index} exceeds coset cap {cap}")
    for k in K.generators:
        if k not in G:
            raise ValueError("not a subgroup")
    start = canonical_coset_rep(K, G.identity())
    reps = [start]
    where = {start: 0}
    images = [[] for _ in G.generators]
    i = 0
    while i < len(reps):
        r = reps[i]
        for j, g in enumerate(G.generators):
            c = canonical_coset_rep(K, tuple(map(g.__getitem__, r)))
            if c not in where:
                where[c] = len(reps)
                reps.append(c)
            images[j].append(where[c])
        i += 1
    if len(reps) != index:
        raise ValueError("coset enumeration failed: generators do not form a subgroup of the group")
    return images


def coset_action(G, K, cap=10**5):
    """Action of ``G`` by right multiplication on the right cosets of ``K``.

    Cosets are numbered breadth first from ``K`` itself, generators in listed order.
    """
    images = _coset_images(G, K, cap)
    return PermGroup([Permutation(im) for im in images], degree=len(images[0]) if images else 1)


def coset_action_kernel(G, K, cap=10**5):
    """The core of ``K`` in ``G``: kernel of the coset action."""
    images = _coset_images(G, K, cap)
    if not images:
        return G
    return extension_kernel(G, images, list(range(len(images[0]))))


# -- taxonomy -------------------------------------------------------------

@dataclass
class TaxonomyLabel:
    label: str
    witness: PermGroup | None = None
    blocks: BlockSystem | None = None
    flags: dict = field(default_factory=dict)

    def __str__(self):
        return self.label


def is_semiprimitive(G):
    if not G.is_transitive():
        return False
    L = normal_lattice(G)
    return all(N.is_transitive() or is_semiregular(N) for N in L.members)


def classify(G):
    if not G.is_transitive():
        return TaxonomyLabel("intransitive")
    L = normal_lattice(G)
    members = L.members[1:]
    for N in members:
        if not N.is_transitive() and not is_semiregular(N):
            return TaxonomyLabel("transitive_not_semiprimitive", witness=N)
    flags = {"semiprimitive": True}
    if is_primitive(G):
        return TaxonomyLabel("primitive", flags=dict(flags, quasiprimitive=True, innately_transitive=True))
    intrans = [N for N in members if not N.is_transitive()]
    if not intrans:
        return TaxonomyLabel("quasiprimitive_not_primitive", blocks=nontrivial_block_system(G),
                             flags=dict(flags, quasiprimitive=True, innately_transitive=True))
    mins = [L.members[i] for i in L.minimal_indices()]
    if any(M.is_transitive() for M in mins):
        return TaxonomyLabel("innately_transitive_not_qp", witness=intrans[0],
                             flags=dict(flags, quasiprimitive=False, innately_transitive=True))
    return TaxonomyLabel("semiprimitive_not_it", witness=mins[0],
                         flags=dict(flags, quasiprimitive=False, innately_transitive=False))


def is_semiprimitive_two_ways(G):
    """Semiprimitivity by definition and by the kernel characterisation."""
    if not G.is_transitive():
        return False, False
    L = normal_lattice(G)
    first = all(N.is_transitive() or is_semiregular(N) for N in L.members)
    second = True
    for N in L.members:
        if N.is_transitive():
            continue
        K = orbit_block_system(G, N).kernel
        if K.order() != N.order() or not N.is_subgroup_of(K):
            second = False
            break
    return first, second


def antiplinths(G):
    """Normal subgroups maximal among the intransitive ones."""
    L = normal_lattice(G)
    idx = [i for i, N in enumerate(L.members) if not N.is_transitive()]
    keys = L.keys
    return [L.members[i] for i in idx if not any(keys[i] < keys[j] for j in idx)]
