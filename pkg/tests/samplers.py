"""Seeded random groups shared by the property tests."""

import random

from semiprim.atlas import construct
from semiprim.census import census
from semiprim.perm import PermGroup, Permutation

# transitive groups of degree 8 whose random 2-generated subgroups cover many shapes;
# uniform pairs from S_8 almost always generate A_8 or S_8
S8_HOSTS = ["S(8)", "wreath(S(2),S(4))", "wreath(S(4),S(2))", "AGL(3,2)", "D(8)",
            "wreath(C(2),D(4))", "wreath(S(2),C(4))", "wreath(C(4),S(2))", "wreath(C(2),C(4))",
            "wreath(D(4),C(2))", "group(8;(1 2 3 4 5 6 7 8),(1 3 5 7)(2 4 6 8),(1 5)(2 6))"]


def random_transitive_s8(count, seed):
    """``count`` transitive groups, each generated by two random elements of a host."""
    rng = random.Random(seed)
    hosts = [census(construct(h)) for h in S8_HOSTS]
    out = []
    while len(out) < count:
        c = rng.choice(hosts)
        gens = [c.permutation(rng.randrange(c.size)) for _ in range(2)]
        G = PermGroup(gens, degree=8)
        if G.is_transitive():
            out.append(G)
    return out


def random_subgroup(rng, n):
    """Subgroup of ``S_n`` generated by one or two uniform random permutations."""
    gens = []
    for _ in range(rng.randint(1, 2)):
        img = list(range(n))
        rng.shuffle(img)
        gens.append(Permutation(img))
    return PermGroup(gens, degree=n)


def random_small(rng, n, maxorder):
    """Two products of a few random transpositions, retried until the order is at most ``maxorder``."""
    while True:
        gens = []
        for _ in range(2):
            img = list(range(n))
            for _ in range(rng.randint(1, 3)):
                i, j = rng.sample(range(n), 2)
                img[i], img[j] = img[j], img[i]
            gens.append(Permutation(img))
        G = PermGroup(gens, degree=n)
        if G.order() <= maxorder:
            return G
