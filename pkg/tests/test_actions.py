import random
from itertools import combinations

import pytest

from semiprim import constructors as K
from semiprim.actions import (
    antiplinths,
    block_system,
    canonical_coset_rep,
    classify,
    coset_action,
    coset_action_kernel,
    is_primitive,
    is_semiprimitive,
    is_semiprimitive_two_ways,
    is_semiregular,
    is_transitive,
    minimal_blocks,
    nontrivial_block_system,
    orbit_block_system,
)
from semiprim.atlas import construct
from semiprim.perm import PermGroup, Permutation
from semiprim.structure import center, normal_closure, normal_lattice

import oracles
from samplers import random_transitive_s8

P = Permutation.from_cycles

TAXONOMY = ["primitive", "quasiprimitive_not_primitive", "innately_transitive_not_qp",
            "semiprimitive_not_it", "transitive_not_semiprimitive", "intransitive"]


def test_transitive_and_semiregular_examples(atlas):
    C4 = K.cyclic(4)
    assert is_transitive(C4) and is_semiregular(C4)
    T = PermGroup([P("(1 2)", 3)])
    assert not is_transitive(T) and not is_semiregular(T)
    Z = center(atlas("3A6d18"))
    assert is_semiregular(Z) and sorted(len(o) for o in Z.orbits()) == [3] * 6


def test_orbit_block_system_examples(atlas):
    G = atlas("3A6d18")
    Z = center(G)
    bs = orbit_block_system(G, Z)
    assert (bs.block_count, bs.block_size) == (6, 3)
    assert bs.induced_image.order() == 360
    assert bs.kernel.same_as(Z)
    S4 = K.symmetric(4)
    V = normal_closure(S4, [P("(1 2)(3 4)", 4)])
    with pytest.raises(ValueError):
        orbit_block_system(S4, V)
    H = atlas("24A7d112")
    M = antiplinths(H)[0]
    bs = orbit_block_system(H, M)
    assert (bs.block_count, bs.block_size, bs.induced_image.order()) == (7, 16, 2520)


def test_block_system_invariants():
    G = K.wreath_product(K.symmetric(3), K.symmetric(4))
    bs = block_system(G, [[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]])
    assert bs.block_size * bs.block_count == G.degree
    for g in G.generators:
        for blk in bs.partition:
            assert len({bs.block_of[g[x]] for x in blk}) == 1
    for g in bs.kernel.generators:
        assert all(bs.block_of[g[x]] == bs.block_of[x] for x in range(G.degree))
    assert bs.kernel.order() == 6 ** 4
    with pytest.raises(ValueError):
        block_system(G, [[0, 3], [1, 2]] + [[x] for x in range(4, 12)])


def _all_block_systems(G, alpha, beta):
    """Brute force: finest invariant partition with alpha, beta together."""
    n = G.degree
    els = oracles.closure(G.generators, n)
    for size in range(2, n + 1):
        if n % size:
            continue
        for blk in combinations(range(n), size):
            if alpha not in blk or beta not in blk:
                continue
            images = {frozenset(g[x] for x in blk) for g in els}
            covered = [x for b in images for x in b]
            if len(covered) == n and len(set(covered)) == n:
                return sorted(sorted(b) for b in images)
    return None


def test_minimal_blocks_examples():
    assert is_primitive(K.symmetric(4))
    bs = minimal_blocks(K.cyclic(4), 0, 2)
    assert sorted(map(sorted, bs.partition)) == [[0, 2], [1, 3]]
    assert sorted(map(sorted, bs.partition)) == _all_block_systems(K.cyclic(4), 0, 2)
    G = K.general_linear(2, 4)
    assert not is_primitive(G)
    sizes = {tuple(sorted(len(b) for b in minimal_blocks(G, 0, j).partition)) for j in range(1, 15)}
    assert (3,) * 5 in sizes
    assert nontrivial_block_system(G) is not None
    with pytest.raises(ValueError):
        minimal_blocks(PermGroup([P("(1 2)", 3)]), 0, 1)
    with pytest.raises(ValueError):
        minimal_blocks(K.cyclic(4), 1, 1)


@pytest.mark.parametrize("expr", ["D(6)", "C(6)", "wreath(S(2),S(3))", "AGL(1,5)", "GL(2,3)"])
def test_minimal_blocks_against_brute_force(expr):
    G = construct(expr)
    for beta in range(1, G.degree):
        got = sorted(map(sorted, minimal_blocks(G, 0, beta).partition))
        assert got == _all_block_systems(G, 0, beta)


def test_coset_action_examples(atlas):
    G, H = K.c3_a5_graph_subgroup()
    X = coset_action(G, H)
    assert X.degree == 15 and X.order() == 180 and X.is_transitive()
    assert coset_action_kernel(G, H).order() == 1
    S4 = K.symmetric(4)
    S3 = PermGroup([P("(1 2)", 4), P("(1 2 3)", 4)])
    Y = coset_action(S4, S3)
    assert Y.degree == 4 and Y.order() == 24
    G2 = atlas("3A6x2d18")
    Kst = G2.stabilizer([0])
    assert Kst.order() == 120
    assert all(z not in Kst for z in center(G2).generators)
    Z = coset_action(G2, Kst)
    assert Z.degree == 18 and Z.order() == 2160
    assert coset_action_kernel(G2, Kst).order() == 1


def test_coset_action_kernel_brute_force():
    rng = random.Random(5)
    S5 = K.symmetric(5)
    for _ in range(6):
        Kg = PermGroup([Permutation(rng.sample(range(5), 5))], degree=5)
        X = coset_action(S5, Kg)
        assert X.degree * Kg.order() == 120
        els = oracles.closure(S5.generators, 5)
        Ke = oracles.closure(Kg.generators, 5) if Kg.generators else {tuple(range(5))}
        core = set(els)
        for g in els:
            conj = {oracles.mul(oracles.mul(oracles.inv(g), k), g) for k in Ke}
            core &= conj
        assert coset_action_kernel(S5, Kg).order() == len(core)


def test_canonical_coset_rep_is_constant_on_cosets():
    G = K.symmetric(5)
    Kg = PermGroup([P("(1 2 3)", 5), P("(1 2)", 5)])
    els = list(G.elements())
    reps = {}
    for x in els:
        r = canonical_coset_rep(Kg, tuple(x))
        reps.setdefault(r, set()).add(x)
    assert len(reps) == 20
    for r, xs in reps.items():
        x0 = next(iter(xs))
        assert {k * x0 for k in Kg.elements()} == xs


def test_classify_examples(atlas):
    D4 = PermGroup([P("(1 2 3 4)", 4), P("(1 3)", 4)])
    lab = classify(D4)
    assert lab.label == "transitive_not_semiprimitive"
    assert lab.witness.same_as(PermGroup([P("(1 3)", 4), P("(2 4)", 4)]))
    assert classify(K.general_linear(2, 4)).label == "innately_transitive_not_qp"
    assert classify(atlas("3A6d18")).label == "semiprimitive_not_it"
    assert classify(K.symmetric(5)).label == "primitive"
    assert classify(PermGroup([P("(1 2)", 3)])).label == "intransitive"
    X = coset_action(*K.c3_a5_graph_subgroup())
    assert classify(X).label == "innately_transitive_not_qp"


def test_quasiprimitive_not_primitive():
    # A5 on the 20 cosets of C3 is quasiprimitive (simple) and imprimitive
    A5 = K.alternating(5)
    X = coset_action(A5, PermGroup([P("(1 2 3)", 5)]))
    lab = classify(X)
    assert lab.label == "quasiprimitive_not_primitive"
    assert lab.blocks is not None and not lab.blocks.is_trivial()


def test_two_ways_examples(atlas):
    assert is_semiprimitive_two_ways(K.cyclic(4)) == (True, True)
    D4 = PermGroup([P("(1 2 3 4)", 4), P("(1 3)", 4)])
    assert is_semiprimitive_two_ways(D4) == (False, False)
    assert is_semiprimitive_two_ways(atlas("24A7d112")) == (True, True)


def test_antiplinth_examples(atlas):
    ap = antiplinths(K.alternating(5))
    assert len(ap) == 1 and ap[0].order() == 1
    ap = antiplinths(atlas("3A6d18"))
    assert len(ap) == 1 and ap[0].same_as(center(atlas("3A6d18")))
    ap = antiplinths(atlas("AGL42d128"))
    assert len(ap) == 1 and ap[0].order() == 16 and ap[0].is_abelian()


def test_two_ways_agree_on_random_transitive_s8():
    groups = random_transitive_s8(200, 1)
    small = 0
    labels = set()
    for G in groups:
        a, b = is_semiprimitive_two_ways(G)
        assert a == b
        assert a == is_semiprimitive(G)
        labels.add(classify(G).label)
        if G.order() <= 64:
            small += 1
            assert a == oracles.is_semiprimitive(oracles.closure(G.generators, 8), 8)
    assert small >= 20
    assert {"primitive", "semiprimitive_not_it", "transitive_not_semiprimitive"} <= labels


def test_taxonomy_chain_and_quotient_lemmas():
    for G in random_transitive_s8(40, 2):
        lab = classify(G)
        assert lab.label in TAXONOMY
        if lab.label == "primitive":
            assert lab.flags["quasiprimitive"] and lab.flags["innately_transitive"]
        if lab.label == "transitive_not_semiprimitive":
            continue
        L = normal_lattice(G)
        for N in L.members:
            if N.is_transitive():
                continue
            if N.order() == 1:
                continue
            bs = orbit_block_system(G, N)
            assert bs.kernel.same_as(N)
        for M in antiplinths(G):
            if M.order() == 1:
                continue
            img = orbit_block_system(G, M).induced_image
            assert classify(img).label in ("primitive", "quasiprimitive_not_primitive")
