import random
from math import factorial

import pytest
from hypothesis import given, strategies as st

from semiprim import constructors as K
from semiprim.perm import (
    CensusCapExceeded,
    ChainOrderExceeded,
    PermGroup,
    Permutation,
    build_chain,
    compose,
    elements,
    format_generators,
    membership,
    orbit,
    orbit_word,
    parse_generators,
    pointwise_stabilizer,
    read_generator_file,
    set_census_cap,
    census_cap,
    write_generator_file,
)
from semiprim.structure import center

import oracles

P = Permutation.from_cycles


def perms(n):
    return st.permutations(list(range(n))).map(Permutation)


def test_compose_left_to_right():
    assert compose(P("(1 2)", 3), P("(2 3)", 3)) == P("(1 3 2)", 3)
    assert str(compose(P("(1 2)", 3), P("(2 3)", 3))) == "(1 3 2)"


@given(perms(7))
def test_identity_and_inverse(p):
    e = Permutation.identity(7)
    assert compose(p, e) == p
    assert compose(p, ~p) == e
    assert p ** p.order() == e


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose(P("(1 2)", 3), P("(1 2)", 4))


def test_permutation_validation_and_parsing():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])
    with pytest.raises(ValueError):
        P("(1 2 1)", 3)
    with pytest.raises(ValueError):
        P("(1 5)", 3)
    with pytest.raises(ValueError):
        P("(1 2) junk", 3)
    assert P("(1,2)(3, 4)", 4) == P("(1 2)(3 4)", 4)
    assert str(Permutation.identity(3)) == "()"
    assert P("()", 3).is_identity()


@given(perms(8))
def test_cycle_string_round_trip(p):
    assert P(str(p), 8) == p
    assert sum(len(c) for c in p.cycles()) == p.moved_count()


def test_orbit_examples():
    S4 = K.symmetric(4)
    pts, tree = orbit(S4, 0)
    assert set(pts) == {0, 1, 2, 3}
    for q in pts:
        x = 0
        for k in orbit_word(tree, q):
            x = S4.generators[k][x]
        assert x == q
    assert set(PermGroup([P("(1 2)(3 4)", 4)]).orbit(0)) == {0, 1}
    # translations of AGL(4,2) act regularly on the 16 vectors
    V = PermGroup([Permutation([v ^ (1 << i) for v in range(16)]) for i in range(4)])
    assert V.is_subgroup_of(K.affine_general_linear(4, 2))
    assert len(V.orbit(0)) == 16 and V.order() == 16
    with pytest.raises(ValueError):
        orbit(S4, 4)


def test_build_chain_orders(atlas):
    assert PermGroup([P("(1 2 3 4)", 4), P("(1 2)", 4)]).order() == 24
    assert K.general_linear(2, 4).order() == 180
    assert atlas("3A6d18").order() == 1080
    assert build_chain([Permutation.identity(5)]).order() == 1
    assert build_chain([Permutation.identity(5)]).base == []


def test_chain_invariants():
    G = K.affine_general_linear(3, 2)
    ch = G.chain
    prod = 1
    for i in range(len(ch.levels)):
        prod *= len(ch.transversal(i))
    assert prod == ch.order() == 1344
    for g in ch.strong_gens:
        h, depth = ch.sift(tuple(g))
        assert depth == len(ch.levels) and Permutation(h).is_identity()


def test_order_limit():
    with pytest.raises(ChainOrderExceeded):
        build_chain(K.symmetric(6), order_limit=100)


def test_membership(atlas):
    S4, A4 = K.symmetric(4), K.alternating(4)
    assert membership(S4, P("(1 2)", 4))
    assert not membership(A4, P("(1 2)", 4))
    G = atlas("3A6d18")
    Z = center(G)
    z = Z.generators[0]
    assert z.order() == 3 and membership(G, z)
    assert not membership(G, P("(1 2)", 18))


def test_elements_examples():
    C6 = K.cyclic(6)
    assert len(list(C6.elements())) == 6
    S3 = list(K.symmetric(3).elements())
    assert len(S3) == 6 and S3[0].is_identity()
    assert sum(1 for g in S3 if g.cycle_type() == [2]) == 3


@pytest.mark.parametrize("gens,n", [
    ([(1, 2, 3, 4, 5)], 5),
    ([(1, 2), (1, 2, 3, 4, 5, 6)], 6),
    ([(1, 2, 3), (3, 4, 5, 6, 7)], 7),
])
def test_elements_match_closure(gens, n):
    G = PermGroup([oracles.from_cycles([g], n) for g in gens], degree=n)
    els = list(elements(G))
    assert len(els) == len(set(els)) == G.order()
    assert set(els) == oracles.closure(G.generators, n)


def test_census_cap_is_enforced():
    old = census_cap()
    try:
        set_census_cap(100)
        with pytest.raises(CensusCapExceeded):
            list(K.symmetric(6).elements())
    finally:
        set_census_cap(old)
    with pytest.raises(CensusCapExceeded):
        list(elements(K.symmetric(6), cap=700))


def test_pointwise_stabilizer_examples():
    assert pointwise_stabilizer(K.symmetric(6), [0, 1, 2, 3]).order() == 2
    assert pointwise_stabilizer(K.alternating(6), [0, 1, 2, 3]).order() == 1
    assert pointwise_stabilizer(K.general_linear(2, 4), [0]).order() == 12
    with pytest.raises(ValueError):
        pointwise_stabilizer(K.symmetric(3), [3])


def _random_subgroup(rng, n):
    gens = []
    for _ in range(rng.randint(1, 3)):
        img = list(range(n))
        rng.shuffle(img)
        gens.append(Permutation(img))
    return PermGroup(gens, degree=n)


def test_base_change_invariance_on_random_s8_subgroups():
    rng = random.Random(8)
    S8 = K.symmetric(8)
    probes = [Permutation(rng.sample(range(8), 8)) for _ in range(10)]
    for _ in range(100):
        G = _random_subgroup(rng, 8)
        order = G.order()
        prefix = rng.sample(range(8), rng.randint(1, 4))
        ch = build_chain(G, base_prefix=prefix)
        assert ch.order() == order
        assert ch.base[: len(prefix)] == prefix
        for x in probes + G.generators:
            assert ch.contains(x) == (x in G)
        assert order <= S8.order()


def test_orbits_partition_points():
    rng = random.Random(3)
    for _ in range(30):
        G = _random_subgroup(rng, 9)
        obs = G.orbits()
        assert sorted(p for o in obs for p in o) == list(range(9))
        if G.is_transitive():
            assert all(len(G.orbit(p)) == 9 for p in range(9))


def test_symmetric_alternating_orders():
    for n in range(2, 9):
        assert K.symmetric(n).order() == factorial(n)
    for n in range(3, 9):
        assert K.alternating(n).order() == factorial(n) // 2


def test_generator_file_round_trip(tmp_path):
    G = K.general_linear(2, 4)
    path = tmp_path / "g.gens"
    write_generator_file(path, G)
    H = read_generator_file(path)
    assert H.degree == 15 and H.order() == 180
    n, gens = parse_generators("# comment\ndegree 4\n(1 2 3 4)\n  ( 1 , 2 )  \n()\n")
    assert n == 4 and len(gens) == 3 and gens[2].is_identity()
    assert format_generators(4, gens).splitlines()[0] == "degree 4"
    with pytest.raises(ValueError):
        parse_generators("(1 2)\n")
