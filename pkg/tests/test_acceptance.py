"""One test per acceptance criterion; each prints a PASS/FAIL line.

Two tabulated claims do not hold for the groups as certified here.  They are
kept as strict expected failures so they stay visible and would flag a change.
"""

import random
import time
from math import factorial

import numpy as np
import pytest

from semiprim.actions import antiplinths, is_semiprimitive_two_ways, orbit_block_system
from semiprim.atlas import ATLAS_NAMES, AtlasCertificateError, atlas_load, construct, group_from_text
from semiprim.census import census
from semiprim.classification import TABLE1_WITNESSES, ansn_cover_classify, numerical_lemma_checks
from semiprim.harness import FPR_BOUND, TABLE_ROWS, socle_quotient_alternating
from semiprim.metrics import base_size_exact, block_base_transfer, is_base, minimal_degree
from semiprim.structure import normal_lattice

import oracles
from samplers import random_small, random_subgroup, random_transitive_s8
from test_atlas import _mutated_copy

EXCEPTIONAL_ROWS = {
    "24A7d112": (2, 1), "AGL42d128": (2, 2), "24A8nsd128": (2, 3), "3A6d18": (2, 4),
    "3A6x2d18": (2, 5), "GL24d15": (2, 6), "GammaL24d15": (2, 7),
}


# -- 1 -------------------------------------------------------------------------

def test_criterion_1_table_reproduction(table_report, criterion):
    rows = table_report["rows"]
    seconds = sum(r["seconds"] for r in rows)
    assert [r["name"] for r in rows] == [t[0] for t in TABLE_ROWS]
    diffs = [f"{r['name']} expected {tuple(r['expected'])} computed {tuple(r['computed'])}"
             for r in rows if not r["match"]]
    criterion(1, table_report["ok"] and seconds <= 1800,
              f"{sum(r['match'] for r in rows)}/7 rows exact in {seconds:.0f}s"
              + ("" if not diffs else "; mismatches: " + "; ".join(diffs)))
    assert seconds <= 1800
    for r in rows:
        order, degree, b, m = r["computed"]
        e_order, e_degree, e_b, e_m = r["expected"]
        # order, degree and minimal degree agree with the table on every row
        assert (order, degree, m) == (e_order, e_degree, e_m)
        # the measured base size is certified: the base works and no shorter one exists
        G = atlas_load(r["name"])
        assert is_base(G, [x - 1 for x in r["base"]]) and len(r["base"]) == b
        assert degree ** (b - 1) < order or not any(is_base(G, [0, q]) for q in range(1, degree))
        # every tabulated b is the base size of the quotient or of G itself
        assert e_b in (b, r["quotient_base_size"])


@pytest.mark.xfail(strict=True, reason="five tabulated base sizes equal b(G^Delta), not b(G)")
def test_criterion_1_tabulated_base_sizes(table_report):
    assert all(r["computed"][2] == r["expected"][2] for r in table_report["rows"])


# -- 2 -------------------------------------------------------------------------

def test_criterion_2_classification_totality(atlas, criterion):
    got = {}
    for name in ATLAS_NAMES:
        out = ansn_cover_classify(atlas(name))
        assert out.all_claims_hold()
        got[name] = out.row_id
    witness = {}
    for row, expr in TABLE1_WITNESSES.items():
        G = construct(expr)
        out = ansn_cover_classify(G)
        assert out.all_claims_hold() and out.r in (5, 6)
        witness[row] = out.row_id
    ok = got == EXCEPTIONAL_ROWS and all(witness[k] == (1, k) for k in witness)
    criterion(2, ok, f"exceptional groups -> {sorted(got.values())}; "
                     f"witnesses -> {[witness[k] for k in sorted(witness)]}")
    assert got == EXCEPTIONAL_ROWS
    assert witness == {k: (1, k) for k in TABLE1_WITNESSES}


# -- 3 -------------------------------------------------------------------------

def test_criterion_3_bound_suite(default_reports, criterion):
    problems = []
    for r in default_reports:
        assert r.error is None, r.error
        v = {x.bound_id: x for x in r.bounds}
        if r.taxonomy == "transitive_not_semiprimitive":
            if {x.status for x in r.bounds} != {"exempt"}:
                problems.append(f"{r.name}: non-semiprimitive group not skipped")
            continue
        has_alt = 2 * r.order >= factorial(r.degree)
        for bid in ("order_4n", "order_basesize", "basesize", "mindeg"):
            want = "exempt" if has_alt else "pass"
            if v[bid].status != want:
                problems.append(f"{r.name}: {bid} {v[bid].status}, expected {want}")
        if v["chieflen"].status != "pass":
            problems.append(f"{r.name}: chieflen {v['chieflen'].status}")
        G = group_from_text(r.name)
        alt_socle = all(socle_quotient_alternating(G, M) for M in antiplinths(G))
        if alt_socle:
            if v["fpr"].status != "exempt":
                problems.append(f"{r.name}: fpr should be exempt")
        elif v["fpr"].status != "pass" or v["fpr"].lhs > FPR_BOUND:
            problems.append(f"{r.name}: fpr {v['fpr'].status}")
    statuses = [x.status for r in default_reports for x in r.bounds]
    criterion(3, not problems, f"{len(default_reports)} groups, {statuses.count('pass')} pass, "
                               f"{statuses.count('exempt')} exempt, {statuses.count('fail')} fail"
              + ("" if not problems else "; " + "; ".join(problems)))
    assert not problems
    assert "fail" not in statuses


# -- 4 -------------------------------------------------------------------------

def test_criterion_4_oracle_equivalence(criterion):
    t0 = time.perf_counter()
    groups = random_transitive_s8(200, 4)
    agree = sum(1 for G in groups if len(set(is_semiprimitive_two_ways(G))) == 1)
    brute = [G for G in groups if G.order() <= 64]
    brute_ok = all(is_semiprimitive_two_ways(G)[0] == oracles.is_semiprimitive(
        oracles.closure(G.generators, 8), 8) for G in brute)
    rng = random.Random(44)
    base_ok = mindeg_ok = 0
    for _ in range(100):
        G = random_subgroup(rng, 6)
        els = oracles.closure(G.generators, 6)
        base_ok += base_size_exact(G)[0] == oracles.base_size(els, 6)
        if G.order() == 1:
            mindeg_ok += 1
        else:
            mindeg_ok += minimal_degree(G, "census")[0] == oracles.minimal_degree(els, 6)
    chains_ok = 0
    for _ in range(50):
        L = normal_lattice(random_small(rng, 7, 5040))
        chains_ok += len(L.maximal_chain()) == len(L.maximal_chain(lambda ups: rng.choice(ups)))
    seconds = time.perf_counter() - t0
    ok = agree == 200 and brute_ok and base_ok == 100 and mindeg_ok == 100 and chains_ok == 50 and seconds <= 600
    criterion(4, ok, f"semiprimitivity {agree}/200 agree ({len(brute)} brute-forced), base size {base_ok}/100, "
                     f"minimal degree {mindeg_ok}/100, chief chains {chains_ok}/50, {seconds:.0f}s")
    assert ok


# -- 5 -------------------------------------------------------------------------

def test_criterion_5_quotient_lemmas(default_reports, criterion):
    pairs = 0
    bad = []
    for r in default_reports:
        if r.taxonomy in ("transitive_not_semiprimitive", "intransitive"):
            continue
        G = group_from_text(r.name)
        for M in antiplinths(G):
            if M.order() == 1:
                continue
            pairs += 1
            bs = orbit_block_system(G, M)
            bd, base_d = base_size_exact(bs.induced_image)
            pts = block_base_transfer(G, bs, base_d)
            b = base_size_exact(G)[0]
            mg, md = minimal_degree(G)[0], minimal_degree(bs.induced_image)[0]
            if not (is_base(G, pts) and b <= bd and mg >= bs.block_size * md):
                bad.append(r.name)
    criterion(5, pairs > 0 and not bad, f"{pairs} (G, M) pairs checked" + (f"; failures {bad}" if bad else ""))
    assert pairs >= 7 and not bad


# -- 6 -------------------------------------------------------------------------

def test_criterion_6_numerical_lemmas(criterion):
    t0 = time.perf_counter()
    res = numerical_lemma_checks(60, 100)
    seconds = time.perf_counter() - t0
    exceptions = sorted(res["sqrt_failures"])
    ok = (res["factorial_pairs_checked"] == 1540 and not res["factorial_failures"]
          and exceptions == [(a, 2) for a in range(2, 6)] and seconds < 60)
    criterion(6, ok, f"m r! < 4^(m r) on {res['factorial_pairs_checked']} pairs; "
                     f"square-root inequality fails exactly on {exceptions}; {seconds:.1f}s")
    assert ok


# -- 7 -------------------------------------------------------------------------

def _count_of_order(G, k):
    counts = np.bincount(census(G).element_orders(), minlength=k + 1)
    return int(counts[k])


def test_criterion_7_atlas_integrity(tmp_path, atlas, criterion):
    for name in ATLAS_NAMES:
        atlas(name)
    d = _mutated_copy(tmp_path, "24A8nsd128")
    with pytest.raises(AtlasCertificateError):
        atlas_load("24A8nsd128", d)
    split, ns = atlas("AGL42d128"), atlas("24A8nsd128")
    inv = (_count_of_order(split, 2), _count_of_order(ns, 2))
    four = (_count_of_order(split, 4), _count_of_order(ns, 4))
    criterion(7, inv[0] != inv[1],
              f"7 certificates pass, mutated file rejected; involutions {inv[0]} vs {inv[1]} "
              f"(equal), elements of order 4 {four[0]} vs {four[1]} (differ)")
    assert four[0] != four[1]


@pytest.mark.xfail(strict=True, reason="both extensions have 1695 involutions")
def test_criterion_7_involution_fingerprint(atlas):
    assert _count_of_order(atlas("AGL42d128"), 2) != _count_of_order(atlas("24A8nsd128"), 2)


# -- 8 -------------------------------------------------------------------------

# measured minimal degree of 3.A6 on 18 points, kept as a regression constant
M_3A6 = 12


def test_criterion_8_minimal_degree_3a6(atlas, criterion):
    G = atlas("3A6d18")
    m, w = minimal_degree(G, "census")
    # the block bound alone only gives m >= 3 m(A6 on 6 points) = 9; the census settles it
    M = antiplinths(G)[0]
    bs = orbit_block_system(G, M)
    assert m >= bs.block_size * minimal_degree(bs.induced_image)[0] == 9
    fix = 18 - m
    criterion(8, m >= 12 and m == M_3A6, f"m(3.A6 on 18 points) = {m} by census, fixity {fix}, witness {w}")
    assert m == M_3A6 and m >= 12 and fix <= 6
    assert w.moved_count() == m
