"""Regenerate the atlas generator files.

    python3 tools/build_atlas.py [outdir]

Constructions:

* 3A6x2d18: the stabilizer in SigmaL(3,4) of the hyperoval
  {(1,t,t^2)} u {(0,0,1),(0,1,0)} acting on its 18 nonzero vectors.
  3A6d18 is its derived subgroup on the same points.
* AGL42d128, 24A8nsd128: extensions E of V = GF(2)^4 by GL(4,2) = A8 inside
  Y = (V x ... x V) : GL(4,2) acting on 8 copies of V, the copies indexed by
  the cosets of an A7 in GL(4,2).  E is generated by the diagonal translations
  and lifts (a, u_a), (b, u_b) of two generators of GL(4,2).  The u's solve the
  cocycle condition modulo the diagonal; u = 0 gives the split group and a
  solution outside the trivial (coboundary plus diagonal shift) subspace gives
  the nonsplit one.
* 24A7d112: stabilizer of the last copy of V in the split group, acting on the
  other seven copies.

Random choices use a fixed seed, so the output is reproducible.  The library
never trusts these files without their certificates.
"""

from __future__ import annotations

import os
import random
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(HERE, "..", "src"))

import numpy as np  # noqa: E402

from semiprim.actions import canonical_coset_rep  # noqa: E402
from semiprim.census import Census  # noqa: E402
from semiprim.constructors import gl_generators, matrix_action, vectors  # noqa: E402
from semiprim.fields import field  # noqa: E402
from semiprim.perm import PermGroup, Permutation, format_generators, pointwise_stabilizer  # noqa: E402
from semiprim.structure import derived_subgroup  # noqa: E402

SEED = 7


def small_generating_set(elements, order, degree):
    gens, G = [], PermGroup.trivial(degree)
    for e in elements:
        if e not in G:
            gens.append(e)
            G = PermGroup(gens, degree=degree)
            if G.order() == order:
                break
    assert G.order() == order
    return G


def hyperoval_groups():
    F = field(4)
    pts = [v for v in vectors(3, 4) if any(v)]
    idx = {v: i for i, v in enumerate(pts)}
    mats = [m for m in gl_generators(3, 4) if m[0][0] != F.primitive]  # transvections: SL(3,4)
    ident = [[int(i == j) for j in range(3)] for i in range(3)]
    gens = [matrix_action(pts, idx, F, A) for A in mats]
    gens.append(matrix_action(pts, idx, F, ident, frob=True))
    sigma = PermGroup(gens, degree=63)
    assert sigma.order() == 120960
    oval = [(1, t, F.mul(t, t)) for t in range(4)] + [(0, 0, 1), (0, 1, 0)]
    S = sorted(idx[tuple(F.mul(c, x) for x in v)] for v in oval for c in (1, 2, 3))
    c = Census(sigma)
    inside = np.zeros(63, dtype=bool)
    inside[S] = True
    rows = np.nonzero(np.all(inside[c.E[:, S]], axis=1))[0]
    pos = {p: i for i, p in enumerate(S)}
    elts = [Permutation([pos[int(c.E[r][p])] for p in S]) for r in rows]
    G2 = small_generating_set(elts, len(rows), 18)
    G1 = derived_subgroup(G2)
    G1 = small_generating_set(list(G1.elements()), 1080, 18)
    return G1, G2


def _lin(rows):
    img = []
    for v in range(16):
        w = 0
        for i in range(4):
            if v >> i & 1:
                w ^= rows[i]
        img.append(w)
    return Permutation(img)


def _act(d, h, ph):
    """``d^h`` for symbolic ``d`` (32 bitmasks: copy k, coordinate j at 4k + j)."""
    phinv = [0] * 8
    for k, v in enumerate(ph):
        phinv[v] = k
    rows = [h[1 << i] for i in range(4)]
    out = [0] * 32
    for k in range(8):
        src = phinv[k]
        for i in range(4):
            m = d[4 * src + i]
            if m:
                for j in range(4):
                    if rows[i] >> j & 1:
                        out[4 * k + j] ^= m
    return out


def _rank(vs):
    basis = {}
    for m in vs:
        while m:
            p = m.bit_length() - 1
            if p in basis:
                m ^= basis[p]
            else:
                basis[p] = m
                break
    return len(basis)


def two_four_groups():
    rng = random.Random(SEED)
    mats = []
    for i in range(4):
        for j in range(4):
            if i != j:
                rows = [1 << k for k in range(4)]
                rows[i] ^= 1 << j
                mats.append(_lin(rows))
    GL = PermGroup(mats, degree=16)
    assert GL.order() == 20160
    c = Census(GL)

    def pick():
        return c.permutation(rng.randrange(c.size))

    while True:
        A7 = PermGroup([pick(), pick()], degree=16)
        if A7.order() == 2520:
            break
    while True:
        a, b = pick(), pick()
        if PermGroup([a, b], degree=16).order() == 20160:
            break
    reps = [canonical_coset_rep(A7, tuple(range(16)))]
    where = {reps[0]: 0}
    i = 0
    while i < len(reps):
        for g in mats:
            cc = canonical_coset_rep(A7, tuple(g[v] for v in reps[i]))
            if cc not in where:
                where[cc] = len(reps)
                reps.append(cc)
        i += 1
    assert len(reps) == 8

    def pi(g):
        return [where[canonical_coset_rep(A7, tuple(g[v] for v in r))] for r in reps]

    gens = [(tuple(a), pi(a)), (tuple(b), pi(b))]
    unknown = [[1 << (32 * t + k) for k in range(32)] for t in range(2)]
    ident = tuple(range(16))
    delta = {ident: [0] * 32}
    queue = [ident]
    eqs = {}

    def add_eq(m):
        while m:
            p = m.bit_length() - 1
            if p in eqs:
                m ^= eqs[p]
            else:
                eqs[p] = m
                return

    while queue:
        g = queue.pop()
        dg = delta[g]
        for t, (x, px) in enumerate(gens):
            gx = tuple(x[v] for v in g)
            cand = [u ^ w for u, w in zip(_act(dg, x, px), unknown[t])]
            if gx not in delta:
                delta[gx] = cand
                queue.append(gx)
            else:
                o = delta[gx]
                for k in range(28):
                    add_eq(cand[k] ^ o[k] ^ cand[28 + k % 4] ^ o[28 + k % 4])
    rref = {}
    for p in sorted(eqs):
        m = eqs[p]
        for p2 in list(rref):
            if m >> p2 & 1:
                m ^= rref[p2]
        for p2 in list(rref):
            if rref[p2] >> p & 1:
                rref[p2] ^= m
        rref[p] = m
    null = []
    for f in range(64):
        if f in rref:
            continue
        v = 1 << f
        for p, m in rref.items():
            if m >> f & 1:
                v |= 1 << p
        null.append(v)
    trivial = []
    for t in range(2):
        for j in range(4):
            trivial.append(sum(1 << (32 * t + 4 * k + j) for k in range(8)))
    for qk in range(32):
        qv = [0] * 32
        qv[qk] = 1
        sol = 0
        for t, (x, px) in enumerate(gens):
            qx = _act(qv, x, px)
            for k in range(32):
                if qx[k] ^ qv[k]:
                    sol |= 1 << (32 * t + k)
        trivial.append(sol)
    base_rank = _rank(trivial)
    extra = next(v for v in null if _rank(trivial + [v]) > base_rank)

    def build(sol):
        perms = []
        for t, (x, px) in enumerate(gens):
            u = [(sol >> (32 * t + k)) & 1 for k in range(32)]
            img = [0] * 128
            for i in range(8):
                j = px[i]
                d = sum(u[4 * j + bb] << bb for bb in range(4))
                for w in range(16):
                    img[16 * i + w] = 16 * j + (x[w] ^ d)
            perms.append(Permutation(img))
        perms.append(Permutation([16 * (p // 16) + ((p % 16) ^ 1) for p in range(128)]))
        return PermGroup(perms, degree=128, order=322560)

    split, nonsplit = build(0), build(extra)
    # stabilizer of copy 7 in the split group, acting on copies 0..6
    ext = [Permutation(tuple(g) + tuple(128 + g[16 * k] // 16 for k in range(8))) for g in split.generators]
    big = PermGroup(ext, degree=136, order=322560)
    K = pointwise_stabilizer(big, [135])
    g7 = [Permutation(g[:112]) for g in K.generators]
    A7grp = small_generating_set(g7, 40320, 112)
    return split, nonsplit, A7grp


def main(outdir=None):
    outdir = outdir or os.path.join(HERE, "..", "src", "semiprim", "atlas_data")
    os.makedirs(outdir, exist_ok=True)
    g1, g2 = hyperoval_groups()
    split, nonsplit, a7 = two_four_groups()
    for name, G in [("3A6d18", g1), ("3A6x2d18", g2), ("24A7d112", a7),
                    ("AGL42d128", split), ("24A8nsd128", nonsplit)]:
        with open(os.path.join(outdir, name + ".gens"), "w") as fh:
            fh.write(format_generators(G.degree, G.generators))
        print(name, G.degree, G.order())


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else None)
