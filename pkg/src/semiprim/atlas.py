"""Named groups: construction from expressions and the certified data files.

Each data entry is a pair ``<name>.gens`` (generator file) and ``<name>.cert``
(one ``key value`` requirement per line).  Loading checks every requirement
and refuses the group on the first failure.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from . import constructors as K
from .actions import antiplinths, classify, is_semiregular, orbit_block_system
from .census import census
from .dsl import parse_group_expr
from .perm import ChainOrderExceeded, PermGroup, Permutation, build_chain, parse_generators
from .structure import center, derived_subgroup

__all__ = [
    "ATLAS_NAMES",
    "ALIASES",
    "AtlasCertificateError",
    "atlas_load",
    "atlas_load_unchecked",
    "read_certificate",
    "check_certificate",
    "construct",
    "group_from_text",
    "data_dir",
]

ATLAS_NAMES = ("3A6d18", "3A6x2d18", "24A7d112", "AGL42d128", "24A8nsd128", "GL24d15", "GammaL24d15")
ALIASES = {"GL24d15": "GL(2,4)", "GammaL24d15": "GammaL(2,4)"}


class AtlasCertificateError(ValueError):
    pass


def data_dir():
    return os.path.join(os.path.dirname(os.path.abspath(__file__)), "atlas_data")


def construct(e):
    """Build the permutation group described by an expression tree or string."""
    if isinstance(e, str):
        e = parse_group_expr(e)
    k, a = e.kind, e.args
    if k == "S":
        return K.symmetric(a[0])
    if k == "A":
        return K.alternating(a[0])
    if k == "C":
        return K.cyclic(a[0])
    if k == "D":
        return K.dihedral(a[0])
    if k == "AGL":
        return K.affine_general_linear(a[0], a[1])
    if k == "GL":
        return K.general_linear(a[0], a[1])
    if k == "GammaL":
        return K.semilinear(a[0], a[1])
    if k == "direct":
        return K.direct_product(construct(a[0]), construct(a[1]))
    if k == "wreath":
        return K.wreath_product(construct(a[0]), construct(a[1]))
    if k == "atlas":
        return atlas_load(a[0])
    if k == "group":
        n = a[0]
        return PermGroup([_perm(p, n) for p in a[1]], degree=n)
    if k == "cosets":
        G = construct(a[0])
        return K.cosets(G, [_perm(p, G.degree) for p in a[1]])
    raise ValueError(f"unknown expression kind {k!r}")


def _perm(cycles, n):
    text = "".join("(" + " ".join(map(str, c)) + ")" for c in cycles) or "()"
    return Permutation.from_cycles(text, n)


def group_from_text(text):
    """A group from an expression, an atlas name or a generator file path."""
    if os.path.isfile(text):
        with open(text) as fh:
            n, gens = parse_generators(fh.read())
        return PermGroup(gens, degree=n)
    return construct(parse_group_expr(text.strip()))


def read_certificate(name, directory=None):
    path = os.path.join(directory or data_dir(), name + ".cert")
    lines = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                key, _, value = line.partition(" ")
                lines.append((key, value.strip()))
    return lines


def atlas_load_unchecked(name, directory=None):
    if name in ALIASES:
        return construct(ALIASES[name])
    path = os.path.join(directory or data_dir(), name + ".gens")
    with open(path) as fh:
        n, gens = parse_generators(fh.read())
    return PermGroup(gens, degree=n)


def _bool(v):
    if v not in ("true", "false"):
        raise AtlasCertificateError(f"bad boolean {v!r}")
    return v == "true"


def _single_antiplinth(G):
    ap = antiplinths(G)
    if len(ap) != 1:
        raise AtlasCertificateError(f"expected one antiplinth, found {len(ap)}")
    return ap[0]


def _elem_abelian(N):
    if not N.is_abelian() or N.order() == 1:
        return False
    p = min(d for d in range(2, N.order() + 1) if N.order() % d == 0)
    n = N.order()
    while n % p == 0:
        n //= p
    return n == 1 and all(g.order() == p for g in N.generators)


def _order_counts(G):
    return np.bincount(census(G).element_orders())


def _check_line(G, key, value, directory):
    """Return ``(ok, observed)`` for one certificate requirement."""
    if key == "degree":
        obs = G.degree
        return obs == int(value), obs
    if key == "order":
        obs = G.order()
        return obs == int(value), obs
    if key == "transitive":
        obs = G.is_transitive()
        return obs == _bool(value), obs
    if key == "semiprimitive":
        obs = classify(G).label not in ("transitive_not_semiprimitive", "intransitive")
        return obs == _bool(value), obs
    if key == "taxonomy":
        obs = classify(G).label
        return obs == value, obs
    if key == "center_order":
        obs = center(G).order()
        return obs == int(value), obs
    if key == "center_semiregular":
        obs = is_semiregular(center(G))
        return obs == _bool(value), obs
    if key == "perfect":
        obs = derived_subgroup(G).order() == G.order()
        return obs == _bool(value), obs
    if key == "derived_order":
        obs = derived_subgroup(G).order()
        return obs == int(value), obs
    if key == "antiplinth_order":
        obs = _single_antiplinth(G).order()
        return obs == int(value), obs
    if key == "antiplinth_orbits":
        obs = len(_single_antiplinth(G).orbits())
        return obs == int(value), obs
    if key == "antiplinth_semiregular":
        obs = is_semiregular(_single_antiplinth(G))
        return obs == _bool(value), obs
    if key == "antiplinth_elementary_abelian":
        obs = _elem_abelian(_single_antiplinth(G))
        return obs == _bool(value), obs
    if key == "delta_image_order":
        obs = orbit_block_system(G, _single_antiplinth(G)).induced_image.order()
        return obs == int(value), obs
    if key == "delta_image_element_order":
        img = orbit_block_system(G, _single_antiplinth(G)).induced_image
        k = int(value)
        counts = _order_counts(img)
        obs = bool(k < len(counts) and counts[k] > 0)
        return obs, obs
    if key == "involutions":
        counts = _order_counts(G)
        obs = int(counts[2]) if len(counts) > 2 else 0
        return obs == int(value), obs
    if key.startswith("elements_of_order_"):
        k = int(key.rsplit("_", 1)[1])
        counts = _order_counts(G)
        obs = int(counts[k]) if len(counts) > k else 0
        return obs == int(value), obs
    if key == "contains":
        other, index = value.split()
        H = atlas_load(other, directory)
        ok = (H.degree == G.degree and all(g in G for g in H.generators)
              and G.order() == int(index) * H.order())
        return ok, ok
    raise AtlasCertificateError(f"unknown certificate key {key!r}")


def check_certificate(G, lines, name="group", directory=None):
    """Check every requirement; raise on the first failing line."""
    expected = dict(lines)
    if "order" in expected and G._known_order is None and G._chain is None:
        # refuse to build a huge chain for a corrupted file
        try:
            chain = build_chain(G, order_limit=int(expected["order"]))
        except ChainOrderExceeded:
            raise AtlasCertificateError(f"{name}: certificate line 'order {expected['order']}' failed: "
                                        f"group is larger") from None
        G._chain = chain
    for key, value in lines:
        try:
            ok, obs = _check_line(G, key, value, directory)
        except AtlasCertificateError as ex:
            raise AtlasCertificateError(f"{name}: certificate line '{key} {value}' failed: {ex}") from None
        if not ok:
            raise AtlasCertificateError(f"{name}: certificate line '{key} {value}' failed: observed {obs}")
    return True


@lru_cache(maxsize=None)
def _load(name, directory):
    if name not in ATLAS_NAMES and directory is None:
        raise KeyError(f"unknown atlas entry {name!r}; known: {', '.join(ATLAS_NAMES)}")
    G = atlas_load_unchecked(name, directory)
    check_certificate(G, read_certificate(name, directory), name, directory)
    return G


def atlas_load(name, directory=None):
    """Load an atlas group after its certificate passes."""
    return _load(name, directory)
