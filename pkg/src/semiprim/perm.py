"""Permutations, deterministic Schreier-Sims stabilizer chains and permutation groups.

Points are 0-based internally.  Every piece of external notation (cycle strings,
generator files, reports) is 1-based.  Products act left to right: ``p * q``
applies ``p`` first, so ``(p * q)[i] == q[p[i]]``.
"""

from __future__ import annotations

import re
from itertools import product as _product
from math import factorial

__all__ = [
    "Permutation",
    "PermGroup",
    "StabilizerChain",
    "ChainOrderExceeded",
    "CensusCapExceeded",
    "census_cap",
    "set_census_cap",
    "compose",
    "orbit",
    "build_chain",
    "membership",
    "elements",
    "pointwise_stabilizer",
    "parse_generators",
    "format_generators",
    "read_generator_file",
    "write_generator_file",
]


class ChainOrderExceeded(ValueError):
    """Raised when a chain under construction outgrows its order limit."""


class CensusCapExceeded(ValueError):
    """Raised when an enumeration would exceed the element census cap."""


_settings = {"census_cap": 10**7}


def census_cap():
    return _settings["census_cap"]


def set_census_cap(cap):
    """Change the default element census cap; returns the previous value."""
    old = _settings["census_cap"]
    _settings["census_cap"] = int(cap)
    return old


def check_cap(order, cap=None):
    cap = census_cap() if cap is None else cap
    if order > cap:
        raise CensusCapExceeded(f"group order {order} exceeds census cap {cap}")


def _mul(p, q):
    return tuple(map(q.__getitem__, p))


def _inv(p):
    r = [0] * len(p)
    for i, x in enumerate(p):
        r[x] = i
    return tuple(r)


def _is_id(p):
    return all(i == x for i, x in enumerate(p))


def _first_moved(p):
    for i, x in enumerate(p):
        if i != x:
            return i
    return None


class Permutation(tuple):
    """A bijection of ``{0, ..., n-1}`` stored as its image tuple.

    Printing and parsing use 1-based disjoint cycle notation.
    """

    __slots__ = ()

    def __new__(cls, images, check=True):
        t = tuple.__new__(cls, images)
        if check and sorted(t) != list(range(len(t))):
            raise ValueError(f"not a permutation of 0..{len(t) - 1}: {tuple(images)!r}")
        return t

    @classmethod
    def identity(cls, n):
        return tuple.__new__(cls, range(n))

    @classmethod
    def from_cycles(cls, text, degree=None):
        """Parse 1-based cycle notation such as ``(1 2 3)(4 5)`` or ``(1,2)``."""
        cycles = _parse_cycles(text)
        top = max((max(c) for c in cycles if c), default=0)
        n = top if degree is None else degree
        if top > n:
            raise ValueError(f"point {top} exceeds degree {n}")
        img = list(range(n))
        for c in cycles:
            if len(set(c)) != len(c):
                raise ValueError(f"repeated point in cycle {c}")
            if any(x < 1 for x in c):
                raise ValueError("points are 1-based")
            cyc = [x - 1 for x in c]
            # disjointness is not required; cycles are multiplied left to right
            step = list(range(n))
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                step[a] = b
            img = [step[x] for x in img]
        return cls(img)

    @property
    def degree(self):
        return len(self)

    @property
    def images(self):
        return tuple(self)

    def __mul__(self, other):
        if len(self) != len(other):
            raise ValueError(f"degree mismatch: {len(self)} vs {len(other)}")
        return tuple.__new__(Permutation, map(other.__getitem__, self))

    def __invert__(self):
        return tuple.__new__(Permutation, _inv(self))

    inverse = __invert__

    def __pow__(self, k):
        if k < 0:
            return (~self) ** (-k)
        result = Permutation.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, point):
        return self[point]

    def is_identity(self):
        return _is_id(self)

    def cycles(self):
        """Nontrivial cycles, 0-based, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(len(self)):
            if i in seen or self[i] == i:
                continue
            c = [i]
            seen.add(i)
            j = self[i]
            while j != i:
                c.append(j)
                seen.add(j)
                j = self[j]
            out.append(tuple(c))
        return out

    def cycle_type(self):
        return sorted((len(c) for c in self.cycles()), reverse=True)

    def order(self):
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def fixity(self):
        return sum(1 for i, x in enumerate(self) if i == x)

    def moved_count(self):
        return len(self) - self.fixity()

    def conjugate(self, g):
        """``g^-1 * self * g``."""
        return ~g * self * g

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({str(self)!r}, degree={len(self)})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_cycles(text):
    s = text.strip()
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(s):
        if s[pos:m.start()].strip():
            raise ValueError(f"unexpected text {s[pos:m.start()]!r} in {text!r}")
        body = m.group(1).replace(",", " ").split()
        try:
            cycles.append([int(x) for x in body])
        except ValueError:
            raise ValueError(f"bad cycle ({m.group(1)}) in {text!r}") from None
        pos = m.end()
    if s[pos:].strip() or (not cycles and s):
        raise ValueError(f"cannot parse permutation {text!r}")
    return cycles


def compose(p, q):
    """Apply ``p`` then ``q``."""
    return Permutation(p) * Permutation(q)


class _Level:
    __slots__ = ("point", "gens", "orbit", "trans", "tinv", "checked")

    def __init__(self, point):
        self.point = point
        self.gens = []
        self.orbit = [point]
        self.trans = {point: None}
        self.tinv = {point: None}
        self.checked = []


class StabilizerChain:
    """Base, strong generators and transversals of a permutation group.

    ``levels[i].trans[p]`` maps ``base[i]`` to ``p`` and lies in the pointwise
    stabilizer of ``base[:i]``.  Transversal entries are ``None`` for the
    identity to save memory.
    """

    def __init__(self, degree, generators, base_prefix=(), known_order=None, order_limit=None):
        self.degree = degree
        self._id = tuple(range(degree))
        self.levels = []
        self.strong_gens = []
        gens = [tuple(g) for g in generators if not _is_id(g)]
        for b in base_prefix:
            self.levels.append(_Level(b))
        for g in gens:
            self._add_strong(g, 0)
        self._complete(known_order, order_limit)

    # -- construction -------------------------------------------------
    def _add_strong(self, h, start):
        """Insert ``h`` into every level from ``start`` on whose prefix it fixes."""
        self.strong_gens.append(h)
        j = start
        while j < len(self.levels) and h[self.levels[j].point] == self.levels[j].point:
            j += 1
        if j == len(self.levels):
            self.levels.append(_Level(_first_moved(h)))
        for lev in self.levels[start:j + 1]:
            lev.gens.append(h)
            lev.checked.append(0)
            self._extend_orbit(lev)
        return j

    def _extend_orbit(self, lev):
        orbit, trans, tinv = lev.orbit, lev.trans, lev.tinv
        i = 0
        while i < len(orbit):
            p = orbit[i]
            u = trans[p]
            for g in lev.gens:
                q = g[p]
                if q not in trans:
                    v = g if u is None else _mul(u, g)
                    trans[q] = v
                    tinv[q] = _inv(v)
                    orbit.append(q)
            i += 1

    def order(self):
        r = 1
        for lev in self.levels:
            r *= len(lev.orbit)
        return r

    def _complete(self, known_order, order_limit):
        levels = self.levels
        i = len(levels) - 1
        while i >= 0:
            if known_order is not None and self.order() == known_order:
                break
            found = self._check_level(i)
            if found is None:
                i -= 1
                continue
            h, j = found
            self._add_strong(h, i + 1)
            if order_limit is not None and self.order() > order_limit:
                raise ChainOrderExceeded(f"group order exceeds {order_limit}")
            i = len(levels) - 1 if j >= len(levels) else max(j, i)
            # new level may have been appended at the end; restart from the deepest touched level
            i = min(i, len(levels) - 1)
        if known_order is not None and self.order() != known_order:
            raise ValueError(f"chain order {self.order()} differs from known order {known_order}")

    def _check_level(self, i):
        lev = self.levels[i]
        trans, tinv = lev.trans, lev.tinv
        for gi in range(len(lev.gens)):
            s = lev.gens[gi]
            while lev.checked[gi] < len(lev.orbit):
                p = lev.orbit[lev.checked[gi]]
                lev.checked[gi] += 1
                u = trans[p]
                q = s[p]
                sg = s if u is None else _mul(u, s)
                w = tinv[q]
                if w is not None:
                    sg = _mul(sg, w)
                h, j = self.sift(sg, i + 1)
                if not _is_id(h):
                    return h, j
        return None

    # -- queries ------------------------------------------------------
    @property
    def base(self):
        return [lev.point for lev in self.levels]

    def sift(self, g, start=0):
        for j in range(start, len(self.levels)):
            lev = self.levels[j]
            x = g[lev.point]
            if x not in lev.tinv:
                return g, j
            w = lev.tinv[x]
            if w is not None:
                g = _mul(g, w)
        return g, len(self.levels)

    def contains(self, g):
        h, _ = self.sift(tuple(g))
        return _is_id(h)

    def transversal(self, i):
        """Coset representatives of level ``i`` in orbit order, identity first."""
        lev = self.levels[i]
        return [self._id if lev.trans[p] is None else lev.trans[p] for p in lev.orbit]

    def level_generators(self, i):
        return list(self.levels[i].gens) if i < len(self.levels) else []

    def pruned(self):
        """Drop levels whose basic orbit is trivial."""
        self.levels = [lev for lev in self.levels if len(lev.orbit) > 1]
        return self

    def sub_chain(self, start):
        """The chain of the pointwise stabilizer of ``base[:start]``."""
        c = StabilizerChain.__new__(StabilizerChain)
        c.degree = self.degree
        c._id = self._id
        c.levels = self.levels[start:]
        c.strong_gens = list(self.levels[start].gens) if start < len(self.levels) else []
        return c


def build_chain(G, base_prefix=None, known_order=None, order_limit=None):
    """Deterministic Schreier-Sims with canonical base.

    The base is the sequence of smallest moved points of successive pointwise
    stabilizers, optionally preceded by ``base_prefix``.
    """
    if isinstance(G, PermGroup):
        gens, n = G.generators, G.degree
    else:
        gens = list(G)
        n = len(gens[0])
    prefix = list(base_prefix or [])
    rest = [p for p in range(n) if p not in set(prefix)]
    chain = StabilizerChain(n, gens, prefix + rest, known_order=known_order, order_limit=order_limit)
    keep = len(prefix)
    if base_prefix is None:
        return chain.pruned()
    head = chain.levels[:keep]
    tail = [lev for lev in chain.levels[keep:] if len(lev.orbit) > 1]
    chain.levels = head + tail
    return chain


class PermGroup:
    """A permutation group given by generators, with a lazily built chain."""

    def __init__(self, generators, degree=None, order=None, chain=None):
        gens = [Permutation(g) if not isinstance(g, Permutation) else g for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generator list")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise ValueError(f"generator degree {len(g)} differs from {degree}")
        self.degree = degree
        self.generators = [g for g in gens if not g.is_identity()]
        self._known_order = order
        self._chain = chain
        self._cache = {}

    @classmethod
    def trivial(cls, n):
        return cls([], degree=n, order=1)

    @property
    def chain(self):
        if self._chain is None:
            self._chain = build_chain(self, known_order=self._known_order)
        return self._chain

    def order(self):
        if self._known_order is None:
            self._known_order = self.chain.order()
        return self._known_order

    def __len__(self):
        return self.order()

    def is_trivial(self):
        return not self.generators

    def __contains__(self, p):
        if len(p) != self.degree:
            raise ValueError(f"degree mismatch: {len(p)} vs {self.degree}")
        return self.chain.contains(p)

    contains = __contains__

    def identity(self):
        return Permutation.identity(self.degree)

    def orbit(self, alpha):
        return orbit(self, alpha)[0]

    def orbits(self):
        seen = [False] * self.degree
        out = []
        for p in range(self.degree):
            if not seen[p]:
                o = orbit(self, p)[0]
                for x in o:
                    seen[x] = True
                out.append(o)
        return out

    def is_transitive(self):
        return len(orbit(self, 0)[0]) == self.degree if self.degree else True

    def moved_points(self):
        pts = set()
        for g in self.generators:
            pts.update(i for i, x in enumerate(g) if i != x)
        return sorted(pts)

    def is_abelian(self):
        gs = self.generators
        return all(a * b == b * a for i, a in enumerate(gs) for b in gs[i + 1:])

    def is_subgroup_of(self, other):
        return all(g in other for g in self.generators)

    def same_as(self, other):
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    def is_normal_in(self, G):
        return all(h.conjugate(g) in self for h in self.generators for g in G.generators)

    def elements(self, cap=None):
        return elements(self, cap)

    def census(self, cap=None):
        from .census import census

        return census(self, cap)

    def stabilizer(self, points):
        return pointwise_stabilizer(self, points)

    def restricted(self, points):
        """The action on a union of orbits, relabelled in the given point order."""
        index = {p: i for i, p in enumerate(points)}
        gens = [Permutation([index[g[p]] for p in points]) for g in self.generators]
        return PermGroup(gens, degree=len(points))

    def __repr__(self):
        return f"<PermGroup degree={self.degree} gens={len(self.generators)}>"


def orbit(G, alpha):
    """Orbit of ``alpha`` and its Schreier tree ``{point: (parent, generator index)}``."""
    if not 0 <= alpha < G.degree:
        raise ValueError(f"point {alpha + 1} out of range 1..{G.degree}")
    tree = {alpha: None}
    out = [alpha]
    i = 0
    gens = G.generators
    while i < len(out):
        p = out[i]
        for k, g in enumerate(gens):
            q = g[p]
            if q not in tree:
                tree[q] = (p, k)
                out.append(q)
        i += 1
    return out, tree


def orbit_word(tree, point):
    """Generator indices whose product maps the orbit root to ``point``."""
    word = []
    while tree[point] is not None:
        point, k = tree[point]
        word.append(k)
    return word[::-1]


def membership(G, p):
    return p in G


def elements(G, cap=None):
    """All elements in transversal-product order, identity first."""
    check_cap(G.order(), cap)
    chain = G.chain
    if not chain.levels:
        yield Permutation.identity(G.degree)
        return
    trans = [chain.transversal(i) for i in range(len(chain.levels))]
    # g = u_k * ... * u_1 with u_1 from the top level
    for combo in _product(*trans[::-1]):
        g = combo[0]
        for u in combo[1:]:
            g = _mul(g, u)
        yield tuple.__new__(Permutation, g)


def pointwise_stabilizer(G, points):
    """Subgroup fixing every listed point, read off a chain whose base starts with them."""
    points = list(dict.fromkeys(points))
    for p in points:
        if not 0 <= p < G.degree:
            raise ValueError(f"point {p + 1} out of range")
    if not points:
        return G
    chain = build_chain(G, base_prefix=points, known_order=G.order())
    k = len(points)
    sub = chain.sub_chain(k)
    sub.levels = [lev for lev in sub.levels if len(lev.orbit) > 1]
    gens = [Permutation(g) for g in sub.strong_gens]
    return PermGroup(gens, degree=G.degree, order=sub.order(), chain=sub)


def symmetric_order(n):
    return factorial(n)


# -- generator file format ---------------------------------------------

def parse_generators(text):
    """Parse ``degree n`` followed by one cycle-notation generator per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty generator file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "degree":
        raise ValueError(f"expected 'degree n', got {lines[0]!r}")
    n = int(head[1])
    gens = [Permutation.from_cycles(ln, n) for ln in lines[1:]]
    return n, gens


def format_generators(degree, gens):
    out = [f"degree {degree}"]
    out.extend(str(Permutation(g)) for g in gens)
    return "\n".join(out) + "\n"


def read_generator_file(path):
    with open(path) as fh:
        n, gens = parse_generators(fh.read())
    return PermGroup(gens, degree=n)


def write_generator_file(path, G):
    with open(path, "w") as fh:
        fh.write(format_generators(G.degree, G.generators))
