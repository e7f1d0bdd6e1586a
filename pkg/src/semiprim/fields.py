"""Small finite fields via log/antilog tables.

Elements of GF(p^k) are encoded as integers whose base-p digits are the
polynomial coefficients (constant term first).  0 and 1 are the usual field
elements.
"""

from __future__ import annotations

from functools import lru_cache

__all__ = ["GF", "SUPPORTED_ORDERS", "field"]

SUPPORTED_ORDERS = (2, 3, 4, 5, 7, 8, 9)

# monic irreducible polynomials, low coefficient first, leading 1 omitted
_MODULI = {4: (2, [1, 1]), 8: (2, [1, 1, 0]), 9: (3, [1, 0])}


def _digits(x, p, k):
    out = []
    for _ in range(k):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds, p):
    x = 0
    for d in reversed(ds):
        x = x * p + d
    return x


class GF:
    def __init__(self, q):
        if q not in SUPPORTED_ORDERS:
            raise ValueError(f"unsupported field size {q}; supported: {SUPPORTED_ORDERS}")
        self.q = q
        if q in _MODULI:
            self.p, low = _MODULI[q]
            self.k = len(low)
        else:
            self.p, low, self.k = q, [], 1
        p, k = self.p, self.k
        self._add = [[_undigits([(a + b) % p for a, b in zip(_digits(x, p, k), _digits(y, p, k))], p)
                      for y in range(q)] for x in range(q)]
        raw = [[self._poly_mul(x, y, low) for y in range(q)] for x in range(q)]
        self.primitive = next(g for g in range(2, q) if self._cycle_len(raw, g) == q - 1) if q > 2 else 1
        self.exp = [1]
        for _ in range(q - 2):
            self.exp.append(raw[self.exp[-1]][self.primitive])
        self.log = {x: i for i, x in enumerate(self.exp)}
        self._neg = [next(y for y in range(q) if self._add[x][y] == 0) for x in range(q)]

    def _poly_mul(self, x, y, low):
        p, k = self.p, self.k
        a, b = _digits(x, p, k), _digits(y, p, k)
        prod = [0] * (2 * k)
        for i, u in enumerate(a):
            for j, v in enumerate(b):
                prod[i + j] = (prod[i + j] + u * v) % p
        # reduce using x^k = -(low)
        for deg in range(2 * k - 1, k - 1, -1):
            c = prod[deg]
            if c and low:
                prod[deg] = 0
                for i, m in enumerate(low):
                    prod[deg - k + i] = (prod[deg - k + i] - c * m) % p
        if not low:
            return (x * y) % p
        return _undigits(prod[:k], p)

    @staticmethod
    def _cycle_len(raw, g):
        x, n = g, 1
        while x != 1:
            x = raw[x][g]
            n += 1
            if n > len(raw):
                return -1
        return n

    def add(self, a, b):
        return self._add[a][b]

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def power(self, a, e):
        if a == 0:
            return 0 if e else 1
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def frobenius(self, a):
        return self.power(a, self.p)

    def basis(self):
        """An additive basis over the prime field."""
        return [self.p ** i for i in range(self.k)]

    def elements(self):
        return range(self.q)

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q):
    return GF(q)
