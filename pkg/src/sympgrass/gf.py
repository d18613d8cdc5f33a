"""Arithmetic in GF(q) for prime powers q <= 16.

Elements are integers in [0, q).  For prime q the encoding is the residue
itself; for q = p^e the base-p digits of the encoding are the coefficients
of the element as a polynomial in x, little-endian (digit i = coefficient
of x^i).  Extension fields are built modulo a fixed irreducible polynomial
so that encodings are reproducible across runs and file formats:

    q = 4  : x^2 + x + 1
    q = 8  : x^3 + x + 1
    q = 9  : x^2 + x + 2
    q = 16 : x^4 + x + 1

Scalar arithmetic is table-driven (full q x q tables).  Array helpers
(`arr_add` etc.) operate elementwise on numpy arrays of encodings; for
prime fields they use modular arithmetic, for extension fields table
lookups.  Both agree with the scalar tables entrywise (tested).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# Irreducible polynomial coefficients (little-endian, degree e last), per q.
_MODULI = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 1, 1),
    16: (1, 1, 0, 0, 1),
}

_PRIMES = (2, 3, 5, 7, 11, 13)


def _factor_prime_power(q: int) -> tuple[int, int]:
    for p in _PRIMES:
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m == 1:
                return p, e
            break
    raise ValueError(f"q={q} is not a prime power <= 16")


def _poly_mul_mod(a: int, b: int, p: int, e: int, modulus: tuple[int, ...]) -> int:
    """Multiply two elements in digit encoding, reducing mod the fixed polynomial."""
    da = []
    m = a
    for _ in range(e):
        da.append(m % p)
        m //= p
    db = []
    m = b
    for _ in range(e):
        db.append(m % p)
        m //= p
    prod = [0] * (2 * e - 1)
    for i, ca in enumerate(da):
        if ca:
            for j, cb in enumerate(db):
                prod[i + j] = (prod[i + j] + ca * cb) % p
    # reduce: x^e = -(modulus[0] + ... + modulus[e-1] x^{e-1})
    for d in range(2 * e - 2, e - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j in range(e):
                prod[d - e + j] = (prod[d - e + j] - c * modulus[j]) % p
    out = 0
    for d in range(e - 1, -1, -1):
        out = out * p + prod[d]
    return out


class Field:
    """GF(q), q a prime power <= 16.  Immutable after construction."""

    def __init__(self, q: int):
        p, e = _factor_prime_power(q)
        if q > 16:
            raise ValueError(f"q={q} exceeds the supported range (q <= 16)")
        self.q = q
        self.p = p
        self.e = e
        self.modulus: tuple[int, ...] | None = _MODULI[q] if e > 1 else None

        add = np.zeros((q, q), dtype=np.uint8)
        mul = np.zeros((q, q), dtype=np.uint8)
        if e == 1:
            for a in range(q):
                for b in range(q):
                    add[a, b] = (a + b) % q
                    mul[a, b] = (a * b) % q
        else:
            for a in range(q):
                for b in range(q):
                    s = 0
                    x, y = a, b
                    pw = 1
                    while x or y:
                        s += ((x % p + y % p) % p) * pw
                        x //= p
                        y //= p
                        pw *= p
                    add[a, b] = s
                    mul[a, b] = _poly_mul_mod(a, b, p, e, self.modulus)
        self.add_table = add
        self.mul_table = mul

        neg = np.zeros(q, dtype=np.uint8)
        for a in range(q):
            for b in range(q):
                if add[a, b] == 0:
                    neg[a] = b
                    break
        self.neg_table = neg

        inv = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            for b in range(1, q):
                if mul[a, b] == 1:
                    inv[a] = b
                    break
            else:
                raise AssertionError(f"no inverse for {a} in GF({q}); bad modulus")
        self.inv_table = inv

        for t in (self.add_table, self.mul_table, self.neg_table, self.inv_table):
            t.setflags(write=False)

    # -- scalar ops ----------------------------------------------------

    def _check(self, *vals: int) -> None:
        for v in vals:
            if not 0 <= v < self.q:
                raise ValueError(f"{v} is not an element encoding of GF({self.q})")

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a: int) -> int:
        self._check(a)
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError(f"0 has no multiplicative inverse in GF({self.q})")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, m: int) -> int:
        self._check(a)
        if m < 0:
            a, m = self.inv(a), -m
        out = 1
        while m:
            if m & 1:
                out = int(self.mul_table[out, a])
            a = int(self.mul_table[a, a])
            m >>= 1
        return out

    def elements(self) -> range:
        return range(self.q)

    # -- elementwise array ops (uint8 encodings in, uint8 out) ----------

    def arr_add(self, a, b) -> np.ndarray:
        if self.e == 1:
            return ((np.asarray(a, dtype=np.uint8) + np.asarray(b, dtype=np.uint8)) % self.q).astype(np.uint8)
        return self.add_table[np.asarray(a, dtype=np.intp), np.asarray(b, dtype=np.intp)]

    def arr_neg(self, a) -> np.ndarray:
        return self.neg_table[np.asarray(a, dtype=np.intp)]

    def arr_sub(self, a, b) -> np.ndarray:
        return self.arr_add(a, self.arr_neg(b))

    def arr_mul(self, a, b) -> np.ndarray:
        if self.e == 1:
            prod = np.asarray(a, dtype=np.uint8) * np.asarray(b, dtype=np.uint8)
            return (prod % self.q).astype(np.uint8)
        return self.mul_table[np.asarray(a, dtype=np.intp), np.asarray(b, dtype=np.intp)]

    def arr_inv(self, a) -> np.ndarray:
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError(f"0 has no multiplicative inverse in GF({self.q})")
        return self.inv_table[a.astype(np.intp)]

    # -- misc ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("Field", self.q))

    def __repr__(self) -> str:
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def GF(q: int) -> Field:
    """Shared Field instance for a given order (tables built once)."""
    return Field(q)
