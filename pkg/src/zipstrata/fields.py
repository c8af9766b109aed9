"""Finite fields F_{p^e} with table arithmetic.

An element is an int whose base-p digits are its coordinates in the power
basis 1, α, α², ... of F_p[α] / (f).  The modulus f is the monic irreducible
polynomial of degree e with the smallest such integer encoding.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

MAX_ORDER = 4096


def _digits(a: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        a, r = divmod(a, p)
        out.append(r)
    return out


def _undigits(ds, p: int) -> int:
    a = 0
    for c in reversed(ds):
        a = a * p + c
    return a


def _polymod(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of ``num`` modulo monic ``den`` (coefficient lists, low first)."""
    num = num[:]
    k = len(den) - 1
    for top in range(len(num) - 1, k - 1, -1):
        c = num[top] % p
        if c:
            for j in range(k + 1):
                num[top - k + j] = (num[top - k + j] - c * den[j]) % p
    return [c % p for c in num[:k]] + [0] * max(0, k - len(num))


def is_irreducible(coeffs: list[int], p: int) -> bool:
    """``coeffs`` low-first, monic of degree len-1."""
    deg = len(coeffs) - 1
    for k in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=k):
            if not any(_polymod(coeffs, list(low) + [1], p)):
                return False
    return True


def lowest_irreducible(p: int, e: int) -> tuple[int, ...]:
    for code in range(p**e):
        coeffs = _digits(code, p, e) + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise ValueError("no irreducible polynomial found")


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p**0.5) + 1))


class FqField:
    def __init__(self, p: int, e: int = 1):
        if not _is_prime(p) or e < 1:
            raise ValueError(f"bad field parameters p={p}, e={e}")
        if p**e > MAX_ORDER:
            raise ValueError(f"field order {p**e} exceeds {MAX_ORDER}")
        self.p, self.e, self.q = p, e, p**e
        self.modulus = lowest_irreducible(p, e)
        q = self.q
        digits = [_digits(a, p, e) for a in range(q)]
        self.add_table = [[_undigits([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
                           for b in range(q)] for a in range(q)]
        self.neg_table = [_undigits([(-x) % p for x in digits[a]], p) for a in range(q)]
        mod = list(self.modulus)

        def slow_mul(a, b):
            da, db = digits[a], digits[b]
            prod = [0] * (2 * e - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] += x * y
            return _undigits(_polymod(prod, mod, p), p)

        gen = None
        for g in range(1, q):
            seen, a = set(), 1
            for _ in range(q - 1):
                seen.add(a)
                a = slow_mul(a, g)
            if len(seen) == q - 1:
                gen = g
                break
        self.primitive = gen
        self.exp = [0] * (2 * q)
        self.log = [0] * q
        a = 1
        for k in range(q - 1):
            self.exp[k] = a
            self.log[a] = k
            a = slow_mul(a, gen)
        for k in range(q - 1, 2 * q):
            self.exp[k] = self.exp[k - (q - 1)]
        self.mul_table = [[0 if a == 0 or b == 0 else self.exp[self.log[a] + self.log[b]]
                           for b in range(q)] for a in range(q)]
        self.inv_table = [0] + [self.exp[(q - 1 - self.log[a]) % (q - 1)] for a in range(1, q)]
        self.alpha = p if e > 1 else 0

    def __repr__(self):
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, FqField) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul_table[a][self.inv(b)]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k > 0 else 1
        return self.exp[(self.log[a] * k) % (self.q - 1)]

    def frob(self, a: int, q: int) -> int:
        """x ↦ x^q."""
        return self.pow(a, q)

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime field."""
        return n % self.p

    def digits(self, a: int) -> list[int]:
        return _digits(a, self.p, self.e)

    def from_digits(self, ds) -> int:
        return _undigits([c % self.p for c in ds], self.p)

    def contains_order(self, q: int) -> bool:
        """Whether F_q embeds in this field."""
        k = 0
        while self.p**k < q:
            k += 1
        return self.p**k == q and self.e % k == 0


@lru_cache(maxsize=None)
def gf(p: int, e: int = 1) -> FqField:
    return FqField(p, e)


def gf_order(q: int) -> FqField:
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return gf(p, e)
    raise ValueError(f"{q} is not a prime power")


def extension(F: FqField, m: int) -> FqField:
    return gf(F.p, F.e * m)


@lru_cache(maxsize=None)
def embedding(small: FqField, big: FqField) -> tuple[int, ...]:
    """Table of a field embedding small ↪ big, sending α to the smallest root."""
    if small.p != big.p or big.e % small.e:
        raise ValueError(f"{small} does not embed in {big}")
    coeffs = small.modulus
    root = None
    for r in range(big.q):
        acc = 0
        for c in reversed(coeffs):
            acc = big.add(big.mul(acc, r), c)
        if acc == 0:
            root = r
            break
    table = []
    for a in range(small.q):
        acc = 0
        for c in reversed(small.digits(a)):
            acc = big.add(big.mul(acc, root), c)
        table.append(acc)
    return tuple(table)
