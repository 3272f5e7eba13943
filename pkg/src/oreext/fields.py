"""Small finite fields GF(p^k) as explicit tables."""

from __future__ import annotations

import itertools
from functools import cached_property

import numpy as np

from .core import CyclicProductGroup
from .errors import BadParams
from .rings import FiniteRing


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def odd_primes(k: int) -> list[int]:
    out, n = [], 3
    while len(out) < k:
        if is_prime(n):
            out.append(n)
        n += 2
    return out


def _polymod(a: list[int], f: list[int], p: int) -> list[int]:
    """``a mod f`` over F_p; coefficient lists are lowest degree first, f monic."""
    a = a[:]
    k = len(f) - 1
    for d in range(len(a) - 1, k - 1, -1):
        c = a[d] % p
        if c:
            for i in range(k + 1):
                a[d - k + i] = (a[d - k + i] - c * f[i]) % p
    return [x % p for x in a[:k]] + [0] * (k - len(a[:k]))


def _has_root_free_factorisation(f: list[int], p: int) -> bool:
    """True when ``f`` has a monic factor of degree between 1 and deg(f)/2."""
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            if not any(_polymod(f, g, p)):
                return True
    return False


def irreducible_polynomial(p: int, k: int) -> list[int]:
    """The lexicographically first monic irreducible of degree ``k`` (lowest coefficient first)."""
    for low in itertools.product(range(p), repeat=k):
        f = list(reversed(low)) + [1]
        if k == 1 or (f[0] and not _has_root_free_factorisation(f, p)):
            return f
    raise AssertionError("no irreducible polynomial found")


class GaloisField:
    """GF(p^k) with elements as coefficient tuples; position ``i`` holds the coefficient of ``t^i``."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p) or k < 1:
            raise BadParams(f"GF({p}^{k}) needs a prime p and k >= 1", (p, k))
        self.p, self.k = p, k
        self.modulus = irreducible_polynomial(p, k)
        self.group = CyclicProductGroup([p] * k)

    @property
    def order(self) -> int:
        return self.p ** self.k

    def digits(self, i: int) -> list[int]:
        lab = self.group.label(i)
        return [lab] if self.k == 1 else list(lab)

    def element(self, coeffs) -> int:
        coeffs = [c % self.p for c in coeffs]
        return self.group.index(coeffs[0] if self.k == 1 else tuple(coeffs))

    def _mul(self, a: list[int], b: list[int]) -> list[int]:
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] += x * y
        return _polymod(prod, self.modulus, self.p)

    @cached_property
    def mul_table(self) -> np.ndarray:
        n = self.order
        digs = [self.digits(i) for i in range(n)]
        return np.array([[self.element(self._mul(digs[i], digs[j])) for j in range(n)]
                         for i in range(n)], dtype=np.intp)

    def ring(self) -> FiniteRing:
        return FiniteRing(self.group, self.mul_table)

    @property
    def one(self) -> int:
        return self.element([1] + [0] * (self.k - 1))

    def power_map(self, e: int) -> np.ndarray:
        out = np.full(self.order, self.one, dtype=np.intp)
        for _ in range(e):
            out = self.mul_table[out, np.arange(self.order)]
        return out

    def frobenius(self, times: int = 1) -> np.ndarray:
        """``x -> x^(p^times)``."""
        return self.power_map(self.p ** times)

    def scalar_map(self, c: int) -> np.ndarray:
        return self.mul_table[c].copy()
