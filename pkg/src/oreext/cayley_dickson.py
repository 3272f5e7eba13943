"""Cayley-Dickson doublings of F_p.

Convention: ``(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`` and
``conj(a, b) = (conj(a), -b)``, starting from F_p with trivial conjugation.
Elements are coordinate vectors of length ``2^level``; the element index is the
mixed-radix encoding of that vector with the first coordinate most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import CyclicProductGroup
from .errors import BadParams
from .fields import is_prime
from .rings import FiniteRing

# largest level whose full multiplication table is materialised
TABLE_LEVEL = 2


def cd_mul(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    """Product of coordinate arrays of shape ``(..., 2^level)``, broadcasting over leading axes."""
    n = x.shape[-1]
    if n == 1:
        return (x * y) % p
    h = n // 2
    a, b = x[..., :h], x[..., h:]
    c, d = y[..., :h], y[..., h:]
    first = cd_mul(a, c, p) - cd_mul(cd_conj(d, p), b, p)
    second = cd_mul(d, a, p) + cd_mul(b, cd_conj(c, p), p)
    return np.concatenate([first % p, second % p], axis=-1)


def cd_conj(x: np.ndarray, p: int) -> np.ndarray:
    n = x.shape[-1]
    if n == 1:
        return x.copy()
    h = n // 2
    return np.concatenate([cd_conj(x[..., :h], p), (-x[..., h:]) % p], axis=-1)


@dataclass
class DistributivityResult:
    left: bool
    right: bool
    method: str
    witness: tuple = ()


class CayleyDickson:
    def __init__(self, p: int = 3, level: int = 3):
        if not (is_prime(p) and p % 2):
            raise BadParams(f"the base field must have odd prime order, got {p}", (p,))
        if not 0 <= level <= 4:
            raise BadParams(f"level must be between 0 and 4, got {level}", (level,))
        self.p, self.level = p, level
        self.dim = 2 ** level

    @cached_property
    def group(self) -> CyclicProductGroup:
        # never built for level 4, whose element list alone would not fit in memory
        return CyclicProductGroup([self.p] * self.dim)

    @property
    def order(self) -> int:
        return self.p ** self.dim

    def basis(self) -> np.ndarray:
        return np.eye(self.dim, dtype=np.int64)

    @cached_property
    def _weights(self) -> np.ndarray:
        return self.p ** np.arange(self.dim - 1, -1, -1, dtype=np.int64)

    def encode(self, vecs: np.ndarray) -> np.ndarray:
        return (np.asarray(vecs, dtype=np.int64) % self.p) @ self._weights

    def decode(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[..., None] // self._weights) % self.p

    @cached_property
    def all_vectors(self) -> np.ndarray:
        return self.decode(np.arange(self.order))

    def mul(self, x, y) -> np.ndarray:
        return cd_mul(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64), self.p)

    def conj(self, x) -> np.ndarray:
        return cd_conj(np.asarray(x, dtype=np.int64), self.p)

    @cached_property
    def structure_constants(self) -> np.ndarray:
        """``C[i, j]`` is the coordinate vector of ``e_i e_j``."""
        e = self.basis()
        return self.mul(e[:, None, :], e[None, :, :])

    @cached_property
    def mul_table(self) -> np.ndarray:
        if self.level > TABLE_LEVEL:
            raise BadParams(f"level {self.level} over F_{self.p} is too large for a table", (self.p, self.level))
        v = self.all_vectors
        rows = [self.encode(self.mul(v[i][None, :], v)) for i in range(self.order)]
        return np.stack(rows).astype(np.intp)

    @cached_property
    def conj_table(self) -> np.ndarray:
        return self.encode(self.conj(self.all_vectors)).astype(np.intp)

    def to_ring(self) -> FiniteRing:
        return FiniteRing(self.group, self.mul_table)

    def associator_witness(self) -> tuple[int, int, int] | None:
        """First basis triple ``(i, j, k)`` with ``(e_i e_j) e_k != e_i (e_j e_k)``."""
        e = self.basis()
        C = self.structure_constants
        lhs = self.mul(C[:, :, None, :], e[None, None, :, :])          # (e_i e_j) e_k
        rhs = self.mul(e[:, None, None, :], C[None, :, :, :])          # e_i (e_j e_k)
        bad = np.argwhere((lhs != rhs).any(axis=-1))
        return None if not bad.size else tuple(int(t) for t in bad[0][:3])

    def _biadditive(self, chunk: int = 128) -> DistributivityResult:
        """Exhaustive check that every left and right multiplication map is additive.

        Over F_p, a map is additive exactly when it is F_p-linear, so ``x -> zx``
        is additive iff ``zx = sum_k x_k (z e_k)`` for every ``x``.
        """
        p, N = self.p, self.order
        V = self.all_vectors
        Vf = V.astype(np.float64)
        e = self.basis()
        for side in ("left", "right"):
            for s in range(0, N, chunk):
                Z = V[s:s + chunk]
                if side == "left":
                    prods = self.mul(Z[:, None, :], V[None, :, :])
                    images = self.mul(Z[:, None, :], e[None, :, :])       # z e_k
                else:
                    prods = self.mul(V[None, :, :], Z[:, None, :])
                    images = self.mul(e[None, :, :], Z[:, None, :])       # e_k z
                lin = np.einsum("xk,zkc->zxc", Vf, images.astype(np.float64)).astype(np.int64) % p
                bad = np.argwhere((lin != prods).any(axis=-1))
                if bad.size:
                    z, x = bad[0]
                    w = (side, int(self.encode(Z[z])), int(x))
                    return DistributivityResult(side == "right", side == "left", "exhaustive", w)
        return DistributivityResult(True, True, "exhaustive")

    def _triple_witness(self, X: np.ndarray, Y: np.ndarray, Z: np.ndarray) -> tuple | None:
        """First row where ``x(y+z) = xy + xz`` or ``(y+z)x = yx + zx`` fails."""
        p, m = self.p, self.mul
        s = (Y + Z) % p
        left = (m(X, s) - m(X, Y) - m(X, Z)) % p
        right = (m(s, X) - m(Y, X) - m(Z, X)) % p
        for side, diff in (("left", left), ("right", right)):
            bad = np.nonzero(diff.any(axis=-1))[0]
            if bad.size:
                i = bad[0]
                return (side, int(self.encode(X[i])), int(self.encode(Y[i])), int(self.encode(Z[i])))
        return None

    def distributivity(self, samples: int = 20_000, seed: int = 0) -> DistributivityResult:
        """Both distributive laws.

        Up to level 2 every pair is scanned.  Above that the doubling formula
        is a signed sum of lower-level products and conjugates, so the level is
        bi-additive once the level below is bi-additive and its conjugation is
        additive.  Both premises are checked, together with every basis triple
        and a seeded sample of random triples at the level itself.
        """
        if self.level <= TABLE_LEVEL:
            return self._biadditive()
        lower = CayleyDickson(self.p, self.level - 1)
        base = lower.distributivity(samples, seed)
        if not (base.left and base.right):
            return DistributivityResult(False, False, "inductive", base.witness)
        conj = lower.encode(lower.conj(lower.all_vectors)).astype(np.intp)
        w = lower.group.additivity_witness(conj)
        if w is not None:
            return DistributivityResult(False, False, "inductive", ("conj", *w))
        e = self.basis()
        n = self.dim
        i, j, k = (a.ravel() for a in np.indices((n, n, n)))
        w = self._triple_witness(e[i], e[j], e[k])
        if w is None:
            rng = np.random.default_rng(seed)
            X, Y, Z = (rng.integers(0, self.p, size=(samples, n)) for _ in range(3))
            w = self._triple_witness(X, Y, Z)
        if w is not None:
            return DistributivityResult(w[0] != "left", w[0] != "right", "inductive", w)
        return DistributivityResult(True, True, "inductive")

    def conjugation_identities(self) -> tuple | None:
        """First ``(z, w)`` breaking ``conj(conj z) = z`` or ``conj(zw) = conj(w) conj(z)``."""
        V = self.all_vectors
        bad = np.nonzero((self.conj(self.conj(V)) != V).any(axis=-1))[0]
        if bad.size:
            return ("involution", int(bad[0]))
        ct = self.conj_table
        mt = self.mul_table
        lhs = ct[mt]
        rhs = mt[ct[None, :], ct[:, None]]
        bad = np.argwhere(lhs != rhs)
        return None if not bad.size else ("anti", int(bad[0][0]), int(bad[0][1]))
