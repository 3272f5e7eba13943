"""Ore group extensions ``B[x; sigma, delta]`` with ``A[x]`` acting on ``B[x]``.

The action is

    (sum_i a_i x^i)(sum_j b_j x^j) = sum_{i,j,k} (a_i pi^i_k(b_j)) x^(k+j)

where ``pi^i_k`` is the sum of all compositions of ``k`` copies of ``sigma``
and ``i-k`` copies of ``delta``.  Besides the action this module checks the
identities those maps satisfy and the associativity criteria for triples.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import partial
from typing import Mapping, Sequence

import numpy as np

from ._parallel import run_chunks, split
from .core import (
    FiniteAbelianGroup,
    GroupWithOperators,
    OperatorSet,
    Subgroup,
    validate_structure,
)
from .errors import (
    HypothesisNotMet,
    MismatchedOperators,
    MissingCompanionMaps,
    NotAdditive,
    SortMismatch,
)

SORTS = ("A", "B", "C")
DEFAULT_SEED = 20240917
DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class Poly:
    """Sparse polynomial: sorted ``(degree, coefficient index)`` pairs, zeros dropped.

    ``sort`` says where the coefficients live: ``"A"`` operators, ``"B"`` or
    ``"C"`` group elements.  Equality is equality of the coefficient maps.
    """

    coeffs: tuple[tuple[int, int], ...] = ()
    sort: str = "B"

    @classmethod
    def from_map(cls, mapping: Mapping[int, int], zero: int, sort: str = "B") -> "Poly":
        if sort not in SORTS:
            raise SortMismatch(f"unknown sort {sort!r}")
        if any(d < 0 for d in mapping):
            raise ValueError("negative degree")
        return cls(tuple(sorted((int(d), int(c)) for d, c in mapping.items() if c != zero)), sort)

    @classmethod
    def from_dense(cls, seq: Sequence[int], zero: int, sort: str = "B") -> "Poly":
        return cls.from_map(dict(enumerate(seq)), zero, sort)

    @classmethod
    def monomial(cls, c: int, d: int, zero: int, sort: str = "B") -> "Poly":
        return cls.from_map({d: c}, zero, sort)

    @property
    def degree(self) -> int:
        """Largest stored degree; -1 for the zero polynomial."""
        return self.coeffs[-1][0] if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def coeff(self, d: int, zero: int) -> int:
        return self.as_dict().get(d, zero)

    def dense(self, zero: int, length: int | None = None) -> list[int]:
        n = self.degree + 1 if length is None else length
        out = [zero] * n
        for d, c in self.coeffs:
            if d < n:
                out[d] = c
        return out


@dataclass
class EndoPair:
    """``(sigma, delta)`` on a group, with optional companion maps on the operators."""

    sigma: np.ndarray
    delta: np.ndarray
    sigma_A: np.ndarray | None = None
    delta_A: np.ndarray | None = None

    def __post_init__(self):
        self.sigma = np.asarray(self.sigma, dtype=np.intp)
        self.delta = np.asarray(self.delta, dtype=np.intp)
        if self.sigma_A is not None:
            self.sigma_A = np.asarray(self.sigma_A, dtype=np.intp)
        if self.delta_A is not None:
            self.delta_A = np.asarray(self.delta_A, dtype=np.intp)

    @classmethod
    def checked(cls, group: FiniteAbelianGroup, sigma, delta, sigma_A=None, delta_A=None) -> "EndoPair":
        """Build a pair after checking that sigma and delta are additive."""
        pair = cls(sigma, delta, sigma_A, delta_A)
        for name, f in (("sigma", pair.sigma), ("delta", pair.delta)):
            if f.shape != (group.order,):
                raise NotAdditive(f"{name} is not a total map on the group")
            w = group.additivity_witness(f)
            if w is not None:
                raise NotAdditive(f"{name} is not additive", (name, group.label(w[0]), group.label(w[1])))
        return pair

    @classmethod
    def standard(cls, group: FiniteAbelianGroup) -> "EndoPair":
        """``sigma = id``, ``delta = 0``: the plain polynomial group ``B[x]``."""
        return cls(group.identity_map(), group.zero_map())

    @property
    def has_companions(self) -> bool:
        return self.sigma_A is not None and self.delta_A is not None


class PiTable:
    """Lazily filled triangle of ``pi^i_j`` via the one-shift recurrence.

    ``pi^{i+1}_j = pi^i_{j-1} o sigma + pi^i_j o delta`` with ``pi^0_0 = id``.
    """

    def __init__(self, group: FiniteAbelianGroup, pair: EndoPair):
        self.group = group
        self.pair = pair
        self._zero = group.zero_map()
        self.rows: list[list[np.ndarray]] = [[group.identity_map()]]

    def row(self, i: int) -> list[np.ndarray]:
        g, s, d = self.group, self.pair.sigma, self.pair.delta
        while len(self.rows) <= i:
            prev = self.rows[-1]
            k = len(prev) - 1
            new = []
            for j in range(k + 2):
                via_sigma = prev[j - 1][s] if j >= 1 else None
                via_delta = prev[j][d] if j <= k else None
                if via_sigma is None:
                    new.append(via_delta)
                elif via_delta is None:
                    new.append(via_sigma)
                else:
                    new.append(g.add_arrays(via_sigma, via_delta))
            self.rows.append(new)
        return self.rows[i]

    def __call__(self, i: int, j: int) -> np.ndarray:
        if j < 0 or i < 0 or j > i:
            return self._zero
        return self.row(i)[j]


def pi_bruteforce(group: FiniteAbelianGroup, pair: EndoPair, i: int, j: int) -> np.ndarray:
    """Sum over all ``binom(i, j)`` words with ``j`` sigmas and ``i-j`` deltas."""
    if j < 0 or j > i:
        return group.zero_map()
    total = group.zero_map()
    for pos in itertools.combinations(range(i), j):
        word = [pair.sigma if t in pos else pair.delta for t in range(i)]
        m = group.identity_map()
        for letter in reversed(word):     # word[0] is applied last
            m = letter[m]
        total = group.add_arrays(total, m)
    return total


@dataclass
class PiOperator:
    i: int
    j: int
    table: np.ndarray
    builder: str


def pi_map(group: FiniteAbelianGroup, pair: EndoPair, i: int, j: int,
           builder: str = "dp", table: PiTable | None = None) -> PiOperator:
    if builder == "dp":
        t = (table or PiTable(group, pair))(i, j)
    elif builder == "bruteforce":
        t = pi_bruteforce(group, pair, i, j)
    else:
        raise ValueError(f"unknown builder {builder!r}")
    return PiOperator(i, j, t.copy(), builder)


def ore_act(alpha: Poly, beta: Poly, G: GroupWithOperators, pair: EndoPair,
            pis: PiTable | None = None) -> Poly:
    """The action of ``alpha`` in ``A[x]`` on ``beta`` in ``B[x; sigma, delta]``."""
    if alpha.sort != "A" or beta.sort == "A":
        raise SortMismatch(f"cannot act with a {alpha.sort}-polynomial on a {beta.sort}-polynomial")
    pis = pis or PiTable(G.group, pair)
    add, zero = G.group.add, G.group.zero
    out: dict[int, int] = {}
    for i, a in alpha.coeffs:
        row = G._act[a]
        for j, b in beta.coeffs:
            for k in range(i + 1):
                v = row[int(pis(i, k)[b])]
                out[k + j] = add(out.get(k + j, zero), v)
    return Poly.from_map(out, zero, beta.sort)


@dataclass
class IdentityResult:
    name: str
    holds: bool
    checked: int
    witness: tuple = ()

    def to_dict(self):
        return {"name": self.name, "holds": self.holds, "checked": self.checked,
                "witness": list(self.witness)}


@dataclass
class IdentityReport:
    results: list[IdentityResult]

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.results)

    def __getitem__(self, name: str) -> IdentityResult:
        return next(r for r in self.results if r.name == name)

    def to_dict(self):
        return {"ok": self.ok, "results": [r.to_dict() for r in self.results]}


def _first_diff(x: np.ndarray, y: np.ndarray) -> int | None:
    bad = np.nonzero(x != y)[0]
    return int(bad[0]) if bad.size else None


def check_vandermonde(group: FiniteAbelianGroup, pair: EndoPair, max_index: int,
                      pis: PiTable | None = None) -> IdentityReport:
    """Vandermonde and one-shift identities for all indices up to ``max_index``.

    Left-hand sides use the recurrence tables, right-hand sides the brute-force
    word sums, so a bug on either path shows up as a witness.
    """
    if max_index < 1:
        raise ValueError("max_index must be at least 1")
    pis = pis or PiTable(group, pair)
    brute: dict[tuple[int, int], np.ndarray] = {}

    def bf(i, j):
        if (i, j) not in brute:
            brute[(i, j)] = pi_bruteforce(group, pair, i, j)
        return brute[(i, j)]

    rng = range(max_index + 1)
    vdm = IdentityResult("vandermonde", True, 0)
    for j, k, n in itertools.product(rng, rng, rng):
        lhs = group.sum_maps(pis(k, i)[pis(n, j - i)] for i in range(j + 1))
        b = _first_diff(lhs, bf(k + n, j))
        vdm.checked += group.order
        if b is not None:
            vdm.holds, vdm.witness = False, (j, k, n, group.label(b))
            break
    shift = IdentityResult("one_shift", True, 0)
    for j, k in itertools.product(rng, rng):
        lhs = group.add_arrays(pis(k, j - 1)[pair.sigma], pis(k, j)[pair.delta])
        b = _first_diff(lhs, bf(k + 1, j))
        shift.checked += group.order
        if b is not None:
            shift.holds, shift.witness = False, (j, k, group.label(b))
            break
    return IdentityReport([vdm, shift])


@dataclass
class TwistReport:
    sigma_twisted: bool
    twisted_derivation: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.sigma_twisted and self.twisted_derivation

    def to_dict(self):
        return {"sigma_twisted": self.sigma_twisted, "twisted_derivation": self.twisted_derivation,
                "witnesses": {k: list(v) for k, v in self.witnesses.items()}}


def twist_predicates(G: GroupWithOperators, pair: EndoPair) -> TwistReport:
    """``sigma(ab) = sigma_A(a) sigma(b)`` and ``delta(ab) = sigma_A(a) delta(b) + delta_A(a) b``."""
    if not pair.has_companions:
        raise MissingCompanionMaps("twist predicates need sigma_A and delta_A")
    act, add = G.action, G.group.add_arrays
    wit = {}
    lhs = pair.sigma[act]
    rhs = act[pair.sigma_A][:, pair.sigma]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        a, b = bad[0]
        wit["sigma_twisted"] = (G.op_label(int(a)), G.label(int(b)))
    lhs = pair.delta[act]
    rhs = add(act[pair.sigma_A][:, pair.delta], act[pair.delta_A])
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        a, b = bad[0]
        wit["twisted_derivation"] = (G.op_label(int(a)), G.label(int(b)))
    return TwistReport("sigma_twisted" not in wit, "twisted_derivation" not in wit, wit)


@dataclass(frozen=True)
class FormalPiWord:
    """``pi^m_k(a)`` on an operator set without addition: a multiset of words.

    Each word over ``{s, d}`` (``s`` = sigma_A, ``d`` = delta_A, leftmost
    letter applied last) sends ``a`` to one operator; the formal sum acts on
    ``c`` as the group sum of those operators applied to ``c``.
    """

    m: int
    k: int
    base: int
    words: tuple[str, ...]

    @classmethod
    def build(cls, m: int, k: int, base: int) -> "FormalPiWord":
        if k < 0 or k > m:
            return cls(m, k, base, ())
        words = tuple("".join("s" if t in pos else "d" for t in range(m))
                      for pos in itertools.combinations(range(m), k))
        return cls(m, k, base, words)

    def images(self, pair: EndoPair) -> list[int]:
        if not pair.has_companions:
            raise MissingCompanionMaps("formal pi-words need sigma_A and delta_A")
        out = []
        for w in self.words:
            a = self.base
            for letter in reversed(w):
                a = int(pair.sigma_A[a] if letter == "s" else pair.delta_A[a])
            out.append(a)
        return out

    def act_array(self, G: GroupWithOperators, pair: EndoPair, cs: np.ndarray) -> np.ndarray:
        return G.group.sum_maps(G.action[a][cs] for a in self.images(pair))


def check_leibniz_mixed(G: GroupWithOperators, pair: EndoPair, max_index: int,
                        pis: PiTable | None = None) -> IdentityReport:
    """Leibniz and mixed identities for every ``a``, ``b`` and indices up to ``max_index``."""
    tw = twist_predicates(G, pair)
    if not tw.ok:
        failing = [k for k in ("sigma_twisted", "twisted_derivation") if not getattr(tw, k)]
        raise HypothesisNotMet(f"twist hypotheses fail: {', '.join(failing)}",
                               tuple(itertools.chain.from_iterable(tw.witnesses.values())))
    pis = pis or PiTable(G.group, pair)
    group, act = G.group, G.action
    rng = range(max_index + 1)
    formal: dict[tuple[int, int, int], FormalPiWord] = {}

    def fp(m, k, a):
        if (m, k, a) not in formal:
            formal[(m, k, a)] = FormalPiWord.build(m, k, a)
        return formal[(m, k, a)]

    leib = IdentityResult("leibniz", True, 0)
    mixed = IdentityResult("mixed", True, 0)
    for a in range(len(G.ops)):
        if leib.holds:
            for m, i in itertools.product(rng, rng):
                lhs = pis(m, i)[act[a]]
                rhs = group.sum_maps(fp(m, k, a).act_array(G, pair, pis(k, i)) for k in range(m + 1))
                b = _first_diff(lhs, rhs)
                leib.checked += group.order
                if b is not None:
                    leib.holds, leib.witness = False, (m, i, G.op_label(a), G.label(b))
                    break
        if mixed.holds:
            for j, m, n in itertools.product(rng, rng, rng):
                lhs = group.sum_maps(pis(m, i)[act[a][pis(n, j - i)]] for i in range(min(m, j) + 1))
                rhs = group.sum_maps(fp(m, i, a).act_array(G, pair, pis(i + n, j)) for i in range(m + 1))
                b = _first_diff(lhs, rhs)
                mixed.checked += group.order
                if b is not None:
                    mixed.holds, mixed.witness = False, (j, m, n, G.op_label(a), G.label(b))
                    break
    return IdentityReport([leib, mixed])


def annihilator(G: GroupWithOperators) -> Subgroup:
    """``{c : a c = 0 for every operator a}``."""
    members = np.nonzero((G.action == G.group.zero).all(axis=0))[0].tolist()
    sub = Subgroup.of(members)
    g = G.group
    if not (g.zero in sub and all(g.add(x, y) in sub for x in sub for y in sub)):
        raise AssertionError("annihilator is not a subgroup")
    return sub


@dataclass
class AssocTriple:
    """``(A, B, C)``: ``A`` acts on ``B``; both ``A`` and ``B`` act on ``C``.

    ``C_B`` uses the elements of ``B`` as its operator set (zero operator
    ``0_B``).  ``pair_C`` stores ``sigma_B``/``delta_B`` as its companion maps,
    so the twist conditions on ``C`` are the twist predicates of ``(C_B, pair_C)``.
    """

    B: GroupWithOperators
    C_A: GroupWithOperators
    C_B: GroupWithOperators
    pair_B: EndoPair
    pair_C: EndoPair
    name: str = ""

    def __post_init__(self):
        if self.C_A.ops != self.B.ops:
            raise MismatchedOperators("A acts on B and C through different operator sets")
        if self.C_A.group is not self.C_B.group:
            raise MismatchedOperators("C_A and C_B must share one group")
        if self.C_B.ops.labels != self.B.group.labels or self.C_B.ops.zero != self.B.group.zero:
            raise MismatchedOperators("B's action on C must be indexed by B's elements")


def make_triple(B: GroupWithOperators, C: FiniteAbelianGroup, act_A: Mapping, act_B: Mapping,
                sigma_B, delta_B, sigma_C, delta_C, name: str = "") -> AssocTriple:
    """Validate both actions on ``C`` and both endo pairs, then bundle them."""
    C_A = validate_structure(C, act_A, zero_op=B.op_label(B.ops.zero))
    C_B = validate_structure(C, act_B, zero_op=B.label(B.group.zero), check_group=False)
    # keep operator order aligned with B's element order
    order = [C_B.ops.labels.index(lab) for lab in B.group.labels]
    C_B = GroupWithOperators(C, OperatorSet(B.group.labels, B.group.zero), C_B.action[order])
    order = [C_A.ops.labels.index(lab) for lab in B.ops.labels]
    C_A = GroupWithOperators(C, B.ops, C_A.action[order])
    pair_B = EndoPair.checked(B.group, sigma_B, delta_B)
    pair_C = EndoPair.checked(C, sigma_C, delta_C, pair_B.sigma, pair_B.delta)
    return AssocTriple(B, C_A, C_B, pair_B, pair_C, name)


def _act_batch(G: GroupWithOperators, pis: PiTable, alpha: Sequence[int], batch: np.ndarray,
               cache: dict) -> np.ndarray:
    """Dense action of one operator polynomial on a batch of dense polynomials (rows)."""
    n, length = batch.shape
    add = G.group.add_arrays
    out = np.full((n, len(alpha) - 1 + length), G.group.zero, dtype=np.intp)
    zero_op = G.ops.zero
    for i, a in enumerate(alpha):
        if a == zero_op:
            continue
        for k in range(i + 1):
            key = (a, i, k)
            t = cache.get(key)
            if t is None:
                t = cache[key] = G.action[a][pis(i, k)]
            for j in range(length):
                out[:, k + j] = add(out[:, k + j], t[batch[:, j]])
    return out


def _act_dense(G: GroupWithOperators, pis: PiTable, alpha: Sequence[int], beta: Sequence[int]) -> list[int]:
    out = [G.group.zero] * (len(alpha) + len(beta) - 1)
    add = G.group.add
    for i, a in enumerate(alpha):
        if a == G.ops.zero:
            continue
        row = G._act[a]
        for k in range(i + 1):
            p = pis(i, k)
            for j, b in enumerate(beta):
                out[k + j] = add(out[k + j], row[int(p[b])])
    return out


@dataclass
class _Phase2Ctx:
    t: AssocTriple
    gammas: np.ndarray


def _phase2_chunk(ctx: _Phase2Ctx, pairs: Sequence[tuple[tuple, tuple]]):
    """First ``(alpha, beta, gamma)`` in ``pairs`` x gammas with ``(ab)c != a(bc)``."""
    t = ctx.t
    pis_B = PiTable(t.B.group, t.pair_B)
    pis_C = PiTable(t.C_A.group, t.pair_C)
    cache_A, cache_B = {}, {}
    bg_memo: dict[tuple, np.ndarray] = {}
    zc = t.C_A.group.zero
    for alpha, beta in pairs:
        bg = bg_memo.get(beta)
        if bg is None:
            bg = bg_memo[beta] = _act_batch(t.C_B, pis_C, beta, ctx.gammas, cache_B)
        right = _act_batch(t.C_A, pis_C, alpha, bg, cache_A)
        ab = _act_dense(t.B, pis_B, alpha, beta)
        left = _act_batch(t.C_B, pis_C, ab, ctx.gammas, cache_B)
        width = max(left.shape[1], right.shape[1])
        left = np.pad(left, ((0, 0), (0, width - left.shape[1])), constant_values=zc)
        right = np.pad(right, ((0, 0), (0, width - right.shape[1])), constant_values=zc)
        bad = np.nonzero((left != right).any(axis=1))[0]
        if bad.size:
            return alpha, beta, tuple(int(x) for x in ctx.gammas[bad[0]])
    return None


@dataclass
class AssocReport:
    associative: bool
    sigma_twisted: bool
    twisted_derivation: bool
    phase1_witnesses: dict
    phase2_ok: bool
    phase2_mode: str
    phase2_tuples: int
    phase2_witness: tuple | None
    annihilator_trivial: bool
    converse_witness: tuple | None = None

    @property
    def phase1_ok(self) -> bool:
        return self.associative and self.sigma_twisted and self.twisted_derivation

    def to_dict(self):
        return {
            "phase1": {"associative": self.associative, "sigma_twisted": self.sigma_twisted,
                       "twisted_derivation": self.twisted_derivation,
                       "witnesses": {k: list(v) for k, v in self.phase1_witnesses.items()}},
            "phase2": {"ok": self.phase2_ok, "mode": self.phase2_mode, "tuples": self.phase2_tuples,
                       "witness": self.phase2_witness},
            "annihilator_trivial": self.annihilator_trivial,
            "converse_witness": self.converse_witness,
        }


def check_triple_associativity(t: AssocTriple, max_degree: int, budget: int = DEFAULT_BUDGET,
                               seed: int = DEFAULT_SEED, jobs: int = 1) -> AssocReport:
    """Check the hypotheses on ``(A, B, C)`` and associativity of the polynomial triple.

    Phase 2 enumerates every ``(alpha, beta, gamma)`` of degree at most
    ``max_degree`` when there are at most ``budget`` of them, and otherwise
    draws ``budget`` of them uniformly with ``random.Random(seed)``.
    """
    A_n, B_n, C_n = len(t.B.ops), t.B.group.order, t.C_A.group.order
    # phase 1
    wit = {}
    lhs = t.C_B.action[t.B.action]                  # (ab)c, indexed [a, b, c]
    rhs = t.C_A.action[:, t.C_B.action]             # a(bc)
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        a, b, c = (int(x) for x in bad[0])
        wit["associative"] = (t.B.op_label(a), t.B.label(b), t.C_A.label(c))
    tw = twist_predicates(t.C_B, t.pair_C)
    wit.update(tw.witnesses)

    # phase 2
    L = max_degree + 1
    total = (A_n * B_n * C_n) ** L
    alphas = list(itertools.product(range(A_n), repeat=L))
    betas = list(itertools.product(range(B_n), repeat=L))
    if total <= budget:
        mode = "exhaustive"
        gammas = np.array(list(itertools.product(range(C_n), repeat=L)), dtype=np.intp)
        pairs = [(a, b) for a in alphas for b in betas]
        ctx_chunks = [(gammas, chunk) for chunk in split(pairs, 256)]
    else:
        mode = "sampled"
        rng = random.Random(seed)
        batch = min(C_n ** L, 256)
        n_pairs = max(1, budget // batch)
        pairs = [(tuple(rng.randrange(A_n) for _ in range(L)), tuple(rng.randrange(B_n) for _ in range(L)))
                 for _ in range(n_pairs)]
        gammas = np.array([[rng.randrange(C_n) for _ in range(L)] for _ in range(batch)], dtype=np.intp)
        ctx_chunks = [(gammas, chunk) for chunk in split(pairs, 256)]
        total = n_pairs * batch
    results = run_chunks(partial(_run_phase2, t), ctx_chunks, jobs)
    found = next((r for r in results if r is not None), None)

    ann_trivial = len(annihilator(t.C_A)) == 1
    report = AssocReport(
        associative="associative" not in wit,
        sigma_twisted=tw.sigma_twisted,
        twisted_derivation=tw.twisted_derivation,
        phase1_witnesses=wit,
        phase2_ok=found is None,
        phase2_mode=mode,
        phase2_tuples=total,
        phase2_witness=None if found is None else _label_triple(t, found),
        annihilator_trivial=ann_trivial,
    )
    if report.phase1_ok and not report.phase2_ok:
        raise AssertionError("hypotheses hold but the polynomial triple is not associative")
    if not report.phase1_ok and ann_trivial:
        w = converse_counterexample(t)
        if w is None:
            raise AssertionError("trivial annihilator, failing hypotheses, but no degree-1 counterexample")
        report.converse_witness = _label_triple(t, w)
        report.phase2_ok = False
        if report.phase2_witness is None:
            report.phase2_witness = report.converse_witness
    return report


def _run_phase2(t: AssocTriple, chunk):
    gammas, pairs = chunk
    return _phase2_chunk(_Phase2Ctx(t, gammas), pairs)


def _label_triple(t: AssocTriple, w):
    alpha, beta, gamma = w
    return ([t.B.op_label(a) for a in alpha], [t.B.label(b) for b in beta], [t.C_A.label(c) for c in gamma])


def converse_counterexample(t: AssocTriple) -> tuple | None:
    """A failing ``(alpha, beta, gamma)`` of degree at most 1, if one exists.

    Tries ``alpha = a x``, ``beta = b``, ``gamma = c`` first; then the full
    degree-1 enumeration.
    """
    A_n, B_n, C_n = len(t.B.ops), t.B.group.order, t.C_A.group.order
    zA, zB, zC = t.B.ops.zero, t.B.group.zero, t.C_A.group.zero
    ctx_g = np.array([[c, zC] for c in range(C_n)], dtype=np.intp)
    targeted = [((zA, a), (b, zB)) for a in range(A_n) for b in range(B_n)]
    w = _phase2_chunk(_Phase2Ctx(t, ctx_g), targeted)
    if w is not None:
        return w
    gammas = np.array(list(itertools.product(range(C_n), repeat=2)), dtype=np.intp)
    pairs = [(a, b) for a in itertools.product(range(A_n), repeat=2)
             for b in itertools.product(range(B_n), repeat=2)]
    return _phase2_chunk(_Phase2Ctx(t, gammas), pairs)
