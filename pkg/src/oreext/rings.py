"""Finite rings and left modules with no presumed axioms.

Associativity, both distributive laws and the unitality notions are computed
by exhaustive table scans.  Witnesses are the lexicographically first
counterexample in element order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .core import (
    FiniteAbelianGroup,
    GroupWithOperators,
    extend_span,
    make_group,
    validate_structure,
    weakly_s_unital_witness,
)
from .errors import DegreeTooHigh, NotEndomorphism, NotLeftDistributive, NotRightIdeal, SchemaError
from .ore import EndoPair, PiTable, Poly, ore_act

# cells of the largest cube scanned by a property report
SCAN_LIMIT = 40_000_000


class FiniteRing:
    """An additive group with an arbitrary multiplication table."""

    def __init__(self, group: FiniteAbelianGroup, mul):
        mul = np.asarray(mul, dtype=np.intp)
        n = group.order
        if mul.shape != (n, n) or (mul.size and (mul.min() < 0 or mul.max() >= n)):
            raise SchemaError("multiplication table must be total over the ring's elements")
        self.group = group
        self.mul = mul
        self._mul = mul.tolist()

    @property
    def order(self) -> int:
        return self.group.order

    def times(self, r: int, s: int) -> int:
        return self._mul[r][s]

    def label(self, i: int) -> Hashable:
        return self.group.label(i)

    def __repr__(self):
        return f"<FiniteRing |R|={self.order}>"


def make_ring(elements: Sequence[Hashable], add, neg, zero, mul) -> FiniteRing:
    """Build a ring from label-level tables; the additive group is validated."""
    group = make_group(elements, add, neg, zero)
    idx = {lab: i for i, lab in enumerate(group.labels)}
    try:
        table = [[idx[x] for x in row] for row in mul]
    except KeyError as e:
        raise SchemaError(f"multiplication entry {e.args[0]!r} is not an element") from None
    return FiniteRing(group, table)


class LeftModule:
    """An additive group ``M`` with an arbitrary map ``R x M -> M``."""

    def __init__(self, ring: FiniteRing, group: FiniteAbelianGroup, act):
        act = np.asarray(act, dtype=np.intp)
        if act.shape != (ring.order, group.order) or (act.size and (act.min() < 0 or act.max() >= group.order)):
            raise SchemaError("module action table must be total over ring x module")
        self.ring = ring
        self.group = group
        self.act = act

    def __repr__(self):
        return f"<LeftModule |R|={self.ring.order} |M|={self.group.order}>"


def as_left_module(R: FiniteRing) -> LeftModule:
    return LeftModule(R, R.group, R.mul)


@dataclass(frozen=True)
class Check:
    """Tri-state outcome: ``"true"``, ``"false"`` (with witness) or ``"skipped"``."""

    status: str
    witness: tuple = ()
    note: str = ""

    @classmethod
    def of(cls, witness, note: str = "") -> "Check":
        return cls("true", (), note) if witness is None else cls("false", tuple(witness), note)

    @property
    def value(self) -> bool | None:
        return {"true": True, "false": False}.get(self.status)

    def to_dict(self):
        d = {"status": self.status}
        if self.witness:
            d["witness"] = list(self.witness)
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class PropertyReport:
    associative: Check
    left_distributive: Check
    right_distributive: Check
    left_unital: Check
    s_unital: Check
    weakly_s_unital: Check
    left_identities: list = field(default_factory=list)
    s_unital_certificate: list = field(default_factory=list)
    boolean: Check | None = None
    right_unital: Check | None = None
    right_identities: list | None = None

    def checks(self) -> dict[str, Check]:
        names = ["associative", "left_distributive", "right_distributive", "left_unital",
                 "s_unital", "weakly_s_unital", "boolean", "right_unital"]
        return {n: getattr(self, n) for n in names if getattr(self, n) is not None}

    def to_dict(self):
        d = {n: c.to_dict() for n, c in self.checks().items()}
        d["left_identities"] = list(self.left_identities)
        d["s_unital_certificate"] = [list(p) for p in self.s_unital_certificate]
        if self.right_identities is not None:
            d["right_identities"] = list(self.right_identities)
        return d


def _first(mask: np.ndarray):
    bad = np.argwhere(mask)
    return None if not bad.size else tuple(int(x) for x in bad[0])


def _too_big(*dims: int) -> bool:
    return int(np.prod(dims, dtype=np.int64)) > SCAN_LIMIT


def _iterated_span(M: LeftModule, m: int) -> set:
    """``sum_{n>=1} Z(R^n m)``, computed from the raw action table."""
    act = M.act.tolist()
    seen, frontier = set(), [m]
    while frontier:
        nxt = []
        for x in frontier:
            for row in act:
                y = row[x]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return extend_span({M.group.zero}, seen, M.group.add)


def module_property_report(M: LeftModule) -> PropertyReport:
    """Every module predicate of ``(R, M)``, each with its first counterexample."""
    R, g = M.ring, M.group
    T, nR, nM = M.act, R.order, g.order
    rl, ml = R.label, g.label

    if _too_big(nR, nR, nM):
        assoc = Check("skipped", note="table too large")
    else:
        lhs = T[R.mul][:, :, np.arange(nM)]                           # (rs)m
        rhs = T[np.arange(nR)[:, None, None], T[None, :, :]]          # r(sm)
        w = _first(lhs != rhs)
        assoc = Check.of(None if w is None else (rl(w[0]), rl(w[1]), ml(w[2])))

    if _too_big(nR, nM, nM):
        left = Check("skipped", note="table too large")
    else:
        lhs = T[:, g.add_table]                                       # r(m+n)
        rhs = g.add_arrays(T[:, :, None], T[:, None, :])              # rm + rn
        w = _first(lhs != rhs)
        left = Check.of(None if w is None else (rl(w[0]), ml(w[1]), ml(w[2])))

    if _too_big(nR, nR, nM):
        right = Check("skipped", note="table too large")
    else:
        lhs = T[R.group.add_table]                                    # (r+s)m
        rhs = g.add_arrays(T[:, None, :], T[None, :, :])              # rm + sm
        w = _first(lhs != rhs)
        right = Check.of(None if w is None else (rl(w[0]), rl(w[1]), ml(w[2])))

    ident = T == np.arange(nM)[None, :]
    identities = [rl(e) for e in range(nR) if ident[e].all()]
    if identities:
        lu = Check("true")
    else:
        # one refuting element per candidate
        lu = Check("false", tuple((rl(e), ml(int(np.argmin(ident[e])))) for e in range(nR)))

    # s-unital: m in Rm; prefer r = m when the module is the ring itself
    cert, s_bad = [], None
    same = M.group is R.group
    for m in range(nM):
        hits = np.nonzero(T[:, m] == m)[0]
        if not hits.size:
            s_bad = m
            break
        r = m if same and T[m, m] == m else int(hits[0])
        cert.append((ml(m), rl(r)))
    s_unital = Check.of(None if s_bad is None else (ml(s_bad),))
    if s_bad is not None:
        cert = []

    w_bad = next((m for m in range(nM) if m not in _iterated_span(M, m)), None)
    weak = Check.of(None if w_bad is None else (ml(w_bad),))

    if left.value:
        # the action reading of the same data must agree
        G = module_as_operators(M)
        if (weakly_s_unital_witness(G) is None) != (w_bad is None):
            raise AssertionError("module and action readings of weak s-unitality disagree")
    return PropertyReport(assoc, left, right, lu, s_unital, weak, identities, cert)


def ring_property_report(R: FiniteRing) -> PropertyReport:
    """The module report of ``R`` over itself, plus Boolean and right-unital checks."""
    rep = module_property_report(as_left_module(R))
    diag = R.mul[np.arange(R.order), np.arange(R.order)]
    bad = np.nonzero(diag != np.arange(R.order))[0]
    rep.boolean = Check.of(None if not bad.size else (R.label(int(bad[0])),))
    ident = R.mul == np.arange(R.order)[:, None]                      # m e == m
    rids = [R.label(e) for e in range(R.order) if ident[:, e].all()]
    rep.right_identities = rids
    if rids:
        rep.right_unital = Check("true")
    else:
        rep.right_unital = Check("false", tuple((R.label(e), R.label(int(np.argmin(ident[:, e]))))
                                                for e in range(R.order)))
    return rep


def module_as_operators(M: LeftModule, zero_op: Hashable | None = None) -> GroupWithOperators:
    """Read a left distributive module as a group with the ring as operators.

    Operators keep the ring's element order; if no ring element acts as zero an
    extra zero operator is appended.
    """
    try:
        return validate_structure(M.group, {M.ring.label(r): M.act[r] for r in range(M.ring.order)},
                                  zero_op=zero_op, check_group=False)
    except NotEndomorphism as e:
        raise NotLeftDistributive("module is not left distributive", e.witness) from None


def _companion(G: GroupWithOperators, f) -> np.ndarray:
    f = np.asarray(f, dtype=np.intp)
    if len(G.ops) > f.shape[0]:
        f = np.concatenate([f, [G.ops.zero]])
    return f


def ore_ring_module_act(R: FiniteRing, M: LeftModule, sigma_R, delta_R, sigma_M, delta_M,
                        alpha: Poly, beta: Poly) -> Poly:
    """Act with ``alpha`` in ``R[x; sigma_R, delta_R]`` on ``beta`` in ``M[x; sigma_M, delta_M]``.

    With ``M`` the ring itself this is the Ore ring product.
    """
    module_as_operators(as_left_module(R))
    G = module_as_operators(M)
    pair = EndoPair.checked(M.group, sigma_M, delta_M, _companion(G, sigma_R), _companion(G, delta_R))
    return ore_act(alpha, beta, G, pair)


@dataclass
class DerivationReport:
    sigma_R_endomorphism: Check
    delta_R_derivation: Check
    sigma_M_twisted: Check
    delta_M_derivation: Check

    @property
    def ok(self) -> bool:
        return all(c.value for c in self.checks().values())

    def checks(self) -> dict[str, Check]:
        return dict(self.__dict__)

    def to_dict(self):
        return {k: c.to_dict() for k, c in self.checks().items()}


def _additive_check(g: FiniteAbelianGroup, f: np.ndarray, name: str) -> tuple | None:
    w = g.additivity_witness(f)
    return None if w is None else (name, g.label(w[0]), g.label(w[1]))


def derivation_endo_predicates(R: FiniteRing, M: LeftModule, sigma_R, delta_R, sigma_M, delta_M) -> DerivationReport:
    """Twisting and derivation conditions on the ring and the module, with witnesses.

    * ``sigma_R(rs) = sigma_R(r) sigma_R(s)``, additive
    * ``delta_R(rs) = sigma_R(r) delta_R(s) + delta_R(r) s``, additive
    * ``sigma_M(rm) = sigma_R(r) sigma_M(m)``, additive
    * ``delta_M(rm) = sigma_R(r) delta_M(m) + delta_R(r) m``, additive
    """
    sR, dR = np.asarray(sigma_R, dtype=np.intp), np.asarray(delta_R, dtype=np.intp)
    sM, dM = np.asarray(sigma_M, dtype=np.intp), np.asarray(delta_M, dtype=np.intp)
    gR, gM = R.group, M.group
    rl, ml = R.label, gM.label

    def judge(f, g_add, lhs, rhs, lab2):
        w = _additive_check(g_add, f, "additive")
        if w is not None:
            return Check("false", w)
        p = _first(lhs != rhs)
        return Check.of(None if p is None else (rl(p[0]), lab2(p[1])))

    mul, T = R.mul, M.act
    c1 = judge(sR, gR, sR[mul], mul[sR][:, sR], rl)
    c2 = judge(dR, gR, dR[mul], gR.add_arrays(mul[sR][:, dR], mul[dR]), rl)
    c3 = judge(sM, gM, sM[T], T[sR][:, sM], ml)
    c4 = judge(dM, gM, dM[T], gM.add_arrays(T[sR][:, dM], T[dR]), ml)
    return DerivationReport(c1, c2, c3, c4)


def adjoint_derivation(R: FiniteRing, v: int) -> np.ndarray:
    """``r -> v r - r v``."""
    g = R.group
    return np.array([g.sub(R.times(v, r), R.times(r, v)) for r in range(R.order)], dtype=np.intp)


@dataclass
class RightIdealReport:
    D: int
    size: int
    checked: int
    members: frozenset = field(default_factory=frozenset, repr=False)

    def to_dict(self):
        return {"D": self.D, "size": self.size, "checked": self.checked}


def _ore_ring(R: FiniteRing, sigma, delta) -> tuple[GroupWithOperators, EndoPair]:
    G = module_as_operators(as_left_module(R), zero_op=R.label(R.group.zero))
    pair = EndoPair.checked(R.group, sigma, delta, sigma, delta)
    return G, pair


def right_ideal_slice_check(R: FiniteRing, sigma, delta, generators: Sequence[Poly], D: int,
                            _ctx=None) -> RightIdealReport:
    """Check that the additive span of ``generators`` is a right ideal of ``R[x; sigma, delta]``.

    ``p (r x^k)`` is the degree-``k`` shift of ``p r``, so shifts ``k <= D + 1``
    decide every ``k``: a nonzero product shifted past ``D`` already leaves the
    span.  No distributive law is assumed; each span element is tested.
    """
    G, pair = _ctx or _ore_ring(R, sigma, delta)
    zero = R.group.zero
    for p in generators:
        if p.degree > D:
            raise DegreeTooHigh(f"generator of degree {p.degree} exceeds {D}", (p.degree, D))
    vecs = [tuple(p.dense(zero, D + 1)) for p in generators]
    add = lambda u, v: tuple(R.group.add(x, y) for x, y in zip(u, v))
    span = extend_span({tuple([zero] * (D + 1))}, vecs, add)
    pis = PiTable(R.group, pair)
    checked = 0
    for v in sorted(span):
        p = Poly.from_dense(v, zero, "A")
        for r in range(R.order):
            base = ore_act(p, Poly.monomial(r, 0, zero), G, pair, pis)
            for k in range(D + 2):
                checked += 1
                if base.is_zero():
                    break
                shifted = [zero] * k + base.dense(zero)
                if len(shifted) > D + 1 or tuple(shifted + [zero] * (D + 1 - len(shifted))) not in span:
                    prod = [[d + k, R.label(c)] for d, c in base.coeffs]
                    raise NotRightIdeal("product leaves the span",
                                        (tuple(R.label(x) for x in v), R.label(r), k, tuple(map(tuple, prod))))
    return RightIdealReport(D, len(span), checked, frozenset(span))


@dataclass
class IdealChainReport:
    links: list[RightIdealReport]
    separators: list[Poly]
    strict: bool

    def to_dict(self, R: FiniteRing | None = None):
        lab = R.label if R is not None else (lambda x: x)
        return {"sizes": [l.size for l in self.links], "strict": self.strict,
                "separators": [[[d, lab(c)] for d, c in p.coeffs] for p in self.separators]}


def right_ideal_chain(R: FiniteRing, sigma, delta, coefficients: Sequence[int], depth: int) -> IdealChainReport:
    """``I_n = sum_{i<=n} J x^i`` for ``n = 0..depth`` with ``J`` spanned by ``coefficients``.

    Each ``I_n`` is checked to be a right ideal; ``j x^n`` for the first
    nonzero generator ``j`` separates ``I_n`` from ``I_{n-1}``.
    """
    ctx = _ore_ring(R, sigma, delta)
    zero = R.group.zero
    coefficients = [c for c in coefficients if c != zero]
    links, seps, strict = [], [], True
    for n in range(depth + 1):
        gens = [Poly.monomial(c, i, zero) for i in range(n + 1) for c in coefficients]
        links.append(right_ideal_slice_check(R, sigma, delta, gens, depth, ctx))
        if coefficients:
            sep = Poly.monomial(coefficients[0], n, zero)
            seps.append(sep)
            v = tuple(sep.dense(zero, depth + 1))
            strict &= v in links[-1].members and not (n and v in links[-2].members)
            if n:
                strict &= links[-2].members <= links[-1].members
        else:
            strict = False
    return IdealChainReport(links, seps, strict)
