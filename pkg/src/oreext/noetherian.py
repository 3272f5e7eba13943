"""Degree-bounded slices, leading coefficients and chain witnesses for Ore group extensions.

Stable subgroups of ``B[x; sigma, delta]`` (with ``A[x]`` as operators) are
infinite, so they are handled through their degree-``<= D`` slices: subgroups of
``B^(D+1)`` whose members are coefficient tuples ``(b_0, ..., b_D)``.  Monomial
operators ``a x^k`` never lower degree, which makes truncation exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import (
    GroupHom,
    GroupWithOperators,
    Subgroup,
    a_stable_witness,
    bracket,
    coset_projection,
    extend_span,
    generated,
    is_subgroup,
    quotient,
    stability_witness,
    weakly_s_unital_witness,
)
from ._parallel import run_chunks, split
from .errors import DegreeTooHigh, HypothesisNotMet
from .ore import EndoPair, PiTable, Poly, ore_act

Vector = tuple[int, ...]


def beta_projection(p: Poly, n: int) -> Poly:
    """Keep only the degree-``n`` term of ``p``."""
    return Poly(tuple((d, c) for d, c in p.coeffs if d == n), p.sort)


def poly_vector(p: Poly, D: int, zero: int) -> Vector:
    if p.degree > D:
        raise DegreeTooHigh(f"degree {p.degree} exceeds the slice bound {D}", (p.degree, D))
    return tuple(p.dense(zero, D + 1))


def vector_poly(v: Sequence[int], zero: int) -> Poly:
    return Poly.from_dense(v, zero, "B")


def _vec_add(G: GroupWithOperators):
    add = G.group.add

    def f(u, v):
        return tuple(add(x, y) for x, y in zip(u, v))
    return f


def stable_span(gens: Iterable, ops: Sequence[Callable], add, zero) -> set:
    """Least subgroup containing ``gens`` and closed under the additive maps ``ops``.

    Only images of newly adjoined generators are queued: once every generator's
    image lies in the span, additivity puts the image of the whole span there too.
    """
    h = {zero}
    queue = list(gens)
    while queue:
        g = queue.pop()
        if g in h:
            continue
        h = extend_span(h, [g], add)
        queue.extend(op(g) for op in ops)
    return h


def monomial_tables(G: GroupWithOperators, pair: EndoPair, D: int) -> list[tuple[np.ndarray, ...]]:
    """Distinct tuples ``(pi^k_0, ..., pi^k_D)`` over all ``k >= 0``.

    The tuple for ``k+1`` is a function of the tuple for ``k``, so the sequence
    is eventually periodic; iteration stops at the first repeat.
    """
    group, s, d = G.group, pair.sigma, pair.delta
    zero_map = group.zero_map()
    cur = tuple([group.identity_map()] + [zero_map] * D)
    seen, out = set(), []
    while True:
        key = b"".join(t.tobytes() for t in cur)
        if key in seen:
            return out
        seen.add(key)
        out.append(cur)
        cur = tuple(
            group.add_arrays(cur[j - 1][s] if j else zero_map, cur[j][d])
            for j in range(D + 1)
        )


def monomial_operators(G: GroupWithOperators, pair: EndoPair, D: int) -> list[Callable[[Vector], Vector]]:
    """Truncated actions of every ``a x^k`` on ``B^(D+1)``, deduplicated by table."""
    add, zero = G.group.add, G.group.zero
    ops, seen = [], set()
    for tables in monomial_tables(G, pair, D):
        for a in range(len(G.ops)):
            if a == G.ops.zero:
                continue
            comp = [G.action[a][t] for t in tables]
            key = b"".join(c.tobytes() for c in comp)
            if key in seen:
                continue
            seen.add(key)
            ops.append(_truncated_op([c.tolist() for c in comp], add, zero, D))
    return ops


def _truncated_op(comp, add, zero, D):
    def op(v: Vector) -> Vector:
        out = [zero] * (D + 1)
        for j, b in enumerate(v):
            if b == zero:
                continue
            for m in range(D + 1 - j):
                out[m + j] = add(out[m + j], comp[m][b])
        return tuple(out)
    return op


@dataclass
class SlicedStableSubgroup:
    """Degree-``<= D`` slice of a stable subgroup of ``B[x; sigma, delta]``.

    Either ``members`` (explicit coefficient tuples) or ``box`` (one subgroup
    of ``B`` per degree, the slice being their product) is given.
    """

    D: int
    generators: list[Poly]
    zero: int
    members_: frozenset | None = None
    box: tuple[frozenset, ...] | None = None

    @cached_property
    def members(self) -> frozenset:
        if self.members_ is not None:
            return self.members_
        import itertools
        return frozenset(itertools.product(*(sorted(b) for b in self.box)))

    def __len__(self) -> int:
        if self.members_ is None and self.box is not None:
            return int(np.prod([len(b) for b in self.box]))
        return len(self.members)

    def __contains__(self, item) -> bool:
        v = poly_vector(item, self.D, self.zero) if isinstance(item, Poly) else tuple(item)
        if self.members_ is None and self.box is not None:
            return all(x in b for x, b in zip(v, self.box))
        return v in self.members

    def __le__(self, other: "SlicedStableSubgroup") -> bool:
        if self.box is not None and other.box is not None:
            return all(a <= b for a, b in zip(self.box, other.box))
        return all(v in other for v in self.members)


def slice_closure(G: GroupWithOperators, pair: EndoPair, generators: Sequence[Poly], D: int) -> SlicedStableSubgroup:
    """Degree-``<= D`` slice of the ``A[x]``-stable subgroup generated by ``generators``."""
    zero = G.group.zero
    vecs = [poly_vector(p, D, zero) for p in generators]
    ops = monomial_operators(G, pair, D)
    members = stable_span(vecs, ops, _vec_add(G), tuple([zero] * (D + 1)))
    return SlicedStableSubgroup(D, list(generators), zero, members_=frozenset(members))


def slice_stability_witness(G: GroupWithOperators, pair: EndoPair, S: SlicedStableSubgroup,
                            basis: Iterable[Vector] | None = None) -> Vector | None:
    """A member (from ``basis`` if given) whose image under some ``a x^k`` leaves ``S``."""
    ops = monomial_operators(G, pair, S.D)
    for v in (basis if basis is not None else sorted(S.members)):
        for op in ops:
            if op(v) not in S:
                return v
    return None


@dataclass
class LeadingTermReport:
    b: object
    i: int
    j: int
    k: int
    part_i: bool
    lhs: list
    rhs: list
    hypothesis_ii: bool
    part_ii: bool | None

    @property
    def ok(self) -> bool:
        return self.part_i and self.part_ii is not False

    def to_dict(self):
        return {"b": self.b, "i": self.i, "j": self.j, "k": self.k, "part_i": self.part_i,
                "lhs": self.lhs, "rhs": self.rhs, "hypothesis_ii": self.hypothesis_ii,
                "part_ii": self.part_ii}


def check_horrible_lemma(G: GroupWithOperators, pair: EndoPair, b: int, i: int, j: int, k: int,
                         pis: PiTable | None = None) -> LeadingTermReport:
    """Both parts of the leading-term lemma for ``(A x^i)(b x^j)``.

    (i)  the degree-``(i+j)`` coefficients of ``A^k((A x^i)(b x^j))`` are
         exactly ``A^(k+1) sigma^i(b)``;
    (ii) if ``sigma^i(b)`` lies in its bracket subgroup, ``sigma^i(b) x^(i+j)``
         is the top term of an element of ``<(A x^i)(b x^j)>``.
    """
    group = G.group
    zero, top = group.zero, i + j
    pis = pis or PiTable(group, pair)
    beta = Poly.monomial(b, j, zero)
    P0 = {poly_vector(ore_act(Poly.monomial(a, i, G.ops.zero, "A"), beta, G, pair, pis), top, zero)
          for a in range(len(G.ops))}
    level = P0
    for _ in range(k):
        level = {tuple(row[x] for x in v) for row in G._act for v in level}
    lhs = {v[top] for v in level}

    s = int(pis(i, i)[b])                   # sigma^i(b)
    rhs = {s}
    for _ in range(k + 1):
        rhs = G.act_set(rhs)
    part_i = lhs == rhs

    hyp = s in bracket(G, [s])
    part_ii = None
    if hyp:
        consts = [(lambda v, row=row: tuple(row[x] for x in v)) for row in G._act]
        span = stable_span(P0, consts, _vec_add(G), tuple([zero] * (top + 1)))
        part_ii = any(v[top] == s for v in span)
    lab = G.label
    return LeadingTermReport(lab(b), i, j, k, part_i, sorted(lab(x) for x in lhs),
                          sorted(lab(x) for x in rhs), hyp, part_ii)


@dataclass
class LeadingTermSummary:
    checked: int
    part_i_ok: bool
    part_ii_ok: bool
    part_ii_checked: int
    failures: list[LeadingTermReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.part_i_ok and self.part_ii_ok

    def to_dict(self):
        return {"checked": self.checked, "part_i_ok": self.part_i_ok, "part_ii_ok": self.part_ii_ok,
                "part_ii_checked": self.part_ii_checked,
                "failures": [f.to_dict() for f in self.failures[:5]]}


def _leading_term_chunk(args) -> list[LeadingTermReport]:
    G, pair, bs, max_index = args
    pis = PiTable(G.group, pair)
    rng = range(max_index + 1)
    return [check_horrible_lemma(G, pair, b, i, j, k, pis)
            for b in bs for i in rng for j in rng for k in rng]


def check_horrible_all(G: GroupWithOperators, pair: EndoPair, max_index: int, jobs: int = 1) -> LeadingTermSummary:
    """Run the lemma for every ``b`` and every ``i, j, k <= max_index``."""
    chunks = [(G, pair, bs, max_index) for bs in split(list(G.group.elements()), 8)]
    summary = LeadingTermSummary(0, True, True, 0)
    for reports in run_chunks(_leading_term_chunk, chunks, jobs):
        for r in reports:
            summary.checked += 1
            summary.part_ii_checked += r.part_ii is not None
            summary.part_i_ok &= r.part_i
            summary.part_ii_ok &= r.part_ii is not False
            if not r.ok:
                summary.failures.append(r)
    return summary


@dataclass(frozen=True)
class NotApplicable:
    """The action is weakly s-unital, so no strictly ascending chain exists."""

    reason: str = "action is weakly s-unital"


@dataclass
class ChainWitness:
    quotient: GroupWithOperators
    c: object
    E: Subgroup
    links: list[SlicedStableSubgroup]
    strict: list[Poly]

    def to_dict(self):
        lab = self.quotient.label
        return {"c": self.c, "E": [lab(e) for e in self.E],
                "links": [len(l) for l in self.links],
                "separators": [[[d, lab(x)] for d, x in p.coeffs] for p in self.strict]}


def ascending_chain_witness(G: GroupWithOperators, L: int = 8) -> ChainWitness | NotApplicable:
    """A strictly ascending chain of ``L`` stable subgroups of ``B[x]``, or NotApplicable.

    For ``c`` outside ``[c]``, ``E = <c + [c]>`` inside ``B/[c]`` is killed by
    every operator, so ``E + E x + ... + E x^n`` is stable for each ``n`` and
    ``(c + [c]) x^n`` separates consecutive links.  Among the valid ``c`` the
    one giving the smallest ``E`` is used (ties: element order).
    """
    if weakly_s_unital_witness(G) is None:
        return NotApplicable()
    group = G.group
    best = None
    for c in group.elements():
        br = bracket(G, [c])
        if c in br:
            continue
        Dq = quotient(G, br)
        proj, _ = coset_projection(G, br)
        e = int(proj[c])
        E = generated(Dq, [e])
        if best is None or len(E) < len(best[2]):
            best = (c, Dq, E, e)
    c, Dq, E, e = best
    zero = Dq.group.zero
    if any(Dq.act(a, x) != zero for a in range(len(Dq.ops)) for x in E):
        raise AssertionError("operators do not annihilate E")
    pair = EndoPair.standard(Dq.group)
    Dmax = L - 1
    E_set, Z_set = E.as_set, frozenset({zero})
    gens_E = _cyclic_gens(Dq, E)
    links, strict = [], []
    for n in range(L):
        box = tuple(E_set if d <= n else Z_set for d in range(Dmax + 1))
        sep = Poly.monomial(e, n, zero)
        link = SlicedStableSubgroup(Dmax, [Poly.monomial(e, d, zero) for d in range(n + 1)], zero, box=box)
        basis = [tuple(g if d == pos else zero for d in range(Dmax + 1)) for pos in range(n + 1) for g in gens_E]
        if slice_stability_witness(Dq, pair, link, basis) is not None:
            raise AssertionError(f"chain link {n} is not stable")
        if sep not in link or (links and sep in links[-1]):
            raise AssertionError(f"separator fails at link {n}")
        if links and not links[-1] <= link:
            raise AssertionError(f"links {n - 1} and {n} are not nested")
        links.append(link)
        strict.append(sep)
    return ChainWitness(Dq, G.label(c), E, links, strict)


def _cyclic_gens(G: GroupWithOperators, E: Subgroup) -> list[int]:
    gens, h = [], {G.group.zero}
    for x in E:
        if x not in h:
            gens.append(x)
            h = extend_span(h, [x], G.group.add)
    return gens


def leading_coeff_subgroup(G: GroupWithOperators, pair: EndoPair, P: SlicedStableSubgroup) -> Subgroup:
    """``Q = {b : sigma^d(b) x^d + lower terms lies in P for some d <= D}``.

    Requires sigma surjective and A-stable.  If ``Q`` then fails to be an
    A-stable subgroup, the action must be non weakly s-unital, which is reported
    as HypothesisNotMet; anything else is an internal failure.
    """
    group = G.group
    sigma = pair.sigma
    if len(set(sigma.tolist())) != group.order:
        missing = next(b for b in group.elements() if b not in set(sigma.tolist()))
        raise HypothesisNotMet("sigma is not surjective", ("sigma", G.label(missing)))
    w = a_stable_witness(GroupHom(G, G, sigma))
    if w is not None:
        raise HypothesisNotMet("sigma is not A-stable", ("sigma", G.op_label(w[0]), G.label(w[1])))
    zero = group.zero
    inverse_powers = [group.identity_map()]
    inv = np.argsort(sigma)
    for _ in range(P.D):
        inverse_powers.append(inverse_powers[-1][inv])
    Q = {zero}
    for v in P.members:
        d = max((i for i, x in enumerate(v) if x != zero), default=None)
        if d is not None:
            Q.add(int(inverse_powers[d][v[d]]))
    problem = None
    if not is_subgroup(group, Q):
        problem = "leading-coefficient set is not a subgroup"
    elif stability_witness(G, Q) is not None:
        problem = "leading-coefficient subgroup is not A-stable"
    if problem:
        w = weakly_s_unital_witness(G)
        if w is not None:
            raise HypothesisNotMet(f"{problem}; the action is not weakly s-unital", ("weakly_s_unital", G.label(w)))
        raise AssertionError(problem)
    return Subgroup.of(Q)
