"""Named example structures bundled with their expected properties.

Each item carries claims: a predicate name, the value it must take and a short
description of where the expectation comes from.  ``verify_all`` runs them and
raises ClaimFailed on the first disagreement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .cayley_dickson import TABLE_LEVEL, CayleyDickson
from .core import (
    CyclicProductGroup,
    GroupWithOperators,
    TableGroup,
    sunitality_report,
    validate_structure,
)
from .errors import BadParams, ClaimFailed, UnknownId
from .fields import GaloisField, odd_primes
from .noetherian import NotApplicable, ascending_chain_witness, check_horrible_all
from .ore import (
    AssocTriple,
    EndoPair,
    check_leibniz_mixed,
    check_triple_associativity,
    check_vandermonde,
    make_triple,
    twist_predicates,
)
from .rings import (
    FiniteRing,
    adjoint_derivation,
    as_left_module,
    derivation_endo_predicates,
    right_ideal_chain,
    ring_property_report,
)

Outcome = tuple[Any, tuple]


@dataclass
class Claim:
    name: str
    expected: Any
    source: str
    check: Callable[["GalleryItem"], Outcome] = field(repr=False)


@dataclass
class GalleryItem:
    id: str
    params: dict
    kind: str                       # group_with_operators | ring | algebra
    structure: Any
    claims: list[Claim] = field(default_factory=list)
    pair: EndoPair | None = None
    triple: AssocTriple | None = None
    chain_coefficients: list[int] | None = None
    ring: FiniteRing | None = None

    def __post_init__(self):
        if self.ring is None and isinstance(self.structure, FiniteRing):
            self.ring = self.structure


@dataclass
class ClaimResult:
    name: str
    expected: Any
    actual: Any
    witness: tuple
    source: str

    @property
    def ok(self) -> bool:
        return self.actual == self.expected

    def to_dict(self):
        return {"claim": self.name, "expected": self.expected, "actual": self.actual,
                "witness": list(self.witness), "source": self.source}


@dataclass
class VerifyReport:
    id: str
    results: list[ClaimResult]

    def to_dict(self):
        return {"id": self.id, "results": [r.to_dict() for r in self.results]}


# --- claim predicates -------------------------------------------------------

def _s_unital(item):
    r = sunitality_report(item.structure)
    return r.s_unital, r.s_unital_witness


def _weakly(item):
    r = sunitality_report(item.structure)
    return r.weakly_s_unital, r.weakly_s_unital_witness


def _chain_na(item):
    w = ascending_chain_witness(item.structure, 8)
    if isinstance(w, NotApplicable):
        return True, ()
    return False, (w.c,)


def _chain_len8(item):
    w = ascending_chain_witness(item.structure, 8)
    if isinstance(w, NotApplicable):
        return False, ()
    return len(w.links), (w.c,)


def _leading_term_claims(item):
    s = check_horrible_all(item.structure, item.pair or EndoPair.standard(item.structure.group), 2)
    f = s.failures[0].to_dict() if s.failures else None
    return s.ok, () if f is None else (f["b"], f["i"], f["j"], f["k"])


def _ring_prop(name):
    def check(item):
        c = ring_property_report(item.ring).checks()[name]
        return c.value, c.witness
    return check


def _left_identities(item):
    return sorted(ring_property_report(item.ring).left_identities), ()


def _cd_distributive(side):
    def check(item):
        r = item.structure.distributivity()
        return getattr(r, side), r.witness
    return check


def _cd_associative(item):
    w = item.structure.associator_witness()
    return w is None, () if w is None else w


def _cd_conjugation(item):
    w = item.structure.conjugation_identities()
    return w is None, () if w is None else w


def _derivation(item):
    R = item.structure
    rep = derivation_endo_predicates(R, as_left_module(R), item.pair.sigma, item.pair.delta,
                                     item.pair.sigma, item.pair.delta)
    bad = next(((k, c.witness) for k, c in rep.checks().items() if not c.value), None)
    return rep.ok, () if bad is None else (bad[0], *bad[1])


def _ideal_chain(item):
    rep = right_ideal_chain(item.structure, item.pair.sigma, item.pair.delta, item.chain_coefficients, 6)
    return rep.strict, tuple(l.size for l in rep.links)


def _twists(item):
    tw = twist_predicates(item.structure, item.pair)
    return tw.ok, tuple(itertools.chain.from_iterable(tw.witnesses.values()))


def _vandermonde(item):
    r = check_vandermonde(item.structure.group, item.pair, 4)
    bad = next((x for x in r.results if not x.holds), None)
    return r.ok, () if bad is None else bad.witness


def _leibniz(item):
    r = check_leibniz_mixed(item.structure, item.pair, 3)
    bad = next((x for x in r.results if not x.holds), None)
    return r.ok, () if bad is None else bad.witness


def _triple_assoc(item):
    r = check_triple_associativity(item.triple, 1)
    return r.phase1_ok and r.phase2_ok, r.phase2_witness or ()


# --- constructors -----------------------------------------------------------

def _inversion_structure(group) -> GroupWithOperators:
    return validate_structure(group, {"a": group.neg_table}, check_group=False)


def cyclic_inversion(n: int = 3) -> GalleryItem:
    _need_int("n", n, 1, 64)
    G = _inversion_structure(CyclicProductGroup([n]))
    src = "inversion action: s-unital exactly on Boolean groups, always weakly s-unital"
    claims = [
        Claim("s_unital", n <= 2, src, _s_unital),
        Claim("weakly_s_unital", True, src, _weakly),
        Claim("chain_not_applicable", True, "weakly s-unital actions give Noetherian B[x]", _chain_na),
        Claim("leading_term_lemma", True, "leading-term lemma for (A x^i)(b x^j)", _leading_term_claims),
    ]
    return GalleryItem("cyclic_inversion", {"n": n}, "group_with_operators", G, claims)


def boolean_group(k: int = 2) -> GalleryItem:
    _need_int("k", k, 1, 8)
    G = _inversion_structure(CyclicProductGroup([2] * k))
    src = "inversion is the identity on a Boolean group"
    claims = [
        Claim("s_unital", True, src, _s_unital),
        Claim("weakly_s_unital", True, src, _weakly),
        Claim("chain_not_applicable", True, "weakly s-unital actions give Noetherian B[x]", _chain_na),
    ]
    return GalleryItem("boolean_group", {"k": k}, "group_with_operators", G, claims)


def odd_prime_product(k: int = 2) -> GalleryItem:
    """Finite truncation ``C_3 x C_5 x ... x C_{p_k}`` with the inversion action."""
    _need_int("k", k, 1, 4)
    G = _inversion_structure(CyclicProductGroup(odd_primes(k)))
    src = "inversion on a product of odd cyclic groups"
    claims = [
        Claim("s_unital", False, src, _s_unital),
        Claim("weakly_s_unital", True, src, _weakly),
        Claim("chain_not_applicable", True, "finite index set gives Noetherian B[x]", _chain_na),
    ]
    return GalleryItem("odd_prime_product", {"k": k}, "group_with_operators", G, claims)


RPS = ("R", "P", "S")
# commutative rock-paper-scissors magma: each pair yields the winner
RPS_TABLE = {("R", "R"): "R", ("P", "P"): "P", ("S", "S"): "S",
             ("R", "P"): "P", ("R", "S"): "R", ("P", "S"): "S"}


def _rps_label(v) -> str:
    return "+".join(g for g, c in zip(RPS, v) if c) or "0"


def rps_ring() -> FiniteRing:
    """The magma algebra F_2[{R, P, S}]; elements are subsets, ordered by bitmask on (R, P, S)."""
    vecs = [tuple((m >> i) & 1 for i in range(3)) for m in range(8)]
    index = {v: i for i, v in enumerate(vecs)}

    def prod(g, h):
        return RPS_TABLE.get((g, h)) or RPS_TABLE[(h, g)]

    add = [[index[tuple((a + b) % 2 for a, b in zip(u, v))] for v in vecs] for u in vecs]
    mul = []
    for u in vecs:
        row = []
        for v in vecs:
            out = [0, 0, 0]
            for (i, g), (j, h) in itertools.product(enumerate(RPS), enumerate(RPS)):
                if u[i] and v[j]:
                    out[RPS.index(prod(g, h))] ^= 1
            row.append(index[tuple(out)])
        mul.append(row)
    group = TableGroup([_rps_label(v) for v in vecs], add, list(range(8)), 0)
    return FiniteRing(group, mul)


def rps_algebra() -> GalleryItem:
    src = "rock-paper-scissors magma algebra over F_2"
    claims = [
        Claim("boolean", True, src, _ring_prop("boolean")),
        Claim("left_unital", False, src + "; R fails on S and S fails on P", _ring_prop("left_unital")),
        Claim("s_unital", True, src, _ring_prop("s_unital")),
        Claim("weakly_s_unital", True, src, _ring_prop("weakly_s_unital")),
        Claim("associative", False, src, _ring_prop("associative")),
        Claim("left_distributive", True, "magma algebras are bilinear", _ring_prop("left_distributive")),
        Claim("right_distributive", True, "magma algebras are bilinear", _ring_prop("right_distributive")),
    ]
    return GalleryItem("rps_algebra", {}, "ring", rps_ring(), claims)


def cayley_dickson(p: int = 3, level: int = 3) -> GalleryItem:
    _need_int("p", p, 3, 97)
    _need_int("level", level, 0, 4)
    cd = CayleyDickson(p, level)
    src = "Cayley-Dickson doubling of F_p"
    claims = [
        Claim("left_distributive", True, src + ", every level", _cd_distributive("left")),
        Claim("right_distributive", True, src + ", every level", _cd_distributive("right")),
        Claim("associative", level <= 2, src + ": associative through the quaternion level", _cd_associative),
    ]
    if level <= TABLE_LEVEL:
        claims.append(Claim("conjugation_identities", True, "involution and anti-multiplicativity of conj",
                            _cd_conjugation))
        claims.append(Claim("ring_left_distributive", True, "full table check", _ring_prop("left_distributive")))
        claims.append(Claim("ring_associative", True, "full table check", _ring_prop("associative")))
    ring = cd.to_ring() if level <= TABLE_LEVEL else None
    return GalleryItem("cayley_dickson", {"p": p, "level": level}, "algebra", cd, claims, ring=ring)


def twisted_pair_ring(n: int) -> FiniteRing:
    """``R x R`` over ``Z/n`` with ``(r, s)(t, u) = (rt, ru)``."""
    group = CyclicProductGroup([n, n])
    mul = [[group.encode((r * t, r * u)) for (t, u) in group.labels] for (r, s) in group.labels]
    return FiniteRing(group, mul)


def twisted_pair(p: int = 2, v: int = 1, w: int = 1) -> GalleryItem:
    _need_int("p", p, 2, 16)
    _need_int("v", v, 0, p - 1)
    _need_int("w", w, 0, p - 1)
    R = twisted_pair_ring(p)
    g = R.group
    delta = adjoint_derivation(R, g.encode((v, w)))
    pair = EndoPair(g.identity_map(), delta, g.identity_map(), delta)
    src = "R x R with (r,s)(t,u) = (rt, ru)"
    left_ids = sorted((1, s) for s in range(p))
    claims = [
        Claim("associative", True, src, _ring_prop("associative")),
        Claim("left_unital", True, src, _ring_prop("left_unital")),
        Claim("left_identities", left_ids, src + ": the left units are (1, s)", _left_identities),
        Claim("right_unital", False, src + ": (0,1)(t,u) = (0,0)", _ring_prop("right_unital")),
        Claim("adjoint_derivation", True, "inner derivations of an associative ring", _derivation),
        Claim("right_ideal_chain_strict", True, "I_n = sum over i <= n of ({0} x R) x^i", _ideal_chain),
    ]
    return GalleryItem("twisted_pair", {"p": p, "v": v, "w": w}, "ring", R, claims, pair=pair,
                       chain_coefficients=[g.encode((0, 1))])


def frobenius_vector_space(p: int = 2, k: int = 2, dim: int = 1, alpha=None) -> GalleryItem:
    """``V = F^dim`` over ``F = GF(p^k)``.

    ``sigma_F`` is Frobenius and ``delta_F = id - sigma_F``; on ``V``,
    ``sigma_V = sigma_F o alpha`` and ``delta_V`` applies ``delta_F`` coordinatewise.
    ``alpha`` is a ``dim x dim`` matrix of field element indices acting on
    column vectors; the identity by default.
    """
    _need_int("p", p, 2, 13)
    _need_int("k", k, 1, 4)
    _need_int("dim", dim, 1, 3)
    F = GaloisField(p, k)
    q = F.order
    if q ** dim > 4096:
        raise BadParams("vector space too large", (p, k, dim))
    if alpha is None:
        alpha = [[F.one if i == j else 0 for j in range(dim)] for i in range(dim)]
    try:
        alpha = np.array(alpha, dtype=np.intp)
        ok = alpha.shape == (dim, dim) and alpha.min() >= 0 and alpha.max() < q
    except (TypeError, ValueError):
        ok = False
    if not ok:
        raise BadParams(f"alpha must be a {dim}x{dim} matrix of field elements below {q}", ("alpha",))
    mul, addF = F.mul_table, F.group.add_arrays
    sigma_F = F.frobenius()
    delta_F = addF(np.arange(q), F.group.neg_array(sigma_F))
    V = CyclicProductGroup([p] * (k * dim))
    coords = np.array(list(itertools.product(range(q), repeat=dim)), dtype=np.intp).reshape(-1, dim)

    def enc(c):
        return (c * (q ** np.arange(dim - 1, -1, -1))).sum(axis=-1)

    # alpha(v)_i = sum_j alpha_ij v_j
    av = np.zeros_like(coords)
    for i in range(dim):
        acc = np.zeros(len(coords), dtype=np.intp)
        for j in range(dim):
            acc = addF(acc, mul[alpha[i, j], coords[:, j]])
        av[:, i] = acc
    sigma_V = enc(sigma_F[av])
    delta_V = enc(delta_F[coords])
    action = {F.group.label(c): enc(mul[c][coords]) for c in range(q)}
    G = validate_structure(V, action, zero_op=F.group.label(0), check_group=False)
    pair = EndoPair.checked(V, sigma_V, delta_V, sigma_F, delta_F)
    Bf = validate_structure(F.group, {F.group.label(c): mul[c] for c in range(q)},
                            zero_op=F.group.label(0), check_group=False)
    triple = make_triple(Bf, V, action, action, sigma_F, delta_F, sigma_V, delta_V, name="frobenius")
    src = "Frobenius twist with delta_F = id - sigma_F on a vector space"
    claims = [
        Claim("twist_predicates", True, src, _twists),
        Claim("vandermonde_one_shift", True, "unconditional pi-map identities", _vandermonde),
        Claim("leibniz_mixed", True, src, _leibniz),
        Claim("triple_associative", True, src + ": (F[x], F[x; sigma, delta], V[x]) is associative",
              _triple_assoc),
    ]
    params = {"p": p, "k": k, "dim": dim, "alpha": alpha.tolist()}
    return GalleryItem("frobenius_vector_space", params, "group_with_operators", G, claims,
                       pair=pair, triple=triple)


CATALOG: dict[str, Callable[..., GalleryItem]] = {
    "cyclic_inversion": cyclic_inversion,
    "boolean_group": boolean_group,
    "odd_prime_product": odd_prime_product,
    "rps_algebra": rps_algebra,
    "cayley_dickson": cayley_dickson,
    "twisted_pair": twisted_pair,
    "frobenius_vector_space": frobenius_vector_space,
}


def _need_int(name, value, lo, hi):
    if isinstance(value, bool) or not isinstance(value, int) or not lo <= value <= hi:
        raise BadParams(f"{name} must be an integer in [{lo}, {hi}], got {value!r}", (name,))


def build(id: str, **params) -> GalleryItem:
    try:
        ctor = CATALOG[id]
    except KeyError:
        raise UnknownId(f"unknown gallery item {id!r}", (id,)) from None
    try:
        return ctor(**params)
    except TypeError as e:
        raise BadParams(str(e), tuple(params)) from None


def verify_all(item: GalleryItem) -> VerifyReport:
    results = []
    for claim in item.claims:
        actual, witness = claim.check(item)
        r = ClaimResult(claim.name, claim.expected, actual, tuple(witness), claim.source)
        if not r.ok:
            raise ClaimFailed(claim.name, f"expected {claim.expected!r}, got {actual!r}", r.witness, claim.source)
        results.append(r)
    return VerifyReport(item.id, results)
