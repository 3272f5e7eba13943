"""Finite abelian groups with operators.

Elements are addressed by index ``0 .. order-1``; ``labels`` holds the public
identifiers that appear in structure files and witnesses.  Maps on a group
(endomorphisms, operator actions) are integer numpy arrays indexed by element.
Groups are written additively throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    BadZeroOperator,
    EmptySet,
    MismatchedOperators,
    NotAdditive,
    NotAGroup,
    NotAStable,
    NotEndomorphism,
    NotStable,
)

# Above this order the cyclic-product backend stops materialising its tables.
TABLE_LIMIT = 2048
# Default gate for oracles that enumerate subgroups or subsets.
ENUMERATION_LIMIT = 16


class FiniteAbelianGroup:
    """An additive finite abelian group on the index set ``range(order)``."""

    def __init__(self, labels: Sequence[Hashable], zero: int):
        self.labels = tuple(labels)
        self.zero = int(zero)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            dup = next(l for l in self.labels if self.labels.count(l) > 1)
            raise NotAGroup("duplicate element identifier", (dup,))

    @property
    def order(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} of order {self.order}>"

    def index(self, label: Hashable) -> int:
        try:
            return self._index[label]
        except (KeyError, TypeError):
            raise KeyError(f"{label!r} is not an element") from None

    def label(self, i: int) -> Hashable:
        return self.labels[i]

    def elements(self) -> range:
        return range(self.order)

    # arithmetic; subclasses provide add_arrays / neg_array
    def add(self, i: int, j: int) -> int:
        raise NotImplementedError

    def neg(self, i: int) -> int:
        raise NotImplementedError

    def add_arrays(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def neg_array(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def sub(self, i: int, j: int) -> int:
        return self.add(i, self.neg(j))

    def multiple(self, n: int, i: int) -> int:
        if n < 0:
            n, i = -n, self.neg(i)
        out = self.zero
        for _ in range(n):
            out = self.add(out, i)
        return out

    def sum(self, items: Iterable[int]) -> int:
        out = self.zero
        for i in items:
            out = self.add(out, i)
        return out

    def sum_maps(self, maps: Iterable[np.ndarray]) -> np.ndarray:
        out = self.zero_map()
        for m in maps:
            out = self.add_arrays(out, m)
        return out

    def identity_map(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.intp)

    def zero_map(self) -> np.ndarray:
        return np.full(self.order, self.zero, dtype=np.intp)

    def span(self, gens: Iterable[int], base: Iterable[int] | None = None) -> frozenset:
        """Additive closure of ``base`` (a subgroup, default {0}) and ``gens``."""
        return frozenset(extend_span(set(base) if base is not None else {self.zero}, gens, self.add))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        gens, h = [], {self.zero}
        for g in self.elements():
            if g not in h:
                gens.append(g)
                h = extend_span(h, [g], self.add)
        return tuple(gens)

    def additivity_witness(self, f: np.ndarray) -> tuple[int, int] | None:
        """First ``(b, c)`` (row-major) with ``f(b+c) != f(b)+f(c)``, else None."""
        f = np.asarray(f)
        if self.order <= TABLE_LIMIT:
            tab = self.add_table
            bad = f[tab] != tab[f[:, None], f[None, :]]
            if bad.any():
                b, c = np.argwhere(bad)[0]
                return int(b), int(c)
            return None
        # f is additive iff f(x+g) = f(x)+f(g) for all x and all generators g
        xs = np.arange(self.order)
        for g in self.generators:
            gs = np.full(self.order, g)
            bad = f[self.add_arrays(xs, gs)] != self.add_arrays(f, f[gs])
            if bad.any():
                return int(np.argmax(bad)), g
        return None

    @property
    def add_table(self) -> np.ndarray:
        raise NotImplementedError


class TableGroup(FiniteAbelianGroup):
    """Group given by explicit addition and negation tables (of indices)."""

    def __init__(self, labels, add_table, neg_table, zero: int):
        super().__init__(labels, zero)
        self._add_np = np.asarray(add_table, dtype=np.intp)
        self._neg_np = np.asarray(neg_table, dtype=np.intp)
        n = self.order
        if self._add_np.shape != (n, n) or self._neg_np.shape != (n,):
            raise NotAGroup("tables do not match the element list")
        self._add = self._add_np.tolist()
        self._neg = self._neg_np.tolist()

    @property
    def add_table(self) -> np.ndarray:
        return self._add_np

    @property
    def neg_table(self) -> np.ndarray:
        return self._neg_np

    def add(self, i, j):
        return self._add[i][j]

    def neg(self, i):
        return self._neg[i]

    def add_arrays(self, x, y):
        return self._add_np[x, y]

    def neg_array(self, x):
        return self._neg_np[x]


class CyclicProductGroup(FiniteAbelianGroup):
    """``Z/m1 x ... x Z/mr`` with tuple labels (plain ints when r == 1).

    Index encoding is mixed radix with the first component most significant,
    so index order equals lexicographic order of the tuples.
    """

    def __init__(self, moduli: Sequence[int]):
        moduli = tuple(int(m) for m in moduli)
        if not moduli or any(m < 1 for m in moduli):
            raise NotAGroup("cyclic_product needs positive moduli")
        self.moduli = moduli
        digits = np.array(list(itertools.product(*(range(m) for m in moduli))), dtype=np.intp)
        self.digits = digits.reshape(-1, len(moduli))
        labels = [int(d[0]) for d in self.digits] if len(moduli) == 1 else [tuple(int(x) for x in d) for d in self.digits]
        super().__init__(labels, 0)
        w, acc = [], 1
        for m in reversed(moduli):
            w.append(acc)
            acc *= m
        self._weights = np.array(list(reversed(w)), dtype=np.intp)
        self._mod = np.array(moduli, dtype=np.intp)
        if self.order <= TABLE_LIMIT:
            self._add_np = self._encode((self.digits[:, None, :] + self.digits[None, :, :]) % self._mod)
            self._neg_np = self._encode((-self.digits) % self._mod)
            self._add = self._add_np.tolist()
            self._neg = self._neg_np.tolist()
        else:
            self._add_np = None
            self._neg_np = self._encode((-self.digits) % self._mod)
            self._neg = self._neg_np.tolist()

    def _encode(self, d: np.ndarray) -> np.ndarray:
        return (d * self._weights).sum(axis=-1)

    def encode(self, vec: Sequence[int]) -> int:
        return int(sum((int(v) % m) * w for v, m, w in zip(vec, self.moduli, self._weights)))

    @property
    def add_table(self):
        if self._add_np is None:
            raise MemoryError(f"order {self.order} exceeds the table limit")
        return self._add_np

    @property
    def neg_table(self):
        return self._neg_np

    def add(self, i, j):
        if self._add_np is not None:
            return self._add[i][j]
        return int(self.add_arrays(np.asarray(i), np.asarray(j)))

    def neg(self, i):
        return self._neg[i]

    def add_arrays(self, x, y):
        if self._add_np is not None:
            return self._add_np[x, y]
        return self._encode((self.digits[x] + self.digits[y]) % self._mod)

    def neg_array(self, x):
        return self._neg_np[x]


def extend_span(h: set, gens: Iterable, add) -> set:
    """Grow the finite subgroup ``h`` (a set, mutated copy returned) by ``gens``.

    ``h + <g>`` is the union of the cosets ``h + t*g`` for ``t`` until ``t*g``
    falls back into ``h``; in a finite group additive closure is a subgroup.
    """
    h = set(h)
    for g in gens:
        if g in h:
            continue
        base = list(h)
        mult = g
        while mult not in h:
            h.update(add(x, mult) for x in base)
            mult = add(mult, g)
    return h


def make_group(elements: Sequence[Hashable], add: Sequence[Sequence[Hashable]],
               neg: Sequence[Hashable], zero: Hashable) -> TableGroup:
    """Build a table group from label-level tables and validate its axioms."""
    index = {lab: i for i, lab in enumerate(elements)}

    def idx(lab, where):
        try:
            return index[lab]
        except (KeyError, TypeError):
            raise NotAGroup(f"{where} entry {lab!r} is not an element", (lab,)) from None

    n = len(elements)
    if len(add) != n or any(len(row) != n for row in add) or len(neg) != n:
        raise NotAGroup("add/neg tables are not total")
    add_idx = [[idx(v, "add") for v in row] for row in add]
    neg_idx = [idx(v, "neg") for v in neg]
    g = TableGroup(elements, add_idx, neg_idx, idx(zero, "zero"))
    validate_group(g)
    return g


def validate_group(g: FiniteAbelianGroup) -> None:
    """Exhaustively check the abelian group axioms; raise NotAGroup with a witness."""
    if isinstance(g, CyclicProductGroup):
        return
    tab, neg, z, n = g.add_table, g.neg_table, g.zero, g.order
    lab = g.label
    bad = np.nonzero(tab[z] != np.arange(n))[0]
    if bad.size:
        raise NotAGroup("zero is not an identity", (lab(int(bad[0])),))
    bad = np.nonzero(tab[np.arange(n), neg] != z)[0]
    if bad.size:
        raise NotAGroup("neg does not give inverses", (lab(int(bad[0])),))
    bad = np.argwhere(tab != tab.T)
    if bad.size:
        b, c = bad[0]
        raise NotAGroup("add is not commutative", (lab(int(b)), lab(int(c))))
    for a in range(n):
        # (a+b)+c == a+(b+c) for all b, c
        left = tab[tab[a]]
        right = tab[a][tab]
        bad = np.argwhere(left != right)
        if bad.size:
            b, c = bad[0]
            raise NotAGroup("add is not associative", (lab(a), lab(int(b)), lab(int(c))))


@dataclass(frozen=True)
class OperatorSet:
    labels: tuple
    zero: int

    def __len__(self):
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{label!r} is not an operator") from None


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as its sorted member indices."""

    members: tuple[int, ...]

    @classmethod
    def of(cls, items: Iterable[int]) -> "Subgroup":
        return cls(tuple(sorted(set(items))))

    @cached_property
    def as_set(self) -> frozenset:
        return frozenset(self.members)

    def __contains__(self, i) -> bool:
        return i in self.as_set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __le__(self, other: "Subgroup") -> bool:
        return self.as_set <= other.as_set

    def __lt__(self, other: "Subgroup") -> bool:
        return self.as_set < other.as_set


class GroupWithOperators:
    """A finite abelian group ``B`` with an operator set ``A`` acting by endomorphisms.

    Build instances through :func:`validate_structure`, which checks the axioms.
    """

    def __init__(self, group: FiniteAbelianGroup, ops: OperatorSet, action: np.ndarray):
        self.group = group
        self.ops = ops
        self.action = np.asarray(action, dtype=np.intp)
        self._act = self.action.tolist()

    def __repr__(self):
        return f"<GroupWithOperators |B|={self.group.order} |A|={len(self.ops)}>"

    def act(self, a: int, b: int) -> int:
        return self._act[a][b]

    def act_set(self, items: Iterable[int]) -> set:
        """``A S`` as a set of indices."""
        items = list(items)
        return {row[s] for row in self._act for s in items}

    def op_label(self, a: int):
        return self.ops.labels[a]

    def label(self, b: int):
        return self.group.labels[b]


def validate_structure(group: FiniteAbelianGroup, action: Mapping[Hashable, Sequence[int]],
                       zero_op: Hashable | None = None, check_group: bool = True) -> GroupWithOperators:
    """Check the axioms of a group with operators and return the validated structure.

    ``action`` maps each operator label to its table (element indices).  When
    ``zero_op`` is None the first operator acting as the zero map is used, and
    a zero operator ``"eps"`` is adjoined if there is none.
    """
    if check_group:
        validate_group(group)
    labels = list(action)
    tables = []
    for a in labels:
        t = np.asarray(action[a], dtype=np.intp)
        if t.shape != (group.order,) or (t.size and (t.min() < 0 or t.max() >= group.order)):
            raise NotEndomorphism(f"operator {a!r} does not map the group into itself", (a,))
        tables.append(t)
    for a, t in zip(labels, tables):
        w = group.additivity_witness(t)
        if w is not None:
            raise NotEndomorphism(f"operator {a!r} is not an endomorphism",
                                  (a, group.label(w[0]), group.label(w[1])))
    zmap = group.zero_map()
    if zero_op is not None:
        if zero_op not in labels:
            raise BadZeroOperator(f"zero operator {zero_op!r} is not listed", (zero_op,))
        t = tables[labels.index(zero_op)]
        bad = np.nonzero(t != zmap)[0]
        if bad.size:
            raise BadZeroOperator(f"{zero_op!r} does not act as zero", (zero_op, group.label(int(bad[0]))))
        z = labels.index(zero_op)
    else:
        z = next((i for i, t in enumerate(tables) if np.array_equal(t, zmap)), None)
        if z is None:
            eps = "eps"
            while eps in labels:
                eps += "'"
            labels.append(eps)
            tables.append(zmap)
            z = len(labels) - 1
    if not tables:
        raise BadZeroOperator("empty operator set")
    return GroupWithOperators(group, OperatorSet(tuple(labels), z), np.stack(tables))


def _require(items) -> list[int]:
    items = list(dict.fromkeys(items))
    if not items:
        raise EmptySet("expected a nonempty set")
    return items


def _saturate(G: GroupWithOperators, start: Iterable[int]) -> set:
    seen = set(start)
    frontier = list(seen)
    while frontier:
        nxt = []
        for row in G._act:
            for s in frontier:
                t = row[s]
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return seen


def stable_closure(G: GroupWithOperators, S: Iterable[int]) -> frozenset:
    """Least operator-closed superset of ``S`` (breadth-first saturation)."""
    return frozenset(_saturate(G, _require(S)))


def iterated_images(G: GroupWithOperators, S: Iterable[int]) -> frozenset:
    """Union of ``A^n S`` over ``n >= 1``."""
    return frozenset(_saturate(G, G.act_set(_require(S))))


def stability_witness(G: GroupWithOperators, members: Iterable[int]) -> tuple[int, int] | None:
    """First ``(a, c)`` with ``c`` in ``members`` and ``a c`` outside, else None."""
    members = sorted(set(members))
    ms = set(members)
    for a, row in enumerate(G._act):
        for c in members:
            if row[c] not in ms:
                return a, c
    return None


def is_subgroup(group: FiniteAbelianGroup, members: Iterable[int]) -> bool:
    ms = set(members)
    return (group.zero in ms and all(group.neg(x) in ms for x in ms)
            and all(group.add(x, y) in ms for x in ms for y in ms))


def generated_stable_subgroup(G: GroupWithOperators, S: Iterable[int], mode: str = "full") -> Subgroup:
    """``<S>`` (mode ``full``) or ``[S]`` (mode ``bracket``) as a subgroup.

    Both are the additive span of iterated images of ``S``; ``full`` includes
    ``S`` itself (zero iterations), ``bracket`` starts at one iteration.
    """
    S = _require(S)
    if mode == "full":
        orbit = stable_closure(G, S)
    elif mode == "bracket":
        orbit = iterated_images(G, S)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    members = G.group.span(orbit)
    if stability_witness(G, members) is not None or not is_subgroup(G.group, members):
        raise AssertionError("generated set is not a stable subgroup")
    return Subgroup.of(members)


def bracket(G: GroupWithOperators, S: Iterable[int]) -> Subgroup:
    return generated_stable_subgroup(G, S, "bracket")


def generated(G: GroupWithOperators, S: Iterable[int]) -> Subgroup:
    return generated_stable_subgroup(G, S, "full")


def all_subgroups(group: FiniteAbelianGroup, limit: int = ENUMERATION_LIMIT) -> list[frozenset]:
    """Every subgroup, by closing the lattice under joins with cyclic subgroups."""
    if group.order > limit:
        raise ValueError(f"subgroup enumeration gated at order {limit}")
    found = {frozenset({group.zero})}
    frontier = list(found)
    while frontier:
        nxt = []
        for h in frontier:
            for g in group.elements():
                if g in h:
                    continue
                k = group.span([g], h)
                if k not in found:
                    found.add(k)
                    nxt.append(k)
        frontier = nxt
    return sorted(found, key=lambda h: (len(h), sorted(h)))


def all_stable_subgroups(G: GroupWithOperators, limit: int = ENUMERATION_LIMIT) -> list[frozenset]:
    return [h for h in all_subgroups(G.group, limit) if stability_witness(G, h) is None]


@dataclass
class SUnitalityReport:
    s_unital: bool
    weakly_s_unital: bool
    s_unital_witness: tuple = ()
    weakly_s_unital_witness: tuple = ()
    subsets_checked: int = 0

    def to_dict(self) -> dict:
        return {
            "s_unital": self.s_unital,
            "weakly_s_unital": self.weakly_s_unital,
            "s_unital_witness": list(self.s_unital_witness),
            "weakly_s_unital_witness": list(self.weakly_s_unital_witness),
            "subsets_checked": self.subsets_checked,
        }


def s_unital_witness(G: GroupWithOperators) -> int | None:
    for b in G.group.elements():
        if all(row[b] != b for row in G._act):
            return b
    return None


def weakly_s_unital_witness(G: GroupWithOperators) -> int | None:
    for b in G.group.elements():
        if b not in bracket(G, [b]):
            return b
    return None


def sunitality_report(G: GroupWithOperators, exhaustive_limit: int = ENUMERATION_LIMIT) -> SUnitalityReport:
    """s-unitality and weak s-unitality, cross-checked against ``<S> = [S]``.

    The cross-check runs over all singletons and, when ``|B| <= exhaustive_limit``,
    over every nonempty subset of ``B``.
    """
    s_w = s_unital_witness(G)
    ws_w = weakly_s_unital_witness(G)
    weak = ws_w is None
    n = G.group.order
    if n <= exhaustive_limit:
        subsets = itertools.chain.from_iterable(itertools.combinations(range(n), r) for r in range(1, n + 1))
    else:
        subsets = ((b,) for b in range(n))
    checked = 0
    mismatch_seen = False
    # <S> and [S] depend on S only through its stable closure
    memo: dict[frozenset, bool] = {}
    for S in subsets:
        closure = frozenset(_saturate(G, S))
        eq = memo.get(closure)
        if eq is None:
            eq = G.group.span(closure) == G.group.span(G.act_set(closure))
            memo[closure] = eq
        checked += 1
        if weak and not eq:
            raise AssertionError(f"weakly s-unital action with <S> != [S] at S={S}")
        mismatch_seen |= not eq
    if not weak and not mismatch_seen:
        raise AssertionError("not weakly s-unital, yet <S> == [S] for every tested S")
    lab = G.label
    return SUnitalityReport(
        s_unital=s_w is None,
        weakly_s_unital=weak,
        s_unital_witness=() if s_w is None else (lab(s_w),),
        weakly_s_unital_witness=() if ws_w is None else (lab(ws_w),),
        subsets_checked=checked,
    )


def coset_projection(G: GroupWithOperators, C: Iterable[int]) -> tuple[np.ndarray, list[int]]:
    """Map each element to the index of its coset; cosets ordered by least member."""
    group = G.group
    members = sorted(set(C))
    proj = np.full(group.order, -1, dtype=np.intp)
    reps: list[int] = []
    for b in group.elements():
        if proj[b] >= 0:
            continue
        q = len(reps)
        reps.append(b)
        for c in members:
            proj[group.add(b, c)] = q
    return proj, reps


def quotient(G: GroupWithOperators, C: Iterable[int]) -> GroupWithOperators:
    """``B/C`` with action ``a(b+C) = ab + C``; labels are the least coset members."""
    C = sorted(set(C))
    group = G.group
    if not is_subgroup(group, C):
        raise NotStable("not a subgroup", tuple(group.label(c) for c in C))
    w = stability_witness(G, C)
    if w is not None:
        raise NotStable("subgroup is not stable", (G.op_label(w[0]), G.label(w[1])))
    proj, reps = coset_projection(G, C)
    reps_np = np.array(reps, dtype=np.intp)
    add = proj[group.add_table[reps_np[:, None], reps_np[None, :]]]
    neg = proj[group.neg_table[reps_np]]
    qgroup = TableGroup([group.label(r) for r in reps], add, neg, int(proj[group.zero]))
    action = proj[G.action[:, reps_np]]
    return GroupWithOperators(qgroup, G.ops, action)


def direct_product(Gs: Sequence[GroupWithOperators]) -> GroupWithOperators:
    """Componentwise group and action; all factors must share the operator set."""
    Gs = list(Gs)
    if not Gs:
        raise MismatchedOperators("empty product")
    if len(Gs) == 1:
        return Gs[0]
    ops = Gs[0].ops
    for H in Gs[1:]:
        if H.ops != ops:
            raise MismatchedOperators("factors act through different operator sets")
    combos = list(itertools.product(*(range(H.group.order) for H in Gs)))
    sizes = [H.group.order for H in Gs]
    weights = np.array([int(np.prod(sizes[i + 1:])) for i in range(len(sizes))], dtype=np.intp)
    digits = np.array(combos, dtype=np.intp)

    def enc(d):
        return (d * weights).sum(axis=-1)

    add_cols = [H.group.add_table[digits[:, None, i], digits[None, :, i]] for i, H in enumerate(Gs)]
    add = enc(np.stack(add_cols, axis=-1))
    neg = enc(np.stack([H.group.neg_table[digits[:, i]] for i, H in enumerate(Gs)], axis=-1))
    labels = [tuple(H.group.label(x) for H, x in zip(Gs, c)) for c in combos]
    zero = int(enc(np.array([H.group.zero for H in Gs])))
    group = TableGroup(labels, add, neg, zero)
    action = enc(np.stack([H.action[:, digits[:, i]] for i, H in enumerate(Gs)], axis=-1))
    return GroupWithOperators(group, ops, action)


@dataclass
class GroupHom:
    source: GroupWithOperators
    target: GroupWithOperators
    map: np.ndarray

    def __post_init__(self):
        self.map = np.asarray(self.map, dtype=np.intp)


@dataclass
class HomReport:
    additive: bool
    A_stable: bool
    tau_twisted: bool | None
    witnesses: dict = field(default_factory=dict)

    def to_dict(self):
        return {"additive": self.additive, "A_stable": self.A_stable,
                "tau_twisted": self.tau_twisted,
                "witnesses": {k: list(v) for k, v in self.witnesses.items()}}


def a_stable_witness(f: GroupHom) -> tuple[int, int] | None:
    """First ``(a, b)`` with ``f(ab)`` outside ``A f(b)``."""
    S, T, m = f.source, f.target, f.map
    for b in S.group.elements():
        orbit = {row[m[b]] for row in T._act}
        for a, row in enumerate(S._act):
            if m[row[b]] not in orbit:
                return a, b
    return None


def hom_predicates(f: GroupHom, tau: Sequence[int] | np.ndarray | None = None) -> HomReport:
    if f.source.ops != f.target.ops:
        raise MismatchedOperators("source and target use different operator sets")
    S, T, m = f.source, f.target, f.map
    wit = {}
    aw = S.group.additivity_witness(m) if S.group is T.group else _cross_additivity(f)
    if aw is not None:
        wit["additive"] = (S.label(aw[0]), S.label(aw[1]))
    sw = a_stable_witness(f)
    if sw is not None:
        wit["A_stable"] = (S.op_label(sw[0]), S.label(sw[1]))
    twisted = None
    if tau is not None:
        tau = np.asarray(tau, dtype=np.intp)
        lhs = m[S.action]                       # f(ab), indexed [a, b]
        rhs = T.action[tau][:, m]               # tau(a) f(b)
        bad = np.argwhere(lhs != rhs)
        twisted = bad.size == 0
        if not twisted:
            a, b = bad[0]
            wit["tau_twisted"] = (S.op_label(int(a)), S.label(int(b)))
        elif sw is not None:
            raise AssertionError("tau-twisted map failed A-stability")
    return HomReport(aw is None, sw is None, twisted, wit)


def _cross_additivity(f: GroupHom):
    S, T, m = f.source.group, f.target.group, f.map
    lhs = m[S.add_table]
    rhs = T.add_table[m[:, None], m[None, :]]
    bad = np.argwhere(lhs != rhs)
    return None if bad.size == 0 else (int(bad[0][0]), int(bad[0][1]))


@dataclass
class KernelChainReport:
    n_stable: int
    kernels: list[Subgroup]
    surjective: bool
    bijective_if_surjective: bool | None

    def to_dict(self, G: GroupWithOperators | None = None):
        lab = (lambda i: G.label(i)) if G is not None else (lambda i: i)
        return {"n_stable": self.n_stable,
                "kernels": [[lab(i) for i in k] for k in self.kernels],
                "surjective": self.surjective,
                "bijective_if_surjective": self.bijective_if_surjective}


def kernel_chain_analysis(G: GroupWithOperators, f: np.ndarray) -> KernelChainReport:
    """Iterate ``ker(f) <= ker(f^2) <= ...`` to stabilisation for an A-stable endomorphism."""
    f = np.asarray(f, dtype=np.intp)
    group = G.group
    hom = GroupHom(G, G, f)
    w = group.additivity_witness(f)
    if w is not None:
        raise NotAdditive("map is not additive", (G.label(w[0]), G.label(w[1])))
    w = a_stable_witness(hom)
    if w is not None:
        raise NotAStable("map is not A-stable", (G.op_label(w[0]), G.label(w[1])))
    kernels: list[Subgroup] = []
    power = f.copy()
    while True:
        ker = Subgroup.of(np.nonzero(power == group.zero)[0].tolist())
        if stability_witness(G, ker) is not None:
            raise AssertionError("kernel of an A-stable endomorphism is not stable")
        if kernels and ker == kernels[-1]:
            break
        kernels.append(ker)
        power = f[power]
    n = len(kernels)
    fn = group.identity_map()
    for _ in range(n):
        fn = f[fn]
    image = set(fn.tolist())
    if kernels[-1].as_set & image != {group.zero}:
        raise AssertionError("ker(f^n) and im(f^n) intersect nontrivially")
    surjective = len(set(f.tolist())) == group.order
    bij = None
    if surjective:
        bij = kernels[0].members == (group.zero,)
        if not bij:
            raise AssertionError("surjective A-stable endomorphism with nonzero kernel")
    return KernelChainReport(n, kernels, surjective, bij)
