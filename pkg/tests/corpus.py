"""Shared structures for the test suite.

``CORPUS`` holds (name, structure, pair) entries covering every gallery id plus
hand-built and seeded random structures.  Triples for the associativity tests
live in ``phase1_triples`` and ``broken_triples``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from oreext.core import CyclicProductGroup, GroupWithOperators, validate_structure
from oreext.fields import GaloisField
from oreext.gallery import build
from oreext.ore import EndoPair, make_triple
from oreext.rings import as_left_module, module_as_operators


@dataclass
class Entry:
    name: str
    G: GroupWithOperators
    pair: EndoPair


def scalar_action(n: int, scalars) -> dict:
    return {c: [(c * b) % n for b in range(n)] for c in scalars}


def times(n: int, c: int) -> np.ndarray:
    return np.array([(c * b) % n for b in range(n)], dtype=np.intp)


def ops_map(G: GroupWithOperators, f) -> np.ndarray:
    """Companion map on operators given as a function of operator labels."""
    return np.array([G.ops.labels.index(f(o)) for o in G.ops.labels], dtype=np.intp)


def cyclic_mult(n: int, scalars=None, sigma=1, delta=0, zero_op=0) -> tuple[GroupWithOperators, EndoPair]:
    """``Z/n`` with multiplication operators; companions are id and 0 on scalars."""
    g = CyclicProductGroup([n])
    scalars = list(range(n)) if scalars is None else list(scalars)
    G = validate_structure(g, scalar_action(n, scalars), zero_op=zero_op if zero_op in scalars else None)
    sA = np.arange(len(G.ops), dtype=np.intp)
    dA = np.full(len(G.ops), G.ops.zero, dtype=np.intp)
    return G, EndoPair.checked(g, times(n, sigma), times(n, delta), sA, dA)


def random_endomorphism(group: CyclicProductGroup, rng: random.Random) -> np.ndarray:
    """A uniformly chosen image for each unit vector, extended additively."""
    k = len(group.moduli)
    images = []
    for i, m in enumerate(group.moduli):
        choices = [x for x in group.elements() if group.multiple(m, x) == group.zero]
        images.append(rng.choice(choices))
    out = np.empty(group.order, dtype=np.intp)
    for idx in group.elements():
        lab = group.label(idx)
        digits = (lab,) if k == 1 else lab
        acc = group.zero
        for d, img in zip(digits, images):
            acc = group.add(acc, group.multiple(d, img))
        out[idx] = acc
    return out


RANDOM_GROUPS = [[7], [8], [2, 2, 2], [2, 4], [3, 3], [12], [2, 2, 2, 2], [16], [4, 4]]


def random_structure(seed: int, moduli=None, n_ops: int = 2) -> Entry:
    rng = random.Random(seed)
    moduli = moduli or rng.choice(RANDOM_GROUPS)
    g = CyclicProductGroup(moduli)
    action = {f"f{i}": random_endomorphism(g, rng) for i in range(n_ops)}
    G = validate_structure(g, action, check_group=False)
    pair = EndoPair.checked(g, random_endomorphism(g, rng), random_endomorphism(g, rng))
    return Entry(f"random_{seed}_{'x'.join(map(str, moduli))}", G, pair)


def _ring_entry(name: str, item) -> Entry:
    G = module_as_operators(as_left_module(item.ring), zero_op=item.ring.label(item.ring.group.zero))
    if item.pair is not None:
        pair = item.pair
    else:
        pair = EndoPair(G.group.identity_map(), G.group.zero_map(),
                        np.arange(len(G.ops)), np.full(len(G.ops), G.ops.zero))
    return Entry(name, G, pair)


def _inversion_entry(name: str, item) -> Entry:
    G = item.structure
    # sigma = inversion commutes with every operator; delta = 0 with a zero companion
    pair = EndoPair(G.group.neg_table, G.group.zero_map(), np.arange(len(G.ops)), np.full(len(G.ops), G.ops.zero))
    return Entry(name, G, pair)


def _field_entry(p: int, k: int) -> Entry:
    F = GaloisField(p, k)
    labels = F.group.labels
    G = validate_structure(F.group, {labels[c]: F.mul_table[c] for c in range(F.order)}, zero_op=labels[0],
                           check_group=False)
    frob = F.frobenius()
    delta = F.group.add_arrays(np.arange(F.order), F.group.neg_array(frob))
    return Entry(f"gf{p}^{k}_frobenius", G, EndoPair.checked(F.group, frob, delta, frob, delta))


@lru_cache(maxsize=None)
def corpus() -> tuple[Entry, ...]:
    out = []
    G, pair = cyclic_mult(5, sigma=2, delta=3)
    out.append(Entry("z5_mult_s2_d3", G, pair))
    G, pair = cyclic_mult(5)
    out.append(Entry("z5_mult_standard", G, pair))
    G, pair = cyclic_mult(7, sigma=3, delta=1)
    out.append(Entry("z7_mult_s3_d1", G, pair))
    G, pair = cyclic_mult(4, scalars=[0, 1, 3])
    out.append(Entry("z4_odd_scalars", G, pair))
    G, pair = cyclic_mult(9, scalars=[0, 3])
    out.append(Entry("z9_times3", G, pair))
    G, pair = cyclic_mult(3, scalars=[0])
    out.append(Entry("z3_zero_action", G, pair))
    G, pair = cyclic_mult(6, scalars=[0], sigma=5)
    out.append(Entry("z6_zero_action_sigma_neg", G, pair))
    G, pair = cyclic_mult(8, scalars=[0, 3, 5], sigma=5, delta=2)
    out.append(Entry("z8_units", G, pair))

    for n in (2, 3, 4, 6):
        out.append(_inversion_entry(f"cyclic_inversion_{n}", build("cyclic_inversion", n=n)))
    out.append(_inversion_entry("boolean_group_2", build("boolean_group", k=2)))
    out.append(_inversion_entry("boolean_group_3", build("boolean_group", k=3)))
    out.append(_inversion_entry("odd_prime_product_2", build("odd_prime_product", k=2)))

    out.append(_ring_entry("rps_algebra", build("rps_algebra")))
    out.append(_ring_entry("cayley_dickson_3_1", build("cayley_dickson", p=3, level=1)))
    out.append(_ring_entry("twisted_pair_2_1_1", build("twisted_pair", p=2, v=1, w=1)))
    out.append(_ring_entry("twisted_pair_3_2_1", build("twisted_pair", p=3, v=2, w=1)))
    for params in ({"p": 2, "k": 2, "dim": 1}, {"p": 2, "k": 2, "dim": 2, "alpha": [[1, 2], [0, 1]]},
                   {"p": 3, "k": 2, "dim": 1}):
        item = build("frobenius_vector_space", **params)
        out.append(Entry(f"frobenius_vector_space_{params['p']}_{params['k']}_{params['dim']}", item.structure, item.pair))
    out.append(_field_entry(2, 2))
    out.append(_field_entry(2, 3))

    for seed in range(4):
        out.append(random_structure(seed))
    return tuple(out)


def entry(name: str) -> Entry:
    return next(e for e in corpus() if e.name == name)


# --- triples -----------------------------------------------------------------

def _field_ops(F: GaloisField) -> GroupWithOperators:
    labels = F.group.labels
    return validate_structure(F.group, {labels[c]: F.mul_table[c] for c in range(F.order)},
                              zero_op=labels[0], check_group=False)


def _scalar_triple(n: int, sigma_B, delta_B, sigma_C, delta_C, name: str):
    B, _ = cyclic_mult(n)
    act = {c: times(n, c) for c in range(n)}
    return make_triple(B, CyclicProductGroup([n]), act, act, sigma_B, delta_B, sigma_C, delta_C, name)


def phase1_triples() -> list:
    """Triples satisfying associativity of the actions and both twist conditions."""
    out = []
    n5 = lambda c: times(5, c)
    out.append(_scalar_triple(5, n5(1), n5(0), n5(1), n5(0), "f5_standard"))
    out.append(_scalar_triple(3, times(3, 1), times(3, 0), times(3, 1), times(3, 0), "f3_standard"))
    out.append(_scalar_triple(5, n5(1), n5(0), n5(2), n5(3), "f5_scaled_C"))
    out.append(_scalar_triple(5, n5(2), n5(4), n5(0), n5(1), "f5_twisted_B"))
    out.append(_scalar_triple(4, times(4, 1), times(4, 0), times(4, 3), times(4, 2), "z4_scaled_C"))
    out.append(build("frobenius_vector_space", p=2, k=2, dim=1).triple)
    return out


def broken_triples() -> list:
    """Triples with trivial annihilator whose twist conditions fail."""
    n5 = lambda c: times(5, c)
    out = [
        _scalar_triple(5, n5(2), n5(0), n5(1), n5(0), "f5_sigma_mismatch"),
        _scalar_triple(5, n5(1), n5(1), n5(1), n5(0), "f5_delta_mismatch"),
    ]
    F = GaloisField(2, 2)
    B = _field_ops(F)
    act = {F.group.label(c): F.mul_table[c] for c in range(F.order)}
    ident, zero = F.group.identity_map(), F.group.zero_map()
    out.append(make_triple(B, F.group, act, act, ident, zero, F.frobenius(), zero, "f4_frobenius_on_C_only"))
    return out
