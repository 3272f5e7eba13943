import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oreext.core import CyclicProductGroup, is_subgroup, stability_witness, sunitality_report, validate_structure
from oreext.errors import DegreeTooHigh, HypothesisNotMet
from oreext.gallery import build
from oreext.noetherian import (
    ChainWitness, NotApplicable, SlicedStableSubgroup, ascending_chain_witness, beta_projection,
    check_horrible_all, check_horrible_lemma, leading_coeff_subgroup, monomial_tables, slice_closure,
    slice_stability_witness, stable_span,
)
from oreext.ore import EndoPair, Poly

from corpus import cyclic_mult, entry, times


def P(*coeffs):
    return Poly.from_dense(list(coeffs), 0)


def test_beta_projection():
    assert beta_projection(P(3, 2), 1) == P(0, 2)
    assert beta_projection(P(), 0).is_zero()
    assert beta_projection(P(3, 2), 5).is_zero()


def test_stable_span_of_integers_mod_12():
    add = lambda x, y: (x + y) % 12
    assert stable_span([4], [lambda v: (3 * v) % 12], add, 0) == {0, 4, 8}
    assert stable_span([2], [lambda v: (3 * v) % 12], add, 0) == set(range(0, 12, 2))
    assert stable_span([], [], add, 0) == {0}


def test_monomial_tables_standard_pair_shifts():
    G, pair = cyclic_mult(5)
    # x^0 .. x^D are distinct shifts, x^(D+1) truncates to zero and repeats from there on
    assert len(monomial_tables(G, pair, 3)) == 5


def test_monomial_tables_periodic_twisted():
    G, pair = cyclic_mult(5, sigma=2, delta=0)
    # at D = 0 only pi^k_0 = delta^k matters: id then zero
    assert len(monomial_tables(G, pair, 0)) == 2


def test_slice_closure_zero_action():
    G = validate_structure(CyclicProductGroup([6]), {"z": [0] * 6})
    pair = EndoPair.standard(G.group)
    S = slice_closure(G, pair, [P(2)], 3)
    assert sorted(S.members) == [(0, 0, 0, 0), (2, 0, 0, 0), (4, 0, 0, 0)]


def test_slice_closure_full_degrees():
    G, pair = cyclic_mult(5)
    S = slice_closure(G, pair, [P(1)], 2)
    assert len(S) == 125


def test_slice_closure_empty_generators():
    G, pair = cyclic_mult(5)
    S = slice_closure(G, pair, [], 3)
    assert S.members == frozenset({(0, 0, 0, 0)})


def test_slice_closure_rejects_high_degree():
    G, pair = cyclic_mult(5)
    with pytest.raises(DegreeTooHigh):
        slice_closure(G, pair, [P(0, 0, 1)], 1)


def test_slice_stability_witness():
    G, pair = cyclic_mult(5, sigma=2, delta=3)
    S = slice_closure(G, pair, [P(0, 1)], 2)
    assert slice_stability_witness(G, pair, S) is None
    # the constants alone are not stable once delta is nonzero and D >= 1
    consts = SlicedStableSubgroup(1, [], 0, members_=frozenset((b, 0) for b in range(5)))
    assert slice_stability_witness(G, pair, consts) is not None


def test_box_membership_and_order():
    a = SlicedStableSubgroup(1, [], 0, box=(frozenset({0, 2}), frozenset({0})))
    b = SlicedStableSubgroup(1, [], 0, box=(frozenset({0, 2}), frozenset({0, 2})))
    assert len(a) == 2 and len(b) == 4
    assert a <= b and not b <= a
    assert (2, 2) in b and (2, 2) not in a
    assert b.members == frozenset({(0, 0), (0, 2), (2, 0), (2, 2)})


def test_leading_term_scalar_example():
    G, pair = cyclic_mult(5)
    r = check_horrible_lemma(G, pair, 1, 1, 1, 1)
    assert r.part_i and r.lhs == r.rhs == [0, 1, 2, 3, 4]
    assert r.hypothesis_ii and r.part_ii


def test_leading_term_zero_action():
    G, pair = cyclic_mult(3, scalars=[0])
    r = check_horrible_lemma(G, pair, 2, 1, 2, 3)
    assert r.part_i and r.lhs == r.rhs == [0]
    assert not r.hypothesis_ii and r.part_ii is None


def test_leading_term_inversion_part_ii_holds():
    e = entry("cyclic_inversion_3")
    for b, k in itertools.product((1, 2), range(4)):
        r = check_horrible_lemma(e.G, EndoPair.standard(e.G.group), b, 0, 0, k)
        assert r.hypothesis_ii and r.part_ii is True


def test_leading_term_all_independent_of_jobs():
    e = entry("twisted_pair_2_1_1")
    one = check_horrible_all(e.G, e.pair, 2, jobs=1)
    two = check_horrible_all(e.G, e.pair, 2, jobs=2)
    assert one.ok and one.to_dict() == two.to_dict()
    assert one.checked == 4 * 27


def test_chain_zero_action_z3():
    G, _ = cyclic_mult(3, scalars=[0])
    w = ascending_chain_witness(G, 5)
    assert isinstance(w, ChainWitness)
    d = w.to_dict()
    assert d["c"] == 1 and d["E"] == [0, 1, 2]
    assert d["links"] == [3, 9, 27, 81, 243]
    assert d["separators"] == [[[n, 1]] for n in range(5)]


def test_chain_nilpotent_z4():
    G = validate_structure(CyclicProductGroup([4]), {2: times(4, 2)})
    w = ascending_chain_witness(G, 8)
    assert w.to_dict()["links"] == [2 ** (n + 1) for n in range(8)]
    for small, big, sep in zip(w.links, w.links[1:], w.strict[1:]):
        assert small <= big and sep in big and sep not in small


def test_chain_not_applicable_on_inversion():
    assert isinstance(ascending_chain_witness(entry("cyclic_inversion_3").G), NotApplicable)
    odd = build("odd_prime_product", k=2)
    assert isinstance(ascending_chain_witness(odd.structure), NotApplicable)


def test_leading_coeff_examples():
    G, pair = cyclic_mult(5)
    assert leading_coeff_subgroup(G, pair, slice_closure(G, pair, [P(1)], 2)).members == tuple(range(5))
    assert leading_coeff_subgroup(G, pair, slice_closure(G, pair, [], 2)).members == (0,)
    G4, pair4 = cyclic_mult(4, scalars=[0, 1, 3])
    S = slice_closure(G4, pair4, [P(0, 2)], 3)
    assert leading_coeff_subgroup(G4, pair4, S).members == (0, 2)


def test_leading_coeff_rejects_non_surjective_sigma():
    G, pair = cyclic_mult(5, sigma=0)
    with pytest.raises(HypothesisNotMet) as exc:
        leading_coeff_subgroup(G, pair, slice_closure(G, pair, [P(1)], 1))
    assert exc.value.witness[0] == "sigma"


def test_leading_coeff_rejects_unstable_sigma():
    g = CyclicProductGroup([2, 2])
    G = validate_structure(g, {"proj": [0, 0, 2, 2]})
    pair = EndoPair([0, 2, 1, 3], g.zero_map())
    with pytest.raises(HypothesisNotMet, match="A-stable"):
        leading_coeff_subgroup(G, pair, slice_closure(G, pair, [P(1)], 1))


# --- properties ---------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_truncation_exactness(seed):
    rng = random.Random(seed)
    n = rng.choice([3, 4, 5])
    G, pair = cyclic_mult(n, scalars=rng.sample(range(n), 2), sigma=rng.randrange(n), delta=rng.randrange(n))
    gens = [P(*[rng.randrange(n) for _ in range(2)]) for _ in range(rng.randint(1, 2))]
    low = slice_closure(G, pair, gens, 1)
    high = slice_closure(G, pair, gens, 3)
    assert {v[:2] for v in high.members} == set(low.members)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_leading_coeffs_form_stable_subgroup(seed):
    rng = random.Random(seed)
    n = rng.choice([5, 7])
    G, pair = cyclic_mult(n, sigma=rng.randrange(1, n), delta=rng.randrange(n))
    gens = [P(*[rng.randrange(n) for _ in range(3)]) for _ in range(rng.randint(1, 3))]
    Q = leading_coeff_subgroup(G, pair, slice_closure(G, pair, gens, 2))
    assert is_subgroup(G.group, Q.members)
    assert stability_witness(G, Q.members) is None


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([2, 3, 4, 6, 8, 9]), st.lists(st.integers(0, 8), min_size=1, max_size=2, unique=True))
def test_chain_exists_iff_not_weakly_sunital(n, scalars):
    G = validate_structure(CyclicProductGroup([n]), {c: times(n, c % n) for c in scalars})
    w = ascending_chain_witness(G, 3)
    assert isinstance(w, NotApplicable) == sunitality_report(G).weakly_s_unital
