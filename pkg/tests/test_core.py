import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oreext.core import (
    CyclicProductGroup, GroupHom, bracket, coset_projection, direct_product, generated,
    hom_predicates, kernel_chain_analysis, make_group, quotient, stable_closure,
    sunitality_report, validate_structure,
)
from oreext.errors import BadZeroOperator, NotAdditive, NotAGroup, NotEndomorphism, NotStable

from corpus import cyclic_mult, scalar_action


def z4_times2():
    return validate_structure(CyclicProductGroup([4]), {2: [0, 2, 0, 2]})


def test_cyclic_product_labels_and_arithmetic():
    g = CyclicProductGroup([2, 3])
    assert g.order == 6
    assert g.labels[:3] == ((0, 0), (0, 1), (0, 2))
    a, b = g.index((1, 2)), g.index((1, 2))
    assert g.label(g.add(a, b)) == (0, 1)
    assert g.label(g.neg(g.index((0, 1)))) == (0, 2)
    assert g.label(g.multiple(4, g.index((1, 1)))) == (0, 1)


def test_make_group_rejects_non_associative_table():
    # a loop of order 5 whose addition is commutative but not associative
    els = list(range(5))
    add = [[0, 1, 2, 3, 4],
           [1, 0, 3, 4, 2],
           [2, 3, 0, 4, 1],
           [3, 4, 1, 0, 2],
           [4, 2, 3, 1, 0]]
    with pytest.raises(NotAGroup):
        make_group(els, add, els, 0)


def test_make_group_accepts_klein_table():
    els = ["e", "a", "b", "c"]
    xor = [[els[i ^ j] for j in range(4)] for i in range(4)]
    g = make_group(els, xor, els, "e")
    assert g.order == 4
    assert g.label(g.add(g.index("a"), g.index("b"))) == "c"


def test_validate_structure_adjoins_zero_operator():
    G = validate_structure(CyclicProductGroup([3]), {"neg": [0, 2, 1]})
    assert G.ops.labels == ("neg", "eps")
    assert G.ops.zero == 1


def test_validate_structure_rejects_non_endomorphism():
    with pytest.raises(NotEndomorphism) as exc:
        validate_structure(CyclicProductGroup([3]), {"f": [0, 2, 2]})
    assert exc.value.witness[0] == "f"


def test_validate_structure_rejects_bad_zero_operator():
    with pytest.raises(BadZeroOperator):
        validate_structure(CyclicProductGroup([3]), {"z": [0, 1, 2]}, zero_op="z")


def test_closures_on_z4_times2():
    G = z4_times2()
    assert stable_closure(G, [1]) == frozenset({0, 1, 2})
    assert generated(G, [1]).members == (0, 1, 2, 3)
    assert bracket(G, [1]).members == (0, 2)
    assert bracket(G, [2]).members == (0,)


def test_sunitality_on_z4_times2():
    r = sunitality_report(z4_times2())
    assert not r.s_unital and not r.weakly_s_unital
    assert r.s_unital_witness == (1,)
    assert r.weakly_s_unital_witness == (1,)
    assert r.subsets_checked == 15


def test_sunitality_scalar_multiplication_is_unital():
    G, _ = cyclic_mult(7)
    r = sunitality_report(G)
    assert r.s_unital and r.weakly_s_unital


def test_weak_but_not_strong():
    # inversion on Z/3: b = -(-b) lies in the bracket, yet no single operator fixes 1
    G = validate_structure(CyclicProductGroup([3]), {"inv": [0, 2, 1]})
    r = sunitality_report(G)
    assert r.weakly_s_unital and not r.s_unital
    assert r.s_unital_witness == (1,)


def test_quotient_and_projection():
    G = validate_structure(CyclicProductGroup([6]), scalar_action(6, [0, 5]))
    proj, reps = coset_projection(G, [0, 3])
    assert reps == [0, 1, 2]
    assert proj.tolist() == [0, 1, 2, 0, 1, 2]
    Q = quotient(G, [0, 3])
    assert Q.group.order == 3
    assert list(Q.group.labels) == [0, 1, 2]
    assert Q.act(Q.ops.index(5), 1) == 2


def test_quotient_rejects_unstable_subgroup():
    G = validate_structure(CyclicProductGroup([2, 2]), {"swap": [0, 2, 1, 3]})
    with pytest.raises(NotStable):
        quotient(G, [0, 1])


def test_direct_product_acts_componentwise():
    G3 = validate_structure(CyclicProductGroup([3]), {"inv": [0, 2, 1]})
    P = direct_product([G3, G3])
    assert P.group.order == 9
    b = P.group.index((1, 2))
    assert P.label(P.act(P.ops.index("inv"), b)) == (2, 1)


def test_hom_predicates_and_witnesses():
    G = validate_structure(CyclicProductGroup([4]), scalar_action(4, [0, 1, 3]))
    double = np.array([0, 2, 0, 2])
    rep = hom_predicates(GroupHom(G, G, double), tau=np.arange(3))
    assert rep.additive and rep.A_stable and rep.tau_twisted
    bad = np.array([0, 1, 1, 3])
    rep = hom_predicates(GroupHom(G, G, bad))
    assert not rep.additive and "additive" in rep.witnesses


def test_kernel_chain_nilpotent():
    G = validate_structure(CyclicProductGroup([8]), scalar_action(8, [0, 1]))
    rep = kernel_chain_analysis(G, np.array([(2 * b) % 8 for b in range(8)]))
    assert rep.n_stable == 3
    assert [k.members for k in rep.kernels] == [(0, 4), (0, 2, 4, 6), tuple(range(8))]
    assert not rep.surjective


def test_kernel_chain_automorphism():
    G = validate_structure(CyclicProductGroup([5]), scalar_action(5, [0, 1]))
    rep = kernel_chain_analysis(G, np.array([(2 * b) % 5 for b in range(5)]))
    assert rep.surjective and rep.bijective_if_surjective
    assert rep.n_stable == 1


def test_kernel_chain_rejects_non_additive():
    G = validate_structure(CyclicProductGroup([4]), scalar_action(4, [0, 1]))
    with pytest.raises(NotAdditive):
        kernel_chain_analysis(G, np.array([0, 1, 1, 3]))


# --- properties ---------------------------------------------------------------

moduli = st.lists(st.sampled_from([2, 3, 4, 5]), min_size=1, max_size=2)


@st.composite
def structures(draw):
    g = CyclicProductGroup(draw(moduli))
    # multiplications by integers are always endomorphisms
    scalars = draw(st.lists(st.integers(0, 6), min_size=1, max_size=3, unique=True))
    action = {c: [g.multiple(c, b) for b in g.elements()] for c in scalars}
    return validate_structure(g, action, check_group=False)


@settings(max_examples=40, deadline=None)
@given(structures(), st.data())
def test_closure_inclusions(G, data):
    S = data.draw(st.lists(st.integers(0, G.group.order - 1), min_size=1, max_size=3))
    closure = stable_closure(G, S)
    full = generated(G, S).as_set
    inner = bracket(G, S).as_set
    assert set(S) <= closure <= full
    assert inner <= full
    # both are A-stable subgroups
    for H in (full, inner):
        assert all(G.act(a, b) in H for a in range(len(G.ops)) for b in H)
        assert all(G.group.add(x, y) in H for x, y in itertools.product(H, H))


@settings(max_examples=40, deadline=None)
@given(structures())
def test_weak_sunitality_matches_bracket_equality(G):
    # sunitality_report raises internally if the two characterisations disagree
    r = sunitality_report(G)
    if r.s_unital:
        assert r.weakly_s_unital
