import pytest

from oreext.errors import BadParams, ClaimFailed, UnknownId
from oreext.gallery import CATALOG, Claim, build, verify_all
from oreext.noetherian import NotApplicable, ascending_chain_witness
from oreext.core import sunitality_report


DEFAULT_BUILDS = [
    ("cyclic_inversion", {"n": 2}),
    ("cyclic_inversion", {"n": 3}),
    ("cyclic_inversion", {"n": 6}),
    ("boolean_group", {"k": 2}),
    ("odd_prime_product", {"k": 2}),
    ("odd_prime_product", {"k": 3}),
    ("rps_algebra", {}),
    ("cayley_dickson", {"p": 3, "level": 1}),
    ("cayley_dickson", {"p": 3, "level": 2}),
    ("cayley_dickson", {"p": 3, "level": 3}),
    ("twisted_pair", {"p": 2, "v": 1, "w": 1}),
    ("twisted_pair", {"p": 3, "v": 1, "w": 2}),
    ("frobenius_vector_space", {}),
    ("frobenius_vector_space", {"p": 3, "k": 2, "dim": 1}),
]


@pytest.mark.parametrize("gid,params", DEFAULT_BUILDS, ids=lambda v: str(v))
def test_every_claim_passes(gid, params):
    item = build(gid, **params)
    rep = verify_all(item)
    assert rep.results and all(r.ok for r in rep.results)


def test_catalog_ids():
    assert sorted(CATALOG) == ["boolean_group", "cayley_dickson", "cyclic_inversion", "frobenius_vector_space",
                               "odd_prime_product", "rps_algebra", "twisted_pair"]


def test_rps_labels_and_claims():
    item = build("rps_algebra")
    assert item.ring.group.labels == ("0", "R", "P", "R+P", "S", "R+S", "P+S", "R+P+S")
    claims = {c.name: c.expected for c in item.claims}
    assert claims["boolean"] is True and claims["s_unital"] is True
    assert claims["left_unital"] is False and claims["associative"] is False


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_cyclic_inversion_dichotomy(n):
    G = build("cyclic_inversion", n=n).structure
    rep = sunitality_report(G)
    assert rep.weakly_s_unital
    assert rep.s_unital == (n <= 2)
    assert isinstance(ascending_chain_witness(G), NotApplicable)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_odd_prime_product_dichotomy(k):
    G = build("odd_prime_product", k=k).structure
    rep = sunitality_report(G)
    assert rep.weakly_s_unital and not rep.s_unital


def test_verify_raises_on_wrong_expectation():
    item = build("cyclic_inversion", n=3)
    item.claims.append(Claim("s_unital_wrong", True, "deliberately wrong", item.claims[0].check))
    with pytest.raises(ClaimFailed) as exc:
        verify_all(item)
    assert exc.value.claim == "s_unital_wrong"
    assert exc.value.witness == (1,)


def test_unknown_id_and_bad_params():
    with pytest.raises(UnknownId):
        build("nonexistent")
    with pytest.raises(BadParams):
        build("cyclic_inversion", n=0)
    with pytest.raises(BadParams):
        build("cyclic_inversion", m=3)
    with pytest.raises(BadParams):
        build("cayley_dickson", p=4)
    with pytest.raises(BadParams):
        build("frobenius_vector_space", alpha=[[1, 2]])
