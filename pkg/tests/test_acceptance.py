"""Acceptance criteria 1-10.

Each criterion is a plain function that raises on failure and is timed against
its budget.  Under pytest every criterion is one test and a summary line per
criterion is printed at the end of the session (see conftest.py); run the file
directly to print the same lines without pytest.
"""

from __future__ import annotations

import io
import json
import random
import sys
import time
from pathlib import Path

import pytest

from oreext.cli import run
from oreext.core import (
    CyclicProductGroup, GroupHom, a_stable_witness, is_subgroup, stability_witness, sunitality_report,
)
from oreext.files import dump_gwo, dump_triple, dumps, to_json
from oreext.gallery import CATALOG, build, verify_all
from oreext.noetherian import (
    ChainWitness, NotApplicable, ascending_chain_witness, check_horrible_all, leading_coeff_subgroup,
    slice_closure,
)
from oreext.ore import (
    EndoPair, PiTable, Poly, check_leibniz_mixed, check_triple_associativity, check_vandermonde,
    pi_bruteforce, twist_predicates,
)

sys.path.insert(0, str(Path(__file__).parent))
from corpus import RANDOM_GROUPS, broken_triples, corpus, phase1_triples, random_endomorphism  # noqa: E402

RESULTS: dict[int, tuple[bool, str]] = {}


def timed(budget_s: float):
    """Run the check, then fail if it overran ``budget_s``."""
    def wrap(fn):
        def inner():
            start = time.perf_counter()
            detail = fn()
            elapsed = time.perf_counter() - start
            assert elapsed < budget_s, f"took {elapsed:.1f} s, budget {budget_s} s"
            return f"{detail}; {elapsed:.2f} s of {budget_s} s"
        inner.__name__ = fn.__name__
        inner.__doc__ = fn.__doc__
        return inner
    return wrap


# --- criteria -------------------------------------------------------------------

@timed(5)
def pi_dp_matches_bruteforce():
    """DP pi-tables equal brute-force word sums for 5 random pairs, i <= 8."""
    rng = random.Random(2024)
    compared = 0
    for trial in range(5):
        moduli = RANDOM_GROUPS[rng.randrange(len(RANDOM_GROUPS))]
        g = CyclicProductGroup(moduli)
        assert g.order <= 16
        pair = EndoPair.checked(g, random_endomorphism(g, rng), random_endomorphism(g, rng))
        table = PiTable(g, pair)
        for i in range(9):
            for j in range(i + 1):
                assert table(i, j).tolist() == pi_bruteforce(g, pair, i, j).tolist(), (moduli, i, j)
                compared += 1
    return f"{compared} maps compared"


def _covers_gallery(entries) -> None:
    ids = {gid for gid in CATALOG if any(e.name.startswith(gid) for e in entries)}
    assert ids == set(CATALOG), f"missing gallery ids: {set(CATALOG) - ids}"


@timed(10)
def vandermonde_on_corpus():
    """Vandermonde and one-shift identities, indices <= 4, on the whole corpus."""
    entries = corpus()
    assert len(entries) >= 20
    _covers_gallery(entries)
    for e in entries:
        rep = check_vandermonde(e.G.group, e.pair, 4)
        assert rep.ok, (e.name, rep.to_dict())
    return f"{len(entries)} structures"


@timed(10)
def leibniz_where_twists_hold():
    """Leibniz and mixed identities, indices <= 3, wherever the twist predicates pass."""
    checked = []
    for e in corpus():
        if not e.pair.has_companions or not twist_predicates(e.G, e.pair).ok:
            continue
        rep = check_leibniz_mixed(e.G, e.pair, 3)
        assert rep.ok, (e.name, rep.to_dict())
        checked.append(e.name)
    assert any(n.startswith("frobenius") for n in checked)
    return f"{len(checked)} structures"


@timed(60)
def triple_associativity():
    """Phase-2 exhaustive at degree 2 on valid triples; degree-1 counterexamples on broken ones."""
    good = phase1_triples()
    assert len(good) >= 5
    for t in good:
        assert max(len(t.B.ops), t.B.group.order, t.C_A.group.order) <= 5, t.name
        rep = check_triple_associativity(t, 2)
        assert rep.phase1_ok, (t.name, rep.to_dict())
        assert rep.phase2_mode == "exhaustive" and rep.phase2_ok, (t.name, rep.to_dict())
    bad = broken_triples()
    assert len(bad) >= 3
    for t in bad:
        rep = check_triple_associativity(t, 1)
        assert rep.annihilator_trivial and not rep.phase1_ok, t.name
        alpha, beta, gamma = rep.converse_witness
        assert max(len(alpha), len(beta), len(gamma)) <= 2, t.name
    return f"{len(good)} valid triples, {len(bad)} broken triples"


@timed(1)
def inversion_dichotomy():
    """Inversion is weakly s-unital on each group and s-unital exactly on the Boolean ones."""
    cases = [(build("cyclic_inversion", n=n).structure, n == 2) for n in (2, 3, 4, 6)]
    cases.append((build("boolean_group", k=2).structure, True))
    for G, boolean in cases:
        rep = sunitality_report(G)
        assert rep.weakly_s_unital
        assert rep.s_unital == boolean, G
    return f"{len(cases)} groups"


@timed(5)
def chain_iff_not_weakly_sunital():
    """A strict chain of length 8 exists exactly when the action is not weakly s-unital."""
    chains = 0
    for e in corpus():
        weak = sunitality_report(e.G).weakly_s_unital
        w = ascending_chain_witness(e.G, 8)
        if weak:
            assert isinstance(w, NotApplicable), e.name
            continue
        assert isinstance(w, ChainWitness), e.name
        chains += 1
        assert len(w.links) == 8
        for n, (link, sep) in enumerate(zip(w.links, w.strict)):
            assert sep in link
            if n:
                assert w.links[n - 1] <= link and sep not in w.links[n - 1]
    assert chains >= 3
    return f"{chains} chains, {len(corpus()) - chains} not applicable"


@timed(30)
def leading_term_lemma():
    """Both parts of the leading-term lemma for all b and i, j, k <= 3."""
    total = 0
    for e in corpus():
        s = check_horrible_all(e.G, e.pair, 3)
        assert s.part_i_ok, (e.name, s.to_dict())
        if sunitality_report(e.G).weakly_s_unital:
            assert s.part_ii_ok and s.part_ii_checked == s.checked, (e.name, s.to_dict())
        total += s.checked
    return f"{total} cases"


def _meets_hypotheses(e) -> bool:
    sigma = e.pair.sigma
    return (len(set(sigma.tolist())) == e.G.group.order
            and a_stable_witness(GroupHom(e.G, e.G, sigma)) is None
            and sunitality_report(e.G).weakly_s_unital)


@timed(30)
def leading_coefficients_stable():
    """Q is an A-stable subgroup for slices from 1, 2 and 3 generators at D = 4."""
    rng = random.Random(7)
    eligible = [e for e in corpus() if _meets_hypotheses(e)]
    assert len(eligible) >= 10
    slices = 0
    for e in eligible:
        n = e.G.group.order
        for count in (1, 2, 3):
            gens = [Poly.from_dense([rng.randrange(n) for _ in range(5)], e.G.group.zero) for _ in range(count)]
            Q = leading_coeff_subgroup(e.G, e.pair, slice_closure(e.G, e.pair, gens, 4))
            assert is_subgroup(e.G.group, Q.members), e.name
            assert stability_witness(e.G, Q.members) is None, e.name
            slices += 1
    return f"{slices} slices on {len(eligible)} structures"


@timed(60)
def gallery_claims():
    """Every claim on the named gallery items, plus the explicit dichotomies."""
    items = [build("rps_algebra"), build("twisted_pair", p=2, v=1, w=1)]
    items += [build("cayley_dickson", p=3, level=lv) for lv in (1, 2, 3)]
    items += [build("cyclic_inversion", n=n) for n in (2, 3, 4, 6)]
    items += [build("odd_prime_product", k=k) for k in (1, 2, 3)]
    claims = 0
    for item in items:
        rep = verify_all(item)
        claims += len(rep.results)
    got = {r.name: r.actual for r in verify_all(items[0]).results}
    assert got["boolean"] and got["s_unital"] and not got["left_unital"] and not got["associative"]
    tp = {r.name: r.actual for r in verify_all(items[1]).results}
    assert tp["adjoint_derivation"] and tp["right_ideal_chain_strict"]
    for lv, item in zip((1, 2, 3), items[2:5]):
        d = item.structure.distributivity()
        assert d.left and d.right, lv
        assert (item.structure.associator_witness() is None) == (lv <= 2), lv
    return f"{claims} claims on {len(items)} items"


def _emit_inputs(root: Path) -> list[list[str]]:
    """Structure files covering the corpus and gallery, with the commands to run on them."""
    cmds = []
    for e in corpus():
        p = root / f"{e.name}.json"
        p.write_text(dumps(dump_gwo(e.G, e.pair, e.name)))
        some = json.dumps([to_json(e.G.label(e.G.group.order - 1))])
        for c in (["validate"], ["sunital"], ["identities", "--max-index", "3"], ["chain"],
                  ["horrible", "--max-index", "2"], ["closure", "--set", some, "--mode", "bracket"]):
            cmds.append([c[0], str(p), *c[1:]])
    for t in phase1_triples() + broken_triples():
        p = root / f"triple_{t.name}.json"
        p.write_text(dumps(dump_triple(t)))
        cmds.append(["assoc", str(p), "--max-degree", "1"])
    cmds.append(["assoc", str(root / "triple_f3_standard.json"), "--max-degree", "2"])
    cmds.append(["assoc", str(root / "triple_f5_standard.json"), "--max-degree", "2", "--budget", "20000"])
    for gid, params in [("rps_algebra", []), ("twisted_pair", []), ("cayley_dickson", ["level=2"]),
                        ("cayley_dickson", ["level=3"])]:
        p = root / f"gallery_{gid}_{'_'.join(params)}.json"
        run(["gallery", "emit", gid, *params, "--out", str(p)], out=io.StringIO())
        cmds.append(["ring-report", str(p)])
    cmds.append(["ideal-chain", str(root / "gallery_twisted_pair_.json")])
    for gid in CATALOG:
        cmds.append(["gallery", "verify", gid])
    return cmds


def _run_bytes(cmd: list[str], jobs: int) -> bytes:
    buf = io.StringIO()
    run(["--format", "json", "--jobs", str(jobs), *cmd], out=buf)
    return buf.getvalue().encode()


def reports_independent_of_jobs(tmp_dir: Path):
    """Every CLI report is byte-identical between --jobs 1 and --jobs 8."""
    cmds = _emit_inputs(tmp_dir)
    for cmd in cmds:
        one, eight = _run_bytes(cmd, 1), _run_bytes(cmd, 8)
        assert one == eight, cmd
        assert json.loads(one)["verdict"] != "error", (cmd, one[:400])
    return f"{len(cmds)} reports"


CRITERIA = {
    1: ("pi-map DP equals brute force", pi_dp_matches_bruteforce),
    2: ("Vandermonde and one-shift on the corpus", vandermonde_on_corpus),
    3: ("Leibniz and mixed under the twist predicates", leibniz_where_twists_hold),
    4: ("triple associativity and degree-1 counterexamples", triple_associativity),
    5: ("inversion action s-unitality dichotomy", inversion_dichotomy),
    6: ("ascending chain exactly when not weakly s-unital", chain_iff_not_weakly_sunital),
    7: ("leading-term lemma parts (i) and (ii)", leading_term_lemma),
    8: ("leading-coefficient subgroup is A-stable", leading_coefficients_stable),
    9: ("gallery claims", gallery_claims),
    10: ("reports identical across --jobs 1 and --jobs 8", reports_independent_of_jobs),
}


def _record(n: int, fn, *args) -> None:
    try:
        detail = fn(*args)
    except BaseException as e:
        RESULTS[n] = (False, f"{type(e).__name__}: {e}"[:300])
        raise
    RESULTS[n] = (True, detail)


def summary_lines() -> list[str]:
    lines = []
    for n, (title, _) in CRITERIA.items():
        if n in RESULTS:
            ok, detail = RESULTS[n]
            lines.append(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}  ({detail})")
    return lines


@pytest.mark.parametrize("n", [n for n in CRITERIA if n != 10])
def test_criterion(n):
    _record(n, CRITERIA[n][1])


def test_criterion_10(tmp_path):
    _record(10, reports_independent_of_jobs, tmp_path)


if __name__ == "__main__":
    import tempfile

    failed = False
    for n, (title, fn) in CRITERIA.items():
        try:
            if n == 10:
                with tempfile.TemporaryDirectory() as d:
                    _record(n, fn, Path(d))
            else:
                _record(n, fn)
        except BaseException:
            failed = True
        print(summary_lines()[-1], flush=True)
    sys.exit(1 if failed else 0)
