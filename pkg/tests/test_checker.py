"""The exhaustive convergence checker: verdicts, witnesses, reports."""

import json

import pytest

from otcomp import kernel
from otcomp.bounds import DEFAULT_BOUNDS
from otcomp.cells import cchar
from otcomp.checker import (check_consistency, check_cp1, check_cp1_restricted,
                            check_cp2, check_cp2_restricted)
from otcomp.errors import BoundsExceeded, NotDisjoint
from otcomp.registry import build
from otcomp.values import Method, value_from_json

B = DEFAULT_BOUNDS


def test_pair_condition_passes_on_a_convergent_component():
    rep = check_cp1(cchar())
    assert rep.verdict == "pass"
    assert rep.cases > 0 and not rep.witnesses


def test_triple_condition_passes_on_a_convergent_component():
    rep = check_cp2(cchar())
    assert rep.verdict == "pass"
    assert rep.cases > 0 and not rep.witnesses


def test_failing_pair_condition_produces_replayable_witnesses():
    b = B.with_(universe=1)
    c = build("set-literal", b)
    rep = check_cp1(c, b)
    assert rep.verdict == "fail" and rep.witnesses
    for w in rep.witnesses:
        st = value_from_json(w["state"])
        m1, m2 = (value_from_json(m) for m in w["methods"])
        seq1 = [m1, kernel.transform(c, m2, m1)]
        seq2 = [m2, kernel.transform(c, m1, m2)]
        assert kernel.legal(c, seq1, st) and kernel.legal(c, seq2, st)
        assert kernel.apply_seq(c, seq1, st) == value_from_json(w["left"])
        assert kernel.apply_seq(c, seq2, st) == value_from_json(w["right"])
        assert w["left"] != w["right"]


def test_reports_are_deterministic():
    b = B.with_(universe=1)
    c = build("set-literal", b)
    r1 = check_cp1(c, b).to_json(mask_elapsed=True)
    r2 = check_cp1(c, b).to_json(mask_elapsed=True)
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)


def test_empty_method_subset_makes_the_check_vacuous():
    c = cchar()
    rep = check_cp1_restricted(c, [], lambda m: True)
    assert rep.verdict == "vacuous" and rep.cases == 0


def test_overlapping_subsets_are_rejected():
    c = cchar()
    put = Method("putchar", ("a",))
    with pytest.raises(NotDisjoint):
        check_cp1_restricted(c, [put], [put])
    with pytest.raises(NotDisjoint):
        check_cp2_restricted(c, [put], [put])


def test_case_ceiling_is_enforced():
    with pytest.raises(BoundsExceeded):
        check_cp1(cchar(), B.with_(max_cases=10))


def test_same_site_pairs_are_not_counted_as_concurrent():
    b = B.with_(universe=2, max_len=2, sites=1)
    c = build("string", b)
    rep = check_cp1(c, b)
    # With one site every proper pair is sequential; only pairs with a nop
    # survive the concurrency filter.
    methods = c.enum_methods(b)
    proper = [m for m in methods if m.ctor != "nop"]
    surviving = len(methods) ** 2 - len(proper) ** 2
    assert rep.examined == len(c.enum_states(b)) * surviving


def test_composed_component_report_has_six_parts():
    rep = check_consistency(build("set-guarded[cchar]"))
    names = [p.property for p in rep.parts]
    assert names == ["CP1-updates", "CP1-container", "CP1-cross",
                     "CP2-updates", "CP2-container", "CP2-cross"]
    assert rep.verdict == "pass"


def test_plain_component_report_has_two_parts():
    rep = check_consistency(cchar())
    assert [p.property for p in rep.parts] == ["CP1", "CP2"]
    assert rep.verdict == "pass"


def test_unrealizable_triples_are_reported_but_do_not_fail():
    """Method triples that violate the identity yet cannot all be legal from
    any one state are kept out of the witness list."""
    c = build("set-guarded[cchar]")
    rep = check_consistency(c)
    assert rep.verdict == "pass"
    assert rep.unrealizable  # the value-addressed collisions land here
    data = rep.to_json(mask_elapsed=True)
    assert "unrealizable" in data
    for w in rep.unrealizable[:5]:
        assert w["realizable"] is False


def test_aggregate_fails_when_any_part_fails():
    b = B.with_(universe=1)
    rep = check_consistency(build("set-literal", b), b)
    assert rep.verdict == "fail"
    assert any(p.verdict == "fail" for p in rep.parts)
    assert all(w["part"] for w in rep.witnesses)


def test_masked_reports_have_zero_elapsed():
    data = check_cp1(cchar()).to_json(mask_elapsed=True)
    assert data["elapsed_ms"] == 0.0
