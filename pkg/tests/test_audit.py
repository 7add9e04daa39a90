import json
from dataclasses import replace

import pytest

from ryserlab.audit import (STATEMENTS, CatalogEntry, SolverOracleMismatch, audit_lemma,
                            enumerated_catalog, instance_facts, planes_catalog, random_catalog,
                            reverify, search_fl, uniform_catalog, verify_theorem1)
from ryserlab.canon import canonical_form
from ryserlab.cliquerep import Budget
from ryserlab.constructions import triangle
from ryserlab.invariants import tau_exact
from ryserlab.lsformat import parse
from ryserlab.oracles import tau_oracle
from ryserlab.parallel import Workers
from ryserlab.system import LinearSystem


def test_l3_confirmed_on_fano(fano):
    rep = audit_lemma("L3", [CatalogEntry("fano", fano)], "fano")
    assert (rep.instances_checked, rep.confirmed, rep.counterexamples) == (1, 1, [])
    f = instance_facts(CatalogEntry("fano", fano))
    assert (f.tau, f.nu2, f.r) == (3, 4, 3)


def test_statement_outside_domain_is_filtered(fano):
    rep = audit_lemma("L4", [CatalogEntry("fano", fano)])
    assert rep.filtered_out == 1 and rep.instances_checked == 0


def test_l4_on_two_uniform_systems():
    k3 = LinearSystem(3, [[0, 1], [0, 2], [1, 2]])
    star = LinearSystem(4, [[0, 1], [0, 2], [0, 3]])
    rep = audit_lemma("L4", [CatalogEntry("k3", k3), CatalogEntry("star", star)])
    # K_3 has nu2 = 3 and tau = 2; the star has nu2 = 2 so it is vacuous
    assert (rep.confirmed, rep.vacuous, len(rep.counterexamples)) == (1, 1, 0)


def test_unknown_statement():
    with pytest.raises(KeyError):
        audit_lemma("L99", [])


def test_reports_are_consistent_and_serialisable():
    cat = enumerated_catalog(5, [3, 4]) + planes_catalog((2, 3))
    for ident in STATEMENTS:
        rep = audit_lemma(ident, cat, "small")
        assert rep.consistent()
        assert rep.filtered_out + rep.instances_checked == len(cat)
        text = rep.to_text()
        blob = text.split("--- machine-readable ---\n", 1)[1]
        assert json.loads(blob) == rep.to_dict()


def test_t2_over_small_random_catalog():
    cat = random_catalog(300, 4)
    rep = audit_lemma("T2", cat, "random")
    assert rep.counterexamples == [] and rep.consistent()


def test_uniform_catalog_contains_non_partite_counterexample():
    # the complete graph K_5 as five 4-point lines (2-cliques padded) breaks the
    # r-uniform form of the tau = r - 1 statement; the r-partite form survives
    cat = uniform_catalog(5, [4])
    rep = audit_lemma("L6", cat)
    assert len(rep.counterexamples) == 1
    cx = rep.counterexamples[0]
    assert cx["facts"]["tau"] == 3 and cx["facts"]["nu2"] == 5 and cx["facts"]["partite"] is False
    assert audit_lemma("L6P", cat).counterexamples == []


def test_reverify_detects_mismatch(fano):
    entry = CatalogEntry("fano", fano)
    f = instance_facts(entry)
    assert reverify(entry, f) == "oracle"
    with pytest.raises(SolverOracleMismatch):
        reverify(entry, replace(f, tau=2))


def test_reverify_dual_for_large_planes():
    entry = planes_catalog((5,))[0]
    f = instance_facts(entry)
    assert reverify(entry, f) == "dual"


def test_search_fl_small():
    assert search_fl(2, 2).value == 1
    res = search_fl(3, 4)
    assert (res.status, res.value) == ("exact", 3)
    assert canonical_form(res.witness) == canonical_form(triangle())


def test_search_fl_four():
    res = search_fl(4, 7)
    assert (res.status, res.value) == ("exact", 6)
    assert tau_exact(res.witness).value == tau_oracle(res.witness) == 3
    assert res.witness_sides.check(res.witness)
    assert res.witness_cert.value == 3


def test_search_fl_lower_bound_only():
    res = search_fl(4, 5)
    assert res.status == "lower_bound_only" and res.value is None and res.bound == 6


def test_search_fl_budget():
    res = search_fl(4, 7, budget=Budget(max_nodes=20))
    assert res.status == "budget_exhausted"
    assert "max_nodes" in res.to_dict()["budget"]


def test_verify_theorem1_rejects_odd_and_small():
    with pytest.raises(ValueError):
        verify_theorem1(5)
    with pytest.raises(ValueError):
        verify_theorem1(2)


def test_verify_theorem1_four_finds_counterexample():
    rep = verify_theorem1(4)
    assert rep.status == "complete" and len(rep.counterexamples) == 1
    cx = rep.counterexamples[0]
    assert cx["facts"]["lines"] == 6 and cx["facts"]["tau"] == 3
    doc = parse(cx["system"])
    assert doc.sides.check(doc.sys) and tau_oracle(doc.sys) == 3


def test_verify_theorem1_budget():
    rep = verify_theorem1(6, budget=Budget(max_nodes=100))
    assert rep.status == "budget_exhausted" and rep.notes


def test_budget_exhausted_report_renders():
    res = search_fl(4, 7, budget=Budget(max_nodes=20))
    text = res.to_text()
    assert "incomplete" in text and "budget_exhausted" in text


def test_verify_theorem1_six_completes_without_counterexample():
    # every intersecting 6-partite linear system with at most 12 lines has tau <= 4
    rep = verify_theorem1(6)
    assert rep.status == "complete" and rep.counterexamples == []
    assert rep.instances_checked == 1079


def test_search_fl_six_is_thirteen():
    with Workers(4) as w:
        res = search_fl(6, 13, workers=w)
    assert (res.status, res.value) == ("exact", 13)
    assert res.witness_sides.check(res.witness) and res.witness.num_lines == 13
    assert res.witness_check == "tau_rep + tau_exact"
    assert [row["m"] for row in res.exhaustion_log if row["complete"]] == list(range(1, 14))
