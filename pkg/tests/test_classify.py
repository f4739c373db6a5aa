import pytest

from dqdlab.algebra import direct_product
from dqdlab.catalog import catalog_get, catalog_names
from dqdlab.classify import (
    CLASSES,
    IDENTITIES,
    PREDICATES,
    UnknownSuite,
    check_predicate,
    check_suite,
    classify,
    evaluate,
    in_class,
    level_of,
    levels,
)
from dqdlab.terms import satisfies, satisfies_condition

CATALOG = [catalog_get(n) for n in catalog_names(6)]

# frozen key facts per catalog algebra, computed once by classify and checked by hand on the tables
FROZEN = {
    "d1": dict(DQD=True, DM=True, Bo=True, H=False, JID=True, Lev1=True, SC=True),
    "d2": dict(DQD=True, DM=True, Bo=True, H=True, JID=True, Lev1=True, SC=True, DSt=False),
    "d3": dict(DQD=True, DM=True, Bo=True, H=False, JID=True, Lev1=True),
    "six": dict(DQD=True, JID=True, Lev1=False, Lev2=True, SC=False, DSt=False, H=True),
    "eight": dict(DQD=True, DPC=True, EightId=True, Lev1=False, Lev2=True, JID=False),
    "cdp-3": dict(DSt=True, H=True, Chain=True, Lev1=True, DM=False, C2=False, C3=True),
    "two-e": dict(DQD=True, DSt=True, H=False, Chain=True, L=False),
}


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_catalog_profiles(name):
    p = classify(catalog_get(name))
    for key, want in FROZEN[name].items():
        assert p[key] is want, key


@pytest.mark.parametrize("A", CATALOG, ids=lambda A: A.name)
def test_every_catalog_algebra_is_dqd(A):
    assert in_class(A, "DQD")


@pytest.mark.parametrize("A", CATALOG, ids=lambda A: A.name)
def test_profile_agrees_with_direct_checks(A):
    p = classify(A)
    for key, pred in PREDICATES.items():
        if key in IDENTITIES and pred is IDENTITIES[key]:
            assert p[key] == satisfies(A, pred).holds
        elif isinstance(pred, str):
            assert p[key] == satisfies_condition(A, pred).holds
        elif isinstance(pred, tuple):
            assert p[key] == all(p[k] for k in pred)


def test_witnesses_are_reported():
    r = check_predicate(catalog_get("six"), "Lev1")
    assert not r.holds and r.witness == {"x": 2}
    r = check_predicate(catalog_get("eight"), "JID")
    assert not r.holds and set(r.witness) == {"x", "y", "z"}


def test_conjunction_names_failing_component():
    r = evaluate(catalog_get("eight"), CLASSES["JID1"])
    assert not r.holds and r.failed == "JID"


def test_classes_reference_known_predicates():
    for keys in CLASSES.values():
        assert all(k in PREDICATES for k in keys)


def test_product_fails_sc():
    P = direct_product(catalog_get("d2"), catalog_get("two"))
    assert not check_predicate(P, "SC").holds
    assert check_predicate(catalog_get("cdp-1"), "SC").holds


@pytest.mark.parametrize("name, level", [
    ("cdp-1", 0), ("cdp-2", 0), ("cdp-3", 1), ("cdp-4", 1), ("cdp-6", 1),
    ("d2", 1), ("six", 2), ("eight", 2),
])
def test_level_of(name, level):
    assert level_of(catalog_get(name)) == level


def test_level_forms_agree_on_jid_catalog():
    for A in CATALOG:
        if in_class(A, "JID"):
            assert levels(A).agree


def test_suites_pass_on_expected_algebras():
    assert check_suite(catalog_get("d3"), "lemma-2.2").passed
    rep = check_suite(catalog_get("six"), "lemma-3.4")
    assert rep.applicable and rep.passed and len(rep.items) == 8


def test_suite_not_applicable_outside_hypothesis():
    rep = check_suite(catalog_get("eight"), "lemma-3.4")
    assert not rep.applicable and rep.hypothesis.failed == "JID"


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        check_suite(catalog_get("two"), "lemma-9.9")
