import pytest

from dqdlab.algebra import is_isomorphic
from dqdlab.catalog import UnknownAlgebra, catalog_get, catalog_list, catalog_names, chain_dp


def test_d2_zero_implies_everything():
    d2 = catalog_get("d2")
    assert all(d2.imp[d2.zero][x] == d2.one for x in range(4))


def test_six_negation_on_a_and_b():
    six = catalog_get("six")
    a, b = six.labels.index("a"), six.labels.index("b")
    assert six.neg[a] == b and six.neg[b] == b


def test_cdp_two_is_two():
    assert is_isomorphic(catalog_get("cdp-2"), catalog_get("two"))[0]


def test_chain_dp_negation():
    c = chain_dp(5)
    assert [c.neg[x] for x in c.lattice.elements_sorted()] == [1, 1, 1, 1, 0]  # x' = 1 below the top
    assert c.is_chain()


def test_listing_is_sorted_and_has_provenance():
    rows = catalog_list()
    assert [r[0] for r in rows] == sorted(r[0] for r in rows)
    names = {r[0] for r in rows}
    assert {"d1", "d2", "d3", "six", "eight", "two", "two-e", "cdp-n"} <= names
    assert all(prov for _, prov in rows)


def test_catalog_names_expand_chains():
    names = catalog_names(3)
    assert names[-3:] == ["cdp-1", "cdp-2", "cdp-3"]
    assert "cdp-n" not in names


def test_names_are_case_insensitive_and_cached():
    assert catalog_get("D2") is catalog_get("d2")


@pytest.mark.parametrize("bad", ["d4", "cdp-", "nine", ""])
def test_unknown_names(bad):
    with pytest.raises(UnknownAlgebra):
        catalog_get(bad)


def test_sizes():
    assert {n: catalog_get(n).size for n in ("six", "eight", "two-e", "cdp-6")} == {
        "six": 6, "eight": 8, "two-e": 2, "cdp-6": 6}
