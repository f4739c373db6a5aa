"""Acceptance criteria 1-12, one test per criterion (plus a slow size-5 run).

Each test carries a ``criterion`` marker; conftest prints one PASS/FAIL line
per criterion at the end of the run.  Runtime limits are asserted inside
the tests.
"""

import random
import time
from contextlib import contextmanager

import pytest

from dqdlab.algebra import find_embeddings, is_isomorphic
from dqdlab.catalog import catalog_get, catalog_names, chain_dp
from dqdlab.classify import CLASSES, IDENTITIES, SUITES, check_predicate, check_suite, classify, evaluate
from dqdlab.cli import main
from dqdlab.congruence import all_congruences, principal_congruence
from dqdlab.enumeration import (
    DISCRIMINATOR_VARS,
    enumerate_dqd_upto,
    find_discriminator_term,
    hand_discriminator,
    verify_discriminator,
)
from dqdlab.terms import (
    ONE,
    ZERO,
    Imp,
    Join,
    Meet,
    Neg,
    Var,
    assignment_grid,
    cn_identity,
    eval_term,
    iter_terms,
    parse_identity,
    parse_term,
    pretty,
    satisfies,
)

from oracles import brute_force_congruences

criterion = pytest.mark.criterion


@contextmanager
def within(seconds):
    t0 = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t0
    assert elapsed < seconds, f"took {elapsed:.1f} s, limit {seconds} s"


class Universe:
    """Enumerated DQD algebras with memoised class membership and congruence facts."""

    def __init__(self, cap):
        self.algebras = list(enumerate_dqd_upto(cap))
        self._done = {}
        self._con = {}

    def member(self, A, cls):
        done = self._done.setdefault(id(A), {})
        return evaluate(A, CLASSES[cls], done).holds

    def members(self, cls, min_size=1):
        return [A for A in self.algebras if A.size >= min_size and self.member(A, cls)]

    def con(self, A):
        if id(A) not in self._con:
            self._con[id(A)] = list(all_congruences(A))
        return self._con[id(A)]

    def simple(self, A):
        return len(self.con(A)) == 2

    def si(self, A):
        # a monolith exists iff some non-identity congruence lies below all others
        nontrivial = [c for c in self.con(A) if not c.is_identity()]
        return any(all(m <= c for c in nontrivial) for m in nontrivial)


_UNIVERSES = {}


def universe(cap):
    if cap not in _UNIVERSES:
        _UNIVERSES[cap] = Universe(cap)
    return _UNIVERSES[cap]


D_ALGEBRAS = [catalog_get(n) for n in ("d1", "d2", "d3")]


def count_cli(capsys, size):
    assert main(["enumerate", "--kind", "sh-chain", "--size", str(size), "--count-only"]) == 0
    return capsys.readouterr().out


@criterion(1, "chain census")
def test_criterion_1_chain_census(capsys):
    with within(60):
        assert count_cli(capsys, 4) == "160\n"
        assert count_cli(capsys, 1) == "1\n"
        assert count_cli(capsys, 2) == "2\n"


@criterion(2, "figure fidelity")
def test_criterion_2_figure_fidelity():
    with within(1):
        for A in D_ALGEBRAS:
            p = classify(A, ["DQD", "DM", "Bo", "H"])
            assert p["DQD"] and p["DM"] and p["Bo"]
            assert p["H"] is (A.name == "d2")
            assert len(all_congruences(A)) == 2


@criterion(3, "SIX witness")
def test_criterion_3_six_witness():
    with within(1):
        six = catalog_get("six")
        p = classify(six, ["JID", "Lev1", "Lev2"])
        assert p["JID"] and not p["Lev1"] and p["Lev2"]
        w = p.results["Lev1"].witness
        assert w is not None
        lv1 = parse_identity("(x & x'*)'* = x & x'*")
        assert eval_term(six, lv1.lhs, w) != eval_term(six, lv1.rhs, w)


@criterion(4, "EIGHT witness")
def test_criterion_4_eight_witness():
    with within(1):
        eight = catalog_get("eight")
        p = classify(eight, ["DPC", "Lev1"])
        assert p["DPC"]
        assert satisfies(eight, parse_identity("(x | y)' & (x' | y)' & (x | y')' = 0")).holds
        assert not p["Lev1"] and p.results["Lev1"].witness is not None
        lv1 = parse_identity("(x & x'*)'* = x & x'*")
        w = p.results["Lev1"].witness
        assert eval_term(eight, lv1.lhs, w) != eval_term(eight, lv1.rhs, w)


def _thm_5_10_violations(U):
    bad = []
    for A in U.members("JID1", min_size=3):
        sc = check_predicate(A, "SC").holds
        d = any(A.size == 4 and is_isomorphic(A, D)[0] for D in D_ALGEBRAS) or (U.member(A, "DSt") and sc)
        vals = (U.si(A), U.simple(A), sc, d)
        if len(set(vals)) != 1:
            bad.append((A.name, vals))
    return bad


@criterion(5, "JID1 simplicity equivalences, size <= 4")
def test_criterion_5_jid1_equivalences():
    with within(600):
        U = universe(4)
        assert U.members("JID1", min_size=3)
        assert _thm_5_10_violations(U) == []


@pytest.mark.slow
@criterion("5s", "JID1 simplicity equivalences, size <= 5 (slow mode)")
def test_criterion_5_jid1_equivalences_size_five():
    assert _thm_5_10_violations(universe(5)) == []


def _dsth_chain(U, A):
    return U.member(A, "DStH") and check_predicate(A, "Chain").holds


def _thm_6_7_violations(U):
    bad = []
    for A in U.members("JIDL1", min_size=3):
        d2 = A.size == 4 and is_isomorphic(A, catalog_get("d2"))[0]
        if U.si(A) != (d2 or _dsth_chain(U, A)):
            bad.append(A.name)
    return bad


@criterion(6, "JIDL1 subdirectly irreducibles")
def test_criterion_6_jidl1_si():
    U = universe(4)
    assert U.members("JIDL1", min_size=3)
    assert _thm_6_7_violations(U) == []


@pytest.mark.slow
@criterion("6s", "JIDL1 subdirectly irreducibles, size <= 5 (slow mode)")
def test_criterion_6_jidl1_si_size_five():
    assert _thm_6_7_violations(universe(5)) == []


SUITE_CLASSES = [
    ("lemma-2.2", "DQD"), ("lemma-2.3", "DQD"),
    ("lemma-3.4", "JID"), ("lemma-3.6", "JID"), ("lemma-3.7", "JID"), ("thm-3.5", "JID"), ("thm-3.9", "JID"),
    ("thm-4.1", "DSt"), ("lemma-4.3", "DSt"),
]


@criterion(7, "lemma suites")
def test_criterion_7_lemma_suites():
    U = universe(4)
    assert [len(SUITES[s].items) for s in ("lemma-2.2", "lemma-2.3", "lemma-3.4", "lemma-3.6")] == [8, 8, 8, 5]
    bad = []
    for suite, cls in SUITE_CLASSES:
        algebras = U.members(cls)
        assert algebras
        for A in algebras:
            rep = check_suite(A, suite)
            assert rep.applicable
            bad += [(suite, A.name, label, c.witness) for label, c in rep.failures()]
    assert bad == []


@criterion(8, "separation ladder and chain embeddings")
def test_criterion_8_separation_ladder():
    with within(30):
        d2 = catalog_get("d2")
        for n in range(2, 7):
            cn = cn_identity(n)
            assert satisfies(chain_dp(n), cn).holds
            fails = satisfies(chain_dp(n + 1), cn)
            assert not fails.holds and fails.witness is not None
            assert satisfies(d2, cn).holds
        missing = [(m, n) for n in range(1, 7) for m in range(1, n + 1)
                   if not find_embeddings(chain_dp(m), chain_dp(n))]
        assert missing == []


@criterion(9, "equational-base separators")
def test_criterion_9_separators():
    with within(5):
        c3, c4, d2 = chain_dp(3), chain_dp(4), catalog_get("d2")
        dpc, dm, reg = parse_identity("x | x' = 1"), parse_identity("x'' = x"), IDENTITIES["Regular"]
        assert satisfies(c3, dpc).holds
        assert satisfies(d2, dm).holds
        assert satisfies(c3, reg).holds and satisfies(d2, reg).holds
        for A, ident in ((d2, dpc), (c3, dm), (c4, reg)):
            c = satisfies(A, ident)
            assert not c.holds
            assert eval_term(A, ident.lhs, c.witness) != eval_term(A, ident.rhs, c.witness)


@criterion(10, "congruence engine oracle")
def test_criterion_10_congruence_oracle():
    with within(60):
        small = [catalog_get(n) for n in catalog_names(6) if catalog_get(n).size <= 6]
        for A in small:
            cons = brute_force_congruences(A)
            assert set(all_congruences(A)) == cons
            for a in range(A.size):
                for b in range(a + 1, A.size):
                    p = principal_congruence(A, a, b)
                    assert p in cons and p.related(a, b)
                    assert all(p <= c for c in cons if c.related(a, b))


@criterion(11, "discriminator search")
def test_criterion_11_discriminator(capsys):
    two, d2 = catalog_get("two"), catalog_get("d2")
    assert len(assignment_grid(two.size, DISCRIMINATOR_VARS)["x"]) == 8
    assert len(assignment_grid(d2.size, DISCRIMINATOR_VARS)["x"]) == 64
    found = find_discriminator_term(two)
    assert found is not None and verify_discriminator(two, found).holds
    assert verify_discriminator(d2, hand_discriminator()).holds
    assert find_discriminator_term(d2, max_size=6) is None
    assert main(["search-discriminator", "--algebra", "d2", "--max-size", "6"]) == 1
    out = capsys.readouterr().out
    assert out.startswith("inconclusive") and "nonexistent" not in out


def _terms_to_depth(depth, leaves):
    level = list(leaves)
    for _ in range(depth):
        bigger = list(leaves) + [Neg(t) for t in level]
        bigger += [op(a, b) for op in (Meet, Join, Imp) for a in level for b in level]
        level = bigger
    return level


def _random_term(rnd, depth, leaves):
    k = rnd.randrange(5) if depth > 0 else 0
    if k == 0:
        return rnd.choice(leaves)
    if k == 1:
        return Neg(_random_term(rnd, depth - 1, leaves))
    op = (Meet, Join, Imp)[k - 2]
    return op(_random_term(rnd, depth - 1, leaves), _random_term(rnd, depth - 1, leaves))


@criterion(12, "parser properties")
def test_criterion_12_parser():
    # every term with at most 5 nodes, every term of depth <= 2, and random terms of depth <= 5
    sizes = [0, 5]
    for s in range(2, 6):
        sizes.append(sizes[s - 1] + 3 * sum(sizes[i] * sizes[s - 1 - i] for i in range(1, s - 1)))
    n = 0
    for t in iter_terms(["x", "y", "z"], 5):
        assert parse_term(pretty(t)) == t
        n += 1
    assert n == sum(sizes) == 3025
    shallow = _terms_to_depth(2, [Var("x"), Var("y"), Var("z"), ZERO, ONE])
    assert len(shallow) == 5 + 85 + 3 * 85 * 85
    for t in shallow:
        assert parse_term(pretty(t)) == t
    leaves = [Var("x"), Var("y"), Var("z"), ZERO, ONE]
    rnd = random.Random(0)
    for _ in range(2000):
        t = _random_term(rnd, 5, leaves)
        assert parse_term(pretty(t)) == t
    # sugar soundness under every assignment on every catalog algebra
    star, plus = parse_term("x*"), parse_term("x+")
    for A in [catalog_get(name) for name in catalog_names(6)]:
        for a in range(A.size):
            v = {"x": a}
            assert eval_term(A, star, v) == A.imp[a][A.zero]
            assert eval_term(A, plus, v) == A.neg[A.imp[A.neg[a]][A.zero]]
