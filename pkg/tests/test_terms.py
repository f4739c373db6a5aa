import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dqdlab.catalog import catalog_get, catalog_names
from dqdlab.terms import (
    ONE,
    ZERO,
    Identity,
    Imp,
    Join,
    Meet,
    Neg,
    ParseError,
    UnboundVariable,
    Var,
    cn_identity,
    eval_term,
    iter_terms,
    level_identity_alt,
    level_identity_t,
    parse_identity,
    parse_term,
    plus,
    pretty,
    read_identity_catalog,
    satisfies,
    star,
    t_n_term,
    xn_star_term,
)

x, y, z = Var("x"), Var("y"), Var("z")
CATALOG = [catalog_get(n) for n in catalog_names(max_chain=4)]


def naive_satisfies(A, ident):
    """Independent oracle: nested loops over assignments in name order."""
    names = sorted({*_vars(ident.lhs), *_vars(ident.rhs)})
    for values in itertools.product(range(A.size), repeat=len(names)):
        v = dict(zip(names, values))
        if _ev(A, ident.lhs, v) != _ev(A, ident.rhs, v):
            return False, v
    return True, None


def _vars(t):
    if isinstance(t, Var):
        return {t.name}
    if hasattr(t, "arg"):
        return _vars(t.arg)
    if hasattr(t, "left"):
        return _vars(t.left) | _vars(t.right)
    return set()


def _ev(A, t, v):
    if isinstance(t, Var):
        return v[t.name]
    if t == ZERO:
        return A.zero
    if t == ONE:
        return A.one
    if isinstance(t, Neg):
        return A.neg[_ev(A, t.arg, v)]
    a, b = _ev(A, t.left, v), _ev(A, t.right, v)
    if isinstance(t, Meet):
        return A.meet[a][b]
    if isinstance(t, Join):
        return A.join[a][b]
    return A.imp[a][b]


# -- parsing ------------------------------------------------------------------

def test_double_prime_identity_parses_to_neg_neg():
    ident = parse_identity("x'' = x")
    assert ident == Identity(Neg(Neg(x)), x)


def test_star_desugars_to_implication_into_zero():
    assert parse_term("x*") == Imp(x, ZERO)


def test_plus_desugars_to_prime_star_prime():
    assert parse_term("x+") == Neg(Imp(Neg(x), ZERO))
    assert parse_term("x⁺") == plus(x)


def test_jid_identity_ast():
    ident = parse_identity("x' | (y -> z) = (x' | y) -> (x' | z)")
    assert ident.lhs == Join(Neg(x), Imp(y, z))
    assert ident.rhs == Imp(Join(Neg(x), y), Join(Neg(x), z))


def test_precedence_meet_binds_tighter_than_join_tighter_than_implication():
    assert parse_term("x & y | z -> x") == Imp(Join(Meet(x, y), z), x)


def test_implication_is_right_associative():
    assert parse_term("x -> y -> z") == Imp(x, Imp(y, z))


def test_postfix_binds_tightest():
    assert parse_term("x & y'") == Meet(x, Neg(y))
    assert parse_term("(x & y)'") == Neg(Meet(x, y))


def test_inequality_is_meet_absorption():
    assert parse_identity("x <= y") == Identity(Meet(x, y), x)


def test_unicode_aliases():
    assert parse_identity("x ∧ y ≤ x ∨ y") == parse_identity("x & y <= x | y")
    assert parse_term("x → y") == Imp(x, y)


@pytest.mark.parametrize("bad", ["x &", "(x | y", "x = ", "x y", "= x", "x -> ", "x = y = z", "v", "x # y"])
def test_malformed_input_raises_parse_error(bad):
    with pytest.raises(ParseError):
        parse_identity(bad)


def test_multi_letter_variables():
    assert parse_term("x1 | x2") == Join(Var("x1"), Var("x2"))


# -- pretty printing ----------------------------------------------------------

def test_pretty_examples():
    assert pretty(Neg(Neg(x))) == "x''"
    assert pretty(Imp(Join(x, y), z)) == "(x | y) -> z"
    assert pretty(Imp(x, Imp(y, z))) == "x -> y -> z"
    assert pretty(Imp(Imp(x, y), z)) == "(x -> y) -> z"
    assert pretty(star(Neg(x))) == "x'*"


def test_round_trip_for_all_terms_up_to_five_nodes():
    n = 0
    for t in iter_terms(["x", "y"], 5):
        assert parse_term(pretty(t)) == t
        n += 1
    assert n > 1000


def terms(max_depth=5):
    leaves = st.sampled_from([x, y, z, ZERO, ONE])
    return st.recursive(
        leaves,
        lambda kids: st.one_of(
            kids.map(Neg),
            st.tuples(st.sampled_from([Meet, Join, Imp]), kids, kids).map(lambda a: a[0](a[1], a[2])),
        ),
        max_leaves=2 ** max_depth,
    )


@settings(max_examples=300, deadline=None)
@given(terms())
def test_round_trip_on_random_terms(t):
    assert parse_term(pretty(t)) == t


# -- term enumeration ---------------------------------------------------------

def test_iter_terms_begins_with_variables_then_constants():
    first = list(iter_terms(["x"], 1))
    assert first == [x, ZERO, ONE]
    assert Neg(x) in list(iter_terms(["x"], 2))


def _count_by_size(leaves, max_size):
    # c_1 = leaves, c_s = c_{s-1} + 3 * sum_{i + j = s - 1} c_i c_j
    c = [0, leaves]
    for s in range(2, max_size + 1):
        c.append(c[s - 1] + 3 * sum(c[i] * c[s - 1 - i] for i in range(1, s - 1)))
    return c


def test_iter_terms_counts_match_recurrence_and_grow_with_bound():
    counts = [sum(1 for _ in iter_terms(["x", "y"], k)) for k in range(1, 7)]
    assert counts == sorted(counts)
    per_size = _count_by_size(4, 6)
    assert counts == [sum(per_size[: k + 1]) for k in range(1, 7)]
    assert counts[:5] == [4, 8, 60, 208, 1652]


def test_iter_terms_is_a_prefix_stream():
    short = list(iter_terms(["x"], 3))
    long = list(iter_terms(["x"], 4))
    assert long[: len(short)] == short


# -- term families ------------------------------------------------------------

def test_t_forms():
    assert t_n_term(0) == x
    assert xn_star_term(1) == Imp(Neg(x), ZERO)
    assert t_n_term(1) == Meet(x, Imp(Neg(x), ZERO))
    assert level_identity_t(0) == Identity(x, Meet(x, star(Neg(x))))


def test_alternate_level_one_reads_u_equals_u_prime_star():
    u = Meet(x, star(Neg(x)))
    assert level_identity_alt(1) == Identity(u, star(Neg(u)))


def test_cn_identity_shape():
    ident = cn_identity(3)
    assert ident.variables == ["x1", "x2", "x3"]
    assert str(ident) == "x1 | x2 | x3 | (x1 -> x2) | (x2 -> x3) = 1"


# -- evaluation ---------------------------------------------------------------

def test_eval_d2_a_implies_b():
    d2 = catalog_get("d2")
    assert eval_term(d2, parse_term("x -> y"), {"x": 2, "y": 3}) == 3


def test_eval_six_d_prime_is_one():
    six = catalog_get("six")
    assert eval_term(six, parse_term("x'"), {"x": 5}) == six.one


def test_one_implies_x_is_x_on_dqd_algebras():
    for A in CATALOG:
        for c in range(A.size):
            assert eval_term(A, parse_term("1 -> x"), {"x": c}) == c


def test_unbound_variable():
    with pytest.raises(UnboundVariable):
        eval_term(catalog_get("two"), parse_term("x | y"), {"x": 0})


def test_satisfies_examples():
    d2, c3 = catalog_get("d2"), catalog_get("cdp-3")
    assert satisfies(d2, parse_identity("x'' = x")).holds
    fails = satisfies(d2, parse_identity("x | x' = 1"))
    assert not fails.holds and fails.witness == {"x": 2}
    assert satisfies(c3, parse_identity("x | x' = 1")).holds


def test_witness_is_lexicographically_least():
    A = catalog_get("cdp-4")
    ident = parse_identity("x & y = x")
    c = satisfies(A, ident)
    # (0, 0) holds, (0, 1) holds, (1, 0) is the first failure
    assert c.witness == {"x": 1, "y": 0}


def test_closed_identity():
    assert satisfies(catalog_get("two"), parse_identity("0' = 1")).holds
    assert not satisfies(catalog_get("two"), parse_identity("0 = 1")).holds


@pytest.mark.parametrize("A", CATALOG, ids=lambda A: A.name)
def test_star_and_plus_sugar_are_sound_under_all_assignments(A):
    for t in [x, Neg(x), Meet(x, y), Imp(y, x)]:
        for vx, vy in itertools.product(range(A.size), repeat=2):
            v = {"x": vx, "y": vy}
            assert eval_term(A, star(t), v) == eval_term(A, Imp(t, ZERO), v)
            assert eval_term(A, plus(t), v) == A.neg[A.star(A.neg[eval_term(A, t, v)])]
            assert eval_term(A, parse_term(f"({pretty(t)})*"), v) == eval_term(A, Imp(t, ZERO), v)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(CATALOG), terms(3), terms(3))
def test_satisfies_agrees_with_naive_oracle(A, s, t):
    ident = Identity(s, t)
    fast = satisfies(A, ident)
    slow, witness = naive_satisfies(A, ident)
    assert fast.holds == slow
    if not slow:
        assert fast.witness == witness


def test_identity_catalog_file_parsing():
    cat = read_identity_catalog("# comment\nA: x = x\n\nB: x <= 1  # trailing\n")
    assert set(cat) == {"A", "B"}
    with pytest.raises(ParseError):
        read_identity_catalog("A: x = x\nA: y = y\n")
    with pytest.raises(ParseError):
        read_identity_catalog("no colon here\n")
