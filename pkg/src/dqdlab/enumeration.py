"""Exhaustive enumeration of small algebras and the discriminator search."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    Lattice,
    canonical_form,
    chain_lattice,
    make_algebra,
    validate_lattice,
)
from .congruence import is_simple
from .terms import (
    ZERO,
    ONE,
    Check,
    Imp,
    Join,
    Meet,
    Neg,
    Term,
    Var,
    eval_array,
    assignment_grid,
    variables,
)

MAX_ENUMERATION_SIZE = 6
DEFAULT_DQD_CAP = 5
DEFAULT_DISCRIMINATOR_BOUND = 14
DEFAULT_TERM_BUDGET = 250_000  # distinct term functions kept before giving up


class EnumerationError(AlgebraError):
    pass


# ---------------------------------------------------------------------------
# lattices


def _lattices_of_size(n: int) -> list[Lattice]:
    """Bounded distributive lattices with n elements, one per isomorphism type.

    Elements are labelled with zero = 0 and one = 1; the remaining n - 2
    elements range over every labelled partial order, and the survivors are
    deduplicated by a canonical meet table.
    """
    if n == 1:
        return [Lattice(1, 0, 0, ((0,),), ((0,),))]
    inner = list(range(2, n))
    pairs = [(a, b) for a in inner for b in inner if a != b]
    seen = set()
    out = []
    for mask in range(1 << len(pairs)):
        rel = {p for i, p in enumerate(pairs) if mask >> i & 1}
        if any((b, a) in rel for (a, b) in rel):
            continue
        if any((a, c) not in rel for (a, b) in rel for (b2, c) in rel if b == b2 and a != c):
            continue

        def leq(x, y, rel=rel):
            return x == y or x == 0 or y == 1 or (x, y) in rel

        try:
            L = _lattice_from_leq(n, leq)
        except AlgebraError:
            continue
        if not _distributive(L):
            continue
        key = min(
            tuple(p[L.meet[q[i]][q[j]]] for i in range(n) for j in range(n))
            for q, p in _relabelings(n)
        )
        if key in seen:
            continue
        seen.add(key)
        out.append(L)
    # chains first, then by meet table for a stable order
    return sorted(out, key=lambda L: (not L.is_chain(), _lattice_key(L)))


def _distributive(L: Lattice) -> bool:
    m, j, r = L.meet, L.join, range(L.size)
    return all(m[x][j[y][z]] == j[m[x][y]][m[x][z]] for x in r for y in r for z in r)


def _lattice_key(L: Lattice):
    return tuple(v for row in L.meet for v in row)


def _relabelings(n):
    for perm in itertools.permutations(range(2, n)):
        q = (0, 1, *perm)
        p = [0] * n
        for i, x in enumerate(q):
            p[x] = i
        yield q, p


def _lattice_from_leq(n, leq) -> Lattice:
    def bound(x, y, below):
        if below:
            cands = [z for z in range(n) if leq(z, x) and leq(z, y)]
            best = [z for z in cands if all(leq(w, z) for w in cands)]
        else:
            cands = [z for z in range(n) if leq(x, z) and leq(y, z)]
            best = [z for z in cands if all(leq(z, w) for w in cands)]
        if len(best) != 1:
            raise AlgebraError("not a lattice")
        return best[0]

    meet = tuple(tuple(bound(x, y, True) for y in range(n)) for x in range(n))
    join = tuple(tuple(bound(x, y, False) for y in range(n)) for x in range(n))
    validate_lattice(n, 0, 1, meet, join)
    return Lattice(n, 0, 1, meet, join)


@lru_cache(maxsize=None)
def distributive_lattices(n: int) -> tuple[Lattice, ...]:
    if not 1 <= n <= MAX_ENUMERATION_SIZE:
        raise EnumerationError(f"lattice enumeration supports sizes 1..{MAX_ENUMERATION_SIZE}, got {n}")
    if n == 2:
        return (chain_lattice(2),)
    return tuple(_lattices_of_size(n))


# ---------------------------------------------------------------------------
# semi-Heyting implications


def _sh_constraints(L: Lattice):
    """Per-cell domains from SH1/SH3 and the SH2 links between cells."""
    n = L.size
    meet = L.meet
    domains = {}
    for y in range(n):
        for z in range(n):
            if y == z:
                domains[(y, z)] = [L.one]
            else:
                # SH1: y & (y -> z) = y & z
                domains[(y, z)] = [w for w in range(n) if meet[y][w] == meet[y][z]]
    # SH2: x & (y -> z) = x & ((x & y) -> (x & z)); links cell (y, z) and cell (x&y, x&z)
    links: dict[tuple[int, int], list[tuple[int, tuple[int, int]]]] = {c: [] for c in domains}
    for x, y, z in itertools.product(range(n), repeat=3):
        c1, c2 = (y, z), (meet[x][y], meet[x][z])
        links[c1].append((x, c2))
        links[c2].append((x, c1))
    return domains, links


def enumerate_sh_on_lattice(L: Lattice | FiniteAlgebra) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every imp table on L satisfying SH1-SH3, lexicographically by row-major table."""
    if isinstance(L, FiniteAlgebra):
        L = L.lattice
    n = L.size
    meet = L.meet
    domains, links = _sh_constraints(L)
    cells = [(y, z) for y in range(n) for z in range(n)]
    table = [[-1] * n for _ in range(n)]

    def consistent(cell):
        y, z = cell
        v = table[y][z]
        for x, (a, b) in links[cell]:
            w = table[a][b]
            if w == -1:
                continue
            if meet[x][v] != meet[x][w]:
                return False
        return True

    def go(i):
        if i == len(cells):
            yield tuple(tuple(row) for row in table)
            return
        y, z = cells[i]
        for v in domains[(y, z)]:
            table[y][z] = v
            if consistent((y, z)):
                yield from go(i + 1)
        table[y][z] = -1

    yield from go(0)


def sh_algebras_on_lattice(L: Lattice, name: str = "sh") -> Iterator[FiniteAlgebra]:
    """SH algebras on L with the unary operation set to the e-expansion."""
    neg = [L.zero if x == L.one else L.one for x in range(L.size)]
    for k, imp in enumerate(enumerate_sh_on_lattice(L)):
        yield make_algebra(f"{name}-{L.size}-{k}", L, imp, neg)


def count_sh_chains(n: int) -> int:
    return sum(1 for _ in enumerate_sh_on_lattice(chain_lattice(n)))


# ---------------------------------------------------------------------------
# dually quasi-De Morgan expansions


def enumerate_dqd_expansions(A: FiniteAlgebra) -> Iterator[FiniteAlgebra]:
    """Every neg array turning the semi-Heyting algebra A into a DQD algebra.

    Backtracks over elements in index order; 0' = 1 and 1' = 0 are forced,
    antitonicity prunes each new value, and (b), (c), (d) are checked as soon
    as the values they mention are fixed.
    """
    n = A.size
    meet, join = A.meet, A.join
    leq = A.leq
    neg = [-1] * n
    if n == 1:
        yield make_algebra(A.name, A.lattice, A.imp, [0], A.labels)
        return
    neg[A.zero] = A.one
    neg[A.one] = A.zero
    order = [x for x in range(n) if x not in (A.zero, A.one)]

    def ok() -> bool:
        for x in range(n):
            nx = neg[x]
            if nx == -1:
                continue
            nnx = neg[nx]
            if nnx != -1 and not leq(nnx, x):
                return False
            for y in range(n):
                ny = neg[y]
                if ny == -1:
                    continue
                if leq(x, y) and not leq(ny, nx):
                    return False
                m = neg[meet[x][y]]
                if m != -1 and m != join[nx][ny]:
                    return False
                if nnx != -1:
                    nny = neg[ny]
                    j = neg[join[x][y]]
                    if nny != -1 and j != -1 and neg[j] != -1 and neg[j] != join[nnx][nny]:
                        return False
        return True

    def go(i):
        if i == len(order):
            yield tuple(neg)
            return
        x = order[i]
        for v in range(n):
            neg[x] = v
            if ok():
                yield from go(i + 1)
        neg[x] = -1

    for k, arr in enumerate(go(0)):
        yield make_algebra(f"{A.name}.{k}", A.lattice, A.imp, arr, A.labels)


def enumerate_dqd_upto(size_cap: int = DEFAULT_DQD_CAP, min_size: int = 1) -> Iterator[FiniteAlgebra]:
    """All DQD algebras with at most ``size_cap`` elements, one per isomorphism class.

    Order: by size, then lattice, then imp table, then neg array.
    """
    if size_cap > MAX_ENUMERATION_SIZE:
        raise EnumerationError(f"size cap {size_cap} exceeds the enumeration limit {MAX_ENUMERATION_SIZE}")
    for n in range(min_size, size_cap + 1):
        seen: set[bytes] = set()
        count = 0
        for li, L in enumerate(distributive_lattices(n)):
            for imp in enumerate_sh_on_lattice(L):
                base = make_algebra(f"L{n}.{li}", L, imp, [0] * n)
                for A in enumerate_dqd_expansions(base):
                    key = canonical_form(A)
                    if key in seen:
                        continue
                    seen.add(key)
                    yield A.renamed(f"dqd{n}-{count}")
                    count += 1


# ---------------------------------------------------------------------------
# discriminator terms

DISCRIMINATOR_VARS = ("x", "y", "z")


def _discriminator_target(A: FiniteAlgebra):
    env = assignment_grid(A.size, DISCRIMINATOR_VARS)
    x, y, z = env["x"], env["y"], env["z"]
    return env, np.where(x == y, z, x)


def verify_discriminator(A: FiniteAlgebra, t: Term) -> Check:
    """Whether t(x, y, z) is z when x = y and x otherwise, for all triples."""
    extra = variables(t) - set(DISCRIMINATOR_VARS)
    if extra:
        raise ValueError(f"discriminator candidate uses variables outside x, y, z: {sorted(extra)}")
    env, target = _discriminator_target(A)
    got = eval_array(A, t, env)
    bad = got != target
    if not bad.any():
        return Check(True)
    k = int(np.argmax(bad))
    return Check(False, {v: int(env[v][k]) for v in DISCRIMINATOR_VARS})


class _Level:
    """Deduplicated terms of one size together with their value vectors."""

    def __init__(self):
        self.terms: list[Term] = []
        self.values: list[np.ndarray] = []
        self._matrix = None

    def matrix(self) -> np.ndarray:
        # only called once the level is complete
        if self._matrix is None:
            self._matrix = np.array(self.values) if self.values else np.empty((0, 0), dtype=np.uint8)
        return self._matrix


class _BudgetExhausted(Exception):
    pass


def first_term_with_values(A: FiniteAlgebra, names: Sequence[str], target: np.ndarray,
                           max_size: int, env=None, budget: int = DEFAULT_TERM_BUDGET) -> Term | None:
    """First term in ``iter_terms`` order whose values over ``env`` equal ``target``.

    Terms are built bottom-up keeping only the first term for each value
    vector; the first match in the full order is always made of such
    representatives, so the result coincides with a naive scan.  Returns
    None when ``max_size`` or the ``budget`` of distinct functions runs out.
    """
    if A.size > 255:
        raise EnumerationError("term search supports at most 255 elements")
    meet, join, imp, neg = (a.astype(np.uint8) for a in A.arrays)
    if env is None:
        env = assignment_grid(A.size, names)
    target = np.asarray(target, dtype=np.uint8)
    width = len(target)
    seen: set[bytes] = set()
    levels: list[_Level | None] = [None]
    try:
        return _search(A, names, env, target, width, max_size, budget, seen, levels, meet, join, imp, neg)
    except _BudgetExhausted:
        return None


def _search(A, names, env, target, width, max_size, budget, seen, levels, meet, join, imp, neg):
    def offer(level: _Level, term: Term, vec: np.ndarray) -> bool:
        key = vec.tobytes()
        if key in seen:
            return False
        hit = bool(np.array_equal(vec, target))
        if not hit and len(seen) >= budget:
            raise _BudgetExhausted
        seen.add(key)
        level.terms.append(term)
        level.values.append(vec)
        return hit

    for s in range(1, max_size + 1):
        level = _Level()
        levels.append(level)
        if s == 1:
            leaves = [(Var(v), env[v]) for v in names]
            leaves += [(ZERO, np.full(width, A.zero, dtype=np.uint8)),
                       (ONE, np.full(width, A.one, dtype=np.uint8))]
            for term, vec in leaves:
                if offer(level, term, np.ascontiguousarray(vec, dtype=np.uint8)):
                    return term
            continue
        prev = levels[s - 1]
        for term, vec in zip(prev.terms, prev.values):
            if offer(level, Neg(term), neg[vec]):
                return Neg(term)
        for ctor, table in ((Meet, meet), (Join, join), (Imp, imp)):
            for ls in range(1, s - 1):
                lefts, rights = levels[ls], levels[s - 1 - ls]
                if not lefts.terms or not rights.terms:
                    continue
                rmat = rights.matrix()
                for lt, lv in zip(lefts.terms, lefts.values):
                    combo = table[lv[None, :], rmat]
                    hits = np.nonzero((combo == target).all(axis=1))[0]
                    stop = int(hits[0]) if len(hits) else len(rights.terms)
                    for j in range(stop):
                        offer(level, ctor(lt, rights.terms[j]), combo[j])
                    if len(hits):
                        j = stop
                        t = ctor(lt, rights.terms[j])
                        if offer(level, t, combo[j]):
                            return t
    return None


class NotSimpleError(ValueError):
    pass


def find_discriminator_term(A: FiniteAlgebra, max_size: int = DEFAULT_DISCRIMINATOR_BOUND,
                            budget: int = DEFAULT_TERM_BUDGET) -> Term | None:
    """First discriminator term with at most ``max_size`` nodes, or None (inconclusive).

    A None result only means the node bound or the term budget was exhausted.
    """
    if A.size > 1 and not is_simple(A):
        raise NotSimpleError(f"{A.name} is not simple, so it has no discriminator term")
    env, target = _discriminator_target(A)
    return first_term_with_values(A, DISCRIMINATOR_VARS, target, max_size, env, budget)


def hand_discriminator() -> Term:
    """(z & c) | (x & c*) with c = e & e'* and e = (x -> y) & (y -> x).

    On a semi-Heyting algebra e(x, y) = 1 exactly when x = y; under the
    simplicity condition c then takes only the values 0 and 1.
    """
    from .terms import parse_term

    e = "((x -> y) & (y -> x))"
    c = f"({e} & {e}'*)"
    return parse_term(f"(z & {c}) | (x & {c}*)")
