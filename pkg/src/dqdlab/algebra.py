"""Finite algebras given by operation tables.

An algebra lives on the universe ``0..n-1`` and carries a bounded
distributive lattice (``meet``, ``join``, ``zero``, ``one``) expanded by a
binary ``imp`` and a unary ``neg``.  Only the lattice part is validated here;
the semi-Heyting and negation axioms are the classifier's business, so that
deliberately broken fixtures can still be loaded.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

DEFAULT_SIZE_CAP = 64
SIZE_CAP_ENV = "DQDLAB_SIZE_CAP"

Table = tuple[tuple[int, ...], ...]


class AlgebraError(ValueError):
    """Raised for malformed documents and lattice-axiom violations."""


class SizeCapError(AlgebraError):
    """Raised when a construction would exceed the configured size cap."""


def size_cap(default: int = DEFAULT_SIZE_CAP) -> int:
    value = os.environ.get(SIZE_CAP_ENV)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise AlgebraError(f"{SIZE_CAP_ENV} must be an integer, got {value!r}") from None


def _freeze(rows: Sequence[Sequence[int]]) -> Table:
    return tuple(tuple(int(v) for v in row) for row in rows)


@dataclass(frozen=True)
class Lattice:
    """A bounded lattice on ``0..size-1``."""

    size: int
    zero: int
    one: int
    meet: Table
    join: Table

    def leq(self, x: int, y: int) -> bool:
        return self.meet[x][y] == x

    def is_chain(self) -> bool:
        return all(self.leq(x, y) or self.leq(y, x) for x in range(self.size) for y in range(x))

    def elements_sorted(self) -> list[int]:
        """Elements listed by rank (number of elements below), ties by index."""
        return sorted(range(self.size), key=lambda x: (sum(self.leq(y, x) for y in range(self.size)), x))


@dataclass(frozen=True)
class FiniteAlgebra:
    name: str
    size: int
    zero: int
    one: int
    meet: Table
    join: Table
    imp: Table
    neg: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.size, self.zero, self.one, self.meet, self.join)

    def leq(self, x: int, y: int) -> bool:
        return self.meet[x][y] == x

    def is_chain(self) -> bool:
        return self.lattice.is_chain()

    def label(self, x: int) -> str:
        if self.labels is not None:
            return self.labels[x]
        return str(x)

    def star(self, x: int) -> int:
        return self.imp[x][self.zero]

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(meet, join, imp, neg) as numpy arrays for vectorised evaluation."""
        return (
            np.array(self.meet, dtype=np.intp).reshape(self.size, self.size),
            np.array(self.join, dtype=np.intp).reshape(self.size, self.size),
            np.array(self.imp, dtype=np.intp).reshape(self.size, self.size),
            np.array(self.neg, dtype=np.intp).reshape(self.size),
        )

    def renamed(self, name: str) -> FiniteAlgebra:
        return FiniteAlgebra(name, self.size, self.zero, self.one, self.meet, self.join,
                             self.imp, self.neg, self.labels)

    def to_document(self) -> dict:
        doc = {
            "name": self.name,
            "size": self.size,
            "zero": self.zero,
            "one": self.one,
            "meet": [list(r) for r in self.meet],
            "join": [list(r) for r in self.join],
            "imp": [list(r) for r in self.imp],
            "neg": list(self.neg),
        }
        if self.labels is not None:
            doc["labels"] = list(self.labels)
        return doc


# ---------------------------------------------------------------------------
# validation and loading


def _check_table(name: str, table, n: int) -> Table:
    if not isinstance(table, (list, tuple)) or len(table) != n:
        raise AlgebraError(f"{name}: expected {n} rows")
    for i, row in enumerate(table):
        if not isinstance(row, (list, tuple)) or len(row) != n:
            raise AlgebraError(f"{name}: row {i} must have {n} entries")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise AlgebraError(f"{name}[{i}][{j}] = {v!r} is not an element index < {n}")
    return _freeze(table)


def _check_index(name: str, v, n: int) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
        raise AlgebraError(f"{name} = {v!r} is not an element index < {n}")
    return v


def validate_lattice(n: int, zero: int, one: int, meet: Table, join: Table) -> None:
    """Exhaustively check the bounded distributive lattice axioms.

    Raises AlgebraError naming the first failing witness.
    """
    r = range(n)
    for x in r:
        if meet[x][x] != x:
            raise AlgebraError(f"meet is not idempotent at x={x}")
        if join[x][x] != x:
            raise AlgebraError(f"join is not idempotent at x={x}")
    for x, y in itertools.product(r, r):
        if meet[x][y] != meet[y][x]:
            raise AlgebraError(f"meet is not commutative at ({x}, {y})")
        if join[x][y] != join[y][x]:
            raise AlgebraError(f"join is not commutative at ({x}, {y})")
        if meet[x][join[x][y]] != x:
            raise AlgebraError(f"absorption x & (x | y) = x fails at ({x}, {y})")
        if join[x][meet[x][y]] != x:
            raise AlgebraError(f"absorption x | (x & y) = x fails at ({x}, {y})")
    for x, y, z in itertools.product(r, r, r):
        if meet[x][meet[y][z]] != meet[meet[x][y]][z]:
            raise AlgebraError(f"meet is not associative at ({x}, {y}, {z})")
        if join[x][join[y][z]] != join[join[x][y]][z]:
            raise AlgebraError(f"join is not associative at ({x}, {y}, {z})")
    for x in r:
        if meet[zero][x] != zero or join[x][one] != one:
            raise AlgebraError(f"zero={zero}/one={one} are not bounds (fails at x={x})")
    for x, y, z in itertools.product(r, r, r):
        if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
            raise AlgebraError(f"lattice is not distributive at ({x}, {y}, {z})")


def load_algebra(doc: dict) -> FiniteAlgebra:
    """Build a validated algebra from a document (a mapping of fields)."""
    if not isinstance(doc, dict):
        raise AlgebraError("algebra document must be an object")
    missing = [k for k in ("name", "size", "zero", "one", "meet", "join", "imp", "neg") if k not in doc]
    if missing:
        raise AlgebraError(f"algebra document is missing fields: {', '.join(missing)}")
    n = doc["size"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise AlgebraError(f"size must be a positive integer, got {n!r}")
    if n > size_cap():
        raise SizeCapError(f"size {n} exceeds the size cap {size_cap()}")
    zero = _check_index("zero", doc["zero"], n)
    one = _check_index("one", doc["one"], n)
    meet = _check_table("meet", doc["meet"], n)
    join = _check_table("join", doc["join"], n)
    imp = _check_table("imp", doc["imp"], n)
    neg = doc["neg"]
    if not isinstance(neg, (list, tuple)) or len(neg) != n:
        raise AlgebraError(f"neg: expected {n} entries")
    neg = tuple(_check_index(f"neg[{i}]", v, n) for i, v in enumerate(neg))
    labels = doc.get("labels")
    if labels is not None:
        if len(labels) != n or not all(isinstance(s, str) for s in labels):
            raise AlgebraError("labels must be a list of `size` strings")
        labels = tuple(labels)
    validate_lattice(n, zero, one, meet, join)
    return FiniteAlgebra(str(doc["name"]), n, zero, one, meet, join, imp, neg, labels)


def read_algebra(path: str | Path) -> FiniteAlgebra:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"{path}: not a valid JSON document ({exc})") from None
    return load_algebra(doc)


def make_algebra(name: str, lattice: Lattice, imp, neg, labels=None) -> FiniteAlgebra:
    """Attach ``imp``/``neg`` to an already validated lattice."""
    return FiniteAlgebra(name, lattice.size, lattice.zero, lattice.one, lattice.meet,
                         lattice.join, _freeze(imp), tuple(int(v) for v in neg),
                         tuple(labels) if labels is not None else None)


def lattice_from_order(n: int, leq) -> Lattice:
    """Lattice whose order is the predicate ``leq(x, y)`` on ``0..n-1``.

    Meets and joins are computed as greatest lower / least upper bounds; an
    AlgebraError is raised if some pair has none.
    """
    def bound(x, y, below):
        cands = [z for z in range(n) if (leq(z, x) and leq(z, y) if below else leq(x, z) and leq(y, z))]
        best = [z for z in cands if all((leq(w, z) if below else leq(z, w)) for w in cands)]
        if len(best) != 1:
            raise AlgebraError(f"order has no {'meet' if below else 'join'} for ({x}, {y})")
        return best[0]

    meet = tuple(tuple(bound(x, y, True) for y in range(n)) for x in range(n))
    join = tuple(tuple(bound(x, y, False) for y in range(n)) for x in range(n))
    zero = next(z for z in range(n) if all(leq(z, x) for x in range(n)))
    one = next(z for z in range(n) if all(leq(x, z) for x in range(n)))
    validate_lattice(n, zero, one, meet, join)
    return Lattice(n, zero, one, meet, join)


def lattice_from_covers(n: int, covers: Sequence[tuple[int, int]]) -> Lattice:
    """Lattice from a Hasse diagram given as (lower, upper) cover pairs."""
    reach = [[x == y for y in range(n)] for x in range(n)]
    for lo, hi in covers:
        reach[lo][hi] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                for j in range(n):
                    if reach[k][j]:
                        reach[i][j] = True
    return lattice_from_order(n, lambda x, y: reach[x][y])


def chain_lattice(n: int) -> Lattice:
    """The n-element chain with zero=0, one=1 (n >= 2) and 0 < 2 < 3 < ... < n-1 < 1."""
    if n == 1:
        return Lattice(1, 0, 0, ((0,),), ((0,),))
    height = [0, n - 1] + list(range(1, n - 1))
    return lattice_from_order(n, lambda x, y: height[x] <= height[y])


# ---------------------------------------------------------------------------
# derived operations and constructions


def pseudocomplement(A: FiniteAlgebra, x: int) -> int:
    return A.imp[x][A.zero]


def direct_product(A: FiniteAlgebra, B: FiniteAlgebra, cap: int | None = None) -> FiniteAlgebra:
    """Componentwise product; element (a, b) has index ``a * |B| + b``."""
    cap = size_cap() if cap is None else cap
    n = A.size * B.size
    if n > cap:
        raise SizeCapError(f"product of sizes {A.size} and {B.size} exceeds the size cap {cap}")
    m = B.size
    pairs = [(i // m, i % m) for i in range(n)]

    def table(ta, tb):
        return tuple(tuple(ta[a][c] * m + tb[b][d] for (c, d) in pairs) for (a, b) in pairs)

    labels = None
    if A.labels is not None or B.labels is not None:
        labels = tuple(f"({A.label(a)},{B.label(b)})" for a, b in pairs)
    return FiniteAlgebra(
        f"{A.name}x{B.name}", n, A.zero * m + B.zero, A.one * m + B.one,
        table(A.meet, B.meet), table(A.join, B.join), table(A.imp, B.imp),
        tuple(A.neg[a] * m + B.neg[b] for a, b in pairs), labels,
    )


def generated_subalgebra(A: FiniteAlgebra, seed) -> frozenset[int]:
    """Least subuniverse containing ``seed`` and the constants."""
    current = set(seed) | {A.zero, A.one}
    frontier = list(current)
    while frontier:
        x = frontier.pop()
        new = {A.neg[x]}
        for y in list(current):
            for t in (A.meet, A.join, A.imp):
                new.add(t[x][y])
                new.add(t[y][x])
        for z in new - current:
            current.add(z)
            frontier.append(z)
    return frozenset(current)


def subalgebra(A: FiniteAlgebra, elements, name: str | None = None) -> FiniteAlgebra:
    """Restrict A to a subuniverse, relabelling in increasing index order."""
    elems = sorted(set(elements))
    if generated_subalgebra(A, elems) != frozenset(elems):
        raise AlgebraError(f"{elems} is not closed under the operations of {A.name}")
    pos = {x: i for i, x in enumerate(elems)}

    def table(t):
        return tuple(tuple(pos[t[x][y]] for y in elems) for x in elems)

    labels = tuple(A.label(x) for x in elems) if A.labels is not None else None
    return FiniteAlgebra(name or f"{A.name}|{len(elems)}", len(elems), pos[A.zero], pos[A.one],
                         table(A.meet), table(A.join), table(A.imp),
                         tuple(pos[A.neg[x]] for x in elems), labels)


def is_compatible(A: FiniteAlgebra, leaders: Sequence[int]) -> bool:
    """Whether the partition given by a block-leader array respects every operation."""
    return _incompatibility(A, leaders) is None


def _incompatibility(A: FiniteAlgebra, leaders):
    n = A.size
    for x in range(n):
        for x2 in range(n):
            if leaders[x] != leaders[x2] or x2 <= x:
                continue
            if leaders[A.neg[x]] != leaders[A.neg[x2]]:
                return ("neg", x, x2)
            for y in range(n):
                for nm, t in (("meet", A.meet), ("join", A.join), ("imp", A.imp)):
                    if leaders[t[x][y]] != leaders[t[x2][y]] or leaders[t[y][x]] != leaders[t[y][x2]]:
                        return (nm, x, x2, y)
    return None


def quotient(A: FiniteAlgebra, theta) -> FiniteAlgebra:
    """Quotient by a congruence given as a block-leader array (or anything with ``.leaders``)."""
    leaders = tuple(getattr(theta, "leaders", theta))
    if len(leaders) != A.size:
        raise AlgebraError("partition length does not match algebra size")
    bad = _incompatibility(A, leaders)
    if bad is not None:
        raise AlgebraError(f"partition is not compatible with {bad[0]} (witness {bad[1:]})")
    reps = sorted(set(leaders))
    pos = {r: i for i, r in enumerate(reps)}

    def cls(x):
        return pos[leaders[x]]

    def table(t):
        return tuple(tuple(cls(t[x][y]) for y in reps) for x in reps)

    return FiniteAlgebra(f"{A.name}/~", len(reps), cls(A.zero), cls(A.one),
                         table(A.meet), table(A.join), table(A.imp),
                         tuple(cls(A.neg[x]) for x in reps))


def expand_e(A: FiniteAlgebra, name: str | None = None) -> FiniteAlgebra:
    """Replace the unary operation by x' = 0 if x = 1, else 1."""
    neg = tuple(A.zero if x == A.one else A.one for x in range(A.size))
    return FiniteAlgebra(name or f"{A.name}^e", A.size, A.zero, A.one, A.meet, A.join,
                         A.imp, neg, A.labels)


# ---------------------------------------------------------------------------
# homomorphisms


def _embeddings(A: FiniteAlgebra, B: FiniteAlgebra, bijective: bool) -> Iterator[tuple[int, ...]]:
    n, m = A.size, B.size
    if n > m or (bijective and n != m):
        return
    ops = ((A.meet, B.meet), (A.join, B.join), (A.imp, B.imp))

    def assign(f, used, x, y, trail):
        """Set f[x] = y and propagate every image it forces; False on conflict."""
        queue = [(x, y)]
        while queue:
            x, y = queue.pop()
            if f[x] != -1:
                if f[x] != y:
                    return False
                continue
            if used[y]:
                return False
            f[x] = y
            used[y] = True
            trail.append(x)
            forced = [(A.neg[x], B.neg[y])]
            for u in range(n):
                fu = f[u]
                if fu == -1:
                    continue
                for ta, tb in ops:
                    forced.append((ta[x][u], tb[y][fu]))
                    forced.append((ta[u][x], tb[fu][y]))
            for z, w in forced:
                if f[z] == -1:
                    queue.append((z, w))
                elif f[z] != w:
                    return False
        return True

    def undo(f, used, trail, mark):
        while len(trail) > mark:
            x = trail.pop()
            used[f[x]] = False
            f[x] = -1

    f = [-1] * n
    used = [False] * m
    trail: list[int] = []
    if not assign(f, used, A.zero, B.zero, trail) or not assign(f, used, A.one, B.one, trail):
        return

    def search():
        try:
            x = f.index(-1)
        except ValueError:
            yield tuple(f)
            return
        for y in range(m):
            if used[y]:
                continue
            mark = len(trail)
            if assign(f, used, x, y, trail):
                yield from search()
            undo(f, used, trail, mark)

    yield from search()


def find_embeddings(A: FiniteAlgebra, B: FiniteAlgebra) -> list[tuple[int, ...]]:
    """All injective homomorphisms A -> B, as image tuples, in lexicographic order."""
    return list(_embeddings(A, B, bijective=False))


def is_isomorphic(A: FiniteAlgebra, B: FiniteAlgebra) -> tuple[bool, tuple[int, ...] | None]:
    for f in _embeddings(A, B, bijective=True):
        return True, f
    return False, None


def canonical_form(A: FiniteAlgebra) -> bytes:
    """Isomorphism invariant: least table serialisation over relabellings.

    Relabellings send zero to 0 and one to 1 (when distinct) and permute the
    remaining elements freely.
    """
    n = A.size
    meet, join, imp, neg = A.arrays
    if n == 1:
        return bytes([1]) + np.concatenate([meet.ravel(), join.ravel(), imp.ravel(), neg]).astype(np.uint8).tobytes()
    rest = [x for x in range(n) if x not in (A.zero, A.one)]
    best = None
    for perm in itertools.permutations(rest):
        q = np.array([A.zero, A.one, *perm], dtype=np.intp)  # new index -> old element
        p = np.empty(n, dtype=np.intp)
        p[q] = np.arange(n)
        ix = np.ix_(q, q)
        key = np.concatenate([p[meet[ix]].ravel(), p[join[ix]].ravel(),
                              p[imp[ix]].ravel(), p[neg[q]]]).astype(np.uint8).tobytes()
        if best is None or key < best:
            best = key
    return bytes([n]) + best
