"""Congruence lattices of finite algebras.

Congruences are stored as least-leader arrays: ``leaders[x]`` is the least
element of the block of ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .algebra import FiniteAlgebra, SizeCapError, size_cap

DEFAULT_CONGRUENCE_CAP = 12


class UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        # the smaller root survives, which keeps leaders canonical
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True

    def leaders(self) -> tuple[int, ...]:
        return tuple(self.find(x) for x in range(len(self.parent)))


@dataclass(frozen=True)
class Congruence:
    leaders: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> Congruence:
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> Congruence:
        return cls((0,) * n)

    @classmethod
    def from_blocks(cls, n: int, blocks) -> Congruence:
        uf = UnionFind(n)
        for block in blocks:
            block = list(block)
            for x in block[1:]:
                uf.union(block[0], x)
        return cls(uf.leaders())

    @property
    def size(self) -> int:
        return len(self.leaders)

    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x, r in enumerate(self.leaders):
            out.setdefault(r, []).append(x)
        return [out[r] for r in sorted(out)]

    @property
    def num_blocks(self) -> int:
        return len(set(self.leaders))

    def related(self, x: int, y: int) -> bool:
        return self.leaders[x] == self.leaders[y]

    def is_identity(self) -> bool:
        return self.leaders == tuple(range(len(self.leaders)))

    def is_total(self) -> bool:
        return len(set(self.leaders)) <= 1

    def __le__(self, other: Congruence) -> bool:  # type: ignore[override]
        """Refinement order: every block of self lies inside a block of other."""
        return all(other.leaders[x] == other.leaders[r] for x, r in enumerate(self.leaders))

    def meet(self, other: Congruence) -> Congruence:
        firsts: dict[tuple[int, int], int] = {}
        out = []
        for x, pair in enumerate(zip(self.leaders, other.leaders)):
            out.append(firsts.setdefault(pair, x))
        return Congruence(tuple(out))

    def join(self, other: Congruence) -> Congruence:
        uf = UnionFind(self.size)
        for x in range(self.size):
            uf.union(x, self.leaders[x])
            uf.union(x, other.leaders[x])
        return Congruence(uf.leaders())

    def __str__(self) -> str:
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks())


def principal_congruence(A: FiniteAlgebra, a: int, b: int) -> Congruence:
    """Least congruence identifying ``a`` and ``b``.

    Every merge (u, v) made so far is pushed through each basic translation
    (fix all but one argument of an operation) until nothing new merges.
    """
    n = A.size
    uf = UnionFind(n)
    tables = (A.meet, A.join, A.imp)
    neg = A.neg
    pending = [(a, b)] if a != b else []
    if pending:
        uf.union(a, b)
    while pending:
        u, v = pending.pop()
        images = [(neg[u], neg[v])]
        for t in tables:
            tu, tv = t[u], t[v]
            for c in range(n):
                images.append((tu[c], tv[c]))
                images.append((t[c][u], t[c][v]))
        for p, q in images:
            if uf.union(p, q):
                pending.append((p, q))
    return Congruence(uf.leaders())


@dataclass(frozen=True)
class CongruenceLattice:
    congruences: tuple[Congruence, ...]  # sorted by number of blocks desc, then leaders
    covers: tuple[tuple[int, int], ...]  # (lower, upper) index pairs

    @property
    def bottom(self) -> Congruence:
        return self.congruences[0]

    @property
    def top(self) -> Congruence:
        return self.congruences[-1]

    def __len__(self) -> int:
        return len(self.congruences)

    def __iter__(self):
        return iter(self.congruences)

    def __contains__(self, theta) -> bool:
        return theta in set(self.congruences)


def _sort_key(theta: Congruence):
    return (-theta.num_blocks, theta.leaders)


def all_congruences(A: FiniteAlgebra, cap: int | None = None) -> CongruenceLattice:
    """Con(A) as the join-closure of the principal congruences."""
    cap = size_cap(DEFAULT_CONGRUENCE_CAP) if cap is None else cap
    n = A.size
    if n > cap:
        raise SizeCapError(f"all_congruences: size {n} exceeds the cap {cap}")
    principals = {principal_congruence(A, a, b) for a in range(n) for b in range(a + 1, n)}
    found = {Congruence.identity(n)} | principals
    frontier = list(found)
    gens = sorted(principals, key=_sort_key)
    while frontier:
        new = []
        for theta in frontier:
            for p in gens:
                j = theta.join(p)
                if j not in found:
                    found.add(j)
                    new.append(j)
        frontier = new
    cons = tuple(sorted(found, key=_sort_key))
    covers = []
    for i, lo in enumerate(cons):
        ups = [j for j, hi in enumerate(cons) if j != i and lo <= hi]
        for j in ups:
            if not any(k != j and cons[k] <= cons[j] for k in ups):
                covers.append((i, j))
    return CongruenceLattice(cons, tuple(covers))


def monolith(A: FiniteAlgebra) -> Congruence | None:
    """The least non-identity congruence, if there is one."""
    nontrivial = [c for c in all_congruences(A) if not c.is_identity()]
    if not nontrivial:
        return None
    m = reduce(Congruence.meet, nontrivial)
    return None if m.is_identity() else m


def is_simple(A: FiniteAlgebra) -> bool:
    return len(all_congruences(A)) == 2


def is_subdirectly_irreducible(A: FiniteAlgebra) -> bool:
    return monolith(A) is not None
