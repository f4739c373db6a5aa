"""Built-in named algebras.

Element order: the four-element algebras use (0, 1, a, b); ``six`` uses
(0, 1, a, b, c, d); ``eight`` uses (0, 1, e, c, a, b, f, d).  These follow
the row order of the published operation tables.
"""

from __future__ import annotations

import re

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    Lattice,
    chain_lattice,
    expand_e,
    lattice_from_covers,
    make_algebra,
)


class UnknownAlgebra(AlgebraError):
    pass


_BOOLEAN4 = lattice_from_covers(4, [(0, 2), (0, 3), (2, 1), (3, 1)])
_D_LABELS = ("0", "1", "a", "b")
_D_NEG = (1, 0, 2, 3)

_D_IMP = {
    "d1": [[1, 0, 3, 2], [0, 1, 2, 3], [3, 2, 1, 0], [2, 3, 0, 1]],
    "d2": [[1, 1, 1, 1], [0, 1, 2, 3], [3, 1, 1, 3], [2, 1, 2, 1]],
    "d3": [[1, 2, 1, 2], [0, 1, 2, 3], [3, 2, 1, 0], [2, 1, 2, 1]],
}

# Hasse diagram: 0 < b < a < 1, 0 < d < a, d < c < 1.
_SIX_LABELS = ("0", "1", "a", "b", "c", "d")
_SIX_LATTICE = lattice_from_covers(6, [(0, 3), (0, 5), (3, 2), (5, 2), (5, 4), (2, 1), (4, 1)])
_SIX_IMP = [
    [1, 1, 1, 1, 1, 1],
    [0, 1, 2, 3, 4, 5],
    [0, 1, 1, 3, 4, 4],
    [4, 1, 1, 1, 4, 4],
    [3, 1, 2, 3, 1, 2],
    [3, 1, 1, 3, 1, 1],
]
_SIX_NEG = [1, 0, 3, 3, 4, 1]

# Hasse diagram: 0 < a, b;  a < c, d;  b < d;  c, d < f;  d < e;  e, f < 1.
# The vertex drawn as "5" in the figure is taken to be b, the name used by
# the operation tables.
_EIGHT_LABELS = ("0", "1", "e", "c", "a", "b", "f", "d")
_EIGHT_LATTICE = lattice_from_covers(
    8, [(0, 4), (0, 5), (4, 3), (4, 7), (5, 7), (3, 6), (7, 6), (7, 2), (6, 1), (2, 1)]
)
_EIGHT_IMP = [
    [1, 0, 0, 5, 5, 3, 0, 0],
    [0, 1, 2, 3, 4, 5, 6, 7],
    [0, 1, 1, 3, 3, 5, 6, 6],
    [5, 3, 4, 1, 2, 0, 3, 4],
    [5, 3, 3, 1, 1, 0, 3, 3],
    [3, 5, 5, 0, 0, 1, 5, 5],
    [0, 1, 2, 3, 4, 5, 1, 2],
    [0, 1, 1, 3, 3, 5, 1, 1],
]
_EIGHT_NEG = [1, 0, 3, 2, 1, 1, 2, 1]


def heyting_imp(L: Lattice) -> list[list[int]]:
    """Relative pseudocomplement: x -> y is the largest z with x & z <= y."""
    n = L.size
    out = []
    for x in range(n):
        row = []
        for y in range(n):
            cands = [z for z in range(n) if L.leq(L.meet[x][z], y)]
            row.append(next(z for z in cands if all(L.leq(w, z) for w in cands)))
        out.append(row)
    return out


def chain_dp(n: int) -> FiniteAlgebra:
    """The n-element dually Stone Heyting chain."""
    if n < 1:
        raise UnknownAlgebra(f"cdp-{n}: n must be at least 1")
    L = chain_lattice(n)
    labels = ("0",) if n == 1 else ("0", "1", *(f"a{i}" for i in range(1, n - 1)))
    base = make_algebra(f"cdp-{n}", L, heyting_imp(L), [0] * n, labels)
    return expand_e(base, name=f"cdp-{n}")


def two_bar_e() -> FiniteAlgebra:
    """Two-element semi-Heyting chain with 0 -> 1 = 0, expanded by x' = 0 iff x = 1."""
    L = chain_lattice(2)
    base = make_algebra("two-e", L, [[1, 0], [0, 1]], [1, 0], ("0", "1"))
    return expand_e(base, name="two-e")


def _build(name: str) -> FiniteAlgebra:
    if name in _D_IMP:
        return make_algebra(name, _BOOLEAN4, _D_IMP[name], _D_NEG, _D_LABELS)
    if name == "six":
        return make_algebra(name, _SIX_LATTICE, _SIX_IMP, _SIX_NEG, _SIX_LABELS)
    if name == "eight":
        return make_algebra(name, _EIGHT_LATTICE, _EIGHT_IMP, _EIGHT_NEG, _EIGHT_LABELS)
    if name == "two":
        return chain_dp(2).renamed("two")
    if name == "two-e":
        return two_bar_e()
    m = re.fullmatch(r"cdp-(\d+)", name)
    if m:
        return chain_dp(int(m.group(1)))
    raise UnknownAlgebra(f"unknown built-in algebra {name!r}")


_CACHE: dict[str, FiniteAlgebra] = {}


def catalog_get(name: str) -> FiniteAlgebra:
    name = name.strip().lower()
    if name not in _CACHE:
        _CACHE[name] = _build(name)
    return _CACHE[name]


_PROVENANCE = {
    "cdp-n": "n-element dually Stone Heyting chain (n >= 1)",
    "d1": "four-element Boolean DQD algebra D1, De Morgan, not Heyting",
    "d2": "four-element De Morgan Boolean Heyting algebra D2",
    "d3": "four-element Boolean DQD algebra D3, De Morgan, not Heyting",
    "eight": "Remark 4.2 witness: DPC algebra not of level 1",
    "six": "Figure 2 witness, JID but not level 1",
    "two": "two-element Boolean Heyting algebra with classical negation",
    "two-e": "two-element semi-Heyting chain with 0->1 = 0, expanded by x' = 0 iff x = 1",
}


def catalog_list() -> list[tuple[str, str]]:
    return sorted(_PROVENANCE.items())


def catalog_names(max_chain: int = 6) -> list[str]:
    """Concrete built-in names, with chains cdp-1..cdp-max_chain."""
    fixed = [k for k in sorted(_PROVENANCE) if k != "cdp-n"]
    return fixed + [f"cdp-{n}" for n in range(1, max_chain + 1)]
