"""Registry of finitely checkable claims and the report that runs them.

Each claim is a function of a shared :class:`Context` returning an
:class:`Outcome`.  Universe claims range over every DQD algebra produced by
:func:`enumerate_dqd_upto` up to the context's size bound.
"""

from __future__ import annotations

import fnmatch
import json
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable

from .algebra import FiniteAlgebra, canonical_form, direct_product, find_embeddings
from .catalog import catalog_get
from .classify import (
    CLASSES,
    IDENTITIES,
    PREDICATES,
    PredicateResult,
    check_suite,
    classify,
    evaluate,
    levels,
)
from .congruence import all_congruences
from .enumeration import (
    enumerate_dqd_upto,
    enumerate_sh_on_lattice,
    distributive_lattices,
    sh_algebras_on_lattice,
    hand_discriminator,
    verify_discriminator,
)
from .algebra import chain_lattice
from .terms import cn_identity, satisfies

DEFAULT_UNIVERSE = 4
PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


class UnknownClaim(KeyError):
    pass


@dataclass
class Outcome:
    status: str
    witness: dict | None = None
    detail: str = ""


def ok(detail: str = "") -> Outcome:
    return Outcome(PASS, None, detail)


def fail(witness: dict, detail: str = "") -> Outcome:
    return Outcome(FAIL, witness, detail)


@dataclass(frozen=True)
class Claim:
    id: str
    locus: str
    summary: str
    run: Callable[["Context"], Outcome]

    @property
    def finite_fragment(self) -> bool:
        return self.id.endswith("-finite-fragment")


@dataclass
class ClaimResult:
    claim: str
    locus: str
    status: str
    witness: dict | None
    detail: str
    seconds: float

    def to_dict(self, timing: bool = True) -> dict:
        out = {"claim": self.claim, "locus": self.locus, "status": self.status,
               "witness": self.witness, "detail": self.detail}
        if timing:
            out["seconds"] = round(self.seconds, 4)
        return out


@dataclass
class VerificationReport:
    universe: int
    results: list[ClaimResult] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
        for r in self.results:
            out[r.status] += 1
        return out

    @property
    def passed(self) -> bool:
        return self.counts[FAIL] == 0

    def to_dict(self, timing: bool = True) -> dict:
        return {"universe": self.universe, "summary": self.counts,
                "results": [r.to_dict(timing) for r in self.results]}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    def to_text(self, timing: bool = True) -> str:
        cols = ["claim", "locus", "status", "witness", "detail"] + (["seconds"] if timing else [])
        lines = ["\t".join(cols)]
        for r in self.results:
            row = [r.claim, r.locus, r.status,
                   json.dumps(r.witness, sort_keys=True) if r.witness is not None else "-",
                   r.detail or "-"]
            if timing:
                row.append(f"{r.seconds:.3f}")
            lines.append("\t".join(row))
        c = self.counts
        lines.append(f"summary\tpass={c[PASS]}\tfail={c[FAIL]}\tinconclusive={c[INCONCLUSIVE]}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# shared context


class Context:
    """Caches the enumerated universe and per-algebra facts."""

    def __init__(self, universe: int = DEFAULT_UNIVERSE):
        self.universe_size = universe
        self._profiles: dict[int, LazyProfile] = {}
        self._cons: dict[int, int] = {}
        self._si: dict[int, bool] = {}

    @cached_property
    def universe(self) -> list[FiniteAlgebra]:
        return list(enumerate_dqd_upto(self.universe_size))

    def profile(self, A: FiniteAlgebra) -> "LazyProfile":
        key = id(A)
        if key not in self._profiles:
            self._profiles[key] = LazyProfile(A)
        return self._profiles[key]

    def members(self, cls: str, min_size: int = 1) -> list[FiniteAlgebra]:
        return [A for A in self.universe if A.size >= min_size and self.profile(A).in_class(cls)]

    def num_congruences(self, A: FiniteAlgebra) -> int:
        key = id(A)
        if key not in self._cons:
            self._compute_cons(A)
        return self._cons[key]

    def is_si(self, A: FiniteAlgebra) -> bool:
        if id(A) not in self._si:
            self._compute_cons(A)
        return self._si[id(A)]

    def is_simple(self, A: FiniteAlgebra) -> bool:
        return self.num_congruences(A) == 2

    def _compute_cons(self, A):
        con = all_congruences(A)
        self._cons[id(A)] = len(con)
        nontrivial = [c for c in con if not c.is_identity()]
        # SI iff the non-identity congruences have a least element
        self._si[id(A)] = bool(nontrivial) and any(all(m <= c for c in nontrivial) for m in nontrivial)

    @cached_property
    def d_forms(self) -> dict[bytes, str]:
        return {canonical_form(catalog_get(n)): n for n in ("d1", "d2", "d3")}

    def d_name(self, A: FiniteAlgebra) -> str | None:
        if A.size != 4:
            return None
        return self.d_forms.get(canonical_form(A))


class LazyProfile:
    """Predicate results computed on first use."""

    def __init__(self, A: FiniteAlgebra):
        self.algebra = A
        self.results: dict[str, PredicateResult] = {}

    def result(self, key: str) -> PredicateResult:
        if key not in self.results:
            self.results[key] = evaluate(self.algebra, PREDICATES[key], self.results)
        return self.results[key]

    def __getitem__(self, key: str) -> bool:
        return self.result(key).holds

    def in_class(self, name: str) -> bool:
        return all(self[k] for k in CLASSES[name])


def _wit(A: FiniteAlgebra, **extra) -> dict:
    out = {"algebra": A.name, "size": A.size}
    out.update(extra)
    return out


def _in_universe(ctx: Context, n: int) -> str:
    return f"{n} algebras, size <= {ctx.universe_size}"


def _per_algebra(ctx: Context, algebras: Iterable[FiniteAlgebra], check) -> Outcome:
    """``check(A)`` returns None when A is fine, else a witness dict."""
    n = 0
    for A in algebras:
        n += 1
        w = check(A)
        if w is not None:
            return fail(w)
    return ok(_in_universe(ctx, n))


def _identity_on(ctx, algebras, ident, label: str | None = None) -> Outcome:
    def check(A):
        c = satisfies(A, ident)
        if c.holds:
            return None
        return _wit(A, identity=label or str(ident), assignment=c.witness)
    return _per_algebra(ctx, algebras, check)


def _suite_claim(suite: str, cls: str) -> Callable[[Context], Outcome]:
    def run(ctx: Context) -> Outcome:
        def check(A):
            rep = check_suite(A, suite)
            bad = rep.failures()
            if not bad:
                return None
            label, c = bad[0]
            return _wit(A, item=label, assignment=c.witness)
        return _per_algebra(ctx, ctx.members(cls), check)
    return run


def _expect(checks: list[tuple[str, FiniteAlgebra, object, bool]]) -> Outcome:
    """Each check is (label, algebra, identity, expected truth value)."""
    for label, A, ident, want in checks:
        c = satisfies(A, ident)
        if c.holds != want:
            return fail(_wit(A, identity=label, expected=want, assignment=c.witness))
    return ok(f"{len(checks)} checks")


def _catalog_expect(pairs: list[tuple[str, str, bool]]) -> Outcome:
    return _expect([(key, catalog_get(name), IDENTITIES[key], want) for name, key, want in pairs])


# ---------------------------------------------------------------------------
# individual claims


def _prop_2_4(ctx: Context) -> Outcome:
    dqb = ctx.members("DQB")
    for A in dqb:
        if not ctx.profile(A)["DM"]:
            return fail(_wit(A, reason="Bo without DM", assignment=ctx.profile(A).result("DM").witness))
    found = set()
    for A in dqb:
        if A.size == 4 and ctx.is_si(A):
            name = ctx.d_name(A)
            if name is None:
                return fail(_wit(A, reason="SI Boolean DQD algebra of size 4 outside D1, D2, D3"))
            found.add(name)
    if found != {"d1", "d2", "d3"}:
        return fail({"found": sorted(found)}, "D1, D2, D3 not all enumerated")
    heyting = sorted(n for n in found if classify(catalog_get(n), ["H"])["H"])
    if heyting != ["d2"]:
        return fail({"heyting": heyting})
    return ok(_in_universe(ctx, len(dqb)))


def _equivalent(ctx: Context, algebras, conds: dict[str, Callable[[FiniteAlgebra], bool]]) -> Outcome:
    def check(A):
        vals = {k: bool(f(A)) for k, f in conds.items()}
        if len(set(vals.values())) > 1:
            return _wit(A, values=vals)
        return None
    return _per_algebra(ctx, algebras, check)


def _thm_2_6(ctx: Context) -> Outcome:
    return _equivalent(ctx, ctx.members("BDQD1", min_size=2), {
        "simple": ctx.is_simple, "SI": ctx.is_si, "SC": lambda A: ctx.profile(A)["SC"]})


def _dpc_chains(ctx: Context) -> list[FiniteAlgebra]:
    return [A for A in ctx.members("DPC") if ctx.profile(A)["Chain"]]


def _lemma_3_2(ctx: Context) -> Outcome:
    return _identity_on(ctx, _dpc_chains(ctx), IDENTITIES["JID"], "JID")


def _cor_3_3(ctx: Context) -> Outcome:
    chains = [A for A in ctx.members("DQD") if ctx.profile(A)["Chain"]]
    return _equivalent(ctx, chains, {
        "DPC": lambda A: ctx.profile(A)["DPC"], "DSt": lambda A: ctx.profile(A)["DSt"]})


def _thm_3_9(ctx: Context) -> Outcome:
    out = _suite_claim("thm-3.9", "JID")(ctx)
    if out.status != PASS:
        return out
    six = catalog_get("six")
    p = classify(six, ["JID", "Lev1", "Lev2"])
    if not p["JID"] or p["Lev1"] or not p["Lev2"]:
        return fail(_wit(six, profile=p.to_dict()))
    return ok(out.detail + "; SIX is JID, not Lev1, Lev2")


def _levels_agree(ctx: Context) -> Outcome:
    def check(A):
        lv = levels(A)
        return None if lv.agree else _wit(A, alt=lv.alt, t=lv.t)
    return _per_algebra(ctx, ctx.members("JID"), check)


def _remark_4_2(ctx: Context) -> Outcome:
    eight = catalog_get("eight")
    p = classify(eight, ["DQD", "DPC", "EightId", "Lev1", "Lev1-t"])
    if not (p["DQD"] and p["DPC"] and p["EightId"]) or p["Lev1"] or p["Lev1-t"]:
        return fail(_wit(eight, profile=p.to_dict()))
    return ok(f"Lev1 fails at {p.results['Lev1'].witness}")


def _cor_4_5(ctx: Context) -> Outcome:
    return _equivalent(ctx, ctx.members("DSt", min_size=3), {
        "simple": ctx.is_simple, "SI": ctx.is_si, "SC": lambda A: ctx.profile(A)["SC"]})


def _ladder(max_n: int = 6) -> Outcome:
    d2 = catalog_get("d2")
    checks = []
    for n in range(2, max_n + 1):
        cn = cn_identity(n)
        checks += [(f"C{n}", catalog_get(f"cdp-{n}"), cn, True),
                   (f"C{n}", catalog_get(f"cdp-{n + 1}"), cn, False),
                   (f"C{n}", d2, cn, True)]
    return _expect(checks)


def _thm_4_6(ctx: Context) -> Outcome:
    out = _ladder()
    if out.status != PASS:
        return out
    for n in range(2, 6):
        if not find_embeddings(catalog_get(f"cdp-{n}"), catalog_get(f"cdp-{n + 1}")):
            return fail({"from": f"cdp-{n}", "to": f"cdp-{n + 1}"}, "no embedding")
    return ok(out.detail + "; C_n embeds in C_(n+1)")


def _is_chain_dsth(ctx: Context, A: FiniteAlgebra) -> bool:
    p = ctx.profile(A)
    return p["Chain"] and p.in_class("DStH")


def _thm_4_7(ctx: Context) -> Outcome:
    def check(A):
        if not ctx.profile(A)["H"]:
            return _wit(A, reason="DSt + L without H")
        if ctx.is_si(A) and not ctx.profile(A)["Chain"]:
            return _wit(A, reason="SI but not a chain")
        return None
    algebras = [A for A in ctx.members("DSt") if ctx.profile(A)["L"]]
    return _per_algebra(ctx, algebras, check)


def _sh_chains(max_n: int = 4):
    for n in range(1, max_n + 1):
        yield from sh_algebras_on_lattice(chain_lattice(n), name="chain")


def _expansion_claim(ctx: Context) -> Outcome:
    n = 0
    for A in _sh_chains():
        n += 1
        p = classify(A, ["DQD", "DSt"])
        if not p.in_class("DSt"):
            return fail(_wit(A, profile=p.to_dict()))
        if A.size >= 2 and len(all_congruences(A)) != 2:
            return fail(_wit(A, reason="e-expansion not simple"))
    two_e = catalog_get("two-e")
    p = classify(two_e, ["DQD", "DSt", "Chain", "H"])
    if not (p.in_class("DSt") and p["Chain"]) or p["H"]:
        return fail(_wit(two_e, profile=p.to_dict()))
    return ok(f"{n} e-expanded chains of size <= 4 are DSt and simple; two-e is a DSt chain, not Heyting")


def _count_160(ctx: Context) -> Outcome:
    raw = sum(1 for _ in enumerate_sh_on_lattice(chain_lattice(4)))
    classes = {canonical_form(A) for A in sh_algebras_on_lattice(chain_lattice(4))}
    if raw != 160 or len(classes) != 160:
        return fail({"raw": raw, "iso_classes": len(classes)})
    return ok("160 tables, 160 isomorphism classes")


def _thm_5_1(ctx: Context) -> Outcome:
    return _equivalent(ctx, ctx.members("JID1", min_size=3), {
        "simple": ctx.is_simple, "SI": ctx.is_si, "SC": lambda A: ctx.profile(A)["SC"]})


def _sc_members(ctx: Context, cls: str, min_size: int) -> list[FiniteAlgebra]:
    return [A for A in ctx.members(cls, min_size) if ctx.profile(A)["SC"]]


def _fixed_points(A: FiniteAlgebra) -> list[int]:
    return [a for a in range(A.size) if A.neg[a] == a]


def _lemma_5_2(ctx: Context) -> Outcome:
    def check(A):
        for a in _fixed_points(A):
            for b in range(A.size):
                if A.join[A.join[a][b]][A.star(b)] != A.one:
                    return _wit(A, a=a, b=b)
        return None
    return _per_algebra(ctx, _sc_members(ctx, "JID1", 2), check)


def _lemma_5_3(ctx: Context) -> Outcome:
    def check(A):
        for x in range(A.size):
            if x != A.one and not A.leq(x, A.neg[x]):
                return _wit(A, x=x)
        return None
    return _per_algebra(ctx, _sc_members(ctx, "JID1", 2), check)


def _height(A: FiniteAlgebra) -> int:
    # longest chain from 0, counted in covering steps
    order = sorted(range(A.size), key=lambda x: sum(A.leq(y, x) for y in range(A.size)))
    h = {x: 0 for x in order}
    for x in order:
        for y in order:
            if y != x and A.leq(y, x):
                h[x] = max(h[x], h[y] + 1)
    return h[A.one]


def _lemma_5_4(ctx: Context) -> Outcome:
    def check(A):
        if _fixed_points(A) and _height(A) > 2:
            return _wit(A, fixed=_fixed_points(A), height=_height(A))
        return None
    return _per_algebra(ctx, _sc_members(ctx, "JID1", 3), check)


def _lemma_5_5(ctx: Context) -> Outcome:
    def check(A):
        for x in range(A.size):
            if x != A.one and A.neg[x] != A.one and A.neg[x] != x:
                return _wit(A, x=x)
        return None
    return _per_algebra(ctx, _sc_members(ctx, "JID1", 2), check)


def _lemma_5_6(ctx: Context) -> Outcome:
    def check(A):
        for a in _fixed_points(A):
            if A.neg[A.star(a)] != A.star(a):
                return _wit(A, a=a)
        return None
    return _per_algebra(ctx, _sc_members(ctx, "JID1", 2), check)


def _prop_5_8(ctx: Context) -> Outcome:
    def check(A):
        if _fixed_points(A) and ctx.d_name(A) is None:
            return _wit(A, fixed=_fixed_points(A))
        return None
    return _per_algebra(ctx, _sc_members(ctx, "JID1", 3), check)


def _prop_5_9(ctx: Context) -> Outcome:
    def check(A):
        if not any(A.neg[x] == x for x in range(A.size) if x != A.one) and not ctx.profile(A)["DSt"]:
            return _wit(A, reason="no fixed point of ' yet not DSt")
        return None
    return _per_algebra(ctx, _sc_members(ctx, "JID1", 2), check)


def _thm_5_10(ctx: Context) -> Outcome:
    def d(A):
        return ctx.d_name(A) is not None or (ctx.profile(A)["DSt"] and ctx.profile(A)["SC"])
    algebras = [A for A in ctx.universe if A.size > 2]

    def check(A):
        in_jid1 = ctx.profile(A).in_class("JID1")
        vals = {"a": in_jid1 and ctx.is_si(A), "b": in_jid1 and ctx.is_simple(A),
                "c": in_jid1 and ctx.profile(A)["SC"], "d": bool(d(A))}
        return None if len(set(vals.values())) == 1 else _wit(A, values=vals)
    return _per_algebra(ctx, algebras, check)


def _cor_5_11(ctx: Context) -> Outcome:
    def check(A):
        if not ctx.is_si(A):
            return None
        p = ctx.profile(A)
        if p["DSt"] or (p["Bo"] and p["DM"]):
            return None
        return _wit(A, reason="SI member of JID1 neither DSt nor in V(D1, D2, D3)")
    return _per_algebra(ctx, ctx.members("JID1", 2), check)


def _prop_6_1(ctx: Context) -> Outcome:
    L_ident, H_ident = IDENTITIES["L"], IDENTITIES["H"]
    n = 0
    for size in range(1, ctx.universe_size + 1):
        for lat in distributive_lattices(size):
            for A in sh_algebras_on_lattice(lat, name="sh"):
                n += 1
                if satisfies(A, L_ident).holds:
                    c = satisfies(A, H_ident)
                    if not c.holds:
                        return fail(_wit(A, assignment=c.witness))
    return ok(f"{n} semi-Heyting algebras, size <= {ctx.universe_size}")


def _lemma_6_3(ctx: Context) -> Outcome:
    def check(A):
        p = classify(A, ["Lev1", "Lev1-t"])
        return None if p["Lev1"] and p["Lev1-t"] else _wit(A, profile=p.to_dict())
    return _per_algebra(ctx, _dpc_chains(ctx), check)


def _prop_6_4(ctx: Context) -> Outcome:
    d2 = catalog_get("d2")
    algebras = [catalog_get(f"cdp-{n}") for n in range(1, 7)] + [d2]
    algebras += [direct_product(catalog_get(f"cdp-{n}"), d2) for n in range(2, 5)]

    def check(A):
        p = classify(A, ["DQD", "JID", "L", "Lev1"])
        return None if p.in_class("JIDL1") else _wit(A, profile=p.to_dict())
    out = _per_algebra(ctx, algebras, check)
    if out.status == PASS:
        out.detail = "cdp-1..cdp-6, D2 and cdp-n x D2 for n = 2..4"
    return out


def _lemma_6_5(ctx: Context) -> Outcome:
    def check(A):
        for x in range(A.size):
            for y in range(A.size):
                if A.join[x][y] != A.one and not A.leq(x, A.neg[y]):
                    return _wit(A, x=x, y=y)
        return None
    return _per_algebra(ctx, _sc_members(ctx, "JIDL1", 3), check)


def _lemma_6_6(ctx: Context) -> Outcome:
    def check(A):
        for a in range(A.size):
            if A.neg[a] == a or a == A.one:
                continue
            for b in range(A.size):
                if not A.leq(a, b) and A.neg[A.neg[A.imp[a][b]]] != A.zero:
                    return _wit(A, a=a, b=b)
        return None
    return _per_algebra(ctx, _sc_members(ctx, "JIDL1", 3), check)


def _thm_6_7(ctx: Context) -> Outcome:
    def check(A):
        p = ctx.profile(A)
        in_l1 = p.in_class("JIDL1")
        four = ctx.d_name(A) == "d2" or _is_chain_dsth(ctx, A)
        vals = {"1": in_l1 and ctx.is_si(A), "2": in_l1 and ctx.is_simple(A),
                "3": in_l1 and p["SC"], "4": four}
        return None if len(set(vals.values())) == 1 else _wit(A, values=vals)
    return _per_algebra(ctx, [A for A in ctx.universe if A.size > 2], check)


def _cor_6_8(ctx: Context) -> Outcome:
    chain_forms = {canonical_form(catalog_get(f"cdp-{n}")): f"cdp-{n}" for n in range(3, ctx.universe_size + 1)}
    seen = set()

    def check(A):
        if A.size <= 2 or not ctx.is_si(A):
            return None
        key = canonical_form(A)
        name = chain_forms.get(key) or (ctx.d_name(A) if ctx.d_name(A) == "d2" else None)
        if name is None:
            return _wit(A, reason="SI member of JIDL1 that is neither D2 nor a cdp chain")
        seen.add(name)
        return None
    out = _per_algebra(ctx, ctx.members("JIDL1"), check)
    want = set(chain_forms.values()) | ({"d2"} if ctx.universe_size >= 4 else set())
    if out.status == PASS and seen != want:
        return fail({"found": sorted(seen), "expected": sorted(want)})
    return out


def _cor_7_2(ctx):
    return _catalog_expect([(f"cdp-{n}", "DPC", True) for n in range(2, 7)] + [("d2", "DPC", False)])


def _cor_7_3(ctx):
    return _catalog_expect([("d2", "DM", True)] + [(f"cdp-{n}", "DM", False) for n in range(3, 7)])


def _cor_7_5(ctx):
    out = _ladder()
    if out.status != PASS:
        return out
    return _catalog_expect([(f"cdp-{n}", "DPC", True) for n in range(2, 7)] + [("d2", "DPC", False)])


def _cor_7_6(ctx):
    pairs = []
    for key in ("Regular", "Regular-alt"):
        pairs += [("cdp-3", key, True), ("d2", key, True), ("cdp-2", key, True),
                  ("cdp-4", key, False), ("cdp-5", key, False)]
    return _catalog_expect(pairs)


def _cor_7_7(ctx):
    return _catalog_expect([
        ("cdp-3", "Regular", True), ("cdp-3", "PlusNeg", True), ("cdp-2", "PlusNeg", True),
        ("d2", "Regular", True), ("d2", "PlusNeg", False), ("cdp-4", "Regular", False),
    ])


def _lemma_7_8(ctx):
    # cdp-1 is trivial: it has no embedding into a nontrivial chain since 0 and 1 are constants
    for n in range(1, 7):
        for m in range(1, n + 1):
            has = bool(find_embeddings(catalog_get(f"cdp-{m}"), catalog_get(f"cdp-{n}")))
            if has != (m > 1 or n == 1):
                return fail({"m": m, "n": n, "embeds": has})
    return ok("cdp-m embeds in cdp-n for 2 <= m <= n <= 6; trivial cdp-1 embeds only in itself")


def _discriminator_claim(ctx):
    t = hand_discriminator()
    for name in ("two", "d1", "d2", "d3", "cdp-3", "cdp-4"):
        c = verify_discriminator(catalog_get(name), t)
        if not c.holds:
            return fail({"algebra": name, "triple": c.witness})
    return ok("hand-supplied term verified on two, D1-D3, cdp-3, cdp-4")


def _figure_claim(ctx):
    for name in ("d1", "d2", "d3"):
        A = catalog_get(name)
        p = classify(A, ["DQD", "DM", "Bo", "H"])
        if not (p["DQD"] and p["DM"] and p["Bo"]) or p["H"] != (name == "d2"):
            return fail(_wit(A, profile=p.to_dict()))
        if len(all_congruences(A)) != 2:
            return fail(_wit(A, reason="not simple"))
    return ok("D1, D2, D3 are DQD + DM + Bo and simple; only D2 is Heyting")


# id, locus, summary, function
_CLAIMS: list[Claim] = [Claim(*c) for c in [
    ("fig-1", "Figure 1", "D1, D2, D3 classify as DQD, DM, Bo and are simple", _figure_claim),
    ("lemma-2.2", "Lemma 2.2", "arithmetic of DQD algebras", _suite_claim("lemma-2.2", "DQD")),
    ("lemma-2.3", "Lemma 2.3", "further arithmetic of DQD algebras", _suite_claim("lemma-2.3", "DQD")),
    ("prop-2.4-finite-fragment", "Proposition 2.4",
     "Bo forces DM; SI Boolean size-4 members are D1, D2, D3", _prop_2_4),
    ("thm-2.6", "Theorem 2.6", "BDQD1: simple, SI and SC agree", _thm_2_6),
    ("lemma-3.2", "Lemma 3.2", "DPC chains satisfy JID", _lemma_3_2),
    ("cor-3.3", "Corollary 3.3", "on chains DPC and DSt coincide", _cor_3_3),
    ("lemma-3.4", "Lemma 3.4", "JID arithmetic", _suite_claim("lemma-3.4", "JID")),
    ("thm-3.5", "Theorem 3.5", "JID satisfies the Dms law", _suite_claim("thm-3.5", "JID")),
    ("lemma-3.6", "Lemma 3.6", "JID arithmetic", _suite_claim("lemma-3.6", "JID")),
    ("lemma-3.7", "Lemma 3.7", "x'** = x' and the t2 identity in JID", _suite_claim("lemma-3.7", "JID")),
    ("lemma-3.8-levels", "Lemma 3.8", "both level definitions agree on JID", _levels_agree),
    ("thm-3.9", "Theorem 3.9", "JID is at level 2; SIX is not at level 1", _thm_3_9),
    ("thm-4.1", "Theorem 4.1", "DSt satisfies x'' = x'* and Lev1", _suite_claim("thm-4.1", "DSt")),
    ("remark-4.2", "Remark 4.2", "EIGHT is DPC, satisfies its identity, fails Lev1", _remark_4_2),
    ("lemma-4.3", "Lemma 4.3", "DSt join laws", _suite_claim("lemma-4.3", "DSt")),
    ("cor-4.5", "Corollary 4.5", "DSt with |L| > 2: simple, SI and SC agree", _cor_4_5),
    ("thm-4.6-finite-fragment", "Theorem 4.6", "C_n ladder separates V(C_n) from V(C_(n+1))", _thm_4_6),
    ("thm-4.7-finite-fragment", "Theorem 4.7", "DSt + L is Heyting and its SI members are chains", _thm_4_7),
    ("sec4-expansion", "Section 4 examples", "A^e of every SH chain is DSt and simple; two-e is not Heyting",
     _expansion_claim),
    ("sec4-count-160", "Section 4 examples", "160 semi-Heyting chains of size 4", _count_160),
    ("thm-5.1", "Theorem 5.1", "JID1 with |L| > 2: simple, SI and SC agree", _thm_5_1),
    ("lemma-5.2", "Lemma 5.2", "a' = a implies a | b | b* = 1", _lemma_5_2),
    ("lemma-5.3", "Lemma 5.3", "x != 1 implies x <= x'", _lemma_5_3),
    ("lemma-5.4", "Lemma 5.4", "a fixed point of ' bounds the height by 2", _lemma_5_4),
    ("lemma-5.5", "Lemma 5.5", "x = 1 or x' = 1 or x' = x", _lemma_5_5),
    ("lemma-5.6", "Lemma 5.6", "a' = a implies a*' = a*", _lemma_5_6),
    ("prop-5.8", "Proposition 5.8", "a fixed point of ' forces D1, D2 or D3", _prop_5_8),
    ("prop-5.9", "Proposition 5.9", "no fixed point of ' forces DSt", _prop_5_9),
    ("thm-5.10", "Theorem 5.10", "SI in JID1 iff D1, D2, D3 or DSt + SC", _thm_5_10),
    ("cor-5.11-finite-fragment", "Corollary 5.11", "SI members of JID1 are DSt or in V(D1, D2, D3)", _cor_5_11),
    ("prop-6.1", "Proposition 6.1", "linear semi-Heyting algebras are Heyting", _prop_6_1),
    ("lemma-6.2", "Lemma 6.2", "DQDL arithmetic", _suite_claim("lemma-6.2", "DQDL")),
    ("lemma-6.3", "Lemma 6.3", "DPC chains satisfy Lev1", _lemma_6_3),
    ("prop-6.4", "Proposition 6.4", "DStH chains and D2 lie in JIDL1", _prop_6_4),
    ("lemma-6.5", "Lemma 6.5", "x | y != 1 implies x <= y'", _lemma_6_5),
    ("lemma-6.6", "Lemma 6.6", "a' != a, a != 1, a not <= b imply (a -> b)'' = 0", _lemma_6_6),
    ("thm-6.7", "Theorem 6.7", "SI in JIDL1 iff D2 or a DStH chain", _thm_6_7),
    ("cor-6.8-finite-fragment", "Corollary 6.8", "SI members of JIDL1 are D2 and the cdp chains", _cor_6_8),
    ("cor-7.2", "Corollary 7.2", "x | x' = 1 separates the chains from D2", _cor_7_2),
    ("cor-7.3", "Corollary 7.3", "x'' = x separates D2 from the chains", _cor_7_3),
    ("cor-7.4-sep", "Corollary 7.4", "C_n holds in cdp-n and D2, fails in cdp-(n+1)", lambda ctx: _ladder()),
    ("cor-7.5", "Corollary 7.5", "DPC with C_n cuts out cdp-n", _cor_7_5),
    ("cor-7.6", "Corollary 7.6", "regularity holds on cdp-3 and D2, fails on cdp-4", _cor_7_6),
    ("cor-7.7", "Corollary 7.7", "regularity with x' = x+ cuts out cdp-3", _cor_7_7),
    ("lemma-7.8", "Lemma 7.8", "cdp-m embeds in cdp-n for m <= n", _lemma_7_8),
    ("discriminator-per-algebra", "Corollaries 3.10, 4.4",
     "a ternary discriminator term on each small simple catalog algebra", _discriminator_claim),
]]

REGISTRY: dict[str, Claim] = {c.id: c for c in _CLAIMS}

# loci the registry must cover
IN_SCOPE_LOCI = (
    "Figure 1", "Lemma 2.2", "Lemma 2.3", "Proposition 2.4", "Theorem 2.6",
    "Lemma 3.2", "Lemma 3.4", "Theorem 3.5", "Lemma 3.6", "Lemma 3.7", "Theorem 3.9",
    "Theorem 4.1", "Remark 4.2", "Lemma 4.3", "Corollary 4.5", "Theorem 4.6",
    "Theorem 5.1", "Lemma 5.2", "Lemma 5.3", "Lemma 5.4", "Lemma 5.5", "Lemma 5.6",
    "Proposition 5.8", "Proposition 5.9", "Theorem 5.10", "Corollary 5.11",
    "Proposition 6.1", "Lemma 6.2", "Lemma 6.3", "Proposition 6.4", "Lemma 6.5", "Lemma 6.6",
    "Theorem 6.7", "Corollary 6.8",
    "Corollary 7.2", "Corollary 7.3", "Corollary 7.4", "Corollary 7.5", "Corollary 7.6",
    "Corollary 7.7", "Lemma 7.8",
)


def missing_loci() -> list[str]:
    covered = {c.locus for c in _CLAIMS}
    return [loc for loc in IN_SCOPE_LOCI if loc not in covered]


def select_claims(selector: str | None) -> list[Claim]:
    """Claims matching an exact id, a glob over ids, or a section number like ``5``."""
    if not selector:
        return list(_CLAIMS)
    out = []
    for part in selector.split(","):
        part = part.strip()
        if part in REGISTRY:
            hits = [REGISTRY[part]]
        elif part.isdigit():
            hits = [c for c in _CLAIMS if _section(c) == part]
        else:
            hits = [c for c in _CLAIMS if fnmatch.fnmatchcase(c.id, part)]
        if not hits:
            raise UnknownClaim(part)
        out.extend(h for h in hits if h not in out)
    order = {c.id: i for i, c in enumerate(_CLAIMS)}
    return sorted(out, key=lambda c: order[c.id])


def _section(c: Claim) -> str:
    head = c.id.split("-", 1)[1] if "-" in c.id else c.id
    if head.startswith("sec"):
        return head[3:].split("-")[0]
    return head.split(".")[0]


def run_paper_suite(filter: str | None = None, universe: int = DEFAULT_UNIVERSE,
                    context: Context | None = None) -> VerificationReport:
    claims = select_claims(filter)
    ctx = context or Context(universe)
    report = VerificationReport(ctx.universe_size)
    for c in claims:
        t0 = time.perf_counter()
        try:
            out = c.run(ctx)
        except Exception as exc:  # a crashing claim is a failure, not an abort
            out = fail({"error": f"{type(exc).__name__}: {exc}"})
        detail = out.detail
        if c.finite_fragment:
            detail = ("finite fragment; " + detail) if detail else "finite fragment"
        report.results.append(ClaimResult(c.id, c.locus, out.status, out.witness, detail,
                                          time.perf_counter() - t0))
    return report
