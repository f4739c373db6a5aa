"""Axiom profiles, levels and lemma suites for finite algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Union

from .algebra import FiniteAlgebra
from .terms import (
    CONDITIONS,
    Check,
    Identity,
    cn_identity,
    level_identity_alt,
    level_identity_t,
    parse_identity,
    read_identity_catalog,
    register_condition,
    satisfies,
    satisfies_condition,
)

IDENTITIES: dict[str, Identity] = read_identity_catalog(
    resources.files("dqdlab").joinpath("data/identities.txt").read_text()
)

DEFAULT_LEVEL_CAP = 3
DEFAULT_CN_MAX = 4


def _chain(A: FiniteAlgebra) -> Check:
    for x in range(A.size):
        for y in range(x):
            if not (A.leq(x, y) or A.leq(y, x)):
                return Check(False, {"x": y, "y": x})
    return Check(True)


def _antitone(A: FiniteAlgebra) -> Check:
    for x in range(A.size):
        for y in range(A.size):
            if A.leq(x, y) and not A.leq(A.neg[y], A.neg[x]):
                return Check(False, {"x": x, "y": y})
    return Check(True)


register_condition("Chain", _chain)
register_condition("Antitone", _antitone)

Predicate = Union[Identity, str, tuple]


def _predicates(level_cap: int = DEFAULT_LEVEL_CAP, cn_max: int = DEFAULT_CN_MAX) -> dict[str, Predicate]:
    """Profile predicates in their stable report order.

    A value is an Identity, a condition name, or a tuple of other keys whose
    conjunction is meant.
    """
    I = IDENTITIES
    preds: dict[str, Predicate] = {
        "SH1": I["SH1"], "SH2": I["SH2"], "SH3": I["SH3"],
        "SH": ("SH1", "SH2", "SH3"),
        "H": I["H"], "Bo": I["Bo"],
        "DQD-a0": I["DQD-a0"], "DQD-a1": I["DQD-a1"],
        "DQD-b": I["DQD-b"], "DQD-c": I["DQD-c"], "DQD-d": I["DQD-d"],
        "DQD": ("SH", "DQD-a0", "DQD-a1", "DQD-b", "DQD-c", "DQD-d"),
    }
    for key in ("DPC", "DSt", "DM", "Dms", "B", "JID", "StrongJID", "L"):
        preds[key] = I[key]
    for k in range(level_cap + 1):
        preds[f"Lev{k}"] = level_identity_alt(k)
    for k in range(level_cap + 1):
        preds[f"Lev{k}-t"] = level_identity_t(k)
    preds["SC"] = "SC"
    preds["DenseNeg"] = "DenseNeg"
    preds["Chain"] = "Chain"
    for k in range(2, cn_max + 1):
        preds[f"C{k}"] = cn_identity(k)
    for key in ("Regular", "Regular-alt", "PlusNeg", "EightId", "DStDouble"):
        preds[key] = I[key]
    return preds


PREDICATES = _predicates()

# class name -> profile keys that must all hold
CLASSES: dict[str, tuple[str, ...]] = {
    "SH": ("SH",),
    "DQD": ("DQD",),
    "DPC": ("DQD", "DPC"),
    "DSt": ("DQD", "DSt"),
    "DStH": ("DQD", "DSt", "H"),
    "DM": ("DQD", "DM"),
    "DQB": ("DQD", "Bo"),
    "Dms": ("DQD", "Dms"),
    "BDQD1": ("DQD", "B", "Lev1-t"),
    "JID": ("DQD", "JID"),
    "JID1": ("DQD", "JID", "Lev1"),
    "DQDL": ("DQD", "L"),
    "JIDL1": ("DQD", "JID", "L", "Lev1"),
}


@dataclass(frozen=True)
class PredicateResult:
    holds: bool
    witness: dict[str, int] | None = None
    failed: str | None = None  # failing component of a conjunction

    def to_dict(self) -> dict:
        out: dict = {"holds": self.holds}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.failed is not None:
            out["failed"] = self.failed
        return out


@dataclass
class AlgebraProfile:
    algebra: str
    size: int
    results: dict[str, PredicateResult] = field(default_factory=dict)

    def __getitem__(self, key: str) -> bool:
        return self.results[key].holds

    def in_class(self, name: str) -> bool:
        return all(self.results[k].holds for k in CLASSES[name])

    def to_dict(self) -> dict:
        return {k: r.to_dict() for k, r in self.results.items()}


def evaluate(A: FiniteAlgebra, pred: Predicate, done: dict[str, PredicateResult] | None = None) -> PredicateResult:
    if isinstance(pred, Identity):
        c = satisfies(A, pred)
        return PredicateResult(c.holds, c.witness)
    if isinstance(pred, str):
        c = satisfies_condition(A, pred)
        return PredicateResult(c.holds, c.witness)
    done = {} if done is None else done
    for key in pred:
        if key not in done:
            done[key] = evaluate(A, PREDICATES[key], done)
        r = done[key]
        if not r.holds:
            return PredicateResult(False, r.witness, r.failed or key)
    return PredicateResult(True)


def check_predicate(A: FiniteAlgebra, key: str) -> PredicateResult:
    return evaluate(A, PREDICATES[key])


def classify(A: FiniteAlgebra, keys=None) -> AlgebraProfile:
    """Evaluate every predicate (or just ``keys``) on A."""
    profile = AlgebraProfile(A.name, A.size)
    done: dict[str, PredicateResult] = {}
    for key in (PREDICATES if keys is None else keys):
        if key not in done:
            done[key] = evaluate(A, PREDICATES[key], done)
        profile.results[key] = done[key]
    if keys is not None:
        profile.results = {k: profile.results[k] for k in keys}
    return profile


def in_class(A: FiniteAlgebra, name: str) -> bool:
    return classify(A, CLASSES[name]).in_class(name)


@dataclass(frozen=True)
class Levels:
    alt: int | None  # least n with (x & x'*)^((n-1)('*)) = (x & x'*)^(n('*))
    t: int | None  # least n with t_n(x) = t_{n+1}(x)

    @property
    def agree(self) -> bool:
        return self.alt == self.t


def _least_level(A, make, cap):
    for n in range(cap + 1):
        if satisfies(A, make(n)):
            return n
    return None


def levels(A: FiniteAlgebra, cap: int = DEFAULT_LEVEL_CAP) -> Levels:
    return Levels(_least_level(A, level_identity_alt, cap), _least_level(A, level_identity_t, cap))


def level_of(A: FiniteAlgebra, cap: int = DEFAULT_LEVEL_CAP) -> int | None:
    """Least level n <= cap of A, or None.

    Both level forms are computed; when they disagree the t-form value is
    returned (the alternative only matches it inside JID).
    """
    lv = levels(A, cap)
    return lv.t


# ---------------------------------------------------------------------------
# lemma suites

SuiteItem = tuple[str, Union[str, Identity]]  # label, identity text / Identity / condition name


@dataclass(frozen=True)
class Suite:
    id: str
    hypothesis: str  # class name from CLASSES
    items: tuple[SuiteItem, ...]


def _suite(id, hypothesis, *items) -> Suite:
    parsed = tuple(
        (label, parse_identity(item) if isinstance(item, str) and item not in CONDITIONS else item)
        for label, item in items
    )
    return Suite(id, hypothesis, parsed)


SUITES: dict[str, Suite] = {s.id: s for s in [
    _suite("lemma-2.2", "DQD",
           ("i.a", "1'* = 1"),
           ("i.b", "1 -> x = x"),
           ("ii", "Antitone"),
           ("iii", "(x & y)'* = x'* & y'*"),
           ("iv", "x''' = x'"),
           ("v", "(x | y)' = (x'' | y)'"),
           ("vi", "x & (y | (x -> z)) = x & (y | z)"),
           ("vii", "x & (x -> y)'' <= y")),
    _suite("lemma-2.3", "DQD",
           ("1", "(x | y)' <= x' -> (x | y)'"),
           ("2", "(x | (y | z)')' = (x | y')' | (x | z')'"),
           ("3", "x & ((x -> y) | z) = x & (y | z)"),
           ("4", "y & (x -> (y & z)) = y & (x -> z)"),
           ("5", "y & (x -> z) <= x -> (y & z)"),
           ("6", "x <= y -> (x & y)"),
           ("7", "(x | y)' = x' & ((x | y)' | (x' -> (x | y)')'')"),
           ("8", "x <= (x -> y) -> y")),
    _suite("lemma-3.4", "JID",
           ("1", "x' -> (x' | y) = x' | (x' -> y)"),
           ("2", "x' -> (x' | y) = x' | (0 -> y)"),
           ("3", "x' | (x' -> y) = x' | (0 -> y)"),
           ("3'", "x' | x'* = 1"),
           ("4", "(x' | y) -> x' = x' | y*"),
           ("5", "(x' | y) -> x' = x' | (y -> x')"),
           ("6", "x' | (y -> x') = x' | y*"),
           ("7", "x' -> (x | y)' = x'* | (x | y)'")),
    _suite("thm-3.5", "JID",
           ("Dms", "(x | y)' = x' & y'")),
    _suite("lemma-3.6", "JID",
           ("1", "x'*'' = x'*"),
           ("2", "x''* = x'*'"),
           ("3", "x -> (x & y') = x* | y'"),
           ("4", "(x & y'*)* = y' | x*"),
           ("5", "(x' | y''*)*' = (x'' & y'*)*")),
    _suite("lemma-3.7", "JID",
           ("star-star", "x'** = x'"),
           ("t2", "x & x'* & x'*'* = (x & x'*)'*")),
    _suite("thm-3.9", "JID",
           ("Lev2", level_identity_alt(2)),
           ("Lev2-t", level_identity_t(2))),
    _suite("thm-4.1", "DSt",
           ("a", "x'' = x'*"),
           ("b", level_identity_alt(1)),
           ("b-t", level_identity_t(1))),
    _suite("lemma-4.3", "DSt",
           ("1", "(x | y)' = (x'* | y'*)*"),
           ("2", "(x'* | y'*)* = x' & y'")),
    _suite("lemma-6.2", "DQDL",
           ("a", "(x -> y) | (y -> x)'' = 1"),
           ("b", "x <= y | (y -> x)''")),
]}


class UnknownSuite(KeyError):
    pass


@dataclass
class SuiteReport:
    suite: str
    algebra: str
    applicable: bool
    hypothesis: PredicateResult
    items: list[tuple[str, Check]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True when not applicable or when every item holds."""
        return all(c.holds for _, c in self.items)

    def failures(self) -> list[tuple[str, Check]]:
        return [(label, c) for label, c in self.items if not c.holds]


def _item_check(A: FiniteAlgebra, item) -> Check:
    if isinstance(item, Identity):
        return satisfies(A, item)
    return satisfies_condition(A, item)


def check_suite(A: FiniteAlgebra, suite: str) -> SuiteReport:
    try:
        s = SUITES[suite]
    except KeyError:
        raise UnknownSuite(suite) from None
    hyp = evaluate(A, CLASSES[s.hypothesis])
    report = SuiteReport(suite, A.name, hyp.holds, hyp)
    if hyp.holds:
        report.items = [(label, _item_check(A, item)) for label, item in s.items]
    return report
