"""Terms and identities over the signature {&, |, ->, ', 0, 1}.

Grammar, loosest binding first::

    identity := term ("=" | "<=") term
    term     := join ("->" term)?          # right associative
    join     := meet ("|" meet)*
    meet     := postfix ("&" postfix)*
    postfix  := atom ("'" | "*" | "+")*
    atom     := VAR | "0" | "1" | "(" term ")"

``x*`` abbreviates ``x -> 0`` and ``x+`` abbreviates ``x'*'``; both are
expanded while parsing, so evaluation only ever sees the basic signature.
``s <= t`` is read as the identity ``s & t = s``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Mapping, Sequence, Union

import numpy as np

from .algebra import FiniteAlgebra


class ParseError(ValueError):
    pass


class UnboundVariable(KeyError):
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int  # 0 or 1


@dataclass(frozen=True)
class Neg:
    arg: "Term"


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Imp:
    left: "Term"
    right: "Term"


Term = Union[Var, Const, Neg, Meet, Join, Imp]
ZERO = Const(0)
ONE = Const(1)


def star(t: Term) -> Term:
    return Imp(t, ZERO)


def plus(t: Term) -> Term:
    return Neg(star(Neg(t)))


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term

    @property
    def variables(self) -> list[str]:
        return sorted(variables(self.lhs) | variables(self.rhs))

    def __str__(self) -> str:
        return f"{pretty(self.lhs)} = {pretty(self.rhs)}"


def leq(s: Term, t: Term) -> Identity:
    """The inequality s <= t as the identity s & t = s."""
    return Identity(Meet(s, t), s)


def variables(t: Term) -> set[str]:
    out: set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            out.add(u.name)
        elif isinstance(u, Neg):
            stack.append(u.arg)
        elif isinstance(u, (Meet, Join, Imp)):
            stack.append(u.left)
            stack.append(u.right)
    return out


def size(t: Term) -> int:
    if isinstance(t, (Var, Const)):
        return 1
    if isinstance(t, Neg):
        return 1 + size(t.arg)
    return 1 + size(t.left) + size(t.right)


# ---------------------------------------------------------------------------
# parsing

VAR_RE = r"[a-uw-z][a-z0-9]*"
_TOKEN_RE = re.compile(rf"\s*(?:(->|<=|[&|'*+=()01])|({VAR_RE}))")
_ALIASES = {"∧": "&", "∨": "|", "→": "->", "≈": "=", "≤": "<=", "⁺": "+"}


def _tokenize(text: str) -> list[str]:
    for a, b in _ALIASES.items():
        text = text.replace(a, b)
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r} at position {pos}")
        tokens.append(m.group(1) or m.group(2))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r} but found {tok!r} in {self.text!r}")
        self.i += 1
        return tok

    def done(self) -> None:
        if self.peek() is not None:
            raise ParseError(f"unexpected token {self.peek()!r} in {self.text!r}")

    def term(self) -> Term:
        left = self.join()
        if self.peek() == "->":
            self.take()
            return Imp(left, self.term())
        return left

    def join(self) -> Term:
        t = self.meet()
        while self.peek() == "|":
            self.take()
            t = Join(t, self.meet())
        return t

    def meet(self) -> Term:
        t = self.postfix()
        while self.peek() == "&":
            self.take()
            t = Meet(t, self.postfix())
        return t

    def postfix(self) -> Term:
        t = self.atom()
        while self.peek() in ("'", "*", "+"):
            op = self.take()
            t = Neg(t) if op == "'" else star(t) if op == "*" else plus(t)
        return t

    def atom(self) -> Term:
        tok = self.take()
        if tok == "(":
            t = self.term()
            self.take(")")
            return t
        if tok == "0":
            return ZERO
        if tok == "1":
            return ONE
        if re.fullmatch(VAR_RE, tok):
            return Var(tok)
        raise ParseError(f"unexpected token {tok!r} in {self.text!r}")


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.done()
    return t


def parse_identity(text: str) -> Identity:
    p = _Parser(text)
    lhs = p.term()
    rel = p.take()
    if rel not in ("=", "<="):
        raise ParseError(f"expected '=' or '<=' but found {rel!r} in {text!r}")
    rhs = p.term()
    p.done()
    return leq(lhs, rhs) if rel == "<=" else Identity(lhs, rhs)


# ---------------------------------------------------------------------------
# printing

# binding strength: larger binds tighter
_PREC = {Imp: 1, Join: 2, Meet: 3}


def _prec(t: Term) -> int:
    if isinstance(t, Imp) and t.right == ZERO:
        return 4  # printed as postfix *
    return _PREC.get(type(t), 4)


def pretty(t: Term) -> str:
    """Rendering with few parentheses; ``parse_term(pretty(t)) == t``.

    Meets and joins under ``->`` are always parenthesised for readability.
    """
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return str(t.value)
    if isinstance(t, Neg):
        return _postfix_operand(t.arg) + "'"
    if isinstance(t, Imp) and t.right == ZERO:
        return _postfix_operand(t.left) + "*"
    p = _prec(t)
    sym = {Meet: " & ", Join: " | ", Imp: " -> "}[type(t)]
    if isinstance(t, Imp):
        # right associative: only a nested implication on the right goes bare
        left = _wrap(t.left, _prec(t.left) < 4)
        right = _wrap(t.right, _prec(t.right) < 4 and not isinstance(t.right, Imp))
    else:
        left = _wrap(t.left, _prec(t.left) < p)
        right = _wrap(t.right, _prec(t.right) <= p)
    return left + sym + right


def _postfix_operand(t: Term) -> str:
    s = pretty(t)
    return s if _prec(t) == 4 else f"({s})"


def _wrap(t: Term, paren: bool) -> str:
    s = pretty(t)
    return f"({s})" if paren else s


# ---------------------------------------------------------------------------
# evaluation


def eval_term(A: FiniteAlgebra, t: Term, v: Mapping[str, int]) -> int:
    if isinstance(t, Var):
        try:
            return v[t.name]
        except KeyError:
            raise UnboundVariable(t.name) from None
    if isinstance(t, Const):
        return A.one if t.value else A.zero
    if isinstance(t, Neg):
        return A.neg[eval_term(A, t.arg, v)]
    table = A.meet if isinstance(t, Meet) else A.join if isinstance(t, Join) else A.imp
    return table[eval_term(A, t.left, v)][eval_term(A, t.right, v)]


def eval_array(A: FiniteAlgebra, t: Term, env: Mapping[str, np.ndarray]) -> np.ndarray:
    """Evaluate ``t`` pointwise over arrays of element indices."""
    meet, join, imp, neg = A.arrays
    cache: dict[Term, np.ndarray] = {}
    shape = next(iter(env.values())).shape if env else ()

    def go(u: Term) -> np.ndarray:
        hit = cache.get(u)
        if hit is not None:
            return hit
        if isinstance(u, Var):
            try:
                r = env[u.name]
            except KeyError:
                raise UnboundVariable(u.name) from None
        elif isinstance(u, Const):
            r = np.full(shape, A.one if u.value else A.zero, dtype=np.intp)
        elif isinstance(u, Neg):
            r = neg[go(u.arg)]
        else:
            table = meet if isinstance(u, Meet) else join if isinstance(u, Join) else imp
            r = table[go(u.left), go(u.right)]
        cache[u] = r
        return r

    return go(t)


def assignment_grid(n: int, names: Sequence[str]) -> dict[str, np.ndarray]:
    """All assignments of ``names`` into ``0..n-1`` in mixed-radix order.

    The first name is the most significant digit, so position ``k`` in the
    flattened arrays is the k-th assignment in lexicographic order.
    """
    k = len(names)
    if k == 0:
        return {}
    grid = np.indices((n,) * k, dtype=np.intp).reshape(k, -1)
    return {name: grid[i] for i, name in enumerate(names)}


@dataclass(frozen=True)
class Check:
    holds: bool
    witness: dict[str, int] | None = None

    def __bool__(self) -> bool:
        return self.holds


def satisfies(A: FiniteAlgebra, ident: Identity) -> Check:
    """Decide A |= ident; on failure return the least counterexample.

    Assignments are ordered lexicographically with variables sorted by name.
    """
    names = ident.variables
    env = assignment_grid(A.size, names)
    if not names:
        lhs = eval_term(A, ident.lhs, {})
        rhs = eval_term(A, ident.rhs, {})
        return Check(True) if lhs == rhs else Check(False, {})
    lhs = eval_array(A, ident.lhs, env)
    rhs = eval_array(A, ident.rhs, env)
    bad = lhs != rhs
    if not bad.any():
        return Check(True)
    k = int(np.argmax(bad))
    return Check(False, {name: int(env[name][k]) for name in names})


# ---------------------------------------------------------------------------
# term families


def xn_star_term(n: int, var: str = "x") -> Term:
    """x with the operation ``u -> u'*`` applied n times."""
    t: Term = Var(var)
    for _ in range(n):
        t = star(Neg(t))
    return t


def t_n_term(n: int, var: str = "x") -> Term:
    """t_0 = x, t_{k+1} = t_k & x^{(k+1)('*)}."""
    t: Term = Var(var)
    for k in range(1, n + 1):
        t = Meet(t, xn_star_term(k, var))
    return t


def iterate_prime_star(t: Term, n: int) -> Term:
    for _ in range(n):
        t = star(Neg(t))
    return t


def level_identity_t(n: int) -> Identity:
    """t_n(x) = t_{n+1}(x)."""
    return Identity(t_n_term(n), t_n_term(n + 1))


def level_identity_alt(n: int) -> Identity:
    """Level n via u = x & x'*: u iterated (n-1) times equals u iterated n times.

    Level 1 therefore reads ``x & x'* = (x & x'*)'*``; for n = 0 the t-form
    ``x = x & x'*`` is used.
    """
    if n == 0:
        return level_identity_t(0)
    u = Meet(Var("x"), star(Neg(Var("x"))))
    return Identity(iterate_prime_star(u, n - 1), iterate_prime_star(u, n))


def cn_identity(n: int) -> Identity:
    """x1 | ... | xn | (x1 -> x2) | ... | (x_{n-1} -> xn) = 1."""
    xs = [Var(f"x{i}") for i in range(1, n + 1)]
    parts: list[Term] = list(xs) + [Imp(xs[i], xs[i + 1]) for i in range(n - 1)]
    t = parts[0]
    for p in parts[1:]:
        t = Join(t, p)
    return Identity(t, ONE)


# ---------------------------------------------------------------------------
# term enumeration


def iter_terms(names: Sequence[str], max_size: int) -> Iterator[Term]:
    """Every term with at most ``max_size`` nodes, in the canonical order.

    Order: by node count, then constructor (variables in the given order,
    0, 1, ', &, |, ->), then children left to right.
    """
    by_size: list[list[Term]] = [[]]
    for s in range(1, max_size + 1):
        level = list(_terms_of_size(names, s, by_size))
        by_size.append(level)
        yield from level


def _terms_of_size(names, s, by_size) -> Iterator[Term]:
    if s == 1:
        yield from (Var(n) for n in names)
        yield ZERO
        yield ONE
        return
    for t in by_size[s - 1]:
        yield Neg(t)
    for ctor in (Meet, Join, Imp):
        for ls in range(1, s - 1):
            for left in by_size[ls]:
                for right in by_size[s - 1 - ls]:
                    yield ctor(left, right)


# ---------------------------------------------------------------------------
# identity catalog files


def read_identity_catalog(source: str | Path) -> dict[str, Identity]:
    """Parse ``NAME: identity`` lines; blank lines and ``#`` comments are skipped."""
    text = Path(source).read_text() if isinstance(source, Path) else source
    out: dict[str, Identity] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, body = line.partition(":")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'NAME: identity'")
        name = name.strip()
        if name in out:
            raise ParseError(f"line {lineno}: duplicate name {name!r}")
        try:
            out[name] = parse_identity(body)
        except ParseError as exc:
            raise ParseError(f"line {lineno} ({name}): {exc}") from None
    return out


# ---------------------------------------------------------------------------
# quantified conditions that are not identities


class UnknownCondition(KeyError):
    pass


def _sc(A: FiniteAlgebra) -> Check:
    for x in range(A.size):
        if x != A.one and A.meet[x][A.star(A.neg[x])] != A.zero:
            return Check(False, {"x": x})
    return Check(True)


def _dense_neg(A: FiniteAlgebra) -> Check:
    for x in range(A.size):
        if x != A.one and A.neg[x] != A.one:
            return Check(False, {"x": x})
    return Check(True)


CONDITIONS = {
    # for every x != 1: x & x'* = 0
    "SC": _sc,
    # for every x: x' = 1 or x = 1
    "DenseNeg": _dense_neg,
}


def register_condition(name: str, fn) -> None:
    CONDITIONS[name] = fn


def satisfies_condition(A: FiniteAlgebra, cond: str) -> Check:
    try:
        fn = CONDITIONS[cond]
    except KeyError:
        raise UnknownCondition(cond) from None
    return fn(A)
