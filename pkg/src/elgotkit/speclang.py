"""A small language of recursive process equations, and its compiler.

A specification file has optional header lines and one equation per line::

    sig actions a b          # or: sig delay / sig ops g/2 h/0
    monad powerset           # or: maybe / traces
    x3 = a.x1 + tick
    x1 = a.(x2 + x3)
    x2 = a.x1 + b.x3

Terms are ``tick`` (or ``✓``), ``0``, variables, prefixes ``a.t``,
operations ``g(t, u)``, choices ``t + u`` and parentheses.  ``+`` associates
to the left and ``.`` binds tighter than ``+``.  Without a ``sig`` line the
action alphabet is the set of prefix symbols that occur, in sorted order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .effects import (Carrier, Exact, Inl, Inr, KleisliMap, MaybeMonad, Monad, coproduct,
                      iterate, monad_by_name)
from .pmonad import PMonad
from .resumption import Coalgebra, ResTree, coit
from .signatures import Layer, Signature

TICK = "✓"
KEYWORDS = {"tick", "sig", "monad"}


class SpecError(ValueError):
    """A lexical, syntactic or semantic error, located by line and column (1-based)."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        loc = f"line {line}, column {col}: " if line else ""
        super().__init__(loc + message)
        self.line = line
        self.col = col
        self.message = message


class GuardednessError(SpecError):
    def __init__(self, violations: list["Violation"]):
        super().__init__("system is not guarded: " + "; ".join(v.describe() for v in violations))
        self.violations = violations


# --------------------------------------------------------------------------
# syntax trees


@dataclass(frozen=True)
class Tick:
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Zero:
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Prefix:
    """``symbol.body``: one layer of a unary symbol (an action, or ``delay``)."""

    symbol: str
    body: object
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Op:
    """``symbol(args...)`` for a symbol of a generic signature."""

    symbol: str
    args: tuple
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Choice:
    left: object
    right: object
    pos: tuple = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Spec:
    monad: str
    sig: Signature
    equations: tuple
    sig_declared: bool = field(default=True, compare=False)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.equations)

    def rhs(self, name: str):
        for n, t in self.equations:
            if n == name:
                return t
        raise KeyError(name)


# --------------------------------------------------------------------------
# lexing and parsing

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#.*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<num>[0-9]+)
  | (?P<tick>✓)
  | (?P<sym>[.+(),=/])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize_line(text: str, line: int) -> list[Token]:
    out = []
    i = 0
    while i < len(text):
        mt = _TOKEN.match(text, i)
        if mt is None:
            raise SpecError(f"unexpected character {text[i]!r}", line, i + 1)
        kind = mt.lastgroup
        if kind not in ("ws", "comment"):
            out.append(Token(kind, mt.group(), line, i + 1))
        i = mt.end()
    return out


class _Parser:
    def __init__(self, tokens: list[Token], line: int, width: int):
        self.toks = tokens
        self.i = 0
        self.line = line
        self.width = width

    def peek(self, k: int = 0) -> Token | None:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        col = tok.col if tok else self.width + 1
        raise SpecError(msg, self.line, col)

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok is None or tok.text != text:
            found = "end of line" if tok is None else repr(tok.text)
            self.error(f"expected {text!r}, found {found}", tok)
        self.i += 1
        return tok

    def term(self):
        left = self.prefixed()
        while self.peek() is not None and self.peek().text == "+":
            tok = self.expect("+")
            right = self.prefixed()
            left = Choice(left, right, (tok.line, tok.col))
        return left

    def prefixed(self):
        tok = self.peek()
        if tok is None:
            self.error("expected a term, found end of line")
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            nxt = self.peek(1)
            if nxt is not None and nxt.text == ".":
                self.i += 2
                return Prefix(tok.text, self.prefixed(), (tok.line, tok.col))
            if nxt is not None and nxt.text == "(":
                self.i += 2
                args = []
                if self.peek() is not None and self.peek().text == ")":
                    self.i += 1
                    return Op(tok.text, (), (tok.line, tok.col))
                args.append(self.term())
                while self.peek() is not None and self.peek().text == ",":
                    self.i += 1
                    args.append(self.term())
                self.expect(")")
                return Op(tok.text, tuple(args), (tok.line, tok.col))
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok is None:
            self.error("expected a term, found end of line")
        self.i += 1
        pos = (tok.line, tok.col)
        if tok.kind == "tick" or tok.text == "tick":
            return Tick(pos)
        if tok.kind == "num":
            if tok.text != "0":
                self.error(f"unexpected number {tok.text}", tok)
            return Zero(pos)
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            return Var(tok.text, pos)
        if tok.text == "(":
            t = self.term()
            self.expect(")")
            return t
        self.error(f"unexpected {tok.text!r}", tok)


def _parse_sig(toks: list[Token], line: int) -> Signature:
    if len(toks) < 2:
        raise SpecError("sig needs a kind: actions, delay or ops", line, toks[0].col)
    kind = toks[1].text
    rest = toks[2:]
    if kind == "delay":
        if rest:
            raise SpecError("sig delay takes no arguments", line, rest[0].col)
        return Signature.delay()
    if kind == "actions":
        letters = []
        for t in rest:
            if t.kind != "ident" or t.text in KEYWORDS:
                raise SpecError(f"invalid action name {t.text!r}", line, t.col)
            if t.text in letters:
                raise SpecError(f"duplicate action {t.text!r}", line, t.col)
            letters.append(t.text)
        if not letters:
            raise SpecError("sig actions needs at least one action", line, toks[1].col)
        return Signature.actions(*letters)
    if kind == "ops":
        ops: dict[str, int] = {}
        j = 0
        while j < len(rest):
            if (j + 2 >= len(rest) or rest[j].kind != "ident" or rest[j + 1].text != "/"
                    or rest[j + 2].kind != "num"):
                raise SpecError("expected symbol/arity", line, rest[j].col)
            if rest[j].text in ops:
                raise SpecError(f"duplicate symbol {rest[j].text!r}", line, rest[j].col)
            ops[rest[j].text] = int(rest[j + 2].text)
            j += 3
        return Signature.ops(**ops)
    raise SpecError(f"unknown signature kind {kind!r}", line, toks[1].col)


def parse(text: str) -> Spec:
    """Parse a specification; every error carries its line and column."""
    monad = None
    sig = None
    equations: list[tuple[str, object, Token]] = []
    for n, raw in enumerate(text.splitlines(), start=1):
        toks = tokenize_line(raw, n)
        if not toks:
            continue
        head = toks[0]
        if head.text == "sig":
            if sig is not None:
                raise SpecError("duplicate sig line", n, head.col)
            sig = _parse_sig(toks, n)
            continue
        if head.text == "monad":
            if monad is not None:
                raise SpecError("duplicate monad line", n, head.col)
            if len(toks) != 2 or toks[1].text not in ("powerset", "maybe", "traces"):
                col = toks[1].col if len(toks) > 1 else head.col
                raise SpecError("monad must be one of powerset, maybe, traces", n, col)
            monad = toks[1].text
            continue
        if head.kind != "ident" or head.text in KEYWORDS:
            raise SpecError(f"expected an equation, found {head.text!r}", n, head.col)
        p = _Parser(toks, n, len(raw))
        p.i = 1
        p.expect("=")
        rhs = p.term()
        if p.peek() is not None:
            p.error(f"unexpected {p.peek().text!r} after term")
        equations.append((head.text, rhs, head))
    declared = sig is not None
    if sig is None:
        sig = Signature.actions(*sorted(_prefix_symbols(t for _, t, _ in equations)))
    spec = Spec(monad or "powerset", sig, tuple((v, t) for v, t, _ in equations), declared)
    _validate(spec, [tok for _, _, tok in equations])
    return spec


def _prefix_symbols(terms) -> set[str]:
    out: set[str] = set()

    def walk(t):
        if isinstance(t, Prefix):
            out.add(t.symbol)
            walk(t.body)
        elif isinstance(t, Op):
            for a in t.args:
                walk(a)
        elif isinstance(t, Choice):
            walk(t.left)
            walk(t.right)

    for t in terms:
        walk(t)
    return out


def _validate(spec: Spec, heads: list[Token]) -> None:
    seen: dict[str, Token] = {}
    for (name, _), tok in zip(spec.equations, heads):
        if name in seen:
            raise SpecError(f"variable {name!r} is defined twice (first on line "
                            f"{seen[name].line})", tok.line, tok.col)
        seen[name] = tok
    symbols = dict(spec.sig.symbols)
    for name in seen:
        if name in symbols:
            tok = seen[name]
            raise SpecError(f"{name!r} is both a variable and a signature symbol",
                            tok.line, tok.col)

    def walk(t):
        if isinstance(t, Var):
            if t.name not in seen:
                raise SpecError(f"undefined variable {t.name!r}", *t.pos)
        elif isinstance(t, Prefix):
            if t.symbol not in symbols:
                raise SpecError(f"unknown action {t.symbol!r}", *t.pos)
            if symbols[t.symbol] != 1:
                raise SpecError(f"{t.symbol!r} has arity {symbols[t.symbol]}, not 1", *t.pos)
            walk(t.body)
        elif isinstance(t, Op):
            if t.symbol not in symbols:
                raise SpecError(f"unknown operation {t.symbol!r}", *t.pos)
            if symbols[t.symbol] != len(t.args):
                raise SpecError(f"{t.symbol!r} expects {symbols[t.symbol]} arguments, got "
                                f"{len(t.args)}", *t.pos)
            for a in t.args:
                walk(a)
        elif isinstance(t, Choice):
            walk(t.left)
            walk(t.right)

    for _, rhs in spec.equations:
        walk(rhs)


# --------------------------------------------------------------------------
# printing


def print_term(t) -> str:
    if isinstance(t, Tick):
        return "tick"
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Prefix):
        body = print_term(t.body)
        return f"{t.symbol}.({body})" if isinstance(t.body, Choice) else f"{t.symbol}.{body}"
    if isinstance(t, Op):
        return f"{t.symbol}(" + ", ".join(print_term(a) for a in t.args) + ")"
    if isinstance(t, Choice):
        right = print_term(t.right)
        if isinstance(t.right, Choice):
            right = f"({right})"
        return f"{print_term(t.left)} + {right}"
    raise TypeError(f"not a term: {t!r}")


def print_spec(spec: Spec) -> str:
    lines = [spec.sig.declaration()] if spec.sig.symbols else []
    lines.append(f"monad {spec.monad}")
    lines += [f"{name} = {print_term(rhs)}" for name, rhs in spec.equations]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# guardedness


@dataclass(frozen=True)
class Violation:
    """An unguarded occurrence of ``var`` in the equation of ``equation``.

    ``path`` lists the choice branches (``left``/``right``) leading to it
    and ``rendered`` shows the right-hand side with the occurrence bracketed.
    """

    equation: str
    var: str
    path: tuple
    rendered: str

    def describe(self) -> str:
        where = "/".join(self.path) or "top"
        return f"{self.equation} = {self.rendered}  (unguarded {self.var} at {where})"


@dataclass(frozen=True)
class GuardResult:
    violations: tuple

    @property
    def guarded(self) -> bool:
        return not self.violations


def _mark(t, path: tuple) -> str:
    """Render ``t`` with the subterm at choice path ``path`` in brackets."""
    if not path:
        return f"[{print_term(t)}]"
    step, rest = path[0], path[1:]
    left = _mark(t.left, rest) if step == "left" else print_term(t.left)
    right = _mark(t.right, rest) if step == "right" else print_term(t.right)
    if isinstance(t.right, Choice):
        right = f"({right})"
    return f"{left} + {right}"


def check_guarded(spec: Spec) -> GuardResult:
    """Every variable occurrence must sit below at least one signature symbol."""
    out = []

    def walk(eq, rhs, t, path):
        if isinstance(t, Var):
            out.append(Violation(eq, t.name, path, _mark(rhs, path)))
        elif isinstance(t, Choice):
            walk(eq, rhs, t.left, path + ("left",))
            walk(eq, rhs, t.right, path + ("right",))

    for name, rhs in spec.equations:
        walk(name, rhs, rhs, ())
    return GuardResult(tuple(out))


# --------------------------------------------------------------------------
# compilation


@dataclass
class EquationSystem:
    spec: Spec
    monad: Monad
    pm: PMonad
    states: Carrier
    step: KleisliMap
    guard: GuardResult

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.spec.sig.alphabet

    @property
    def variables(self) -> tuple[str, ...]:
        return self.spec.variables


def compile_spec(spec: Spec, alphabet_for_traces: tuple | None = None) -> EquationSystem:
    """Build ``step : P -> T({tick} + Sigma P)``.

    ``P`` holds the declared variables plus one auxiliary state per distinct
    non-variable subterm under a symbol, named by its canonical text.  Top
    level (unguarded) variable occurrences are resolved by least fixed point.
    """
    if spec.monad == "traces":
        monad = monad_by_name("traces", alphabet_for_traces or spec.sig.alphabet or ("a",))
    else:
        monad = monad_by_name(spec.monad)
    pm = PMonad(monad, spec.sig)
    order: list[str] = list(spec.variables)
    bodies: dict[str, object] = dict(spec.equations)

    def state_of(t) -> str:
        if isinstance(t, Var):
            return t.name
        key = print_term(t)
        if key not in bodies:
            bodies[key] = t
            order.append(key)
        return key

    def value(t):
        if isinstance(t, Tick):
            return monad.unit(Inl(Inl(TICK)))
        if isinstance(t, Zero):
            if isinstance(monad, MaybeMonad):
                raise SpecError("'0' has no meaning under monad maybe", *t.pos)
            return monad.bottom()
        if isinstance(t, Var):
            return monad.unit(Inr(t.name))
        if isinstance(t, Prefix):
            return monad.unit(Inl(Inr(Layer(t.symbol, (state_of(t.body),)))))
        if isinstance(t, Op):
            return monad.unit(Inl(Inr(Layer(t.symbol, tuple(state_of(a) for a in t.args)))))
        if isinstance(t, Choice):
            if isinstance(monad, MaybeMonad):
                raise SpecError("choice '+' has no meaning under monad maybe", *t.pos)
            return monad.join(value(t.left), value(t.right))
        raise TypeError(t)

    table = {}
    i = 0
    while i < len(order):
        name = order[i]
        table[name] = value(bodies[name])
        i += 1
    states = Carrier("P", tuple(order))
    e = KleisliMap(monad, states, coproduct(Carrier("out", ()), states), table)
    step = iterate(e, Exact())
    step = KleisliMap(monad, states, None, dict(step))
    return EquationSystem(spec, monad, pm, states, step, check_guarded(spec))


def solve(system: EquationSystem, least: bool = False) -> dict[str, ResTree]:
    """The solution trees ``coit(step)``, one per declared variable.

    Unguarded systems are refused unless ``least`` is set, in which case the
    unguarded occurrences have already been given least-fixpoint meaning.
    """
    if not system.guard.guarded and not least:
        raise GuardednessError(list(system.guard.violations))
    h = coit(Coalgebra(system.pm, system.step, system.states))
    return {v: h(v) for v in system.variables}


def load(path: str) -> EquationSystem:
    with open(path, encoding="utf-8") as fh:
        return compile_spec(parse(fh.read()))
