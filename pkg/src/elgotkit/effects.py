"""Concrete effect monads, Kleisli maps over finite carriers, and Kleene iteration.

Three monads are supported:

* ``Maybe`` -- optional values, flat order with ``nothing`` as bottom;
* ``FinPowerset`` -- finite sets ordered by inclusion;
* ``TracePowerset(alphabet)`` -- finite sets of ``(word, element)`` pairs whose
  Kleisli lifting concatenates words.

Values of ``T X`` are :class:`EffectValue` instances.  Coproduct elements are
tagged with :class:`Inl` / :class:`Inr`.
"""
from __future__ import annotations

import functools
import itertools
from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from typing import Any


class DomainError(ValueError):
    """An element was not found in the carrier a map is defined on."""


class MonadMismatch(TypeError):
    """Values of two different monads were combined."""


class ContractViolation(RuntimeError):
    """A caller-supplied object broke a documented precondition."""


class NonConvergence(RuntimeError):
    """A Kleene chain did not stabilise within the allowed window."""

    def __init__(self, message: str, last: Any = None, steps: int = 0):
        super().__init__(message)
        self.last = last
        self.steps = steps


# --------------------------------------------------------------------------
# coproduct tags


@dataclass(frozen=True, slots=True)
class Inl:
    value: Any

    def __repr__(self) -> str:
        return f"inl({self.value!r})"


@dataclass(frozen=True, slots=True)
class Inr:
    value: Any

    def __repr__(self) -> str:
        return f"inr({self.value!r})"


def sort_key(x: Any) -> tuple:
    """Total order on heterogeneous atoms, used for canonical output."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (1, x)
    if isinstance(x, str):
        return (2, x)
    if isinstance(x, Inl):
        return (3, sort_key(x.value))
    if isinstance(x, Inr):
        return (4, sort_key(x.value))
    if isinstance(x, tuple):
        return (5, len(x), tuple(sort_key(y) for y in x))
    key = getattr(x, "sort_key", None)
    if key is not None:
        return (6, key())
    return (9, repr(x))


def show(x: Any) -> str:
    """Compact text for an atom, as used in serialized values."""
    if isinstance(x, str):
        return x
    if isinstance(x, Inl):
        return f"inl {show(x.value)}"
    if isinstance(x, Inr):
        return f"inr {show(x.value)}"
    if isinstance(x, tuple):
        return "(" + ",".join(show(y) for y in x) + ")"
    return str(x)


# --------------------------------------------------------------------------
# carriers


@dataclass(frozen=True)
class Carrier:
    """A finite object of the base category: a named, ordered set of atoms."""

    name: str
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise ValueError(f"carrier {self.name} has repeated elements")

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    @property
    def _index(self) -> frozenset:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = frozenset(self.elements)
            object.__setattr__(self, "_idx", idx)
        return idx

    def __str__(self) -> str:
        return self.name

    @classmethod
    def of(cls, name: str, n: int) -> "Carrier":
        """``n`` atoms named ``name0 .. name{n-1}``."""
        return cls(name, tuple(f"{name.lower()}{i}" for i in range(n)))

    def functions(self, codomain: Iterable) -> Iterator[dict]:
        """All total functions from this carrier into ``codomain``, as dicts."""
        cod = list(codomain)
        for image in itertools.product(cod, repeat=len(self.elements)):
            yield dict(zip(self.elements, image))


@dataclass(frozen=True)
class SumCarrier(Carrier):
    """The coproduct ``left + right`` with explicit side tags."""

    left: Carrier = None
    right: Carrier = None


def coproduct(left: Carrier, right: Carrier) -> SumCarrier:
    elems = tuple(Inl(x) for x in left) + tuple(Inr(y) for y in right)
    return SumCarrier(f"({left.name}+{right.name})", elems, left, right)


def assoc(z):
    """The associativity map ``(A+B)+C -> A+(B+C)``."""
    if isinstance(z, Inl):
        inner = z.value
        if isinstance(inner, Inl):
            return Inl(inner.value)
        return Inr(Inl(inner.value))
    return Inr(Inr(z.value))


def assoc_inv(z):
    """Inverse of :func:`assoc`: ``A+(B+C) -> (A+B)+C``."""
    if isinstance(z, Inl):
        return Inl(Inl(z.value))
    inner = z.value
    if isinstance(inner, Inl):
        return Inl(Inr(inner.value))
    return Inr(inner.value)


def copair_fn(f: Callable, g: Callable) -> Callable:
    """``[f, g]`` on tagged elements, for plain functions."""

    def h(z):
        if isinstance(z, Inl):
            return f(z.value)
        if isinstance(z, Inr):
            return g(z.value)
        raise DomainError(f"{z!r} is not a coproduct element")

    return h


def sum_fn(f: Callable, g: Callable) -> Callable:
    """``f + g`` on tagged elements."""
    return copair_fn(lambda x: Inl(f(x)), lambda y: Inr(g(y)))


def identity(x):
    return x


# --------------------------------------------------------------------------
# monads and their values


@dataclass(frozen=True)
class EffectValue:
    """An element of ``T X``.

    ``payload`` is a 0/1-tuple for Maybe, a frozenset of elements for
    FinPowerset and a frozenset of ``(word, element)`` pairs for
    TracePowerset, where words are tuples of letters.
    """

    monad: "Monad"
    payload: Any

    def __str__(self) -> str:
        return self.monad.render(self)

    def __repr__(self) -> str:
        return f"<{self.monad.name} {self.monad.render(self)}>"

    def support(self) -> list:
        return self.monad.support(self)


class Monad:
    """Kleisli triple together with the cpo structure of its Kleisli homsets."""

    name: str = "?"
    exhaustive: bool = True

    # --- Kleisli triple ----------------------------------------------------
    def unit(self, x) -> EffectValue:
        raise NotImplementedError

    def bind(self, v: EffectValue, f: Callable) -> EffectValue:
        raise NotImplementedError

    def fmap(self, v: EffectValue, g: Callable) -> EffectValue:
        return self.bind(v, lambda x: self.unit(g(x)))

    def mu(self, v: EffectValue) -> EffectValue:
        return self.bind(v, identity)

    # --- order --------------------------------------------------------------
    def bottom(self) -> EffectValue:
        raise NotImplementedError

    def leq(self, a: EffectValue, b: EffectValue) -> bool:
        raise NotImplementedError

    def join(self, a: EffectValue, b: EffectValue) -> EffectValue:
        raise NotImplementedError

    # --- inspection ---------------------------------------------------------
    def support(self, v: EffectValue) -> list:
        raise NotImplementedError

    def values(self, elements: Iterable) -> Iterator[EffectValue]:
        """Every element of ``T C`` for a finite ``C`` (when finite)."""
        raise NotImplementedError

    def count(self, n: int) -> int:
        """``|T C|`` for ``|C| = n``."""
        raise NotImplementedError

    def render(self, v: EffectValue) -> str:
        raise NotImplementedError

    def check(self, v) -> EffectValue:
        if not isinstance(v, EffectValue):
            raise MonadMismatch(f"expected a {self.name} value, got {v!r}")
        if v.monad != self:
            raise MonadMismatch(f"expected a {self.name} value, got {v.monad.name}")
        return v

    def restrict(self, v: EffectValue, n: int) -> EffectValue:
        """Observation of ``v`` up to precision ``n`` (identity except for traces)."""
        return v

    def __repr__(self) -> str:
        return self.name


class MaybeMonad(Monad):
    name = "maybe"

    def __eq__(self, other):
        return isinstance(other, MaybeMonad)

    def __hash__(self):
        return hash("maybe")

    def unit(self, x):
        return EffectValue(self, (x,))

    def just(self, x):
        return self.unit(x)

    @property
    def nothing(self):
        return EffectValue(self, ())

    def bind(self, v, f):
        self.check(v)
        if not v.payload:
            return v
        return self.check(f(v.payload[0]))

    def fmap(self, v, g):
        self.check(v)
        return v if not v.payload else EffectValue(self, (g(v.payload[0]),))

    def bottom(self):
        return self.nothing

    def leq(self, a, b):
        return not a.payload or a.payload == b.payload

    def join(self, a, b):
        if self.leq(a, b):
            return b
        if self.leq(b, a):
            return a
        raise ContractViolation(f"{a} and {b} have no upper bound in the flat order")

    def support(self, v):
        return list(v.payload)

    def values(self, elements):
        yield self.nothing
        for x in elements:
            yield self.unit(x)

    def count(self, n):
        return n + 1

    def render(self, v):
        return f"just {show(v.payload[0])}" if v.payload else "nothing"


class FinPowersetMonad(Monad):
    name = "powerset"

    def __eq__(self, other):
        return isinstance(other, FinPowersetMonad)

    def __hash__(self):
        return hash("powerset")

    def unit(self, x):
        return EffectValue(self, frozenset((x,)))

    def of(self, *xs):
        return EffectValue(self, frozenset(xs))

    def bind(self, v, f):
        self.check(v)
        out = set()
        for x in v.payload:
            out |= self.check(f(x)).payload
        return EffectValue(self, frozenset(out))

    def fmap(self, v, g):
        self.check(v)
        return EffectValue(self, frozenset(g(x) for x in v.payload))

    def bottom(self):
        return EffectValue(self, frozenset())

    def leq(self, a, b):
        return a.payload <= b.payload

    def join(self, a, b):
        return EffectValue(self, a.payload | b.payload)

    def support(self, v):
        return sorted(v.payload, key=sort_key)

    def values(self, elements):
        elems = list(elements)
        for r in range(len(elems) + 1):
            for combo in itertools.combinations(elems, r):
                yield EffectValue(self, frozenset(combo))

    def count(self, n):
        return 2**n

    def render(self, v):
        return "{" + ",".join(show(x) for x in self.support(v)) + "}"


def word_str(w: tuple) -> str:
    if not w:
        return "ε"
    if all(len(a) == 1 for a in w):
        return "".join(w)
    return ".".join(w)


def word_key(w: tuple) -> tuple:
    """Shortlex order on words."""
    return (len(w), w)


class TracePowersetMonad(Monad):
    """``T X = P(A* x X)``; sets are finite, countable behaviour is approximated."""

    exhaustive = False

    def __init__(self, alphabet: Iterable[str]):
        alphabet = tuple(alphabet)
        if not alphabet:
            raise ValueError("TracePowerset needs a nonempty alphabet")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet letters must be distinct")
        self.alphabet = alphabet
        self.name = "traces(" + ",".join(alphabet) + ")"

    def __eq__(self, other):
        return isinstance(other, TracePowersetMonad) and other.alphabet == self.alphabet

    def __hash__(self):
        return hash(("traces", self.alphabet))

    def unit(self, x):
        return EffectValue(self, frozenset({((), x)}))

    def of(self, *pairs):
        items = set()
        for w, x in pairs:
            w = tuple(w)
            for a in w:
                if a not in self.alphabet:
                    raise DomainError(f"letter {a!r} not in alphabet {self.alphabet}")
            items.add((w, x))
        return EffectValue(self, frozenset(items))

    def bind(self, v, f):
        return self.bind_bounded(v, f, None)

    def bind_bounded(self, v, f, max_len):
        """Kleisli lifting, discarding words longer than ``max_len``."""
        self.check(v)
        out = set()
        for w, x in v.payload:
            for w2, y in self.check(f(x)).payload:
                ww = w + w2
                if max_len is None or len(ww) <= max_len:
                    out.add((ww, y))
        return EffectValue(self, frozenset(out))

    def fmap(self, v, g):
        self.check(v)
        return EffectValue(self, frozenset((w, g(x)) for w, x in v.payload))

    def bottom(self):
        return EffectValue(self, frozenset())

    def leq(self, a, b):
        return a.payload <= b.payload

    def join(self, a, b):
        return EffectValue(self, a.payload | b.payload)

    def support(self, v):
        return sorted({x for _, x in v.payload}, key=sort_key)

    def pairs(self, v):
        return sorted(v.payload, key=lambda p: (word_key(p[0]), sort_key(p[1])))

    def words(self, max_len: int) -> list[tuple]:
        out = []
        for n in range(max_len + 1):
            out.extend(itertools.product(self.alphabet, repeat=n))
        return out

    def values(self, elements, max_len: int = 0):
        pairs = [(w, x) for w in self.words(max_len) for x in elements]
        for r in range(len(pairs) + 1):
            for combo in itertools.combinations(pairs, r):
                yield EffectValue(self, frozenset(combo))

    def count(self, n, max_len: int = 0):
        return 2 ** (n * len(self.words(max_len)))

    def restrict(self, v, n):
        """Keep only pairs whose word is shorter than ``n``."""
        return EffectValue(self, frozenset(p for p in v.payload if len(p[0]) < n))

    def render(self, v):
        return "{" + ",".join(f"({word_str(w)},{show(x)})" for w, x in self.pairs(v)) + "}"


Maybe = MaybeMonad()
FinPowerset = FinPowersetMonad()


def TracePowerset(alphabet: Iterable[str]) -> TracePowersetMonad:
    return TracePowersetMonad(alphabet)


def monad_by_name(name: str, alphabet: Iterable[str] = ("a", "b")) -> Monad:
    if name == "maybe":
        return Maybe
    if name in ("powerset", "finpowerset"):
        return FinPowerset
    if name in ("traces", "tracepowerset"):
        return TracePowerset(alphabet)
    raise ValueError(f"unknown monad {name!r}")


# --------------------------------------------------------------------------
# Kleisli maps


class KleisliMap(Mapping):
    """A total table ``domain -> T codomain``; compares extensionally.

    ``exact`` is False when the table is a finite approximant of an
    iteration rather than its least fixed point.
    """

    def __init__(self, monad: Monad, domain: Carrier, codomain: Carrier | None,
                 table: Mapping, exact: bool = True):
        self.monad = monad
        self.domain = domain
        self.codomain = codomain
        self.table = dict(table)
        self.exact = exact
        missing = [x for x in domain if x not in self.table]
        if missing:
            raise DomainError(f"table undefined on {missing[:3]}")

    @classmethod
    def build(cls, monad, domain, codomain, fn: Callable, exact=True) -> "KleisliMap":
        return cls(monad, domain, codomain, {x: fn(x) for x in domain}, exact)

    def __getitem__(self, x):
        try:
            return self.table[x]
        except KeyError:
            raise DomainError(f"{x!r} is not in {self.domain}") from None

    def __call__(self, x):
        return self[x]

    def __iter__(self):
        return iter(self.domain)

    def __len__(self):
        return len(self.domain)

    def __repr__(self):
        body = ", ".join(f"{show(x)} -> {self.table[x]}" for x in self.domain)
        return f"KleisliMap[{self.monad.name}]({body})"


def unit(monad: Monad, x) -> EffectValue:
    return monad.unit(x)


def kleisli_lift(f: KleisliMap | Callable, monad: Monad | None = None) -> Callable:
    """``f*``: the extension of ``f`` to ``T X -> T Y``."""
    m = monad or f.monad

    def lifted(v):
        m.check(v)
        return m.bind(v, f)

    return lifted


def kcomp(g: KleisliMap, f: KleisliMap) -> KleisliMap:
    """Kleisli composition ``g . f``."""
    if g.monad != f.monad:
        raise MonadMismatch(f"{g.monad} vs {f.monad}")
    m = f.monad
    return KleisliMap.build(m, f.domain, g.codomain, lambda x: m.bind(f[x], g))


def pure(monad: Monad, domain: Carrier, codomain: Carrier | None, fn: Callable) -> KleisliMap:
    """The Kleisli map ``eta . fn`` for a base function ``fn``."""
    return KleisliMap.build(monad, domain, codomain, lambda x: monad.unit(fn(x)))


def eta(monad: Monad, carrier: Carrier) -> KleisliMap:
    return pure(monad, carrier, carrier, identity)


def inl(monad: Monad, left: Carrier, right: Carrier) -> KleisliMap:
    return pure(monad, left, coproduct(left, right), Inl)


def inr(monad: Monad, left: Carrier, right: Carrier) -> KleisliMap:
    return pure(monad, right, coproduct(left, right), Inr)


def copair(f: KleisliMap, g: KleisliMap) -> KleisliMap:
    """``[f, g] : A + B -> C``."""
    if f.monad != g.monad:
        raise MonadMismatch(f"{f.monad} vs {g.monad}")
    if f.codomain is not None and g.codomain is not None and f.codomain.elements != g.codomain.elements:
        raise TypeError(f"copair codomains differ: {f.codomain} vs {g.codomain}")
    dom = coproduct(f.domain, g.domain)
    return KleisliMap.build(f.monad, dom, f.codomain, copair_fn(f.__getitem__, g.__getitem__))


def oplus(f: KleisliMap, g: KleisliMap) -> KleisliMap:
    """``f (+) g : A + B -> A' + B'``."""
    m = f.monad
    cod = coproduct(f.codomain, g.codomain)
    left = KleisliMap.build(m, f.domain, cod, lambda x: m.fmap(f[x], Inl))
    right = KleisliMap.build(m, g.domain, cod, lambda y: m.fmap(g[y], Inr))
    return copair(left, right)


def codiag(monad: Monad, carrier: Carrier) -> KleisliMap:
    """``[eta, eta] : X + X -> X``."""
    return copair(eta(monad, carrier), eta(monad, carrier))


def coproduct_helpers(name: str, *args) -> KleisliMap:
    """Dispatch by name to ``inl``, ``inr``, ``copair``, ``oplus`` or ``codiag``."""
    table = {"inl": inl, "inr": inr, "copair": copair, "oplus": oplus, "codiag": codiag}
    return table[name](*args)


def bottom_map(monad: Monad, domain: Carrier, codomain: Carrier | None) -> KleisliMap:
    return KleisliMap.build(monad, domain, codomain, lambda _: monad.bottom())


def bottom(monad: Monad, carrier: Carrier | None = None) -> EffectValue:
    return monad.bottom()


def order_leq(a: EffectValue, b: EffectValue) -> bool:
    if a.monad != b.monad:
        raise MonadMismatch(f"{a.monad} vs {b.monad}")
    return a.monad.leq(a, b)


def map_leq(f: KleisliMap, g: KleisliMap) -> bool:
    return all(f.monad.leq(f[x], g[x]) for x in f.domain)


# --------------------------------------------------------------------------
# approximant chains and iteration


@dataclass(frozen=True)
class Exact:
    """Iterate the Kleene chain until it stabilises; fail after ``window`` steps."""

    window: int = 10_000


@dataclass(frozen=True)
class Depth:
    """Stop at the ``n``-th Kleene approximant.

    For TracePowerset the approximant is instead the least fixed point with
    all words longer than ``n`` discarded, which is exact on every trace of
    length at most ``n``.
    """

    n: int


Policy = Exact | Depth


@dataclass(frozen=True)
class Approximation:
    value: Any
    exact: bool
    steps: int


@dataclass
class ApproximantSeq:
    """A depth-indexed chain ``n -> value``; ``leq`` compares consecutive members."""

    generator: Callable[[int], Any]
    leq: Callable[[Any, Any], bool]
    monotone: bool = True


def lub(chain: ApproximantSeq, window: int = 1000) -> Approximation:
    """Join of a chain: exact if it stabilises within ``window`` steps."""
    prev = chain.generator(0)
    for i in range(1, window + 1):
        cur = chain.generator(i)
        if chain.monotone and not chain.leq(prev, cur):
            raise ContractViolation(f"chain is not monotone at step {i}")
        if cur == prev:
            return Approximation(cur, True, i - 1)
        prev = cur
    return Approximation(prev, False, window)


def _kleene_step(f: KleisliMap, s: Mapping, y_carrier, bind) -> dict:
    m = f.monad

    def body(x):
        return bind(f[x], copair_fn(m.unit, lambda x2: s[x2]))

    return {x: body(x) for x in f.domain}


def iterate(f: KleisliMap, policy: Policy = Exact()) -> KleisliMap:
    """Least fixed point of ``s -> [eta, s]* . f`` for ``f : X -> T(Y + X)``."""
    m = f.monad
    cod = f.codomain
    y_carrier = cod.left if isinstance(cod, SumCarrier) else None
    bind = m.bind
    limit = policy.window if isinstance(policy, Exact) else policy.n
    if isinstance(m, TracePowersetMonad) and isinstance(policy, Depth):
        bind = functools.partial(m.bind_bounded, max_len=policy.n)
        limit = None
    s = {x: m.bottom() for x in f.domain}
    steps = 0
    while limit is None or steps < limit:
        nxt = _kleene_step(f, s, y_carrier, bind)
        steps += 1
        if any(not m.leq(s[x], nxt[x]) for x in f.domain):
            raise ContractViolation("Kleene chain is not monotone")
        if nxt == s:
            exact = isinstance(policy, Exact) or limit is not None
            return KleisliMap(m, f.domain, y_carrier, s, exact=exact)
        s = nxt
    if isinstance(policy, Exact):
        raise NonConvergence(f"no fixed point within {limit} steps",
                             KleisliMap(m, f.domain, y_carrier, s, exact=False), steps)
    return KleisliMap(m, f.domain, y_carrier, s, exact=False)


def kleene_chain(f: KleisliMap) -> ApproximantSeq:
    """The chain ``bottom, F(bottom), F(F(bottom)), ...`` whose lub is ``f``'s iteration."""
    m = f.monad
    cache = [{x: m.bottom() for x in f.domain}]

    def gen(i):
        while len(cache) <= i:
            cache.append(_kleene_step(f, cache[-1], None, m.bind))
        return cache[i]

    def leq(a, b):
        return all(m.leq(a[x], b[x]) for x in f.domain)

    return ApproximantSeq(gen, leq)
