"""Polynomial signature functors: generic operation sets, action prefixes, delay."""
from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from .effects import DomainError, show, sort_key


class Layer:
    """One application ``sigma(c1, ..., cn)`` of a signature symbol.

    Immutable; the hash is cached because layers nest deeply inside
    truncated trees.
    """

    __slots__ = ("symbol", "children", "_hash")

    def __init__(self, symbol: str, children=()):
        object.__setattr__(self, "symbol", symbol)
        object.__setattr__(self, "children", tuple(children))
        object.__setattr__(self, "_hash", hash((symbol, self.children)))

    def __setattr__(self, name, value):
        raise AttributeError("Layer is immutable")

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Layer) and self._hash == other._hash
                and self.symbol == other.symbol and self.children == other.children)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{self.symbol}({', '.join(repr(c) for c in self.children)})"

    def __str__(self):
        return f"{self.symbol}({','.join(show(c) for c in self.children)})"

    def sort_key(self):
        return (self.symbol, tuple(sort_key(c) for c in self.children))


@dataclass(frozen=True)
class Signature:
    """Finite set of operation symbols with arities.

    ``kind`` is ``"generic"``, ``"actions"`` (one unary symbol per letter,
    i.e. the functor ``A x -``) or ``"delay"`` (a single unary symbol, the
    identity functor).
    """

    symbols: tuple[tuple[str, int], ...]
    kind: str = "generic"

    def __post_init__(self):
        names = [s for s, _ in self.symbols]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate symbols in {names}")
        if any(a < 0 for _, a in self.symbols):
            raise ValueError("arities must be nonnegative")
        if self.kind == "actions" and any(a != 1 for _, a in self.symbols):
            raise ValueError("action-prefix signatures have unary symbols only")
        if self.kind == "delay" and (len(self.symbols) != 1 or self.symbols[0][1] != 1):
            raise ValueError("the delay signature has exactly one unary symbol")

    @classmethod
    def actions(cls, *letters: str) -> "Signature":
        return cls(tuple((a, 1) for a in letters), "actions")

    @classmethod
    def delay(cls, name: str = "delay") -> "Signature":
        return cls(((name, 1),), "delay")

    @classmethod
    def ops(cls, **arities: int) -> "Signature":
        return cls(tuple(arities.items()), "generic")

    @classmethod
    def constant(cls) -> "Signature":
        """No symbols: ``Sigma X = 0``."""
        return cls((), "generic")

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.symbols)

    def arity(self, symbol: str) -> int:
        for s, a in self.symbols:
            if s == symbol:
                return a
        raise DomainError(f"unknown symbol {symbol!r}")

    def layer(self, symbol: str, *children) -> Layer:
        if len(children) != self.arity(symbol):
            raise DomainError(f"{symbol} expects {self.arity(symbol)} children, got {len(children)}")
        return Layer(symbol, children)

    def layers(self, elements) -> list[Layer]:
        """Every element of ``Sigma X`` for a finite ``X``."""
        import itertools

        elems = list(elements)
        return [Layer(s, c) for s, a in self.symbols for c in itertools.product(elems, repeat=a)]

    def count(self, n: int) -> int:
        return sum(n**a for _, a in self.symbols)

    def declaration(self) -> str:
        if self.kind == "actions":
            return "sig actions " + " ".join(self.alphabet)
        if self.kind == "delay":
            return "sig delay"
        return "sig ops " + " ".join(f"{s}/{a}" for s, a in self.symbols)


def sigma_map(sig: Signature, f: Callable, layer: Layer) -> Layer:
    """Functor action of ``Sigma``: apply ``f`` to every child."""
    if len(layer.children) != sig.arity(layer.symbol):
        raise DomainError(f"layer {layer!r} does not conform to its arity")
    return Layer(layer.symbol, tuple(f(c) for c in layer.children))
