"""The parametrized monad ``#(A, X) = T(A + Sigma X)``.

With ``sig=None`` the instance is the Sigma-free ``#(A, X) = T(A + X)``.
A value of ``#(A, X)`` is an :class:`~elgotkit.effects.EffectValue` whose
elements are ``Inl(a)`` (a leaf) or ``Inr(node)``, where ``node`` is a
:class:`~elgotkit.signatures.Layer` over ``X`` (or, without a signature, an
element of ``X`` directly).
"""
from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass

from .effects import (Carrier, DomainError, EffectValue, Inl, Inr, Monad, copair_fn,
                      identity)
from .signatures import Layer, Signature, sigma_map

HashValue = EffectValue


@dataclass(frozen=True)
class PMonad:
    monad: Monad
    sig: Signature | None = None

    @property
    def name(self) -> str:
        s = "Id" if self.sig is None else self.sig.declaration()[4:]
        return f"{self.monad.name}[{s}]"

    # --- Sigma plumbing -------------------------------------------------
    def smap(self, g: Callable, node):
        if self.sig is None:
            return g(node)
        return sigma_map(self.sig, g, node)

    def children(self, node) -> tuple:
        if self.sig is None:
            return (node,)
        return node.children

    def node_elements(self, xs: Iterable) -> list:
        xs = list(xs)
        if self.sig is None:
            return [Inr(x) for x in xs]
        return [Inr(layer) for layer in self.sig.layers(xs)]

    def elements(self, a_elems: Iterable, x_elems: Iterable) -> list:
        """The carrier ``A + Sigma X``."""
        return [Inl(a) for a in a_elems] + self.node_elements(x_elems)

    def values(self, a_elems: Iterable, x_elems: Iterable) -> list[EffectValue]:
        return list(self.monad.values(self.elements(a_elems, x_elems)))

    def count(self, na: int, nx: int) -> int:
        ns = nx if self.sig is None else self.sig.count(nx)
        return self.monad.count(na + ns)

    # --- structure --------------------------------------------------------
    def unit(self, a) -> EffectValue:
        """``u = eta . inl``."""
        return self.monad.unit(Inl(a))

    def node(self, node) -> EffectValue:
        """``eta . inr``: a single Sigma-layer with no effect."""
        return self.monad.unit(Inr(node))

    def mult(self, v: EffectValue) -> EffectValue:
        """``m = [id, eta . inr]*`` on ``T(#(A,X) + Sigma X)``."""
        m = self.monad
        return m.bind(v, copair_fn(identity, lambda n: m.unit(Inr(n))))

    def bimap(self, f: Callable, g: Callable, v: EffectValue) -> EffectValue:
        """``#(f, g) = T(f + Sigma g)``."""
        return self.monad.fmap(v, copair_fn(lambda a: Inl(f(a)), lambda n: Inr(self.smap(g, n))))

    def bind(self, v: EffectValue, k: Callable) -> EffectValue:
        """Kleisli extension for the monad ``#(-, X)``."""
        return self.mult(self.bimap(k, identity, v))

    # --- #-algebras -------------------------------------------------------
    def algebra_laws(self, a: Callable, carrier: Iterable, limit: int = 20_000,
                     seed: int = 0) -> list[str]:
        """Violations of the unit and multiplication laws for ``a : #(A,A) -> A``.

        The multiplication law ranges over ``#(#(A,A),A)``; when that space
        has more than ``limit`` values, ``limit`` seeded random ones are used.
        """
        import random

        from .sampling import random_value

        A = list(carrier)
        bad = []
        for x in A:
            if a(self.unit(x)) != x:
                bad.append(f"unit law fails at {x!r}")
        inner = self.values(A, A)
        outer = self.elements(inner, A)
        if self.monad.count(len(outer)) <= limit:
            space = self.monad.values(outer)
        else:
            rng = random.Random(seed)
            space = (random_value(self.monad, outer, rng, max_size=4) for _ in range(limit))
        for w in space:
            if a(self.mult(w)) != a(self.bimap(a, identity, w)):
                bad.append(f"multiplication law fails at {w}")
                break
        return bad

    def t_part(self, a: Callable) -> Callable:
        """The T-algebra ``a . T inl`` of a #-algebra."""
        return lambda v: a(self.monad.fmap(v, Inl))

    def sigma_part(self, a: Callable) -> Callable:
        """The Sigma-algebra ``a . eta . inr`` of a #-algebra."""
        return lambda node: a(self.node(node))

    def from_bialgebra(self, t_alg: Callable, s_alg: Callable) -> Callable:
        """The #-algebra ``t_alg . T[id, s_alg]``."""
        return lambda v: t_alg(self.monad.fmap(v, copair_fn(identity, s_alg)))


def _check_member(x, carrier: Carrier | None):
    if carrier is not None and x not in carrier:
        raise DomainError(f"{x!r} is not in {carrier}")


def hash_unit(inst: PMonad, A: Carrier | None, X: Carrier | None, a) -> EffectValue:
    _check_member(a, A)
    return inst.unit(a)


def hash_mult(inst: PMonad, value: EffectValue) -> EffectValue:
    for z in inst.monad.support(value):
        if isinstance(z, Inl) and not isinstance(z.value, EffectValue):
            raise TypeError(f"leaf {z.value!r} is not a #-value")
    return inst.mult(value)


def hash_bimap(inst: PMonad, f: Callable, g: Callable, v: EffectValue) -> EffectValue:
    return inst.bimap(f, g, v)


def leaf(a) -> Inl:
    return Inl(a)


def node(symbol: str, *children) -> Inr:
    """``node("a", x)`` is ``inr(a(x))``.  Without a signature use ``Inr(x)``."""
    return Inr(Layer(symbol, children))
