"""Seeded random generators for effect values, coalgebras and trees."""
from __future__ import annotations

import random
from collections.abc import Sequence

from .effects import (EffectValue, FinPowersetMonad, KleisliMap, MaybeMonad, Monad,
                      TracePowersetMonad, Carrier)
from .pmonad import PMonad
from .resumption import Coalgebra, ResTree, coit


def random_value(monad: Monad, elements: Sequence, rng: random.Random,
                 max_size: int = 2, max_word: int = 1, min_size: int = 0) -> EffectValue:
    """A random element of ``T(elements)`` with at most ``max_size`` alternatives.

    ``min_size`` alternatives are guaranteed whenever ``elements`` is nonempty.
    """
    elements = list(elements)
    lo = min(min_size, len(elements))
    if isinstance(monad, MaybeMonad):
        if not elements or (lo == 0 and rng.random() < 0.2):
            return monad.nothing
        return monad.unit(rng.choice(elements))
    if isinstance(monad, FinPowersetMonad):
        k = rng.randint(lo, max(lo, min(max_size, len(elements))))
        return EffectValue(monad, frozenset(rng.sample(elements, k)))
    if isinstance(monad, TracePowersetMonad):
        k = rng.randint(lo, max(lo, max_size)) if elements else 0
        pairs = set()
        for _ in range(k):
            w = tuple(rng.choice(monad.alphabet) for _ in range(rng.randint(0, max_word)))
            pairs.add((w, rng.choice(elements)))
        return EffectValue(monad, frozenset(pairs))
    raise TypeError(f"no sampler for {monad}")


def random_map(monad: Monad, domain: Carrier, codomain: Carrier, rng: random.Random,
               **kw) -> KleisliMap:
    return KleisliMap.build(monad, domain, codomain,
                            lambda _: random_value(monad, list(codomain), rng, **kw))


def random_hash_value(pm: PMonad, a_elems: Sequence, x_elems: Sequence, rng: random.Random,
                      **kw) -> EffectValue:
    return random_value(pm.monad, pm.elements(a_elems, x_elems), rng, **kw)


def random_coalgebra(pm: PMonad, leaves: Sequence, n_states: int, rng: random.Random,
                     **kw) -> Coalgebra:
    kw.setdefault("min_size", 1)
    states = list(range(n_states))
    table = {s: random_hash_value(pm, leaves, states, rng, **kw) for s in states}
    return Coalgebra(pm, table, Carrier("S", tuple(states)))


def random_tree(pm: PMonad, leaves: Sequence, rng: random.Random, n_states: int = 3,
                **kw) -> ResTree:
    return coit(random_coalgebra(pm, leaves, n_states, rng, **kw))(0)
