"""Connections between a monad ``T``, its delay monad ``T_nu`` and Elgot algebras.

* :func:`delta_collapse` flattens a delay tree ``T_nu X`` into ``T X`` by
  iterating ``out``.
* :func:`trace_set` computes the successful traces of a process system by
  collapsing it inside the trace monad.
* :func:`iistar_from_istar`, :func:`j_algebra` and :func:`istar_from_iistar`
  move between monad iteration and algebra iteration.
* :func:`check_codiag_alg` tests the codiagonal condition for algebras; it
  holds on algebras in the image of J (see :func:`factors_through_codiagonal`)
  and can fail on other complete Elgot algebras.
"""
from __future__ import annotations

import itertools
from collections.abc import Callable, Mapping
from dataclasses import dataclass

from .effects import (Carrier, Depth, DomainError, EffectValue, Exact, Inl, Inr, KleisliMap,
                      Monad, NonConvergence, Policy, TracePowersetMonad, TracePowerset,
                      iterate, word_key)
from .elgot import ElgotAlgebra, Solution, AxiomResult
from .pmonad import PMonad
from .resumption import Coalgebra, ResTree, coit, reachable
from .signatures import Layer


def _unwrap(pm: PMonad, node):
    """The single successor of a node of a delay or signature-free tree."""
    if pm.sig is None:
        return node
    if pm.sig.kind != "delay":
        raise ValueError(f"collapse is defined for delay trees only, not {pm.sig.declaration()}")
    return node.children[0]


@dataclass
class DeltaApprox:
    """Depth-indexed approximants of the collapse of ``tree``."""

    tree: ResTree

    def __getitem__(self, n: int) -> EffectValue:
        return delta_collapse(self.tree, Exact(), node_limit=0, depth=n)

    def chain(self, n: int) -> list[EffectValue]:
        return [self[i] for i in range(n + 1)]


def delta_collapse(t: ResTree, policy: Policy = Exact(), node_limit: int = 100_000,
                   depth: int = 64) -> EffectValue:
    """``delta = out^dagger : T_nu X -> T X``.

    Finite-state trees are collapsed exactly by Kleene iteration of ``out``
    over their reachable nodes.  Otherwise (or with ``node_limit=0``) the tree
    is unfolded ``depth`` layers deep and the frontier contributes bottom.
    """
    pm = t.pm
    m = pm.monad
    nodes = reachable(t, node_limit) if node_limit > 0 else None
    if nodes is not None:
        index = {id(n): i for i, n in enumerate(nodes)}
        table = {i: m.fmap(n.out(), _step(pm, lambda c: index[id(c)])) for i, n in enumerate(nodes)}
        root = 0
    else:
        table = {}
        stack = [(t, 0)]
        keyof = lambda n, d: (id(n), d)
        while stack:
            n, d = stack.pop()
            k = keyof(n, d)
            if k in table:
                continue
            if d >= depth:
                table[k] = m.bottom()
                continue
            v = n.out()
            table[k] = m.fmap(v, _step(pm, lambda c, d=d: keyof(c, d + 1)))
            for z in m.support(v):
                if isinstance(z, Inr):
                    stack.append((_unwrap(pm, z.value), d + 1))
        root = keyof(t, 0)
    states = Carrier("S", tuple(table))
    f = KleisliMap(m, states, None, table)
    return iterate(f, policy)[root]


def _step(pm: PMonad, name: Callable) -> Callable:
    def g(z):
        if isinstance(z, Inl):
            return z
        return Inr(name(_unwrap(pm, z.value)))

    return g


def _as_pairs(m: Monad, v: EffectValue) -> list:
    if isinstance(m, TracePowersetMonad):
        return list(v.payload)
    return [((), z) for z in m.support(v)]


def trace_system(step: Mapping, monad: Monad, alphabet) -> Coalgebra:
    """Re-express an action system ``P -> T({tick} + Sigma P)`` in the trace monad.

    A prefix ``a(q)`` becomes the letter ``a`` appended to the word leading
    to state ``q``; the result is a coalgebra with the identity signature.
    """
    T = TracePowerset(alphabet)
    pm = PMonad(T, None)

    def c(p):
        items = set()
        for w, z in _as_pairs(monad, step[p]):
            if isinstance(z, Inl):
                items.add((w, z))
            else:
                items.add((w + (z.value.symbol,), Inr(z.value.children[0])))
        return EffectValue(T, frozenset(items))

    return Coalgebra(pm, c)


def trace_set(system, var, maxlen: int) -> list[tuple]:
    """Successful traces of ``var`` with length ``<= maxlen``, shortlex sorted.

    ``system`` needs ``step`` (a mapping over the variables), ``monad`` and
    ``alphabet`` attributes, as provided by a compiled process specification.
    """
    try:
        system.step[var]
    except (KeyError, DomainError):
        raise KeyError(f"undeclared variable {var!r}") from None
    coalg = trace_system(system.step, system.monad, system.alphabet)
    tree = coit(coalg)(var)
    collapsed = delta_collapse(tree, Depth(maxlen))
    words = {w for w, _ in collapsed.payload if len(w) <= maxlen}
    return sorted(words, key=word_key)


# --------------------------------------------------------------------------
# monad iteration vs algebra iteration


def iistar_from_istar(a: Callable, e: KleisliMap, policy: Policy = Exact()) -> dict:
    """``e^ddagger = a . e^dagger`` for a T-algebra ``a : T A -> A``."""
    sol = iterate(e, policy)
    return {x: a(sol[x]) for x in e}


def iistar_from_istar_inl(a: Callable, e: KleisliMap, policy: Policy = Exact()) -> dict:
    """The same iteration phrased as ``alpha . T inl . e^dagger`` with ``alpha = a . T nabla``."""
    m = e.monad
    alpha = lambda v: a(m.fmap(v, lambda z: z.value))
    sol = iterate(e, policy)
    return {x: alpha(m.fmap(sol[x], Inl)) for x in e}


def j_algebra(monad: Monad, a: Callable, carrier: Carrier | None,
              policy: Policy = Exact(), name: str = "J") -> ElgotAlgebra:
    """The Elgot algebra ``(A, a . T nabla, e -> a . e^dagger)`` for ``#(X, Y) = T(X + Y)``."""
    pm = PMonad(monad, None)

    def structure(v):
        return a(monad.fmap(v, lambda z: z.value))

    def it(e: Mapping) -> Solution:
        k = e if isinstance(e, KleisliMap) else KleisliMap(monad, Carrier("X", tuple(e)), None, e)
        sol = iterate(k, policy)
        return Solution({x: a(sol[x]) for x in e}, exact=sol.exact)

    return ElgotAlgebra(pm, carrier, structure, it, name=name)


def free_t_algebra(monad: Monad, Y: Carrier, policy: Policy = Exact()) -> ElgotAlgebra:
    """``J(T Y, mu)``."""
    carrier = None
    if monad.exhaustive:
        carrier = Carrier(f"T{Y.name}", tuple(monad.values(list(Y))))
    return j_algebra(monad, monad.mu, carrier, policy, name=f"J(T{Y.name},mu)")


def istar_from_iistar(alg: ElgotAlgebra, e: KleisliMap) -> KleisliMap:
    """``e^dagger = (T(eta + id) . e)^ddagger`` in an algebra on ``T Y``."""
    m = e.monad
    if alg.pm.monad != m or alg.pm.sig is not None:
        raise TypeError("algebra must be over T(- + -) for the monad of e")
    lifted = {x: m.fmap(e[x], lambda z: Inl(m.unit(z.value)) if isinstance(z, Inl) else z)
              for x in e}
    sol = alg.iterate(lifted)
    y_carrier = e.codomain.left if e.codomain is not None else None
    return KleisliMap(m, e.domain, y_carrier, dict(sol), exact=getattr(sol, "exact", True))


def derived_dagger(monad: Monad, policy: Policy = Exact()) -> Callable[[KleisliMap], KleisliMap]:
    """The monad iteration recovered from the algebras ``J(T Y, mu)``."""

    def dagger(e: KleisliMap) -> KleisliMap:
        return istar_from_iistar(free_t_algebra(monad, e.codomain.left, policy), e)

    return dagger


# --------------------------------------------------------------------------
# the codiagonal condition for algebras


def check_codiag_alg(alg: ElgotAlgebra, e: Mapping, instance_id: str = "-",
                     inner_policy: Policy = Exact()) -> AxiomResult:
    """``(m . e)^ddagger = (e^ddagger)^ddagger`` for ``e : X -> #(#(A, X), X)``.

    The inner iteration is the one of the free algebra ``J(T(A + X), mu)``.
    """
    pm = alg.pm
    if pm.sig is not None:
        raise TypeError("the codiagonal condition needs #(A, X) = T(A + X)")
    m = pm.monad
    try:
        lhs = alg.iterate({x: pm.mult(e[x]) for x in e})
        inner = j_algebra(m, m.mu, None, inner_policy).iterate(e)
        rhs = alg.iterate(inner)
    except NonConvergence as exc:
        return AxiomResult("codiag_alg", instance_id, "NONCONV", str(exc))
    for x in e:
        if not alg.eq(lhs[x], rhs[x]):
            return AxiomResult("codiag_alg", instance_id, "FAIL",
                               f"e={ {k: str(v) for k, v in e.items()} } at {x!r}: "
                               f"lhs={lhs[x]!r} rhs={rhs[x]!r}")
    return AxiomResult("codiag_alg", instance_id, "PASS")


def as_sig_free(alg: ElgotAlgebra) -> ElgotAlgebra:
    """Re-type an algebra for ``T(A + delay X)`` as one for ``T(A + X)``.

    The delay signature is the identity functor, so the two parametrized
    monads are isomorphic; algebras without a signature are returned as is.
    """
    pm = alg.pm
    if pm.sig is None:
        return alg
    if pm.sig.kind != "delay":
        raise TypeError(f"only delay algebras can be re-typed, not {pm.sig.declaration()}")
    m = pm.monad
    wrap = lambda z: Inr(Layer("delay", (z.value,))) if isinstance(z, Inr) else z
    up = lambda v: m.fmap(v, wrap)
    return ElgotAlgebra(PMonad(m, None), alg.carrier, lambda v: alg.structure(up(v)),
                        lambda e: alg.iterate({x: up(e[x]) for x in e}),
                        name=f"{alg.name}[Id]", eq=alg.eq)


def factors_through_codiagonal(alg: ElgotAlgebra) -> bool:
    """Whether ``a : T(A + A) -> A`` only depends on ``T nabla``, i.e. lies in the image of J."""
    pm = alg.pm
    if pm.sig is not None:
        raise TypeError("needs an algebra for T(A + X)")
    A = list(alg.carrier)
    merge = lambda z: Inl(z.value)
    return all(alg.eq(alg.structure(v), alg.structure(pm.monad.fmap(v, merge)))
               for v in pm.values(A, A))


def codiag_instances(pm: PMonad, A, X, limit: int | None = None, rng=None):
    """Every ``e : X -> T(T(A + X) + X)``, or ``limit`` random ones."""
    m = pm.monad
    A, X = list(A), list(X)
    inner = pm.values(A, X)
    outer_elems = [Inl(v) for v in inner] + [Inr(x) for x in X]
    if limit is None:
        vals = list(m.values(outer_elems))
        for img in itertools.product(vals, repeat=len(X)):
            yield dict(zip(X, img))
        return
    from .sampling import random_value

    for _ in range(limit):
        yield {x: random_value(m, outer_elems, rng, max_size=3) for x in X}


def tx_mu_delta(pm: PMonad) -> Callable[[ResTree], EffectValue]:
    """``mu . delta`` on trees whose leaves are effect values: the algebra on ``T X``."""
    return lambda t: pm.monad.mu(delta_collapse(t))
