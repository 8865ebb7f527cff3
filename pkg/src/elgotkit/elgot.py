"""Complete Elgot #-algebras and their correspondence with resumption-monad algebras.

An :class:`ElgotAlgebra` bundles a #-algebra structure ``#(A, A) -> A`` with
an iteration operator sending an equation system ``e : X -> #(A, X)``
(a mapping) to its solution ``X -> A`` (a dict).
"""
from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any

from .effects import (Carrier, ContractViolation, EffectValue, Exact, FinPowerset, Inl,
                      Inr, Maybe, NonConvergence, Policy, identity)
from .pmonad import PMonad
from .resumption import (Coalgebra, ResTree, Truncator, CUT, coit, eta_nu, ext, out_inv,
                         reachable)
from .signatures import Signature


class Solution(dict):
    """Result of an iteration; ``exact`` is False for depth-bounded approximants."""

    exact: bool = True

    def __init__(self, *args, exact: bool = True, **kw):
        super().__init__(*args, **kw)
        self.exact = exact


class ElgotAlgebra:
    def __init__(self, pm: PMonad, carrier: Carrier | None, structure: Callable,
                 iterate: Callable[[Mapping], Mapping], name: str = "",
                 eq: Callable[[Any, Any], bool] | None = None):
        self.pm = pm
        self.carrier = carrier
        self.structure = structure
        self._iterate = iterate
        self.name = name or "algebra"
        self.eq = eq or (lambda a, b: a == b)

    def iterate(self, e: Mapping) -> Mapping:
        return self._iterate(e)

    def __call__(self, v: EffectValue):
        return self.structure(v)

    def __repr__(self):
        return f"<ElgotAlgebra {self.name}>"


@dataclass
class EMAlgebra:
    """An algebra ``chi : F A -> A`` for the resumption monad."""

    pm: PMonad
    carrier: Carrier | None
    chi: Callable[[ResTree], Any]
    name: str = "em"

    def __call__(self, t: ResTree):
        return self.chi(t)


# --------------------------------------------------------------------------
# continuous algebras


@dataclass
class CppoAlgebraSpec:
    """A #-algebra on a finite pointed poset, iterated by least fixed points."""

    pm: PMonad
    carrier: Carrier
    structure: Callable[[EffectValue], Any]
    bottom: Any
    leq: Callable[[Any, Any], bool]
    name: str = "cpo-algebra"
    window: int = 1000

    def check_order(self) -> list[str]:
        A = list(self.carrier)
        bad = []
        for x in A:
            if not self.leq(self.bottom, x):
                bad.append(f"bottom is not below {x!r}")
            if not self.leq(x, x):
                bad.append(f"order not reflexive at {x!r}")
        for x, y in itertools.product(A, A):
            if x != y and self.leq(x, y) and self.leq(y, x):
                bad.append(f"order not antisymmetric at {x!r},{y!r}")
        return bad

    def check_monotone(self) -> list[str]:
        """``s <= s'`` pointwise implies ``a . #(id, s) <= a . #(id, s')`` on ``#(A, A)``."""
        A = list(self.carrier)
        maps = [dict(zip(A, img)) for img in itertools.product(A, repeat=len(A))]
        pairs = [(s, t) for s in maps for t in maps if all(self.leq(s[x], t[x]) for x in A)]
        bad = []
        for v in self.pm.values(A, A):
            for s, t in pairs:
                lo = self.structure(self.pm.bimap(identity, s.__getitem__, v))
                hi = self.structure(self.pm.bimap(identity, t.__getitem__, v))
                if not self.leq(lo, hi):
                    bad.append(f"not monotone at {v}")
                    return bad
        return bad


def kleene_solve(pm: PMonad, a: Callable, bottom, leq, e: Mapping,
                 policy: Policy = Exact()) -> Solution:
    """Least solution of ``s = a . #(id, s) . e`` by Kleene iteration from bottom."""
    xs = list(e)
    s = {x: bottom for x in xs}
    limit = policy.window if isinstance(policy, Exact) else policy.n
    steps = 0
    while steps < limit:
        nxt = {x: a(pm.bimap(identity, s.__getitem__, e[x])) for x in xs}
        steps += 1
        if any(not leq(s[x], nxt[x]) for x in xs):
            raise ContractViolation("iteration chain is not monotone")
        if nxt == s:
            return Solution(s, exact=True)
        s = nxt
    if isinstance(policy, Exact):
        raise NonConvergence(f"no fixed point within {limit} steps", Solution(s, exact=False), steps)
    return Solution(s, exact=False)


def continuous_elgot(spec: CppoAlgebraSpec, policy: Policy | None = None) -> ElgotAlgebra:
    """The complete Elgot algebra of least solutions on a cpo #-algebra."""
    policy = policy or Exact(spec.window)
    return ElgotAlgebra(
        spec.pm, spec.carrier, spec.structure,
        lambda e: kleene_solve(spec.pm, spec.structure, spec.bottom, spec.leq, e, policy),
        name=spec.name if isinstance(policy, Exact) else f"{spec.name}@depth{policy.n}")


def chain_join_algebra(pm: PMonad, size: int, sigma: Mapping[str, Callable] | None = None,
                       name: str | None = None) -> CppoAlgebraSpec:
    """Carrier ``0 < 1 < ... < size-1`` with ``max`` as T-algebra (powerset monads).

    ``sigma`` gives a monotone interpretation of every signature symbol.
    """
    A = Carrier(f"C{size}", tuple(range(size)))
    t_alg = lambda v: max(v.monad.support(v), default=0)
    s_alg = _sigma_algebra(pm, sigma)
    return CppoAlgebraSpec(pm, A, pm.from_bialgebra(t_alg, s_alg), 0, lambda x, y: x <= y,
                           name or f"join{size}")


def flat_algebra(pm: PMonad, values: Iterable, sigma: Mapping[str, Callable] | None = None,
                 name: str | None = None) -> CppoAlgebraSpec:
    """Flat cpo ``{bot} + values`` with Maybe's T-algebra ``nothing -> bot``."""
    A = Carrier("F", ("bot",) + tuple(values))
    t_alg = lambda v: v.payload[0] if v.payload else "bot"
    s_alg = _sigma_algebra(pm, sigma)
    return CppoAlgebraSpec(pm, A, pm.from_bialgebra(t_alg, s_alg), "bot",
                           lambda x, y: x == "bot" or x == y, name or "flat")


def _sigma_algebra(pm: PMonad, sigma):
    if pm.sig is None:
        return identity
    sigma = dict(sigma or {})

    def s_alg(layer):
        fn = sigma.get(layer.symbol)
        if fn is None:
            raise KeyError(f"no interpretation for symbol {layer.symbol!r}")
        return fn(*layer.children)

    return s_alg


def shipped_algebras() -> list[CppoAlgebraSpec]:
    """The continuous algebras used throughout the tests (carriers of size <= 3)."""
    delay = Signature.delay()
    acts = Signature.actions("a", "b")
    ops = Signature.ops(g=2, h=0)
    P, M = FinPowerset, Maybe

    def strict(fn):
        return lambda *xs: "bot" if "bot" in xs else fn(*xs)

    return [
        chain_join_algebra(PMonad(P, delay), 2, {"delay": identity}, "P-delay-join2-id"),
        chain_join_algebra(PMonad(P, delay), 3, {"delay": lambda x: min(x + 1, 2)}, "P-delay-join3-succ"),
        chain_join_algebra(PMonad(P, acts), 2, {"a": identity, "b": lambda x: 1}, "P-actions-join2"),
        chain_join_algebra(PMonad(P, None), 2, None, "P-id-join2"),
        chain_join_algebra(PMonad(P, None), 3, None, "P-id-join3"),
        flat_algebra(PMonad(M, delay), (1, 2), {"delay": strict(lambda x: 3 - x)}, "M-delay-flat-swap"),
        flat_algebra(PMonad(M, ops), (0, 1), {"g": strict(lambda x, y: x), "h": lambda: 0}, "M-ops-flat"),
        flat_algebra(PMonad(M, None), (1,), None, "M-id-flat1"),
        flat_algebra(PMonad(M, None), (1, 2), None, "M-id-flat2"),
    ]


# --------------------------------------------------------------------------
# free algebra on trees


def free_elgot(pm: PMonad, X: Carrier | None = None, depth: int = 6) -> ElgotAlgebra:
    """The free complete Elgot algebra: trees ``F X`` with ``out^-1 . m . #(out, id)``.

    Equality of carrier elements is ``bisim_depth`` at ``depth``.
    """

    def structure(v: EffectValue) -> ResTree:
        return out_inv(pm, pm.mult(pm.bimap(lambda t: t.out(), identity, v)))

    def iterate(e: Mapping) -> Solution:
        def c(z):
            if isinstance(z, Inl):
                return pm.bimap(identity, Inl, z.value.out())
            relabel = lambda t: pm.bimap(identity, Inl, t.out())
            return pm.mult(pm.bimap(relabel, Inr, e[z.value]))

        h = coit(Coalgebra(pm, c))
        return Solution({x: h(Inr(x)) for x in e})

    def eq(t1, t2):
        tr = Truncator()
        return tr(t1, depth) == tr(t2, depth)

    alg = ElgotAlgebra(pm, None, structure, iterate, name=f"free({pm.name})", eq=eq)
    alg.unit = lambda x: eta_nu(pm, x)
    alg.depth = depth
    return alg


def free_iso(pm: PMonad, v: EffectValue) -> ResTree:
    """``phi . #(eta, id) : #(X, F X) -> F X`` for the free algebra."""
    phi = free_elgot(pm).structure
    return phi(pm.bimap(lambda x: eta_nu(pm, x), identity, v))


def induced_morphism(alg: ElgotAlgebra, g: Callable) -> Callable[[ResTree], Any]:
    """The unique Elgot morphism ``F X -> B`` extending ``g : X -> B``.

    Computed as the iteration of ``#(g, id) . out`` over the reachable part of a tree.
    """
    pm = alg.pm

    def h(t: ResTree):
        nodes = reachable(t)
        if nodes is None:
            raise NonConvergence("tree is not finite-state", None, 0)
        e = {n: pm.bimap(g, identity, n.out()) for n in nodes}
        return alg.iterate(e)[t]

    return h


# --------------------------------------------------------------------------
# Eilenberg-Moore algebras


def _frontier_coalgebra(pm: PMonad, t: ResTree, depth: int) -> dict:
    """Unfolding of ``t`` to ``depth`` layers; frontier states get the bottom effect."""
    table: dict = {}
    stack = [(t, 0)]
    while stack:
        node, d = stack.pop()
        if (id(node), d) in table:
            continue
        if d >= depth:
            table[(id(node), d)] = pm.monad.bottom()
            continue
        child = lambda c, d=d: (id(c), d + 1)
        v = node.out()
        table[(id(node), d)] = pm.bimap(identity, child, v)
        for z in pm.monad.support(v):
            if isinstance(z, Inr):
                stack.extend((c, d + 1) for c in pm.children(z.value))
    return table


def elgot_to_em(alg: ElgotAlgebra, node_limit: int = 20_000, depth: int = 32) -> EMAlgebra:
    """``chi = out^dagger``: iterate ``out`` over the reachable subtrees of the argument.

    Trees that are not finite-state within ``node_limit`` are unfolded to
    ``depth`` layers with the bottom effect at the frontier.
    """
    pm = alg.pm

    def chi(t: ResTree):
        nodes = reachable(t, node_limit)
        if nodes is not None:
            return alg.iterate({n: n.out() for n in nodes})[t]
        return alg.iterate(_frontier_coalgebra(pm, t, depth))[(id(t), 0)]

    return EMAlgebra(pm, alg.carrier, chi, name=f"G({alg.name})")


def em_from_truncations(spec: CppoAlgebraSpec, window: int = 8, max_depth: int = 64) -> EMAlgebra:
    """``chi`` as the limit of evaluating depth-n truncations with bottom at the cut.

    Returns the first value that stays unchanged for ``window`` further depths.
    """
    pm, a = spec.pm, spec.structure

    def chi(t: ResTree):
        tr = Truncator()
        memo: dict = {}

        def ev(v):
            if v is CUT:
                return spec.bottom
            r = memo.get(v)
            if r is None:
                r = a(pm.bimap(identity, ev, v))
                memo[v] = r
            return r

        vals = []
        for n in range(max_depth + 1):
            vals.append(ev(tr(t, n)))
            if len(vals) > window and len(set(vals[-window - 1:])) == 1:
                return vals[-window - 1]
        raise NonConvergence(f"truncation values not stable by depth {max_depth}", vals[-1],
                             max_depth)

    return EMAlgebra(pm, spec.carrier, chi, name=f"trunc({spec.name})")


def em_to_elgot(em: EMAlgebra) -> ElgotAlgebra:
    """Structure ``chi . ext`` and iteration ``chi . coit(e)``."""
    pm = em.pm

    def iterate(e: Mapping) -> Solution:
        h = coit(Coalgebra(pm, e))
        return Solution({x: em(h(x)) for x in e})

    return ElgotAlgebra(pm, em.carrier, lambda v: em(ext(pm, v)), iterate, name=f"F({em.name})")


def em_laws(em: EMAlgebra, trees: Iterable[ResTree], two_level: Iterable[ResTree]) -> list[str]:
    """Violations of ``chi . eta_nu = id`` and ``chi . F chi = chi . mu_nu``."""
    from .resumption import map_nu, mu_nu

    bad = []
    pm = em.pm
    if em.carrier is not None:
        for x in em.carrier:
            if em(eta_nu(pm, x)) != x:
                bad.append(f"unit law fails at {x!r}")
    for tt in two_level:
        lhs = em(map_nu(em.chi, pm)(tt))
        rhs = em(mu_nu(pm)(tt))
        if lhs != rhs:
            bad.append(f"multiplication law fails: {lhs!r} != {rhs!r}")
    return bad


# --------------------------------------------------------------------------
# combinators from the compositionality axiom


def bullet(pm: PMonad, f_dag: Mapping | Callable, g: Mapping) -> dict:
    """``f_dag . g = #(f_dag, id) . g``."""
    fd = f_dag.__getitem__ if isinstance(f_dag, Mapping) else f_dag
    return {x: pm.bimap(fd, identity, g[x]) for x in g}


def square(pm: PMonad, f: Mapping, g: Mapping) -> dict:
    """``f [] g = m . #(#(id, inl) . f, inr) . [u, g]`` on ``Y + X``."""
    relabel = lambda y: pm.bimap(identity, Inl, f[y])

    def h(z):
        start = pm.unit(z.value) if isinstance(z, Inl) else g[z.value]
        return pm.mult(pm.bimap(relabel, Inr, start))

    keys = [Inl(y) for y in f] + [Inr(x) for x in g]
    return {z: h(z) for z in keys}


# --------------------------------------------------------------------------
# axiom checking


@dataclass
class AxiomResult:
    axiom: str
    instance_id: str
    status: str
    witness: str = ""

    def line(self) -> str:
        s = f"{self.axiom.upper()} {self.instance_id} {self.status}"
        return f"{s} {self.witness}" if self.witness else s


def _compare(alg, lhs: Mapping, rhs: Mapping, keys) -> str:
    for x in keys:
        if not alg.eq(lhs[x], rhs[x]):
            return f"at {x!r}: {lhs[x]!r} != {rhs[x]!r}"
    return ""


def check_algebra_axiom(alg: ElgotAlgebra, axiom: str, instance: Mapping,
                        instance_id: str = "-") -> AxiomResult:
    """Evaluate both sides of ``solution``, ``functoriality`` or ``compositionality``.

    ``instance`` holds ``e`` (solution); ``e``, ``f``, ``h`` (functoriality,
    ``h`` a dict ``X -> Y``); or ``f``, ``g`` (compositionality).
    """
    pm = alg.pm
    try:
        if axiom == "solution":
            e = instance["e"]
            sol = alg.iterate(e)
            rhs = {x: alg.structure(pm.bimap(identity, sol.__getitem__, e[x])) for x in e}
            w = _compare(alg, sol, rhs, list(e))
        elif axiom == "functoriality":
            e, f, h = instance["e"], instance["f"], instance["h"]
            if any(f[h[x]] != pm.bimap(identity, h.__getitem__, e[x]) for x in e):
                return AxiomResult(axiom, instance_id, "PASS", "vacuous")
            fs, es = alg.iterate(f), alg.iterate(e)
            w = _compare(alg, {x: fs[h[x]] for x in e}, es, list(e))
        elif axiom == "compositionality":
            f, g = instance["f"], instance["g"]
            lhs = alg.iterate(square(pm, f, g))
            rhs = alg.iterate(bullet(pm, alg.iterate(f), g))
            w = _compare(alg, {x: lhs[Inr(x)] for x in g}, rhs, list(g))
        else:
            raise ValueError(f"unknown axiom {axiom!r}")
    except NonConvergence as exc:
        return AxiomResult(axiom, instance_id, "NONCONV", str(exc))
    return AxiomResult(axiom, instance_id, "FAIL" if w else "PASS", w)


def hash_maps(pm: PMonad, a_elems, x_elems) -> Iterable[dict]:
    """Every ``e : X -> #(A, X)`` as a dict."""
    xs = list(x_elems)
    vals = pm.values(a_elems, xs)
    for img in itertools.product(vals, repeat=len(xs)):
        yield dict(zip(xs, img))


def axiom_instances(pm: PMonad, axiom: str, A: Iterable, x_size: int, y_size: int | None = None,
                    rng: random.Random | None = None, limit: int | None = None) -> Iterable[dict]:
    """Instances for :func:`check_algebra_axiom` over ``X = {0..x_size-1}``.

    Exhaustive unless ``limit`` is given, in which case ``limit`` random
    instances are drawn with ``rng``.
    """
    A = list(A)
    xs = list(range(x_size))
    ys = [f"y{i}" for i in range(x_size if y_size is None else y_size)]

    def space():
        if axiom == "solution":
            for e in hash_maps(pm, A, xs):
                yield {"e": e}
        elif axiom == "functoriality":
            for f in hash_maps(pm, A, ys):
                for himg in itertools.product(ys, repeat=len(xs)):
                    h = dict(zip(xs, himg))
                    options = [[v for v in pm.values(A, xs)
                                if pm.bimap(identity, h.__getitem__, v) == f[h[x]]] for x in xs]
                    for img in itertools.product(*options):
                        yield {"e": dict(zip(xs, img)), "f": f, "h": h}
        elif axiom == "compositionality":
            for f in hash_maps(pm, A, ys):
                for g in hash_maps(pm, ys, xs):
                    yield {"f": f, "g": g}
        else:
            raise ValueError(axiom)

    if limit is None:
        yield from space()
        return
    from .sampling import random_hash_value

    rng = rng or random.Random(0)
    draw = lambda left, right: random_hash_value(pm, left, right, rng, max_size=3)
    for _ in range(limit):
        if axiom == "solution":
            yield {"e": {x: draw(A, xs) for x in xs}}
        elif axiom == "functoriality":
            # draw e and h, then derive f on the image of h so the premise
            # holds whenever h does not merge points with different images
            h = {x: rng.choice(ys) for x in xs}
            e = {x: draw(A, xs) for x in xs}
            f = {y: draw(A, ys) for y in ys}
            for x in xs:
                f[h[x]] = pm.bimap(identity, h.__getitem__, e[x])
            yield {"e": e, "f": f, "h": h}
        else:
            yield {"f": {y: draw(A, ys) for y in ys}, "g": {x: draw(ys, xs) for x in xs}}


# --------------------------------------------------------------------------
# homomorphisms


@dataclass
class HomReport:
    elgot_ok: bool
    hash_ok: bool
    failures: list[str] = field(default_factory=list)

    @property
    def implication_holds(self) -> bool:
        return (not self.elgot_ok) or self.hash_ok

    @property
    def passed(self) -> bool:
        return self.elgot_ok and self.hash_ok


def check_hom(f: Callable, alg_a: ElgotAlgebra, alg_b: ElgotAlgebra,
              samples: Iterable[Mapping], structure_inputs: Iterable[EffectValue] | None = None
              ) -> HomReport:
    """Check ``(#(f, id) . e)^dagger = f . e^dagger`` on samples, then ``f . a = b . #(f, f)``."""
    pm = alg_a.pm
    failures = []
    elgot_ok = True
    for e in samples:
        lhs = alg_b.iterate({x: pm.bimap(f, identity, e[x]) for x in e})
        sol = alg_a.iterate(e)
        for x in e:
            if not alg_b.eq(lhs[x], f(sol[x])):
                elgot_ok = False
                failures.append(f"elgot-morphism condition fails for e={e!r} at {x!r}")
                break
        if not elgot_ok:
            break
    if structure_inputs is None:
        A = list(alg_a.carrier)
        structure_inputs = pm.values(A, A)
    hash_ok = True
    for v in structure_inputs:
        if not alg_b.eq(f(alg_a.structure(v)), alg_b.structure(pm.bimap(f, f, v))):
            hash_ok = False
            failures.append(f"#-algebra condition fails at {v}")
            break
    return HomReport(elgot_ok, hash_ok, failures)


# --------------------------------------------------------------------------
# uniqueness of solutions in the free algebra


@dataclass
class ProbeReport:
    satisfying: list[int]
    pairwise_bisimilar: bool
    depth: int


def satisfies_solution(alg: ElgotAlgebra, e: Mapping, d: Mapping, depth: int) -> bool:
    pm = alg.pm
    tr = Truncator()
    for x in e:
        rhs = alg.structure(pm.bimap(identity, d.__getitem__, e[x]))
        if tr(d[x], depth) != tr(rhs, depth):
            return False
    return True


def unique_solution_probe(free_alg: ElgotAlgebra, e: Mapping, candidates: list[Mapping],
                          depth: int = 4) -> ProbeReport:
    """Which candidates solve ``e`` up to ``depth``; all solvers must agree up to ``depth``."""
    sat = [i for i, d in enumerate(candidates) if satisfies_solution(free_alg, e, d, depth)]
    tr = Truncator()
    agree = all(tr(candidates[i][x], depth) == tr(candidates[j][x], depth)
                for i in sat for j in sat for x in e)
    return ProbeReport(sat, agree, depth)


def perturb(t: ResTree, rng: random.Random, max_depth: int, leaves: list) -> ResTree:
    """A copy of ``t`` with one layer at depth ``< max_depth`` changed.

    The change toggles one leaf alternative (or empties a Maybe layer), so
    the result differs from ``t`` at the truncation depth just below the
    changed layer.
    """
    pm = t.pm
    m = pm.monad
    target = rng.randrange(max_depth)

    def rebuild(node: ResTree, d: int) -> ResTree:
        v = node.out()
        support = m.support(v)
        kids = [(z, i) for z in support if isinstance(z, Inr)
                for i in range(len(pm.children(z.value)))]
        if d == target or not kids:
            return out_inv(pm, _toggle(pm, v, rng, leaves))
        z, i = rng.choice(kids)
        child = pm.children(z.value)[i]
        new_child = rebuild(child, d + 1)
        if pm.sig is None:
            new_node = new_child
        else:
            ch = list(z.value.children)
            ch[i] = new_child
            new_node = type(z.value)(z.value.symbol, ch)
        return out_inv(pm, m.fmap(v, lambda w: Inr(new_node) if w == z else w))

    return rebuild(t, 0)


def _toggle(pm: PMonad, v: EffectValue, rng: random.Random, leaves: list) -> EffectValue:
    m = pm.monad
    if m is Maybe or m == Maybe:
        if v.payload and isinstance(v.payload[0], Inl):
            others = [y for y in leaves if y != v.payload[0].value]
            return m.unit(Inl(rng.choice(others))) if others else m.nothing
        if v.payload:
            return m.nothing
        return m.unit(Inl(rng.choice(leaves)))
    y = rng.choice(leaves)
    if hasattr(m, "alphabet"):
        item = ((), Inl(y))
    else:
        item = Inl(y)
    payload = set(v.payload)
    payload.symmetric_difference_update({item})
    return EffectValue(m, frozenset(payload))


# --------------------------------------------------------------------------
# the algebra on #(Y, A) induced by a map Y -> A


def parameter_algebra(alg: ElgotAlgebra, f: Callable, Y: Iterable) -> ElgotAlgebra:
    """``(#(Y, A), alpha^f, -^ddagger)`` built from ``alg`` on ``A`` and ``f : Y -> A``.

    ``alpha^f = m . #(id, alpha) . #(id, #(f, id))`` and
    ``e^ddagger = m . #(id, ebar^dagger) . e`` with ``ebar = #(alpha . #(f, id), id) . e``.
    """
    pm, alpha = alg.pm, alg.structure
    collapse = lambda w: alpha(pm.bimap(f, identity, w))

    def structure(v):
        return pm.mult(pm.bimap(identity, collapse, v))

    def iterate(e: Mapping) -> Solution:
        ebar = {x: pm.bimap(collapse, identity, e[x]) for x in e}
        sol = alg.iterate(ebar)
        return Solution({x: pm.mult(pm.bimap(identity, sol.__getitem__, e[x])) for x in e},
                        exact=getattr(sol, "exact", True))

    A = list(alg.carrier) if alg.carrier is not None else None
    carrier = None
    if A is not None and pm.monad.exhaustive:
        carrier = Carrier(f"#({','.join(map(str, Y))};{alg.carrier.name})",
                          tuple(pm.values(list(Y), A)))
    return ElgotAlgebra(pm, carrier, structure, iterate, name=f"aux({alg.name})")
