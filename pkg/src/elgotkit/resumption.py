"""The final coalgebra ``F X = nu g. T(X + Sigma g)`` as lazy, memoized trees.

A :class:`ResTree` holds a deferred ``out`` payload: an effect value over
``Inl(x)`` leaves and ``Inr(layer)`` nodes whose children are again trees.
Trees are infinite in general, so they are only ever compared through
finite observations (:func:`truncate`, :func:`bisim_depth`).
"""
from __future__ import annotations

from collections import deque
from collections.abc import Callable, Hashable, Mapping
from dataclasses import dataclass
from typing import Any

from .effects import (Carrier, EffectValue, Inl, Inr, TracePowersetMonad, copair_fn, identity,
                      show, word_str)
from .pmonad import PMonad


class ResTree:
    """A node of the final coalgebra; ``out()`` is forced once and cached."""

    __slots__ = ("pm", "_thunk", "_out")

    def __init__(self, pm: PMonad, thunk: Callable[[], EffectValue] | None = None,
                 out: EffectValue | None = None):
        self.pm = pm
        self._thunk = thunk
        self._out = out

    def out(self) -> EffectValue:
        if self._out is None:
            value = self._thunk()
            self.pm.monad.check(value)
            self._out = value
            self._thunk = None
        return self._out

    @property
    def forced(self) -> bool:
        return self._out is not None

    def __repr__(self):
        return f"<ResTree {render_tree(self, 2)}>"


def _fn(m) -> Callable:
    return m.__getitem__ if isinstance(m, Mapping) else m


def out(t: ResTree) -> EffectValue:
    return t.out()


def out_inv(pm: PMonad, v: EffectValue) -> ResTree:
    """Inverse of ``out``: wrap a one-layer payload over trees."""
    pm.monad.check(v)
    return ResTree(pm, out=v)


@dataclass
class Coalgebra:
    """A ``#(X, -)``-coalgebra ``step : S -> T(X + Sigma S)``."""

    pm: PMonad
    step: Any
    states: Carrier | None = None

    def __call__(self, s):
        return _fn(self.step)(s)


def coit(c: Coalgebra) -> Callable[[Hashable], ResTree]:
    """The unique coalgebra morphism into the final coalgebra.

    Trees are shared per state, so a finite coalgebra yields a finite graph.
    """
    pm, step = c.pm, _fn(c.step)
    memo: dict = {}

    def h(s):
        t = memo.get(s)
        if t is None:
            t = ResTree(pm, lambda s=s: pm.bimap(identity, h, step(s)))
            memo[s] = t
        return t

    return h


def corec_prim(pm: PMonad, f) -> Callable[[Hashable], ResTree]:
    """Primitive corecursion for ``f : S -> #(X, F X + S)``.

    Children tagged ``Inl(tree)`` are spliced in as they are; ``Inr(s)``
    children continue the corecursion.
    """
    f = _fn(f)
    memo: dict = {}

    def h(s):
        t = memo.get(s)
        if t is None:
            t = ResTree(pm, lambda s=s: pm.bimap(identity, copair_fn(identity, h), f(s)))
            memo[s] = t
        return t

    return h


def coit2(pm: PMonad, e, f) -> Callable[[Hashable], ResTree]:
    """``coit(e, f)`` for ``e : X -> #(B, X)`` and ``f : B -> #(A, F A)``.

    The unique ``h`` with ``out . h = m . #(f, h) . e``; built by primitive
    corecursion on ``m . #(#(id, inl) . f, inr) . e``.
    """
    e, f = _fn(e), _fn(f)

    def step(x):
        relabel = lambda b: pm.bimap(identity, Inl, f(b))
        return pm.mult(pm.bimap(relabel, Inr, e(x)))

    return corec_prim(pm, step)


def eta_nu(pm: PMonad, x) -> ResTree:
    """Unit of the resumption monad, ``out^-1 . u``."""
    return out_inv(pm, pm.unit(x))


class _LazyPM:
    """Defers a tree-level construction until the first tree reveals its ``pm``."""

    def __init__(self, build: Callable[[PMonad], Callable], pm: PMonad | None):
        self._build = build
        self._fn = build(pm) if pm is not None else None

    def __call__(self, t: ResTree) -> ResTree:
        if self._fn is None:
            self._fn = self._build(t.pm)
        return self._fn(t)


def kleisli_nu(f, pm: PMonad | None = None) -> Callable[[ResTree], ResTree]:
    """Kleisli extension ``f* = coit(#(f, id) . out, out)`` for ``f : X -> F Y``."""
    f = _fn(f)

    def build(pm):
        return coit2(pm, lambda t: pm.bimap(f, identity, t.out()), lambda t: t.out())

    return _LazyPM(build, pm)


def mu_nu(pm: PMonad | None = None) -> Callable[[ResTree], ResTree]:
    """Multiplication ``F F X -> F X``."""
    return kleisli_nu(identity, pm)


def map_nu(g: Callable, pm: PMonad | None = None) -> Callable[[ResTree], ResTree]:
    """Functor action ``F g = (eta_nu . g)*``."""

    def build(pm):
        return kleisli_nu(lambda x: eta_nu(pm, g(x)), pm)

    return _LazyPM(build, pm)


def ext(pm: PMonad, v: EffectValue) -> ResTree:
    """``out^-1 . #(id, eta_nu) : #(X, X) -> F X``."""
    return out_inv(pm, pm.bimap(identity, lambda x: eta_nu(pm, x), v))


# --------------------------------------------------------------------------
# finite observation


class _Cut:
    __slots__ = ()

    def __repr__(self):
        return "@cut"

    def sort_key(self):
        return ("@cut",)


CUT = _Cut()


class Truncator:
    """Computes depth-``n`` truncations; equal truncations are interned."""

    def __init__(self):
        self._memo: dict = {}
        self._intern: dict = {}

    def __call__(self, t: ResTree, n: int):
        if n <= 0:
            return CUT
        key = (id(t), n)
        hit = self._memo.get(key)
        if hit is not None:
            return hit[1]
        pm = t.pm
        child = lambda c: self(c, n - 1)
        v = pm.monad.fmap(t.out(), copair_fn(Inl, lambda node: Inr(pm.smap(child, node))))
        v = self._intern.setdefault(v, v)
        self._memo[key] = (t, v)
        return v

    def payload(self, pm: PMonad, v: EffectValue, n: int):
        """Truncation of ``out_inv(v)`` without building the tree."""
        return self(out_inv(pm, v), n)


def truncate(t: ResTree, n: int):
    """Replace every subtree at depth ``n`` by :data:`CUT` (one depth unit per Sigma-layer)."""
    if n < 0:
        raise ValueError("depth must be nonnegative")
    return Truncator()(t, n)


def bisim_depth(t1: ResTree, t2: ResTree, n: int) -> bool:
    """Equality of depth-``n`` truncations."""
    tr = Truncator()
    return tr(t1, n) == tr(t2, n)


def reachable(t: ResTree, limit: int = 100_000) -> list[ResTree] | None:
    """All subtrees reachable from ``t`` in BFS order, or None beyond ``limit`` nodes."""
    seen = {id(t): t}
    order = [t]
    queue = deque([t])
    while queue:
        s = queue.popleft()
        pm = s.pm
        for z in pm.monad.support(s.out()):
            if isinstance(z, Inr):
                for c in pm.children(z.value):
                    if id(c) not in seen:
                        if len(seen) >= limit:
                            return None
                        seen[id(c)] = c
                        order.append(c)
                        queue.append(c)
    return order


# --------------------------------------------------------------------------
# text format


def render_value(v, pm: PMonad) -> str:
    """Render a truncated tree value as ``T{ leaf x | a(...) | ... }``."""
    if v is CUT:
        return "@cut"
    m = pm.monad

    def alt(z):
        if isinstance(z, Inl):
            return f"leaf {show(z.value)}"
        node = z.value
        if pm.sig is None:
            return f"({render_value(node, pm)})"
        args = ",".join(render_value(c, pm) for c in node.children)
        return f"{node.symbol}({args})"

    if isinstance(m, TracePowersetMonad):
        items = sorted(f"({word_str(w)},{alt(z)})" for w, z in v.payload)
    else:
        items = [alt(z) for z in m.support(v)]
        leaves = sorted(s for s in items if s.startswith("leaf "))
        nodes = sorted(s for s in items if not s.startswith("leaf "))
        items = leaves + nodes
    if not items:
        return "T{}"
    return "T{ " + " | ".join(items) + " }"


def render_tree(t: ResTree, n: int) -> str:
    return render_value(truncate(t, n), t.pm)
