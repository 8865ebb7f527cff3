"""Checking the iteration laws of a monad on enumerated or sampled Kleisli maps.

Every law is evaluated on both sides with an iteration operator (by default
the Kleene iteration of :func:`elgotkit.effects.iterate`) and compared
extensionally.  Report lines read ``LAW instance-id PASS|FAIL|NONCONV [witness]``.
"""
from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass, field

from .effects import (Carrier, Depth, Exact, Inr, KleisliMap, Monad, NonConvergence, Policy,
                      TracePowersetMonad, assoc, assoc_inv, copair, coproduct, eta, inl, inr,
                      iterate, kcomp, oplus, pure, show)
from .sampling import random_map

LAW_IDS = ("fixpoint", "naturality", "codiagonal", "codiagonal_merged", "uniformity",
           "dinaturality", "bekic", "weak")


class BudgetExceeded(ValueError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"instance space has {required} elements, budget is {budget}")
        self.required = required
        self.budget = budget


@dataclass
class LawInstance:
    law: str
    monad: Monad
    carriers: dict
    maps: dict
    policy: Policy = field(default_factory=Exact)
    ident: str = "0"


@dataclass
class LawResult:
    law: str
    ident: str
    status: str
    lhs: object = None
    rhs: object = None
    witness: str = ""

    def line(self) -> str:
        s = f"{self.law.upper()} {self.ident} {self.status}"
        return f"{s} {self.witness}" if self.witness else s


@dataclass
class LawReport:
    totals: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    results: list = field(default_factory=list)

    def add(self, r: LawResult) -> None:
        t = self.totals.setdefault(r.law, {"PASS": 0, "FAIL": 0, "NONCONV": 0, "vacuous": 0})
        t[r.status] += 1
        if r.status == "PASS" and r.witness == "vacuous":
            t["vacuous"] += 1
        if r.status == "FAIL":
            self.failures.append(r)
        self.results.append(r)

    @property
    def count(self) -> int:
        return len(self.results)

    @property
    def ok(self) -> bool:
        return not self.failures and all(t["NONCONV"] == 0 for t in self.totals.values())

    def summary(self) -> list[str]:
        return [f"{law}: pass={t['PASS']} (vacuous={t['vacuous']}) fail={t['FAIL']} "
                f"nonconv={t['NONCONV']}" for law, t in sorted(self.totals.items())]


# --------------------------------------------------------------------------
# shapes of the quantified morphisms


def _carriers(sizes: Mapping[str, int]) -> dict:
    return {name: Carrier.of(name, n) for name, n in sizes.items()}


def _shape(law: str, C: dict) -> list[tuple[str, Carrier, Carrier]]:
    """The Kleisli maps a law quantifies over, as ``(name, domain, codomain)``."""
    X, Y, Z = C["X"], C["Y"], C["Z"]
    plus = coproduct
    shapes = {
        "fixpoint": [("f", X, plus(Y, X))],
        "naturality": [("f", X, plus(Y, X)), ("g", Y, Z)],
        "codiagonal": [("g", X, plus(plus(Y, X), X))],
        "codiagonal_merged": [("g", X, plus(Y, plus(X, X)))],
        "uniformity": [("f", X, plus(Y, X)), ("g", Z, plus(Y, Z))],
        "dinaturality": [("g", X, plus(Y, Z)), ("h", Z, plus(Y, X))],
        "bekic": [("g", X, plus(plus(Z, Y), X)), ("f", Y, plus(plus(Z, Y), X))],
        "weak": [("g", X, plus(Y, X)), ("f", Y, plus(Z, Y))],
    }
    if law not in shapes:
        raise ValueError(f"unknown law {law!r}; expected one of {', '.join(LAW_IDS)}")
    return shapes[law]


def _sizes(size) -> dict:
    if isinstance(size, int):
        return {"X": size, "Y": size, "Z": size}
    return {"X": size[0], "Y": size[1], "Z": size[2]}


def space_size(law: str, monad: Monad, size, max_word: int = 0) -> int:
    """Number of instances an exhaustive enumeration would produce."""
    C = _carriers(_sizes(size))
    total = 1
    for _, dom, cod in _shape(law, C):
        n = len(cod)
        per = monad.count(n, max_word) if isinstance(monad, TracePowersetMonad) else monad.count(n)
        total *= per ** len(dom)
    if law == "uniformity":
        total *= len(C["X"]) ** len(C["Z"])
    return total


def _all_maps(monad: Monad, dom: Carrier, cod: Carrier) -> Iterator[KleisliMap]:
    vals = list(monad.values(list(cod)))
    for img in itertools.product(vals, repeat=len(dom)):
        yield KleisliMap(monad, dom, cod, dict(zip(dom, img)))


def enumerate_instances(law: str, monad: Monad, size=1, policy: Policy | None = None,
                        budget: int = 200_000, samples: int = 200, seed: int = 0
                        ) -> Iterator[LawInstance]:
    """Instances of ``law`` with carriers of the given sizes.

    ``size`` is one size for all of ``X, Y, Z`` or a triple.  Enumeration is
    exhaustive and deterministic for Maybe and FinPowerset.  TracePowerset
    instances are ``samples`` seeded random draws evaluated under ``Depth``.
    A carrier of size 0 yields no instances.
    """
    sizes = _sizes(size)
    C = _carriers(sizes)
    shape = _shape(law, C)
    if any(n <= 0 for n in sizes.values()):
        return
    if isinstance(monad, TracePowersetMonad):
        policy = policy or Depth(4)
        rng = random.Random(seed)
        for i in range(samples):
            maps = {name: random_map(monad, dom, cod, rng, max_size=2, max_word=2)
                    for name, dom, cod in shape}
            if law == "uniformity":
                maps["h"] = {z: rng.choice(list(C["X"])) for z in C["Z"]}
                maps["f"] = _uniform_partner(monad, maps["g"], maps["h"], C, rng) or maps["f"]
            yield LawInstance(law, monad, C, maps, policy, str(i))
        return
    policy = policy or Exact()
    required = space_size(law, monad, size)
    if required > budget:
        raise BudgetExceeded(required, budget)
    spaces = [list(_all_maps(monad, dom, cod)) for _, dom, cod in shape]
    names = [name for name, _, _ in shape]
    hs = list(C["Z"].functions(C["X"])) if law == "uniformity" else [None]
    i = 0
    for combo in itertools.product(*spaces):
        for h in hs:
            maps = dict(zip(names, combo))
            if h is not None:
                maps["h"] = h
            yield LawInstance(law, monad, C, maps, policy, str(i))
            i += 1


def _uniform_partner(monad, g, h, C, rng):
    """A map ``f`` with ``f . h = (eta + h) . g`` when ``h`` determines one; else None."""
    table = {}
    for z in C["Z"]:
        v = monad.fmap(g[z], lambda w: Inr(h[w.value]) if isinstance(w, Inr) else w)
        x = h[z]
        if x in table and table[x] != v:
            return None
        table[x] = v
    for x in C["X"]:
        if x not in table:
            table[x] = monad.bottom()
    return KleisliMap(monad, C["X"], coproduct(C["Y"], C["X"]), table)


# --------------------------------------------------------------------------
# evaluation


def _kmap(monad, dom, cod, fn) -> KleisliMap:
    return KleisliMap.build(monad, dom, cod, fn)


def _retag(monad, f: KleisliMap, g, cod) -> KleisliMap:
    """``T g . f`` for a base function ``g``."""
    return _kmap(monad, f.domain, cod, lambda x: monad.fmap(f[x], g))


def _sides(inst: LawInstance, dagger: Callable[[KleisliMap], KleisliMap]):
    m = inst.monad
    C, M = inst.carriers, inst.maps
    X, Y, Z = C["X"], C["Y"], C["Z"]
    law = inst.law
    if law == "fixpoint":
        f = M["f"]
        fd = dagger(f)
        return fd, kcomp(copair(eta(m, Y), fd), f)
    if law == "naturality":
        f, g = M["f"], M["g"]
        return kcomp(g, dagger(f)), dagger(kcomp(oplus(g, eta(m, X)), f))
    if law == "codiagonal":
        g = M["g"]
        YX = coproduct(Y, X)
        lhs = dagger(kcomp(copair(eta(m, YX), inr(m, Y, X)), g))
        return lhs, dagger(dagger(g))
    if law == "codiagonal_merged":
        g = M["g"]
        nabla = copair(eta(m, X), eta(m, X))
        lhs = dagger(kcomp(oplus(eta(m, Y), nabla), g))
        g_assoc = _retag(m, g, assoc_inv, coproduct(coproduct(Y, X), X))
        return lhs, dagger(dagger(g_assoc))
    if law == "uniformity":
        f, g, h = M["f"], M["g"], M["h"]
        prem_l = {z: f[h[z]] for z in Z}
        hk = pure(m, Z, X, h.__getitem__)
        prem_r = kcomp(oplus(eta(m, Y), hk), g)
        if any(prem_l[z] != prem_r[z] for z in Z):
            return None
        fd = dagger(f)
        return _kmap(m, Z, Y, lambda z: fd[h[z]]), dagger(g)
    if law == "dinaturality":
        g, h = M["g"], M["h"]
        lhs = dagger(kcomp(copair(inl(m, Y, X), h), g))
        inner = dagger(kcomp(copair(inl(m, Y, Z), g), h))
        return lhs, kcomp(copair(eta(m, Y), inner), g)
    if law == "bekic":
        g, f = M["g"], M["f"]
        ZY, YX = coproduct(Z, Y), coproduct(Y, X)
        fg = copair(f, g)
        lhs = dagger(_retag(m, fg, assoc, coproduct(Z, YX)))
        gd = dagger(g)
        h = kcomp(copair(eta(m, ZY), gd), f)
        rhs = kcomp(copair(eta(m, Z), dagger(h)), copair(inr(m, Z, Y), gd))
        return lhs, rhs
    if law == "weak":
        g, f = M["g"], M["f"]
        YX = coproduct(Y, X)
        step = kcomp(oplus(f, eta(m, X)), copair(inl(m, Y, X), g))
        body = dagger(_retag(m, step, assoc, coproduct(Z, YX)))
        lhs = _kmap(m, X, Z, lambda x: body[Inr(x)])
        return lhs, kcomp(dagger(f), dagger(g))
    raise ValueError(f"unknown law {law!r}")


def default_dagger(policy: Policy) -> Callable[[KleisliMap], KleisliMap]:
    return lambda f: iterate(f, policy)


def check_law(inst: LawInstance, dagger: Callable[[KleisliMap], KleisliMap] | None = None
              ) -> LawResult:
    """Evaluate both sides of ``inst`` and compare them.

    Under a ``Depth(n)`` policy on TracePowerset only traces shorter than
    ``n`` are compared.  Uniformity instances whose premise fails pass
    vacuously.
    """
    dagger = dagger or default_dagger(inst.policy)
    try:
        sides = _sides(inst, dagger)
    except NonConvergence as exc:
        return LawResult(inst.law, inst.ident, "NONCONV", witness=str(exc))
    if sides is None:
        return LawResult(inst.law, inst.ident, "PASS", witness="vacuous")
    lhs, rhs = sides
    m = inst.monad
    if isinstance(m, TracePowersetMonad) and isinstance(inst.policy, Depth):
        n = inst.policy.n
        cut = lambda k: {x: m.restrict(k[x], n) for x in k}
        lhs_c, rhs_c = cut(lhs), cut(rhs)
    else:
        lhs_c, rhs_c = dict(lhs), dict(rhs)
    for x in lhs_c:
        if lhs_c[x] != rhs_c[x]:
            w = (f"{_describe(inst)} at {show(x)}: lhs={lhs_c[x]} rhs={rhs_c[x]}")
            return LawResult(inst.law, inst.ident, "FAIL", lhs, rhs, w)
    return LawResult(inst.law, inst.ident, "PASS", lhs, rhs)


def _describe(inst: LawInstance) -> str:
    parts = []
    for name in sorted(inst.maps):
        k = inst.maps[name]
        body = ",".join(f"{show(x)}->{k[x]}" for x in k)
        parts.append(f"{name}=[{body}]")
    return " ".join(parts)


def run_laws(laws, monad: Monad, size=1, policy: Policy | None = None,
             dagger: Callable | None = None, **kw) -> LawReport:
    """Check every instance of every law in ``laws``; results keep enumeration order."""
    report = LawReport()
    for law in ([laws] if isinstance(laws, str) else laws):
        for inst in enumerate_instances(law, monad, size, policy, **kw):
            report.add(check_law(inst, dagger))
    return report


def size_range(bound) -> list:
    """All size triples with each component in ``1..bound`` (or per-carrier bounds)."""
    bx, by, bz = (bound, bound, bound) if isinstance(bound, int) else bound
    return [(x, y, z) for x in range(1, bx + 1) for y in range(1, by + 1)
            for z in range(1, bz + 1)]


__all__ = ["LAW_IDS", "BudgetExceeded", "LawInstance", "LawResult", "LawReport",
           "enumerate_instances", "check_law", "run_laws", "space_size", "size_range",
           "default_dagger"]
