"""Collapsing delay trees, and moving iteration between a monad and its algebras.

A delay tree records every step of a computation.  Collapsing it forgets
the steps and keeps only the results, with divergence becoming the least
element.  Iteration on the monad and iteration on its algebras determine
each other; the codiagonal condition on algebras is what separates the
algebras coming from the monad from arbitrary ones.
"""
import random

from elgotkit import (Carrier, FinPowerset, Inl, Inr, KleisliMap, Maybe, PMonad, Signature,
                      continuous_elgot, coproduct, delta_collapse, iterate, shipped_algebras)
from elgotkit.bridge import (as_sig_free, check_codiag_alg, codiag_instances, derived_dagger,
                             factors_through_codiagonal)
from elgotkit.resumption import Coalgebra, coit
from elgotkit.signatures import Layer

pm = PMonad(FinPowerset, Signature.delay())
counter = coit(Coalgebra(pm, lambda s: pm.monad.of(Inl(s), Inr(Layer("delay", ((s + 1) % 3,))))))
print("A process that may stop at any of 0, 1, 2, 0, ... collapses to",
      delta_collapse(counter(0)))
spin = coit(Coalgebra(pm, lambda s: pm.node(Layer("delay", (s,)))))
print("A process that only delays collapses to", delta_collapse(spin(0)))

X, Y = Carrier.of("X", 2), Carrier.of("Y", 1)
e = KleisliMap(Maybe, X, coproduct(Y, X),
               {"x0": Maybe.unit(Inr("x1")), "x1": Maybe.unit(Inl("y0"))})
show = lambda k: {x: str(v) for x, v in k.items()}
print("\nIteration in Maybe:", show(iterate(e)))
print("Recovered from the free algebra on T Y:", show(derived_dagger(Maybe)(e)))

print("\nThe codiagonal condition on small algebras:")
for spec in shipped_algebras():
    if spec.pm.sig is not None and spec.pm.sig.kind != "delay":
        continue
    alg = as_sig_free(continuous_elgot(spec))
    fails = sum(check_codiag_alg(alg, v).status == "FAIL" for v in
                codiag_instances(alg.pm, spec.carrier, [0, 1], limit=200, rng=random.Random(0)))
    kind = "from a monad algebra" if factors_through_codiagonal(alg) else "not from a monad algebra"
    print(f"  {spec.name:20} {kind:26} failures: {fails}/200")
