"""Least-fixpoint iteration of Kleisli maps, and what breaks when it is cut short.

A map ``f : X -> T(Y + X)`` either exits with a ``y`` or asks to continue at
another ``x``.  Its iteration ``f†`` follows the continuations until they
exit; loops that never exit contribute the least element of ``T``.
"""
from elgotkit import Carrier, Depth, FinPowerset, Inl, Inr, KleisliMap, Maybe, coproduct, iterate
from elgotkit.lawcheck import LAW_IDS, run_laws

X, Y = Carrier.of("X", 3), Carrier.of("Y", 2)

print("A nondeterministic machine: x0 may stop with y0 or move to x1;")
print("x1 moves to x2; x2 either stops with y1 or loops on itself.")
f = KleisliMap(FinPowerset, X, coproduct(Y, X), {
    "x0": FinPowerset.of(Inl("y0"), Inr("x1")),
    "x1": FinPowerset.of(Inr("x2")),
    "x2": FinPowerset.of(Inl("y1"), Inr("x2")),
})
for x, v in iterate(f).items():
    print(f"  f†({x}) = {v}")

print("\nA partial machine that spins forever on x0 gets 'nothing':")
g = KleisliMap(Maybe, Carrier.of("X", 1), coproduct(Carrier.of("Y", 1), Carrier.of("X", 1)),
               {"x0": Maybe.unit(Inr("x0"))})
print(f"  g†(x0) = {iterate(g)['x0']}")

print("\nEvery iteration law, checked on every map between small carriers:")
for monad in (Maybe, FinPowerset):
    report = run_laws(LAW_IDS, monad, 1)
    print(f"  {monad}: {report.count} instances, {len(report.failures)} failures")

print("\nStopping the Kleene chain after one step is not a lawful iteration:")
report = run_laws("fixpoint", Maybe, (2, 1, 1), Depth(1))
print(f"  {len(report.failures)} failures, for example")
print(f"  {report.failures[0].line()}")
