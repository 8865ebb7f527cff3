"""Elgot algebras on small posets and their twin description as tree algebras.

An algebra with iteration can be handed any system of recursive equations
and returns a solution.  The same algebra can equally be described as an
evaluation of (possibly infinite) trees, and the two descriptions convert
into each other without loss.
"""
import random

from elgotkit import continuous_elgot, elgot_to_em, em_to_elgot, free_elgot, shipped_algebras
from elgotkit.elgot import hash_maps, perturb, unique_solution_probe
from elgotkit.resumption import eta_nu, render_tree
from elgotkit.sampling import random_hash_value, random_tree

spec = next(s for s in shipped_algebras() if s.name == "P-delay-join3-succ")
print(f"{spec.name}: carrier {list(spec.carrier)}, each delay step adds one (capped at 2)")
alg = continuous_elgot(spec)
pm = spec.pm

rng = random.Random(5)
tree = random_tree(pm, list(spec.carrier), rng)
print("\nA random tree over the carrier:\n ", render_tree(tree, 4))
chi = elgot_to_em(alg)
print("evaluates to", chi(tree))

back = em_to_elgot(chi)
same = all(back.iterate(e) == alg.iterate(e) for e in hash_maps(pm, list(spec.carrier), [0, 1]))
print("\nIteration recovered from the tree evaluation agrees on every 2-variable system:", same)

print("\nIn the free algebra on trees a system has exactly one solution.")
free = free_elgot(pm)
leaves = [eta_nu(pm, "p"), eta_nu(pm, "q")]
e = {x: random_hash_value(pm, leaves, [0, 1], rng, min_size=1) for x in (0, 1)}
sol = free.iterate(e)
wrong = dict(sol)
wrong[0] = perturb(sol[0], rng, 3, ["p", "q"])
report = unique_solution_probe(free, e, [sol, wrong], depth=5)
print("  solution:", render_tree(sol[0], 3))
print("  tampered:", render_tree(wrong[0], 3))
print("  candidates satisfying the system:", report.satisfying)
