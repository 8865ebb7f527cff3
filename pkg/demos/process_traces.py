"""From a textual process specification to solution trees and traces.

The three mutually recursive processes below are guarded: every recursive
call sits under an action.  That makes the system uniquely solvable, and the
solution of each variable is an infinite tree computed lazily.
"""
from pathlib import Path

from elgotkit import check_guarded, compile_spec, parse, render_tree, solve, trace_set

text = (Path(__file__).parent / "specs" / "example1.proc").read_text()
print(text)

spec = parse(text)
print("guarded:", check_guarded(spec).guarded)
system = compile_spec(spec)
for v in system.variables:
    print(f"  step({v}) = {system.step[v]}")

trees = solve(system)
print("\nThe solution for x3, unfolded three levels:")
print(" ", render_tree(trees["x3"], 3))

print("\nSuccessful traces of x3, shortest first:")
for n in (3, 5):
    words = ["".join(w) or "ε" for w in trace_set(system, "x3", n)]
    print(f"  length <= {n}: {', '.join(words)}")

print("\nAn unguarded equation is reported with the offending occurrence:")
bad = parse("x = x + tick")
for v in check_guarded(bad).violations:
    print(" ", v.describe())
