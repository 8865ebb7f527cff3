import pytest

from elgotkit.effects import Depth, FinPowerset, Maybe, TracePowerset
from elgotkit.lawcheck import (LAW_IDS, BudgetExceeded, check_law, enumerate_instances,
                               run_laws, size_range, space_size)

import oracles


@pytest.mark.parametrize("law", LAW_IDS)
@pytest.mark.parametrize("size", size_range(2), ids=str)
def test_maybe_exhaustive(law, size):
    report = run_laws(law, Maybe, size)
    assert report.count == space_size(law, Maybe, size)
    assert report.ok, [r.line() for r in report.failures[:3]]


@pytest.mark.parametrize("law", LAW_IDS)
@pytest.mark.parametrize("size", [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2)], ids=str)
def test_powerset_exhaustive(law, size):
    try:
        report = run_laws(law, FinPowerset, size, budget=300_000)
    except BudgetExceeded as exc:
        pytest.skip(f"space too large for this run: {exc}")
    assert report.ok, [r.line() for r in report.failures[:3]]


@pytest.mark.parametrize("law", LAW_IDS)
@pytest.mark.parametrize("depth", [3, 4, 6])
def test_traces_sampled(law, depth):
    report = run_laws(law, TracePowerset("ab"), (2, 2, 2), Depth(depth), samples=30, seed=depth)
    assert report.count == 30
    assert report.ok, [r.line() for r in report.failures[:3]]


def test_instance_counts_match_independent_formula():
    # #maps X -> T(cod) is count(|cod|)^|X|; fixpoint quantifies over X -> T(Y+X)
    for nx, ny in [(1, 1), (2, 1), (1, 2), (2, 2)]:
        n = len(list(enumerate_instances("fixpoint", Maybe, (nx, ny, 1))))
        assert n == oracles.map_space_size("maybe", nx + ny, nx)
        n = len(list(enumerate_instances("fixpoint", FinPowerset, (nx, ny, 1))))
        assert n == oracles.map_space_size("powerset", nx + ny, nx)
    assert space_size("naturality", Maybe, 1) == 3 * 2
    assert space_size("uniformity", Maybe, (2, 1, 2)) == (4 ** 2) * (4 ** 2) * (2 ** 2)


def test_zero_sized_carrier_gives_no_instances():
    assert list(enumerate_instances("fixpoint", Maybe, 0)) == []
    assert list(enumerate_instances("bekic", FinPowerset, (1, 0, 1))) == []
    assert run_laws(LAW_IDS, Maybe, (0, 1, 1)).count == 0


def test_budget_is_checked_before_enumeration():
    with pytest.raises(BudgetExceeded) as info:
        next(enumerate_instances("bekic", FinPowerset, (2, 2, 1), budget=1000))
    assert info.value.required == space_size("bekic", FinPowerset, (2, 2, 1)) == 2 ** 20


def test_unknown_law():
    with pytest.raises(ValueError, match="unknown law"):
        list(enumerate_instances("associativity", Maybe))


def test_enumeration_is_deterministic():
    a = [r.line() for r in run_laws("dinaturality", Maybe, (1, 2, 1)).results]
    b = [r.line() for r in run_laws("dinaturality", Maybe, (1, 2, 1)).results]
    assert a == b
    t1 = [r.line() for r in run_laws("fixpoint", TracePowerset("ab"), 2, samples=10, seed=5).results]
    t2 = [r.line() for r in run_laws("fixpoint", TracePowerset("ab"), 2, samples=10, seed=5).results]
    assert t1 == t2


def test_truncated_iteration_fails_fixpoint_with_witness():
    report = run_laws("fixpoint", Maybe, (2, 1, 1), Depth(1))
    assert not report.ok
    line = report.failures[0].line()
    assert line.startswith("FIXPOINT ") and " FAIL f=[" in line and "lhs=" in line
    assert run_laws("fixpoint", Maybe, (1, 1, 1), Depth(1)).ok


def test_uniformity_reports_vacuous_instances():
    report = run_laws("uniformity", Maybe, (1, 1, 2))
    t = report.totals["uniformity"]
    assert t["vacuous"] > 0 and t["PASS"] == report.count
    assert any("vacuous=" in s for s in report.summary())


def test_custom_dagger_is_used():
    from elgotkit.effects import iterate

    calls = []

    def dagger(f):
        calls.append(f)
        return iterate(f)

    inst = next(enumerate_instances("codiagonal", Maybe, 1))
    assert check_law(inst, dagger).status == "PASS"
    assert len(calls) == 3
