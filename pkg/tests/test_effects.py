import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from elgotkit.effects import (ApproximantSeq, Carrier, ContractViolation, Depth, DomainError,
                              EffectValue, Exact, FinPowerset, Inl, Inr, KleisliMap, Maybe,
                              MonadMismatch, NonConvergence, TracePowerset, assoc, assoc_inv,
                              codiag, copair, coproduct, eta, inl, inr, iterate, kcomp,
                              kleene_chain, lub, map_leq, monad_by_name, oplus, word_str)
from elgotkit.sampling import random_map


def all_maps(m, dom, cod):
    vals = list(m.values(list(cod)))
    for img in itertools.product(vals, repeat=len(dom)):
        yield KleisliMap(m, dom, cod, dict(zip(dom, img)))


class TestValues:
    def test_serialization(self):
        assert str(Maybe.nothing) == "nothing"
        assert str(Maybe.just("x")) == "just x"
        assert str(FinPowerset.of("x2", "x1")) == "{x1,x2}"
        T = TracePowerset("ab")
        assert str(T.of((("a", "b"), "x"), ((), "y"))) == "{(ε,y),(ab,x)}"

    def test_trace_letters_checked(self):
        with pytest.raises(DomainError):
            TracePowerset("ab").of((("c",), "x"))

    def test_value_counts(self):
        for n in range(4):
            assert len(list(Maybe.values(range(n)))) == Maybe.count(n) == n + 1
            assert len(list(FinPowerset.values(range(n)))) == FinPowerset.count(n) == 2 ** n

    def test_monad_mismatch(self):
        f = KleisliMap(Maybe, Carrier.of("X", 1), Carrier.of("Y", 1), {"x0": Maybe.unit("y0")})
        g = KleisliMap(FinPowerset, Carrier.of("Y", 1), Carrier.of("Y", 1),
                       {"y0": FinPowerset.unit("y0")})
        with pytest.raises(MonadMismatch):
            kcomp(g, f)

    def test_missing_key(self):
        f = KleisliMap(Maybe, Carrier.of("X", 1), None, {"x0": Maybe.nothing})
        with pytest.raises(DomainError):
            f["nope"]
        with pytest.raises(DomainError):
            KleisliMap(Maybe, Carrier.of("X", 2), None, {"x0": Maybe.nothing})

    def test_monad_by_name(self):
        assert monad_by_name("maybe") is Maybe
        assert monad_by_name("powerset") is FinPowerset
        assert monad_by_name("traces", "ab") == TracePowerset("ab")
        with pytest.raises(ValueError):
            monad_by_name("list")

    def test_word_str(self):
        assert word_str(()) == "ε"
        assert word_str(("a", "b")) == "ab"


class TestKleisli:
    @pytest.mark.parametrize("m", [Maybe, FinPowerset])
    def test_laws_small(self, m):
        C = [Carrier.of(n, k) for n, k in (("A", 1), ("B", 2))]
        for X, Y in itertools.product(C, C):
            for f in all_maps(m, X, Y):
                assert kcomp(f, eta(m, X)) == f
                assert kcomp(eta(m, Y), f) == f

    def test_coproduct_helpers(self):
        m = FinPowerset
        X, Y = Carrier.of("X", 2), Carrier.of("Y", 1)
        f = KleisliMap(m, X, Y, {"x0": m.of("y0"), "x1": m.of()})
        g = eta(m, Y)
        cp = copair(f, g)
        assert kcomp(cp, inl(m, X, Y)) == f
        assert kcomp(cp, inr(m, X, Y)) == g
        d = codiag(m, X)
        assert d[Inl("x0")] == d[Inr("x0")] == m.unit("x0")
        s = oplus(f, g)
        assert s[Inl("x0")] == m.of(Inl("y0"))
        assert s[Inr("y0")] == m.of(Inr("y0"))

    def test_assoc_roundtrip(self):
        for z in [Inl(Inl(1)), Inl(Inr(2)), Inr(3)]:
            assert assoc_inv(assoc(z)) == z

    def test_copair_codomain_check(self):
        m = Maybe
        f = eta(m, Carrier.of("X", 1))
        g = eta(m, Carrier.of("Y", 1))
        with pytest.raises(TypeError):
            copair(f, g)


class TestIteration:
    @pytest.mark.parametrize("kind,m", [("maybe", Maybe), ("powerset", FinPowerset)])
    @pytest.mark.parametrize("nx,ny", [(1, 1), (2, 1), (1, 2), (2, 2)])
    def test_matches_brute_force(self, kind, m, nx, ny):
        X, Y = Carrier.of("X", nx), Carrier.of("Y", ny)
        cod = coproduct(Y, X)
        count = 0
        for f in all_maps(m, X, cod):
            count += 1
            got = iterate(f)
            assert got.exact
            tag = lambda z: ("L", z.value) if isinstance(z, Inl) else ("R", z.value)
            if kind == "maybe":
                conv = {x: None if not f[x].payload else ("just", tag(f[x].payload[0])) for x in X}
                want = oracles.brute_least_fixpoint(kind, list(X), list(Y), conv)
                assert {x: (None if not got[x].payload else ("just", got[x].payload[0]))
                        for x in X} == want
            else:
                conv = {x: frozenset(tag(z) for z in f[x].payload) for x in X}
                want = oracles.brute_least_fixpoint(kind, list(X), list(Y), conv)
                assert {x: got[x].payload for x in X} == want
        assert count == oracles.map_space_size(kind, nx + ny, nx)

    def test_loop_is_bottom(self):
        X, Y = Carrier.of("X", 1), Carrier.of("Y", 1)
        f = KleisliMap(Maybe, X, coproduct(Y, X), {"x0": Maybe.unit(Inr("x0"))})
        assert iterate(f)["x0"] == Maybe.nothing

    def test_depth_policy_marks_inexact(self):
        X, Y = Carrier.of("X", 2), Carrier.of("Y", 1)
        f = KleisliMap(Maybe, X, coproduct(Y, X),
                       {"x0": Maybe.unit(Inl("y0")), "x1": Maybe.unit(Inr("x0"))})
        approx = iterate(f, Depth(1))
        assert not approx.exact
        assert approx["x1"] == Maybe.nothing
        assert iterate(f, Depth(5)).exact
        assert iterate(f)["x1"] == Maybe.unit("y0")

    def test_exact_window_exhausted(self):
        X, Y = Carrier.of("X", 2), Carrier.of("Y", 1)
        f = KleisliMap(Maybe, X, coproduct(Y, X),
                       {"x0": Maybe.unit(Inl("y0")), "x1": Maybe.unit(Inr("x0"))})
        with pytest.raises(NonConvergence) as info:
            iterate(f, Exact(window=1))
        assert not info.value.last.exact

    def test_trace_depth_is_exact_on_short_words(self):
        T = TracePowerset("ab")
        X, Y = Carrier.of("X", 1), Carrier.of("Y", 1)
        f = KleisliMap(T, X, coproduct(Y, X), {"x0": T.of(((), Inl("y0")), (("a",), Inr("x0")))})
        for n in range(6):
            words = sorted(w for w, _ in iterate(f, Depth(n))["x0"].payload)
            assert words == sorted(("a",) * k for k in range(n + 1))

    def test_kleene_chain_and_lub(self):
        X, Y = Carrier.of("X", 2), Carrier.of("Y", 1)
        f = KleisliMap(FinPowerset, X, coproduct(Y, X),
                       {"x0": FinPowerset.of(Inl("y0")), "x1": FinPowerset.of(Inr("x0"))})
        chain = kleene_chain(f)
        for i in range(4):
            assert chain.leq(chain.generator(i), chain.generator(i + 1))
        res = lub(chain)
        assert res.exact and res.value == dict(iterate(f))

    def test_lub_rejects_non_monotone(self):
        seq = ApproximantSeq(lambda i: -i, lambda a, b: a <= b)
        with pytest.raises(ContractViolation):
            lub(seq)

    def test_lub_window(self):
        res = lub(ApproximantSeq(lambda i: i, lambda a, b: a <= b), window=5)
        assert not res.exact and res.value == 5


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), m=st.sampled_from([Maybe, FinPowerset, TracePowerset("ab")]))
def test_kleisli_associativity_random(seed, m):
    rng = random.Random(seed)
    X, Y, Z, W = (Carrier.of(n, 2) for n in "XYZW")
    f, g, h = (random_map(m, a, b, rng) for a, b in ((X, Y), (Y, Z), (Z, W)))
    assert kcomp(h, kcomp(g, f)) == kcomp(kcomp(h, g), f)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), m=st.sampled_from([Maybe, FinPowerset]))
def test_iteration_is_fixpoint_random(seed, m):
    rng = random.Random(seed)
    X, Y = Carrier.of("X", 3), Carrier.of("Y", 2)
    f = random_map(m, X, coproduct(Y, X), rng, max_size=3)
    s = iterate(f)
    rhs = kcomp(copair(eta(m, Y), s), f)
    assert dict(s) == dict(rhs)
    assert map_leq(s, rhs) and map_leq(rhs, s)


def test_effect_value_is_hashable():
    assert len({Maybe.unit(1), Maybe.unit(1), EffectValue(Maybe, ())}) == 2
