import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elgotkit.effects import FinPowerset, Inl, Inr, Maybe, TracePowerset, identity
from elgotkit.pmonad import PMonad
from elgotkit.resumption import (CUT, Coalgebra, Truncator, bisim_depth, coit, coit2, corec_prim,
                                 eta_nu, ext, kleisli_nu, map_nu, mu_nu, out_inv, reachable,
                                 render_tree, render_value, truncate)
from elgotkit.sampling import random_hash_value, random_tree
from elgotkit.signatures import Layer, Signature

PMS = [PMonad(FinPowerset, Signature.actions("a", "b")), PMonad(Maybe, Signature.ops(g=2, h=0)),
       PMonad(FinPowerset, None), PMonad(Maybe, Signature.delay()),
       PMonad(TracePowerset("ab"), None)]


def a_chain():
    pm = PMonad(FinPowerset, Signature.actions("a"))
    return pm, coit(Coalgebra(pm, lambda s: pm.node(Layer("a", (s,)))))(0)


class TestTrees:
    def test_out_roundtrip(self):
        pm = PMS[0]
        v = pm.unit("x")
        assert out_inv(pm, v).out() == v

    def test_out_checks_monad(self):
        pm = PMS[0]
        t = coit(Coalgebra(pm, lambda s: Maybe.nothing))(0)
        with pytest.raises(TypeError):
            t.out()

    def test_lazy_and_memoised(self):
        calls = []
        pm = PMS[3]

        def step(s):
            calls.append(s)
            return pm.node(Layer("delay", (s + 1,)))

        h = coit(Coalgebra(pm, step))
        t = h(0)
        assert calls == []
        truncate(t, 5)
        truncate(t, 5)
        assert calls == [0, 1, 2, 3, 4]
        assert h(0) is t

    def test_render_format(self):
        pm, t = a_chain()
        assert render_tree(t, 0) == "@cut"
        assert render_tree(t, 2) == "T{ a(T{ a(@cut) }) }"
        assert render_tree(eta_nu(pm, "x"), 1) == "T{ leaf x }"
        empty = out_inv(pm, FinPowerset.bottom())
        assert render_tree(empty, 3) == "T{}"

    def test_render_sig_free_and_traces(self):
        pm = PMonad(TracePowerset("ab"), None)
        t = out_inv(pm, pm.monad.of(((), Inl("x")), (("a",), Inr(eta_nu(pm, "y")))))
        assert render_tree(t, 2) == "T{ (a,(T{ (ε,leaf y) })) | (ε,leaf x) }"

    def test_truncation_interns(self):
        pm, t = a_chain()
        tr = Truncator()
        assert tr(t, 4) is tr(coit(Coalgebra(pm, lambda s: pm.node(Layer("a", (s,)))))(7), 4)
        assert truncate(t, 0) is CUT
        with pytest.raises(ValueError):
            truncate(t, -1)

    def test_bisim_and_reachable(self):
        pm, t = a_chain()
        assert bisim_depth(t, kleisli_nu(lambda x: eta_nu(pm, x))(t), 10)
        assert len(reachable(t)) == 1
        pm2 = PMonad(FinPowerset, Signature.delay())
        grow = coit(Coalgebra(pm2, lambda s: pm2.node(Layer("delay", (s + 1,)))))(0)
        assert reachable(grow, limit=50) is None

    def test_corec_prim_splices(self):
        pm, t = a_chain()
        f = lambda s: pm.node(Layer("a", (Inl(t),))) if s == 0 else None
        u = corec_prim(pm, f)(0)
        assert bisim_depth(u, t, 8)

    def test_ext(self):
        pm = PMS[0]
        v = pm.monad.of(Inl("x"), Inr(Layer("a", ("y",))))
        assert render_tree(ext(pm, v), 3) == "T{ leaf x | a(T{ leaf y }) }"

    def test_render_value_cut(self):
        assert render_value(CUT, PMS[0]) == "@cut"


def random_kleisli(pm, leaves, targets, rng):
    table = {x: random_tree(pm, targets, rng) for x in leaves}
    return table.__getitem__


@pytest.mark.parametrize("pm", PMS, ids=lambda p: p.name)
@settings(max_examples=12, deadline=None)
@given(seed=st.integers(0, 100_000))
def test_monad_laws(pm, seed):
    rng = random.Random(seed)
    t = random_tree(pm, ["p", "q"], rng)
    f = random_kleisli(pm, ["p", "q"], ["r", "s"], rng)
    g = random_kleisli(pm, ["r", "s"], ["u"], rng)
    n = 6
    assert bisim_depth(kleisli_nu(lambda x: eta_nu(pm, x), pm)(t), t, n)
    assert bisim_depth(kleisli_nu(f, pm)(eta_nu(pm, "p")), f("p"), n)
    lhs = kleisli_nu(g, pm)(kleisli_nu(f, pm)(t))
    rhs = kleisli_nu(lambda x: kleisli_nu(g, pm)(f(x)), pm)(t)
    assert bisim_depth(lhs, rhs, n)


@pytest.mark.parametrize("pm", PMS, ids=lambda p: p.name)
@settings(max_examples=12, deadline=None)
@given(seed=st.integers(0, 100_000))
def test_coiteration_identities(pm, seed):
    rng = random.Random(seed)
    n = 5
    states = [0, 1, 2]
    e_table = {s: random_hash_value(pm, ["b0", "b1"], states, rng) for s in states}
    e = Coalgebra(pm, e_table)
    f_table = {b: random_hash_value(pm, ["a0"], [random_tree(pm, ["a0"], rng)], rng)
               for b in ["b0", "b1"]}
    h2 = coit2(pm, e_table.__getitem__, f_table.__getitem__)
    star = kleisli_nu(lambda b: out_inv(pm, f_table[b]), pm)
    h = coit(e)
    g = {"b0": "c0", "b1": "c1"}.__getitem__
    relabelled = coit(Coalgebra(pm, lambda s: pm.bimap(g, identity, e_table[s])))
    via_u = coit2(pm, e_table.__getitem__, pm.unit)
    for s in states:
        assert bisim_depth(h2(s), star(h(s)), n)
        assert bisim_depth(map_nu(g, pm)(h(s)), relabelled(s), n)
        assert bisim_depth(via_u(s), h(s), n)
        tr = Truncator()
        lhs = tr.payload(pm, h2(s).out(), n)
        rhs = tr.payload(pm, pm.mult(pm.bimap(f_table.__getitem__, h2, e_table[s])), n)
        assert lhs == rhs


def test_mu_nu_flattens():
    pm = PMS[0]
    inner = eta_nu(pm, "x")
    outer = eta_nu(pm, inner)
    assert bisim_depth(mu_nu(pm)(outer), inner, 4)
