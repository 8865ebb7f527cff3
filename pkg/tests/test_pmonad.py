import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elgotkit.effects import Carrier, DomainError, FinPowerset, Inl, Inr, Maybe, TracePowerset, identity
from elgotkit.elgot import shipped_algebras
from elgotkit.pmonad import PMonad, hash_mult, hash_unit, leaf, node
from elgotkit.sampling import random_hash_value
from elgotkit.signatures import Layer, Signature, sigma_map

PMS = [PMonad(FinPowerset, Signature.actions("a", "b")), PMonad(Maybe, Signature.ops(g=2, h=0)),
       PMonad(FinPowerset, None), PMonad(Maybe, Signature.delay()),
       PMonad(TracePowerset("ab"), None)]


class TestSignatures:
    def test_constructors(self):
        assert Signature.actions("a", "b").alphabet == ("a", "b")
        assert Signature.delay().declaration() == "sig delay"
        assert Signature.ops(g=2, h=0).declaration() == "sig ops g/2 h/0"
        assert Signature.constant().count(5) == 0

    def test_invalid(self):
        with pytest.raises(ValueError):
            Signature((("a", 1), ("a", 2)))
        with pytest.raises(ValueError):
            Signature((("a", 2),), "actions")
        with pytest.raises(DomainError):
            Signature.actions("a").arity("b")
        with pytest.raises(DomainError):
            Signature.ops(g=2).layer("g", 1)

    def test_layers_count(self):
        sig = Signature.ops(g=2, h=0, k=1)
        for n in range(4):
            assert len(sig.layers(range(n))) == sig.count(n) == n * n + 1 + n

    def test_layer_equality_and_map(self):
        sig = Signature.ops(g=2)
        assert Layer("g", (1, 2)) == sig.layer("g", 1, 2)
        assert hash(Layer("g", (1, 2))) == hash(Layer("g", [1, 2]))
        assert sigma_map(sig, lambda x: x * 10, Layer("g", (1, 2))) == Layer("g", (10, 20))
        with pytest.raises(AttributeError):
            Layer("g", ()).symbol = "h"


class TestHash:
    def test_unit_checks_membership(self):
        pm = PMS[0]
        A = Carrier.of("A", 2)
        assert hash_unit(pm, A, None, "a0") == FinPowerset.of(Inl("a0"))
        with pytest.raises(DomainError):
            hash_unit(pm, A, None, "zz")

    def test_mult_rejects_flat_values(self):
        pm = PMS[0]
        with pytest.raises(TypeError):
            hash_mult(pm, FinPowerset.of(Inl("a0")))

    def test_node_helper(self):
        assert node("a", "x") == Inr(Layer("a", ("x",)))
        assert leaf(3) == Inl(3)

    def test_counts(self):
        pm = PMonad(FinPowerset, Signature.actions("a", "b"))
        assert pm.count(1, 1) == 2 ** 3
        assert len(pm.values([0], [0])) == 8
        assert PMonad(Maybe, None).count(2, 1) == 4


@pytest.mark.parametrize("pm", PMS, ids=lambda p: p.name)
@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 100_000))
def test_parametrized_monad_laws(pm, seed):
    """Unit and associativity of ``#(-, X)`` and functoriality of the bimap."""
    rng = random.Random(seed)
    A, X = ["p", "q"], [0, 1]
    v = random_hash_value(pm, A, X, rng)
    assert pm.mult(pm.bimap(pm.unit, identity, v)) == v
    assert pm.mult(pm.unit(v)) == v
    k1 = {a: random_hash_value(pm, ["r", "s"], X, rng) for a in A}
    k2 = {b: random_hash_value(pm, ["t"], X, rng) for b in ["r", "s"]}
    lhs = pm.bind(pm.bind(v, k1.__getitem__), k2.__getitem__)
    rhs = pm.bind(v, lambda a: pm.bind(k1[a], k2.__getitem__))
    assert lhs == rhs
    f, g = {"p": 1, "q": 2}.__getitem__, (lambda x: x + 5)
    f2, g2 = (lambda a: a * 3), (lambda x: -x)
    assert pm.bimap(f2, g2, pm.bimap(f, g, v)) == pm.bimap(lambda a: f2(f(a)), lambda x: g2(g(x)), v)


@pytest.mark.parametrize("spec", [s for s in shipped_algebras()], ids=lambda s: s.name)
def test_bialgebra_decomposition(spec):
    pm, a = spec.pm, spec.structure
    A = list(spec.carrier)
    recomposed = pm.from_bialgebra(pm.t_part(a), pm.sigma_part(a))
    for v in pm.values(A, A):
        assert recomposed(v) == a(v)
    assert pm.algebra_laws(a, A, limit=2000) == []


def test_algebra_laws_detect_violation():
    pm = PMonad(Maybe, None)
    bad = lambda v: "bot"
    assert pm.algebra_laws(bad, ["bot", 1])
