"""Iteration, resumptions and Elgot algebras over finite effect monads.

The layers, from the bottom up:

``effects``
    Maybe, finite powerset and trace monads; Kleisli maps on finite carriers;
    least-fixed-point iteration.
``signatures``, ``pmonad``
    Polynomial signatures and the parametrized monad ``#(A, X) = T(A + Sigma X)``.
``resumption``
    Lazy infinite trees forming the final coalgebra, with the resumption monad.
``elgot``
    Complete Elgot algebras, free algebras, and the translation to and from
    algebras of the resumption monad.
``lawcheck``, ``bridge``
    Law checking for iteration operators; collapse of delay trees, traces and
    the passage between monad and algebra iteration.
``speclang``, ``cli``
    Process specifications in text form and the ``elgotkit`` command.
"""
from .effects import (Carrier, ContractViolation, Depth, DomainError, EffectValue, Exact,
                      FinPowerset, Inl, Inr, KleisliMap, Maybe, MonadMismatch, NonConvergence,
                      TracePowerset, copair, coproduct, eta, inl, inr, iterate, kcomp, oplus)
from .signatures import Layer, Signature
from .pmonad import PMonad, hash_bimap, hash_mult, hash_unit, leaf, node
from .resumption import (Coalgebra, ResTree, bisim_depth, coit, coit2, corec_prim, eta_nu, ext,
                         kleisli_nu, map_nu, mu_nu, out, out_inv, render_tree, truncate)
from .elgot import (CppoAlgebraSpec, ElgotAlgebra, EMAlgebra, check_algebra_axiom, check_hom,
                    continuous_elgot, elgot_to_em, em_to_elgot, free_elgot, shipped_algebras,
                    unique_solution_probe)
from .lawcheck import LAW_IDS, check_law, enumerate_instances, run_laws
from .bridge import (as_sig_free, check_codiag_alg, delta_collapse, factors_through_codiagonal,
                     iistar_from_istar, istar_from_iistar, j_algebra, trace_set)
from .speclang import SpecError, check_guarded, compile_spec, parse, print_spec, solve

__all__ = [name for name in dir() if not name.startswith("_")]
