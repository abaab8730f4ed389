"""Exact Demazure-operator calculus on Coxeter group actions.

Submodules:

- poly:        sparse exact multivariate polynomials (ZZ / QQ / GF(p))
- coxeter:     Coxeter systems, exact group elements, Bruhat order
- realization: roots/coroots, the W-action, Demazure operators, traces
- cosets:      parabolic double cosets, atoms, the Grassmannian catalog
- frobenius:   dual bases, canonical forms, divisibility witnesses
- leibniz:     atomic Leibniz solving, closed forms, probes, transport
- cli:         command-line surface with deterministic JSON reports
"""

from .domains import GF, QQ, ZZ
from .poly import NotDivisibleError, Polynomial, PolyRing
from .coxeter import (CapExceededError, CoxeterSystem, GroupElement, bruhat_leq,
                      coxeter_A, coxeter_BC, coxeter_D, dihedral, enumerate_parabolic,
                      is_finitary, longest_element, symmetric_group)
from .realization import (Realization, RealizationError, permutation_realization,
                          realization_from_config, root_realization)
from .cosets import (AtomicCoset, DoubleCoset, all_atomic_cosets, atomic_coset,
                     bruhat_leq_cosets, coset_demazure, coset_of, core_factored_rex,
                     enumerate_cosets, grassmannian_catalog)
from .frobenius import (BimoduleElement, DualBases, SolveFailedError, canonical_form,
                        divisibility_witness, dual_bases, frobenius_witness)
from .leibniz import (ForcingCertificate, Infeasible, LeibnizCertificate, ProbeResult,
                      atom_solver, certificate_to_dict, closed_form_type_a,
                      demazure_h_rule, iterated_leibniz, naive_rule_probe,
                      pf_membership, solve_T, target_element, transport_certificate)

__version__ = "0.1.0"
