"""Milnor-Witt K-theory, Rost-Schmid cycle complexes and Chow-Witt groups at desk scale.

>>> from mwcycles import gw_of_finite_field
>>> str(gw_of_finite_field(5).group)
'Z + Z/2'
"""
from .abelian import FPAbelianGroup, GroupInvariants, IntMatrix, cokernel, invariants, iso_eq, snf
from .axioms import axiom_suite
from .chow_witt import (StabilizationCertificate, TdivVector, chow_witt_curve, chow_witt_number_ring,
                        exact_sequence_check, oriented_duality_check, tdiv)
from .classgroup import class_group
from .cycles import (AffineLine, Cycle, ProjLine, SpecField, SpecOK, boundary_triple, differential,
                     h_preimage, pullback, pushforward, reciprocity_sum)
from .errors import InconsistentWithTheorem, MWError, NotStabilized
from .finite_field import FiniteField, finite_field_of_order, make_finite_field
from .function_field import RationalFunctionField
from .gw import GWElem, angle, gw_of_finite_field, hyperbolic, n_epsilon, transfer, witt_group
from .kmw import KMWElem, KValue, eta, evaluate, residue, residue_closed_form, symbol
from .number_field import QQ, QuadraticField, quadratic_field

__version__ = "0.1.0"
