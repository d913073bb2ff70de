"""Finite-scale models of tame injection-monoid categories, simplicial sets and parsummable structures,
with checkers for their laws and last-vertex comparisons."""

from .combinatorics import (DeltaMap, FiniteGroup, Germ, GroupHom, Window, cyclic_group, injections,
                            make_universal_action, symmetric_group, trivial_group)
from .cx import CX, CXBounds, epsilon, epsilon_tilde
from .cx_fixed import fixed_point_reduction_check, nonsaturation_witness, weak_saturation_check
from .cx_monoidal import verify_epsilon_monoidal, verify_nabla_coherence, verify_rho_laws
from .em import EInjSSet, EMCategory, EMSSet, NerveEM, box_product, einj, finite_subsets, trivial_point
from .errors import (ParsumlabError, DomainMismatch, NoExtension, BudgetTooSmall, InvalidStructure,
                     ActionsDoNotCommute, ObjectNotInTarget, InsufficientGermDomain, NotSupported, TNotStable,
                     BoundsExceeded, WindowOverflow, SupportsOverlap, PreconditionFailed, UnknownSuite,
                     MalformedInput, SchemaViolation)
from .fincat import CatGAction, FinCategory, Functor, chaotic_category, check_equivalence
from .io import load, save, validate_document
from .parsummable import ParsummableCategory, example_finite_subsets, verify_parsummable
from .saturation import saturation_check
from .sset import (SimplicialMap, TruncatedSSet, boundary_simplex, homology, homology_equivalence_check,
                   last_vertex_map, nerve, standard_simplex)
from .suites import Report, SuiteConfig, run_suite
from .symmon import FinSymMonCat, StrongMonFunctor, g_global_we_check, strictify_unit

__version__ = "0.1.0"
