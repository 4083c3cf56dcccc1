"""Invariants computed from jet dimensions, resolution data and closed forms."""

from .closedforms import (ClosedFormError, beta_monomial, beta_monomial_limit, homog_fiber_dims,
                          lct_diagonal, lct_monomial, prop54_check, prop54_rhs)
from .jetdims import (DEFAULT_ENGINE, SANDWICH_LOG, DimensionSequence, InvariantError, JetEngine,
                      SandwichViolation, alpha_pq, alpha_table, beta_m, beta_table, certify_maximum,
                      gamma_estimate, jet_dimension, jet_dimension_sequence, jet_order, lci_jet_check,
                      lct_estimate, mld_estimate, monotonicity_check, quasi_homogeneous_weights)
from .report import INF, NEG_INF, InvariantReport, encode, parse_rational
from .resolution import (Divisor, ResolutionData, ResolutionError, contact_codim, contact_codim_bruteforce,
                         cusp_resolution, lct_from_resolution, load_resolution, make_resolution,
                         mld_from_resolution)

__all__ = [name for name in dir() if not name.startswith("_")]
