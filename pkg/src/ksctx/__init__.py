"""Counting the contextual value assignments behind CHSH violations and Kochen-Specker sets."""
from .enumeration import (Assignment, ExpectationRow, contextuality_count, enumerate_assignments,
                          expectation_row, functional_value, is_noncontextual)
from .ks import Hypergraph, TwoValuedState, embeddability_checks, enumerate_two_valued_states
from .metrics import (Mixture, average_contextual_per_quantum, fraction_closed_form,
                      ks_fraction_statement, min_contextual_fraction)
from .polytope import (HalfSpace, Polytope, correlation_vertices, facets_from_vertices,
                       maximize_functional, vertices_from_facets)
from .scenario import Scenario, builtin_chsh, contextual_variables, parse_scenario
from .simulate import StreamSpec, empirical_functional, generate_stream, stream_for_lambda

__version__ = "0.1.0"
