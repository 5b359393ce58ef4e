"""knotcol: quandle colorings of knot diagrams.

Decide and count nontrivial quandle colorings (brute force, backtracking,
braid propagation, SAT), compute Fox colorability and Alexander polynomials,
and assemble knottedness certificates and inequivalence witnesses.
"""

from .knotio import (BraidWord, Crossing, KnotDiagram, KnotFormatError,
                     NonRealizableError, UNKNOT, braid_to_diagram, insert_r2,
                     load_dt_csv, markov_stabilize, parse_braid, parse_dt,
                     parse_gauss, torus_braid)
from .quandle import (Congruence, LibrarySpec, NotDistributive, NotIdempotent,
                      NotLeftInvertible, Quandle, QuandleAxiomError, affine,
                      congruences, conjugation, dihedral, factor, is_simple,
                      library_generate, library_load, library_save,
                      principal_congruence, subquandle_generated, verify_axioms)
from .coloring import (Budget, BudgetExceeded, Coloring, all_colorings,
                       color_backtrack, color_braid, color_brute, colorable,
                       count_colorings, decode_model, encode_cnf)
from .sat import (CnfInstance, emit_dimacs, parse_dimacs, sat_decide,
                  solve_external)
from .alexander import (IntPolynomial, alexander_matrix, alexander_polynomial,
                        alexander_trivial, fox_colorable, fox_count,
                        knot_determinant)
from .recognize import (AlexanderMismatch, ColorCountMismatch, Exhausted,
                        Indistinguishable, KnottednessCertificate,
                        affine_prefilter, certify_knotted, distinguish,
                        verify_certificate)

__version__ = "0.1.0"
