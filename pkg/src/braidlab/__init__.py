"""braidlab: finite set-theoretic solutions of the Yang-Baxter equation.

Tables, predicates and the derived solution live in ``core``; structure
group quotients and rank in ``quotients``; the M_X injectivity criterion in
``injectivity``; cocycles and 7-tuples in ``cocycle``; linear and affine
solutions on (Z/m)^k in ``linear``; the exhaustive census in ``census``.
"""

from .caps import Caps, get_caps
from .census import (CensusRecord, canonical_form, enumerate_solutions, orbit_size,
                     search_canonical)
from .cocycle import (FiniteGroup, SevenTuple, WordCocycle, seven_tuple_to_solution,
                      star_action_on_a0, verify_cocycle, word_cocycle)
from .core import (BraidedMap, action_tables, apply_braid_word, braid_components,
                   check_braided, check_involutive, check_nondegenerate,
                   check_qybe_equiv, check_symmetric, derived_solution, j_map,
                   j_conjugation_holds, phi_invariance_check, phi_table,
                   validate_bijection)
from .errors import BraidlabError
from .injectivity import (build_m_module, injectivity_agrees_with_derived,
                          injectivity_report, is_injective, necessary_conditions)
from .lattice import IntLattice
from .linear import (AffineSolution, LinearSolution, QuadrupleABDS, TriplePQZ,
                     abd_from_pqz, affine_extend, breve_solution,
                     check_linear_relations, hat_solution, is_injective_affine,
                     is_injective_linear, materialize, phi_closed_form,
                     pqz_from_abd, quadruple_to_solution, s_of)
from .modmat import ModMatrix
from .quotients import (a0_quotient, equivalence_classes, g_quotient,
                        quotient_report, rank)

__version__ = "0.1.0"
