"""Two-chain phase model: Fock states, monodromy matrices and their action on universal characters."""
from .fock import (FockVector, OccState, OpWord, SiteOp, lift_headroom, make_state, op,
                   parse_state, site_apply, states_up_to, vacuum_state)
from .monodromy import (FORMAL, OperatorLaurent, apply_entry, apply_symbolic, conservation_check,
                        hamiltonian_apply, hamiltonian_check, l_matrix, monodromy,
                        phase_algebra_check, r_matrix, rtt_check, sample_pairs)
from .ucmap import fock_to_uc, jmath_map, jmath_report, quotient, uc_to_poly
from .checks import (ADOPTED_READING, READINGS, annihilation_check, bethe_expansion,
                     bethe_expansion_check, bethe_state, commutativity_check,
                     entry_relation_check, exchange_identity_check, full_psi_check,
                     full_psi_expansion, prop_bb_check, prop_bb_sweep,
                     projected_relation_check, subset_expansion, subset_expansion_check)
