"""Bisimilarity enforcing supervisory control for deterministic specifications."""
from .automaton import (DEFAULT_STATE_LIMIT, DUMP, Automaton, CancelToken,
                        DetAutomaton, EventAlphabet, accessible,
                        as_deterministic, canonical, determinize, minimize,
                        parallel, subautomaton, subset_construction,
                        uncontrollable_augment)
from .errors import (AlphabetConflict, AlphabetMismatch, BudgetExceeded,
                     Cancelled, DescsError, InitialStateRemoved,
                     NondeterministicSpec, NotControllable, ParseError,
                     StateLimitExceeded)
from .languages import (concat_sigma_star, lang_controllable,
                        lang_difference_marked, lang_equal, lang_intersect,
                        lang_subset, prefix_close, quotient_unctrl)
from .relations import (Relation, bisimilar, greatest_simulation,
                        synchronized_state_map, synchronously_simulated)
from .supremal import (SupremalResult, f_syn, supremal, supremal_fixpoint,
                       supremal_formula)
from .synthesis import (CheckReport, SyncProduct, check_existence,
                        sync_product, synthesize_supervisor,
                        verify_closed_loop)

__version__ = "0.1.0"
