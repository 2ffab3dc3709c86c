"""Decide FC-definability of regular languages, with checkable witnesses."""
from .automata import (
    Alphabet,
    AutomatonError,
    Dfa,
    Nfa,
    accepts,
    between_states_dfa,
    complement,
    determinize,
    enumerate_language,
    equivalent,
    included,
    is_empty,
    minimize,
    parse_dfa_text,
    format_dfa_text,
    product,
    shortest_accepted,
)
from .decide import DecisionReport, decide
from .fc import compile_sfr_to_fc, eval_fc, fc_language, parse_fc, quantifier_rank
from .loopstep import LoopStepWitness, algorithm1_exact, detect_loop_step, verify_witness
from .monoid import (
    MonoidTooLarge,
    NonPrimitivityWitness,
    index_period,
    is_group_primitive,
    is_periodic,
    non_primitivity_witness,
    preimage_dfa,
    transition_monoid,
    verify_non_primitivity,
)
from .sfr import compile_sfr, parse_sfr
from .words import (
    commutes,
    is_internal_factor,
    is_primitive,
    primitive_root,
    roots_of_language,
    wstar_dfa,
)

__version__ = "0.1.0"
