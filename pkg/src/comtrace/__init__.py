"""Combined traces: step sequences up to join/split of serialisable steps."""

from .alphabet import (
    ComtraceAlphabet,
    DerivedRelations,
    compare_steps,
    enumerate_steps,
    format_alphabet,
    is_step,
    load_alphabet,
    parse_alphabet,
    validate_alphabet,
)
from .errors import *  # noqa: F401,F403
from .indivisibility import (
    divide_step,
    indiv_alphabet,
    indiv_dependence,
    is_indivisible,
    minlex_step,
    split,
    step_equiv_classes,
)
from .kernels import BACKEND
from .oracle import enumerate_class, oracle_equivalent
from .projection import (
    BOTTOM,
    ProjectionBuilder,
    ProjectionSet,
    equivalent,
    parse_projection_set,
    projection_representation,
)
from .reconstruct import (
    Strategy,
    allowed_first_steps,
    conditionally_possible,
    extract,
    foata,
    minlex,
    possible_actions,
    reconstruct,
)
from .stepseq import StepSequence, compare_sequences, lex, parse_stepseq, sstep

__version__ = "0.1.0"
