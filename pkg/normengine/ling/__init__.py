"""From linguistic facts to the semantic facts of a case."""

from .lexicon import Lexicon, LexiconEntry, default_lexicon, load_lexicon
from .transform import (
    AgentAssignment,
    Transformation,
    analyze,
    assign_agents,
    defeasible_defaults,
    lingcase_to_case,
    segment_times,
    transform,
    verb_lemma,
)
