"""The rule language: knowledge bases (.nkb), cases (.nc) and linguistic facts (.lf)."""

from .parser import (
    parse_case,
    parse_ground_rules,
    parse_kb,
    parse_lingfacts,
    parse_literal,
)
from .printer import print_case, print_kb, print_literal, print_rule
from .rules import (
    CaseFile,
    Default,
    Implication,
    KnowledgeBase,
    LingCase,
    NormalDefault,
    Rule,
    SemiNormalDefault,
)
