"""Print rules, knowledge bases and cases back in the rule language."""

from typing import Iterable

from normengine.logic import Literal

from .rules import CaseFile, Implication, KnowledgeBase, NormalDefault, Rule, SemiNormalDefault


def print_literal(lit: Literal) -> str:
    return str(lit)


def _conj(literals: Iterable[Literal]) -> str:
    return " & ".join(print_literal(lit) for lit in literals)


def print_rule(rule: Rule) -> str:
    """Render one rule so that `parse_kb` gives it back unchanged."""
    label = f"{rule.id}: " if rule.id is not None else ""
    if isinstance(rule, Implication):
        if rule.is_fact:
            return f"{label}{rule.head}."
        return f"{label}{_conj(rule.body)} -> {rule.head}."
    if isinstance(rule, SemiNormalDefault):
        return f"{label}{_conj(rule.pre)} : {rule.conc} [{_conj(rule.constraint)}]."
    if isinstance(rule, (NormalDefault, SemiNormalDefault)):
        return f"{label}{_conj(rule.pre)} : {rule.conc}."
    raise TypeError(f"Not a rule: {rule!r}")


def print_kb(kb: KnowledgeBase) -> str:
    lines = [f"{fact}." for fact in kb.facts]
    lines.extend(print_rule(rule) for rule in kb.rules)
    return "\n".join(lines) + ("\n" if lines else "")


def print_case(case: CaseFile) -> str:
    """Render a case file. Facts keep their order; directives come first."""
    lines = [f"#case {case.case_id}."]
    if case.agents:
        lines.append(f"#agents {','.join(case.agents)}.")
    lines.append(f"#times 1..{case.max_time}.")
    lines.extend(f"{fact}." for fact in case.facts)
    if case.expected:
        lines.append(f"#expected {', '.join(map(str, case.expected))}.")
    if case.absent:
        lines.append(f"#absent {', '.join(map(str, case.absent))}.")
    return "\n".join(lines) + "\n"
