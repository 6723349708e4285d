"""Road-domain norms and anomaly findings."""

from .findings import AnomalyFinding, FindingKind, cause_sentence, extract_findings, witnessed
from .kernel import KernelPredicate, builtin_kb, close_ability, kernel_predicates
