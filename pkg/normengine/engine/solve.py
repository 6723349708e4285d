"""Stable models of ground programs with classical negation.

A classical literal and its complement are distinct solver atoms; candidate
models holding both are rejected.
"""

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, List, Optional, Sequence

from loguru import logger

from normengine.errors import SizeCapError
from normengine.logic import Literal, complement, literal_key
from normengine.util.constants import BRUTE_FORCE_LIMIT, DEFAULT_MODEL_CAP

from .ground import GroundProgram
from .translate import LpRule


@dataclass(frozen=True)
class Interpretation:
    """A set of ground classical literals."""

    literals: "frozenset[Literal]" = frozenset()

    @classmethod
    def of(cls, literals: Iterable[Literal]) -> "Interpretation":
        return cls(frozenset(literals))

    def __contains__(self, lit: Literal) -> bool:
        return lit in self.literals

    def __iter__(self) -> Iterator[Literal]:
        return iter(sorted(self.literals, key=literal_key))

    def __len__(self) -> int:
        return len(self.literals)

    @property
    def consistent(self) -> bool:
        return not any(complement(lit) in self.literals for lit in self.literals if lit.positive)

    def __str__(self) -> str:
        return "{" + ", ".join(str(lit) for lit in self) + "}"


@dataclass(frozen=True)
class SolveResult:
    models: "tuple[Interpretation, ...]" = ()
    exhausted: bool = True

    def __len__(self) -> int:
        return len(self.models)

    def model_sets(self) -> "set[frozenset[Literal]]":
        return {m.literals for m in self.models}


def reduct(program: GroundProgram, m: Interpretation) -> GroundProgram:
    """Gelfond-Lifschitz reduct: drop rules blocked by `m`, then drop every `not`."""
    kept = [
        LpRule(rule.head, rule.pos_body, (), rule.origin)
        for rule in program
        if not any(lit in m for lit in rule.naf_body)
    ]
    return GroundProgram(tuple(kept))


def least_model(program: GroundProgram) -> Interpretation:
    """The least fixpoint of a program without `not`. Check `.consistent` on the result."""
    compiled = _Compiled(program)
    atoms = compiled.closure(lambda rule: True)
    return Interpretation.of(compiled.table.literal(a) for a in atoms)


def is_stable(program: GroundProgram, m: Interpretation) -> bool:
    return m.consistent and least_model(reduct(program, m)).literals == m.literals


class _Compiled:
    """Integer form of a ground program, with watch lists for propagation."""

    def __init__(self, program: GroundProgram) -> None:
        self.table = program.atom_table
        size = len(self.table)
        self.heads: "list[int]" = []
        self.pos: "list[tuple[int, ...]]" = []
        self.naf: "list[tuple[int, ...]]" = []
        self.watch: "list[list[int]]" = [[] for _ in range(size)]
        for index, rule in enumerate(program):
            self.heads.append(self.table.id_of(rule.head))
            pos = tuple(sorted({self.table.id_of(lit) for lit in rule.pos_body}))
            self.pos.append(pos)
            self.naf.append(tuple(sorted({self.table.id_of(lit) for lit in rule.naf_body})))
            for atom in pos:
                self.watch[atom].append(index)
        self.complement = [self.table.complement_id(a) for a in range(size)]

        frequency: "dict[int, int]" = {}
        for naf in self.naf:
            for atom in naf:
                frequency[atom] = frequency.get(atom, 0) + 1
        # Most frequent first; ties in canonical atom order.
        self.naf_atoms: "list[int]" = sorted(frequency, key=lambda a: (-frequency[a], a))

    def closure(self, enabled: Callable[[int], bool]) -> "set[int]":
        """Least model of the enabled rules, read as definite rules."""
        remaining = [len(pos) for pos in self.pos]
        active = [enabled(index) for index in range(len(self.heads))]
        derived: "set[int]" = set()
        queue: "List[int]" = [self.heads[i] for i, pos in enumerate(self.pos) if not pos and active[i]]
        while queue:
            atom = queue.pop()
            if atom in derived:
                continue
            derived.add(atom)
            for index in self.watch[atom]:
                remaining[index] -= 1
                if remaining[index] == 0 and active[index]:
                    queue.append(self.heads[index])
        return derived

    def consistent(self, atoms: "set[int]") -> bool:
        return all(self.complement[a] is None or self.complement[a] not in atoms for a in atoms)


def _propagate(compiled: _Compiled, assignment: "list[Optional[bool]]") -> "Optional[set[int]]":
    """Tighten `assignment` in place. Returns the lower bound, or None on conflict.

    The lower bound holds what every stable model extending the assignment
    contains; the upper bound holds everything such a model may contain.
    """
    while True:
        lower = compiled.closure(lambda i: all(assignment[a] is False for a in compiled.naf[i]))
        if not compiled.consistent(lower):
            return None
        upper = compiled.closure(lambda i: not any(assignment[a] is True for a in compiled.naf[i]))
        changed = False
        for atom in compiled.naf_atoms:
            value = assignment[atom]
            if atom in lower:
                if value is False:
                    return None
                if value is None:
                    assignment[atom] = True
                    changed = True
            elif atom not in upper:
                if value is True:
                    return None
                if value is None:
                    assignment[atom] = False
                    changed = True
        if not changed:
            return lower


def _search(compiled: _Compiled) -> "Iterator[set[int]]":
    size = len(compiled.table)
    stack: "List[list[Optional[bool]]]" = [[None] * size]
    while stack:
        assignment = stack.pop()
        lower = _propagate(compiled, assignment)
        if lower is None:
            continue
        branch = next((a for a in compiled.naf_atoms if assignment[a] is None), None)
        if branch is None:
            yield lower
            continue
        for value in (True, False):  # popped in reverse: false first
            child = list(assignment)
            child[branch] = value
            stack.append(child)


def solve_all(program: GroundProgram, cap: int = DEFAULT_MODEL_CAP) -> SolveResult:
    """Enumerate the stable models of `program`, at most `cap` of them.

    Models come out in a deterministic order. `exhausted` is False when more
    models exist than `cap`.
    """
    if cap < 1:
        raise ValueError("The model cap must be positive.")
    compiled = _Compiled(program)
    models: "list[Interpretation]" = []
    for atoms in _search(compiled):
        model = Interpretation.of(compiled.table.literal(a) for a in atoms)
        if not is_stable(program, model):
            continue
        if len(models) == cap:
            logger.debug("Model cap {} reached.", cap)
            return SolveResult(tuple(models), exhausted=False)
        models.append(model)
    logger.debug("Found {} stable models.", len(models))
    return SolveResult(tuple(models), exhausted=True)


def brute_force_solve(program: GroundProgram, limit: int = BRUTE_FORCE_LIMIT) -> SolveResult:
    """Test every subset of the program's literals for stability.

    Only subsets of rule heads are tried, since no other set can be stable.

    Raises:
        SizeCapError: if the program has more than `limit` literals.
    """
    size = len(program.atom_table)
    if size > limit:
        raise SizeCapError(f"Brute force is limited to {limit} literals, the program has {size}.")
    compiled = _Compiled(program)
    heads = sorted(set(compiled.heads))
    models = []
    for mask in range(1 << len(heads)):
        candidate = {heads[i] for i in range(len(heads)) if mask >> i & 1}
        if not compiled.consistent(candidate):
            continue
        fixpoint = compiled.closure(lambda i: not any(a in candidate for a in compiled.naf[i]))
        if fixpoint == candidate:
            models.append(Interpretation.of(compiled.table.literal(a) for a in candidate))
    models.sort(key=lambda m: [literal_key(lit) for lit in m])
    return SolveResult(tuple(models), exhausted=True)


def cautious(models: Sequence[Interpretation]) -> "frozenset[Literal]":
    """Literals true in every model."""
    if not models:
        return frozenset()
    common = set(models[0].literals)
    for model in models[1:]:
        common &= model.literals
    return frozenset(common)


def brave(models: Sequence[Interpretation]) -> "frozenset[Literal]":
    """Literals true in some model."""
    return frozenset(lit for model in models for lit in model.literals)
