"""Translation, grounding and stable-model search."""

from .ground import (
    AtomTable,
    DomainSignature,
    GroundProgram,
    collect_signature,
    dump_ground,
    ground,
    load_ground,
)
from .solve import (
    Interpretation,
    SolveResult,
    brute_force_solve,
    is_stable,
    least_model,
    reduct,
    solve_all,
)
from .translate import (
    LogicProgram,
    LpRule,
    Origin,
    dump_program,
    translate_facts,
    translate_implication,
    translate_kb,
    translate_normal_default,
    translate_semi_normal_default,
)
