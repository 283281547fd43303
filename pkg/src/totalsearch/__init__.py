"""Total search problems, constructive reductions, and brute-force oracles."""

from .circuit import Circuit, CircuitParseError, Gate, evaluate, parse, serialize, truth_table
from .encoding import (
    Bitstring,
    bit_compose,
    bit_decompose,
    bit_decompose_minimal,
    ceil_log2,
    mod_shift,
)
from .gadgets import (
    CircuitBuilder,
    build_modmul,
    build_piecewise,
    build_square_multiply,
    circuit_from_table,
    drop_last_output,
    pad_outputs,
    wire_transform,
)
from .lattice import IntMatrix, det_exact, lattice_member
from .oracle import brute_force, enumerate_solutions
from .problems import (
    BlichfeldtInstance,
    ClawInstance,
    CollisionInstance,
    DLogInstance,
    DLogPInstance,
    DoveInstance,
    GeneralClawInstance,
    GroupoidOps,
    GroupoidRep,
    IndexInstance,
    IndexTrace,
    Instance,
    PigeonInstance,
    PrefixCollisionInstance,
    Solution,
    TotalityError,
    Verdict,
    groupoid_op,
    index_function,
    validate_instance,
    verify,
)
from .reductions import (
    IMPOSSIBLE_CASES,
    REDUCTIONS,
    Reduction,
    SoundnessViolation,
    build_identity_indexing,
    build_reduction,
    build_shifted_indexing,
    chain,
    reduction_ids,
)

__version__ = "0.1.0"
