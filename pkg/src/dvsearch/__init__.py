"""Statevector simulation of an entangled two-register search for SHA-1
disturbance vectors, with the classical DV machinery needed to drive it."""
from .dv import (
    EDGES,
    CandidateEncoding,
    DisturbanceVector,
    DvSeed,
    TypeITable,
    decode,
    encode,
    expand_backward,
    expand_forward,
    hamming_weight,
    type_i_table,
)
from .errors import (
    CapacityError,
    DimensionError,
    DvSearchError,
    EncodingError,
    NormalizationError,
    OracleFileError,
    OracleRangeError,
)
from .grover import (
    ClassTotals,
    IterationTrace,
    QueryLedger,
    RunConfig,
    TraceRecord,
    amplified_controls,
    analytic_two_level,
    classify,
    prepare_entangled,
    run_search,
    sample_measurements,
    verify_complexity,
)
from .oracle import ValidityOracle, file_oracle, make_oracle, table_oracle, toy_oracle
from .statevector import (
    RegisterLayout,
    StateVector,
    diffusion_d,
    hadamard_all,
    lambda_nu,
    oracle_uf,
    phase_p,
    phase_pg,
    probability,
    reflect_about,
    zero_state,
)

__version__ = "0.1.0"
