"""Non-Markovian depolarizing channels and their non-Markovianity diagnostics.

The package builds the generalized depolarizing Kraus families (qubit,
N-level, multiqubit), their intermediate dynamical maps and Choi matrices,
and every witness and measure of non-Markovianity defined for the family:
Choi spectra and trace-norm witnesses, canonical decay rates and their
normalized integral, distinguishability revivals, the quantum-memory
witness, accessible-state volume and parameter-space trajectories. The
``depolmark`` command line emits the corresponding plot-ready datasets.
"""

__version__ = "0.1.0"

from .matcore import (
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    SingularityError,
    SingularMapError,
    SingularRateError,
)
from .channels import (
    DepolParams,
    KrausSet,
    apply_channel,
    kappa,
    multiqubit_kraus,
    qubit_kraus,
    qudit_kraus,
    weyl_operator,
)
from .dynmaps import (
    ChoiMatrix,
    LambdaRatio,
    NcpWitness,
    Superoperator,
    bell_expectations,
    bell_states,
    choi_closed_form,
    choi_eigenvalues_closed,
    choi_of,
    crossover_point,
    g_function,
    intermediate_choi,
    intermediate_map,
    lambda_ratio,
    multiqubit_choi_trace_norm,
    multiqubit_intermediate_map,
    ncp_witness,
    qudit_intermediate_map,
    superoperator_of,
)
from .measures import (
    MeasureValue,
    RateSample,
    blp_measure,
    decay_rate,
    decay_rate_normalized,
    hcla_closed_form,
    hcla_measure,
    memory_witness_X,
    memory_witness_closed,
    qutrit_hcla_log_form,
    trace_distance,
)
from .geometry import (
    AffineMap,
    TrajectoryPoint,
    affine_map_of,
    f_matrix,
    gell_mann_matrices,
    trajectory,
    volume_determinant,
    volume_measure,
)

__all__ = [
    "__version__",
    "PAULI_I",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "SingularityError",
    "SingularMapError",
    "SingularRateError",
    "DepolParams",
    "KrausSet",
    "apply_channel",
    "kappa",
    "multiqubit_kraus",
    "qubit_kraus",
    "qudit_kraus",
    "weyl_operator",
    "ChoiMatrix",
    "LambdaRatio",
    "NcpWitness",
    "Superoperator",
    "bell_expectations",
    "bell_states",
    "choi_closed_form",
    "choi_eigenvalues_closed",
    "choi_of",
    "crossover_point",
    "g_function",
    "intermediate_choi",
    "intermediate_map",
    "lambda_ratio",
    "multiqubit_choi_trace_norm",
    "multiqubit_intermediate_map",
    "ncp_witness",
    "qudit_intermediate_map",
    "superoperator_of",
    "MeasureValue",
    "RateSample",
    "blp_measure",
    "decay_rate",
    "decay_rate_normalized",
    "hcla_closed_form",
    "hcla_measure",
    "memory_witness_X",
    "memory_witness_closed",
    "qutrit_hcla_log_form",
    "trace_distance",
    "AffineMap",
    "TrajectoryPoint",
    "affine_map_of",
    "f_matrix",
    "gell_mann_matrices",
    "trajectory",
    "volume_determinant",
    "volume_measure",
]
