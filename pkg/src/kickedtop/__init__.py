"""Kicked-top simulation lab.

A generic spin-j Floquet engine on the permutation-symmetric subspace plus
exact closed-form solutions for the 3- and 4-qubit cases, entanglement
measures, the classical limit map, Husimi-style sphere grids, and a
tomography post-processing pipeline.  Each closed form has a numeric
cross-check in the test suite.
"""

from .symspace import (
    BlochPoint,
    KickedTopParams,
    SymState,
    UnitaryMatrix,
    coherent_state,
    collective_ops,
    evolve,
    floquet,
    parity_op,
    symmetric_to_qubits,
    trajectory,
)
from .measures import (
    concurrence,
    entanglement_series,
    fidelity,
    haar_symmetric_sample,
    linear_entropy,
    reduced_state,
    rmt_average,
    time_average,
)
from .exact3 import (
    GeneralState3,
    avg_entropy3,
    avg_entropy_3pi2,
    block_power3,
    concurrence3_000,
    entropy3_closed,
    general_entropy3,
    n_star_000,
)
from .exact4 import (
    TunnelingReport,
    avg_entropy4,
    block_power4,
    entropy4_closed,
    ghz_fidelity_series,
    tunneling,
    tunneling_overlap_series,
)
from .classical import ClassicalPoint, portrait, step
from .husimi import SphereGrid, husimi_grid
from .tomo import (
    ReadoutModel,
    bundled_readout_model,
    correct_populations,
    pipeline_metrics,
    project_psd,
    reconstruct,
)

__version__ = "0.1.0"
