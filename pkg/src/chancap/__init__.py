"""chancap: quantum channel capacity toolkit.

Computes the entanglement-assisted classical capacity and Holevo lower
bounds of Kraus-represented channels, checks the conditional-information
feedback bound and two-copy additivity numerically, and runs exact
dense-coding and teleportation demos.
"""

from ._kernels import BACKEND as kernel_backend
from .core import (
    DensityMatrix,
    eigh,
    fidelity,
    partial_trace,
    purify,
    tensor,
    tensor_states,
    von_neumann_entropy,
)
from .channels import (
    Isometry,
    QuantumChannel,
    apply,
    apply_extended,
    choi_matrix,
    complementary,
    is_entanglement_breaking,
    make_channel,
    stinespring,
    tensor_channels,
    validate,
    zoo_channels,
)
from .measures import (
    Ensemble,
    channel_mutual_information,
    conditional_mutual_information,
    holevo_chi,
    mutual_information,
)
from .optimize import (
    AdditivityReport,
    BoundCheckReport,
    OptimizerReport,
    check_additivity,
    check_cqfb_bound,
    compute_ce,
    compute_holevo,
)
from .protocols import (
    ProtocolReport,
    dense_coding,
    dense_coding_report,
    feedback_equivalence_demo,
    teleportation,
    teleportation_report,
)
from .sampling import (
    SeededRng,
    random_channel,
    random_density,
    random_separable_tripartite,
)

__version__ = "0.1.0"

__all__ = [
    "AdditivityReport",
    "BoundCheckReport",
    "DensityMatrix",
    "Ensemble",
    "Isometry",
    "OptimizerReport",
    "ProtocolReport",
    "QuantumChannel",
    "SeededRng",
    "apply",
    "apply_extended",
    "channel_mutual_information",
    "check_additivity",
    "check_cqfb_bound",
    "choi_matrix",
    "complementary",
    "compute_ce",
    "compute_holevo",
    "conditional_mutual_information",
    "dense_coding",
    "dense_coding_report",
    "eigh",
    "feedback_equivalence_demo",
    "fidelity",
    "holevo_chi",
    "is_entanglement_breaking",
    "kernel_backend",
    "make_channel",
    "mutual_information",
    "partial_trace",
    "purify",
    "random_channel",
    "random_density",
    "random_separable_tripartite",
    "stinespring",
    "teleportation",
    "teleportation_report",
    "tensor",
    "tensor_channels",
    "tensor_states",
    "validate",
    "von_neumann_entropy",
    "zoo_channels",
]
