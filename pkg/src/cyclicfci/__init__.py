"""Causal discovery for cyclic directed mixed graphs.

sigma-separation oracles, acyclifications, FCI / FCI-JCI / PC discovery and
the causal features identifiable from the resulting DPAGs.
"""

from .acyclify import (
    Acyclification,
    ancestral_witness_acyclification,
    canonical_acyclification,
    dmag_of_admg,
    is_acyclification,
    sample_acyclification,
)
from .discovery import (
    BackgroundKnowledge,
    DiscoveryResult,
    check_jci_assumptions,
    fci,
    fci_jci,
    graph_oracle,
    pc_meek,
)
from .errors import *  # noqa: F401,F403
from .graphs import DMAG, DMG, DPAG, Mark, Walk, build_dmg
from .identify import (
    FeatureClaim,
    contains,
    cycle_witnesses,
    definitely_visible,
    identified_ancestor,
    identified_direct_cause,
    identified_non_ancestor,
    identified_non_direct_cause,
    identified_unconfounded,
    jci_direct_targets,
    jci_possibly_cyclic_pairs,
    possibly_cyclic_pairs,
)
from .kernels import BACKEND
from .separation import (
    IndependenceModel,
    exists_inducing_path,
    independence_model,
    markov_equivalent,
    separated,
    walk_d_blocked,
    walk_sigma_blocked,
)

__version__ = "0.1.0"
