"""Certified distance spectral radii, tree packings and P(k, d) checks."""
from ._accel import NUMBA_ENABLED
from .graph import (
    Graph,
    GraphProfile,
    classify,
    construct,
    decode_graph,
    delete_edges,
    disjoint_union,
    encode_graph,
    join,
)
from .spectral import (
    DistanceMatrix,
    SpectralEstimate,
    apsp,
    rayleigh_lower_bound,
    rho_d,
    spectral_edge_bound,
    wiener,
    wiener_degree_bound,
)
from .extremal import ExtremalSpec, build_extremal, check_lemma_bounds, exact_rho_extremal
from .packing import (
    Partition,
    PackingCertificate,
    PCertificate,
    fang_yang_check,
    nu_f_exact,
    partition_ratio,
    residual_max_forest,
    tau_packing,
    verify_P,
)
from .campaign import (
    CampaignConfig,
    check_comb_lemmas,
    enumerate_small_graphs,
    random_graph,
    run_campaign,
)

__version__ = "0.1.0"
