"""Bell-inequality bounds for multi-qudit systems.

Computes three numbers for a Bell inequality: the classical local bound,
the maximum over stabilizer states (via graph-state class enumeration),
and the maximum over all states of the fixed local Hilbert space.  A Bell
value above the stabilizer maximum witnesses non-stabilizerness (magic)
without trusting the devices, up to local unitaries.
"""

from magicwit.algebra import (
    TOL_MAT,
    clock_matrix,
    displacement,
    field_inverse,
    is_hermitian,
    is_prime,
    is_unitary,
    kron,
    shift_matrix,
)
from magicwit.bell import (
    Behavior,
    BellInequality,
    CorrelatorForm,
    behavior_from_state,
    catalog_cglmp,
    catalog_svetlichny_r2,
    catalog_tilted_chsh,
    correlators_from_behavior,
    evaluate,
    fourier_coefficients,
    local_bound,
)
from magicwit.errors import ResourceLimitError
from magicwit.graphs import (
    AdjacencyMatrix,
    ClusterFamily,
    OrbitCatalog,
    cluster_representatives,
    direct_sum,
    enumerate_classes,
    l_move,
    lc_orbit,
    m_move,
)
from magicwit.optimize import (
    OptimizationReport,
    OptimizerConfig,
    ScanRow,
    gap_scan,
    optimize_measurements,
    quantum_value,
    stabilizer_value,
    w_heatmap,
    w_state,
)
from magicwit.states import (
    GraphState,
    StabilizerGenerators,
    assemble_cluster_state,
    build_graph_state,
    build_graph_state_by_gates,
    cp_gate,
    expectation,
    plus_state,
    reduced_purity,
    stabilizer_generators,
)

__version__ = "0.1.0"
