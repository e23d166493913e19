"""paulipack: reorder Pauli Hamiltonians by graph coloring for shallower
Trotter circuits, and measure the downstream effect on QAOA max-cut."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .coloring import (
    CdPath,
    CliquePresentation,
    Fan,
    InteractionGraph,
    build_clique_presentation,
    build_interaction_graph,
    count_colors,
    find_cd_path,
    find_maximal_fan,
    invert_cd_path,
    misra_gries_color,
    parse_graph,
    rotate_fan,
    saturation_color,
    validate_edge_coloring,
    validate_vertex_coloring,
)
from .errors import FormatError, InvariantError, NotIsingError
from .harness import InstanceSpec, bench_depth, bench_qaoa, generate_instance, sample_specs
from .metrics import (
    CutDistribution,
    HypervolumeConfig,
    avg_cut_pareto,
    avg_cut_value,
    hypervolume,
    max_cut_value,
    metrics_summary,
    pareto_set,
    prob_of_max,
)
from .pauli import (
    Hamiltonian,
    IsingHamiltonian,
    PauliString,
    Term,
    commutes,
    overlap,
    parse_hamiltonian,
    parse_pauli_string,
    to_ising,
)
from .qaoa import (
    EnergyTrace,
    OptimizerConfig,
    ae_gain,
    ae_per_edge,
    ansatz_depth,
    maxcut_ising,
    nelder_mead_maximize,
    run_qaoa,
)
from .reorder import Layer, LayeredHamiltonian, reorder_by_edge_coloring, reorder_by_vertex_coloring
from .simulator import (
    MAX_QUBITS,
    NoiseConfig,
    QaoaParams,
    Statevector,
    apply_cost_layer,
    apply_mixer,
    apply_pauli_exp,
    basis_state,
    cut_distribution,
    expectation,
    noisy_expectation,
    prepare_plus_state,
    qaoa_state,
    simulate_sequence,
)
from .trotter import (
    CostModel,
    DepthReport,
    GateSequence,
    LADDER_COST,
    RotationBlock,
    S2_COEFFICIENT,
    UNIT_COST,
    depth_reduction,
    expand_formula,
    reorder_hamiltonian,
    s2_sweep,
    schedule_depth,
    suzuki1,
    suzuki4_single_timestep,
)

__version__ = "0.1.0"
