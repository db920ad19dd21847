"""netjack: leave-node-out jackknife variance estimation for graph statistics
under sparse graphon models, with samplers, fast count functionals, a
subsampling baseline, CI-based two-sample comparison, and a Monte Carlo
ratio-experiment harness."""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DataError,
    DegenerateGraphError,
    NetjackError,
    NumericalError,
    UndefinedStatisticError,
)
from .functionals import (
    LooVector,
    Statistic,
    edge_density,
    loo_vector,
    normalized_transitivity,
    parse_statistic,
    pattern_count_P,
    pattern_count_Q,
    plug_in_rho,
    statistic_value,
    top_eigenvalues,
    triangle_density,
    two_star_density,
)
from .graph import (
    Graph,
    NodeSubset,
    common_neighbor_count,
    induced_subgraph,
    leave_one_out,
    load_edge_list,
    relabel,
    write_edge_list,
)
from .inference import (
    ComparisonVerdict,
    ConfidenceInterval,
    chebyshev_ci,
    normal_ci,
    split_train_test,
    two_sample_compare,
)
from .models import (
    GraphonModel,
    SampledGraph,
    absdiff_model,
    kernel_model,
    benchmark_sbm_model,
    replicate_seed,
    rho_n,
    sample_graph,
    sbm_model,
)
from .patterns import Pattern, parse_pattern
from .resampling import (
    EfronSteinReport,
    JackknifeEstimate,
    SubsampleEstimate,
    efron_stein_check,
    jackknife,
    jackknife_alternative,
    subsample_variance,
)
from .experiments import (
    ExperimentConfig,
    MethodSpec,
    RatioReport,
    RatioRow,
    emit_report,
    model_from_spec,
    parse_config,
    run_ratio_experiment,
    run_timing_benchmark,
)
