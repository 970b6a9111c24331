"""Home-MEG evolving-graph toolkit: per-edge 4-state Markov chains, flooding
simulation, inter-contact-time analysis, parameter fitting, and theoretical
bound checks."""

from ._homemeg import (
    BoundReport,
    CcdfTrace,
    CompletionDistribution,
    ContactCondProbs,
    CoupledFloodRun,
    FitResult,
    FloodRun,
    FloodStats,
    FloodSummary,
    IcDistribution,
    Params,
    Phase,
    PhaseSchedule,
    SearchConfig,
    StationaryDist,
    VerifyResult,
    bound_report,
    connection_cap,
    connection_lower_bound,
    contact_cond_probs,
    corollary_params,
    coupled_flooding,
    default_horizon,
    disconnection_bound,
    empirical_ic,
    evolve_states,
    exact_flooding_distribution,
    fit,
    flooding_time_estimate,
    home_disconnection_bound,
    ic_pmf,
    lambda_value,
    load_trace,
    log_mse,
    model_ccdf_at,
    p_hat,
    phase_schedule,
    preset,
    preset_names,
    q_hat,
    run_flooding,
    stationary,
    transition_row,
    tv_distance,
    verify_coupling,
    verify_lambda_lb,
    verify_lemma1,
    verify_oracle,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "1.0.0"
