#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homemeg/bounds.hpp"
#include "homemeg/coupling.hpp"
#include "homemeg/errors.hpp"
#include "homemeg/fitting.hpp"
#include "homemeg/flooding.hpp"
#include "homemeg/intercontact.hpp"
#include "homemeg/meg.hpp"
#include "homemeg/params.hpp"
#include "homemeg/rng.hpp"
#include "homemeg/verify.hpp"

namespace py = pybind11;
using namespace homemeg;

namespace {

std::vector<std::string> snapshot_state_names(const GraphSnapshot& snap) {
    std::vector<std::string> out;
    out.reserve(snap.states.size());
    for (EdgeState s : snap.states) out.emplace_back(to_string(s));
    return out;
}

}  // namespace

PYBIND11_MODULE(_homemeg, m) {
    m.doc() = "Home-MEG edge-Markov evolving graph toolkit";

    py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);
    py::register_exception<CouplingError>(m, "CouplingError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<LambdaUndefinedError>(m, "LambdaUndefinedError", PyExc_ValueError);
    py::register_exception<NoContactsError>(m, "NoContactsError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
    py::register_exception<TraceError>(m, "TraceError", PyExc_ValueError);
    py::register_exception<FitError>(m, "FitError", PyExc_RuntimeError);
    py::register_exception<InsufficientDataError>(m, "InsufficientDataError",
                                                  PyExc_RuntimeError);

    py::class_<HomeMegParams>(m, "Params")
        .def(py::init<int, double, double, double, double>(), py::arg("n"),
             py::arg("p"), py::arg("q"), py::arg("alpha"), py::arg("gamma"))
        .def_readonly("n", &HomeMegParams::n)
        .def_readonly("p", &HomeMegParams::p)
        .def_readonly("q", &HomeMegParams::q)
        .def_readonly("alpha", &HomeMegParams::alpha)
        .def_readonly("gamma", &HomeMegParams::gamma)
        .def("with_n", &HomeMegParams::with_n, py::arg("n"))
        .def("__repr__", [](const HomeMegParams& p) {
            return "Params(n=" + std::to_string(p.n) + ", p=" + std::to_string(p.p) +
                   ", q=" + std::to_string(p.q) + ", alpha=" + std::to_string(p.alpha) +
                   ", gamma=" + std::to_string(p.gamma) + ")";
        });

    m.def("preset", &preset_params, py::arg("name"), py::arg("n") = 0,
          "best-fit parameters for a bundled trace preset");
    m.def("preset_names", &preset_names);
    m.def("corollary_params", &corollary_params, py::arg("n"), py::arg("eps"));

    m.def("p_hat", &p_hat, py::arg("params"));
    m.def("q_hat", &q_hat, py::arg("params"));

    py::class_<StationaryDist>(m, "StationaryDist")
        .def_readonly("hc", &StationaryDist::pi_hc)
        .def_readonly("hd", &StationaryDist::pi_hd)
        .def_readonly("nc", &StationaryDist::pi_nc)
        .def_readonly("nd", &StationaryDist::pi_nd)
        .def("as_list",
             [](const StationaryDist& d) {
                 const auto a = d.as_array();
                 return std::vector<double>(a.begin(), a.end());
             })
        .def_property_readonly("home", &StationaryDist::home)
        .def_property_readonly("connected", &StationaryDist::connected);
    m.def("stationary", &stationary, py::arg("params"));

    m.def(
        "transition_row",
        [](const HomeMegParams& params, const std::string& from) {
            const auto row = transition_row(params, edge_state_from_string(from));
            return std::vector<double>(row.begin(), row.end());
        },
        py::arg("params"), py::arg("from_state"),
        "transition probabilities to [HC, HD, NC, ND]");

    m.def(
        "evolve_states",
        [](const HomeMegParams& params, const std::vector<std::string>& states,
           std::uint64_t t, std::uint64_t seed) {
            GraphSnapshot snap;
            snap.n = params.n;
            snap.t = t;
            for (const std::string& s : states) {
                snap.states.push_back(edge_state_from_string(s));
            }
            if (snap.states.size() != edge_count(params.n)) {
                throw ShapeError("need n(n-1)/2 states");
            }
            evolve_in_place(snap, params, EdgeUniforms(derive_key(seed, 0)));
            return snapshot_state_names(snap);
        },
        py::arg("params"), py::arg("states"), py::arg("t"), py::arg("seed"),
        "advance every edge one step");

    py::class_<IcDistribution>(m, "IcDistribution")
        .def_readonly("pmf", &IcDistribution::pmf)
        .def_readonly("ccdf", &IcDistribution::ccdf)
        .def_readonly("tail_mass", &IcDistribution::tail_mass)
        .def_readonly("k_max", &IcDistribution::k_max);
    m.def("ic_pmf", &ic_pmf, py::arg("params"), py::arg("k_max"),
          py::arg("tail_stop") = 0.0);
    m.def(
        "empirical_ic",
        [](const HomeMegParams& params, std::uint64_t steps, int n_edges, int k_max,
           std::uint64_t seed) {
            return empirical_ic(params, steps, n_edges, k_max,
                                EdgeUniforms(derive_key(seed, 0x4943ULL)));
        },
        py::arg("params"), py::arg("steps"), py::arg("edges"), py::arg("k_max"),
        py::arg("seed"));
    m.def("tv_distance", &tv_distance, py::arg("a"), py::arg("b"));
    py::class_<ContactCondProbs>(m, "ContactCondProbs")
        .def_readonly("p_h_given_contact", &ContactCondProbs::p_h_given_contact)
        .def_readonly("p_nh_given_contact", &ContactCondProbs::p_nh_given_contact);
    m.def("contact_cond_probs", &contact_cond_probs, py::arg("params"));

    py::class_<FloodRun>(m, "FloodRun")
        .def_readonly("source", &FloodRun::source)
        .def_readonly("horizon", &FloodRun::horizon)
        .def_readonly("informed_sizes", &FloodRun::informed_sizes)
        .def_property_readonly("completion_time",
                               [](const FloodRun& r) -> std::optional<std::uint64_t> {
                                   return r.completion_time;
                               })
        .def_property_readonly("completed", &FloodRun::completed);
    m.def(
        "run_flooding",
        [](const HomeMegParams& params, int source, std::uint64_t seed,
           std::uint64_t horizon) {
            return run_flooding(params, source, EdgeUniforms(derive_key(seed, 0)),
                                horizon);
        },
        py::arg("params"), py::arg("source"), py::arg("seed"), py::arg("horizon") = 0);

    py::class_<FloodSummary>(m, "FloodSummary")
        .def_readonly("trials", &FloodSummary::trials)
        .def_readonly("completed", &FloodSummary::completed)
        .def_readonly("mean", &FloodSummary::mean)
        .def_readonly("stddev", &FloodSummary::stddev)
        .def_readonly("min", &FloodSummary::min)
        .def_readonly("max", &FloodSummary::max)
        .def_readonly("median", &FloodSummary::median)
        .def_readonly("p95", &FloodSummary::p95);
    py::class_<FloodStats>(m, "FloodStats")
        .def_readonly("n", &FloodStats::n)
        .def_readonly("sources", &FloodStats::sources)
        .def_readonly("horizon", &FloodStats::horizon)
        .def_readonly("per_source", &FloodStats::per_source)
        .def_readonly("overall", &FloodStats::overall);
    m.def("flooding_time_estimate", &flooding_time_estimate, py::arg("params"),
          py::arg("sources"), py::arg("trials_per_source"), py::arg("seed"),
          py::arg("horizon") = 0);
    m.def("default_horizon", &default_horizon, py::arg("params"));

    py::class_<CoupledFloodRun>(m, "CoupledFloodRun")
        .def_readonly("er_q", &CoupledFloodRun::er_q)
        .def_readonly("meg", &CoupledFloodRun::meg)
        .def_readonly("er_p", &CoupledFloodRun::er_p)
        .def_readonly("sandwich_ok", &CoupledFloodRun::sandwich_ok);
    m.def(
        "coupled_flooding",
        [](const HomeMegParams& params, int source, std::uint64_t seed,
           std::uint64_t horizon) {
            return coupled_flooding(params, source, EdgeUniforms(derive_key(seed, 0)),
                                    horizon);
        },
        py::arg("params"), py::arg("source"), py::arg("seed"), py::arg("horizon") = 0);

    py::class_<BoundReport>(m, "BoundReport")
        .def_readonly("n", &BoundReport::n)
        .def_readonly("p_hat", &BoundReport::p_hat)
        .def_readonly("q_hat", &BoundReport::q_hat)
        .def_readonly("lambda_", &BoundReport::lambda)
        .def_readonly("thm1_upper_arg", &BoundReport::thm1_upper_arg)
        .def_readonly("thm1_lower_arg", &BoundReport::thm1_lower_arg)
        .def_readonly("thm2_arg", &BoundReport::thm2_arg)
        .def_readonly("thm2_applicable", &BoundReport::thm2_applicable)
        .def_readonly("corollary_regime", &BoundReport::corollary_regime)
        .def_readonly("corollary_eps", &BoundReport::corollary_eps);
    m.def("bound_report", &bound_report, py::arg("params"));
    m.def("lambda_value", &lambda_value, py::arg("params"));

    py::class_<Phase>(m, "Phase")
        .def_readonly("tau", &Phase::tau)
        .def_readonly("start", &Phase::start)
        .def_readonly("length", &Phase::length)
        .def_readonly("informed_target", &Phase::informed_target);
    py::class_<PhaseSchedule>(m, "PhaseSchedule")
        .def_readonly("n", &PhaseSchedule::n)
        .def_readonly("k_growth", &PhaseSchedule::k_growth)
        .def_readonly("phases", &PhaseSchedule::phases)
        .def_readonly("total_steps", &PhaseSchedule::total_steps);
    m.def("phase_schedule", &phase_schedule, py::arg("params"));

    m.def("disconnection_bound", &disconnection_bound, py::arg("lambda_step"),
          py::arg("delta_step"), py::arg("pi_a_disc"), py::arg("pi_a"), py::arg("len"));
    m.def("home_disconnection_bound", &home_disconnection_bound, py::arg("params"),
          py::arg("len"));
    m.def("connection_lower_bound", &connection_lower_bound, py::arg("params"),
          py::arg("len"));
    m.def("connection_cap", &connection_cap, py::arg("params"));

    py::class_<CompletionDistribution>(m, "CompletionDistribution")
        .def_readonly("n", &CompletionDistribution::n)
        .def_readonly("horizon", &CompletionDistribution::horizon)
        .def_readonly("pmf", &CompletionDistribution::pmf)
        .def_readonly("censored", &CompletionDistribution::censored)
        .def_readonly("mean_given_complete",
                      &CompletionDistribution::mean_given_complete);
    m.def("exact_flooding_distribution", &exact_flooding_distribution,
          py::arg("params"), py::arg("source"), py::arg("horizon"));

    py::class_<CcdfTrace>(m, "CcdfTrace")
        .def(py::init([](std::vector<double> t_seconds, std::vector<double> ccdf,
                         double step_seconds, std::string name) {
                 CcdfTrace trace;
                 trace.t_seconds = std::move(t_seconds);
                 trace.ccdf = std::move(ccdf);
                 trace.step_seconds = step_seconds;
                 trace.name = std::move(name);
                 if (trace.t_seconds.size() != trace.ccdf.size()) {
                     throw TraceError("t_seconds and ccdf lengths differ");
                 }
                 return trace;
             }),
             py::arg("t_seconds"), py::arg("ccdf"), py::arg("step_seconds") = 86.4,
             py::arg("name") = "")
        .def_readonly("t_seconds", &CcdfTrace::t_seconds)
        .def_readonly("ccdf", &CcdfTrace::ccdf)
        .def_readonly("step_seconds", &CcdfTrace::step_seconds)
        .def_readonly("name", &CcdfTrace::name);
    m.def("load_trace", &load_trace, py::arg("path"));
    m.def("log_mse", &log_mse, py::arg("params"), py::arg("trace"));
    m.def("model_ccdf_at", &model_ccdf_at, py::arg("params"), py::arg("trace"));

    py::class_<SearchConfig>(m, "SearchConfig")
        .def(py::init<>())
        .def_readwrite("grid_points", &SearchConfig::grid_points)
        .def_readwrite("log10_min", &SearchConfig::log10_min)
        .def_readwrite("log10_max", &SearchConfig::log10_max)
        .def_readwrite("refine_starts", &SearchConfig::refine_starts)
        .def_readwrite("max_iterations", &SearchConfig::max_iterations)
        .def_readwrite("tolerance", &SearchConfig::tolerance)
        .def_readwrite("seed", &SearchConfig::seed);
    py::class_<FitResult>(m, "FitResult")
        .def_readonly("params", &FitResult::params)
        .def_readonly("objective", &FitResult::objective)
        .def_readonly("iterations", &FitResult::iterations)
        .def_readonly("evaluations", &FitResult::evaluations)
        .def_readonly("p_h", &FitResult::p_h)
        .def_readonly("alpha_over_gamma", &FitResult::alpha_over_gamma)
        .def_readonly("p_plus_q", &FitResult::p_plus_q);
    m.def("fit", &fit, py::arg("trace"), py::arg("config") = SearchConfig());

    py::class_<VerifyResult>(m, "VerifyResult")
        .def_readonly("check", &VerifyResult::check)
        .def_readonly("passed", &VerifyResult::passed)
        .def_readonly("details", &VerifyResult::details);
    m.def("verify_lemma1", &verify_lemma1, py::arg("params"), py::arg("max_len"),
          py::arg("trials"), py::arg("seed"));
    m.def("verify_lambda_lb", &verify_lambda_lb, py::arg("params"), py::arg("trials"),
          py::arg("seed"));
    m.def("verify_coupling", &verify_coupling, py::arg("params"), py::arg("source"),
          py::arg("trials"), py::arg("seed"), py::arg("horizon") = 0);
    m.def("verify_oracle", &verify_oracle, py::arg("params"), py::arg("trials"),
          py::arg("seed"), py::arg("tv_tol") = 0.01);
}
