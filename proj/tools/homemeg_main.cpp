#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

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

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

using nlohmann::json;

// Parameter sources shared by every subcommand; explicit values override a
// preset or corollary-regime base.
struct ParamOpts {
    std::string preset;
    double corollary_eps = -1.0;
    double p = -1.0, q = -1.0, alpha = -1.0, gamma = -1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--preset", preset,
                        "named parameter preset (" + preset_list() + ")");
        cmd->add_option("--corollary-eps", corollary_eps,
                        "sparse-regime eps: p=n^-(1+eps), q=1/n, alpha=n^eps/n, gamma=1/n^2")
            ->check(CLI::Range(1e-9, 1.0 - 1e-9));
        cmd->add_option("--p", p, "Non-Home -> Home transition probability")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--q", q, "Home -> Non-Home transition probability")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--alpha", alpha, "contact probability in Home")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--gamma", gamma, "contact probability in Non-Home")
            ->check(CLI::Range(0.0, 1.0));
    }

    static std::string preset_list() {
        std::string out;
        for (const std::string& name : homemeg::preset_names()) {
            if (!out.empty()) out += ", ";
            out += name;
        }
        return out;
    }

    bool any_explicit() const {
        return p >= 0.0 || q >= 0.0 || alpha >= 0.0 || gamma >= 0.0;
    }

    homemeg::HomeMegParams resolve(int n) const {
        std::optional<homemeg::HomeMegParams> base;
        if (!preset.empty()) {
            base = homemeg::preset_params(preset, n);
        } else if (corollary_eps >= 0.0) {
            base = homemeg::corollary_params(n, corollary_eps);
        }
        double rp = base ? base->p : 0.0;
        double rq = base ? base->q : 0.0;
        double ra = base ? base->alpha : 0.0;
        double rg = base ? base->gamma : 0.0;
        if (!base && !any_explicit()) {
            throw homemeg::ParamError(
                "no parameters given: use --preset, --corollary-eps, or --p/--q/--alpha/--gamma");
        }
        if (p >= 0.0) rp = p;
        if (q >= 0.0) rq = q;
        if (alpha >= 0.0) ra = alpha;
        if (gamma >= 0.0) rg = gamma;
        return homemeg::HomeMegParams(n, rp, rq, ra, rg);
    }
};

std::uint64_t resolve_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("HOMEMEG_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw homemeg::ParamError(std::string("HOMEMEG_SEED is not an integer: ") + env);
        }
    }
    return cli_seed;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw homemeg::IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw homemeg::IoError("write failed: " + path);
}

json config_json(const homemeg::HomeMegParams& params, std::uint64_t seed) {
    return {{"n", params.n},         {"p", params.p},
            {"q", params.q},         {"alpha", params.alpha},
            {"gamma", params.gamma}, {"seed", seed}};
}

// BoundReport as a JSON fragment; degenerate parameters yield an explanation
// instead of numbers.
json bound_json(const homemeg::HomeMegParams& params) {
    try {
        const homemeg::BoundReport r = homemeg::bound_report(params);
        json j{{"n", r.n},
               {"p_hat", r.p_hat},
               {"q_hat", r.q_hat},
               {"lambda", r.lambda},
               {"thm1_upper_arg", r.thm1_upper_arg},
               {"thm1_lower_arg", r.thm1_lower_arg},
               {"thm2_arg", r.thm2_arg},
               {"thm2_applicable", r.thm2_applicable},
               {"corollary_regime", r.corollary_regime}};
        if (r.corollary_regime) j["corollary_eps"] = r.corollary_eps;
        return j;
    } catch (const std::exception& e) {
        return {{"unavailable", e.what()}};
    }
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw homemeg::ParamError("bad " + what + " value: '" + item + "'");
        }
    }
    if (out.empty()) throw homemeg::ParamError(what + " list is empty");
    return out;
}

struct FloodArgs {
    ParamOpts params;
    std::string n_list = "16";
    std::uint64_t trials = 100;
    std::uint64_t horizon = 0;
    std::uint64_t seed = 1;
    int source = 0;
    bool all_sources = false;
    std::string sources_list;
    std::string out_csv, out_json;
};

int cmd_flood(const FloodArgs& args) {
    const std::uint64_t seed = resolve_seed(args.seed);
    json report{{"schema_version", 1}, {"command", "flood"}};
    json results = json::array();
    std::ostringstream csv;
    csv << "n,source,trial,completion_time,censored\n";

    for (int n : parse_int_list(args.n_list, "--n")) {
        const homemeg::HomeMegParams params = args.params.resolve(n);
        std::vector<int> sources;
        if (!args.sources_list.empty()) {
            sources = parse_int_list(args.sources_list, "--sources");
        } else if (!args.all_sources) {
            sources = {args.source};
        }
        const homemeg::FloodStats stats = homemeg::flooding_time_estimate(
            params, sources, args.trials, seed, args.horizon);
        for (const homemeg::FloodTrial& row : stats.trials) {
            csv << n << ',' << row.source << ',' << row.trial << ',' << row.time << ','
                << (row.censored ? 1 : 0) << '\n';
        }
        json entry = json::parse(homemeg::flood_stats_to_json(stats, params));
        entry["config"] = config_json(params, seed);
        entry["bounds"] = bound_json(params);
        results.push_back(std::move(entry));
    }
    report["results"] = std::move(results);

    if (!args.out_csv.empty()) write_file(args.out_csv, csv.str());
    if (!args.out_json.empty()) write_file(args.out_json, report.dump(2) + "\n");
    std::cout << report.dump(2) << '\n';
    return kExitOk;
}

struct IcArgs {
    ParamOpts params;
    int k_max = 100000;
    double tail_stop = 1e-9;
    bool empirical = false;
    double steps = 1e7;
    int edges = 1;
    std::uint64_t seed = 1;
    std::string out_csv, out_empirical_csv, out_json;
};

int cmd_ic(const IcArgs& args) {
    const std::uint64_t seed = resolve_seed(args.seed);
    const homemeg::HomeMegParams params = args.params.resolve(0);
    const homemeg::IcDistribution analytic =
        homemeg::ic_pmf(params, args.k_max, args.tail_stop);
    const homemeg::ContactCondProbs cond = homemeg::contact_cond_probs(params);

    json report = json::parse(homemeg::ic_to_json(analytic, params));
    report["command"] = "ic";
    report["config"] = config_json(params, seed);
    report["p_h_given_contact"] = cond.p_h_given_contact;
    report["p_nh_given_contact"] = cond.p_nh_given_contact;
    // The full pmf/ccdf arrays go to the CSV; keep the JSON summary small.
    report.erase("pmf");
    report.erase("ccdf");

    if (!args.out_csv.empty()) write_file(args.out_csv, homemeg::ic_to_csv(analytic));

    if (args.empirical) {
        const homemeg::EdgeUniforms rng(homemeg::derive_key(seed, 0x4943454dULL));
        const homemeg::IcDistribution empirical = homemeg::empirical_ic(
            params, static_cast<std::uint64_t>(args.steps), args.edges,
            analytic.k_max, rng);
        report["empirical_steps"] = static_cast<std::uint64_t>(args.steps);
        report["empirical_edges"] = args.edges;
        report["tv_distance"] = homemeg::tv_distance(analytic, empirical);
        if (!args.out_empirical_csv.empty()) {
            write_file(args.out_empirical_csv, homemeg::ic_to_csv(empirical));
        }
    }
    if (!args.out_json.empty()) write_file(args.out_json, report.dump(2) + "\n");
    std::cout << report.dump(2) << '\n';
    return kExitOk;
}

struct FitArgs {
    std::string trace_path;
    std::string out_json;
    homemeg::SearchConfig search;
    std::uint64_t seed = 0;
};

int cmd_fit(const FitArgs& args) {
    homemeg::SearchConfig search = args.search;
    search.seed = resolve_seed(args.seed);
    const homemeg::CcdfTrace trace = homemeg::load_trace(args.trace_path);
    const homemeg::FitResult result = homemeg::fit(trace, search);
    json report = json::parse(homemeg::fit_to_json(result, trace));
    report["command"] = "fit";
    report["config"] = {{"trace", args.trace_path},
                        {"grid_points", search.grid_points},
                        {"refine_starts", search.refine_starts},
                        {"max_iterations", search.max_iterations},
                        {"tolerance", search.tolerance},
                        {"seed", search.seed}};
    if (!args.out_json.empty()) write_file(args.out_json, report.dump(2) + "\n");
    std::cout << report.dump(2) << '\n';
    return kExitOk;
}

struct BoundsArgs {
    ParamOpts params;
    int n = 2;
    std::uint64_t seed = 0;
};

int cmd_bounds(const BoundsArgs& args) {
    const homemeg::HomeMegParams params = args.params.resolve(args.n);
    json report = json::parse(homemeg::bounds_to_json(params));
    report["command"] = "bounds";
    report["config"] = config_json(params, resolve_seed(args.seed));
    std::cout << report.dump(2) << '\n';
    return kExitOk;
}

struct VerifyArgs {
    ParamOpts params;
    std::string check;
    int n = 0;  // 0 = per-check default
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    std::uint64_t horizon = 0;
    int max_len = 20;
    int source = 0;
    double tv_tol = 0.01;
    std::string out_json;
};

int cmd_verify(const VerifyArgs& args) {
    const std::uint64_t seed = resolve_seed(args.seed);
    int n = args.n;
    if (n == 0) n = args.check == "oracle" ? 3 : 16;

    ParamOpts popts = args.params;
    if (popts.preset.empty() && popts.corollary_eps < 0.0 && !popts.any_explicit()) {
        // Well-mixing default so bare `verify --check ...` exercises the suite.
        popts.p = 0.1;
        popts.q = 0.1;
        popts.alpha = 0.5;
        popts.gamma = 0.05;
    }
    const homemeg::HomeMegParams params = popts.resolve(n);

    homemeg::VerifyResult result;
    if (args.check == "lemma1") {
        const std::uint64_t trials = args.trials ? args.trials : 1000000;
        result = homemeg::verify_lemma1(params, args.max_len, trials, seed);
    } else if (args.check == "lambda-lb") {
        const std::uint64_t trials = args.trials ? args.trials : 1000000;
        result = homemeg::verify_lambda_lb(params, trials, seed);
    } else if (args.check == "coupling") {
        const std::uint64_t trials = args.trials ? args.trials : 100;
        result = homemeg::verify_coupling(params, args.source, trials, seed, args.horizon);
    } else if (args.check == "oracle") {
        const std::uint64_t trials = args.trials ? args.trials : 100000;
        result = homemeg::verify_oracle(params, trials, seed, args.tv_tol);
    } else {
        throw homemeg::ParamError("unknown check '" + args.check +
                                  "' (known: lemma1, lambda-lb, coupling, oracle)");
    }

    json report = json::parse(homemeg::verify_to_json(result, params));
    report["command"] = "verify";
    report["config"] = config_json(params, seed);
    if (!args.out_json.empty()) write_file(args.out_json, report.dump(2) + "\n");
    std::cout << report.dump(2) << '\n';
    return result.passed ? kExitOk : kExitVerifyFail;
}

struct CoupleArgs {
    ParamOpts params;
    int n = 16;
    std::uint64_t trials = 100;
    std::uint64_t seed = 1;
    std::uint64_t horizon = 0;
    int source = 0;
    std::string out_csv, out_json;
};

int cmd_couple(const CoupleArgs& args) {
    const std::uint64_t seed = resolve_seed(args.seed);
    const homemeg::HomeMegParams params = args.params.resolve(args.n);

    std::vector<homemeg::CoupledFloodRun> runs;
    std::ostringstream csv;
    csv << "trial,t_p,t_h,t_q,censored_p,censored_h,censored_q,sandwich_ok\n";
    std::uint64_t violations = 0;
    for (std::uint64_t trial = 0; trial < args.trials; ++trial) {
        const homemeg::EdgeUniforms rng(homemeg::derive_key(seed, trial));
        homemeg::CoupledFloodRun run =
            homemeg::coupled_flooding(params, args.source, rng, args.horizon);
        if (!run.sandwich_ok) ++violations;
        auto cell = [](const homemeg::FloodRun& r) {
            return r.completed() ? std::to_string(*r.completion_time) : std::string("-1");
        };
        csv << trial << ',' << cell(run.er_p) << ',' << cell(run.meg) << ','
            << cell(run.er_q) << ',' << (run.er_p.completed() ? 0 : 1) << ','
            << (run.meg.completed() ? 0 : 1) << ',' << (run.er_q.completed() ? 0 : 1)
            << ',' << (run.sandwich_ok ? 1 : 0) << '\n';
        runs.push_back(std::move(run));
    }
    json report = json::parse(homemeg::coupled_trials_to_json(params, runs, seed));
    report["command"] = "couple";
    report["config"] = config_json(params, seed);

    if (!args.out_csv.empty()) write_file(args.out_csv, csv.str());
    if (!args.out_json.empty()) write_file(args.out_json, report.dump(2) + "\n");
    std::cout << report.dump(2) << '\n';
    return violations == 0 ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Home-MEG simulation and analysis toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; command-line flags win");
    app.allow_config_extras(CLI::config_extras_mode::ignore_all);

    FloodArgs flood_args;
    CLI::App* flood = app.add_subcommand("flood", "simulate flooding and summarize completion times");
    flood_args.params.attach(flood);
    flood->add_option("--n", flood_args.n_list, "node count, or comma list for a sweep");
    flood->add_option("--trials", flood_args.trials, "trials per source");
    flood->add_option("--horizon", flood_args.horizon, "censoring horizon (0 = auto)");
    flood->add_option("--seed", flood_args.seed, "master seed");
    flood->add_option("--source", flood_args.source, "source node");
    flood->add_flag("--all-sources", flood_args.all_sources, "sweep every source");
    flood->add_option("--sources", flood_args.sources_list, "comma list of sources");
    flood->add_option("--out-csv", flood_args.out_csv, "per-trial CSV path");
    flood->add_option("--out-json", flood_args.out_json, "JSON summary path");

    IcArgs ic_args;
    CLI::App* ic = app.add_subcommand("ic", "inter-contact-time distribution (analytic and empirical)");
    ic_args.params.attach(ic);
    ic->add_option("--kmax", ic_args.k_max, "largest inter-contact time tabulated")
        ->check(CLI::PositiveNumber);
    ic->add_option("--tail-stop", ic_args.tail_stop, "stop once tail mass drops below this");
    ic->add_flag("--empirical", ic_args.empirical, "also simulate and report TV distance");
    ic->add_option("--steps", ic_args.steps, "simulated steps per edge (empirical mode)");
    ic->add_option("--edges", ic_args.edges, "independent edges pooled (empirical mode)");
    ic->add_option("--seed", ic_args.seed, "master seed");
    ic->add_option("--out-csv", ic_args.out_csv, "analytic distribution CSV path");
    ic->add_option("--out-empirical-csv", ic_args.out_empirical_csv, "empirical CSV path");
    ic->add_option("--out-json", ic_args.out_json, "JSON summary path");

    FitArgs fit_args;
    CLI::App* fit = app.add_subcommand("fit", "fit model parameters to a CCDF trace");
    fit->add_option("--trace", fit_args.trace_path, "CSV trace: t_seconds,ccdf")->required();
    fit->add_option("--out", fit_args.out_json, "result JSON path");
    fit->add_option("--grid-points", fit_args.search.grid_points, "grid points per axis");
    fit->add_option("--refine-starts", fit_args.search.refine_starts, "starts refined by simplex");
    fit->add_option("--max-iterations", fit_args.search.max_iterations, "simplex iterations per start");
    fit->add_option("--tolerance", fit_args.search.tolerance, "simplex diameter stop");
    fit->add_option("--seed", fit_args.seed, "recorded in output (search is deterministic)");

    BoundsArgs bounds_args;
    CLI::App* bounds = app.add_subcommand("bounds", "theoretical bound arguments and phase schedule");
    bounds_args.params.attach(bounds);
    bounds->add_option("--n", bounds_args.n, "node count")->check(CLI::Range(2, 1 << 30));
    bounds->add_option("--seed", bounds_args.seed, "recorded in output");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "check model predictions against simulation");
    verify_args.params.attach(verify);
    verify->add_option("--check", verify_args.check, "lemma1 | lambda-lb | coupling | oracle")
        ->required();
    verify->add_option("--n", verify_args.n, "node count (default: 16, oracle: 3)");
    verify->add_option("--trials", verify_args.trials, "trials (0 = per-check default)");
    verify->add_option("--seed", verify_args.seed, "master seed");
    verify->add_option("--horizon", verify_args.horizon, "censoring horizon (0 = auto)");
    verify->add_option("--max-len", verify_args.max_len, "largest window length (lemma1)");
    verify->add_option("--source", verify_args.source, "source node (coupling)");
    verify->add_option("--tv-tol", verify_args.tv_tol, "TV tolerance (oracle)");
    verify->add_option("--out-json", verify_args.out_json, "JSON report path");

    CoupleArgs couple_args;
    CLI::App* couple = app.add_subcommand("couple", "coupled G^p / H / G^q flooding trials");
    couple_args.params.attach(couple);
    couple->add_option("--n", couple_args.n, "node count");
    couple->add_option("--trials", couple_args.trials, "coupled trials");
    couple->add_option("--seed", couple_args.seed, "master seed");
    couple->add_option("--horizon", couple_args.horizon, "censoring horizon (0 = auto)");
    couple->add_option("--source", couple_args.source, "source node");
    couple->add_option("--out-csv", couple_args.out_csv, "per-trial triple CSV path");
    couple->add_option("--out-json", couple_args.out_json, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (flood->parsed()) return cmd_flood(flood_args);
        if (ic->parsed()) return cmd_ic(ic_args);
        if (fit->parsed()) return cmd_fit(fit_args);
        if (bounds->parsed()) return cmd_bounds(bounds_args);
        if (verify->parsed()) return cmd_verify(verify_args);
        if (couple->parsed()) return cmd_couple(couple_args);
    } catch (const homemeg::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
