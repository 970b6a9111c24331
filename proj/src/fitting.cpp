#include "homemeg/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "homemeg/errors.hpp"
#include "homemeg/intercontact.hpp"
#include "json_util.hpp"

namespace homemeg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// log10-parameter box: keeps every candidate strictly inside (0, 1)^4.
constexpr double kLogFloor = -12.0;
constexpr double kLogCeil = -1e-9;

}  // namespace

int CcdfTrace::step_of(std::size_t i) const {
    const double k = std::round(t_seconds[i] / step_seconds);
    return std::max(1, static_cast<int>(k));
}

CcdfTrace parse_trace_csv(const std::string& text) {
    CcdfTrace trace;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            const auto eq = line.find("step_seconds=");
            if (eq != std::string::npos) {
                try {
                    trace.step_seconds = std::stod(line.substr(eq + 13));
                } catch (const std::exception&) {
                    throw TraceError("line " + std::to_string(line_no) +
                                     ": bad step_seconds value");
                }
                if (!(trace.step_seconds > 0.0)) {
                    throw TraceError("line " + std::to_string(line_no) +
                                     ": step_seconds must be positive");
                }
            }
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw TraceError("line " + std::to_string(line_no) + ": expected t,ccdf");
        }
        double t = 0.0, c = 0.0;
        try {
            t = std::stod(line.substr(0, comma));
            c = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            if (trace.t_seconds.empty() && line_no <= 2) continue;  // header row
            throw TraceError("line " + std::to_string(line_no) + ": non-numeric row");
        }
        if (!(t > 0.0)) {
            throw TraceError("line " + std::to_string(line_no) +
                             ": t_seconds must be positive");
        }
        if (!trace.t_seconds.empty() && t <= trace.t_seconds.back()) {
            throw TraceError("line " + std::to_string(line_no) +
                             ": t_seconds must be strictly increasing");
        }
        if (!(c > 0.0 && c <= 1.0)) {
            throw TraceError("line " + std::to_string(line_no) +
                             ": ccdf must be in (0, 1]");
        }
        if (!trace.ccdf.empty() && c > trace.ccdf.back()) {
            throw TraceError("line " + std::to_string(line_no) +
                             ": ccdf must be nonincreasing");
        }
        trace.t_seconds.push_back(t);
        trace.ccdf.push_back(c);
    }
    if (trace.t_seconds.empty()) throw TraceError("trace has no data rows");
    return trace;
}

CcdfTrace load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trace file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    CcdfTrace trace = parse_trace_csv(buf.str());
    trace.name = path;
    return trace;
}

std::vector<double> model_ccdf_at(const HomeMegParams& params, const CcdfTrace& trace) {
    int k_max = 1;
    for (std::size_t i = 0; i < trace.t_seconds.size(); ++i) {
        k_max = std::max(k_max, trace.step_of(i));
    }
    const IcDistribution dist = ic_pmf(params, k_max);
    std::vector<double> out(trace.t_seconds.size());
    for (std::size_t i = 0; i < trace.t_seconds.size(); ++i) {
        out[i] = dist.ccdf[static_cast<std::size_t>(trace.step_of(i))];
    }
    return out;
}

double log_mse(const HomeMegParams& params, const CcdfTrace& trace) {
    const std::vector<double> model = model_ccdf_at(params, trace);
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < model.size(); ++i) {
        if (trace.ccdf[i] <= 0.0) continue;  // nothing to compare in log scale
        if (model[i] <= 0.0) return kInf;
        const double d = std::log10(model[i]) - std::log10(trace.ccdf[i]);
        sum += d * d;
        ++used;
    }
    if (used == 0) return kInf;
    return sum / static_cast<double>(used);
}

namespace {

using LogPoint = std::array<double, 4>;  // log10 of (p, q, alpha, gamma)

LogPoint clamp_point(LogPoint x) {
    for (double& v : x) v = std::clamp(v, kLogFloor, kLogCeil);
    return x;
}

HomeMegParams point_params(const LogPoint& x) {
    return HomeMegParams(0, std::pow(10.0, x[0]), std::pow(10.0, x[1]),
                         std::pow(10.0, x[2]), std::pow(10.0, x[3]));
}

double simplex_diameter(const std::vector<LogPoint>& simplex) {
    double d = 0.0;
    for (std::size_t i = 1; i < simplex.size(); ++i) {
        for (int c = 0; c < 4; ++c) {
            d = std::max(d, std::abs(simplex[i][c] - simplex[0][c]));
        }
    }
    return d;
}

}  // namespace

FitResult fit(const CcdfTrace& trace, const SearchConfig& config) {
    if (trace.t_seconds.size() < 4) {
        throw FitError("fit needs >= 4 trace points, got " +
                       std::to_string(trace.t_seconds.size()));
    }
    if (config.grid_points < 2) throw ParamError("grid_points must be >= 2");

    std::uint64_t evaluations = 0;
    auto objective = [&](const LogPoint& x) {
        ++evaluations;
        return log_mse(point_params(clamp_point(x)), trace);
    };

    // Coarse pass: full 4-d log-uniform grid.
    const int g = config.grid_points;
    std::vector<double> axis(static_cast<std::size_t>(g));
    for (int j = 0; j < g; ++j) {
        axis[static_cast<std::size_t>(j)] =
            config.log10_min +
            (config.log10_max - config.log10_min) * j / (g - 1);
    }
    struct Candidate {
        double value;
        std::size_t order;
        LogPoint x;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(static_cast<std::size_t>(g) * g * g * g);
    for (int ip = 0; ip < g; ++ip) {
        for (int iq = 0; iq < g; ++iq) {
            for (int ia = 0; ia < g; ++ia) {
                for (int ig = 0; ig < g; ++ig) {
                    LogPoint x{axis[ip], axis[iq], axis[ia], axis[ig]};
                    candidates.push_back({objective(x), candidates.size(), x});
                }
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return a.value != b.value ? a.value < b.value : a.order < b.order;
    });
    if (candidates.front().value == kInf) {
        throw FitError("every grid start is infeasible (model ccdf underflows)");
    }

    // Local refinement: Nelder-Mead in log10 space from the best starts.
    const double init_step =
        0.5 * (config.log10_max - config.log10_min) / (g - 1);
    const int starts =
        std::min<int>(config.refine_starts, static_cast<int>(candidates.size()));
    LogPoint best_x = candidates.front().x;
    double best_f = candidates.front().value;
    std::uint64_t iterations = 0;

    for (int s = 0; s < starts; ++s) {
        if (candidates[static_cast<std::size_t>(s)].value == kInf) break;
        std::vector<LogPoint> simplex(5, candidates[static_cast<std::size_t>(s)].x);
        for (int c = 0; c < 4; ++c) simplex[static_cast<std::size_t>(c) + 1][c] += init_step;
        std::vector<double> f(5);
        for (int v = 0; v < 5; ++v) {
            simplex[static_cast<std::size_t>(v)] = clamp_point(simplex[static_cast<std::size_t>(v)]);
            f[static_cast<std::size_t>(v)] = objective(simplex[static_cast<std::size_t>(v)]);
        }

        for (int iter = 0; iter < config.max_iterations; ++iter) {
            // Order vertices best..worst (stable for determinism).
            std::vector<std::size_t> idx{0, 1, 2, 3, 4};
            std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                return f[a] < f[b];
            });
            {
                std::vector<LogPoint> sx(5);
                std::vector<double> sf(5);
                for (int v = 0; v < 5; ++v) {
                    sx[static_cast<std::size_t>(v)] = simplex[idx[static_cast<std::size_t>(v)]];
                    sf[static_cast<std::size_t>(v)] = f[idx[static_cast<std::size_t>(v)]];
                }
                simplex = std::move(sx);
                f = std::move(sf);
            }
            ++iterations;
            if (simplex_diameter(simplex) < config.tolerance) break;

            LogPoint centroid{0, 0, 0, 0};
            for (int v = 0; v < 4; ++v) {
                for (int c = 0; c < 4; ++c) centroid[c] += simplex[static_cast<std::size_t>(v)][c] / 4.0;
            }
            auto blend = [&](double coeff) {
                LogPoint x;
                for (int c = 0; c < 4; ++c) {
                    x[c] = centroid[c] + coeff * (centroid[c] - simplex[4][c]);
                }
                return clamp_point(x);
            };

            const LogPoint xr = blend(1.0);  // reflection
            const double fr = objective(xr);
            if (fr < f[0]) {
                const LogPoint xe = blend(2.0);  // expansion
                const double fe = objective(xe);
                if (fe < fr) {
                    simplex[4] = xe;
                    f[4] = fe;
                } else {
                    simplex[4] = xr;
                    f[4] = fr;
                }
            } else if (fr < f[3]) {
                simplex[4] = xr;
                f[4] = fr;
            } else {
                const bool outside = fr < f[4];
                const LogPoint xc = blend(outside ? 0.5 : -0.5);  // contraction
                const double fc = objective(xc);
                if (fc < std::min(fr, f[4])) {
                    simplex[4] = xc;
                    f[4] = fc;
                } else {
                    for (int v = 1; v < 5; ++v) {  // shrink toward best
                        for (int c = 0; c < 4; ++c) {
                            simplex[static_cast<std::size_t>(v)][c] =
                                simplex[0][c] +
                                0.5 * (simplex[static_cast<std::size_t>(v)][c] - simplex[0][c]);
                        }
                        f[static_cast<std::size_t>(v)] = objective(simplex[static_cast<std::size_t>(v)]);
                    }
                }
            }
        }

        for (int v = 0; v < 5; ++v) {
            if (f[static_cast<std::size_t>(v)] < best_f) {
                best_f = f[static_cast<std::size_t>(v)];
                best_x = simplex[static_cast<std::size_t>(v)];
            }
        }
    }

    FitResult result;
    result.params = point_params(clamp_point(best_x));
    result.objective = best_f;
    result.iterations = iterations;
    result.evaluations = evaluations;
    result.p_h = result.params.p / (result.params.p + result.params.q);
    result.alpha_over_gamma = result.params.alpha / result.params.gamma;
    result.p_plus_q = result.params.p + result.params.q;
    return result;
}

std::string fit_to_json(const FitResult& result, const CcdfTrace& trace) {
    nlohmann::json j = detail::report_skeleton(result.params);
    j["objective"] = result.objective;
    j["iterations"] = result.iterations;
    j["evaluations"] = result.evaluations;
    j["p_H"] = result.p_h;
    j["alpha_over_gamma"] = result.alpha_over_gamma;
    j["p_plus_q"] = result.p_plus_q;
    j["trace"] = {{"name", trace.name},
                  {"points", trace.t_seconds.size()},
                  {"step_seconds", trace.step_seconds}};
    const std::vector<double> model = model_ccdf_at(result.params, trace);
    auto& rows = j["residuals"] = nlohmann::json::array();
    for (std::size_t i = 0; i < model.size(); ++i) {
        rows.push_back({{"t_seconds", trace.t_seconds[i]},
                        {"trace_ccdf", trace.ccdf[i]},
                        {"model_ccdf", model[i]}});
    }
    return j.dump(2);
}

}  // namespace homemeg
