#include "homemeg/params.hpp"

#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "homemeg/errors.hpp"

namespace homemeg {

namespace {

const std::map<std::string, HomeMegParams, std::less<>>& preset_table() {
    // Published best-fit values for the six reference traces.
    static const std::map<std::string, HomeMegParams, std::less<>> table = {
        {"mit-cell", HomeMegParams(0, 7.5e-5, 3.3e-3, 1.8e-1, 7.8e-3)},
        {"mit-bt", HomeMegParams(0, 4.5e-5, 1.5e-4, 1.2e-3, 8.6e-7)},
        {"infocom06", HomeMegParams(0, 3e-3, 2.5e-2, 7e-2, 3e-4)},
        {"vehicular", HomeMegParams(0, 4.1e-4, 7.9e-3, 2.1e-2, 7.7e-5)},
        {"ucsd", HomeMegParams(0, 1.1e-4, 1.3e-2, 1.0e-1, 1e-5)},
        {"cambridge", HomeMegParams(0, 2.5e-4, 8.3e-3, 4.7e-2, 4.6e-4)},
    };
    return table;
}

}  // namespace

HomeMegParams preset_params(std::string_view name, int n) {
    const auto& table = preset_table();
    auto it = table.find(name);
    if (it == table.end()) {
        std::string known;
        for (const auto& [k, v] : table) {
            if (!known.empty()) known += ", ";
            known += k;
        }
        throw ParamError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
    }
    return it->second.with_n(n);
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [k, v] : preset_table()) names.push_back(k);
    return names;
}

HomeMegParams corollary_params(int n, double eps) {
    if (n < 2) throw ParamError("corollary regime needs n >= 2");
    if (!(eps > 0.0 && eps < 1.0))
        throw ParamError("corollary regime needs eps in (0, 1)");
    const double nd = static_cast<double>(n);
    return HomeMegParams(n,
                         std::pow(nd, -(1.0 + eps)),  // p
                         1.0 / nd,                    // q
                         std::pow(nd, eps) / nd,      // alpha
                         1.0 / (nd * nd));            // gamma
}

}  // namespace homemeg
