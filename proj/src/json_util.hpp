#pragma once

#include <json.hpp>

#include "homemeg/params.hpp"

namespace homemeg::detail {

inline constexpr int kSchemaVersion = 1;

inline nlohmann::json params_json(const HomeMegParams& params) {
    return {
        {"n", params.n},     {"p", params.p},         {"q", params.q},
        {"alpha", params.alpha}, {"gamma", params.gamma},
    };
}

inline nlohmann::json report_skeleton(const HomeMegParams& params) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["params"] = params_json(params);
    return j;
}

}  // namespace homemeg::detail
