#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "homemeg/errors.hpp"

namespace homemeg {

// Per-edge chain state: Home/Non-Home location x Connected/Disconnected.
// The numeric order matches the transition-matrix row order.
enum class EdgeState : std::uint8_t { HC = 0, HD = 1, NC = 2, ND = 3 };

inline constexpr std::array<EdgeState, 4> kEdgeStates{EdgeState::HC, EdgeState::HD,
                                                      EdgeState::NC, EdgeState::ND};

constexpr bool connected(EdgeState s) { return s == EdgeState::HC || s == EdgeState::NC; }

constexpr bool home(EdgeState s) { return s == EdgeState::HC || s == EdgeState::HD; }

constexpr std::string_view to_string(EdgeState s) {
    switch (s) {
        case EdgeState::HC: return "HC";
        case EdgeState::HD: return "HD";
        case EdgeState::NC: return "NC";
        case EdgeState::ND: return "ND";
    }
    return "??";
}

inline EdgeState edge_state_from_string(std::string_view name) {
    for (EdgeState s : kEdgeStates) {
        if (to_string(s) == name) return s;
    }
    throw ParamError("unknown edge state: " + std::string(name));
}

}  // namespace homemeg
