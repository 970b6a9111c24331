#pragma once

#include <cstdint>

namespace homemeg {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives an independent stream key from a master seed.
constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
    return mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^
                 (0xc2b2ae3d27d4eb4fULL * (stream + 1)));
}

constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive_key(derive_key(seed, a), b);
}

// Counter-based uniforms: U_t(e) is a pure function of (key, t, e), so the same
// variates can be replayed by any consumer (evolution, coupling, lazy queries).
class EdgeUniforms {
  public:
    EdgeUniforms() = default;
    explicit EdgeUniforms(std::uint64_t key) : key_(key) {}

    std::uint64_t key() const { return key_; }

    // Uniform draw in [0, 1) addressed by (time step, edge id).
    double at(std::uint64_t t, std::uint64_t e) const {
        std::uint64_t h = mix64(key_ ^ (0x9e3779b97f4a7c15ULL * (t + 1)));
        h = mix64(h ^ (0xc2b2ae3d27d4eb4fULL * (e + 1)));
        return static_cast<double>(h >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t key_ = 0;
};

}  // namespace homemeg
