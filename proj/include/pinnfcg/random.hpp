#pragma once

#include <cstdint>
#include <random>

namespace pinnfcg {

/// Seeded generator whose draws are identical on every standard library.
/// std::uniform_real_distribution and std::normal_distribution are
/// implementation-defined, so the variates are derived from raw engine bits.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal (Box-Muller, one variate per call).
    double normal();

private:
    std::mt19937_64 engine_;
};

/// Mixes a base seed with a stream index into an independent seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace pinnfcg
