#pragma once

#include <cstdint>

#include "opgeom/types.hpp"

namespace opgeom {

/// Counter-mode SplitMix64. The raw stream is a pure function of
/// (seed, stream, counter), so any draw can be reproduced independently of
/// evaluation order or thread count:
///
///   base     = mix(seed ^ (0xBF58476D1CE4E5B9 * (stream + 1)))
///   draw(k)  = mix(base + 0x9E3779B97F4A7C15 * (k + 1))
///
/// where mix is the SplitMix64 finalizer
///   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
///   z ^= z >> 27; z *= 0x94D049BB133111EB;
///   z ^= z >> 31;
///
/// Uniform doubles take the top 53 bits; Gaussians are Box-Muller pairs from
/// two consecutive draws; complex Gaussians are (g0 + i g1) / sqrt(2) so that
/// E|z|^2 = 1. This algorithm is part of the report reproducibility contract.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    /// Uniform in [0, 1).
    double next_unit();

    /// Standard normal, Box-Muller.
    double next_gaussian();

    /// Standard complex Gaussian with E|z|^2 = 1.
    Complex next_complex_gaussian();

    VectorXc gaussian_vector(Eigen::Index n);
    UnitVector random_unit_vector(Eigen::Index n);

    static std::uint64_t mix(std::uint64_t z);

private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace opgeom
