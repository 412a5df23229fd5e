#include "opgeom/rng.hpp"

#include <cmath>
#include <numbers>

namespace opgeom {

std::uint64_t CounterRng::mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : base_(mix(seed ^ (0xBF58476D1CE4E5B9ULL * (stream + 1)))) {}

std::uint64_t CounterRng::next_u64() {
    ++counter_;
    return mix(base_ + 0x9E3779B97F4A7C15ULL * counter_);
}

double CounterRng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] keeps the log finite.
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Complex CounterRng::next_complex_gaussian() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return Complex(re, im) / std::sqrt(2.0);
}

VectorXc CounterRng::gaussian_vector(Eigen::Index n) {
    VectorXc v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = next_complex_gaussian();
    return v;
}

UnitVector CounterRng::random_unit_vector(Eigen::Index n) {
    for (;;) {
        VectorXc v = gaussian_vector(n);
        if (v.norm() > 1e-6) return UnitVector::normalized(v);
    }
}

}  // namespace opgeom
