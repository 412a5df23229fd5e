#pragma once

#include <cstdint>
#include <utility>

#include "opgeom/types.hpp"

namespace opgeom {

enum class EnsembleKind {
    ginibre,
    hermitian,
    normal,
    unitary,
    nilpotent2,
    rank_one,
    shift_truncation
};

EnsembleKind ensemble_kind_from_string(const std::string& name);
const char* to_string(EnsembleKind kind);

/// Seeded random-matrix ensemble description. Instance k of a spec is a pure
/// function of (seed, kind, n, scale, k), so ensembles reproduce bit-exactly
/// regardless of generation order.
struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::ginibre;
    int n = 4;
    int count = 1;
    std::uint64_t seed = 42;
    double scale = 1.0;

    void validate() const;
};

ComplexMatrix generate_instance(const EnsembleSpec& spec, int index);
std::vector<ComplexMatrix> generate(const EnsembleSpec& spec);

/// Deterministic Gaussian vector pair for rank-one instances (index-keyed
/// like generate_instance).
std::pair<ComplexVector, ComplexVector> generate_vector_pair(int n, std::uint64_t seed, int index);

/// Partner-seed derivation for checks that consume ordered pairs (T, S):
/// S-instances come from the same spec under this derived seed.
std::uint64_t partner_seed(std::uint64_t seed);

}  // namespace opgeom
