#include "opgeom/ensemble.hpp"

#include <cmath>

#include <Eigen/QR>

#include "opgeom/dw_suite.hpp"
#include "opgeom/operator_core.hpp"
#include "opgeom/rng.hpp"

namespace opgeom {

namespace {

// Per-instance stream keys keep the draw layout stable even if one
// constructor starts consuming more randomness.
constexpr std::uint64_t kStreamMain = 0x01;
constexpr std::uint64_t kStreamAux = 0x02;

MatrixXc gaussian_matrix(CounterRng& rng, int rows, int cols) {
    MatrixXc m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.next_complex_gaussian();
    return m;
}

/// Haar-distributed unitary: QR of a Ginibre draw with the phase convention
/// fixed so the result is a deterministic function of the draw.
MatrixXc haar_unitary(CounterRng& rng, int n) {
    const MatrixXc g = gaussian_matrix(rng, n, n);
    Eigen::HouseholderQR<MatrixXc> qr(g);
    MatrixXc q = qr.householderQ();
    const MatrixXc r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double mod = std::abs(d);
        q.col(j) *= mod > 0 ? d / mod : Complex(1.0, 0.0);
    }
    return q;
}

std::uint64_t instance_stream(std::uint64_t key, int index) {
    return (static_cast<std::uint64_t>(index) << 8) | key;
}

}  // namespace

EnsembleKind ensemble_kind_from_string(const std::string& name) {
    if (name == "ginibre") return EnsembleKind::ginibre;
    if (name == "hermitian") return EnsembleKind::hermitian;
    if (name == "normal") return EnsembleKind::normal;
    if (name == "unitary") return EnsembleKind::unitary;
    if (name == "nilpotent2") return EnsembleKind::nilpotent2;
    if (name == "rank_one") return EnsembleKind::rank_one;
    if (name == "shift_truncation") return EnsembleKind::shift_truncation;
    throw std::invalid_argument("unknown ensemble kind: " + name);
}

const char* to_string(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::ginibre: return "ginibre";
        case EnsembleKind::hermitian: return "hermitian";
        case EnsembleKind::normal: return "normal";
        case EnsembleKind::unitary: return "unitary";
        case EnsembleKind::nilpotent2: return "nilpotent2";
        case EnsembleKind::rank_one: return "rank_one";
        case EnsembleKind::shift_truncation: return "shift_truncation";
    }
    return "?";
}

void EnsembleSpec::validate() const {
    if (n < 1) throw std::invalid_argument("EnsembleSpec: dimension must be >= 1");
    if (count < 1) throw std::invalid_argument("EnsembleSpec: count must be >= 1");
    if (!(scale > 0)) throw std::invalid_argument("EnsembleSpec: scale must be positive");
    if (kind == EnsembleKind::nilpotent2 && n < 2)
        throw std::invalid_argument("EnsembleSpec: nilpotent2 needs n >= 2");
    if (kind == EnsembleKind::shift_truncation && n < 2)
        throw std::invalid_argument("EnsembleSpec: shift_truncation needs n >= 2");
}

ComplexMatrix generate_instance(const EnsembleSpec& spec, int index) {
    spec.validate();
    if (index < 0 || index >= spec.count)
        throw std::invalid_argument("generate_instance: index out of range");
    CounterRng rng(spec.seed, instance_stream(kStreamMain, index));
    const int n = spec.n;
    const Complex s(spec.scale, 0.0);

    switch (spec.kind) {
        case EnsembleKind::ginibre:
            return ComplexMatrix(s * gaussian_matrix(rng, n, n));
        case EnsembleKind::hermitian: {
            const MatrixXc g = gaussian_matrix(rng, n, n);
            return ComplexMatrix(s * 0.5 * (g + g.adjoint()));
        }
        case EnsembleKind::normal: {
            const MatrixXc u = haar_unitary(rng, n);
            CounterRng aux(spec.seed, instance_stream(kStreamAux, index));
            VectorXc d(n);
            for (int i = 0; i < n; ++i) d[i] = s * aux.next_complex_gaussian();
            return ComplexMatrix(u * d.asDiagonal() * u.adjoint());
        }
        case EnsembleKind::unitary:
            return ComplexMatrix(s * haar_unitary(rng, n));
        case EnsembleKind::nilpotent2: {
            // [[0, B], [0, 0]] squares to zero exactly.
            const int m = n / 2;
            MatrixXc t = MatrixXc::Zero(n, n);
            t.topRightCorner(m, n - m) = s * gaussian_matrix(rng, m, n - m);
            return ComplexMatrix(std::move(t));
        }
        case EnsembleKind::rank_one: {
            const auto [x, y] = generate_vector_pair(n, spec.seed, index);
            return ComplexMatrix(s * (x * y.adjoint()));
        }
        case EnsembleKind::shift_truncation:
            return ComplexMatrix(s * shift_truncation(n).mat());
    }
    throw std::invalid_argument("generate_instance: unknown kind");
}

std::vector<ComplexMatrix> generate(const EnsembleSpec& spec) {
    spec.validate();
    std::vector<ComplexMatrix> out;
    out.reserve(spec.count);
    for (int k = 0; k < spec.count; ++k) out.push_back(generate_instance(spec, k));
    return out;
}

std::pair<ComplexVector, ComplexVector> generate_vector_pair(int n, std::uint64_t seed, int index) {
    CounterRng rng(seed, instance_stream(kStreamMain, index));
    ComplexVector x = rng.gaussian_vector(n);
    ComplexVector y = rng.gaussian_vector(n);
    return {std::move(x), std::move(y)};
}

std::uint64_t partner_seed(std::uint64_t seed) {
    return CounterRng::mix(seed ^ 0xA5A5A5A55A5A5A5AULL);
}

}  // namespace opgeom
