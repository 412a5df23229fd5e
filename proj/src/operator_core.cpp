#include "opgeom/operator_core.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace opgeom {

ComplexMatrix adjoint(const ComplexMatrix& t) {
    return ComplexMatrix(t.mat().adjoint());
}

HermEig hermitian_eig(const MatrixXc& h) {
    MatrixXc sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(sym);
    if (es.info() != Eigen::Success)
        throw SolverError("hermitian_eig: eigensolver failed to converge (n=" +
                          std::to_string(h.rows()) + ")");
    return HermEig{es.eigenvalues(), es.eigenvectors()};
}

Svd complex_svd(const MatrixXc& a) {
    Eigen::JacobiSVD<MatrixXc> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw SolverError("complex_svd: decomposition failed (n=" + std::to_string(a.rows()) + ")");
    return Svd{svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

RadiusResult op_norm(const ComplexMatrix& t) {
    const Svd svd = complex_svd(t.mat());
    const double sigma = svd.sigma[0];
    VectorXc wit = svd.v.col(0);
    if (sigma == 0.0) {
        // Zero operator: any unit vector attains the norm.
        wit = VectorXc::Zero(t.dim());
        wit[0] = Complex(1.0, 0.0);
    }
    UnitVector witness = UnitVector::normalized(wit);
    const double attained = (t.mat() * witness.vec()).norm();
    return RadiusResult{sigma, witness, std::min(attained, sigma), std::max(attained, sigma), 0.0};
}

RadiusResult min_modulus(const ComplexMatrix& t) {
    const Svd svd = complex_svd(t.mat());
    const Eigen::Index last = svd.sigma.size() - 1;
    const double sigma = svd.sigma[last];
    UnitVector witness = UnitVector::normalized(svd.v.col(last));
    const double attained = (t.mat() * witness.vec()).norm();
    return RadiusResult{sigma, witness, std::min(attained, sigma), std::max(attained, sigma), 0.0};
}

NormingBasis norming_basis(const ComplexMatrix& t, const ToleranceConfig& cfg) {
    cfg.validate();
    const HermEig eig = hermitian_eig(t.mat().adjoint() * t.mat());
    const Eigen::Index n = t.dim();
    const double top = eig.values[n - 1];
    if (!(top > 0.0))
        throw std::invalid_argument("norming_basis: zero operator has no norming set of interest");

    // Cluster every eigenvalue of T*T within subspace_tol * sigma_max^2 of the top.
    const double cutoff = top - cfg.subspace_tol * top;
    Eigen::Index first = n - 1;
    while (first > 0 && eig.values[first - 1] >= cutoff) --first;
    const Eigen::Index k = n - first;

    NormingBasis basis;
    basis.V = eig.vectors.rightCols(k);
    basis.sigma_max = std::sqrt(top);
    basis.gap = (first > 0) ? top - eig.values[first - 1] : top;
    return basis;
}

ComplexMatrix rank_one(const ComplexVector& x, const ComplexVector& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("rank_one: vector dimensions disagree (" +
                                    std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
    return ComplexMatrix(x * y.adjoint());
}

Complex rayleigh(const ComplexMatrix& t, const UnitVector& x) {
    if (t.dim() != x.dim())
        throw std::invalid_argument("rayleigh: dimension mismatch");
    return x.vec().dot(t.mat() * x.vec());
}

}  // namespace opgeom
