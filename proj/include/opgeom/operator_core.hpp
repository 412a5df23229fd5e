#pragma once

#include "opgeom/types.hpp"

namespace opgeom {

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& t);

/// Hermitian eigendecomposition, eigenvalues ascending. Throws SolverError
/// when the solver does not converge. The input is symmetrized internally so
/// callers may pass a matrix that is Hermitian only up to roundoff.
struct HermEig {
    Eigen::VectorXd values;   // ascending
    MatrixXc vectors;         // columns match values
};
HermEig hermitian_eig(const MatrixXc& h);

/// Singular value decomposition, singular values descending.
struct Svd {
    Eigen::VectorXd sigma;
    MatrixXc u;
    MatrixXc v;
};
Svd complex_svd(const MatrixXc& a);

/// Largest singular value with its right singular vector as witness.
RadiusResult op_norm(const ComplexMatrix& t);

/// Smallest singular value: the largest alpha with ||Tx|| >= alpha ||x||
/// for all x, realized spectrally in finite dimensions.
RadiusResult min_modulus(const ComplexMatrix& t);

/// Orthonormal basis of the subspace whose unit sphere is the norming set of
/// T. Eigenvalues of T*T within subspace_tol * sigma_max^2 of the top are
/// clustered together. Throws std::invalid_argument for T = 0.
NormingBasis norming_basis(const ComplexMatrix& t, const ToleranceConfig& cfg);

/// The rank one operator z -> <z, y> x, i.e. the matrix x y*.
ComplexMatrix rank_one(const ComplexVector& x, const ComplexVector& y);

/// <Tx, x> for a unit vector x.
Complex rayleigh(const ComplexMatrix& t, const UnitVector& x);

}  // namespace opgeom
