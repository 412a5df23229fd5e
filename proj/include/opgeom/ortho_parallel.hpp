#pragma once

#include "opgeom/types.hpp"

namespace opgeom {

/// Compression M = V* (S*T) V onto the norming subspace of T, so that
/// { <Tx, Sx> : x in the norming set of T } = W(M).
ComplexMatrix compressed_form(const ComplexMatrix& t, const ComplexMatrix& s,
                              const ToleranceConfig& cfg);

/// Membership of z in the numerical range W(M). margin is the minimum over
/// theta of lambda_max(Re(e^{i theta}(M - zI))): positive inside, negative
/// outside. A witness y with <My, y> = z (within tolerance) is attached when
/// the point is attained.
DecisionCertificate in_numerical_range(const ComplexMatrix& m, Complex z,
                                       const ToleranceConfig& cfg);

/// T is Birkhoff-James orthogonal to S: ||T + gamma S|| >= ||T|| for every
/// complex gamma; decided through 0 in W(compressed_form(T, S)). When the
/// verdict is holds, the certificate carries the lifted norming vector and
/// the notes record a direct ||T + gamma S|| grid cross-check.
DecisionCertificate is_birkhoff_orthogonal(const ComplexMatrix& t, const ComplexMatrix& s,
                                           const ToleranceConfig& cfg);

/// The real-gamma variant: Re <Tx, Sx> = 0 for some norming vector x.
DecisionCertificate is_r_orthogonal(const ComplexMatrix& t, const ComplexMatrix& s,
                                    const ToleranceConfig& cfg);

/// T is norm-parallel to S: ||T + lambda S|| = ||T|| + ||S|| for some
/// unimodular lambda; decided through w(S*T) = ||T|| ||S||. margin is
/// w(S*T) - ||T|| ||S|| (nonpositive up to solver error). The certificate
/// carries the witness, the aligning lambda, and a direct re-verification of
/// ||T + lambda S|| in the notes.
DecisionCertificate is_norm_parallel(const ComplexMatrix& t, const ComplexMatrix& s,
                                     const ToleranceConfig& cfg);

/// Two-sided verification report for an equivalence between a decision
/// procedure and an independently evaluated witness-side criterion.
struct EquivalenceReport {
    std::string name;
    Verdict side_a;
    double margin_a;
    Verdict side_b;
    double margin_b;
    Consistency consistent;
    std::string details;
};

/// Parallelism characterization: T || S iff some x in the intersection of
/// the two norming sets makes Tx + gamma Sx and Sx linearly dependent for
/// every gamma (checked on a 25-point gamma grid plus the Cauchy-Schwarz
/// equality reduction at the witness).
EquivalenceReport check_parallelism_characterization(const ComplexMatrix& t,
                                                     const ComplexMatrix& s,
                                                     const ToleranceConfig& cfg);

/// Orthogonality characterization: T orthogonal to S iff some norming vector
/// x satisfies ||Tx + gamma Sx||^2 = ||Tx||^2 + |gamma|^2 ||Sx||^2 for every
/// complex gamma (grid-checked at the candidate witness).
EquivalenceReport check_orthogonality_pythagoras(const ComplexMatrix& t, const ComplexMatrix& s,
                                                 const ToleranceConfig& cfg);

/// Real-gamma variant, additionally validating the real-part shear identity
/// on seeded random vector triples.
EquivalenceReport check_r_orthogonality_pythagoras(const ComplexMatrix& t, const ComplexMatrix& s,
                                                   const ToleranceConfig& cfg);

namespace detail {

/// Orthonormal basis of the intersection of two subspaces given by
/// orthonormal columns, via principal angles; columns with principal cosine
/// above 1 - subspace_tol are merged into the intersection.
MatrixXc subspace_intersection(const MatrixXc& va, const MatrixXc& vb, double subspace_tol);

/// min over a complex gamma grid (side length `points`) of ||T + gamma S||,
/// over the disk |gamma| <= radius, plus compass-search refinement.
double min_norm_over_gamma(const MatrixXc& t, const MatrixXc& s, double radius, int points);

}  // namespace detail

}  // namespace opgeom
