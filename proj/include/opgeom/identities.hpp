#pragma once

#include "opgeom/types.hpp"

namespace opgeom {

/// Residual of the Gram-determinant shear invariance
/// || a + g b ||^2 ||b||^2 - |<a + g b, b>|^2  =  ||a||^2 ||b||^2 - |<a, b>|^2.
/// Returns |LHS - RHS|; contract: <= 1e-10 * (||a|| + |g| ||b||)^2 ||b||^2.
double gram_shear_residual(const ComplexVector& a, const ComplexVector& b, ComplexScalar gamma);

/// Real-part variant (real gamma): the same invariance with Re<.,.> in place
/// of the modulus.
double gram_shear_residual_real(const ComplexVector& a, const ComplexVector& b, double gamma);

/// ||b||^2 inf_g ||a + g b||^2 = ||a||^2 ||b||^2 - |<a, b>|^2, evaluated at
/// the closed-form minimizer g* = -<a, b>/||b||^2, with the Cauchy-Schwarz
/// equality case (linear dependence) reported as a tri-state.
struct BestApproximationReport {
    Complex gamma_star;
    double inf_value;             // ||a + g* b||^2
    double identity_residual;     // relative
    Verdict cs_equality;          // |<a,b>| = ||a|| ||b|| within margin
    double dependence_margin;     // |<a,b>| - ||a|| ||b|| (<= 0)
};

BestApproximationReport best_approximation_check(const ComplexVector& a, const ComplexVector& b,
                                                 const ToleranceConfig& cfg);

/// 2 |<a,e><e,b>| <= ||a|| ||b|| + |<a,b>| for unit e.
InequalityReport buzano_check(const ComplexVector& a, const ComplexVector& b, const UnitVector& e,
                              const ToleranceConfig& cfg);

/// The chain ||T||^2 + c^2(T) <= max over unit x of (||Tx||^2 + |<Tx,x>|^2)
/// <= 4 w^2(T), reported link by link together with the direct comparison
/// against 4 w^2(T).
struct ChainReport {
    InequalityReport left;    // ||T||^2 + c^2 <= sup(...)
    InequalityReport right;   // sup(...) <= 4 w^2
    InequalityReport direct;  // ||T||^2 + c^2 <= 4 w^2
    bool all_hold_or_marginal() const;
};

ChainReport radius_chain_check(const ComplexMatrix& t, const ToleranceConfig& cfg);

/// ||T||^2 - w^2(T) <= inf over complex gamma of ||T - g I||^2 - c^2(T - g I),
/// the infimum estimated by a 41x41 grid over |g| <= 3||T|| plus compass
/// refinement (the estimate upper-bounds the true infimum, which is the
/// conservative direction for the asserted inequality).
InequalityReport refinement_i(const ComplexMatrix& t, const ToleranceConfig& cfg);

/// (1 - ||T - xi I||^2/|xi|^2) ||T||^2 <= w^2(T) - c^2(T*T - xi T*)/|xi|^2
/// for nonzero xi.
InequalityReport refinement_ii(const ComplexMatrix& t, ComplexScalar xi,
                               const ToleranceConfig& cfg);

/// w^2(T) - w(T^2) <= inf over complex gamma of
/// (||T - g T*||^2 ||T||^2 - c^2(T^2 - g T T*)) / (||T||^2 + c^2(T)),
/// same grid-plus-refinement scheme over |g| <= 3.
InequalityReport refinement_iii(const ComplexMatrix& t, const ToleranceConfig& cfg);

}  // namespace opgeom
