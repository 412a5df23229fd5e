#pragma once

#include "opgeom/types.hpp"

namespace opgeom {

/// Sampled support function of the numerical range: for each angle theta the
/// top eigenvalue of Re(e^{i theta} M) with its eigenvector.
struct SupportProfile {
    std::vector<double> angles;          // strictly increasing in [0, 2pi)
    std::vector<double> support_values;  // lambda_max(Re(e^{i theta} M))
    std::vector<UnitVector> witnesses;
};

SupportProfile support_profile(const ComplexMatrix& m, int points);

/// Signed support distance of the numerical range W(M) from the origin,
/// together with a unit vector minimizing |<My, y>|.
///
/// signed_distance = max over theta of lambda_min(Re(e^{i theta} M)),
/// positive exactly when 0 lies outside W(M) (and then equal to the
/// distance), nonpositive when 0 is inside.
struct OriginDistance {
    double signed_distance;
    UnitVector argmin;     // unit y minimizing |<My, y>|
    double attained;       // |<M argmin, argmin>|
    double sweep_resolution;
};

OriginDistance origin_distance(const ComplexMatrix& m, const ToleranceConfig& cfg);

/// w(T) = sup |<Tx, x>| over unit x, via a circle sweep of rotated Hermitian
/// parts plus golden-section refinement.
RadiusResult numerical_radius(const ComplexMatrix& t, const ToleranceConfig& cfg);

/// c(T) = inf |<Tx, x>| over unit x: the distance from the origin to W(T),
/// clamped at zero when the origin lies inside.
RadiusResult crawford_number(const ComplexMatrix& t, const ToleranceConfig& cfg);

/// dw(T) = sup sqrt(|<Tx, x>|^2 + ||Tx||^4) over unit x, via a direction
/// sweep of the joint numerical range of (Re T, Im T, T*T) plus seeded
/// random-restart ascent. The reported value is the certified attained
/// lower bound; `upper` carries sqrt(w^2 + ||T||^4).
RadiusResult davis_wielandt_radius(const ComplexMatrix& t, const ToleranceConfig& cfg);

/// Objectives over the joint numerical range of (Re T, Im T, T*T), maximized
/// by the same sweep-and-polish machinery as dw.
enum class ShellObjective {
    radius_sq,                // p^2 + q^2 + r^2  (dw^2)
    norm_sq_plus_rayleigh_sq  // r + p^2 + q^2    (||Tx||^2 + |<Tx,x>|^2)
};

struct ShellMax {
    double value;
    UnitVector witness;
};

ShellMax maximize_shell_functional(const ComplexMatrix& t, const ToleranceConfig& cfg,
                                   ShellObjective objective);

/// Evaluates the stock radius inequalities on T: the numerical radius
/// bracket, the Davis-Wielandt bracket, power inequalities for n = 2, 3, 4,
/// the scaling trichotomy at |alpha| in {1/2, 1, 2}, and the sum bound
/// against the paired operator S = T*.
struct BoundsReport {
    std::vector<InequalityReport> checks;
    bool all_hold_or_marginal() const;
};

BoundsReport check_radius_bounds(const ComplexMatrix& t, const ToleranceConfig& cfg);

namespace detail {

/// Cheap Crawford value (lower bound of c): coarse sweep plus short
/// refinement, no witness. Used inside grid optimizations where the
/// underestimate keeps the enclosing bound conservative.
double crawford_value_cheap(const MatrixXc& m, int angles);

/// Unit y in the plane of two orthonormal Hermitian eigenvectors with
/// <H y, y> = 0, given lambda_min <= 0 <= lambda_max (closed form).
VectorXc hermitian_zero_combination(const VectorXc& v_min, double lambda_min,
                                    const VectorXc& v_max, double lambda_max);

}  // namespace detail

}  // namespace opgeom
