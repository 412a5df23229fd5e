#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace opgeom {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

/// A complex n-vector. Finiteness is enforced at the I/O boundary and by the
/// strong types below; internal algebra works on the raw Eigen type.
using ComplexVector = Eigen::VectorXcd;

/// A complex scalar (gamma of orthogonality, xi of the refinement
/// inequalities, lambda of parallelism; the latter is kept unimodular by the
/// code that produces it).
using ComplexScalar = std::complex<double>;

/// Thrown when a spectral decomposition does not converge.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool all_finite(const MatrixXc& m);
bool all_finite(const VectorXc& v);

/// Dense square complex matrix. Construction validates shape and finiteness,
/// so every ComplexMatrix in the system is square with finite entries.
class ComplexMatrix {
public:
    explicit ComplexMatrix(MatrixXc entries);

    static ComplexMatrix identity(Eigen::Index n);
    static ComplexMatrix zero(Eigen::Index n);

    Eigen::Index dim() const { return mat_.rows(); }
    const MatrixXc& mat() const { return mat_; }

private:
    MatrixXc mat_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex alpha, const ComplexMatrix& a);

/// Unit vector with its recorded normalization defect | ||v|| - 1 |.
class UnitVector {
public:
    /// Rescales v to unit norm. Throws std::invalid_argument on a zero or
    /// non-finite input.
    static UnitVector normalized(const VectorXc& v);

    /// Accepts v as-is when | ||v|| - 1 | <= unit_tol, else throws.
    static UnitVector checked(VectorXc v, double unit_tol);

    const VectorXc& vec() const { return v_; }
    double norm_defect() const { return norm_defect_; }
    Eigen::Index dim() const { return v_.size(); }

private:
    UnitVector(VectorXc v, double defect) : v_(std::move(v)), norm_defect_(defect) {}
    VectorXc v_;
    double norm_defect_;
};

/// Numeric knobs shared by every solver in the toolkit.
struct ToleranceConfig {
    double unit_tol = 1e-8;
    double subspace_tol = 1e-8;
    int sweep_points = 720;       // circle sweep resolution
    double refine_tol = 1e-10;
    double decision_margin = 1e-8;
    int oracle_samples = 64;      // restarts of the shell polish
    std::uint64_t rng_seed = 42;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// A certified value of a norm-like functional together with the vector that
/// attains it and a bracketing pair.
///
/// For sup-type functionals (operator norm, numerical radius, Davis-Wielandt
/// radius) `lower` is the value attained at the witness and `upper` is an
/// analytic upper bound, so the true supremum lies in [lower, upper].
/// For inf-type functionals (minimum modulus, Crawford number) the roles
/// mirror: `lower` is the certified sweep bound below the true infimum and
/// `upper` is the value attained at the witness.
struct RadiusResult {
    double value;
    UnitVector witness;
    double lower;
    double upper;
    double sweep_resolution;
};

/// Orthonormal basis V of the top singular subspace of T: the unit sphere of
/// range(V) is the norming set of T.
struct NormingBasis {
    MatrixXc V;          // n x k, orthonormal columns
    double sigma_max;    // = ||T||
    double gap;          // sigma_max^2 minus the largest excluded eigenvalue
                         // of T*T (sigma_max^2 when nothing is excluded)

    Eigen::Index k() const { return V.cols(); }
};

enum class Verdict { holds, fails, marginal };

const char* to_string(Verdict v);

/// Tri-state from a signed margin whose threshold is two-sided (membership
/// predicates: positive inside, negative outside).
Verdict verdict_two_sided(double margin, double decision_margin);

/// Tri-state for equality-style criteria whose margin is <= 0 by
/// construction: within decision_margin of 0 counts as holds, within an
/// order of magnitude as marginal, anything further as fails.
Verdict verdict_one_sided(double margin, double decision_margin);

/// Outcome of a decision procedure with enough data to replay it.
struct DecisionCertificate {
    Verdict verdict;
    double margin;                         // in the criterion's natural units
    std::optional<UnitVector> witness;
    std::optional<ComplexScalar> unimodular;  // the lambda of parallelism
    std::string notes;
};

/// One evaluated inequality lhs <= rhs.
struct OptimizerTrace {
    double grid_resolution;
    Complex gamma_star;
    double value;
    bool boundary_expanded;
};

struct InequalityReport {
    std::string name;
    double lhs;
    double rhs;
    double slack;   // rhs - lhs
    Verdict verdict;
    std::optional<OptimizerTrace> optimizer_trace;
};

InequalityReport make_inequality_report(std::string name, double lhs, double rhs,
                                        double decision_margin);

/// Agreement state of a list of tri-state conditions.
enum class Consistency { all_agree, disagree, marginal };

const char* to_string(Consistency c);

/// `disagree` only when two non-marginal verdicts point in opposite
/// directions; a marginal condition never triggers a disagreement.
Consistency consistency_of(const std::vector<Verdict>& verdicts);

}  // namespace opgeom
