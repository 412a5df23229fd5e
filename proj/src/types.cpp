#include "opgeom/types.hpp"

#include <cmath>

namespace opgeom {

bool all_finite(const MatrixXc& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const Complex& z = m(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
    return true;
}

bool all_finite(const VectorXc& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
    }
    return true;
}

ComplexMatrix::ComplexMatrix(MatrixXc entries) : mat_(std::move(entries)) {
    if (mat_.rows() < 1 || mat_.rows() != mat_.cols())
        throw std::invalid_argument("ComplexMatrix: expected a square matrix of dimension >= 1, got " +
                                    std::to_string(mat_.rows()) + "x" + std::to_string(mat_.cols()));
    if (!all_finite(mat_))
        throw std::invalid_argument("ComplexMatrix: entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(Eigen::Index n) {
    return ComplexMatrix(MatrixXc::Identity(n, n));
}

ComplexMatrix ComplexMatrix::zero(Eigen::Index n) {
    return ComplexMatrix(MatrixXc::Zero(n, n));
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    return ComplexMatrix(a.mat() + b.mat());
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    return ComplexMatrix(a.mat() - b.mat());
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return ComplexMatrix(a.mat() * b.mat());
}

ComplexMatrix operator*(Complex alpha, const ComplexMatrix& a) {
    return ComplexMatrix(alpha * a.mat());
}

UnitVector UnitVector::normalized(const VectorXc& v) {
    if (!all_finite(v)) throw std::invalid_argument("UnitVector: entries must be finite");
    const double n = v.norm();
    if (n == 0.0) throw std::invalid_argument("UnitVector: cannot normalize the zero vector");
    return UnitVector(v / n, 0.0);
}

UnitVector UnitVector::checked(VectorXc v, double unit_tol) {
    if (!all_finite(v)) throw std::invalid_argument("UnitVector: entries must be finite");
    const double defect = std::abs(v.norm() - 1.0);
    if (defect > unit_tol)
        throw std::invalid_argument("UnitVector: norm defect " + std::to_string(defect) +
                                    " exceeds unit_tol");
    return UnitVector(std::move(v), defect);
}

void ToleranceConfig::validate() const {
    if (!(unit_tol > 0) || !(subspace_tol > 0) || !(refine_tol > 0) || !(decision_margin > 0))
        throw std::invalid_argument("ToleranceConfig: tolerances must be positive");
    if (sweep_points < 16) throw std::invalid_argument("ToleranceConfig: sweep_points must be >= 16");
    if (oracle_samples < 1) throw std::invalid_argument("ToleranceConfig: oracle_samples must be >= 1");
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::marginal: return "marginal";
    }
    return "?";
}

Verdict verdict_two_sided(double margin, double decision_margin) {
    if (margin > decision_margin) return Verdict::holds;
    if (margin < -decision_margin) return Verdict::fails;
    return Verdict::marginal;
}

Verdict verdict_one_sided(double margin, double decision_margin) {
    if (margin >= -decision_margin) return Verdict::holds;
    if (margin >= -10.0 * decision_margin) return Verdict::marginal;
    return Verdict::fails;
}

InequalityReport make_inequality_report(std::string name, double lhs, double rhs,
                                        double decision_margin) {
    InequalityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.verdict = verdict_one_sided(std::min(r.slack, 0.0), decision_margin);
    if (r.slack > decision_margin) r.verdict = Verdict::holds;
    return r;
}

const char* to_string(Consistency c) {
    switch (c) {
        case Consistency::all_agree: return "all-agree";
        case Consistency::disagree: return "disagree";
        case Consistency::marginal: return "marginal";
    }
    return "?";
}

Consistency consistency_of(const std::vector<Verdict>& verdicts) {
    bool any_holds = false, any_fails = false, any_marginal = false;
    for (Verdict v : verdicts) {
        if (v == Verdict::holds) any_holds = true;
        else if (v == Verdict::fails) any_fails = true;
        else any_marginal = true;
    }
    if (any_holds && any_fails) return Consistency::disagree;
    if (any_marginal) return Consistency::marginal;
    return Consistency::all_agree;
}

}  // namespace opgeom
