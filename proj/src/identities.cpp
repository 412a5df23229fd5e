#include "opgeom/identities.hpp"

#include <algorithm>
#include <cmath>

#include "opgeom/operator_core.hpp"
#include "opgeom/radii.hpp"

namespace opgeom {

namespace {

// <a, b> in the convention linear in the first argument.
Complex inner(const ComplexVector& a, const ComplexVector& b) { return b.dot(a); }

/// Grid-plus-compass minimization of a complex-parameter objective over the
/// disk |gamma| <= radius; expands the disk once if the minimizer lands on
/// the boundary.
template <typename F>
OptimizerTrace minimize_over_disk(F&& objective, double radius, int grid_side, double refine_tol) {
    OptimizerTrace trace;
    trace.boundary_expanded = false;
    for (int attempt = 0; attempt < 2; ++attempt) {
        const double h0 = 2.0 * radius / (grid_side - 1);
        Complex gbest(0.0, 0.0);
        double best = objective(gbest);
        for (int i = 0; i < grid_side; ++i)
            for (int j = 0; j < grid_side; ++j) {
                const Complex g(-radius + i * h0, -radius + j * h0);
                const double v = objective(g);
                if (v < best) { best = v; gbest = g; }
            }
        double h = h0;
        const double hmin = std::max(refine_tol, 1e-7 * radius);
        while (h > hmin) {
            bool moved = false;
            for (const Complex d : {Complex(h, 0), Complex(-h, 0), Complex(0, h), Complex(0, -h)}) {
                const double v = objective(gbest + d);
                if (v < best) { best = v; gbest = gbest + d; moved = true; }
            }
            if (!moved) h *= 0.5;
        }
        trace.grid_resolution = h0;
        trace.gamma_star = gbest;
        trace.value = best;
        if (std::abs(gbest) < 0.95 * radius || attempt == 1) break;
        trace.boundary_expanded = true;
        radius *= 2.0;
    }
    return trace;
}

}  // namespace

double gram_shear_residual(const ComplexVector& a, const ComplexVector& b, ComplexScalar gamma) {
    if (a.size() != b.size()) throw std::invalid_argument("gram_shear_residual: dimension mismatch");
    const ComplexVector shifted = a + gamma * b;
    const double lhs = shifted.squaredNorm() * b.squaredNorm() - std::norm(inner(shifted, b));
    const double rhs = a.squaredNorm() * b.squaredNorm() - std::norm(inner(a, b));
    return std::abs(lhs - rhs);
}

double gram_shear_residual_real(const ComplexVector& a, const ComplexVector& b, double gamma) {
    if (a.size() != b.size())
        throw std::invalid_argument("gram_shear_residual_real: dimension mismatch");
    const ComplexVector shifted = a + Complex(gamma, 0.0) * b;
    const double lhs =
        shifted.squaredNorm() * b.squaredNorm() - std::pow(inner(shifted, b).real(), 2);
    const double rhs = a.squaredNorm() * b.squaredNorm() - std::pow(inner(a, b).real(), 2);
    return std::abs(lhs - rhs);
}

BestApproximationReport best_approximation_check(const ComplexVector& a, const ComplexVector& b,
                                                 const ToleranceConfig& cfg) {
    if (a.size() != b.size())
        throw std::invalid_argument("best_approximation_check: dimension mismatch");
    const double bn2 = b.squaredNorm();
    if (bn2 == 0.0) throw std::invalid_argument("best_approximation_check: b must be nonzero");

    BestApproximationReport rep;
    rep.gamma_star = -inner(a, b) / bn2;
    rep.inf_value = (a + rep.gamma_star * b).squaredNorm();
    const double lhs = bn2 * rep.inf_value;
    const double rhs = a.squaredNorm() * bn2 - std::norm(inner(a, b));
    const double scale = std::max(1e-300, a.squaredNorm() * bn2);
    rep.identity_residual = std::abs(lhs - rhs) / scale;

    rep.dependence_margin = std::abs(inner(a, b)) - a.norm() * b.norm();
    rep.cs_equality = verdict_one_sided(std::min(rep.dependence_margin, 0.0),
                                        cfg.decision_margin * std::max(1.0, a.norm() * b.norm()));
    return rep;
}

InequalityReport buzano_check(const ComplexVector& a, const ComplexVector& b, const UnitVector& e,
                              const ToleranceConfig& cfg) {
    if (a.size() != b.size() || a.size() != e.dim())
        throw std::invalid_argument("buzano_check: dimension mismatch");
    const double lhs = 2.0 * std::abs(inner(a, e.vec()) * inner(e.vec(), b));
    const double rhs = a.norm() * b.norm() + std::abs(inner(a, b));
    return make_inequality_report("buzano", lhs, rhs,
                                  cfg.decision_margin * std::max(1.0, a.norm() * b.norm()));
}

bool ChainReport::all_hold_or_marginal() const {
    return left.verdict != Verdict::fails && right.verdict != Verdict::fails &&
           direct.verdict != Verdict::fails;
}

ChainReport radius_chain_check(const ComplexMatrix& t, const ToleranceConfig& cfg) {
    const double opn = op_norm(t).value;
    const double c = crawford_number(t, cfg).value;
    const double w = numerical_radius(t, cfg).value;
    const double mid = maximize_shell_functional(t, cfg, ShellObjective::norm_sq_plus_rayleigh_sq).value;

    const double lhs = opn * opn + c * c;
    const double scale = std::max(1.0, opn * opn);
    ChainReport rep;
    rep.left = make_inequality_report("chain-left", lhs, mid, cfg.decision_margin * scale);
    rep.right = make_inequality_report("chain-right", mid, 4.0 * w * w, cfg.decision_margin * scale);
    rep.direct = make_inequality_report("chain-direct", lhs, 4.0 * w * w, cfg.decision_margin * scale);
    return rep;
}

InequalityReport refinement_i(const ComplexMatrix& t, const ToleranceConfig& cfg) {
    const double opn = op_norm(t).value;
    const double w = numerical_radius(t, cfg).value;
    const Eigen::Index n = t.dim();
    const MatrixXc id = MatrixXc::Identity(n, n);

    // Underestimating c overestimates the objective, so the coarse Crawford
    // sweep keeps the infimum estimate an upper bound of the true infimum.
    auto objective = [&](Complex gamma) {
        const MatrixXc shifted = t.mat() - gamma * id;
        const double norm = complex_svd(shifted).sigma[0];
        const double c = detail::crawford_value_cheap(shifted, 128);
        return norm * norm - c * c;
    };
    const OptimizerTrace trace =
        minimize_over_disk(objective, 3.0 * std::max(opn, 1e-12), 41, cfg.refine_tol);

    InequalityReport rep = make_inequality_report(
        "refinement-i", opn * opn - w * w, trace.value, 1e-6 * std::max(1.0, opn * opn));
    rep.optimizer_trace = trace;
    return rep;
}

InequalityReport refinement_ii(const ComplexMatrix& t, ComplexScalar xi,
                               const ToleranceConfig& cfg) {
    if (xi == Complex(0.0, 0.0)) throw std::invalid_argument("refinement_ii: xi must be nonzero");
    const Eigen::Index n = t.dim();
    const MatrixXc id = MatrixXc::Identity(n, n);
    const double opn = op_norm(t).value;
    const double w = numerical_radius(t, cfg).value;
    const double xi2 = std::norm(xi);

    const double shifted_norm = complex_svd(t.mat() - xi * id).sigma[0];
    const double lhs = (1.0 - shifted_norm * shifted_norm / xi2) * opn * opn;

    const ComplexMatrix inner_op(t.mat().adjoint() * t.mat() - xi * t.mat().adjoint());
    const double c = crawford_number(inner_op, cfg).value;
    const double rhs = w * w - c * c / xi2;

    return make_inequality_report("refinement-ii", lhs, rhs, 1e-6 * std::max(1.0, opn * opn));
}

InequalityReport refinement_iii(const ComplexMatrix& t, const ToleranceConfig& cfg) {
    const double opn = op_norm(t).value;
    if (opn == 0.0) throw std::invalid_argument("refinement_iii: T must be nonzero");
    const double w = numerical_radius(t, cfg).value;
    const ComplexMatrix t2 = t * t;
    const double w2 = numerical_radius(t2, cfg).value;
    const double c0 = crawford_number(t, cfg).value;
    const double denom = opn * opn + c0 * c0;

    const MatrixXc tadj = t.mat().adjoint();
    const MatrixXc ttadj = t.mat() * tadj;
    auto objective = [&](Complex gamma) {
        const double diff_norm = complex_svd(t.mat() - gamma * tadj).sigma[0];
        const double c = detail::crawford_value_cheap(t2.mat() - gamma * ttadj, 128);
        return (diff_norm * diff_norm * opn * opn - c * c) / denom;
    };
    const OptimizerTrace trace = minimize_over_disk(objective, 3.0, 41, cfg.refine_tol);

    InequalityReport rep = make_inequality_report("refinement-iii", w * w - w2, trace.value,
                                                  1e-6 * std::max(1.0, opn * opn));
    rep.optimizer_trace = trace;
    return rep;
}

}  // namespace opgeom
