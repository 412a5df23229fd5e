#include "opgeom/dw_suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "opgeom/operator_core.hpp"
#include "opgeom/radii.hpp"

namespace opgeom {

namespace {

std::string format_sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

Consistency battery_consistency(const std::vector<EquivalenceBattery::Condition>& conditions) {
    std::vector<Verdict> verdicts;
    verdicts.reserve(conditions.size());
    for (const auto& c : conditions) verdicts.push_back(c.verdict);
    return consistency_of(verdicts);
}

EquivalenceBattery::Condition make_condition(std::string label, double lhs, double rhs,
                                             double tol) {
    const double margin = lhs - rhs;
    return EquivalenceBattery::Condition{std::move(label),
                                         verdict_one_sided(std::min(margin, 0.0), tol), margin, lhs,
                                         rhs};
}

}  // namespace

bool EquivalenceBattery::all_hold() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const Condition& c) { return c.verdict == Verdict::holds; });
}

bool EquivalenceBattery::all_fail() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const Condition& c) { return c.verdict == Verdict::fails; });
}

EquivalenceBattery parallel_identity_battery(const ComplexMatrix& t, const ToleranceConfig& cfg) {
    const double opn = op_norm(t).value;
    const double w = numerical_radius(t, cfg).value;
    const double dw = davis_wielandt_radius(t, cfg).value;
    const double dw_cap = std::sqrt(w * w + std::pow(opn, 4));

    EquivalenceBattery battery;
    battery.conditions.push_back(make_condition("parallel-to-identity", w, opn,
                                                cfg.decision_margin * std::max(1.0, opn)));
    battery.conditions.push_back(make_condition("dw-equality", dw, dw_cap,
                                                cfg.decision_margin * std::max(1.0, dw_cap)));
    battery.consistent = battery_consistency(battery.conditions);
    battery.details = "w = " + format_sci(w) + ", ||T|| = " + format_sci(opn) +
                      ", dw = " + format_sci(dw) + ", cap = " + format_sci(dw_cap);
    return battery;
}

EquivalenceBattery radius_norm_battery(const ComplexMatrix& t, const ToleranceConfig& cfg) {
    const double opn = op_norm(t).value;
    const double w = numerical_radius(t, cfg).value;
    const double dw = davis_wielandt_radius(t, cfg).value;
    const double dw_cap = std::sqrt(w * w + std::pow(opn, 4));
    const double dw_norm_form = opn * std::sqrt(1.0 + opn * opn);
    const double gram_top = hermitian_eig(t.mat().adjoint() * t.mat()).values[t.dim() - 1];

    EquivalenceBattery battery;
    battery.conditions.push_back(make_condition("dw-equality", dw, dw_cap,
                                                cfg.decision_margin * std::max(1.0, dw_cap)));
    battery.conditions.push_back(
        make_condition("w-equals-norm", w, opn, cfg.decision_margin * std::max(1.0, opn)));
    battery.conditions.push_back(make_condition("dw-norm-form", dw, dw_norm_form,
                                                cfg.decision_margin * std::max(1.0, dw_norm_form)));
    battery.conditions.push_back(make_condition("gram-dominated", w * w, gram_top,
                                                cfg.decision_margin * std::max(1.0, gram_top)));
    battery.consistent = battery_consistency(battery.conditions);
    return battery;
}

EquivalenceBattery power_parallelism_battery(const ComplexMatrix& t, const ToleranceConfig& cfg) {
    const double opn = op_norm(t).value;
    const double w = numerical_radius(t, cfg).value;
    const double dw = davis_wielandt_radius(t, cfg).value;
    const double dw_cap = std::sqrt(w * w + std::pow(opn, 4));
    const double w_sq = numerical_radius(t * t, cfg).value;
    const ComplexMatrix triple(t.mat() * t.mat().adjoint() * t.mat());
    const double w_triple = numerical_radius(triple, cfg).value;

    EquivalenceBattery battery;
    battery.conditions.push_back(make_condition("dw-equality", dw, dw_cap,
                                                cfg.decision_margin * std::max(1.0, dw_cap)));
    battery.conditions.push_back(make_condition("parallel-to-identity", w, opn,
                                                cfg.decision_margin * std::max(1.0, opn)));
    battery.conditions.push_back(make_condition(
        "square-pairing", w_sq, opn * opn, cfg.decision_margin * std::max(1.0, opn * opn)));
    battery.conditions.push_back(make_condition(
        "triple-pairing", w_triple, std::pow(opn, 3),
        cfg.decision_margin * std::max(1.0, std::pow(opn, 3))));
    battery.consistent = battery_consistency(battery.conditions);
    battery.details =
        "square-pairing realizes parallelism of T to T*; triple-pairing realizes parallelism of "
        "T*T to T*";
    return battery;
}

EquivalenceBattery rank_one_dependence_battery(const ComplexVector& x, const ComplexVector& y,
                                               const ToleranceConfig& cfg) {
    if (x.norm() == 0.0 || y.norm() == 0.0)
        throw std::invalid_argument("rank_one_dependence_battery: vectors must be nonzero");
    const ComplexMatrix a = rank_one(x, y);
    const double norm_xy = x.norm() * y.norm();
    const double w = numerical_radius(a, cfg).value;
    const double dw = davis_wielandt_radius(a, cfg).value;
    const double dw_cap = std::sqrt(w * w + std::pow(norm_xy, 4));
    const double cosine = std::abs(y.dot(x)) / norm_xy;

    EquivalenceBattery battery;
    battery.conditions.push_back(make_condition("dw-equality", dw, dw_cap,
                                                cfg.decision_margin * std::max(1.0, dw_cap)));
    battery.conditions.push_back(
        make_condition("linear-dependence", cosine, 1.0, cfg.decision_margin));
    battery.consistent = battery_consistency(battery.conditions);

    const double w_closed = 0.5 * (std::abs(y.dot(x)) + norm_xy);
    battery.details = "w closed-form relative residual = " +
                      format_sci(std::abs(w - w_closed) / std::max(1e-300, w_closed));
    return battery;
}

EquivalenceBattery attainment_battery(const ComplexMatrix& t, const ToleranceConfig& cfg) {
    const double opn = op_norm(t).value;
    const RadiusResult w = numerical_radius(t, cfg);
    const double dw = davis_wielandt_radius(t, cfg).value;
    const double dw_cap = std::sqrt(w.value * w.value + std::pow(opn, 4));

    EquivalenceBattery battery;
    battery.conditions.push_back(make_condition("dw-equality", dw, dw_cap,
                                                cfg.decision_margin * std::max(1.0, dw_cap)));
    battery.conditions.push_back(make_condition("radius-attainment", w.value, opn,
                                                cfg.decision_margin * std::max(1.0, opn)));

    // At the radius witness, dependence of Tx + gamma x on x for all gamma
    // collapses to |<Tx, x>| = ||Tx|| = ||T||.
    const VectorXc xv = w.witness.vec();
    const VectorXc tx = t.mat() * xv;
    const double z_mod = std::abs(xv.dot(tx));
    battery.conditions.push_back(make_condition("witness-dependence", z_mod, opn,
                                                cfg.decision_margin * std::max(1.0, opn)));
    battery.consistent = battery_consistency(battery.conditions);

    double worst_cs = 0.0;
    for (int k = 0; k < 25; ++k) {
        const Complex gamma = std::polar(0.1 + 2.0 * opn * k / 24.0, 2.0 * std::numbers::pi * k / 25.0);
        const VectorXc u = tx + gamma * xv;
        if (u.norm() <= 1e-12 * (tx.norm() + std::abs(gamma))) continue;
        worst_cs = std::max(worst_cs, (u.norm() - std::abs(xv.dot(u))) / u.norm());
    }
    battery.details = "witness |<Tx,x>| = " + format_sci(z_mod) +
                      "; max Cauchy-Schwarz defect of (Tx+gx, x) = " + format_sci(worst_cs);
    return battery;
}

ComplexMatrix shift_truncation(int n) {
    if (n < 2) throw std::invalid_argument("shift_truncation: need n >= 2");
    MatrixXc s = MatrixXc::Zero(n, n);
    for (int k = 0; k + 1 < n; ++k) s(k + 1, k) = Complex(1.0, 0.0);
    return ComplexMatrix(std::move(s));
}

std::vector<ShiftRow> shift_truncation_demo(const std::vector<int>& sizes,
                                            const ToleranceConfig& cfg) {
    std::vector<ShiftRow> rows;
    rows.reserve(sizes.size());
    for (int n : sizes) {
        const ComplexMatrix s = shift_truncation(n);
        ShiftRow row;
        row.n = n;
        row.op_norm_value = op_norm(s).value;
        row.w = numerical_radius(s, cfg).value;
        row.dw = davis_wielandt_radius(s, cfg).value;
        row.sqrt2_gap = std::numbers::sqrt2 - row.dw;
        row.norm_attained = row.w >= row.op_norm_value - cfg.decision_margin;
        rows.push_back(row);
    }
    return rows;
}

std::string validate_shift_table(const std::vector<ShiftRow>& rows) {
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (rows[i + 1].n <= rows[i].n) return "sizes must be strictly increasing";
        if (rows[i + 1].w <= rows[i].w)
            return "w not strictly increasing between n=" + std::to_string(rows[i].n) + " and n=" +
                   std::to_string(rows[i + 1].n);
        if (rows[i + 1].dw <= rows[i].dw)
            return "dw not strictly increasing between n=" + std::to_string(rows[i].n) + " and n=" +
                   std::to_string(rows[i + 1].n);
        if (rows[i + 1].sqrt2_gap >= rows[i].sqrt2_gap)
            return "sqrt(2) gap not decreasing between n=" + std::to_string(rows[i].n) + " and n=" +
                   std::to_string(rows[i + 1].n);
    }
    for (const ShiftRow& r : rows) {
        if (r.norm_attained)
            return "numerical radius attained the norm at finite truncation n=" + std::to_string(r.n);
        if (r.sqrt2_gap <= 0.0)
            return "dw exceeded sqrt(2) at n=" + std::to_string(r.n);
    }
    return "";
}

}  // namespace opgeom
