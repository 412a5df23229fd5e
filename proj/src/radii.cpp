#include "opgeom/radii.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "opgeom/operator_core.hpp"
#include "opgeom/rng.hpp"

namespace opgeom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

MatrixXc rotated_hermitian_part(const MatrixXc& m, double theta) {
    const Complex phase = std::polar(1.0, theta);
    MatrixXc r = phase * m;
    return 0.5 * (r + r.adjoint());
}

Eigen::VectorXd hermitian_eigenvalues(const MatrixXc& h) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SolverError("hermitian eigenvalue solve failed");
    return es.eigenvalues();
}

Complex rayleigh_raw(const MatrixXc& m, const VectorXc& x) {
    return x.dot(m * x);
}

/// Golden-section maximization of f on [a, b]; returns the best abscissa.
template <typename F>
double golden_max(F&& f, double a, double b, double xtol, double* fbest_out) {
    const double c = 2.0 / (1.0 + std::sqrt(5.0));
    double u = c * a + (1.0 - c) * b;
    double v = (1.0 - c) * a + c * b;
    double fu = f(u), fv = f(v);
    double xbest = fu >= fv ? u : v;
    double fbest = std::max(fu, fv);
    while (b - a > xtol) {
        if (fu < fv) {
            a = u;
            u = v;
            fu = fv;
            v = (1.0 - c) * a + c * b;
            fv = f(v);
        } else {
            b = v;
            v = u;
            fv = fu;
            u = c * a + (1.0 - c) * b;
            fu = f(u);
        }
        if (fu > fbest) { fbest = fu; xbest = u; }
        if (fv > fbest) { fbest = fv; xbest = v; }
    }
    if (fbest_out) *fbest_out = fbest;
    return xbest;
}

struct AngleSample {
    double theta;
    double lmin, lmax;
    VectorXc vmin, vmax;
};

std::vector<AngleSample> sweep_extremes(const MatrixXc& m, int points) {
    std::vector<AngleSample> samples;
    samples.reserve(points);
    const Eigen::Index n = m.rows();
    for (int j = 0; j < points; ++j) {
        const double theta = kTwoPi * j / points;
        const HermEig eig = hermitian_eig(rotated_hermitian_part(m, theta));
        samples.push_back(AngleSample{theta, eig.values[0], eig.values[n - 1],
                                      eig.vectors.col(0), eig.vectors.col(n - 1)});
    }
    return samples;
}

/// Gradient descent on the unit sphere minimizing |<Mx, x>|^2. Only ever
/// moves downhill, so it can sharpen but never spoil a candidate.
VectorXc rayleigh_descent(const MatrixXc& m, VectorXc x, int max_iters, double scale) {
    const MatrixXc mh = m.adjoint();
    x.normalize();
    double fx = std::norm(rayleigh_raw(m, x));
    double step = 0.5;
    const double gtol = 1e-14 * std::max(1.0, scale) * std::max(1.0, scale);
    for (int it = 0; it < max_iters; ++it) {
        const Complex z = rayleigh_raw(m, x);
        VectorXc grad = std::conj(z) * (m * x) + z * (mh * x);
        grad -= x.dot(grad) * x;  // tangent projection
        const double gnorm = grad.norm();
        if (gnorm <= gtol) break;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls) {
            VectorXc xn = (x - (step / gnorm) * grad).normalized();
            const double fn = std::norm(rayleigh_raw(m, xn));
            if (fn < fx) {
                x = xn;
                fx = fn;
                step *= 1.6;
                moved = true;
                break;
            }
            step *= 0.5;
            if (step < 1e-18) break;
        }
        if (!moved) break;
    }
    return x;
}

/// Rayleigh value of the two-parameter unit family
/// y(t, phi) = cos(t) e1 + e^{i phi} sin(t) e2 against a 2x2 matrix.
Complex two_by_two_value(const MatrixXc& c2, double t, double phi) {
    const double ct = std::cos(t), st = std::sin(t);
    const Complex e = std::polar(1.0, phi);
    return ct * ct * c2(0, 0) + st * st * c2(1, 1) + ct * st * (c2(0, 1) * e + c2(1, 0) * std::conj(e));
}

/// Searches the family above for the point of smallest |value| (the root
/// when 0 lies inside the range): coarse grid plus damped Newton on the
/// real/imaginary parts.
void two_by_two_argmin(const MatrixXc& c2, double* t_out, double* phi_out) {
    double best_t = 0.0, best_phi = 0.0;
    double best = std::abs(two_by_two_value(c2, 0.0, 0.0));
    const int nt = 48, np = 48;
    for (int i = 0; i <= nt; ++i) {
        const double t = kPi * i / nt;
        for (int j = 0; j < np; ++j) {
            const double phi = kTwoPi * j / np;
            const double v = std::abs(two_by_two_value(c2, t, phi));
            if (v < best) { best = v; best_t = t; best_phi = phi; }
        }
    }
    double t = best_t, phi = best_phi;
    for (int it = 0; it < 60 && best > 0.0; ++it) {
        const double ct = std::cos(t), st = std::sin(t);
        const Complex e = std::polar(1.0, phi);
        const Complex cross = c2(0, 1) * e + c2(1, 0) * std::conj(e);
        const Complex val = ct * ct * c2(0, 0) + st * st * c2(1, 1) + ct * st * cross;
        const Complex dt = (c2(1, 1) - c2(0, 0)) * std::sin(2.0 * t) + std::cos(2.0 * t) * cross;
        const Complex dphi = ct * st * (Complex(0, 1) * c2(0, 1) * e - Complex(0, 1) * c2(1, 0) * std::conj(e));
        // 2x2 real Newton step on (Re val, Im val).
        const double a = dt.real(), b = dphi.real(), c = dt.imag(), d = dphi.imag();
        const double det = a * d - b * c;
        double step_t, step_phi;
        if (std::abs(det) > 1e-30) {
            step_t = (d * val.real() - b * val.imag()) / det;
            step_phi = (-c * val.real() + a * val.imag()) / det;
        } else {
            // Singular Jacobian: fall back to gradient descent on |val|^2.
            const double gt = 2.0 * (val.real() * a + val.imag() * c);
            const double gp = 2.0 * (val.real() * b + val.imag() * d);
            const double gn = std::hypot(gt, gp);
            if (gn < 1e-30) break;
            step_t = 0.1 * gt / gn;
            step_phi = 0.1 * gp / gn;
        }
        double damp = 1.0;
        bool improved = false;
        for (int ls = 0; ls < 25; ++ls) {
            const double tn = t - damp * step_t;
            const double pn = phi - damp * step_phi;
            const double vn = std::abs(two_by_two_value(c2, tn, pn));
            if (vn < best) {
                t = tn;
                phi = pn;
                best = vn;
                improved = true;
                break;
            }
            damp *= 0.5;
        }
        if (!improved) break;
        if (best < 1e-16) break;
    }
    *t_out = t;
    *phi_out = phi;
}

/// Iterative chord construction of a unit y with <My, y> as close to 0 as
/// the geometry allows (exactly 0 up to tolerance when 0 lies in W(M)):
/// compress M onto the span of the current iterate and the support vector
/// opposite the current Rayleigh value, then solve the 2x2 subproblem.
VectorXc chord_membership_witness(const MatrixXc& m, VectorXc y, double scale) {
    const Eigen::Index n = m.rows();
    if (n == 1) return y;
    double best = std::abs(rayleigh_raw(m, y));
    for (int it = 0; it < 50; ++it) {
        const Complex z = rayleigh_raw(m, y);
        if (std::abs(z) <= 1e-14 * std::max(1.0, scale)) break;
        const Complex u = -z / std::abs(z);
        const HermEig eig = hermitian_eig(0.5 * (std::conj(u) * m + (std::conj(u) * m).adjoint()));
        VectorXc b = eig.vectors.col(n - 1);
        b -= y.dot(b) * y;
        if (b.norm() < 1e-10) {
            b = eig.vectors.col(0);
            b -= y.dot(b) * y;
        }
        if (b.norm() < 1e-10) break;
        b.normalize();
        MatrixXc v(n, 2);
        v.col(0) = y;
        v.col(1) = b;
        const MatrixXc c2 = v.adjoint() * m * v;
        double t, phi;
        two_by_two_argmin(c2, &t, &phi);
        VectorXc y2(2);
        y2 << Complex(std::cos(t), 0.0), std::polar(std::sin(t), phi);
        VectorXc yn = (v * y2).normalized();
        const double vn = std::abs(rayleigh_raw(m, yn));
        if (vn < best) {
            y = yn;
            best = vn;
        } else {
            break;
        }
    }
    return y;
}

struct SweepRefinement {
    double theta;
    double value;
};

/// Refine max over theta of lambda_min(Re(e^{i theta} M)) around grid index j.
SweepRefinement refine_min_support(const MatrixXc& m, const std::vector<AngleSample>& sweep, int j,
                                   double xtol) {
    const int k = static_cast<int>(sweep.size());
    const double dtheta = kTwoPi / k;
    const double lo = sweep[j].theta - dtheta;
    const double hi = sweep[j].theta + dtheta;
    double fbest = 0.0;
    const double theta = golden_max(
        [&](double th) { return hermitian_eigenvalues(rotated_hermitian_part(m, th))[0]; }, lo, hi,
        xtol, &fbest);
    return SweepRefinement{theta, fbest};
}

}  // namespace

namespace detail {

VectorXc hermitian_zero_combination(const VectorXc& v_min, double lambda_min, const VectorXc& v_max,
                                    double lambda_max) {
    if (lambda_min >= 0.0) return v_min;
    if (lambda_max <= 0.0) return v_max;
    // cos^2 * lmin + sin^2 * lmax = 0 with lmin < 0 < lmax.
    const double s2 = -lambda_min / (lambda_max - lambda_min);
    const double s = std::sqrt(s2);
    const double c = std::sqrt(1.0 - s2);
    return (c * v_min + s * v_max).normalized();
}

double crawford_value_cheap(const MatrixXc& m, int angles) {
    double best = -std::numeric_limits<double>::infinity();
    int jbest = 0;
    for (int j = 0; j < angles; ++j) {
        const double theta = kTwoPi * j / angles;
        const double v = hermitian_eigenvalues(rotated_hermitian_part(m, theta))[0];
        if (v > best) { best = v; jbest = j; }
    }
    if (best <= 0.0) return 0.0;  // origin inside: no refinement needed
    const double dtheta = kTwoPi / angles;
    double fbest = best;
    golden_max([&](double th) { return hermitian_eigenvalues(rotated_hermitian_part(m, th))[0]; },
               jbest * dtheta - dtheta, jbest * dtheta + dtheta, 1e-6, &fbest);
    return std::max(0.0, std::max(best, fbest));
}

}  // namespace detail

SupportProfile support_profile(const ComplexMatrix& m, int points) {
    if (points < 4) throw std::invalid_argument("support_profile: need at least 4 angles");
    SupportProfile p;
    p.angles.reserve(points);
    p.support_values.reserve(points);
    p.witnesses.reserve(points);
    const Eigen::Index n = m.dim();
    for (int j = 0; j < points; ++j) {
        const double theta = kTwoPi * j / points;
        const HermEig eig = hermitian_eig(rotated_hermitian_part(m.mat(), theta));
        p.angles.push_back(theta);
        p.support_values.push_back(eig.values[n - 1]);
        p.witnesses.push_back(UnitVector::normalized(eig.vectors.col(n - 1)));
    }
    return p;
}

RadiusResult numerical_radius(const ComplexMatrix& t, const ToleranceConfig& cfg) {
    cfg.validate();
    const MatrixXc& m = t.mat();
    const Eigen::Index n = t.dim();
    const double opn = op_norm(t).value;
    const double dtheta = kTwoPi / cfg.sweep_points;

    double grid_best = -std::numeric_limits<double>::infinity();
    int jbest = 0;
    for (int j = 0; j < cfg.sweep_points; ++j) {
        const double v = hermitian_eigenvalues(rotated_hermitian_part(m, kTwoPi * j / cfg.sweep_points))[n - 1];
        if (v > grid_best) { grid_best = v; jbest = j; }
    }

    const double xtol = std::min(cfg.refine_tol, cfg.refine_tol / std::max(1.0, opn));
    double refined = grid_best;
    const double theta_hat = golden_max(
        [&](double th) { return hermitian_eigenvalues(rotated_hermitian_part(m, th))[n - 1]; },
        jbest * dtheta - dtheta, jbest * dtheta + dtheta, xtol, &refined);

    const HermEig eig = hermitian_eig(rotated_hermitian_part(m, theta_hat));
    UnitVector witness = UnitVector::normalized(eig.vectors.col(n - 1));
    const double attained = std::abs(rayleigh(t, witness));

    const double value = std::max(refined, attained);
    const double upper = std::max(value, std::min(opn, grid_best + 0.5 * opn * dtheta));
    return RadiusResult{value, witness, attained, upper, dtheta};
}

OriginDistance origin_distance(const ComplexMatrix& m_in, const ToleranceConfig& cfg) {
    cfg.validate();
    const MatrixXc& m = m_in.mat();
    const Eigen::Index n = m_in.dim();
    const double scale = m.norm();
    const double dtheta = kTwoPi / cfg.sweep_points;

    if (scale == 0.0) {
        VectorXc e1 = VectorXc::Zero(n);
        e1[0] = Complex(1.0, 0.0);
        return OriginDistance{0.0, UnitVector::normalized(e1), 0.0, dtheta};
    }

    const std::vector<AngleSample> sweep = sweep_extremes(m, cfg.sweep_points);
    int jbest = 0;
    for (int j = 1; j < cfg.sweep_points; ++j)
        if (sweep[j].lmin > sweep[jbest].lmin) jbest = j;

    const double xtol = std::min(cfg.refine_tol, cfg.refine_tol / std::max(1.0, scale));
    const SweepRefinement ref = refine_min_support(m, sweep, jbest, xtol);
    const double sd = std::max(ref.value, sweep[jbest].lmin);

    VectorXc y;
    if (sd > 0.0) {
        // Origin outside: build the nearest-point witness on the supporting
        // face at the refined angle.
        const HermEig eig = hermitian_eig(rotated_hermitian_part(m, ref.theta));
        const double ftol = std::max(1e-12, 1e-9 * scale);
        Eigen::Index kc = 1;
        while (kc < n && eig.values[kc] <= eig.values[0] + ftol) ++kc;
        const MatrixXc vc = eig.vectors.leftCols(kc);
        const MatrixXc mc = vc.adjoint() * m * vc;
        const Complex phase = std::polar(1.0, ref.theta);
        const MatrixXc rot = phase * mc;
        const MatrixXc k_im = (rot - rot.adjoint()) / Complex(0.0, 2.0);
        const HermEig keig = hermitian_eig(k_im);
        VectorXc yc;
        if (keig.values[0] <= 0.0 && keig.values[kc - 1] >= 0.0) {
            yc = detail::hermitian_zero_combination(keig.vectors.col(0), keig.values[0],
                                                    keig.vectors.col(kc - 1), keig.values[kc - 1]);
        } else {
            yc = std::abs(keig.values[0]) <= std::abs(keig.values[kc - 1]) ? keig.vectors.col(0)
                                                                           : keig.vectors.col(kc - 1);
        }
        y = (vc * yc).normalized();
    } else {
        // Origin inside: scan the closed-form zero combinations of every
        // sampled rotation, then walk chords through 2x2 compressions.
        double best = std::numeric_limits<double>::infinity();
        for (const AngleSample& s : sweep) {
            const VectorXc cand =
                detail::hermitian_zero_combination(s.vmin, s.lmin, s.vmax, s.lmax);
            const double v = std::abs(rayleigh_raw(m, cand));
            if (v < best) { best = v; y = cand; }
        }
        y = chord_membership_witness(m, y, scale);
    }

    y = rayleigh_descent(m, y, 300, scale);
    const double attained = std::abs(rayleigh_raw(m, y));
    return OriginDistance{sd, UnitVector::normalized(y), attained, dtheta};
}

RadiusResult crawford_number(const ComplexMatrix& t, const ToleranceConfig& cfg) {
    const OriginDistance od = origin_distance(t, cfg);
    const double value = std::max(0.0, od.signed_distance);
    return RadiusResult{value, od.argmin, value, std::max(value, od.attained), od.sweep_resolution};
}

namespace {

struct ShellParts {
    MatrixXc h1, h2, gram;
};

ShellParts shell_parts(const MatrixXc& m) {
    return ShellParts{0.5 * (m + m.adjoint()), (m - m.adjoint()) / Complex(0.0, 2.0),
                      m.adjoint() * m};
}

struct ShellPoint {
    double p, q, r;
};

ShellPoint shell_point(const MatrixXc& m, const VectorXc& x) {
    const Complex z = rayleigh_raw(m, x);
    return ShellPoint{z.real(), z.imag(), (m * x).squaredNorm()};
}

double shell_value(ShellObjective obj, const ShellPoint& s) {
    const double zz = s.p * s.p + s.q * s.q;
    return obj == ShellObjective::radius_sq ? zz + s.r * s.r : zz + s.r;
}

/// One linearized ascent step: top eigenvector of the gradient pencil. For a
/// convex objective of (p, q, r) this is monotone in the objective.
VectorXc shell_ascent_step(const ShellParts& parts, ShellObjective obj, const ShellPoint& s) {
    const double gr = obj == ShellObjective::radius_sq ? 2.0 * s.r : 1.0;
    const MatrixXc pencil = (2.0 * s.p) * parts.h1 + (2.0 * s.q) * parts.h2 + gr * parts.gram;
    const HermEig eig = hermitian_eig(pencil);
    return eig.vectors.col(eig.vectors.cols() - 1);
}

VectorXc shell_polish(const MatrixXc& m, const ShellParts& parts, ShellObjective obj, VectorXc x,
                      double tol) {
    double fx = shell_value(obj, shell_point(m, x));
    for (int it = 0; it < 80; ++it) {
        const VectorXc xn = shell_ascent_step(parts, obj, shell_point(m, x));
        const double fn = shell_value(obj, shell_point(m, xn));
        if (fn <= fx + tol * std::max(1.0, std::abs(fx))) {
            if (fn > fx) x = xn;
            break;
        }
        x = xn;
        fx = fn;
    }
    return x;
}

std::vector<Eigen::Vector3d> fibonacci_directions(int count) {
    std::vector<Eigen::Vector3d> dirs;
    dirs.reserve(count + 6);
    const double ga = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / count;
        const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
        dirs.emplace_back(rad * std::cos(ga * i), rad * std::sin(ga * i), z);
    }
    // Axis directions guarantee the extreme points of each coordinate are
    // always sampled (the top T*T eigenvector in particular).
    for (int a = 0; a < 3; ++a)
        for (double sgn : {1.0, -1.0}) {
            Eigen::Vector3d e = Eigen::Vector3d::Zero();
            e[a] = sgn;
            dirs.push_back(e);
        }
    return dirs;
}

}  // namespace

ShellMax maximize_shell_functional(const ComplexMatrix& t, const ToleranceConfig& cfg,
                                   ShellObjective objective) {
    cfg.validate();
    const MatrixXc& m = t.mat();
    const Eigen::Index n = t.dim();
    const ShellParts parts = shell_parts(m);

    const long long requested = static_cast<long long>(cfg.sweep_points) * cfg.sweep_points;
    const int lattice = static_cast<int>(std::min<long long>(requested, 4096));

    VectorXc best = VectorXc::Zero(n);
    best[0] = Complex(1.0, 0.0);
    double fbest = shell_value(objective, shell_point(m, best));
    for (const Eigen::Vector3d& u : fibonacci_directions(lattice)) {
        const MatrixXc pencil = u[0] * parts.h1 + u[1] * parts.h2 + u[2] * parts.gram;
        const HermEig eig = hermitian_eig(pencil);
        const VectorXc x = eig.vectors.col(n - 1);
        const double f = shell_value(objective, shell_point(m, x));
        if (f > fbest) { fbest = f; best = x; }
    }

    const double tol = 0.01 * cfg.refine_tol;
    VectorXc polished = shell_polish(m, parts, objective, best, tol);
    double fpol = shell_value(objective, shell_point(m, polished));
    if (fpol < fbest) { polished = best; fpol = fbest; }

    CounterRng rng(cfg.rng_seed, /*stream=*/0xD3);
    for (int r = 0; r < cfg.oracle_samples; ++r) {
        VectorXc x = shell_polish(m, parts, objective, rng.random_unit_vector(n).vec(), tol);
        const double f = shell_value(objective, shell_point(m, x));
        if (f > fpol) { fpol = f; polished = x; }
    }
    return ShellMax{fpol, UnitVector::normalized(polished)};
}

RadiusResult davis_wielandt_radius(const ComplexMatrix& t, const ToleranceConfig& cfg) {
    const ShellMax sm = maximize_shell_functional(t, cfg, ShellObjective::radius_sq);
    const double value = std::sqrt(std::max(0.0, sm.value));

    const double w = numerical_radius(t, cfg).value;
    const double opn = op_norm(t).value;
    const double z_at_witness = std::abs(rayleigh(t, sm.witness));
    const double w_eff = std::max(w, z_at_witness);
    const double upper = std::max(value, std::sqrt(w_eff * w_eff + std::pow(opn, 4)));
    return RadiusResult{value, sm.witness, value, upper, kTwoPi / cfg.sweep_points};
}

bool BoundsReport::all_hold_or_marginal() const {
    for (const InequalityReport& r : checks)
        if (r.verdict == Verdict::fails) return false;
    return true;
}

BoundsReport check_radius_bounds(const ComplexMatrix& t, const ToleranceConfig& cfg) {
    cfg.validate();
    BoundsReport report;
    const double dm = cfg.decision_margin;
    const double opn = op_norm(t).value;
    const double w = numerical_radius(t, cfg).value;
    const double dw = davis_wielandt_radius(t, cfg).value;

    report.checks.push_back(make_inequality_report("w-lower", 0.5 * opn, w, dm));
    report.checks.push_back(make_inequality_report("w-upper", w, opn, dm));
    report.checks.push_back(
        make_inequality_report("dw-lower", std::max(w, opn * opn), dw, dm));
    report.checks.push_back(
        make_inequality_report("dw-upper", dw, std::sqrt(w * w + std::pow(opn, 4)), dm));

    ComplexMatrix power = t;
    for (int k = 2; k <= 4; ++k) {
        power = power * t;
        const double wk = numerical_radius(power, cfg).value;
        report.checks.push_back(
            make_inequality_report("power-" + std::to_string(k), wk, std::pow(w, k), dm));
    }

    // Scaling trichotomy at |alpha| = 1/2, 1, 2.
    const double dw_half = davis_wielandt_radius(Complex(0.5, 0.0) * t, cfg).value;
    report.checks.push_back(make_inequality_report("dw-scale-half", dw_half, 0.5 * dw, dm));
    const double dw_twice = davis_wielandt_radius(Complex(2.0, 0.0) * t, cfg).value;
    report.checks.push_back(make_inequality_report("dw-scale-twice", 2.0 * dw, dw_twice, dm));
    const Complex alpha1 = std::polar(1.0, kPi / 3.0);
    const double dw_phase = davis_wielandt_radius(alpha1 * t, cfg).value;
    {
        InequalityReport eq;
        eq.name = "dw-scale-unimodular";
        eq.lhs = dw_phase;
        eq.rhs = dw;
        eq.slack = eq.rhs - eq.lhs;
        const double tol = std::max(dm, 1e-7 * (1.0 + dw));
        eq.verdict = std::abs(eq.slack) <= tol      ? Verdict::holds
                     : std::abs(eq.slack) <= 10 * tol ? Verdict::marginal
                                                      : Verdict::fails;
        report.checks.push_back(eq);
    }

    // Sum bound against the paired operator S = T*.
    const ComplexMatrix s = adjoint(t);
    const double dw_s = davis_wielandt_radius(s, cfg).value;
    const double dw_sum = davis_wielandt_radius(t + s, cfg).value;
    const double d = dw + dw_s;
    report.checks.push_back(
        make_inequality_report("dw-sum", dw_sum, std::sqrt(2.0 * d + 4.0 * d * d), dm));
    return report;
}

}  // namespace opgeom
