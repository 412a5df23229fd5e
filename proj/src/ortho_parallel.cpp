#include "opgeom/ortho_parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "opgeom/operator_core.hpp"
#include "opgeom/radii.hpp"
#include "opgeom/rng.hpp"

namespace opgeom {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format_sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

Complex pairing(const MatrixXc& t, const MatrixXc& s, const VectorXc& x) {
    return (s * x).dot(t * x);  // <Tx, Sx>
}

/// Membership verdict: the support margin decides the clear cases; on the
/// boundary band a witness that attains the criterion certifies membership
/// (degenerate ranges such as segments put every member on the boundary).
Verdict membership_verdict(double margin, double attained_deviation, double dm) {
    if (margin < -dm) return Verdict::fails;
    if (margin > dm) return Verdict::holds;
    return attained_deviation <= 10.0 * dm ? Verdict::holds : Verdict::marginal;
}

/// 25 gamma samples covering the disk |gamma| <= radius: the origin, and
/// three rings of eight phases.
std::vector<Complex> gamma_disk_grid(double radius) {
    std::vector<Complex> g;
    g.push_back(Complex(0.0, 0.0));
    for (double frac : {0.25, 0.6, 1.0})
        for (int k = 0; k < 8; ++k)
            g.push_back(std::polar(frac * radius, kTwoPi * k / 8.0));
    return g;
}

std::vector<double> gamma_real_grid(double radius) {
    std::vector<double> g;
    for (int k = 0; k < 25; ++k) g.push_back(-radius + 2.0 * radius * k / 24.0);
    return g;
}

}  // namespace

namespace detail {

MatrixXc subspace_intersection(const MatrixXc& va, const MatrixXc& vb, double subspace_tol) {
    if (va.cols() == 0 || vb.cols() == 0) return MatrixXc(va.rows(), 0);
    const Svd svd = complex_svd(va.adjoint() * vb);
    Eigen::Index k = 0;
    while (k < svd.sigma.size() && svd.sigma[k] >= 1.0 - subspace_tol) ++k;
    return va * svd.u.leftCols(k);
}

double min_norm_over_gamma(const MatrixXc& t, const MatrixXc& s, double radius, int points) {
    auto objective = [&](Complex gamma) { return complex_svd(t + gamma * s).sigma[0]; };
    double best = objective(Complex(0.0, 0.0));
    Complex gbest(0.0, 0.0);
    const double h0 = 2.0 * radius / (points - 1);
    for (int i = 0; i < points; ++i)
        for (int j = 0; j < points; ++j) {
            const Complex gamma(-radius + i * h0, -radius + j * h0);
            const double v = objective(gamma);
            if (v < best) { best = v; gbest = gamma; }
        }
    double h = h0;
    while (h > 1e-8 * std::max(1.0, radius)) {
        bool moved = false;
        for (const Complex d : {Complex(h, 0), Complex(-h, 0), Complex(0, h), Complex(0, -h)}) {
            const double v = objective(gbest + d);
            if (v < best) { best = v; gbest = gbest + d; moved = true; }
        }
        if (!moved) h *= 0.5;
    }
    return best;
}

}  // namespace detail

ComplexMatrix compressed_form(const ComplexMatrix& t, const ComplexMatrix& s,
                              const ToleranceConfig& cfg) {
    if (t.dim() != s.dim()) throw std::invalid_argument("compressed_form: dimension mismatch");
    const NormingBasis basis = norming_basis(t, cfg);
    return ComplexMatrix(basis.V.adjoint() * (s.mat().adjoint() * t.mat()) * basis.V);
}

DecisionCertificate in_numerical_range(const ComplexMatrix& m, Complex z,
                                       const ToleranceConfig& cfg) {
    const ComplexMatrix shifted(m.mat() - z * MatrixXc::Identity(m.dim(), m.dim()));
    const OriginDistance od = origin_distance(shifted, cfg);

    DecisionCertificate cert;
    cert.margin = -od.signed_distance;
    cert.witness = od.argmin;
    const Complex at_witness = rayleigh(m, od.argmin);
    cert.verdict = membership_verdict(cert.margin, std::abs(at_witness - z), cfg.decision_margin);
    cert.notes = "witness value deviation |<My,y> - z| = " + format_sci(std::abs(at_witness - z));
    return cert;
}

DecisionCertificate is_birkhoff_orthogonal(const ComplexMatrix& t, const ComplexMatrix& s,
                                           const ToleranceConfig& cfg) {
    const NormingBasis basis = norming_basis(t, cfg);
    const ComplexMatrix m(basis.V.adjoint() * (s.mat().adjoint() * t.mat()) * basis.V);
    const OriginDistance od = origin_distance(m, cfg);

    DecisionCertificate cert;
    cert.margin = -od.signed_distance;
    cert.witness = UnitVector::normalized(basis.V * od.argmin.vec());
    cert.verdict = membership_verdict(cert.margin, od.attained, cfg.decision_margin);
    std::ostringstream notes;
    notes << "pairing modulus at witness = " << format_sci(od.attained);

    if (cert.verdict != Verdict::fails) {
        // Direct cross-check on a coarse gamma grid: no gamma may push
        // ||T + gamma S|| below ||T||.
        const double tn = op_norm(t).value;
        const double sn = op_norm(s).value;
        if (sn > 0.0) {
            const double radius = 2.0 * tn / sn;
            const double min_norm = detail::min_norm_over_gamma(t.mat(), s.mat(), radius, 13);
            notes << "; min ||T+gS|| - ||T|| over coarse grid = " << format_sci(min_norm - tn);
        }
    }
    cert.notes = notes.str();
    return cert;
}

DecisionCertificate is_r_orthogonal(const ComplexMatrix& t, const ComplexMatrix& s,
                                    const ToleranceConfig& cfg) {
    const NormingBasis basis = norming_basis(t, cfg);
    const MatrixXc m = basis.V.adjoint() * (s.mat().adjoint() * t.mat()) * basis.V;
    const HermEig eig = hermitian_eig(0.5 * (m + m.adjoint()));
    const Eigen::Index k = m.rows();
    const double lmin = eig.values[0];
    const double lmax = eig.values[k - 1];

    DecisionCertificate cert;
    cert.margin = std::min(-lmin, lmax);
    const VectorXc y = detail::hermitian_zero_combination(eig.vectors.col(0), lmin,
                                                          eig.vectors.col(k - 1), lmax);
    cert.witness = UnitVector::normalized(basis.V * y);
    const double re_pairing = pairing(t.mat(), s.mat(), cert.witness->vec()).real();
    cert.verdict = membership_verdict(cert.margin, std::abs(re_pairing), cfg.decision_margin);
    cert.notes = "Re <Tx, Sx> at witness = " + format_sci(re_pairing);
    return cert;
}

DecisionCertificate is_norm_parallel(const ComplexMatrix& t, const ComplexMatrix& s,
                                     const ToleranceConfig& cfg) {
    if (t.dim() != s.dim()) throw std::invalid_argument("is_norm_parallel: dimension mismatch");
    const double tn = op_norm(t).value;
    const double sn = op_norm(s).value;

    DecisionCertificate cert;
    if (tn == 0.0 || sn == 0.0) {
        cert.verdict = Verdict::holds;
        cert.margin = 0.0;
        cert.unimodular = Complex(1.0, 0.0);
        cert.notes = "trivial: one operand is the zero operator";
        return cert;
    }

    const ComplexMatrix product(s.mat().adjoint() * t.mat());
    const RadiusResult w = numerical_radius(product, cfg);
    cert.margin = w.value - tn * sn;
    cert.verdict = verdict_one_sided(std::min(cert.margin, 0.0), cfg.decision_margin);
    cert.witness = w.witness;

    // Aligning unimodular factor: pick the phase that best recreates
    // ||T + lambda S|| = ||T|| + ||S||, then re-verify directly.
    const Complex pair = pairing(t.mat(), s.mat(), w.witness.vec());
    const double psi = std::arg(pair);
    Complex lambda = std::polar(1.0, psi);
    double best_norm = -1.0;
    for (const Complex cand : {std::polar(1.0, psi), std::polar(1.0, -psi), std::polar(1.0, psi + std::numbers::pi),
                               std::polar(1.0, -psi + std::numbers::pi)}) {
        const double nn = complex_svd(t.mat() + cand * s.mat()).sigma[0];
        if (nn > best_norm) { best_norm = nn; lambda = cand; }
    }
    cert.unimodular = lambda;
    cert.notes = "||T + lambda S|| - (||T|| + ||S||) = " + format_sci(best_norm - (tn + sn));
    return cert;
}

EquivalenceReport check_parallelism_characterization(const ComplexMatrix& t,
                                                     const ComplexMatrix& s,
                                                     const ToleranceConfig& cfg) {
    EquivalenceReport rep;
    rep.name = "parallelism-characterization";

    const DecisionCertificate par = is_norm_parallel(t, s, cfg);
    rep.side_a = par.verdict;
    rep.margin_a = par.margin;

    const double tn = op_norm(t).value;
    const double sn = op_norm(s).value;
    if (tn == 0.0 || sn == 0.0)
        throw std::invalid_argument("check_parallelism_characterization: operands must be nonzero");

    const NormingBasis bt = norming_basis(t, cfg);
    const NormingBasis bs = norming_basis(s, cfg);
    const MatrixXc inter = detail::subspace_intersection(bt.V, bs.V, cfg.subspace_tol);
    std::ostringstream details;

    if (inter.cols() == 0) {
        rep.side_b = Verdict::fails;
        rep.margin_b = -tn * sn;
        details << "norming-set intersection empty";
    } else {
        // Best candidate inside the intersection: the vector maximizing
        // |<Tx, Sx>| there, which decides existence for the whole family.
        const ComplexMatrix comp(inter.adjoint() * (s.mat().adjoint() * t.mat()) * inter);
        const RadiusResult wc = numerical_radius(comp, cfg);
        const VectorXc x = (inter * wc.witness.vec()).normalized();
        rep.margin_b = std::abs(pairing(t.mat(), s.mat(), x)) - tn * sn;
        rep.side_b = verdict_one_sided(std::min(rep.margin_b, 0.0), cfg.decision_margin);

        // Redundancy: Cauchy-Schwarz equality of Tx + gamma Sx against Sx
        // across the gamma grid.
        double worst = 0.0;
        const VectorXc tx = t.mat() * x;
        const VectorXc sx = s.mat() * x;
        for (const Complex gamma : gamma_disk_grid(2.0 * tn / sn)) {
            const VectorXc u = tx + gamma * sx;
            const double span = (tx.norm() + std::abs(gamma) * sx.norm()) * sx.norm();
            if (u.norm() * sx.norm() <= 1e-12 * span) continue;  // dependent by collapse
            const double dev = u.norm() * sx.norm() - std::abs(sx.dot(u));
            worst = std::max(worst, dev / (u.norm() * sx.norm()));
        }
        details << "max Cauchy-Schwarz defect over gamma grid = " << format_sci(worst);
        if (rep.side_b == Verdict::holds && worst > 1e-6) rep.side_b = Verdict::marginal;
    }

    rep.consistent = consistency_of({rep.side_a, rep.side_b});
    rep.details = details.str();
    return rep;
}

namespace {

EquivalenceReport pythagoras_report(const ComplexMatrix& t, const ComplexMatrix& s,
                                    const ToleranceConfig& cfg, bool real_gamma) {
    EquivalenceReport rep;
    rep.name = real_gamma ? "r-orthogonality-pythagoras" : "orthogonality-pythagoras";

    const DecisionCertificate cert =
        real_gamma ? is_r_orthogonal(t, s, cfg) : is_birkhoff_orthogonal(t, s, cfg);
    rep.side_a = cert.verdict;
    rep.margin_a = cert.margin;

    const VectorXc x = cert.witness->vec();
    const VectorXc tx = t.mat() * x;
    const VectorXc sx = s.mat() * x;
    const double tn = op_norm(t).value;
    const double sn = op_norm(s).value;
    const double radius = sn > 0.0 ? 2.0 * tn / sn : 1.0;

    double rho = 0.0;
    auto accumulate = [&](Complex gamma) {
        const VectorXc u = tx + gamma * sx;
        const double lhs = u.squaredNorm();
        const double rhs = tx.squaredNorm() + std::norm(gamma) * sx.squaredNorm();
        const double scale = std::max(1e-300, (tx.norm() + std::abs(gamma) * sx.norm()) *
                                                  (tx.norm() + std::abs(gamma) * sx.norm()));
        rho = std::max(rho, std::abs(lhs - rhs) / scale);
    };
    if (real_gamma)
        for (double g : gamma_real_grid(radius)) accumulate(Complex(g, 0.0));
    else
        for (Complex g : gamma_disk_grid(radius)) accumulate(g);

    rep.margin_b = -rho;
    rep.side_b = rho <= 1e-9 ? Verdict::holds : rho > 1e-6 ? Verdict::fails : Verdict::marginal;
    rep.consistent = consistency_of({rep.side_a, rep.side_b});
    rep.details = "max relative Pythagoras defect at candidate witness = " + format_sci(rho);
    return rep;
}

}  // namespace

EquivalenceReport check_orthogonality_pythagoras(const ComplexMatrix& t, const ComplexMatrix& s,
                                                 const ToleranceConfig& cfg) {
    return pythagoras_report(t, s, cfg, /*real_gamma=*/false);
}

EquivalenceReport check_r_orthogonality_pythagoras(const ComplexMatrix& t, const ComplexMatrix& s,
                                                   const ToleranceConfig& cfg) {
    EquivalenceReport rep = pythagoras_report(t, s, cfg, /*real_gamma=*/true);

    // Independent validation of the real-part shear identity on random data.
    CounterRng rng(cfg.rng_seed, /*stream=*/0x23);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const VectorXc a = rng.gaussian_vector(t.dim());
        const VectorXc b = rng.gaussian_vector(t.dim());
        const double gamma = 4.0 * rng.next_unit() - 2.0;
        const VectorXc shifted = a + Complex(gamma, 0.0) * b;
        const double lhs =
            shifted.squaredNorm() * b.squaredNorm() - std::pow(b.dot(shifted).real(), 2);
        const double rhs = a.squaredNorm() * b.squaredNorm() - std::pow(b.dot(a).real(), 2);
        const double scale =
            std::max(1e-300, std::pow(a.norm() + std::abs(gamma) * b.norm(), 2) * b.squaredNorm());
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    rep.details += "; real-shear identity max relative residual (1000 samples) = " + format_sci(worst);
    if (worst > 1e-10) rep.consistent = Consistency::disagree;
    return rep;
}

}  // namespace opgeom
