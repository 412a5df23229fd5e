#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "opgeom/dw_suite.hpp"
#include "opgeom/ensemble.hpp"
#include "opgeom/identities.hpp"
#include "opgeom/matrix_io.hpp"
#include "opgeom/operator_core.hpp"
#include "opgeom/ortho_parallel.hpp"
#include "opgeom/parallel.hpp"
#include "opgeom/radii.hpp"
#include "opgeom/report.hpp"
#include "opgeom/rng.hpp"

namespace {

using namespace opgeom;

constexpr int kExitOk = 0;
constexpr int kExitTheoryViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolverFailure = 3;

void add_tolerance_flags(CLI::App* cmd, ToleranceConfig& cfg, bool with_seed = true) {
    cmd->add_option("--sweep-points", cfg.sweep_points, "circle sweep resolution (>= 16)")
        ->capture_default_str();
    cmd->add_option("--refine-tol", cfg.refine_tol, "local refinement tolerance")
        ->capture_default_str();
    cmd->add_option("--decision-margin", cfg.decision_margin, "tri-state verdict band")
        ->capture_default_str();
    cmd->add_option("--subspace-tol", cfg.subspace_tol, "norming subspace clustering tolerance")
        ->capture_default_str();
    cmd->add_option("--unit-tol", cfg.unit_tol, "unit vector norm tolerance")
        ->capture_default_str();
    cmd->add_option("--samples", cfg.oracle_samples, "random-restart count for the shell polish")
        ->capture_default_str();
    // verify exposes a single --seed driving both the ensemble and the
    // seeded solver internals.
    if (with_seed)
        cmd->add_option("--seed", cfg.rng_seed, "seed for seeded internals")->capture_default_str();
}

std::string vector_json(const VectorXc& v) {
    std::string out = "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += "[" + format_double17(v[i].real()) + ", " + format_double17(v[i].imag()) + "]";
    }
    return out + "]";
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

// ---------------------------------------------------------------- compute --

int run_compute(const std::string& functional, const std::string& input,
                const ToleranceConfig& cfg) {
    const ComplexMatrix m = load_matrix(input);
    RadiusResult r = [&] {
        if (functional == "opnorm") return op_norm(m);
        if (functional == "minmod") return min_modulus(m);
        if (functional == "w") return numerical_radius(m, cfg);
        if (functional == "c") return crawford_number(m, cfg);
        if (functional == "dw") return davis_wielandt_radius(m, cfg);
        throw std::invalid_argument("unknown functional: " + functional);
    }();
    std::string out = "{\"functional\": \"" + functional + "\"";
    out += ", \"value\": " + format_double17(r.value);
    out += ", \"lower\": " + format_double17(r.lower);
    out += ", \"upper\": " + format_double17(r.upper);
    out += ", \"sweep_resolution\": " + format_double17(r.sweep_resolution);
    out += ", \"witness\": " + vector_json(r.witness.vec());
    out += ", \"witness_norm_defect\": " + format_double17(r.witness.norm_defect());
    out += "}";
    std::cout << out << "\n";
    return kExitOk;
}

// ------------------------------------------------------------------ check --

int run_check(const std::string& predicate, const std::string& left, const std::string& right,
              const ToleranceConfig& cfg) {
    const ComplexMatrix t = load_matrix(left);
    const ComplexMatrix s = load_matrix(right);
    DecisionCertificate cert = [&] {
        if (predicate == "bj-orth") return is_birkhoff_orthogonal(t, s, cfg);
        if (predicate == "r-orth") return is_r_orthogonal(t, s, cfg);
        if (predicate == "parallel") return is_norm_parallel(t, s, cfg);
        throw std::invalid_argument("unknown predicate: " + predicate);
    }();
    std::string out = "{\"predicate\": \"" + predicate + "\"";
    out += ", \"verdict\": \"" + std::string(to_string(cert.verdict)) + "\"";
    out += ", \"margin\": " + format_double17(cert.margin);
    if (cert.witness) out += ", \"witness\": " + vector_json(cert.witness->vec());
    if (cert.unimodular)
        out += ", \"unimodular\": [" + format_double17(cert.unimodular->real()) + ", " +
               format_double17(cert.unimodular->imag()) + "]";
    out += ", \"notes\": \"" + json_escape(cert.notes) + "\"";
    out += "}";
    std::cout << out << "\n";
    return kExitOk;
}

// ----------------------------------------------------------------- verify --

struct InstanceResult {
    std::vector<ReportRow> rows;
    bool theory_violated = false;
    double elapsed_ms = 0.0;
};

ReportRow row(int instance, std::string name, double lhs, double rhs, double margin,
              Verdict verdict, std::string digest = "-") {
    ReportRow r;
    r.instance_id = instance;
    r.check_name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = margin;
    r.verdict = to_string(verdict);
    r.witness_digest = std::move(digest);
    return r;
}

/// Battery rows: one per condition plus a consistency row. Only the
/// consistency row is theory-mandated; the individual conditions may all
/// legitimately fail (a non-normal instance is simply not parallel to I).
void battery_rows(const std::string& check, int instance, const EquivalenceBattery& battery,
                  InstanceResult& out) {
    int holds = 0, fails = 0;
    double agree_margin = std::numeric_limits<double>::infinity();
    for (const auto& cond : battery.conditions) {
        out.rows.push_back(row(instance, check + "/" + cond.label, cond.lhs, cond.rhs, cond.margin,
                               cond.verdict));
        if (cond.verdict == Verdict::holds) ++holds;
        if (cond.verdict == Verdict::fails) ++fails;
        if (cond.verdict != Verdict::marginal)
            agree_margin = std::min(agree_margin, std::abs(cond.margin));
    }
    if (holds + fails == 0) agree_margin = 0.0;
    const Verdict cv = battery.consistent == Consistency::all_agree    ? Verdict::holds
                       : battery.consistent == Consistency::marginal ? Verdict::marginal
                                                                       : Verdict::fails;
    out.rows.push_back(row(instance, check + "/consistent", holds, fails,
                           battery.consistent == Consistency::disagree ? -agree_margin
                                                                       : agree_margin,
                           cv));
    if (cv == Verdict::fails) out.theory_violated = true;
}

void equivalence_rows(const std::string& check, int instance, const EquivalenceReport& rep,
                      InstanceResult& out) {
    out.rows.push_back(
        row(instance, check + "/side-a", rep.margin_a, 0.0, rep.margin_a, rep.side_a));
    out.rows.push_back(
        row(instance, check + "/side-b", rep.margin_b, 0.0, rep.margin_b, rep.side_b));
    const Verdict cv = rep.consistent == Consistency::all_agree    ? Verdict::holds
                       : rep.consistent == Consistency::marginal ? Verdict::marginal
                                                                   : Verdict::fails;
    out.rows.push_back(row(instance, check + "/consistent", rep.side_a == Verdict::holds ? 1 : 0,
                           rep.side_b == Verdict::holds ? 1 : 0, 0.0, cv));
    if (cv == Verdict::fails) out.theory_violated = true;
}

void inequality_rows(const std::string& check, int instance,
                     const std::vector<InequalityReport>& reports, InstanceResult& out) {
    for (const InequalityReport& rep : reports) {
        out.rows.push_back(
            row(instance, check + "/" + rep.name, rep.lhs, rep.rhs, rep.slack, rep.verdict));
        if (rep.verdict == Verdict::fails) out.theory_violated = true;
    }
}

/// Per-instance xi for refine-ii: |xi| in [0.75, 1.25] * ||T||, random phase.
ComplexScalar derive_xi(const ComplexMatrix& t, std::uint64_t seed, int index) {
    CounterRng rng(seed, (static_cast<std::uint64_t>(index) << 8) | 0x07);
    const double mag = std::max(op_norm(t).value, 1e-6) * (0.75 + 0.5 * rng.next_unit());
    return std::polar(mag, 2.0 * std::numbers::pi * rng.next_unit());
}

InstanceResult run_verify_instance(const std::string& check, const EnsembleSpec& spec, int index,
                                   const ToleranceConfig& cfg) {
    InstanceResult out;
    const auto t0 = std::chrono::steady_clock::now();

    if (check == "cor-3-4") {
        const auto [x, y] = generate_vector_pair(spec.n, spec.seed, index);
        battery_rows(check, index, rank_one_dependence_battery(x, y, cfg), out);
    } else if (check == "thm-2-1" || check == "thm-2-2" || check == "thm-2-3" ||
               check == "bj-orth" || check == "r-orth" || check == "parallel") {
        const ComplexMatrix t = generate_instance(spec, index);
        EnsembleSpec partner = spec;
        partner.seed = partner_seed(spec.seed);
        const ComplexMatrix s = generate_instance(partner, index);
        if (check == "thm-2-1")
            equivalence_rows(check, index, check_parallelism_characterization(t, s, cfg), out);
        else if (check == "thm-2-2")
            equivalence_rows(check, index, check_orthogonality_pythagoras(t, s, cfg), out);
        else if (check == "thm-2-3")
            equivalence_rows(check, index, check_r_orthogonality_pythagoras(t, s, cfg), out);
        else {
            const DecisionCertificate cert = check == "bj-orth" ? is_birkhoff_orthogonal(t, s, cfg)
                                             : check == "r-orth" ? is_r_orthogonal(t, s, cfg)
                                                                 : is_norm_parallel(t, s, cfg);
            out.rows.push_back(row(index, check + "/decision", cert.margin, 0.0, cert.margin,
                                   cert.verdict,
                                   cert.witness ? witness_digest(cert.witness->vec()) : "-"));
        }
    } else {
        const ComplexMatrix t = generate_instance(spec, index);
        if (check == "thm-3-1") {
            battery_rows(check, index, parallel_identity_battery(t, cfg), out);
        } else if (check == "cor-3-1") {
            battery_rows(check, index, radius_norm_battery(t, cfg), out);
        } else if (check == "cor-3-3") {
            battery_rows(check, index, power_parallelism_battery(t, cfg), out);
        } else if (check == "cor-3-5") {
            battery_rows(check, index, attainment_battery(t, cfg), out);
        } else if (check == "bounds") {
            inequality_rows(check, index, check_radius_bounds(t, cfg).checks, out);
        } else if (check == "z2") {
            const ChainReport chain = radius_chain_check(t, cfg);
            inequality_rows(check, index, {chain.left, chain.right, chain.direct}, out);
        } else if (check == "refine-i") {
            inequality_rows(check, index, {refinement_i(t, cfg)}, out);
        } else if (check == "refine-ii") {
            inequality_rows(check, index, {refinement_ii(t, derive_xi(t, spec.seed, index), cfg)},
                            out);
        } else if (check == "refine-iii") {
            inequality_rows(check, index, {refinement_iii(t, cfg)}, out);
        } else {
            throw std::invalid_argument("unknown verify check: " + check);
        }
    }

    out.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

int run_verify(const std::string& check, const EnsembleSpec& spec, const ToleranceConfig& cfg,
               const std::string& out_path, const std::string& dump_dir, bool timings) {
    spec.validate();
    if (check == "cor-3-4" && spec.kind != EnsembleKind::rank_one)
        throw std::invalid_argument(
            "verify cor-3-4 consumes vector pairs; use --ensemble rank_one");

    std::vector<InstanceResult> results(spec.count);
    parallel_for_index(spec.count,
                       [&](int i) { results[i] = run_verify_instance(check, spec, i, cfg); });

    std::vector<ReportRow> rows;
    bool violated = false;
    std::vector<int> failing;
    for (int i = 0; i < spec.count; ++i) {
        for (ReportRow& r : results[i].rows) {
            if (timings) r.wall_time_ms = results[i].elapsed_ms;
            rows.push_back(std::move(r));
        }
        if (results[i].theory_violated) {
            violated = true;
            failing.push_back(i);
        }
    }
    sort_rows(rows);

    if (out_path.empty()) {
        std::cout << rows_to_csv(rows);
    } else {
        const bool json = out_path.size() >= 5 && out_path.substr(out_path.size() - 5) == ".json";
        write_report(rows, json ? ReportFormat::json : ReportFormat::csv, out_path);
    }

    if (!failing.empty() && check != "cor-3-4") {
        // Persist the offending instances for replay via `compute`/`check`.
        std::filesystem::path dir =
            dump_dir.empty() ? (out_path.empty() ? std::filesystem::path("opgeom_failures")
                                                 : std::filesystem::path(out_path + "_failures"))
                             : std::filesystem::path(dump_dir);
        std::filesystem::create_directories(dir);
        for (int i : failing) {
            save_matrix_json(generate_instance(spec, i),
                             (dir / (check + "-instance-" + std::to_string(i) + ".json")).string());
            if (check == "thm-2-1" || check == "thm-2-2" || check == "thm-2-3" ||
                check == "bj-orth" || check == "r-orth" || check == "parallel") {
                EnsembleSpec partner = spec;
                partner.seed = partner_seed(spec.seed);
                save_matrix_json(
                    generate_instance(partner, i),
                    (dir / (check + "-instance-" + std::to_string(i) + "-partner.json")).string());
            }
        }
        std::cerr << "verify " << check << ": " << failing.size()
                  << " instance(s) violated a theory-mandated verdict; matrices dumped to " << dir
                  << "\n";
    }
    return violated ? kExitTheoryViolation : kExitOk;
}

// ------------------------------------------------------------------- demo --

int run_demo_shift(const std::string& sizes_csv, const ToleranceConfig& cfg,
                   const std::string& out_path) {
    std::vector<int> sizes;
    std::istringstream ss(sizes_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            sizes.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw std::invalid_argument("demo shift: bad size '" + tok + "'");
        }
    }
    if (sizes.empty()) throw std::invalid_argument("demo shift: no sizes given");

    const std::vector<ShiftRow> rows = shift_truncation_demo(sizes, cfg);
    std::string csv = "n,op_norm,numerical_radius,davis_wielandt_radius,sqrt2_gap,norm_attained\n";
    for (const ShiftRow& r : rows) {
        csv += std::to_string(r.n) + "," + format_double17(r.op_norm_value) + "," +
               format_double17(r.w) + "," + format_double17(r.dw) + "," +
               format_double17(r.sqrt2_gap) + "," + (r.norm_attained ? "true" : "false") + "\n";
    }
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << csv;
    }
    const std::string violation = validate_shift_table(rows);
    if (!violation.empty()) {
        std::cerr << "demo shift: convergence contract violated: " << violation << "\n";
        return kExitTheoryViolation;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "opgeom: operator norms, numerical/Crawford/Davis-Wielandt radii, orthogonality and "
        "parallelism certificates, and seeded verification batteries for dense complex matrices"};
    app.require_subcommand(1);

    ToleranceConfig cfg;

    auto* compute = app.add_subcommand("compute", "evaluate one norm-like functional of a matrix");
    std::string functional, input;
    compute->add_option("--functional", functional, "one of opnorm|minmod|w|c|dw")
        ->required()
        ->check(CLI::IsMember({"opnorm", "minmod", "w", "c", "dw"}));
    compute->add_option("--input", input, "matrix file (.json or .csv)")->required();
    add_tolerance_flags(compute, cfg);

    auto* check = app.add_subcommand("check", "decide a binary predicate with a certificate");
    std::string predicate, left, right;
    check->add_option("predicate", predicate, "one of bj-orth|r-orth|parallel")
        ->required()
        ->check(CLI::IsMember({"bj-orth", "r-orth", "parallel"}));
    check->add_option("--left", left, "left matrix file (T)")->required();
    check->add_option("--right", right, "right matrix file (S)")->required();
    add_tolerance_flags(check, cfg);

    auto* verify =
        app.add_subcommand("verify", "run a verification battery over a seeded ensemble");
    std::string verify_check, ensemble = "ginibre", out_path, dump_dir;
    EnsembleSpec spec;
    bool timings = false;
    verify->add_option("check", verify_check, "battery name")
        ->required()
        ->check(CLI::IsMember({"thm-2-1", "thm-2-2", "thm-2-3", "refine-i", "refine-ii",
                               "refine-iii", "thm-3-1", "cor-3-1", "cor-3-3", "cor-3-4", "cor-3-5",
                               "bounds", "z2", "bj-orth", "r-orth", "parallel"}));
    verify->add_option("--ensemble", ensemble, "matrix ensemble kind")->capture_default_str();
    verify->add_option("--n", spec.n, "matrix dimension")->capture_default_str();
    verify->add_option("--count", spec.count, "number of instances")->capture_default_str();
    verify->add_option("--seed", spec.seed, "ensemble seed")->capture_default_str();
    verify->add_option("--scale", spec.scale, "ensemble scale factor")->capture_default_str();
    verify->add_option("--out", out_path, "report file (.csv or .json); stdout CSV when omitted");
    verify->add_option("--dump-dir", dump_dir, "directory for failing-instance matrix dumps");
    verify->add_flag("--timings", timings,
                     "record real per-instance wall times (breaks byte-identical reports)");
    add_tolerance_flags(verify, cfg, /*with_seed=*/false);

    auto* demo = app.add_subcommand("demo", "built-in demonstrations");
    auto* shift = demo->add_subcommand("shift", "truncated-shift convergence table");
    std::string sizes = "2,4,8,16,32,64";
    std::string demo_out;
    shift->add_option("--sizes", sizes, "comma-separated truncation sizes")->capture_default_str();
    shift->add_option("--out", demo_out, "CSV output file; stdout when omitted");
    add_tolerance_flags(shift, cfg);
    demo->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        cfg.validate();
        if (compute->parsed()) return run_compute(functional, input, cfg);
        if (check->parsed()) return run_check(predicate, left, right, cfg);
        if (verify->parsed()) {
            spec.kind = ensemble_kind_from_string(ensemble);
            cfg.rng_seed = spec.seed;
            return run_verify(verify_check, spec, cfg, out_path, dump_dir, timings);
        }
        if (demo->parsed()) return run_demo_shift(sizes, cfg, demo_out);
        std::cerr << "no subcommand\n";
        return kExitUsage;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolverFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
