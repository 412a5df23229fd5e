#pragma once

#include "opgeom/types.hpp"

namespace opgeom {

/// A list of individually decided conditions that a theorem asserts to be
/// equivalent. `consistent` is disagree only when two non-marginal verdicts
/// point in opposite directions; marginal conditions are excluded from the
/// agreement claim.
struct EquivalenceBattery {
    struct Condition {
        std::string label;
        Verdict verdict;
        double margin;   // lhs - rhs, nonpositive up to solver error
        double lhs;
        double rhs;
    };
    std::vector<Condition> conditions;
    Consistency consistent;
    std::string details;

    bool all_hold() const;
    bool all_fail() const;
};

/// T || I  <=>  dw(T) = sqrt(w^2(T) + ||T||^4). Margins: w(T) - ||T|| and
/// dw(T) - sqrt(w^2 + ||T||^4).
EquivalenceBattery parallel_identity_battery(const ComplexMatrix& t, const ToleranceConfig& cfg);

/// Four-way equivalence: dw equality, w(T) = ||T||,
/// dw(T) = ||T|| sqrt(1 + ||T||^2), and T*T <= w^2(T) I.
EquivalenceBattery radius_norm_battery(const ComplexMatrix& t, const ToleranceConfig& cfg);

/// dw equality  <=>  w(T^2) = ||T||^2  <=>  w(T T* T) = ||T||^3, the power
/// forms of parallelism to T* and of T*T to T*, together with parallelism to
/// the identity.
EquivalenceBattery power_parallelism_battery(const ComplexMatrix& t, const ToleranceConfig& cfg);

/// For the rank one operator x (x) y: dw equality  <=>  x and y linearly
/// dependent. Also cross-checks w(x (x) y) against its closed form
/// (|<x,y>| + ||x|| ||y||)/2.
EquivalenceBattery rank_one_dependence_battery(const ComplexVector& x, const ComplexVector& y,
                                               const ToleranceConfig& cfg);

/// Finite-dimensional attainment: dw equality  <=>  some unit x attains
/// |<Tx, x>| = ||T||  <=>  Tx + gamma x stays dependent on x at the witness.
EquivalenceBattery attainment_battery(const ComplexMatrix& t, const ToleranceConfig& cfg);

/// The n x n truncation of the shift: ones on the first subdiagonal.
ComplexMatrix shift_truncation(int n);

/// Truncated-shift convergence table: per size, the operator norm, w, dw,
/// the gap sqrt(2) - dw, and whether the numerical radius attains the norm
/// (it must not, at any finite truncation).
struct ShiftRow {
    int n;
    double op_norm_value;
    double w;
    double dw;
    double sqrt2_gap;
    bool norm_attained;
};

std::vector<ShiftRow> shift_truncation_demo(const std::vector<int>& sizes,
                                            const ToleranceConfig& cfg);

/// Empty string when the table satisfies the convergence contract
/// (w and dw strictly increasing, final gap positive and decreasing);
/// otherwise a description of the first violation.
std::string validate_shift_table(const std::vector<ShiftRow>& rows);

}  // namespace opgeom
