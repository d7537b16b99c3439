#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace cacaug {

inline constexpr int kHarmonicCap = 1000000;
inline constexpr int kHatCap = 10000;

/// H_n by direct summation; H_0 = 0. n <= 10^6.
double harmonic(int n);
mpq_class harmonic_exact(int n);

/// Ĥ_i = sum_{j>=0} H_{i+j} / 2^{j+1}, evaluated as H_i + sum_{j>i} 1/(j 2^{j-i}).
/// 48 series terms leave a tail below 1/(i 2^48) < 4e-15.
double h_hat(int i);
/// The defining series truncated after `terms` terms.
double h_hat_definition(int i, int terms);

/// q0 + q1 * ln 4 with exact rationals.
struct LnFourForm {
    mpq_class rational = 0;
    mpq_class ln4 = 0;

    double value() const;
    std::string str() const;

    friend LnFourForm operator+(const LnFourForm& a, const LnFourForm& b) { return {a.rational + b.rational, a.ln4 + b.ln4}; }
    friend LnFourForm operator-(const LnFourForm& a, const LnFourForm& b) { return {a.rational - b.rational, a.ln4 - b.ln4}; }
    friend LnFourForm operator*(const mpq_class& s, const LnFourForm& a) { return {s * a.rational, s * a.ln4}; }
    friend bool operator==(const LnFourForm& a, const LnFourForm& b) { return a.rational == b.rational && a.ln4 == b.ln4; }
};

inline LnFourForm rational_form(const mpq_class& q) { return {q, 0}; }

/// Ĥ_i from Ĥ_1 = ln 4 and Ĥ_{j+1} = 2 Ĥ_j - H_j.
LnFourForm h_hat_exact(int i);

/// H_0..H_{imax+3} and Ĥ_1..Ĥ_{imax+3} (index 0 unused), with the table checks.
struct BoundTables {
    int imax = 0;
    std::vector<double> H;
    std::vector<double> Hhat;
    double ln4_error = 0.0;                // |Ĥ_1 - ln 4|
    double max_recurrence_residual = 0.0;  // max |Ĥ_{j+1} - (2Ĥ_j - H_j)|
    double max_definition_gap = 0.0;       // max |Ĥ_i - truncated defining series|

    double p_max() const { return Hhat[2] - H[2]; }
};

BoundTables make_bound_tables(int imax);

/// Upper end of the present range, Ĥ_2 - H_2 = 2 ln 4 - 5/2.
double present_max();

/// (a1, a2, a3, a4) at group size i and present p. Throws POutOfRange.
std::array<double, 4> a_funcs(const BoundTables& tables, int i, double p);
std::array<double, 4> a_funcs(int i, double p);
/// Same four values in exact form for a symbolic present.
std::array<LnFourForm, 4> a_funcs_exact(int i, const LnFourForm& p);

struct ClaimReport {
    double grid_step = 0.0;
    int imax = 0;
    std::size_t grid_points = 0;
    std::array<int, 4> limits{6, 8, 6, 8};
    std::array<int, 4> worst_argmax{0, 0, 0, 0};   // largest argmax seen over the grid
    std::array<double, 4> worst_argmax_p{0, 0, 0, 0};
    std::array<bool, 4> derivative_negative{};   // past the limit, for every i < imax
    double max_derivative_formula_gap = 0.0;     // closed-form vs direct difference
    bool sufficient_inequalities = false;         // Ĥ_2 + 1 < 2.7726 < H_9 and < Ĥ_8
    double h9 = 0.0;
    double hhat8 = 0.0;
    bool passed = false;
};

/// Scans p over [0, Ĥ_2 - H_2] with the given step and i in 1..imax.
/// With `strict`, throws ClaimViolated when any check fails.
ClaimReport verify_claim_maximum(double grid_step = 1e-3, int imax = kHatCap, bool strict = true);

struct OptimalConstant {
    LnFourForm p_star_form;
    LnFourForm rho_form;
    double p_star = 0.0;
    double rho = 0.0;
    bool symbolic_identity = false;  // rho_form == 2 ln4 - 967/1120
    double rho_error = 0.0;          // |rho - (2 ln4 - 967/1120)| in doubles
    bool equalized = false;          // a2(7) == a3(1) == rho exactly at p*
    double max_at_p_star = 0.0;      // over Ĥ_2, a1(1..6), a2(1..8), a3(1..6), a4(1..8)
    std::string argmax;              // e.g. "a2(7)"
    double numeric_p = 0.135;
    double max_at_numeric_p = 0.0;
};

OptimalConstant optimal_p_and_constant();

/// f(S) for a finite sequence.
double f_finite(const std::vector<int>& d);
/// f of the extension by an infinite run of 2s; 48 tail terms, error below
/// (H_{D+48} + 1) / 2^48 < 1e-12 where D = d_1 + ... + d_k - k + 1.
double f_extended(const std::vector<int>& d);
/// Closed form of the same tail: Ĥ_D / (d_2 ... d_k).
double f_extended_closed(const std::vector<int>& d);

struct FClaimReport {
    std::size_t samples = 0;
    std::size_t deletion_cases = 0;
    std::size_t finite_violations = 0;      // f(S) > f(S̄)
    std::size_t deletion_violations = 0;    // f(S̄) != f(S̄_i) for d_i = 1
    std::size_t coefficient_violations = 0; // sum alpha != 1 or a tail too small
    std::size_t hat_violations = 0;         // f(S̄) > Ĥ_{d_1}
    double max_deletion_gap = 0.0;
    double max_alpha_sum_gap = 0.0;
    double max_closed_form_gap = 0.0;
    bool passed = false;
};

/// Random sequences of length 1..max_len with entries in 1..max_d.
FClaimReport verify_f_claims(std::size_t samples, std::uint64_t seed, int max_len = 12, int max_d = 8);

/// Every check above as one JSON document.
nlohmann::json bounds_report(double grid_step, int imax, std::size_t f_samples, std::uint64_t seed);

}  // namespace cacaug
