#include "cacaug/bounds.hpp"

#include "cacaug/error.hpp"
#include "cacaug/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cacaug {

namespace {

// Terms kept in the stable series for Ĥ_i; the dropped tail is below
// sum_{m>48} 1/((i+m) 2^m) < 2^-48 / (i+48).
constexpr int kHatSeriesTerms = 48;
// Terms kept in the defining series; tail <= (H_{i+64} + 1) / 2^64.
constexpr int kDefinitionTerms = 64;
// Tail terms for f of an extension by 2s; see f_extended.
constexpr int kExtensionTerms = 48;

constexpr double kLn4 = 1.386294361119890618834464242916;  // 2 ln 2

void require_index(int i, int cap, const char* what) {
    if (i < 0 || i > cap) throw Error(ErrorCode::InvalidInput, std::string(what) + " index out of range", i);
}

double hat_from_h(double h_i, int i) {
    double tail = 0.0, weight = 1.0;
    for (int m = 1; m <= kHatSeriesTerms; ++m) {
        weight *= 0.5;
        tail += weight / (i + m);
    }
    return h_i + tail;
}

}  // namespace

double harmonic(int n) {
    require_index(n, kHarmonicCap, "harmonic");
    double h = 0.0;
    for (int j = 1; j <= n; ++j) h += 1.0 / j;
    return h;
}

mpq_class harmonic_exact(int n) {
    require_index(n, kHarmonicCap, "harmonic");
    mpq_class h = 0;
    for (int j = 1; j <= n; ++j) h += mpq_class(1, j);
    return h;
}

double h_hat(int i) {
    if (i < 1 || i > kHatCap) throw Error(ErrorCode::InvalidInput, "h_hat index out of range", i);
    return hat_from_h(harmonic(i), i);
}

double h_hat_definition(int i, int terms) {
    if (i < 1 || terms < 1) throw Error(ErrorCode::InvalidInput, "h_hat_definition needs i >= 1 and terms >= 1");
    double h = harmonic(i), sum = 0.0, weight = 1.0;
    for (int j = 0; j < terms; ++j) {
        weight *= 0.5;
        sum += h * weight;
        h += 1.0 / (i + j + 1);
    }
    return sum;
}

double LnFourForm::value() const { return rational.get_d() + ln4.get_d() * kLn4; }

std::string LnFourForm::str() const {
    std::ostringstream os;
    os << rational.get_str() << (sgn(ln4) < 0 ? " - " : " + ") << mpq_class(abs(ln4)).get_str() << "*ln4";
    return os.str();
}

LnFourForm h_hat_exact(int i) {
    if (i < 1 || i > 500) throw Error(ErrorCode::InvalidInput, "h_hat_exact index out of range", i);
    LnFourForm hat{0, 1};
    mpq_class h = 0;
    for (int j = 1; j < i; ++j) {
        h += mpq_class(1, j);
        hat = mpq_class(2) * hat - rational_form(h);
    }
    return hat;
}

BoundTables make_bound_tables(int imax) {
    if (imax < 9 || imax > kHatCap) throw Error(ErrorCode::InvalidInput, "imax must lie in [9, 10^4]", imax);
    BoundTables t;
    t.imax = imax;
    const int top = imax + 3;
    t.H.assign(top + kDefinitionTerms + 1, 0.0);
    for (int j = 1; j < static_cast<int>(t.H.size()); ++j) t.H[j] = t.H[j - 1] + 1.0 / j;
    t.Hhat.assign(top + 1, 0.0);
    for (int i = 1; i <= top; ++i) t.Hhat[i] = hat_from_h(t.H[i], i);

    t.ln4_error = std::abs(t.Hhat[1] - kLn4);
    for (int j = 1; j < top; ++j)
        t.max_recurrence_residual = std::max(t.max_recurrence_residual, std::abs(t.Hhat[j + 1] - (2.0 * t.Hhat[j] - t.H[j])));
    for (int i = 1; i <= top; ++i) {
        double sum = 0.0, weight = 1.0;
        for (int j = 0; j < kDefinitionTerms; ++j) {
            weight *= 0.5;
            sum += t.H[i + j] * weight;
        }
        t.max_definition_gap = std::max(t.max_definition_gap, std::abs(t.Hhat[i] - sum));
    }
    return t;
}

double present_max() { return 2.0 * kLn4 - 2.5; }

namespace {

void require_present(double p, double p_max) {
    if (!(p >= 0.0 && p <= p_max + 1e-15)) throw Error(ErrorCode::POutOfRange, "present must lie in [0, Ĥ_2 - H_2]");
}

std::array<double, 4> a_values(double h_i, double h_i2, double hat_i, double hat_i2, double hat2, int i, double p) {
    const double rest = (i - 1) * hat2;
    return {(h_i2 + p - i * p + rest) / i, (h_i + p + rest) / i, (hat_i2 - i * p + rest) / i, (hat_i + rest) / i};
}

}  // namespace

std::array<double, 4> a_funcs(const BoundTables& t, int i, double p) {
    if (i < 1 || i > t.imax) throw Error(ErrorCode::InvalidInput, "group size out of table range", i);
    require_present(p, t.p_max());
    return a_values(t.H[i], t.H[i + 2], t.Hhat[i], t.Hhat[i + 2], t.Hhat[2], i, p);
}

std::array<double, 4> a_funcs(int i, double p) {
    if (i < 1 || i > kHatCap - 2) throw Error(ErrorCode::InvalidInput, "group size out of range", i);
    require_present(p, present_max());
    return a_values(harmonic(i), harmonic(i + 2), h_hat(i), h_hat(i + 2), h_hat(2), i, p);
}

std::array<LnFourForm, 4> a_funcs_exact(int i, const LnFourForm& p) {
    if (i < 1) throw Error(ErrorCode::InvalidInput, "group size must be positive", i);
    const mpq_class inv(1, i);
    const mpq_class ii(i);
    const LnFourForm rest = mpq_class(i - 1) * h_hat_exact(2);
    return {inv * (rational_form(harmonic_exact(i + 2)) + p - ii * p + rest),
            inv * (rational_form(harmonic_exact(i)) + p + rest),
            inv * (h_hat_exact(i + 2) - ii * p + rest),
            inv * (h_hat_exact(i) + rest)};
}

ClaimReport verify_claim_maximum(double grid_step, int imax, bool strict) {
    if (!(grid_step > 0.0 && grid_step <= 1e-3)) throw Error(ErrorCode::InvalidInput, "grid step must lie in (0, 1e-3]");
    const BoundTables t = make_bound_tables(imax);
    ClaimReport r;
    r.grid_step = grid_step;
    r.imax = imax;
    const double p_max = t.p_max();
    const auto steps = static_cast<std::size_t>(std::ceil(p_max / grid_step));

    for (std::size_t k = 0; k <= steps; ++k) {
        const double p = std::min(static_cast<double>(k) * grid_step, p_max);
        std::array<double, 4> best{};
        std::array<int, 4> arg{};
        for (int i = 1; i <= imax; ++i) {
            const auto a = a_funcs(t, i, p);
            for (int f = 0; f < 4; ++f)
                if (i == 1 || a[f] > best[f]) {
                    best[f] = a[f];
                    arg[f] = i;
                }
        }
        for (int f = 0; f < 4; ++f)
            if (arg[f] > r.worst_argmax[f]) {
                r.worst_argmax[f] = arg[f];
                r.worst_argmax_p[f] = p;
            }
        ++r.grid_points;
    }

    // Discrete derivatives times i(i+1). Each is increasing in x = Ĥ_2 - p
    // (or independent of p), so p = 0 is the worst case.
    const double x = t.Hhat[2];
    auto numerator = [&](int f, int i) {
        switch (f) {
            case 0: return x + static_cast<double>(i + 1) / (i + 3) - t.H[i + 3];
            case 1: return x + 1.0 - t.H[i + 1];
            case 2: return t.Hhat[2] - t.Hhat[i + 2] + i * (t.Hhat[i + 3] - t.Hhat[i + 2]);
            default: return t.Hhat[2] - t.Hhat[i] + i * (t.Hhat[i + 1] - t.Hhat[i]);
        }
    };
    for (int f = 0; f < 4; ++f) {
        bool negative = true;
        for (int i = 1; i < imax; ++i) {
            const double closed = numerator(f, i);
            if (i <= 100) {
                const double direct = static_cast<double>(i) * (i + 1) * (a_funcs(t, i + 1, 0.0)[f] - a_funcs(t, i, 0.0)[f]);
                r.max_derivative_formula_gap = std::max(r.max_derivative_formula_gap, std::abs(closed - direct));
            }
            if (i >= r.limits[f] && !(closed < 0.0)) negative = false;
        }
        r.derivative_negative[f] = negative;
    }

    r.h9 = t.H[9];
    r.hhat8 = t.Hhat[8];
    r.sufficient_inequalities = t.Hhat[2] + 1.0 < 2.7726 && 2.7726 < r.h9 && 2.7726 < r.hhat8;

    r.passed = r.sufficient_inequalities && r.max_derivative_formula_gap < 1e-9;
    for (int f = 0; f < 4; ++f) r.passed = r.passed && r.worst_argmax[f] <= r.limits[f] && r.derivative_negative[f];
    if (strict && !r.passed) throw Error(ErrorCode::ClaimViolated, "group-size maximum claim failed");
    return r;
}

OptimalConstant optimal_p_and_constant() {
    OptimalConstant c;
    const LnFourForm h7 = rational_form(harmonic_exact(7));
    const LnFourForm hat2 = h_hat_exact(2), hat3 = h_hat_exact(3);
    c.p_star_form = mpq_class(1, 8) * (mpq_class(7) * hat3 - h7 - mpq_class(6) * hat2);
    c.rho_form = mpq_class(1, 8) * (h7 + mpq_class(6) * hat2 + hat3);
    c.p_star = c.p_star_form.value();
    c.rho = c.rho_form.value();
    const LnFourForm target{mpq_class(-967, 1120), 2};
    c.symbolic_identity = c.rho_form == target;
    c.rho_error = std::abs(c.rho - target.value());
    c.equalized = a_funcs_exact(7, c.p_star_form)[1] == c.rho_form && a_funcs_exact(1, c.p_star_form)[2] == c.rho_form;

    auto max_at = [](double p, std::string* which) {
        double best = h_hat(2);
        if (which) *which = "Hhat2";
        static constexpr std::array<int, 4> kLimits{6, 8, 6, 8};
        for (int f = 0; f < 4; ++f)
            for (int i = 1; i <= kLimits[f]; ++i) {
                const double v = a_funcs(i, p)[f];
                if (v > best) {
                    best = v;
                    if (which) *which = "a" + std::to_string(f + 1) + "(" + std::to_string(i) + ")";
                }
            }
        return best;
    };
    c.max_at_p_star = max_at(c.p_star, &c.argmax);
    c.max_at_numeric_p = max_at(c.numeric_p, nullptr);
    return c;
}

double f_finite(const std::vector<int>& d) {
    if (d.empty()) throw Error(ErrorCode::InvalidInput, "f needs a non-empty sequence");
    double value = 0.0, product = 1.0;
    long sum = d[0];
    for (std::size_t j = 1; j < d.size(); ++j) {
        if (d[j] < 1) throw Error(ErrorCode::InvalidInput, "sequence entries must be positive");
        // sum = d_1 + ... + d_j, index j entries, so the harmonic index is sum - j + 1
        product *= d[j];
        value += (d[j] - 1) * harmonic(static_cast<int>(sum - static_cast<long>(j) + 1)) / product;
        sum += d[j];
    }
    return value + harmonic(static_cast<int>(sum - static_cast<long>(d.size()) + 1)) / product;
}

namespace {

struct Prefix {
    double finite_part = 0.0;  // terms j = 1..k-1
    double product = 1.0;      // d_2 ... d_k
    int D = 0;                 // d_1 + ... + d_k - k + 1
};

Prefix prefix_of(const std::vector<int>& d) {
    if (d.empty()) throw Error(ErrorCode::InvalidInput, "f needs a non-empty sequence");
    Prefix pre;
    long sum = d[0];
    for (std::size_t j = 1; j < d.size(); ++j) {
        pre.product *= d[j];
        pre.finite_part += (d[j] - 1) * harmonic(static_cast<int>(sum - static_cast<long>(j) + 1)) / pre.product;
        sum += d[j];
    }
    pre.D = static_cast<int>(sum - static_cast<long>(d.size()) + 1);
    return pre;
}

}  // namespace

double f_extended(const std::vector<int>& d) {
    const Prefix pre = prefix_of(d);
    // Term j >= k is H_{D + (j-k)} / (P 2^{j-k+1}). Dropping m >= 48 leaves
    // sum_{m>=48} H_{D+m} / 2^{m+1} <= (H_{D+48} + 1) / 2^48 after dividing by P >= 1.
    double tail = 0.0, weight = 1.0, h = harmonic(pre.D);
    for (int m = 0; m < kExtensionTerms; ++m) {
        weight *= 0.5;
        tail += h * weight;
        h += 1.0 / (pre.D + m + 1);
    }
    return pre.finite_part + tail / pre.product;
}

double f_extended_closed(const std::vector<int>& d) {
    const Prefix pre = prefix_of(d);
    return pre.finite_part + h_hat(pre.D) / pre.product;
}

FClaimReport verify_f_claims(std::size_t samples, std::uint64_t seed, int max_len, int max_d) {
    if (max_len < 1 || max_d < 1) throw Error(ErrorCode::InvalidInput, "sequence bounds must be positive");
    constexpr double kTol = 1e-10;
    FClaimReport r;
    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const int k = static_cast<int>(rng.uniform_int(1, max_len));
        std::vector<int> d(static_cast<std::size_t>(k));
        for (int& v : d) v = static_cast<int>(rng.uniform_int(1, max_d));
        ++r.samples;

        const double fs = f_finite(d);
        const double fbar = f_extended(d);
        r.max_closed_form_gap = std::max(r.max_closed_form_gap, std::abs(fbar - f_extended_closed(d)));
        if (fs > fbar + kTol) ++r.finite_violations;
        if (fbar > h_hat(d[0]) + kTol) ++r.hat_violations;

        for (int i = 1; i < k; ++i) {
            if (d[i] != 1) continue;
            std::vector<int> shorter = d;
            shorter.erase(shorter.begin() + i);
            const double gap = std::abs(fbar - f_extended(shorter));
            ++r.deletion_cases;
            r.max_deletion_gap = std::max(r.max_deletion_gap, gap);
            if (gap > kTol) ++r.deletion_violations;
        }

        // alpha_j = 1/d_2 on d_1+1..d_1+d_2-1, then 1/(d_2 2^{j-d_1-d_2+1}).
        // Index by r = j - d_1 >= 1; the geometric part is summed for 48
        // terms and its tail 1/(d_2 2^48) is added back exactly.
        const int d2 = k >= 2 ? d[1] : 2;
        const int span = d2 - 1 + kExtensionTerms;
        std::vector<double> alpha(static_cast<std::size_t>(span) + 2, 0.0);
        for (int q = 1; q <= span; ++q)
            alpha[q] = q <= d2 - 1 ? 1.0 / d2 : 1.0 / (d2 * std::ldexp(1.0, q - d2 + 1));
        const double tail = 1.0 / (d2 * std::ldexp(1.0, kExtensionTerms));
        std::vector<double> suffix(alpha.size(), tail);
        for (int q = span; q >= 1; --q) suffix[q] = suffix[q + 1] + alpha[q];
        const double sum_gap = std::abs(suffix[1] - 1.0);
        r.max_alpha_sum_gap = std::max(r.max_alpha_sum_gap, sum_gap);
        bool ok = sum_gap <= kTol;
        for (int i = 2; i <= span; ++i)
            if (suffix[i] < std::ldexp(1.0, -(i - 1)) - kTol) ok = false;
        if (!ok) ++r.coefficient_violations;
    }
    r.passed = r.finite_violations == 0 && r.deletion_violations == 0 && r.coefficient_violations == 0 &&
               r.hat_violations == 0 && r.max_closed_form_gap < 1e-10;
    return r;
}

nlohmann::json bounds_report(double grid_step, int imax, std::size_t f_samples, std::uint64_t seed) {
    using nlohmann::json;
    json out;

    const auto c = optimal_p_and_constant();
    const bool constant_ok = c.symbolic_identity && c.rho_error < 1e-12 && c.rho < 1.9092 && c.equalized &&
                             std::abs(c.max_at_p_star - c.rho) < 1e-12;
    out["rho"] = c.rho;
    out["p_star"] = c.p_star;
    out["constant"] = {{"rho", c.rho},
                       {"rho_form", c.rho_form.str()},
                       {"p_star", c.p_star},
                       {"p_star_form", c.p_star_form.str()},
                       {"target_form", "-967/1120 + 2*ln4"},
                       {"symbolic_identity", c.symbolic_identity},
                       {"rho_error", c.rho_error},
                       {"rho_below_1_9092", c.rho < 1.9092},
                       {"equalized_a2_7_a3_1", c.equalized},
                       {"max_at_p_star", c.max_at_p_star},
                       {"argmax_at_p_star", c.argmax},
                       {"numeric_p", c.numeric_p},
                       {"max_at_numeric_p", c.max_at_numeric_p},
                       {"pass", constant_ok}};

    static constexpr std::array<double, 8> kCaps{1.3863, 1.7726, 2.0452, 2.2571, 2.4308, 2.5781, 2.7062, 2.8195};
    json hats = json::array();
    bool hats_ok = true;
    for (int i = 1; i <= 8; ++i) {
        const double v = h_hat(i);
        const bool ok = v < kCaps[i - 1] && kCaps[i - 1] - v < 1e-4;
        hats_ok = hats_ok && ok;
        hats.push_back({{"i", i}, {"value", v}, {"cap", kCaps[i - 1]}, {"pass", ok}});
    }
    out["h_hat"] = {{"values", hats}, {"pass", hats_ok}};

    const BoundTables t = make_bound_tables(imax);
    double equality_gap = 0.0;
    for (int dd = 1; dd <= 50; ++dd) equality_gap = std::max(equality_gap, std::abs(h_hat(dd) - h_hat_definition(dd, kDefinitionTerms)));
    const bool tables_ok = t.ln4_error < 1e-12 && t.max_recurrence_residual < 1e-12 && t.max_definition_gap < 1e-9 && equality_gap < 1e-12;
    out["tables"] = {{"imax", imax},
                     {"ln4_error", t.ln4_error},
                     {"max_recurrence_residual", t.max_recurrence_residual},
                     {"max_definition_gap", t.max_definition_gap},
                     {"tail_equality_gap_1_50", equality_gap},
                     {"pass", tables_ok}};

    const auto claim = verify_claim_maximum(grid_step, imax, false);
    out["claim_maximum"] = {{"grid_step", claim.grid_step},
                            {"grid_points", claim.grid_points},
                            {"imax", claim.imax},
                            {"limits", claim.limits},
                            {"worst_argmax", claim.worst_argmax},
                            {"worst_argmax_p", claim.worst_argmax_p},
                            {"derivative_negative", claim.derivative_negative},
                            {"max_derivative_formula_gap", claim.max_derivative_formula_gap},
                            {"H9", claim.h9},
                            {"Hhat8", claim.hhat8},
                            {"sufficient_inequalities", claim.sufficient_inequalities},
                            {"pass", claim.passed}};

    const auto f = verify_f_claims(f_samples, seed);
    out["f_claims"] = {{"samples", f.samples},
                       {"deletion_cases", f.deletion_cases},
                       {"finite_violations", f.finite_violations},
                       {"deletion_violations", f.deletion_violations},
                       {"coefficient_violations", f.coefficient_violations},
                       {"hat_violations", f.hat_violations},
                       {"max_deletion_gap", f.max_deletion_gap},
                       {"max_alpha_sum_gap", f.max_alpha_sum_gap},
                       {"max_closed_form_gap", f.max_closed_form_gap},
                       {"pass", f.passed}};

    out["pass"] = constant_ok && hats_ok && tables_ok && claim.passed && f.passed;
    return out;
}

}  // namespace cacaug
