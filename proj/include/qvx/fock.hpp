#pragma once

// Truncated Schmidt-ladder coefficient sequences for two-mode squeezed vacuum
// and k-photon-subtracted two-mode squeezed vacuum states.
//
// A Schmidt-ladder state is sum_n c_n e^{i n theta} |n+k, n> with c_n >= 0.
// Coefficients are synthesized in log space,
//   log c_n = n log(tanh r) + 0.5 log C(n+k, k) - (k+1) log cosh r,
// so deep truncations at large r stay finite and accurate.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qvx/errors.hpp"

namespace qvx {

inline constexpr double kRMax = 5.0;
inline constexpr int kKMax = 8;
inline constexpr std::size_t kNHardCap = 2'000'000;

struct SqueezeParams {
    double r = 0.0;      // squeeze magnitude, >= 0
    double theta = 0.0;  // phase in radians

    double kappa_mag() const { return std::tanh(r); }
};

struct SchmidtLadderState {
    int offset_k = 0;            // photon-number difference between modes a and b
    std::vector<double> mags;    // c_0 .. c_N, all >= 0
    double theta = 0.0;
    double tail_bound = 0.0;     // bound on sum_{n>N} c_n
    SqueezeParams params;
};

namespace detail {

inline void check_params(const SqueezeParams& p, double tol) {
    if (!(p.r >= 0.0)) throw RangeError("squeeze magnitude r must be >= 0");
    if (p.r > kRMax) throw RangeError("squeeze magnitude r exceeds R_MAX = 5");
    if (!(tol > 0.0 && tol < 1.0)) throw RangeError("tolerance must lie in (0, 1)");
}

inline double log_binomial(std::size_t n, int k) {
    return std::lgamma(double(n + k) + 1.0) - std::lgamma(double(n) + 1.0) -
           std::lgamma(double(k) + 1.0);
}

// Shared generator: c_n = t^n sqrt(C(n+k,k)) / cosh^{k+1} r, adaptively
// truncated when the geometric tail bound c_N q/(1-q) drops below tol * sum,
// with q = t sqrt((N+k+1)/(N+1)) the exact next-term ratio (valid once q < 1).
inline SchmidtLadderState ladder_coefficients(int k, const SqueezeParams& p, double tol) {
    check_params(p, tol);
    const double t = std::tanh(p.r);
    const double log_t = std::log(t);  // -inf at r = 0, handled below
    const double log_norm = -(k + 1) * std::log(std::cosh(p.r));

    SchmidtLadderState s;
    s.offset_k = k;
    s.theta = p.theta;
    s.params = p;

    if (t == 0.0) {
        s.mags = {1.0};
        s.tail_bound = 0.0;
        return s;
    }

    // Upward recurrence in log space: log c_{n+1} = log c_n + log t
    // + 0.5 (log(n+k+1) - log(n+1)), so the stored ratio c_{n+1}/c_n equals
    // t sqrt((n+k+1)/(n+1)) to a few ulp at any depth.
    double sum = 0.0;
    double log_c = log_norm;  // n = 0: C(k, k) = 1
    std::size_t n = 0;
    for (;;) {
        const double c = std::exp(log_c);
        s.mags.push_back(c);
        sum += c;
        const double q = t * std::sqrt(double(n + k + 1) / double(n + 1));
        if (q < 1.0) {
            const double tail = c * q / (1.0 - q);
            if (tail < tol * sum && tail < tol) {
                s.tail_bound = tail;
                return s;
            }
        }
        log_c += log_t + 0.5 * (std::log(double(n + k + 1)) - std::log(double(n + 1)));
        if (++n >= kNHardCap)
            throw OverflowGuard("truncation exceeded N_HARD_CAP = 2000000 before tol " +
                                std::to_string(tol));
    }
}

}  // namespace detail

/// Coefficients of the two-mode squeezed vacuum: c_n = tanh^n r / cosh r.
inline SchmidtLadderState tmsv_coefficients(const SqueezeParams& params, double tol = 1e-12) {
    return detail::ladder_coefficients(0, params, tol);
}

/// Coefficients of the ideal k-photon-subtracted state (normalized b^k |xi>):
/// c_n = tanh^n r sqrt(C(n+k, k)) / cosh^{k+1} r on the ladder |n+k, n>.
inline SchmidtLadderState subtracted_coefficients(int k, const SqueezeParams& params,
                                                  double tol = 1e-12) {
    if (k < 1 || k > kKMax) throw RangeError("subtraction order k must lie in [1, K_MAX]");
    return detail::ladder_coefficients(k, params, tol);
}

/// log(sum_n c_n) via max-shifted summation, plus the relative tail bound.
struct LogSumResult {
    double log_sum = 0.0;
    double tail_rel = 0.0;  // tail_bound / sum
};

inline LogSumResult log_sum_coefficients(const SchmidtLadderState& state) {
    double m = 0.0;
    for (double c : state.mags) m = std::max(m, c);
    double scaled = 0.0;
    for (double c : state.mags) scaled += c / m;
    LogSumResult out;
    out.log_sum = std::log(m) + std::log(scaled);
    out.tail_rel = state.tail_bound / (m * scaled);
    return out;
}

/// Truncate to at most n_terms coefficients and renormalize to unit sum of
/// squares. Used to build states that fit a fixed dense Fock cutoff exactly;
/// the truncated state is a valid ladder state in its own right.
inline SchmidtLadderState truncated_to(const SchmidtLadderState& state, std::size_t n_terms) {
    if (n_terms == 0) throw RangeError("truncated_to requires at least one coefficient");
    SchmidtLadderState s = state;
    if (s.mags.size() <= n_terms) return s;
    s.mags.resize(n_terms);
    double ss = 0.0;
    for (double c : s.mags) ss += c * c;
    const double inv = 1.0 / std::sqrt(ss);
    for (double& c : s.mags) c *= inv;
    s.tail_bound = 0.0;
    return s;
}

}  // namespace qvx
