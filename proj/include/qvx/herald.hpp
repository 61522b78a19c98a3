#pragma once

// Heralded photon subtraction: beam splitter on mode b with a vacuum ancilla,
// ideal photon-number-resolving detection of k photons in the reflected port.
// Convention: b -> t b + rho v, v -> -rho b + t v (real orthogonal); only
// squared amplitudes enter the reported quantities.

#include <cmath>
#include <cstddef>
#include <vector>

#include "qvx/fock.hpp"

namespace qvx {

struct BeamSplitterSpec {
    double t_amp = 1.0;    // transmission amplitude, (0, 1]
    double rho_amp = 0.0;  // reflection amplitude, [0, 1)

    static BeamSplitterSpec from_reflectivity(double rho2) {
        if (!(rho2 >= 0.0 && rho2 < 1.0)) throw RangeError("reflectivity rho^2 must lie in [0, 1)");
        return {std::sqrt(1.0 - rho2), std::sqrt(rho2)};
    }
    void validate() const {
        if (!(t_amp > 0.0 && t_amp <= 1.0) || !(rho_amp >= 0.0 && rho_amp < 1.0) ||
            std::abs(t_amp * t_amp + rho_amp * rho_amp - 1.0) > 1e-12)
            throw RangeError("beam splitter amplitudes must satisfy t^2 + rho^2 = 1");
    }
};

struct HeraldOutcome {
    SchmidtLadderState state;   // conditional state, normalized
    double probability = 0.0;   // heralding probability for k_detected clicks
    int k_detected = 0;
    double fidelity_ideal = 0.0;  // overlap^2 with the ideal k-subtracted state
};

/// Fidelity (sum_n c_n d_n)^2 between normalized ladder states; zero across
/// different photon-number-difference sectors.
inline double fidelity(const SchmidtLadderState& s1, const SchmidtLadderState& s2) {
    if (s1.offset_k != s2.offset_k) return 0.0;
    const std::size_t n = std::min(s1.mags.size(), s2.mags.size());
    double ov = 0.0;
    for (std::size_t i = 0; i < n; ++i) ov += s1.mags[i] * s2.mags[i];
    return ov * ov;
}

namespace detail {

// Unnormalized conditional amplitudes d_m = c^{tmsv}_{m+k} sqrt(C(m+k,k)) t^m rho^k
// on the ladder |m+k, m>, from splitting each b-mode Fock state across the
// beam splitter and projecting the ancilla on |k>.
inline std::vector<double> conditional_amplitudes(const SchmidtLadderState& tmsv,
                                                  const BeamSplitterSpec& bs, int k) {
    const std::size_t n_cond =
        tmsv.mags.size() > std::size_t(k) ? tmsv.mags.size() - std::size_t(k) : 0;
    std::vector<double> d(n_cond, 0.0);
    for (std::size_t m = 0; m < n_cond; ++m) {
        const double log_d = std::log(tmsv.mags[m + k]) + 0.5 * log_binomial(m, k) +
                             double(m) * std::log(bs.t_amp) +
                             (k > 0 ? double(k) * std::log(bs.rho_amp) : 0.0);
        d[m] = std::exp(log_d);
    }
    return d;
}

}  // namespace detail

/// Probability of heralding exactly k clicks; defined past K_MAX so that
/// completeness sums over the full click distribution are possible.
inline double herald_probability(const SqueezeParams& params, const BeamSplitterSpec& bs,
                                 int k, double tol = 1e-12) {
    bs.validate();
    if (k < 0) throw RangeError("herald click count must be >= 0");
    const SchmidtLadderState tmsv = tmsv_coefficients(params, tol);
    double prob = 0.0;
    for (double v : detail::conditional_amplitudes(tmsv, bs, k)) prob += v * v;
    return prob;
}

/// Exact conditional state, heralding probability, and fidelity to the ideal
/// k-photon-subtracted state.
inline HeraldOutcome herald_subtract(const SqueezeParams& params, const BeamSplitterSpec& bs,
                                     int k, double tol = 1e-12) {
    bs.validate();
    if (k < 0 || k > kKMax) throw RangeError("herald order k must lie in [0, K_MAX]");
    const SchmidtLadderState tmsv = tmsv_coefficients(params, tol);

    HeraldOutcome out;
    out.k_detected = k;
    out.state.offset_k = k;
    out.state.theta = params.theta;
    out.state.params = params;

    std::vector<double> d = detail::conditional_amplitudes(tmsv, bs, k);
    double prob = 0.0;
    for (double v : d) prob += v * v;
    if (!(prob > 1e-300)) throw DegenerateHerald("heralding probability below 1e-300");

    out.probability = prob;
    const double inv = 1.0 / std::sqrt(prob);
    out.state.mags = std::move(d);
    for (double& v : out.state.mags) v *= inv;
    out.state.tail_bound = tmsv.tail_bound * inv;  // conservative carry-over

    const SchmidtLadderState ideal =
        k == 0 ? tmsv_coefficients(params, tol) : subtracted_coefficients(k, params, tol);
    out.fidelity_ideal = fidelity(out.state, ideal);
    return out;
}

}  // namespace qvx
