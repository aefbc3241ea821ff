#pragma once

// Recovery of an unknown scattering length from measured decoherence rates
// against a state whose scattering length is known.
//
// The rate fixes |a_x - a_ref|, so every field point admits two real parts
// alpha_ref +- sqrt(D). The sign is chosen per point by dynamic programming
// over the chain of fields:
//   select_branch_flat   - minimum total variation; recovers a field-independent
//                          (resonance-free) state exactly.
//   select_branch_smooth - minimum squared second difference plus an edge
//                          anchor; recovers a resonant state whose real part
//                          crosses the reference.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "decoh/decoherence.hpp"
#include "decoh/errors.hpp"
#include "decoh/parallel.hpp"
#include "decoh/scattering.hpp"

namespace decoh {

struct RateMeasurementSeries {
    std::vector<double> fields;  // G, strictly increasing
    std::vector<double> rates;   // s^-1, |R| >= 0
    std::vector<double> zeta0;   // s^-1, total-coherence decay per field; may be empty
    double noise_sigma = 0;      // s^-1
};

inline void validate(const RateMeasurementSeries& s) {
    if (s.fields.size() != s.rates.size()) throw GridError("fields and rates differ in length");
    if (!s.zeta0.empty() && s.zeta0.size() != s.fields.size())
        throw GridError("fields and zeta0 differ in length");
    for (std::size_t i = 0; i < s.fields.size(); ++i) {
        if (!(s.rates[i] >= 0)) throw DomainError("rates", "must be >= 0");
        if (i > 0 && !(s.fields[i] > s.fields[i - 1])) throw GridError("fields must be strictly increasing");
    }
}

/// Loss part of the other state from the measured total-coherence decay rate.
inline double beta_from_decay(const GasParameters& gas, double zeta0_measured, double beta_known) {
    if (!(zeta0_measured <= 0)) throw InconsistentMeasurement("zeta0 must be <= 0");
    const double beta_sum =
        -zeta0_measured * gas.reduced_mass() / (2.0 * constants::pi * constants::hbar * gas.density());
    const double beta = beta_sum - beta_known;
    if (beta < -1e-12)
        throw InconsistentMeasurement("decay rate implies a negative loss part (" + std::to_string(beta) + " m)");
    return std::max(beta, 0.0);
}

struct BranchSeries {
    std::vector<double> fields;
    std::vector<double> q_plus;        // m
    std::vector<double> q_minus;       // m
    std::vector<double> discriminant;  // m^2, before clamping
    std::vector<std::size_t> clamped;  // indices with negative discriminant

    std::size_t size() const noexcept { return fields.size(); }
    double value(std::size_t i, int sign) const noexcept { return sign > 0 ? q_plus[i] : q_minus[i]; }
};

/// Per-point alpha_ref +- sqrt(R / (C T^{1/2} eta0) - (beta_x - beta_ref)^2).
/// Negative discriminants are clamped to zero and recorded.
inline BranchSeries two_branches(const RateMeasurementSeries& series, std::span<const double> alpha_ref,
                                 std::span<const double> beta_ref, std::span<const double> beta_x,
                                 const GasParameters& gas, double eta0) {
    validate(series);
    const std::size_t n = series.fields.size();
    if (alpha_ref.size() != n || beta_ref.size() != n || beta_x.size() != n)
        throw GridError("reference and measurement grids are misaligned");
    if (!(eta0 > 0)) throw DomainError("eta0", "must be > 0");
    const double scale = rate_constant(gas) * std::sqrt(gas.temperature()) * eta0;

    BranchSeries b;
    b.fields = series.fields;
    b.q_plus.resize(n);
    b.q_minus.resize(n);
    b.discriminant.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double db = beta_x[i] - beta_ref[i];
        const double d = series.rates[i] / scale - db * db;
        b.discriminant[i] = d;
        if (d < 0) b.clamped.push_back(i);
        const double root = std::sqrt(std::max(d, 0.0));
        b.q_plus[i] = alpha_ref[i] + root;
        b.q_minus[i] = alpha_ref[i] - root;
    }
    return b;
}

/// Scalar-loss convenience: both loss parts constant over the grid.
inline BranchSeries two_branches(const RateMeasurementSeries& series, std::span<const double> alpha_ref,
                                 double beta_ref, double beta_x, const GasParameters& gas, double eta0) {
    const std::vector<double> br(series.fields.size(), beta_ref), bx(series.fields.size(), beta_x);
    return two_branches(series, alpha_ref, br, bx, gas, eta0);
}

struct InversionResult {
    std::vector<double> fields;
    std::vector<double> alpha_recovered;  // m
    std::vector<int> branch_choice;       // +1 plus, -1 minus
    std::vector<std::size_t> clamped_points;
    std::vector<std::size_t> degenerate_points;  // clamped, or adjacent to a branch switch
    double cost = 0;
};

/// Sum of |Q_{i+1} - Q_i| along a branch assignment.
inline double total_variation_cost(const BranchSeries& b, std::span<const int> choice) {
    double c = 0;
    for (std::size_t i = 1; i < b.size(); ++i) c += std::abs(b.value(i, choice[i]) - b.value(i - 1, choice[i - 1]));
    return c;
}

/// Sum of squared second differences plus squared distance of both ends to the anchor.
inline double smooth_cost(const BranchSeries& b, std::span<const int> choice, double anchor) {
    const std::size_t n = b.size();
    double c = 0;
    for (std::size_t i = 2; i < n; ++i) {
        const double d2 = b.value(i, choice[i]) - 2.0 * b.value(i - 1, choice[i - 1]) + b.value(i - 2, choice[i - 2]);
        c += d2 * d2;
    }
    const double e0 = b.value(0, choice[0]) - anchor;
    const double e1 = b.value(n - 1, choice[n - 1]) - anchor;
    return c + e0 * e0 + e1 * e1;
}

namespace detail {

inline constexpr std::array<int, 2> kSigns{-1, +1};  // index 0 (minus) wins ties

inline InversionResult assemble(const BranchSeries& b, std::vector<int> choice, double cost) {
    InversionResult r;
    r.fields = b.fields;
    r.branch_choice = std::move(choice);
    r.cost = cost;
    r.clamped_points = b.clamped;
    r.alpha_recovered.resize(b.size());
    std::vector<bool> degenerate(b.size(), false);
    for (std::size_t i = 0; i < b.size(); ++i) {
        r.alpha_recovered[i] = b.value(i, r.branch_choice[i]);
        if (i > 0 && r.branch_choice[i] != r.branch_choice[i - 1]) degenerate[i] = degenerate[i - 1] = true;
    }
    for (auto i : b.clamped) degenerate[i] = true;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (degenerate[i]) r.degenerate_points.push_back(i);
    return r;
}

}  // namespace detail

inline InversionResult select_branch_flat(const BranchSeries& b) {
    const std::size_t n = b.size();
    if (n < 3) throw GridError("branch selection needs at least 3 points");
    std::vector<std::array<double, 2>> cost(n);
    std::vector<std::array<std::uint8_t, 2>> from(n);
    cost[0] = {0.0, 0.0};
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t s = 0; s < 2; ++s) {
            const double q = b.value(i, detail::kSigns[s]);
            double best = std::numeric_limits<double>::infinity();
            std::uint8_t arg = 0;
            for (std::uint8_t p = 0; p < 2; ++p) {
                const double c = cost[i - 1][p] + std::abs(q - b.value(i - 1, detail::kSigns[p]));
                if (c < best) {
                    best = c;
                    arg = p;
                }
            }
            cost[i][s] = best;
            from[i][s] = arg;
        }
    }
    std::uint8_t s = cost[n - 1][1] < cost[n - 1][0] ? 1 : 0;
    const double total = cost[n - 1][s];
    std::vector<int> choice(n);
    for (std::size_t i = n; i-- > 0;) {
        choice[i] = detail::kSigns[s];
        if (i > 0) s = from[i][s];
    }
    return detail::assemble(b, std::move(choice), total);
}

/// anchor: known background real part of the unknown state far from its resonances.
inline InversionResult select_branch_smooth(const BranchSeries& b, double anchor) {
    const std::size_t n = b.size();
    if (n < 3) throw GridError("branch selection needs at least 3 points");
    // State index = 2 * s_prev + s_cur.
    std::vector<std::array<double, 4>> cost(n);
    std::vector<std::array<std::uint8_t, 4>> from(n);
    for (std::uint8_t s0 = 0; s0 < 2; ++s0) {
        const double e = b.value(0, detail::kSigns[s0]) - anchor;
        for (std::uint8_t s1 = 0; s1 < 2; ++s1) cost[1][2 * s0 + s1] = e * e;
    }
    for (std::size_t i = 2; i < n; ++i) {
        for (std::uint8_t s1 = 0; s1 < 2; ++s1) {
            for (std::uint8_t s2 = 0; s2 < 2; ++s2) {
                const double q2 = b.value(i, detail::kSigns[s2]);
                const double q1 = b.value(i - 1, detail::kSigns[s1]);
                double best = std::numeric_limits<double>::infinity();
                std::uint8_t arg = 0;
                for (std::uint8_t s0 = 0; s0 < 2; ++s0) {
                    const double d2 = q2 - 2.0 * q1 + b.value(i - 2, detail::kSigns[s0]);
                    const double c = cost[i - 1][2 * s0 + s1] + d2 * d2;
                    if (c < best) {
                        best = c;
                        arg = s0;
                    }
                }
                cost[i][2 * s1 + s2] = best;
                from[i][2 * s1 + s2] = arg;
            }
        }
    }
    std::uint8_t state = 0;
    double total = std::numeric_limits<double>::infinity();
    for (std::uint8_t st = 0; st < 4; ++st) {
        const double e = b.value(n - 1, detail::kSigns[st & 1]) - anchor;
        const double c = cost[n - 1][st] + e * e;
        if (c < total) {
            total = c;
            state = st;
        }
    }
    std::vector<int> choice(n);
    std::uint8_t s_cur = state & 1, s_prev = state >> 1;
    for (std::size_t i = n - 1; i >= 1; --i) {
        choice[i] = detail::kSigns[s_cur];
        if (i == 1) {
            choice[0] = detail::kSigns[s_prev];
            break;
        }
        const std::uint8_t s_before = from[i][2 * s_prev + s_cur];
        s_cur = s_prev;
        s_prev = s_before;
    }
    return detail::assemble(b, std::move(choice), total);
}

/// Noiseless |first-order rate| between model_ref and model_x plus additive
/// Gaussian noise (seeded), floored at zero. zeta0 is filled noiselessly.
inline RateMeasurementSeries synth_measurements(const GasParameters& gas, const StateScatteringModel& model_ref,
                                                const StateScatteringModel& model_x, std::span<const double> fields,
                                                double eta0, double noise_sigma, std::uint64_t seed) {
    if (!(noise_sigma >= 0)) throw DomainError("noise_sigma", "must be >= 0");
    RateMeasurementSeries s;
    s.fields.assign(fields.begin(), fields.end());
    s.noise_sigma = noise_sigma;
    s.rates.resize(fields.size());
    s.zeta0.resize(fields.size());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto a_ref = evaluate_model(model_ref, fields[i]);
        const auto a_x = evaluate_model(model_x, fields[i]);
        const double r = first_order_rate(gas, a_ref, a_x, eta0);
        const double eps = noise_sigma > 0 ? noise_sigma * noise(rng) : 0.0;
        s.rates[i] = std::max(0.0, r + eps);
        s.zeta0[i] = coefficients(gas, a_ref, a_x).zeta0;
    }
    validate(s);
    return s;
}

/// Branches of the unknown state against a known reference model. The
/// unknown loss part comes from each point's zeta0, or from beta_x_fallback
/// when the series carries no zeta0.
inline BranchSeries reference_branches(const GasParameters& gas, const StateScatteringModel& model_ref,
                                       const RateMeasurementSeries& series, double eta0,
                                       double beta_x_fallback = 0) {
    validate(series);
    const std::size_t n = series.fields.size();
    std::vector<double> alpha_ref(n), beta_ref(n), beta_x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = evaluate_model(model_ref, series.fields[i]);
        alpha_ref[i] = a.alpha;
        beta_ref[i] = a.beta;
        beta_x[i] = series.zeta0.empty() ? beta_x_fallback : beta_from_decay(gas, series.zeta0[i], a.beta);
    }
    return two_branches(series, alpha_ref, beta_ref, beta_x, gas, eta0);
}

enum class BranchRule { flat, smooth };

inline InversionResult select_branch(const BranchSeries& b, BranchRule rule, double anchor) {
    return rule == BranchRule::flat ? select_branch_flat(b) : select_branch_smooth(b, anchor);
}

inline InversionResult invert(const GasParameters& gas, const StateScatteringModel& model_ref,
                              const RateMeasurementSeries& series, double eta0, BranchRule rule, double anchor,
                              double beta_x_fallback = 0) {
    return select_branch(reference_branches(gas, model_ref, series, eta0, beta_x_fallback), rule, anchor);
}

}  // namespace decoh
