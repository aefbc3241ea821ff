#pragma once

// Decoherence coefficients of a two-state superposition in an ultracold buffer
// gas, and the low-temperature, short-time series built from them.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "decoh/errors.hpp"
#include "decoh/scattering.hpp"
#include "decoh/units.hpp"

namespace decoh {

struct DecoherenceCoefficients {
    double xi1 = 0;    // s^-1 K^-1/2
    double xi21 = 0;   // s^-1 K^-1
    double xi22 = 0;   // s^-2 K^-1
    double zeta0 = 0;  // s^-1
    double zeta1 = 0;  // s^-1 K^-1/2
    friend bool operator==(const DecoherenceCoefficients&, const DecoherenceCoefficients&) = default;
};

/// C = 2^{5/2} pi^{1/2} n (k_B / m*)^{1/2}; first-order rate per T^{1/2} per |a_b - a_a|^2.
inline double rate_constant(const GasParameters& gas) {
    return std::pow(2.0, 2.5) * std::sqrt(constants::pi) * gas.density() *
           std::sqrt(constants::boltzmann / gas.reduced_mass());
}

/// 3 (2r+1)^{1/2} + (1 + 2r + 3r^2)/r asin(r/(r+1)) - 4(1+r)
inline double mass_ratio_bracket(double r) {
    return 3.0 * std::sqrt(2.0 * r + 1.0) + (1.0 + 2.0 * r + 3.0 * r * r) / r * std::asin(r / (r + 1.0)) -
           4.0 * (1.0 + r);
}

inline void require_loss_convention(const ComplexScatteringLength& a, const char* which) {
    if (!(a.beta >= 0))
        throw ConventionError(std::string(which) + ": loss part beta must be >= 0 (a = alpha - i beta)");
}

inline DecoherenceCoefficients coefficients(const GasParameters& gas, const ComplexScatteringLength& a_a,
                                            const ComplexScatteringLength& a_b) {
    require_loss_convention(a_a, "state a");
    require_loss_convention(a_b, "state b");
    using namespace constants;
    const double n = gas.density();
    const double ms = gas.reduced_mass();
    const double r = gas.mass_ratio();
    const double c = rate_constant(gas);

    const double d_alpha = a_b.alpha - a_a.alpha;
    const double d_beta = a_b.beta - a_a.beta;
    const double diff2 = d_alpha * d_alpha + d_beta * d_beta;
    const double beta_sum = a_a.beta + a_b.beta;
    const double beta_quad = a_a.beta * a_a.beta + a_b.beta * a_b.beta + a_a.beta * a_b.beta;
    const double bracket = mass_ratio_bracket(r);

    DecoherenceCoefficients out;
    out.xi1 = -c * diff2;
    out.xi21 = 12.0 * pi * n * boltzmann * std::pow(r, 1.5) * beta_sum * diff2 / hbar;
    out.xi22 = (32.0 * pi * pi * pi * n * n * boltzmann / ms + 8.0 * pi * boltzmann * n * n / gas.atom_mass() * bracket) *
                   diff2 * diff2 -
               64.0 * pi * boltzmann * n * n / gas.atom_mass() * bracket * beta_quad * diff2;
    out.zeta0 = -4.0 * pi * hbar * n / ms * beta_sum / 2.0;
    out.zeta1 = c * (beta_sum * beta_sum - d_alpha * d_alpha);
    return out;
}

/// Trap-loss rate of a single state, gamma = 4 pi hbar n beta / m*.
inline double loss_rate(const GasParameters& gas, const ComplexScatteringLength& a) {
    require_loss_convention(a, "state");
    return 4.0 * constants::pi * constants::hbar * gas.density() * a.beta / gas.reduced_mass();
}

/// d eta / dt at t = 0 (signed; negative for decoherence).
inline double decoherence_rate_t0(const DecoherenceCoefficients& c, double temperature, double eta0) {
    return eta0 * (std::sqrt(temperature) * c.xi1 + temperature * c.xi21);
}

/// |first-order rate| = eta0 C T^{1/2} |a_b - a_a|^2, the quantity the inversion consumes.
inline double first_order_rate(const GasParameters& gas, const ComplexScatteringLength& a_a,
                               const ComplexScatteringLength& a_b, double eta0) {
    return eta0 * rate_constant(gas) * std::sqrt(gas.temperature()) * squared_difference(a_a, a_b);
}

/// c0 + c1 t + c2 t^2.
struct QuadraticPolynomial {
    double c0 = 0, c1 = 0, c2 = 0;
    double operator()(double t) const noexcept { return c0 + t * (c1 + t * c2); }
    QuadraticPolynomial derivative() const noexcept { return {c1, 2.0 * c2, 0.0}; }
    friend bool operator==(const QuadraticPolynomial&, const QuadraticPolynomial&) = default;
};

/// eta(t) truncated at the printed order.
inline QuadraticPolynomial eta_polynomial(const DecoherenceCoefficients& c, double temperature, double eta0) {
    return {eta0, eta0 * (std::sqrt(temperature) * c.xi1 + temperature * c.xi21),
            eta0 * (temperature * c.xi22) / 2.0};
}

/// d eta / dt at arbitrary t, written out independently of eta_polynomial.
inline QuadraticPolynomial rate_polynomial(const DecoherenceCoefficients& c, double temperature, double eta0) {
    return {eta0 * (std::sqrt(temperature) * c.xi1 + temperature * c.xi21), eta0 * (temperature * c.xi22), 0.0};
}

inline std::vector<double> eta_series(const DecoherenceCoefficients& c, double temperature, double eta0,
                                      std::span<const double> times) {
    const auto p = eta_polynomial(c, temperature, eta0);
    std::vector<double> out(times.size());
    std::transform(times.begin(), times.end(), out.begin(), [&](double t) { return t == 0 ? eta0 : p(t); });
    return out;
}

/// |rho_ab(t)| = rho0 e^{zeta0 t} (1 + T^{1/2} zeta1 t).
inline std::vector<double> rho_offdiag_series(const DecoherenceCoefficients& c, double temperature, double rho0,
                                              std::span<const double> times) {
    const double slope = std::sqrt(temperature) * c.zeta1;
    std::vector<double> out(times.size());
    std::transform(times.begin(), times.end(), out.begin(),
                   [&](double t) { return t == 0 ? rho0 : rho0 * std::exp(c.zeta0 * t) * (1.0 + slope * t); });
    return out;
}

inline std::vector<double> population_series(const GasParameters& gas, const ComplexScatteringLength& a,
                                             double rho0, std::span<const double> times) {
    const double gamma = loss_rate(gas, a);
    std::vector<double> out(times.size());
    std::transform(times.begin(), times.end(), out.begin(),
                   [&](double t) { return t == 0 ? rho0 : rho0 * std::exp(-gamma * t); });
    return out;
}

namespace detail {

// Positive real roots of A t^2 + B t + C = 0.
inline void positive_roots(double a, double b, double c, std::vector<double>& out) {
    auto push = [&](double t) {
        if (std::isfinite(t) && t > 0) out.push_back(t);
    };
    if (a == 0) {
        if (b != 0) push(-c / b);
        return;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0) return;
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q != 0) {
        push(q / a);
        push(c / q);
    } else {
        push(0.0);
    }
}

}  // namespace detail

/// Largest t such that, on all of [0, t], the second-order part of the eta
/// series stays within epsilon * max(|first-order part|, epsilon). +inf when
/// the second-order part vanishes identically.
inline double validity_window(const DecoherenceCoefficients& c, double temperature, double epsilon) {
    if (!(epsilon > 0 && epsilon < 1)) throw DomainError("epsilon", "must lie in (0, 1)");
    const double q1 = temperature * c.xi21;
    const double q2 = temperature * c.xi22 / 2.0;
    const double a1 = std::sqrt(temperature) * std::abs(c.xi1);
    if (q1 == 0 && q2 == 0) return std::numeric_limits<double>::infinity();

    auto holds = [&](double t) {
        const double second = std::abs(t * (q1 + t * q2));
        return second <= epsilon * std::max(a1 * t, epsilon);
    };

    std::vector<double> cand;
    // q2 t^2 + q1 t = +-eps a1 t, after dividing by t
    detail::positive_roots(0.0, q2, q1 - epsilon * a1, cand);
    detail::positive_roots(0.0, q2, q1 + epsilon * a1, cand);
    // q2 t^2 + q1 t = +-eps^2
    detail::positive_roots(q2, q1, -epsilon * epsilon, cand);
    detail::positive_roots(q2, q1, epsilon * epsilon, cand);
    if (a1 > 0) cand.push_back(epsilon / a1);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    double lo = 0;
    for (double t : cand) {
        if (!holds(0.5 * (lo + t))) return lo;
        lo = t;
    }
    return holds(2.0 * lo + 1.0) ? std::numeric_limits<double>::infinity() : lo;
}

struct InitialState {
    double eta0 = 1;
    double rho_aa = 0.5;
    double rho_bb = 0.5;
    double rho_ab = 0.5;  // |rho_ab(0)|
};

struct CoherenceTrajectory {
    std::vector<double> times;
    std::vector<double> eta;
    std::vector<double> rho_offdiag;
    std::vector<double> rho_aa;
    std::vector<double> rho_bb;
    double validity_time = 0;
};

inline CoherenceTrajectory evolve(const GasParameters& gas, const ComplexScatteringLength& a_a,
                                  const ComplexScatteringLength& a_b, const InitialState& init,
                                  std::span<const double> times, double epsilon = 0.1) {
    if (!(init.eta0 > 0 && init.eta0 <= 1)) throw DomainError("eta0", "must lie in (0, 1]");
    if (!(init.rho_ab > 0)) throw DomainError("rho_ab", "must be > 0");
    for (double t : times)
        if (!(t >= 0)) throw DomainError("times", "must be >= 0");
    const auto c = coefficients(gas, a_a, a_b);
    const double temp = gas.temperature();
    CoherenceTrajectory out;
    out.times.assign(times.begin(), times.end());
    out.eta = eta_series(c, temp, init.eta0, times);
    out.rho_offdiag = rho_offdiag_series(c, temp, init.rho_ab, times);
    out.rho_aa = population_series(gas, a_a, init.rho_aa, times);
    out.rho_bb = population_series(gas, a_b, init.rho_bb, times);
    out.validity_time = validity_window(c, temp, epsilon);
    return out;
}

}  // namespace decoh
