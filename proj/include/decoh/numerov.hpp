#pragma once

// Brute-force s-wave solver for square wells with an optional absorbing
// (imaginary) depth. Validation only: nothing on the production path uses it.

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <vector>

#include "decoh/errors.hpp"
#include "decoh/scattering.hpp"
#include "decoh/units.hpp"

namespace decoh {

enum class PotentialKind { square_well, square_well_with_absorber };

/// V(r) = -(depth + i absorber_depth) for r < range, zero outside.
struct RadialPotential {
    PotentialKind kind = PotentialKind::square_well;
    double depth = 0;           // J, > 0 attractive
    double absorber_depth = 0;  // J, >= 0
    double range = 0;           // m
    double reduced_mass = 0;    // kg
};

struct NumerovConfig {
    double step = 0;           // m
    double match_radius = 0;   // m
    std::vector<double> momenta;  // 1/m, strictly decreasing
};

/// Depth giving the interior wavenumber kappa with kappa * range = kappa_range.
inline double depth_for_kappa_range(double kappa_range, double range, double reduced_mass) {
    const double kappa = kappa_range / range;
    return constants::hbar * constants::hbar * kappa * kappa / (2.0 * reduced_mass);
}

inline RadialPotential make_square_well(double depth, double range, double reduced_mass,
                                        double absorber_depth = 0) {
    if (!(range > 0)) throw DomainError("range", "must be > 0");
    if (!(absorber_depth >= 0)) throw DomainError("absorber_depth", "must be >= 0");
    if (!(reduced_mass > 0)) throw DomainError("reduced_mass", "must be > 0");
    return {absorber_depth > 0 ? PotentialKind::square_well_with_absorber : PotentialKind::square_well,
            depth, absorber_depth, range, reduced_mass};
}

/// step = range/1000, matching at 3 range, k = {1e4, 5e3, 2.5e3} 1/m scaled down
/// if needed so that k * range < 1e-3.
inline NumerovConfig default_numerov_config(const RadialPotential& v) {
    NumerovConfig c;
    c.step = v.range / 1000.0;
    c.match_radius = 3.0 * v.range;
    double scale = 1.0;
    if (1e4 * v.range >= 1e-3) scale = 0.5e-3 / (1e4 * v.range);
    c.momenta = {1e4 * scale, 5e3 * scale, 2.5e3 * scale};
    return c;
}

inline void validate(const NumerovConfig& c, const RadialPotential& v) {
    if (!(v.range > 0)) throw DomainError("range", "must be > 0");
    if (!(v.absorber_depth >= 0)) throw DomainError("absorber_depth", "must be >= 0");
    if (!(v.reduced_mass > 0)) throw DomainError("reduced_mass", "must be > 0");
    if (!(c.step > 0) || !(c.step < v.range / 100.0))
        throw DomainError("step", "must satisfy 0 < step < range/100");
    if (!(c.match_radius > v.range)) throw DomainError("match_radius", "must exceed the potential range");
    for (std::size_t i = 0; i < c.momenta.size(); ++i) {
        if (!(c.momenta[i] > 0)) throw DomainError("momenta", "must be > 0");
        if (i > 0 && !(c.momenta[i] < c.momenta[i - 1]))
            throw DomainError("momenta", "must be strictly decreasing");
    }
}

namespace detail {

using cplx = std::complex<double>;

// One constant-coefficient Numerov step for u'' = -q2 u.
inline cplx numerov_next(cplx u_prev, cplx u_cur, cplx q2, double h) {
    const cplx w = 1.0 + h * h * q2 / 12.0;
    return (2.0 * (1.0 - 5.0 * h * h * q2 / 12.0) * u_cur - w * u_prev) / w;
}

// Taylor step for u'' = -q2 u from (u, du) at x to x + h, sixth order.
inline cplx taylor_step(cplx u, cplx du, cplx q2, double h) {
    const double h2 = h * h;
    return u + h * du - q2 * h2 / 2.0 * u - q2 * h2 * h / 6.0 * du +
           q2 * q2 * h2 * h2 / 24.0 * u + q2 * q2 * h2 * h2 * h / 120.0 * du -
           q2 * q2 * q2 * h2 * h2 * h2 / 720.0 * u;
}

}  // namespace detail

/// Scattering amplitude f(k) from outward Numerov integration, matched to
/// A [sin(kr) + k f e^{ikr}] at two exterior radii ending at match_radius.
inline std::complex<double> solve_swave(const RadialPotential& v, double k, const NumerovConfig& config) {
    using detail::cplx;
    validate(config, v);
    if (!(k > 0)) throw DomainError("k", "must be > 0");

    const double hb2 = constants::hbar * constants::hbar;
    const cplx q2_in = k * k + 2.0 * v.reduced_mass * cplx(v.depth, v.absorber_depth) / hb2;
    const cplx q2_out = k * k;

    // The well edge sits exactly on a node.
    const auto n_in = static_cast<std::size_t>(std::ceil(v.range / config.step));
    const double h = v.range / static_cast<double>(n_in);

    cplx u_prev = 0.0;
    cplx u_cur = h;
    for (std::size_t n = 1; n < n_in; ++n) {
        const cplx u_next = detail::numerov_next(u_prev, u_cur, q2_in, h);
        u_prev = u_cur;
        u_cur = u_next;
    }
    // u_cur = u(R); extend the interior solution one node past R for the derivative.
    const cplx u_over = detail::numerov_next(u_prev, u_cur, q2_in, h);
    const cplx u_edge = u_cur;
    const cplx du_edge = (u_over - u_prev) * (1.0 + h * h * q2_in / 6.0) / (2.0 * h);

    const auto n_out = static_cast<std::size_t>(std::ceil((config.match_radius - v.range) / h));
    if (n_out < 4) throw NumericalFailure("match radius too close to the well edge");
    const std::size_t n_mid = n_out / 2;

    cplx u_mid = 0.0;
    u_prev = u_edge;
    u_cur = detail::taylor_step(u_edge, du_edge, q2_out, h);
    for (std::size_t n = 1; n < n_out; ++n) {
        if (n == n_mid) u_mid = u_cur;
        const cplx u_next = detail::numerov_next(u_prev, u_cur, q2_out, h);
        u_prev = u_cur;
        u_cur = u_next;
    }
    const double r1 = v.range + static_cast<double>(n_mid) * h;
    const double r2 = v.range + static_cast<double>(n_out) * h;

    const cplx i(0, 1);
    const double s1 = std::sin(k * r1), s2 = std::sin(k * r2);
    const cplx e1 = std::exp(i * (k * r1)), e2 = std::exp(i * (k * r2));
    const cplx det = s1 * e2 - s2 * e1;
    if (std::abs(det) < 1e-300) throw NumericalFailure("matching determinant vanished");
    const cplx a_coef = (u_mid * e2 - u_cur * e1) / det;
    const cplx b_coef = (s1 * u_cur - s2 * u_mid) / det;
    if (std::abs(a_coef) < 1e-300) throw NumericalFailure("matching produced a null regular component");
    return b_coef / (a_coef * k);
}

/// Extrapolates g(k^2) = 1/f + ik to k = 0 (Neville in k^2) and returns
/// a = -1/g(0) split into (alpha, beta).
inline ComplexScatteringLength extract_scattering_length(const RadialPotential& v, const NumerovConfig& config) {
    using detail::cplx;
    if (config.momenta.size() < 2) throw DomainError("momenta", "need at least two momenta");
    validate(config, v);
    if (v.depth == 0 && v.absorber_depth == 0) return {0.0, 0.0};

    const std::size_t n = config.momenta.size();
    std::vector<double> x(n);
    std::vector<cplx> g(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double k = config.momenta[j];
        const cplx f = solve_swave(v, k, config);
        x[j] = k * k;
        g[j] = 1.0 / f + cplx(0, k);
    }

    // Neville tableau evaluated at x = 0.
    auto neville = [&](std::size_t count) {
        std::vector<cplx> p(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(count));
        for (std::size_t m = 1; m < count; ++m)
            for (std::size_t j = 0; j + m < count; ++j)
                p[j] = (x[j + m] * p[j] - x[j] * p[j + 1]) / (x[j + m] - x[j]);
        return p[0];
    };
    const cplx a_full = -1.0 / neville(n);
    const cplx a_less = -1.0 / neville(n - 1);
    const double residual = std::abs(a_full - a_less) / std::max(std::abs(a_full), 1e-8 * v.range);
    if (!(residual <= 1e-4)) {
        std::ostringstream msg;
        msg << "k -> 0 extrapolation residual " << residual << " exceeds 1e-4 (a = " << a_full
            << " m, previous order " << a_less << " m)";
        throw AccuracyError(msg.str());
    }
    return ComplexScatteringLength::from_value(a_full);
}

/// a = R (1 - tan(kappa R) / (kappa R)) for an attractive square well.
inline double analytic_square_well(double depth, double range, double reduced_mass) {
    if (depth == 0) return 0.0;
    const double kr = std::sqrt(2.0 * reduced_mass * depth) / constants::hbar * range;
    if (std::abs(std::cos(kr)) < 1e-8)
        throw NumericalFailure("scattering length diverges: kappa R at a bound-state threshold");
    return range * (1.0 - std::tan(kr) / kr);
}

/// Same closed form with the complex interior wavenumber of an absorbing well.
inline ComplexScatteringLength analytic_absorbing_square_well(double depth, double absorber_depth,
                                                              double range, double reduced_mass) {
    using detail::cplx;
    if (depth == 0 && absorber_depth == 0) return {0, 0};
    const cplx kr = std::sqrt(2.0 * reduced_mass * cplx(depth, absorber_depth)) / constants::hbar * range;
    if (std::abs(std::cos(kr)) < 1e-8)
        throw NumericalFailure("scattering length diverges: kappa R at a bound-state threshold");
    return ComplexScatteringLength::from_value(range * (1.0 - std::tan(kr) / kr));
}

}  // namespace decoh
