#pragma once

// Field-dependent complex s-wave scattering lengths.
//
// Sign convention used throughout: a = alpha - i*beta with beta >= 0, so the
// loss part is non-negative and every loss rate derived from it is a decay.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "decoh/errors.hpp"
#include "decoh/units.hpp"

namespace decoh {

/// Real part and loss part of a scattering length, both in meters.
struct ComplexScatteringLength {
    double alpha = 0;
    double beta = 0;

    std::complex<double> value() const noexcept { return {alpha, -beta}; }
    static ComplexScatteringLength from_value(std::complex<double> a) noexcept {
        return {a.real(), -a.imag()};
    }
    static ComplexScatteringLength from_bohr(double alpha_bohr, double beta_bohr) noexcept {
        return {bohr_to_meter(alpha_bohr), bohr_to_meter(beta_bohr)};
    }
    bool finite() const noexcept { return std::isfinite(alpha) && std::isfinite(beta); }
    friend bool operator==(const ComplexScatteringLength&, const ComplexScatteringLength&) = default;
};

/// |a_b - a_a|^2 = (d alpha)^2 + (d beta)^2.
inline double squared_difference(const ComplexScatteringLength& a, const ComplexScatteringLength& b) noexcept {
    const double da = b.alpha - a.alpha;
    const double db = b.beta - a.beta;
    return da * da + db * db;
}

/// One decayed Feshbach resonance: strength / (2 (B - position) / width + i).
struct ResonanceTerm {
    double position = 0;  // G
    double width = 1;     // G, > 0
    double strength = 0;  // m, >= 0
    friend bool operator==(const ResonanceTerm&, const ResonanceTerm&) = default;
};

struct StateScatteringModel {
    std::string label;
    ComplexScatteringLength background;
    std::vector<ResonanceTerm> resonances;  // strictly increasing positions

    bool field_independent() const noexcept { return resonances.empty(); }
    friend bool operator==(const StateScatteringModel&, const StateScatteringModel&) = default;
};

/// Checks the hard invariants (throws DomainError) and returns soft warnings,
/// currently only for resonances closer than their mean width.
inline std::vector<std::string> validate(const StateScatteringModel& model) {
    const auto where = [&](const std::string& f) { return "state '" + model.label + "' " + f; };
    if (!model.background.finite()) throw DomainError(where("background"), "must be finite");
    if (model.background.beta < 0)
        throw DomainError(where("background.beta"), "loss part must be >= 0");
    std::vector<std::string> warnings;
    for (std::size_t j = 0; j < model.resonances.size(); ++j) {
        const auto& r = model.resonances[j];
        const auto tag = where("resonance " + std::to_string(j));
        if (!std::isfinite(r.position)) throw DomainError(tag, "position must be finite");
        if (!(r.width > 0) || !std::isfinite(r.width)) throw DomainError(tag, "width must be > 0");
        if (!(r.strength >= 0) || !std::isfinite(r.strength)) throw DomainError(tag, "strength must be >= 0");
        if (j > 0) {
            const auto& prev = model.resonances[j - 1];
            if (!(r.position > prev.position))
                throw DomainError(tag, "positions must be strictly increasing");
            if (r.position - prev.position < 0.5 * (r.width + prev.width))
                warnings.push_back(tag + " overlaps resonance " + std::to_string(j - 1));
        }
    }
    return warnings;
}

inline ComplexScatteringLength evaluate_model(const StateScatteringModel& model, double field) {
    if (!std::isfinite(field)) throw SingularityError(0, field);
    double alpha = model.background.alpha;
    double beta = model.background.beta;
    for (std::size_t j = 0; j < model.resonances.size(); ++j) {
        const auto& r = model.resonances[j];
        const double detuning = 2.0 * (field - r.position) / r.width;
        const double denom = detuning * detuning + 1.0;
        const double da = r.strength * detuning / denom;
        const double db = r.strength / denom;
        if (!std::isfinite(da) || !std::isfinite(db)) throw SingularityError(j, field);
        alpha += da;
        beta += db;
    }
    if (!std::isfinite(alpha) || !std::isfinite(beta)) throw SingularityError(model.resonances.size(), field);
    return {alpha, beta};
}

/// s-wave amplitude f(k) = 1 / (-1/a + r_eff k^2 / 2 - i k).
inline std::complex<double> amplitude(const ComplexScatteringLength& a, double effective_range, double k) {
    if (k < 0) throw DomainError("k", "momentum must be >= 0");
    const std::complex<double> av = a.value();
    if (k == 0) {
        if (av == 0.0) throw DomainError("a", "amplitude degenerate for a = 0 at k = 0");
        return -av;
    }
    if (av == 0.0) return 0.0;
    const std::complex<double> g = -1.0 / av + 0.5 * effective_range * k * k;
    return 1.0 / (g - std::complex<double>(0, k));
}

/// f(p) = c0 + c1 p + O(p^2) with p = hbar k.
struct AmplitudeExpansion {
    std::complex<double> c0;  // m
    std::complex<double> c1;  // m / (kg m/s)
    double effective_range = 0;

    /// Coefficient of k rather than p: i a^2.
    std::complex<double> c1_per_k() const noexcept { return c1 * constants::hbar; }
};

inline AmplitudeExpansion low_momentum_expansion(const ComplexScatteringLength& a,
                                                 double effective_range = 0) {
    const std::complex<double> av = a.value();
    const std::complex<double> i(0, 1);
    return {-av, i * av * av / constants::hbar, effective_range};
}

}  // namespace decoh
