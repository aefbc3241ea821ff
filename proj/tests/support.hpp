#pragma once

// Fixtures shared by the unit tests and the acceptance binary.

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "decoh/decoh.hpp"

namespace decoh::testing {

inline GasParameters baseline_gas() { return build_gas_parameters(1e-6, 1e11, 24.3, 15.0); }

inline double rel_err(double got, double want) {
    if (got == want) return 0;
    return std::abs(got - want) / std::abs(want);
}

// Two states whose complex scattering lengths coincide exactly at 510 G:
// equal resonances at 500 G and 520 G, mirrored around 510 G, with state b's
// background shifted by the resonant real part at the crossing.
inline constexpr double kCrossingField = 510.0;

inline std::pair<StateScatteringModel, StateScatteringModel> suppression_pair() {
    const double width = 5.0, strength = 30.0, bg_alpha = 40.0, bg_beta = 2.0;
    const double delta = 2.0 * (kCrossingField - 500.0) / width;
    const double res_alpha = strength * delta / (delta * delta + 1.0);
    StateScatteringModel a{"a", ComplexScatteringLength::from_bohr(bg_alpha, bg_beta),
                           {{500.0, width, bohr_to_meter(strength)}}};
    StateScatteringModel b{"b", ComplexScatteringLength::from_bohr(bg_alpha + 2.0 * res_alpha, bg_beta),
                           {{520.0, width, bohr_to_meter(strength)}}};
    return {a, b};
}

// Flat reference at 50 a0; the unknown state's real part sweeps through it.
inline StateScatteringModel flat_reference() {
    return {"ref", ComplexScatteringLength::from_bohr(50.0, 3.0), {}};
}

inline constexpr double kUnknownStrengthBohr = 50.0;

inline StateScatteringModel resonant_unknown() {
    return {"x", ComplexScatteringLength::from_bohr(60.0, 1.0),
            {{500.0, 10.0, bohr_to_meter(kUnknownStrengthBohr)}}};
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("decoh_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace decoh::testing
