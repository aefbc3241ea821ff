#pragma once

// Physical constants, unit conversion at the I/O boundary, and the buffer-gas
// parameter record. Everything past this header works in SI.

#include <cmath>
#include <string>
#include <string_view>

#include "decoh/errors.hpp"

namespace decoh {

/// CODATA 2018.
namespace constants {
inline constexpr double boltzmann = 1.380649e-23;        // J/K, exact
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double avogadro = 6.02214076e23;        // 1/mol, exact
inline constexpr double bohr_radius = 5.29177210903e-11; // m
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double pi = 3.14159265358979323846;
}  // namespace constants

enum class LengthUnit { bohr, meter, nanometer };
enum class MassUnit { gram_per_mole, atomic_mass_unit, kilogram };
enum class DensityUnit { per_cubic_centimeter, per_cubic_meter };
enum class TemperatureUnit { kelvin, millikelvin, microkelvin, nanokelvin };

/// Conversion factors from the conventional units to SI.
struct UnitContext {
    static constexpr double to_si(LengthUnit u) {
        switch (u) {
            case LengthUnit::bohr: return constants::bohr_radius;
            case LengthUnit::meter: return 1.0;
            case LengthUnit::nanometer: return 1e-9;
        }
        return 1.0;
    }
    static constexpr double to_si(MassUnit u) {
        switch (u) {
            case MassUnit::gram_per_mole: return 1e-3 / constants::avogadro;
            case MassUnit::atomic_mass_unit: return constants::atomic_mass_unit;
            case MassUnit::kilogram: return 1.0;
        }
        return 1.0;
    }
    static constexpr double to_si(DensityUnit u) {
        return u == DensityUnit::per_cubic_centimeter ? 1e6 : 1.0;
    }
    static constexpr double to_si(TemperatureUnit u) {
        switch (u) {
            case TemperatureUnit::kelvin: return 1.0;
            case TemperatureUnit::millikelvin: return 1e-3;
            case TemperatureUnit::microkelvin: return 1e-6;
            case TemperatureUnit::nanokelvin: return 1e-9;
        }
        return 1.0;
    }
};

inline LengthUnit parse_length_unit(std::string_view s) {
    if (s == "bohr" || s == "a0") return LengthUnit::bohr;
    if (s == "meter" || s == "m") return LengthUnit::meter;
    if (s == "nanometer" || s == "nm") return LengthUnit::nanometer;
    throw ConfigError("unknown length unit '" + std::string(s) + "'");
}

inline MassUnit parse_mass_unit(std::string_view s) {
    if (s == "g/mol") return MassUnit::gram_per_mole;
    if (s == "amu" || s == "u") return MassUnit::atomic_mass_unit;
    if (s == "kg") return MassUnit::kilogram;
    throw ConfigError("unknown mass unit '" + std::string(s) + "'");
}

inline DensityUnit parse_density_unit(std::string_view s) {
    if (s == "cm^-3" || s == "1/cm3") return DensityUnit::per_cubic_centimeter;
    if (s == "m^-3" || s == "1/m3") return DensityUnit::per_cubic_meter;
    throw ConfigError("unknown density unit '" + std::string(s) + "'");
}

inline TemperatureUnit parse_temperature_unit(std::string_view s) {
    if (s == "K") return TemperatureUnit::kelvin;
    if (s == "mK") return TemperatureUnit::millikelvin;
    if (s == "uK") return TemperatureUnit::microkelvin;
    if (s == "nK") return TemperatureUnit::nanokelvin;
    throw ConfigError("unknown temperature unit '" + std::string(s) + "'");
}

inline std::string_view to_string(LengthUnit u) {
    switch (u) {
        case LengthUnit::bohr: return "bohr";
        case LengthUnit::meter: return "meter";
        case LengthUnit::nanometer: return "nanometer";
    }
    return "meter";
}

inline double convert_length(double value, LengthUnit from, LengthUnit to) {
    if (from == to) return value;
    return value * UnitContext::to_si(from) / UnitContext::to_si(to);
}

inline double convert_length(double value, std::string_view from, std::string_view to) {
    return convert_length(value, parse_length_unit(from), parse_length_unit(to));
}

inline double bohr_to_meter(double bohr) { return bohr * constants::bohr_radius; }
inline double meter_to_bohr(double meter) { return meter / constants::bohr_radius; }

/// Buffer gas and superposed particle. Construct through build_gas_parameters;
/// the derived members are never set independently.
class GasParameters {
public:
    double temperature() const noexcept { return temperature_; }    // K
    double density() const noexcept { return density_; }            // m^-3
    double atom_mass() const noexcept { return atom_mass_; }        // kg, buffer atom
    double particle_mass() const noexcept { return particle_mass_; } // kg, superposed particle
    double reduced_mass() const noexcept { return reduced_mass_; }  // kg
    double mass_ratio() const noexcept { return mass_ratio_; }      // atom / particle

    /// Same gas at another temperature.
    GasParameters with_temperature(double kelvin) const;

    friend GasParameters build_gas_parameters_si(double, double, double, double);
    friend bool operator==(const GasParameters&, const GasParameters&) = default;

private:
    GasParameters() = default;
    double temperature_ = 0;
    double density_ = 0;
    double atom_mass_ = 0;
    double particle_mass_ = 0;
    double reduced_mass_ = 0;
    double mass_ratio_ = 0;
};

inline void require_positive(double value, const char* field) {
    if (!(value > 0) || !std::isfinite(value))
        throw DomainError(field, "must be finite and strictly positive, got " + std::to_string(value));
}

/// SI inputs: K, m^-3, kg, kg.
inline GasParameters build_gas_parameters_si(double temperature, double density,
                                             double atom_mass, double particle_mass) {
    require_positive(temperature, "temperature");
    require_positive(density, "density");
    require_positive(atom_mass, "atom_mass");
    require_positive(particle_mass, "particle_mass");
    GasParameters g;
    g.temperature_ = temperature;
    g.density_ = density;
    g.atom_mass_ = atom_mass;
    g.particle_mass_ = particle_mass;
    g.reduced_mass_ = atom_mass * particle_mass / (atom_mass + particle_mass);
    g.mass_ratio_ = atom_mass / particle_mass;
    return g;
}

/// Conventional laboratory units: K, cm^-3, g/mol, g/mol.
inline GasParameters build_gas_parameters(double temperature_kelvin, double density_per_cm3,
                                          double atom_mass_g_per_mol,
                                          double particle_mass_g_per_mol) {
    require_positive(temperature_kelvin, "temperature");
    require_positive(density_per_cm3, "density");
    require_positive(atom_mass_g_per_mol, "atom_mass");
    require_positive(particle_mass_g_per_mol, "particle_mass");
    const double mass = UnitContext::to_si(MassUnit::gram_per_mole);
    return build_gas_parameters_si(temperature_kelvin,
                                   density_per_cm3 * UnitContext::to_si(DensityUnit::per_cubic_centimeter),
                                   atom_mass_g_per_mol * mass, particle_mass_g_per_mol * mass);
}

inline GasParameters GasParameters::with_temperature(double kelvin) const {
    return build_gas_parameters_si(kelvin, density_, atom_mass_, particle_mass_);
}

}  // namespace decoh
