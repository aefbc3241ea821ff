#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace decoh;
using Catch::Matchers::WithinRel;

TEST_CASE("baseline gas parameters") {
    const auto g = testing::baseline_gas();
    CHECK(g.temperature() == 1e-6);
    CHECK_THAT(g.density(), WithinRel(1e17, 1e-15));
    CHECK_THAT(g.mass_ratio(), WithinRel(1.62, 1e-15));
    CHECK_THAT(g.reduced_mass(), WithinRel(1.5401182951268883179e-26, 1e-14));
    CHECK_THAT(g.atom_mass(), WithinRel(24.3e-3 / constants::avogadro, 1e-15));
}

TEST_CASE("length conversions") {
    CHECK_THAT(bohr_to_meter(100), WithinRel(5.29177210903e-9, 1e-15));
    CHECK_THAT(convert_length(100, "bohr", "m"), WithinRel(5.29177210903e-9, 1e-15));
    CHECK_THAT(convert_length(1, LengthUnit::nanometer, LengthUnit::bohr), WithinRel(1e-9 / 5.29177210903e-11, 1e-15));
    for (double x : {-3.5, 0.0, 1e-3, 42.0, 1e6})
        CHECK_THAT(meter_to_bohr(bohr_to_meter(x)), WithinRel(x, 1e-15));
    CHECK_THROWS_AS(convert_length(1, "furlong", "m"), ConfigError);
}

TEST_CASE("unit parsing") {
    CHECK(parse_length_unit("bohr") == LengthUnit::bohr);
    CHECK(parse_mass_unit("g/mol") == MassUnit::gram_per_mole);
    CHECK(parse_density_unit("cm^-3") == DensityUnit::per_cubic_centimeter);
    CHECK(parse_temperature_unit("K") == TemperatureUnit::kelvin);
    CHECK_THROWS_AS(parse_temperature_unit("F"), ConfigError);
    CHECK_THROWS_AS(parse_density_unit("per litre"), ConfigError);
}

TEST_CASE("non-positive gas inputs name the offending field") {
    auto field_of = [](auto&& f) {
        try {
            f();
        } catch (const DomainError& e) {
            return e.field();
        }
        return std::string("<none>");
    };
    CHECK(field_of([] { build_gas_parameters(0, 1e11, 24.3, 15); }) == "temperature");
    CHECK(field_of([] { build_gas_parameters(1e-6, -1, 24.3, 15); }) == "density");
    CHECK(field_of([] { build_gas_parameters(1e-6, 1e11, 0, 15); }) == "atom_mass");
    CHECK(field_of([] { build_gas_parameters(1e-6, 1e11, 24.3, -2); }) == "particle_mass");
    CHECK(field_of([] { build_gas_parameters_si(1e-6, 1e17, std::nan(""), 1e-26); }) == "atom_mass");
}

TEST_CASE("reduced mass is symmetric and below both masses") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> m(1.0, 300.0);
    for (int i = 0; i < 200; ++i) {
        const double a = m(rng), b = m(rng);
        const auto g1 = build_gas_parameters(1e-6, 1e11, a, b);
        const auto g2 = build_gas_parameters(1e-6, 1e11, b, a);
        CHECK_THAT(g1.reduced_mass(), WithinRel(g2.reduced_mass(), 1e-15));
        CHECK(g1.reduced_mass() < std::min(g1.atom_mass(), g1.particle_mass()));
        CHECK_THAT(g1.mass_ratio() * g2.mass_ratio(), WithinRel(1.0, 1e-15));
    }
}

TEST_CASE("with_temperature keeps the rest") {
    const auto g = testing::baseline_gas().with_temperature(2e-6);
    CHECK(g.temperature() == 2e-6);
    CHECK(g.reduced_mass() == testing::baseline_gas().reduced_mass());
    CHECK_THROWS_AS(g.with_temperature(0), DomainError);
}
