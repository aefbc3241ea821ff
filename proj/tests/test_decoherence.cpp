#include <catch_amalgamated.hpp>

#include "mp_oracle.hpp"
#include "support.hpp"

using namespace decoh;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
ComplexScatteringLength bohr(double a, double b) { return ComplexScatteringLength::from_bohr(a, b); }
}  // namespace

TEST_CASE("frozen coefficients at the baseline gas") {
    const auto g = testing::baseline_gas();
    CHECK_THAT(rate_constant(g), WithinRel(3.0020265366148536675e19, 1e-13));

    const auto c = coefficients(g, bohr(0, 0), bohr(100, 0));
    CHECK_THAT(c.xi1, WithinRel(-840.65304966731017036, 1e-13));
    CHECK_THAT(std::sqrt(g.temperature()) * c.xi1, WithinRel(-0.84065304966731017036, 1e-13));

    const auto z = coefficients(g, bohr(0, 10), bohr(0, 10));
    CHECK_THAT(z.zeta0, WithinRel(-4.5533714262998488708, 1e-13));
    CHECK_THAT(-1 / z.zeta0, WithinRel(0.21961748919143587208, 1e-13));

    const auto p = coefficients(g, bohr(30, 5), bohr(-20, 40));
    CHECK_THAT(p.xi1, WithinRel(-313.14326100107303846, 1e-13));
    CHECK_THAT(p.xi21, WithinRel(25278.596178204918582, 1e-13));
    CHECK_THAT(p.xi22, WithinRel(949177.01458433198293, 1e-13));
    CHECK_THAT(p.zeta0, WithinRel(-10.245085709174659959, 1e-13));
    CHECK_THAT(p.zeta1, WithinRel(-39.931019859197233092, 1e-13));
}

TEST_CASE("multiprecision oracle agrees on random pairs") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> al(-300, 300), be(0, 60);
    const auto g = testing::baseline_gas();
    for (int i = 0; i < 50; ++i) {
        const double x[4] = {al(rng), be(rng), al(rng), be(rng)};
        const auto c = coefficients(g, bohr(x[0], x[1]), bohr(x[2], x[3]));
        const auto o = testing::mp_coefficients({1e-6, 1e11, 24.3, 15.0, x[0], x[1], x[2], x[3]});
        CHECK_THAT(c.xi1, WithinRel(o.xi1.convert_to<double>(), 1e-12));
        CHECK_THAT(c.xi21, WithinRel(o.xi21.convert_to<double>(), 1e-12));
        CHECK_THAT(c.xi22, WithinRel(o.xi22.convert_to<double>(), 1e-12));
        CHECK_THAT(c.zeta0, WithinRel(o.zeta0.convert_to<double>(), 1e-12));
        CHECK_THAT(c.zeta1, WithinRel(o.zeta1.convert_to<double>(), 1e-12));
    }
}

TEST_CASE("identical states do not decohere") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> al(-500, 500), be(0, 80);
    const auto g = testing::baseline_gas();
    for (int i = 0; i < 200; ++i) {
        const auto a = bohr(al(rng), be(rng));
        const auto c = coefficients(g, a, a);
        CHECK(c.xi1 == 0);
        CHECK(c.xi21 == 0);
        CHECK(c.xi22 == 0);
    }
}

TEST_CASE("coefficients are symmetric in the two states") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> al(-500, 500), be(0, 80);
    const auto g = testing::baseline_gas();
    for (int i = 0; i < 100; ++i) {
        const auto a = bohr(al(rng), be(rng)), b = bohr(al(rng), be(rng));
        const auto x = coefficients(g, a, b), y = coefficients(g, b, a);
        CHECK(x.xi1 == y.xi1);
        CHECK_THAT(x.xi21, WithinRel(y.xi21, 1e-15));
        CHECK_THAT(x.xi22, WithinRel(y.xi22, 1e-15));
        CHECK_THAT(x.zeta0, WithinRel(y.zeta0, 1e-15));
        CHECK(x.zeta1 == y.zeta1);
        CHECK(x.xi1 <= 0);
    }
}

TEST_CASE("loss floor bounds the first-order rate") {
    const auto g = testing::baseline_gas();
    const double floor = rate_constant(g) * std::pow(bohr_to_meter(10), 2);
    for (double ab = -200; ab <= 200; ab += 0.5)
        CHECK(std::abs(coefficients(g, bohr(0, 0), bohr(ab, 10)).xi1) >= floor * (1 - 1e-12));
}

TEST_CASE("negative loss part violates the convention") {
    const auto g = testing::baseline_gas();
    CHECK_THROWS_AS(coefficients(g, {1e-9, -1e-12}, {0, 0}), ConventionError);
    CHECK_THROWS_AS(coefficients(g, {0, 0}, {1e-9, -1e-12}), ConventionError);
    CHECK_THROWS_AS(loss_rate(g, {0, -1e-12}), ConventionError);
}

TEST_CASE("rate polynomial is the derivative of the eta polynomial") {
    const auto g = testing::baseline_gas();
    const auto c = coefficients(g, bohr(30, 5), bohr(-20, 40));
    for (double eta0 : {1.0, 0.4}) {
        CHECK(eta_polynomial(c, g.temperature(), eta0).derivative() ==
              rate_polynomial(c, g.temperature(), eta0));
        CHECK(rate_polynomial(c, g.temperature(), eta0)(0) == decoherence_rate_t0(c, g.temperature(), eta0));
    }
}

TEST_CASE("series start from their initial values") {
    const auto g = testing::baseline_gas();
    const auto a = bohr(30, 5), b = bohr(-20, 40);
    const auto c = coefficients(g, a, b);
    const std::vector<double> t{0.0, 0.01};
    CHECK(eta_series(c, g.temperature(), 0.8, t)[0] == 0.8);
    CHECK(rho_offdiag_series(c, g.temperature(), 0.3, t)[0] == 0.3);
    CHECK(population_series(g, a, 0.6, t)[0] == 0.6);
    CHECK(eta_series(c, g.temperature(), 0.8, t)[1] < 0.8);
}

TEST_CASE("populations decay with the loss rate") {
    const auto g = testing::baseline_gas();
    const auto a = bohr(0, 10);
    const double gamma = loss_rate(g, a);
    CHECK_THAT(1 / gamma, WithinRel(0.21961748919143587208, 1e-13));
    const std::vector<double> t{1 / gamma};
    CHECK_THAT(population_series(g, a, 1.0, t)[0], WithinRel(std::exp(-1.0), 1e-15));
    CHECK(population_series(g, bohr(5, 0), 1.0, t)[0] == 1.0);
}

TEST_CASE("validity window") {
    const auto g = testing::baseline_gas();
    const auto c = coefficients(g, bohr(30, 5), bohr(-20, 40));
    const double eps = 0.1;
    const double tv = validity_window(c, g.temperature(), eps);
    REQUIRE(std::isfinite(tv));
    REQUIRE(tv > 0);
    const double a1 = std::sqrt(g.temperature()) * std::abs(c.xi1);
    auto ok = [&](double t) {
        const double second = std::abs(g.temperature() * (c.xi21 * t + c.xi22 * t * t / 2));
        return second <= eps * std::max(a1 * t, eps) * (1 + 1e-12);
    };
    for (int i = 1; i <= 100; ++i) CHECK(ok(tv * i / 100.0));
    CHECK_FALSE(ok(tv * 1.01));

    const auto same = coefficients(g, bohr(10, 1), bohr(10, 1));
    CHECK(std::isinf(validity_window(same, g.temperature(), eps)));
    CHECK_THROWS_AS(validity_window(c, g.temperature(), 1.5), DomainError);
}

TEST_CASE("evolve bundles the series") {
    const auto g = testing::baseline_gas();
    const auto a = bohr(0, 10);
    const auto times = testing::linspace(0, 1, 11);
    const auto tr = evolve(g, a, a, {1.0, 0.5, 0.5, 0.5}, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(tr.eta[i] == 1.0);
        CHECK_THAT(tr.rho_aa[i], WithinRel(tr.rho_bb[i], 1e-15));
    }
    CHECK(std::isinf(tr.validity_time));
    CHECK_THROWS_AS(evolve(g, a, a, {0.0, 0.5, 0.5, 0.5}, times), DomainError);
    const std::vector<double> bad{-1.0};
    CHECK_THROWS_AS(evolve(g, a, a, {}, bad), DomainError);
}
