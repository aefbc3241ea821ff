#include <catch_amalgamated.hpp>

#include <sstream>

#include "decoh/csv.hpp"
#include "support.hpp"

using namespace decoh;

TEST_CASE("17 significant digits in scientific notation") {
    CHECK(csv::format_double(1.0) == "1.0000000000000000e+00");
    CHECK(csv::format_double(-0.75) == "-7.5000000000000000e-01");
    CHECK(csv::format_double(std::ldexp(1.0, -100)) == "7.8886090522101181e-31");
    CHECK(csv::format_double(0.1) == "1.0000000000000001e-01");
}

TEST_CASE("written rows read back exactly") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    std::ostringstream out;
    csv::Writer w(out, csv::columns::invert);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 200; ++i) {
        const double f = std::ldexp(u(rng), static_cast<int>(u(rng) * 300));
        const double q = u(rng) * 1e-9, m = -u(rng) * 1e-7, a = u(rng) * 1e300;
        const long long sign = i % 2 ? 1 : -1;
        w.row({f, q, m, sign, a, static_cast<long long>(i % 3 == 0)});
        rows.push_back({f, q, m, static_cast<double>(sign), a, static_cast<double>(i % 3 == 0)});
    }
    std::istringstream in(out.str());
    const auto t = csv::read(in);
    REQUIRE(t.header == csv::columns::invert);
    REQUIRE(t.rows() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < t.header.size(); ++j) {
            const double got = t.column(t.header[j])[i];
            CHECK(testing::rel_err(got, rows[i][j]) <= 1e-15);
        }
    CHECK(out.str().find("e+") != std::string::npos);
}

TEST_CASE("malformed tables") {
    std::istringstream empty("");
    CHECK_THROWS_AS(csv::read(empty), ConfigError);
    std::istringstream ragged("a,b\n1,2\n3\n");
    CHECK_THROWS_AS(csv::read(ragged), ConfigError);
    std::istringstream word("a,b\n1,two\n");
    CHECK_THROWS_AS(csv::read(word), ConfigError);
    std::istringstream ok("a,b\r\n1,2\r\n");
    const auto t = csv::read(ok);
    CHECK(t.column("b")[0] == 2);
    CHECK_THROWS_AS(t.column("c"), ConfigError);
    std::ostringstream out;
    csv::Writer w(out, {"a", "b"});
    CHECK_THROWS_AS(w.row({1.0}), Error);
}
