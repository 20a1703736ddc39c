#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "urllc/csv.hpp"
#include "urllc/error.hpp"
#include "urllc/seed.hpp"
#include "urllc/stats.hpp"

using namespace urllc;

// Wilson bounds: statsmodels proportion_confint(method="wilson", alpha=0.05).
TEST_CASE("wilson interval") {
    const auto a = stats::wilson(0, 10);
    CHECK(a.low == 0.0);
    CHECK(a.high == doctest::Approx(0.27753279986288926).epsilon(1e-9));
    const auto b = stats::wilson(5, 10);
    CHECK(b.low == doctest::Approx(0.23659309051256394).epsilon(1e-9));
    CHECK(b.high == doctest::Approx(0.76340690948743606).epsilon(1e-9));
    const auto c = stats::wilson(10, 10);
    CHECK(c.low == doctest::Approx(0.72246720013711063).epsilon(1e-9));
    CHECK(c.high == doctest::Approx(1.0).epsilon(1e-15));
    const auto d = stats::wilson(3, 100);
    CHECK(d.low == doctest::Approx(0.010254524024038911).epsilon(1e-9));
    CHECK(d.high == doctest::Approx(0.084519364290527629).epsilon(1e-9));
    const auto e = stats::wilson(0, 0);
    CHECK(e.low == 0.0);
    CHECK(e.high == 1.0);
}

TEST_CASE("mean with 95 percent interval") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const auto m = stats::mean_ci95(v);
    CHECK(m.mean == 2.5);
    CHECK(m.count == 4);
    const double se = std::sqrt(5.0 / 3.0 / 4.0);
    CHECK(m.ci.high - m.mean == doctest::Approx(1.959963984540054 * se));
    CHECK(stats::mean_ci95(std::vector<double>{}).count == 0);
}

TEST_CASE("spearman correlation") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    const std::vector<double> up{10, 20, 30, 40, 50};
    const std::vector<double> down{9, 7, 5, 3, 1};
    CHECK(stats::spearman(x, up) == doctest::Approx(1.0));
    CHECK(stats::spearman(x, down) == doctest::Approx(-1.0));
    // scipy.stats.spearmanr, tied ranks averaged
    const std::vector<double> tied{5, 6, 7, 8, 7};
    CHECK(stats::spearman(x, tied) == doctest::Approx(0.8207826816681233));
    CHECK_THROWS_AS(stats::spearman(x, std::vector<double>{1.0}), UsageError);
}

TEST_CASE("correlation upper bound") {
    CHECK(stats::correlation_upper_bound(-0.5, 3) == 1.0);
    const double b = stats::correlation_upper_bound(-0.5, 103);
    CHECK(b == doctest::Approx(std::tanh(std::atanh(-0.5) + 1.6448536269514722 / 10.0)));
    CHECK(stats::correlation_upper_bound(-1.0, 1000) < -0.99);
}

TEST_CASE("binomial half width") {
    CHECK(stats::binomial_half_width(50, 100) == doctest::Approx(1.959963984540054 * 0.05));
    CHECK(stats::binomial_half_width(0, 100) == 0.0);
}

TEST_CASE("doubles are written in shortest round-trip form") {
    CHECK(csv::format_double(0.1) == "0.1");
    CHECK(csv::format_double(1e-5) == "1e-05");
    CHECK(csv::format_double(3.0) == "3");
    CHECK(csv::format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(csv::format_double(std::nan("")) == "nan");
    for (const double v : {1.0 / 3.0, 2.0 / 7.0, 6.02214076e23, 5e-324}) {
        CHECK(std::strtod(csv::format_double(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("cells") {
    CHECK(csv::Cell(true).text() == "1");
    CHECK(csv::Cell(std::uint64_t{7}).text() == "7");
    CHECK(csv::Cell(std::optional<double>{}).text().empty());
    CHECK(csv::Cell(std::optional<unsigned>{3u}).text() == "3");
    CHECK(csv::Cell("a,b").text() == "\"a,b\"");
    CHECK(csv::Cell("say \"hi\"").text() == "\"say \"\"hi\"\"\"");
    CHECK(csv::Cell("plain").text() == "plain");
}

TEST_CASE("writer and splitter") {
    std::ostringstream os;
    csv::Writer w(os);
    w.header({"a", "b"});
    w.row({1, 0.5});
    w.comment("note");
    CHECK(os.str() == "a,b\n1,0.5\n# note\n");
    CHECK(csv::split_line("x,,y\r") == std::vector<std::string>{"x", "", "y"});
}

TEST_CASE("atomic writes leave no temporary file") {
    const auto dir = std::filesystem::temp_directory_path() / "urllc_csv_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.csv";
    csv::write_atomically(path, "first\n");
    csv::write_atomically(path, "second\n");
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "second");
    CHECK_FALSE(std::filesystem::exists(dir / "out.csv.tmp"));
    CHECK_THROWS(csv::write_atomically(dir / "missing" / "x.csv", "x"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("seed derivation") {
    static_assert(fnv1a64("") == 0xcbf29ce484222325ULL);
    static_assert(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(derive_seed(1, "x", 0) != derive_seed(1, "x", 1));
    CHECK(derive_seed(1, "x", 0) != derive_seed(1, "y", 0));
    CHECK(derive_seed(1, "x", 0) != derive_seed(2, "x", 0));
    CHECK(derive_seed(5, "tag", 3) == mix64(mix64(5 ^ fnv1a64("tag")) + 3));
}
