#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "socint/distribution.hpp"
#include "socint/normal.hpp"
#include "socint/spectrum.hpp"
#include "socint/type_table.hpp"

using namespace socint;

namespace {

SpectrumCDF b11_spectrum(std::uint32_t n) {
    return spectrum_cdf(iid_type_table(FiniteDistribution::bernoulli(0.11), n));
}

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("atoms of the bernoulli n=2 spectrum") {
    const auto f = b11_spectrum(2);
    REQUIRE(f.atoms.size() == 3);
    CHECK(f.atoms[0].value == doctest::Approx(-std::log(0.89)).epsilon(1e-12));
    CHECK(f.atoms[0].mass == doctest::Approx(0.7921).epsilon(1e-12));
    CHECK(f.atoms[1].mass == doctest::Approx(0.1958).epsilon(1e-12));
    CHECK(f.atoms[2].value == doctest::Approx(-std::log(0.11)).epsilon(1e-12));
    CHECK(f.cumulative.back() == doctest::Approx(1.0).epsilon(1e-12));
    // atoms strictly increasing
    CHECK(f.atoms[0].value < f.atoms[1].value);
    CHECK(f.atoms[1].value < f.atoms[2].value);
    CHECK(f.min_value() == f.atoms[0].value);
    CHECK(f.max_value() == f.atoms[2].value);
}

TEST_CASE("equal per-element probabilities merge into one atom") {
    const auto f = spectrum_cdf(iid_type_table(FiniteDistribution::uniform(3), 4));
    REQUIRE(f.atoms.size() == 1);
    CHECK(f.atoms[0].value == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(f.atoms[0].mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quantile examples") {
    const auto f = b11_spectrum(1);
    const double lo = -std::log(0.89), hi = -std::log(0.11);
    CHECK(quantile_rate(f, 0.5) == doctest::Approx(lo).epsilon(1e-12));
    CHECK(quantile_rate(f, 0.89) == doctest::Approx(lo).epsilon(1e-12));
    CHECK(quantile_rate(f, 0.9) == doctest::Approx(hi).epsilon(1e-12));
    CHECK(quantile_rate(f, 1.0) == doctest::Approx(hi).epsilon(1e-12));
    // exclusive version steps up exactly at the atom mass
    CHECK(quantile_rate(f, 0.89, false) == doctest::Approx(hi).epsilon(1e-12));
    CHECK(quantile_rate(f, 0.5, false) == doctest::Approx(lo).epsilon(1e-12));
    CHECK_THROWS(quantile_rate(f, 0.0));
    CHECK_THROWS(quantile_rate(f, 1.5));
}

TEST_CASE("second-order quantile at n=100") {
    const auto f = b11_spectrum(100);
    const double h = entropy(FiniteDistribution::bernoulli(0.11));
    // exact binomial oracle: 12 ones is the 0.3-quantile composition
    CHECK(quantile_rate(f, 0.3) == doctest::Approx(0.30470051498).epsilon(1e-9));
    CHECK(second_order_quantile(f, 0.3, h) ==
          doctest::Approx(-0.4181482194).epsilon(1e-8));
    // 11 ones out of 100 sits exactly at the entropy rate
    CHECK(second_order_quantile(f, 0.5, h) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("sigma exponent examples") {
    const auto f2 = b11_spectrum(2);
    CHECK(sigma_exponent(f2, 1.0) == doctest::Approx(0.785349042059085).epsilon(1e-9));
    // a at or below the spectrum floor: the tail is everything
    CHECK(sigma_exponent(f2, f2.min_value()) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sigma_exponent(f2, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    // a above the ceiling: empty tail
    CHECK(std::isinf(sigma_exponent(f2, f2.max_value() + 1e-9)));
    // the top atom alone carries mass 0.11^2
    CHECK(sigma_exponent(f2, f2.max_value()) ==
          doctest::Approx(-0.5 * std::log(0.0121)).epsilon(1e-9));
}

TEST_CASE("sigma and cdf tails agree at every atom") {
    const auto f = b11_spectrum(12);
    for (std::size_t i = 0; i < f.atoms.size(); ++i) {
        const double below = i == 0 ? 0.0 : f.cumulative[i - 1];
        const double tail = 1.0 - below;
        const double sig = sigma_exponent(f, f.atoms[i].value);
        CHECK(std::exp(-12.0 * sig) == doctest::Approx(tail).epsilon(1e-9));
    }
}

TEST_CASE("second-order quantile approaches the gaussian limit") {
    const auto p = FiniteDistribution::bernoulli(0.11);
    const double h = entropy(p);
    const double target = gaussian_second_order(varentropy(p), 0.4);
    CHECK(target == doctest::Approx(-0.1657324478).epsilon(1e-8));
    double prev_gap = 1e9;
    for (std::uint32_t n : {100u, 1000u, 10000u}) {
        const auto f = b11_spectrum(n);
        const double gap = std::abs(second_order_quantile(f, 0.4, h) - target);
        CHECK(gap <= 0.1);
        CHECK(gap <= prev_gap + 1e-12);
        prev_gap = gap;
    }
}

TEST_CASE("csv export") {
    const auto f = b11_spectrum(2);
    const std::string csv = spectrum_to_csv(f);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "value,mass,cumulative");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("normal cdf and quantile") {
    CHECK(std_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std_normal_cdf(1.9599639845400545) == doctest::Approx(0.975).epsilon(1e-12));
    CHECK(std_normal_cdf(-1.9599639845400545) == doctest::Approx(0.025).epsilon(1e-10));
    CHECK(std_normal_quantile(0.975) == doctest::Approx(1.9599639845400545).epsilon(1e-10));
    CHECK(std_normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS(std_normal_quantile(0.0));
    CHECK_THROWS(std_normal_quantile(1.0));
    // round trip over a grid
    for (int i = 1; i < 10000; ++i) {
        const double eps = i / 10000.0;
        CHECK(std_normal_cdf(std_normal_quantile(eps)) ==
              doctest::Approx(eps).epsilon(1e-10));
    }
    CHECK(gaussian_second_order(0.0, 0.3) == doctest::Approx(0.0));
    CHECK(gaussian_second_order(4.0, 0.975) ==
          doctest::Approx(2.0 * 1.9599639845400545).epsilon(1e-9));
}

}  // TEST_SUITE
