#include <doctest.h>

#include <cmath>
#include <vector>

#include <json.hpp>

#include "socint/distribution.hpp"
#include "socint/type_table.hpp"
#include "socint/universal.hpp"

using namespace socint;

TEST_SUITE("universal") {

TEST_CASE("n=2 binary code at a=log2 covers everything") {
    const auto code = universal_type_code(2, 2, std::log(2.0), 0.0);
    CHECK(code.included_types.size() == 3);
    CHECK(code.log_total_size == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(universal_code_error(code, FiniteDistribution::bernoulli(0.11)) ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK(universal_code_error(code, FiniteDistribution::bernoulli(0.5)) ==
          doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("a small positive cap keeps only singleton types") {
    // cap = 2 log2 - 0.9 sqrt(2) ~ 0.11: above log|T|=0, below log 2
    const auto code = universal_type_code(2, 2, std::log(2.0), -0.9);
    CHECK(code.included_types.size() == 2);
    CHECK(code.log_total_size == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // the mixed type (one of each symbol) is excluded
    CHECK(universal_code_error(code, FiniteDistribution::bernoulli(0.11)) ==
          doctest::Approx(0.1958).epsilon(1e-12));
}

TEST_CASE("inclusion is exactly the size threshold") {
    for (std::uint32_t n : {3u, 8u, 12u}) {
        const double a = 0.4, b = 0.2;
        const auto code = universal_type_code(n, 2, a, b);
        const double cap = n * a + std::sqrt(static_cast<double>(n)) * b;
        REQUIRE(code.included.size() == n + 1);
        for (std::uint32_t k = 0; k <= n; ++k) {
            const double lt = log_multinomial(n, {n - k, k});
            CHECK(code.included[k] == (lt <= cap + 1e-12));
        }
    }
}

TEST_CASE("size obeys the type-counting bound") {
    for (std::uint32_t n : {4u, 16u, 64u}) {
        for (double b : {-1.0, 0.0, 1.0}) {
            const double a = 0.5;
            const auto code = universal_type_code(n, 3, a, b);
            const double cap = n * a + std::sqrt(static_cast<double>(n)) * b;
            const double ntypes = static_cast<double>(code.included.size());
            CHECK(code.log_total_size <= std::log(ntypes) + cap + 1e-9);
        }
    }
}

TEST_CASE("error is non-increasing in b") {
    const auto p = FiniteDistribution::bernoulli(0.11);
    const double h = entropy(p);
    double prev = 1.0;
    for (double b = -2.0; b <= 2.0; b += 0.25) {
        const double e = universal_code_error(universal_type_code(64, 2, h, b), p);
        CHECK(e <= prev + 1e-12);
        prev = e;
    }
}

TEST_CASE("one code serves many sources") {
    const auto code = universal_type_code(32, 2, 0.55, 0.0);
    const std::vector<FiniteDistribution> sources = {
        FiniteDistribution::bernoulli(0.05), FiniteDistribution::bernoulli(0.11),
        FiniteDistribution::bernoulli(0.2), FiniteDistribution::bernoulli(0.35),
        FiniteDistribution::bernoulli(0.5)};
    for (const auto& p : sources) {
        const double e = universal_code_error(code, p);
        CHECK(e >= 0.0);
        CHECK(e <= 1.0);
        // complement check against the exact type table
        const auto t = iid_type_table(p, 32);
        double included_mass = 0.0;
        for (std::size_t i = 0; i < t.classes.size(); ++i)
            if (code.included[i] && t.classes[i].class_log_prob != kNegInf)
                included_mass += std::exp(t.classes[i].class_log_prob);
        CHECK(1.0 - included_mass == doctest::Approx(e).epsilon(1e-10));
    }
    // sources with entropy below a are eventually served almost perfectly
    CHECK(universal_code_error(code, FiniteDistribution::bernoulli(0.05)) <
          universal_code_error(code, FiniteDistribution::bernoulli(0.5)));
}

TEST_CASE("extractor bound decomposition") {
    const auto p = FiniteDistribution::bernoulli(0.11);
    for (double b : {-1.0, 0.0, 1.0}) {
        const std::uint32_t n = 49;
        const auto code = universal_type_code(n, 2, 0.25, b);
        const double err = universal_code_error(code, p);
        const double bound = universal_extractor_distance(n, 2, 0.25, b, p);
        CHECK(bound == doctest::Approx(err / n + (1.0 - err)).epsilon(1e-10));
        CHECK(bound >= 0.0);
    }
}

TEST_CASE("rejects oversized type tables") {
    CHECK_THROWS(universal_type_code(10000, 6, 0.5, 0.0));
}

TEST_CASE("report json") {
    const auto code = universal_type_code(8, 2, 0.5, 0.0);
    const std::vector<FiniteDistribution> sources = {
        FiniteDistribution::bernoulli(0.11), FiniteDistribution::bernoulli(0.3)};
    const auto j = nlohmann::json::parse(universal_report_json(code, sources));
    CHECK(j["n"].get<int>() == 8);
    CHECK(j["d"].get<int>() == 2);
    CHECK(j["a_nats"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j["errors"].size() == 2);
    CHECK(j["errors"][0]["error"].get<double>() >= 0.0);
}

}  // TEST_SUITE
