#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <vector>

#include "socint/distribution.hpp"
#include "socint/markov.hpp"
#include "socint/type_table.hpp"

using namespace socint;

namespace {

// brute-force P^n aggregation by composition for binary P
std::map<std::uint32_t, double> brute_binary(double p, std::uint32_t n) {
    std::map<std::uint32_t, double> mass;  // ones count -> probability
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        std::uint32_t ones = 0;
        double prob = 1.0;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (s & (1u << i)) {
                ++ones;
                prob *= p;
            } else {
                prob *= 1.0 - p;
            }
        }
        mass[ones] += prob;
    }
    return mass;
}

}  // namespace

TEST_SUITE("sources") {

TEST_CASE("type table bernoulli n=2") {
    const auto table = iid_type_table(FiniteDistribution::bernoulli(0.11), 2);
    REQUIRE(table.classes.size() == 3);
    // lexicographic by composition (count of "0", count of "1")
    CHECK(std::exp(table.classes[0].class_log_prob) == doctest::Approx(0.0121).epsilon(1e-12));
    CHECK(std::exp(table.classes[1].class_log_prob) == doctest::Approx(0.1958).epsilon(1e-12));
    CHECK(std::exp(table.classes[2].class_log_prob) == doctest::Approx(0.7921).epsilon(1e-12));
    CHECK(std::exp(table.classes[1].log_count) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("type table invariants") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pd(0.05, 0.95);
    for (int t = 0; t < 20; ++t) {
        const double p = pd(rng);
        const std::uint32_t n = 1 + (t % 16);
        const auto table = iid_type_table(FiniteDistribution::bernoulli(p), n);
        double total = 0.0;
        for (const auto& tc : table.classes) {
            total += std::exp(tc.class_log_prob);
            if (tc.per_element_log_prob != kNegInf)
                CHECK(tc.class_log_prob ==
                      doctest::Approx(tc.log_count + tc.per_element_log_prob).epsilon(1e-12));
            CHECK(tc.log_count ==
                  doctest::Approx(std::log(static_cast<double>(
                      exact_multinomial(n, tc.composition)))).epsilon(1e-12));
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("type table equals brute-force enumeration") {
    const double p = 0.37;
    for (std::uint32_t n : {1u, 5u, 9u, 12u}) {
        const auto table = iid_type_table(FiniteDistribution::bernoulli(p), n);
        const auto brute = brute_binary(p, n);
        REQUIRE(table.classes.size() == brute.size());
        for (const auto& tc : table.classes) {
            const std::uint32_t ones = tc.composition[1];
            CHECK(std::exp(tc.class_log_prob) ==
                  doctest::Approx(brute.at(ones)).epsilon(1e-12));
        }
    }
}

TEST_CASE("uniform product classes share one probability") {
    const auto table = iid_type_table(FiniteDistribution::uniform(2), 3);
    REQUIRE(table.classes.size() == 4);
    for (const auto& tc : table.classes)
        CHECK(tc.per_element_log_prob == doctest::Approx(-3.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("table cap rejection") {
    CHECK_THROWS(iid_type_table(FiniteDistribution::uniform(50), 100));
}

TEST_CASE("explicit table is isomorphic to its distribution") {
    const auto p = FiniteDistribution::parse("0.4,0.3,0.2,0.1");
    const auto t = explicit_table(p, 1);
    REQUIRE(t.classes.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::exp(t.classes[i].class_log_prob) == doctest::Approx(p.prob(i)));
}

TEST_CASE("table cache roundtrip") {
    const auto p = FiniteDistribution::bernoulli(0.11);
    const auto table = iid_type_table(p, 7);
    const std::string path = "type_table_cache_test.bin";
    save_type_table(table, path);
    const auto back = load_type_table(path);
    std::remove(path.c_str());
    REQUIRE(back.classes.size() == table.classes.size());
    for (std::size_t i = 0; i < table.classes.size(); ++i) {
        CHECK(back.classes[i].composition == table.classes[i].composition);
        CHECK(back.classes[i].class_log_prob == table.classes[i].class_log_prob);
    }
    CHECK(type_table_cache_key(p, 7) == type_table_cache_key(p, 7));
    CHECK(type_table_cache_key(p, 7) != type_table_cache_key(p, 8));
}

TEST_CASE("markov stationary distribution") {
    const auto sym = MarkovSource::parse("0.8,0.2;0.2,0.8");
    const auto pi = markov_stationary(sym);
    CHECK(pi.prob(0) == doctest::Approx(0.5).epsilon(1e-12));

    const auto q = MarkovSource::parse("0.9,0.5;0.1,0.5");
    const auto pi2 = markov_stationary(q);
    CHECK(pi2.prob(0) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(pi2.prob(1) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("iid-embedded chain reduces to the iid law") {
    // all columns equal P: the chain is an i.i.d. source in disguise
    const auto q = MarkovSource::parse("0.89,0.89;0.11,0.11");
    const auto p = FiniteDistribution::bernoulli(0.11);
    CHECK(markov_stationary(q).prob(1) == doctest::Approx(0.11).epsilon(1e-12));
    CHECK(markov_entropy_rate(q) == doctest::Approx(entropy(p)).epsilon(1e-12));
    CHECK(markov_varentropy(q) == doctest::Approx(varentropy(p)).epsilon(1e-12));
    for (std::uint64_t n : {1ull, 10ull, 100ull}) {
        const auto m = markov_loglik_moments(q, n);
        CHECK(m.variance ==
              doctest::Approx(static_cast<double>(n) * varentropy(p)).epsilon(1e-9));
    }
}

TEST_CASE("markov entropy rate examples") {
    CHECK(markov_entropy_rate(MarkovSource::parse("0,1;1,0")) ==
          doctest::Approx(0.0).epsilon(1e-15));
    const double h02 = -0.8 * std::log(0.8) - 0.2 * std::log(0.2);
    CHECK(markov_entropy_rate(MarkovSource::parse("0.8,0.2;0.2,0.8")) ==
          doctest::Approx(h02).epsilon(1e-12));
}

TEST_CASE("markov varentropy: symmetric chain equals bernoulli varentropy") {
    CHECK(markov_varentropy(MarkovSource::parse("0,1;1,0")) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(markov_varentropy(MarkovSource::parse("0.8,0.2;0.2,0.8")) ==
          doctest::Approx(varentropy(FiniteDistribution::bernoulli(0.2))).epsilon(1e-9));
}

TEST_CASE("markov moments match path enumeration at n=3") {
    const auto q = MarkovSource::parse("0.8,0.2;0.2,0.8");
    const auto m = markov_loglik_moments(q, 3);
    double mean = 0.0, second = 0.0;
    for (int s = 0; s < 8; ++s) {
        const int x0 = s & 1, x1 = (s >> 1) & 1, x2 = (s >> 2) & 1;
        const double prob = 0.5 * q.q(x1, x0) * q.q(x2, x1);
        const double ll = -std::log(prob);
        mean += prob * ll;
        second += prob * ll * ll;
    }
    CHECK(m.mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(m.variance == doctest::Approx(second - mean * mean).epsilon(1e-12));
}

TEST_CASE("markov DP variance converges to V(Q)") {
    // symmetric chain: cross-covariances beyond lag 1 vanish, so the V(Q)
    // formula is the exact limit of variance/n
    const auto q = MarkovSource::parse("0.7,0.3;0.3,0.7");
    const double v = markov_varentropy(q);
    double prev_gap = 1e9;
    for (std::uint64_t n : {100ull, 1000ull, 10000ull}) {
        const auto m = markov_loglik_moments(q, n);
        const double gap = std::abs(m.variance / static_cast<double>(n) - v);
        CHECK(gap <= prev_gap + 1e-12);
        prev_gap = gap;
        if (n == 10000) CHECK(gap <= 10.0 * v / static_cast<double>(n) + 1e-9);
    }
    // asymmetric chains keep lag >= 2 correlations that the closed form
    // truncates away; the DP limit then sits near, not at, V(Q)
    const auto r = MarkovSource::parse("0.7,0.4;0.3,0.6");
    const double vr = markov_varentropy(r);
    const auto mr = markov_loglik_moments(r, 10000);
    CHECK(std::abs(mr.variance / 10000.0 - vr) <= 0.05 * vr);
}

TEST_CASE("markov quantities invariant under state relabeling") {
    const auto q = MarkovSource::parse("0.7,0.4;0.3,0.6");
    const auto r = MarkovSource::parse("0.6,0.3;0.4,0.7");  // states swapped
    CHECK(markov_entropy_rate(q) == doctest::Approx(markov_entropy_rate(r)).epsilon(1e-12));
    CHECK(markov_varentropy(q) == doctest::Approx(markov_varentropy(r)).epsilon(1e-12));
}

TEST_CASE("non-stationary start washes out") {
    const auto q = MarkovSource::parse("0.7,0.4;0.3,0.6");
    const auto ns = q.with_initial(FiniteDistribution::parse("1,0"));
    double prev_rel = 1e9;
    for (std::uint64_t n : {100ull, 1000ull, 10000ull}) {
        const double gap = std::abs(markov_loglik_moments(ns, n).variance -
                                    markov_loglik_moments(q, n).variance);
        const double rel = gap / static_cast<double>(n);
        CHECK(rel <= prev_rel + 1e-12);
        prev_rel = rel;
    }
}

TEST_CASE("markov rejects reducible chains and bad columns") {
    CHECK_THROWS(MarkovSource::parse("1,0;0,1"));
    CHECK_THROWS(MarkovSource::parse("0.9,0.2;0.2,0.8"));
}

TEST_CASE("markov psi_bar endpoints") {
    const auto q = MarkovSource::parse("0.8,0.2;0.2,0.8");
    // at s=1 the matrix is stochastic: Perron eigenvalue 1
    CHECK(markov_psi_bar(q, 1.0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(markov_psi_bar(q, 0.5) > 0.0);
}

}  // TEST_SUITE
