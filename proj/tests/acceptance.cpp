// Acceptance harness: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion re-derives its own inputs; nothing is shared with
// the unit suites beyond the library itself.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "socint/coding.hpp"
#include "socint/distribution.hpp"
#include "socint/markov.hpp"
#include "socint/normal.hpp"
#include "socint/randomness.hpp"
#include "socint/spectrum.hpp"
#include "socint/tradeoff.hpp"
#include "socint/type_table.hpp"
#include "socint/universal.hpp"

using namespace socint;

namespace {

bool g_all_ok = true;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(int criterion, const char* name, bool ok, const std::string& detail,
            double secs) {
    std::printf("criterion %d [%s]: %s — %s (%.2f s)\n", criterion, name,
                ok ? "PASS" : "FAIL", detail.c_str(), secs);
    if (!ok) g_all_ok = false;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0,
                double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

FiniteDistribution random_dist(std::mt19937_64& rng, std::size_t d) {
    std::uniform_real_distribution<double> u(0.02, 1.0);
    std::vector<double> p(d);
    double s = 0.0;
    for (auto& x : p) {
        x = u(rng);
        s += x;
    }
    for (auto& x : p) x /= s;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < d; ++i) acc += p[i];
    p[d - 1] = 1.0 - acc;
    std::vector<std::string> labels(d);
    for (std::size_t i = 0; i < d; ++i) labels[i] = std::to_string(i);
    return FiniteDistribution(std::move(labels), std::move(p));
}

const double kTargetB = 0.838369;  // sqrt(V(0.11)) * Phi^{-1}(0.9)

void criterion1() {
    Timer timer;
    const auto p = FiniteDistribution::bernoulli(0.11);
    const double h = entropy(p);
    const auto b_code = [&](std::uint32_t n) {
        const auto t = iid_type_table(p, n);
        return second_order_coefficient(min_log_size_for_error(t, 0.1), n, h);
    };
    const double b4 = b_code(10000);
    const double b2 = b_code(100);
    const double secs = timer.seconds();
    const bool ok = std::abs(b4 - kTargetB) <= 0.10 &&
                    std::abs(b4 - kTargetB) < std::abs(b2 - kTargetB) && secs < 10.0;
    report(1, "second-order coding rate", ok,
           fmt("b_code(1e4)=%.6f, b_code(1e2)=%.6f, target=%.6f", b4, b2, kTargetB),
           secs);
}

void criterion2() {
    Timer timer;
    const auto p = FiniteDistribution::bernoulli(0.11);
    const double h = entropy(p);
    const auto t4 = iid_type_table(p, 10000);
    const double b_ext = second_order_coefficient(
        max_log_size_for_distance(t4, 0.1), 10000, h);
    const double b_code = second_order_coefficient(
        min_log_size_for_error(t4, 0.1), 10000, h);
    const double secs = timer.seconds();
    const bool ok = std::abs(b_ext - (-kTargetB)) <= 0.10 &&
                    b_code - b_ext >= 1.0 && secs < 30.0;
    report(2, "second-order extraction rate", ok,
           fmt("b_ext=%.6f, target=%.6f, b_code-b_ext=%.3f", b_ext, -kTargetB,
               b_code - b_ext),
           secs);
}

void criterion3() {
    Timer timer;
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::uint32_t> nu(1, 8);
    std::uniform_int_distribution<std::size_t> du(2, 6);
    std::uniform_real_distribution<double> bu(-1.5, 1.5);
    std::uniform_real_distribution<double> au(0.5, 1.5);
    int violations = 0;
    double worst_slack = 1e9;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto p = random_dist(rng, du(rng));
        const auto t = iid_type_table(p, nu(rng));
        const auto pair = build_joint_pair(t, au(rng) * entropy(p), bu(rng));
        const auto chk = verify_tradeoff(pair, t);
        worst_slack = std::min(worst_slack, chk.slack);
        if (chk.sum < chk.delta - 1e-12) ++violations;
    }
    const double secs = timer.seconds();
    const bool ok = violations == 0 && secs < 60.0;
    report(3, "exact trade-off, randomized", ok,
           fmt("1000 pairs, violations=%.0f, worst slack=%.3e",
               static_cast<double>(violations), worst_slack),
           secs);
}

void criterion4() {
    Timer timer;
    const auto p = FiniteDistribution::bernoulli(0.11);
    const auto t = iid_type_table(p, 10000);
    const auto pair = build_joint_pair(t, entropy(p), 0.0);
    const double ec = pair.code_error();
    const double ee = pair.extractor_distance();
    const double sum = ec + ee;
    const bool ok = sum >= 0.93 && sum <= 1.0 && std::abs(ec - 0.5) <= 0.07 &&
                    std::abs(ee - 0.5) <= 0.07;
    report(4, "trade-off tightness at (H,0)", ok,
           fmt("eps_code=%.4f, eps_ext=%.4f, sum=%.4f", ec, ee, sum),
           timer.seconds());
}

void criterion5() {
    Timer timer;
    const std::uint32_t n = 10000;
    const double a = entropy(FiniteDistribution::bernoulli(0.11));
    const auto code = universal_type_code(n, 2, a, 0.0);
    const double err11 = universal_code_error(code, FiniteDistribution::bernoulli(0.11));
    const double err05 = universal_code_error(code, FiniteDistribution::bernoulli(0.05));
    const double overhead = second_order_coefficient(code.log_total_size, n, a);
    const double cap = 2.0 * std::log(static_cast<double>(n) + 1.0) /
                       std::sqrt(static_cast<double>(n));
    const bool ok = err11 >= 0.45 && err11 <= 0.55 && err05 <= 1e-3 &&
                    overhead <= cap;
    report(5, "universal code", ok,
           fmt("error(0.11)=%.4f, error(0.05)=%.2e, overhead=%.4f<=%.4f", err11,
               err05, overhead, cap),
           timer.seconds());
}

void criterion6() {
    Timer timer;
    const auto q = MarkovSource::parse("0.8,0.2;0.2,0.8");
    const double v_chain = markov_varentropy(q);
    const double v_iid = varentropy(FiniteDistribution::bernoulli(0.2));
    const auto m = markov_loglik_moments(q, 10000);
    const double dp = m.variance / 10000.0;
    const bool ok = std::abs(v_chain - v_iid) <= 1e-9 &&
                    std::abs(dp - v_chain) <= 0.01 * v_chain;
    report(6, "markov variance", ok,
           fmt("V(Q)=%.9f, V(B(0.2))=%.9f, DP var/n=%.9f", v_chain, v_iid, dp),
           timer.seconds());
}

void criterion7() {
    Timer timer;
    bool ok = true;
    std::string detail;

    const double su = s_star_family(FiniteDistribution::uniform(4), 0.37).s_star_2;
    if (std::abs(su - std::log(4.0)) > 1e-6) ok = false;

    // independent scan: 1e6 grid points of (s delta + psi(s)) / (1 - s)
    const double delta = 0.1;
    const double lp = std::log(0.11), lq = std::log(0.89);
    double scan = kPosInf;
    for (int i = 1; i < 1000000; ++i) {
        const double s = i * 1e-6;
        const double psi = std::log(std::exp(s * lp) + std::exp(s * lq));
        scan = std::min(scan, (s * delta + psi) / (1.0 - s));
    }
    const double lib = s_star_family(FiniteDistribution::bernoulli(0.11), delta).s_star_2;
    if (std::abs(lib - scan) > 1e-6) ok = false;

    const double zero = s_star_second_order(1.0, std_normal_pdf(0.0)).s_star_2nd;
    if (std::abs(zero) > 1e-8) ok = false;

    const std::uint32_t n = 10000;
    const double h = entropy(FiniteDistribution::bernoulli(0.11));
    const double a = h + 0.05;
    const auto t = iid_type_table(FiniteDistribution::bernoulli(0.11), n);
    const double kl = build_kl_optimal_code(t, a).kl_per_n;
    if (std::abs(kl - 0.05) > 0.02) ok = false;

    report(7, "KL criteria", ok,
           fmt("s2(unif4)=%.8f, s2 scan gap=%.2e, s2nd(phi0)=%.2e, kl_per_n=%.6f",
               su, std::abs(lib - scan), zero, kl),
           timer.seconds());
}

void criterion8() {
    Timer timer;
    std::mt19937_64 rng(211);
    std::uniform_int_distribution<std::uint32_t> nu(1, 10);
    std::uniform_int_distribution<std::size_t> du(2, 5);
    int bad = 0;

    // lemma bounds on constructed codes and extractors
    for (int trial = 0; trial < 40; ++trial) {
        const auto p = random_dist(rng, du(rng));
        const std::uint32_t n = nu(rng);
        const auto t = iid_type_table(p, n);
        const double log_total = t.total_log_count();
        for (double frac : {0.2, 0.5, 0.8}) {
            const double lm = frac * log_total;
            const auto code = build_threshold_code(t, lm);
            // direct part: 1 - error >= p{p > 1/M}
            if (1.0 - code.error < prob_above_threshold(t, code.log_size) - 1e-12)
                ++bad;
            const std::uint64_t m_bins = std::max<std::uint64_t>(
                1, static_cast<std::uint64_t>(std::floor(std::exp(lm))));
            const auto profile = build_virtual_profile(t, Count::from_u64(m_bins));
            const double dist = profile.distance_to_uniform();
            const double m_lin = std::exp(profile.total_bins().log());
            for (double lmp = 0.1; lmp < log_total; lmp += 0.37) {
                // converse bounds, both directions
                if (!converse_check_code(t, code.log_size, code.error, lmp).holds)
                    ++bad;
                if (!converse_check_extractor(t, profile.total_bins().log(), dist, lmp)
                         .holds)
                    ++bad;
                const double mp_lin = std::exp(lmp);
                // extractor direct part: dist <= p{p > 1/M'} + M/M'
                if (dist > prob_above_threshold(t, lmp) + m_lin / mp_lin + 1e-12) ++bad;
                // KL form: D(p o psi^-1 || U_M) within Han's bound
                const double rhs =
                    profile.total_bins().log() *
                    (mp_lin / m_lin + 1.0 / mp_lin + prob_above_threshold(t, lm));
                if (profile.kl_to_uniform() > rhs + 1e-12) ++bad;
            }
        }
    }

    // brute-force code optimality, binary, n <= 10
    std::uniform_real_distribution<double> pu(0.1, 0.9);
    for (int trial = 0; trial < 6; ++trial) {
        const double p = pu(rng);
        const std::uint32_t n = 5 + trial;
        std::vector<double> probs;
        for (std::uint32_t s = 0; s < (1u << n); ++s) {
            double pr = 1.0;
            for (std::uint32_t i = 0; i < n; ++i) pr *= (s & (1u << i)) ? p : 1.0 - p;
            probs.push_back(pr);
        }
        std::sort(probs.begin(), probs.end(), std::greater<>());
        const auto t = iid_type_table(FiniteDistribution::bernoulli(p), n);
        double top = 0.0;
        std::uint64_t m = 0;
        for (std::uint64_t step : {1ull, 2ull, 4ull, 9ull, 30ull}) {
            for (std::uint64_t i = 0; i < step && m < probs.size(); ++i) top += probs[m++];
            const double got =
                build_threshold_code(t, std::log(static_cast<double>(m))).error;
            if (std::abs(got - (1.0 - top)) > 1e-12) ++bad;
        }
    }

    // brute-force subset-delta, support <= 12
    for (int trial = 0; trial < 15; ++trial) {
        const auto p = random_dist(rng, 2 + trial % 11);
        double best = 1.0;
        const std::size_t k = p.size();
        for (std::uint64_t mask = 1; mask < (1ull << k); ++mask) {
            const double m = static_cast<double>(__builtin_popcountll(mask));
            double d = 0.0;
            for (std::size_t i = 0; i < k; ++i)
                d += std::abs(p.prob(i) - ((mask >> i) & 1 ? 1.0 / m : 0.0));
            best = std::min(best, 0.5 * d);
        }
        if (std::abs(delta_uniform_gap(p).delta - best) > 1e-12) ++bad;
    }

    report(8, "lemma inequality suite", bad == 0,
           fmt("violations=%.0f", static_cast<double>(bad)), timer.seconds());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    std::printf("%s\n", g_all_ok ? "acceptance: all criteria passed"
                                 : "acceptance: FAILURES present");
    return g_all_ok ? 0 : 1;
}
