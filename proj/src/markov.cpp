#include "socint/markov.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace socint {

namespace {

void check_column_stochastic(const std::vector<std::vector<double>>& q) {
    const std::size_t d = q.size();
    if (d == 0) throw std::invalid_argument("markov: empty matrix");
    for (const auto& row : q)
        if (row.size() != d) throw std::invalid_argument("markov: matrix not square");
    for (std::size_t i = 0; i < d; ++i) {
        double col = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            if (!(q[j][i] >= 0.0)) throw std::invalid_argument("markov: negative entry");
            col += q[j][i];
        }
        if (std::abs(col - 1.0) > 1e-12)
            throw std::invalid_argument("markov: column " + std::to_string(i) +
                                        " sums to " + std::to_string(col));
    }
}

void check_irreducible(const std::vector<std::vector<double>>& q) {
    const std::size_t d = q.size();
    // Reachability closure from each state over positive entries.
    for (std::size_t s = 0; s < d; ++s) {
        std::vector<bool> seen(d, false);
        std::vector<std::size_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < d; ++j) {
                if (q[j][i] > 0 && !seen[j]) {
                    seen[j] = true;
                    stack.push_back(j);
                }
            }
        }
        for (bool b : seen)
            if (!b) throw std::invalid_argument("markov: transition matrix not irreducible");
    }
}

FiniteDistribution state_uniform(std::size_t d) { return FiniteDistribution::uniform(d); }

}  // namespace

MarkovSource::MarkovSource(std::vector<std::vector<double>> transition,
                           FiniteDistribution initial)
    : transition_(std::move(transition)), initial_(std::move(initial)) {
    check_column_stochastic(transition_);
    check_irreducible(transition_);
    if (initial_.size() != transition_.size())
        throw std::invalid_argument("markov: initial distribution size mismatch");
}

MarkovSource MarkovSource::parse(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::vector<double> entries;
        std::stringstream rs(row);
        std::string tok;
        while (std::getline(rs, tok, ',')) entries.push_back(std::stod(tok));
        rows.push_back(std::move(entries));
    }
    check_column_stochastic(rows);
    check_irreducible(rows);
    MarkovSource src(rows, state_uniform(rows.size()));
    return src.with_initial(markov_stationary(src));
}

MarkovSource MarkovSource::parse_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    if (!j.is_array()) throw std::invalid_argument("markov JSON: expected list of columns");
    const std::size_t d = j.size();
    std::vector<std::vector<double>> q(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        const auto& col = j[i];
        if (!col.is_array() || col.size() != d)
            throw std::invalid_argument("markov JSON: ragged column");
        for (std::size_t jj = 0; jj < d; ++jj) q[jj][i] = col[jj].get<double>();
    }
    check_column_stochastic(q);
    check_irreducible(q);
    MarkovSource src(q, state_uniform(d));
    return src.with_initial(markov_stationary(src));
}

MarkovSource MarkovSource::with_initial(FiniteDistribution initial) const {
    return MarkovSource(transition_, std::move(initial));
}

FiniteDistribution markov_stationary(const MarkovSource& src) {
    const std::size_t d = src.num_states();
    std::vector<double> v(d, 1.0 / static_cast<double>(d)), next(d), prev(d), prev2(d);
    auto step = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (std::size_t j = 0; j < d; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < d; ++i) s += src.q(j, i) * in[i];
            out[j] = s;
        }
        double total = std::accumulate(out.begin(), out.end(), 0.0);
        for (auto& x : out) x /= total;
    };
    auto residual = [&](const std::vector<double>& x) {
        step(x, next);
        double r = 0.0;
        for (std::size_t j = 0; j < d; ++j) r = std::max(r, std::abs(next[j] - x[j]));
        return r;
    };
    for (std::uint64_t it = 0; it < 1'000'000; ++it) {
        prev2 = prev;
        prev = v;
        step(v, next);
        v = next;
        if (it >= 2 && it % 8 == 0) {
            // Aitken delta-squared acceleration, componentwise.
            std::vector<double> acc(d);
            bool ok = true;
            for (std::size_t j = 0; j < d; ++j) {
                const double den = v[j] - 2 * prev[j] + prev2[j];
                if (std::abs(den) < 1e-300) {
                    ok = false;
                    break;
                }
                const double num = v[j] - prev[j];
                acc[j] = v[j] - num * num / den;
                if (!(acc[j] > -1e-9)) ok = false;
            }
            if (ok) {
                double total = std::accumulate(acc.begin(), acc.end(), 0.0);
                for (auto& x : acc) x = std::max(x, 0.0) / total;
                if (residual(acc) <= 1e-14) {
                    v = acc;
                    break;
                }
            }
        }
        if (residual(v) <= 1e-14) break;
    }
    // Final polish and check against the 1e-12 contract.
    step(v, next);
    double r = 0.0;
    for (std::size_t j = 0; j < d; ++j) r = std::max(r, std::abs(next[j] - v[j]));
    if (r > 1e-12) throw std::runtime_error("markov_stationary: power iteration stalled");
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < d; ++j) labels.push_back(std::to_string(j));
    double total = std::accumulate(v.begin(), v.end(), 0.0);
    for (auto& x : v) x /= total;
    // Repair rounding so the distribution invariant (sum within 1e-12) holds.
    v[d - 1] += 1.0 - std::accumulate(v.begin(), v.end(), 0.0);
    return FiniteDistribution(std::move(labels), std::move(v));
}

double markov_entropy_rate(const MarkovSource& src) {
    const auto pi = markov_stationary(src);
    const std::size_t d = src.num_states();
    double h = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double w = pi.prob(i) * src.q(j, i);
            if (w > 0) h -= w * std::log(src.q(j, i));
        }
    return std::max(h, 0.0);
}

double markov_varentropy(const MarkovSource& src) {
    const auto pi = markov_stationary(src);
    const std::size_t d = src.num_states();
    const double h = markov_entropy_rate(src);
    auto x = [&](std::size_t j, std::size_t i) {
        return -std::log(src.q(j, i)) - h;
    };
    double single = 0.0, cross = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double w = src.q(j, i) * pi.prob(i);
            if (w <= 0) continue;
            single += w * x(j, i) * x(j, i);
            for (std::size_t k = 0; k < d; ++k) {
                const double w2 = src.q(k, j) * w;
                if (w2 > 0) cross += w2 * x(k, j) * x(j, i);
            }
        }
    const double v = single + 2.0 * cross;
    if (v < -1e-12)
        throw std::runtime_error("markov_varentropy: variance came out negative: " +
                                 std::to_string(v));
    return std::max(v, 0.0);
}

LogLikMoments markov_loglik_moments(const MarkovSource& src, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("markov_loglik_moments: n must be >= 1");
    const std::size_t d = src.num_states();
    if (d > 64) throw std::invalid_argument("markov_loglik_moments: d > 64");
    // Per-state accumulators: m0 = P(state), m1 = E[X 1_state],
    // m2 = E[X^2 1_state], with X the running -log likelihood.
    std::vector<double> m0(d), m1(d), m2(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double p = src.initial().prob(i);
        m0[i] = p;
        const double c = p > 0 ? -std::log(p) : 0.0;
        m1[i] = p * c;
        m2[i] = p * c * c;
    }
    std::vector<double> n0(d), n1(d), n2(d);
    for (std::uint64_t step = 1; step < n; ++step) {
        std::fill(n0.begin(), n0.end(), 0.0);
        std::fill(n1.begin(), n1.end(), 0.0);
        std::fill(n2.begin(), n2.end(), 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            if (m0[i] == 0 && m1[i] == 0 && m2[i] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                const double q = src.q(j, i);
                if (q == 0) continue;
                const double c = -std::log(q);
                n0[j] += q * m0[i];
                n1[j] += q * (m1[i] + c * m0[i]);
                n2[j] += q * (m2[i] + 2 * c * m1[i] + c * c * m0[i]);
            }
        }
        m0.swap(n0);
        m1.swap(n1);
        m2.swap(n2);
    }
    const double mean = std::accumulate(m1.begin(), m1.end(), 0.0);
    const double second = std::accumulate(m2.begin(), m2.end(), 0.0);
    return {mean, std::max(second - mean * mean, 0.0)};
}

double markov_psi_bar(const MarkovSource& src, double s) {
    if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("markov_psi_bar: s outside (0,1]");
    const std::size_t d = src.num_states();
    // Power iteration for the Perron eigenvalue of the entrywise power Q^s.
    std::vector<double> v(d, 1.0), next(d);
    double lambda = 1.0;
    for (int it = 0; it < 200000; ++it) {
        double norm = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            double sum = 0.0;
            for (std::size_t i = 0; i < d; ++i)
                if (src.q(j, i) > 0) sum += std::pow(src.q(j, i), s) * v[i];
            next[j] = sum;
            norm += sum;
        }
        const double new_lambda = norm / std::accumulate(v.begin(), v.end(), 0.0);
        for (std::size_t j = 0; j < d; ++j) next[j] /= norm;
        const bool done = std::abs(new_lambda - lambda) <= 1e-15 * std::abs(new_lambda);
        lambda = new_lambda;
        v.swap(next);
        if (done && it > 3) break;
    }
    return std::log(lambda);
}

}  // namespace socint
