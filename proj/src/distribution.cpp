#include "socint/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace socint {

FiniteDistribution::FiniteDistribution(std::vector<std::string> labels,
                                       std::vector<double> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
    if (labels_.size() != probs_.size() || probs_.empty())
        throw std::invalid_argument("distribution: labels/probs size mismatch or empty");
    std::set<std::string> seen;
    double total = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (!seen.insert(labels_[i]).second)
            throw std::invalid_argument("distribution: duplicate label '" + labels_[i] + "'");
        if (!(probs_[i] >= 0.0))
            throw std::invalid_argument("distribution: negative probability");
        total += probs_[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("distribution: probabilities sum to " +
                                    std::to_string(total) + ", not 1");
    log_probs_.reserve(probs_.size());
    for (double p : probs_) log_probs_.push_back(p > 0 ? std::log(p) : kNegInf);
}

FiniteDistribution FiniteDistribution::bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("bernoulli: p outside [0,1]");
    return FiniteDistribution({"0", "1"}, {1.0 - p, p});
}

FiniteDistribution FiniteDistribution::uniform(std::size_t d) {
    if (d == 0) throw std::invalid_argument("uniform: empty alphabet");
    std::vector<std::string> labels;
    std::vector<double> probs(d, 1.0 / static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) labels.push_back(std::to_string(i));
    return FiniteDistribution(std::move(labels), std::move(probs));
}

namespace {

double parse_prob(const std::string& tok) {
    const auto slash = tok.find('/');
    try {
        if (slash != std::string::npos) {
            const double num = std::stod(tok.substr(0, slash));
            const double den = std::stod(tok.substr(slash + 1));
            if (den <= 0) throw std::invalid_argument("zero denominator");
            return num / den;  // reduced to double; ~1 ulp rounding
        }
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("distribution: cannot parse probability '" + tok + "'");
    }
}

}  // namespace

FiniteDistribution FiniteDistribution::parse(const std::string& text) {
    std::vector<std::string> labels;
    std::vector<double> probs;
    std::stringstream ss(text);
    std::string item;
    std::size_t idx = 0;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            labels.push_back(std::to_string(idx));
            probs.push_back(parse_prob(item));
        } else {
            labels.push_back(item.substr(0, colon));
            probs.push_back(parse_prob(item.substr(colon + 1)));
        }
        ++idx;
    }
    return FiniteDistribution(std::move(labels), std::move(probs));
}

FiniteDistribution FiniteDistribution::parse_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    if (!j.is_array()) throw std::invalid_argument("distribution JSON: expected array");
    std::vector<std::string> labels;
    std::vector<double> probs;
    std::size_t idx = 0;
    for (const auto& e : j) {
        if (e.is_object()) {
            labels.push_back(e.at("label").is_string()
                                 ? e.at("label").get<std::string>()
                                 : e.at("label").dump());
            if (e.at("prob").is_string())
                probs.push_back(parse_prob(e.at("prob").get<std::string>()));
            else
                probs.push_back(e.at("prob").get<double>());
        } else if (e.is_string()) {
            labels.push_back(std::to_string(idx));
            probs.push_back(parse_prob(e.get<std::string>()));
        } else {
            labels.push_back(std::to_string(idx));
            probs.push_back(e.get<double>());
        }
        ++idx;
    }
    return FiniteDistribution(std::move(labels), std::move(probs));
}

std::size_t FiniteDistribution::support_size() const {
    return static_cast<std::size_t>(
        std::count_if(probs_.begin(), probs_.end(), [](double p) { return p > 0; }));
}

double entropy(const FiniteDistribution& p) {
    double h = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.prob(i) == 0) continue;
        const double term = -p.prob(i) * p.log_prob(i);
        const double y = term - comp;
        const double s = h + y;
        comp = (s - h) - y;
        h = s;
    }
    return std::max(h, 0.0);
}

double varentropy(const FiniteDistribution& p) {
    const double h = entropy(p);
    double v = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.prob(i) == 0) continue;
        const double dev = -p.log_prob(i) - h;
        v += p.prob(i) * dev * dev;
    }
    return std::max(v, 0.0);
}

double renyi_psi(const FiniteDistribution& p, double s) {
    if (!(s > 0.0 && s <= 1.0))
        throw std::invalid_argument("renyi_psi: s must lie in (0,1]");
    std::vector<double> terms;
    terms.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.prob(i) > 0) terms.push_back(s * p.log_prob(i));
    return log_sum(std::move(terms));
}

namespace {

// Align two distributions on the union of their label sets.
std::vector<std::pair<double, double>> aligned(const FiniteDistribution& p,
                                               const FiniteDistribution& q) {
    std::map<std::string, std::pair<double, double>> m;
    for (std::size_t i = 0; i < p.size(); ++i) m[p.labels()[i]].first = p.prob(i);
    for (std::size_t i = 0; i < q.size(); ++i) m[q.labels()[i]].second = q.prob(i);
    std::vector<std::pair<double, double>> out;
    out.reserve(m.size());
    for (const auto& [_, pq] : m) out.push_back(pq);
    return out;
}

}  // namespace

double variational_distance(const FiniteDistribution& p, const FiniteDistribution& q) {
    double d = 0.0;
    for (const auto& [pp, qq] : aligned(p, q)) d += std::abs(pp - qq);
    return 0.5 * d;
}

double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q) {
    double d = 0.0;
    for (const auto& [pp, qq] : aligned(p, q)) {
        if (pp == 0) continue;
        if (qq == 0) return kPosInf;
        d += pp * std::log(pp / qq);
    }
    return std::max(d, 0.0);
}

}  // namespace socint
