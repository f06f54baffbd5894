#pragma once

#include <map>
#include <string>
#include <vector>

#include "socint/logdomain.hpp"

namespace socint {

// Probability mass function over a labeled finite alphabet. Probabilities
// sum to 1 within 1e-12; zero-probability symbols carry the -inf log
// sentinel and 0 * log 0 counts as 0 everywhere. All entropies are in nats.
class FiniteDistribution {
public:
    FiniteDistribution(std::vector<std::string> labels, std::vector<double> probs);

    static FiniteDistribution bernoulli(double p);
    static FiniteDistribution uniform(std::size_t d);

    // Text form "label:prob,label:prob,..."; probabilities given as decimals
    // or fractions "num/den". Also accepts a bare comma-separated list of
    // probabilities (labels 0,1,2,...).
    static FiniteDistribution parse(const std::string& text);
    // JSON array of probabilities or of {"label":..., "prob":...} objects.
    static FiniteDistribution parse_json(const std::string& json_text);

    std::size_t size() const { return probs_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<double>& probs() const { return probs_; }
    const std::vector<double>& log_probs() const { return log_probs_; }
    double prob(std::size_t i) const { return probs_[i]; }
    double log_prob(std::size_t i) const { return log_probs_[i]; }
    std::size_t support_size() const;

private:
    std::vector<std::string> labels_;
    std::vector<double> probs_;
    std::vector<double> log_probs_;
};

// H(P) = -sum P log P, in nats.
double entropy(const FiniteDistribution& p);

// V_P = sum P(w) (-log P(w) - H(P))^2, in nats^2.
double varentropy(const FiniteDistribution& p);

// psi(s) = log sum_w P(w)^s for s in (0, 1].
double renyi_psi(const FiniteDistribution& p, double s);

// Half L1 distance. Labels missing on one side count as probability 0.
double variational_distance(const FiniteDistribution& p, const FiniteDistribution& q);

// D(p||q) in nats; +inf when p puts mass outside supp(q).
double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q);

}  // namespace socint
