#pragma once

#include <string>
#include <vector>

#include "socint/distribution.hpp"

namespace socint {

// Irreducible finite Markov chain with COLUMN-stochastic transition matrix:
// transition[j][i] = Q_{j,i} is the probability of moving from state i to
// state j (column i sums to 1). Note that most libraries use the
// row-stochastic transpose.
class MarkovSource {
public:
    MarkovSource(std::vector<std::vector<double>> transition, FiniteDistribution initial);

    // Text form "q11,q12;q21,q22": rows separated by ';', so the k-th row
    // lists Q_{k,1..d}. Initial distribution defaults to stationary.
    static MarkovSource parse(const std::string& text);
    // JSON list of columns: [[Q_{1,1},...,Q_{d,1}], [Q_{1,2},...,Q_{d,2}], ...].
    static MarkovSource parse_json(const std::string& json_text);

    std::size_t num_states() const { return transition_.size(); }
    double q(std::size_t j, std::size_t i) const { return transition_[j][i]; }
    const FiniteDistribution& initial() const { return initial_; }
    MarkovSource with_initial(FiniteDistribution initial) const;

private:
    std::vector<std::vector<double>> transition_;  // [j][i]
    FiniteDistribution initial_;
};

// Stationary distribution pi with Q pi = pi (infinity-norm residual <= 1e-12).
FiniteDistribution markov_stationary(const MarkovSource& q);

// H(Q) = -sum_{j,i} pi_i Q_{j,i} log Q_{j,i}, using the stationary pi.
double markov_entropy_rate(const MarkovSource& q);

// V(Q) = sum_{j,i} Q_{j,i} pi_i (-log Q_{j,i} - H)^2
//      + 2 sum_{k,j,i} Q_{k,j} Q_{j,i} pi_i (-log Q_{k,j} - H)(-log Q_{j,i} - H).
double markov_varentropy(const MarkovSource& q);

struct LogLikMoments {
    double mean;      // E[-log Q^n(w_1..w_n)]
    double variance;  // Var[-log Q^n(w_1..w_n)]
};

// Exact first two moments of the block log-likelihood via a transfer dynamic
// program carrying (probability, first moment, second moment) per state.
// O(n d^2) time; uses the stored initial distribution.
LogLikMoments markov_loglik_moments(const MarkovSource& q, std::uint64_t n);

// psi_bar(s) = log of the Perron eigenvalue of the entrywise power Q^s.
// Feeds the Markov S*_2 formula; only the eigenvalue enters.
double markov_psi_bar(const MarkovSource& q, double s);

}  // namespace socint
