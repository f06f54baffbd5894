#pragma once

#include <cstdint>
#include <string>

#include "socint/coding.hpp"
#include "socint/randomness.hpp"
#include "socint/type_table.hpp"

namespace socint {

// delta(p_n) = min over subsets S of d(p_n, U_S); the optimal S for each
// size m is the m most probable outcomes.
struct DeltaGap {
    double delta = 0.0;
    Count m;  // minimizing subset size
};

DeltaGap delta_uniform_gap(const TypeClassTable& table);
DeltaGap delta_uniform_gap(const FiniteDistribution& p);

// Joint code/extractor pair sharing one encoder: injective map below the
// spectrum threshold a + b/sqrt(n), greedy spread above it.
struct JointPair {
    CompositeCode composite;
    double a = 0.0;
    double b = 0.0;
    double gamma_n = 0.0;  // n^{-1/4}

    double code_error() const { return composite.code_error; }
    double extractor_distance() const { return composite.extractor_distance; }
};

JointPair build_joint_pair(const TypeClassTable& table, double a, double b);

struct TradeoffCheck {
    double sum = 0.0;
    double delta = 0.0;
    double slack = 0.0;  // sum - delta
    bool holds = false;
};

// eps(Phi) + eps(Psi) >= delta(p_n) - 1e-12; exact, not asymptotic.
TradeoffCheck verify_tradeoff(const JointPair& pair, const TypeClassTable& table);
TradeoffCheck verify_tradeoff(double code_error, double extractor_distance,
                              const TypeClassTable& table);
// Rejects (throws) when the extractor is not the code's own encoder; the
// theorem's hypothesis is a shared map, checked here via matching size and
// block length.
TradeoffCheck verify_tradeoff(const ThresholdCode& code, const Extractor& ext,
                              const TypeClassTable& table);

// CSV row "n,a,b,code_error,extractor_distance,sum,delta_pn".
std::string tradeoff_csv_header();
std::string tradeoff_csv_row(const JointPair& pair, const TradeoffCheck& check);

}  // namespace socint
