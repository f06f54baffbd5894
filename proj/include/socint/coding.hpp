#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "socint/logdomain.hpp"
#include "socint/type_table.hpp"

namespace socint {

// Fixed-length code that retains the M most probable outcomes and decodes
// by identity; everything else maps to a junk codeword. Only the retained
// set matters for the error, so no codebook is materialized.
struct ThresholdCode {
    std::uint32_t n = 0;
    double log_size = kNegInf;  // log M in nats
    Count size;                 // exact integer while it fits 64 bits
    // (class index, elements kept) in retention order: classes sorted by
    // descending per-element probability, at most one partial class, last.
    std::vector<std::pair<std::size_t, Count>> retained;
    double error = 1.0;
};

// Retains exactly floor(e^{logM}) outcomes greedily by descending
// probability (ties: class order, then lexicographic within a class, which
// never affects the error). Guarantees 1 - error >= p_n{p_n > 1/M}.
ThresholdCode build_threshold_code(const TypeClassTable& table, double log_m);

// log of the smallest integer M whose threshold code has error <= eps.
// Exact at class granularity plus within-class element counting.
double min_log_size_for_error(const TypeClassTable& table, double eps);

struct ConverseCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// 1 - error <= p_n{p_n > 1/M'} + M/M' (within 1e-12), for any code of size
// M achieving `error` on this source.
ConverseCheck converse_check_code(const TypeClassTable& table, double log_m,
                                  double error, double log_m_prime);

// (logM - n a) / sqrt(n).
double second_order_coefficient(double log_m, std::uint64_t n, double a);

// p_n{p_n(w) > 1/M}, i.e. total probability of outcomes with per-element
// log-probability strictly above -logM. Shared by the lemma bounds.
double prob_above_threshold(const TypeClassTable& table, double log_m);

// {n, logM_nats, error, retained_classes:[{composition, kept}]}.
std::string code_to_json(const ThresholdCode& code, const TypeClassTable& table);

}  // namespace socint
