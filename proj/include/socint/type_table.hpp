#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "socint/distribution.hpp"
#include "socint/logdomain.hpp"

namespace socint {

// One type class of P^n: all strings with composition `composition`
// (counts per symbol, summing to n). Every member has the same probability
// exp(per_element_log_prob).
struct TypeClass {
    std::vector<std::uint32_t> composition;
    double log_count;             // log of the multinomial coefficient
    double per_element_log_prob;  // nats; -inf if the class touches a 0-prob symbol
    double class_log_prob;        // log_count + per_element_log_prob
};

// Exact per-type-class summary of P^n. Classes are ordered lexicographically
// by composition; total probability is 1.
struct TypeClassTable {
    std::uint32_t n = 0;
    std::uint32_t alphabet_size = 0;
    std::vector<double> source_probs;  // the P the table was built from
    std::vector<TypeClass> classes;

    double total_log_count() const;  // log(d^n), from the class counts

    // Class indices sorted by descending per-element probability; ties
    // broken by class (lexicographic composition) order.
    std::vector<std::size_t> order_by_descending_prob() const;
};

// Builds the table for P^n. Rejects when the composition count
// C(n+d-1, d-1) exceeds `max_classes`.
TypeClassTable iid_type_table(const FiniteDistribution& p, std::uint32_t n,
                              std::uint64_t max_classes = 10'000'000);

// Table isomorphic to an explicitly given block distribution p_n
// (one singleton class per outcome).
TypeClassTable explicit_table(const FiniteDistribution& pn, std::uint32_t n);

// H(M, p_n) = -sum over p(w) > 1/M of p(w) log p(w). The threshold is
// strict; outcomes with p(w) exactly 1/M are excluded.
double truncated_entropy(const TypeClassTable& table, double log_m);

// log of the multinomial coefficient n! / prod(k_i!).
double log_multinomial(std::uint32_t n, const std::vector<std::uint32_t>& counts);
// Exact integer multinomial for n <= 20 (fits in 64 bits).
std::uint64_t exact_multinomial(std::uint32_t n, const std::vector<std::uint32_t>& counts);

// Versioned binary cache of a table, keyed by (P, n).
void save_type_table(const TypeClassTable& table, const std::string& path);
TypeClassTable load_type_table(const std::string& path);
std::string type_table_cache_key(const FiniteDistribution& p, std::uint32_t n);

}  // namespace socint
