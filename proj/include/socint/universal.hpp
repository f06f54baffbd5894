#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "socint/distribution.hpp"

namespace socint {

// Distribution-independent fixed-length code built from the method of
// types: T_n(a,b) = union of type classes with log|T| <= n a + sqrt(n) b,
// mapped injectively; everything else maps to a single junk codeword.
struct UniversalTypeCode {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    double a = 0.0;
    double b = 0.0;
    std::vector<std::vector<std::uint32_t>> included_types;
    std::vector<bool> included;  // by lexicographic composition rank
    double log_total_size = 0.0;  // log sum over included types of |T|
};

// Rejects when the composition count C(n+d-1, d-1) exceeds 1e7.
UniversalTypeCode universal_type_code(std::uint32_t n, std::uint32_t d, double a,
                                      double b);

// Exact 1 - P^n(T_n(a,b)) for an i.i.d. evaluation source P over d symbols.
double universal_code_error(const UniversalTypeCode& ucode,
                            const FiniteDistribution& p);

// The universal-extractor bound P^n(T^c)/n + P^n(T) on the distance to
// uniform; an upper bound (the proof only bounds the distance), reported as
// such. The construction spreads each type outside T over e^{na+b sqrt n}/n
// bins and sends T to a single bin.
double universal_extractor_distance(std::uint32_t n, std::uint32_t d, double a,
                                    double b, const FiniteDistribution& p);

// {n, d, a_nats, b, log_size_nats, second_order_b, errors:[{P, error}]}.
std::string universal_report_json(const UniversalTypeCode& ucode,
                                  const std::vector<FiniteDistribution>& sources);

}  // namespace socint
