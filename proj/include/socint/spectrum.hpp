#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "socint/type_table.hpp"

namespace socint {

// Distribution of the normalized log-likelihood -(1/n) log p_n(w): one atom
// per distinct per-element probability, values strictly increasing, masses
// positive and summing to 1.
struct SpectrumAtom {
    double value;     // nats per symbol
    double mass;      // linear probability
    double log_mass;  // kept alongside so tiny tails stay exact
};

struct SpectrumCDF {
    std::uint32_t n = 0;
    std::vector<SpectrumAtom> atoms;
    std::vector<double> cumulative;  // prefix sums of mass, ending at 1

    double min_value() const { return atoms.front().value; }
    double max_value() const { return atoms.back().value; }
};

// Builds the spectrum from a type-class table. Classes with equal
// per-element log-probability merge into one atom (exact equality, no
// epsilon); zero-probability classes are dropped.
SpectrumCDF spectrum_cdf(const TypeClassTable& table);

// inf{a : p_n{-(1/n)log p_n <= a} >= eps} when inclusive, with ">" when not.
// The paper's strict-"<" events and these right-continuous versions differ
// only at atom boundaries at fixed n.
double quantile_rate(const SpectrumCDF& f, double eps, bool inclusive = true);

// sqrt(n) * (quantile_rate(f, eps) - a).
double second_order_quantile(const SpectrumCDF& f, double eps, double a,
                             bool inclusive = true);

// -(1/n) log p_n{-(1/n)log p_n >= a} (inclusive tail); +inf on an empty tail.
double sigma_exponent(const SpectrumCDF& f, double a);

// CSV rows "value,mass,cumulative" with a header line.
std::string spectrum_to_csv(const SpectrumCDF& f);

}  // namespace socint
