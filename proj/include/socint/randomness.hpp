#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "socint/distribution.hpp"
#include "socint/logdomain.hpp"
#include "socint/spectrum.hpp"
#include "socint/type_table.hpp"

namespace socint {

// Multiset of output-bin probabilities kept at group granularity: `bins`
// bins sharing the load exp(log_load). Bin counts and loads both overflow
// doubles in the linear domain for second-order experiments (M ~ e^{nH}),
// so everything stays in logs.
struct BinGroup {
    double log_load = kNegInf;  // kNegInf = empty bin
    Count bins;
};

class LoadProfile {
public:
    // Starts as `m` empty bins.
    explicit LoadProfile(Count m);
    LoadProfile() = default;

    // Pours `chunks` equal probability chunks of log-size `log_chunk` into
    // the currently least-loaded bins, reproducing sequential greedy
    // assignment exactly up to bin identity (which the multiset drops).
    void fill(Count chunks, double log_chunk);

    // Adds `bins` standalone bins at the given load (injective parts of
    // composite constructions).
    void add_group(Count bins, double log_load);

    const std::vector<BinGroup>& groups() const { return groups_; }
    Count total_bins() const;
    double total_log_mass() const;

    // Half L1 distance to uniform over all bins of this profile.
    double distance_to_uniform() const;
    // D(loads || U_M); loads are renormalized mass is not 1 exactly.
    double kl_to_uniform() const;
    // D(U_M || loads); +inf when any bin is empty.
    double kl_from_uniform() const;

private:
    void normalize();

    std::vector<BinGroup> groups_;  // ascending by log_load
};

// Materialized extractor: explicit bin loads and the per-class element
// counts assigned to each bin. Only for M small enough to hold in memory;
// rate experiments use the virtual profile instead.
struct Extractor {
    std::uint32_t n = 0;
    std::uint64_t m = 0;
    // (class index, per-bin element counts); counts are doubles because a
    // single class can hold more than 2^64 elements even when M is small.
    std::vector<std::pair<std::size_t, std::vector<double>>> assignment;
    std::vector<double> bin_loads;
};

inline constexpr std::uint64_t kMaxMaterializedBins = 10'000'000;

// Greedy least-loaded-bin balancing, classes in descending per-element
// probability, ties to the lowest bin index. Rejects m > 1e7.
Extractor build_extractor(const TypeClassTable& table, std::uint64_t m);

// Same greedy balancing without materializing bins; agrees with
// build_extractor on the load multiset.
LoadProfile build_virtual_profile(const TypeClassTable& table, Count m);

double extractor_distance(const Extractor& ext);

enum class KlDirection { to_uniform, from_uniform };
enum class KlNormalization { one, inv_sqrt_n, inv_n };

double extractor_kl(const Extractor& ext, KlDirection dir, KlNormalization norm);
double profile_kl(const LoadProfile& profile, std::uint32_t n, KlDirection dir,
                  KlNormalization norm);

struct ExtractorConverseCheck {
    double lhs = 0.0;  // the achieved distance
    double rhs = 0.0;  // p_n{p_n > 1/M'} - M'/M
    bool holds = false;
};

// Lemma bound: any size-M operation has distance >= p_n{p_n > 1/M'} - M'/M.
ExtractorConverseCheck converse_check_extractor(const TypeClassTable& table,
                                                double log_m, double distance,
                                                double log_m_prime);

// Largest log M whose greedy extractor has distance <= eps. Integer
// doubling plus bisection while sizes fit 64 bits; log-domain bisection
// beyond that (resolution 1e-9 in log M).
double max_log_size_for_distance(const TypeClassTable& table, double eps);

// First-order lower-bound integral: int_0^a (a - x) F(dx), atoms at the
// boundary included.
double kl_rate_lower_bound(const SpectrumCDF& f, double a);
// Second-order Gaussian version: E[(b - X)_+] for X ~ N(0, V), i.e.
// b Phi(b/sqrt(V)) + sqrt(V) phi(b/sqrt(V)).
double kl_rate_lower_bound_gaussian(double v, double b);

struct SStarFamily {
    double s_star;        // H(P) + delta
    double s_star_1;      // H(P)
    double s_star_2;      // min over s in (0,1) of (s delta + psi(s))/(1-s)
    double s_star_2_arg;  // the minimizing s (0 when the infimum is at s->0)
};

SStarFamily s_star_family(const FiniteDistribution& p, double delta);

struct SStarSecondOrder {
    double s_star_2nd;    // solves E[(b - X)_+] = delta for X ~ N(0, V)
    double s_star_1_2nd;  // sqrt(V) Phi^{-1}(1 - e^{-delta})
};

SStarSecondOrder s_star_second_order(double v, double delta);

// The optimal-KL composite construction: outcomes with -(1/n)log p_n below
// the threshold map injectively, the rest spread over the given number of
// extra bins by the greedy extractor. Shared by the KL-optimal code and the
// trade-off pair; only the spread-size formula differs.
struct CompositeCode {
    std::uint32_t n = 0;
    Count injective_size;       // number of injectively mapped outcomes
    Count spread_size;          // extractor bins appended after them
    double log_total_size = kNegInf;
    double epsilon_n = 0.0;     // p_n of the injectively mapped set
    double code_error = 1.0;    // decoder inverts the injective range and
                                // recovers a spread bin by its largest chunk
                                // when that chunk beats the uniform level
    double extractor_distance = 0.0;  // d(p_n o phi^{-1}, U_total)
    double kl_to_uniform = 0.0;       // D(p_n o phi^{-1} || U_total), nats
    LoadProfile profile;
};

// Threshold -(1/n)log p_n < threshold_rate (strict); spread bins =
// floor((1 - eps_n) e^{log_spread_extra}), at least 1 while any mass is
// left over.
CompositeCode build_composite_code(const TypeClassTable& table,
                                   double threshold_rate,
                                   double log_spread_extra);

// Composite with spread size (1 - eps_n) e^{n a}, per the optimal-KL
// existence proof; kl_per_n is (1/n) D(p_n o phi^{-1} || U_total).
struct KlOptimalCode {
    CompositeCode composite;
    double kl_per_n = 0.0;
};

KlOptimalCode build_kl_optimal_code(const TypeClassTable& table, double a);

// {n, M (or logM), distance, kl_to_uniform, kl_from_uniform,
//  loads_histogram} for a materialized extractor.
std::string extractor_to_json(const Extractor& ext);

}  // namespace socint
