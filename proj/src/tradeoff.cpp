#include "socint/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace socint {

namespace {

struct Run {
    double lq;      // per-element log-probability (descending across runs)
    Count count;    // elements at this probability
    Count cum;      // cumulative count through this run
    double cum_mass;
};

// d(m) for the top-m subset: 1 + W_j - W(m) - j/m, where j = #{p_i >= 1/m}
// and W_j, W(m) are the masses of the top j and top m outcomes.
double eval_gap(const std::vector<Run>& runs, const Count& m) {
    const double log_m = m.log();

    // Partial-prefix mass W(m): the m-th largest element lies in run t.
    std::size_t t = 0;
    while (t < runs.size() && runs[t].cum < m) ++t;
    if (t == runs.size()) t = runs.size() - 1;
    const Count prev = t > 0 ? runs[t].cum.minus(runs[t].count) : Count();
    const double prev_mass = t > 0 ? runs[t - 1].cum_mass : 0.0;
    const Count inside = m > prev ? m.minus(prev) : Count();
    double w_m = prev_mass;
    if (!inside.is_zero() && runs[t].lq != kNegInf)
        w_m += std::exp(inside.log() + runs[t].lq);

    // j and W_j: runs with per-element probability >= 1/m.
    Count j;
    double w_j = 0.0;
    for (const auto& run : runs) {
        if (run.lq < -log_m) break;
        j = run.cum;
        w_j = run.cum_mass;
    }
    const double j_over_m = j.is_zero() ? 0.0 : std::exp(j.log() - log_m);
    return 1.0 + w_j - w_m - j_over_m;
}

DeltaGap delta_scan(std::vector<Run> runs, const Count& total) {
    std::vector<Count> candidates;
    const Count one = Count::from_u64(1);
    for (const auto& run : runs) {
        candidates.push_back(run.cum);
        const Count before = run.cum.minus(run.count);
        candidates.push_back(before + one);
        if (run.lq != kNegInf) {
            // crossing points of 1/m through this run's probability
            const Count cross = [&] {
                const double lg = -run.lq;
                if (lg < 43.0)
                    return Count::from_u64(static_cast<std::uint64_t>(
                        std::floor(std::exp(lg) + 1e-9)));
                return Count::from_log(lg);
            }();
            candidates.push_back(cross);
            candidates.push_back(cross + one);
            if (!cross.is_zero()) candidates.push_back(cross.minus(one));
        }
    }
    candidates.push_back(one);
    candidates.push_back(total);

    DeltaGap best;
    best.delta = 2.0;
    for (const auto& m : candidates) {
        if (m.is_zero() || total < m) continue;
        const double d = eval_gap(runs, m);
        if (d < best.delta - 1e-15) {
            best.delta = d;
            best.m = m;
        }
    }
    best.delta = std::clamp(best.delta, 0.0, 1.0);
    return best;
}

}  // namespace

DeltaGap delta_uniform_gap(const TypeClassTable& table) {
    const auto order = table.order_by_descending_prob();
    std::vector<Run> runs;
    Count cum;
    double mass = 0.0, comp = 0.0;
    for (std::size_t idx : order) {
        const auto& tc = table.classes[idx];
        const Count count = Count::from_log(tc.log_count);
        cum += count;
        if (tc.class_log_prob != kNegInf) {
            const double y = std::exp(tc.class_log_prob) - comp;
            const double t = mass + y;
            comp = (t - mass) - y;
            mass = t;
        }
        if (!runs.empty() && runs.back().lq == tc.per_element_log_prob) {
            runs.back().count += count;
            runs.back().cum = cum;
            runs.back().cum_mass = mass;
        } else {
            runs.push_back(Run{tc.per_element_log_prob, count, cum, mass});
        }
    }
    return delta_scan(std::move(runs), cum);
}

DeltaGap delta_uniform_gap(const FiniteDistribution& p) {
    return delta_uniform_gap(explicit_table(p, 1));
}

JointPair build_joint_pair(const TypeClassTable& table, double a, double b) {
    const double n = static_cast<double>(table.n);
    JointPair pair;
    pair.a = a;
    pair.b = b;
    pair.gamma_n = std::pow(n, -0.25);
    const double threshold = a + b / std::sqrt(n);
    const double spread_extra = n * a + std::sqrt(n) * (b + pair.gamma_n);
    pair.composite = build_composite_code(table, threshold, spread_extra);
    return pair;
}

TradeoffCheck verify_tradeoff(double code_error, double extractor_distance,
                              const TypeClassTable& table) {
    TradeoffCheck check;
    check.sum = code_error + extractor_distance;
    check.delta = delta_uniform_gap(table).delta;
    check.slack = check.sum - check.delta;
    check.holds = check.slack >= -1e-12;
    return check;
}

TradeoffCheck verify_tradeoff(const JointPair& pair, const TypeClassTable& table) {
    return verify_tradeoff(pair.code_error(), pair.extractor_distance(), table);
}

TradeoffCheck verify_tradeoff(const ThresholdCode& code, const Extractor& ext,
                              const TypeClassTable& table) {
    const bool same_size =
        code.size.exact() && code.size.value() == ext.m && code.n == ext.n;
    if (!same_size)
        throw std::invalid_argument(
            "verify_tradeoff: the extractor is not the code's encoder");
    return verify_tradeoff(code.error, extractor_distance(ext), table);
}

std::string tradeoff_csv_header() {
    return "n,a,b,code_error,extractor_distance,sum,delta_pn";
}

std::string tradeoff_csv_row(const JointPair& pair, const TradeoffCheck& check) {
    std::ostringstream os;
    os.precision(17);
    os << pair.composite.n << ',' << pair.a << ',' << pair.b << ','
       << pair.code_error() << ',' << pair.extractor_distance() << ','
       << check.sum << ',' << check.delta;
    return os.str();
}

}  // namespace socint
