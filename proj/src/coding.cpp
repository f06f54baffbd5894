#include "socint/coding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace socint {

namespace {

// floor(e^{lg}) as a Count; at magnitudes beyond 64 bits the floor is
// irrelevant next to double rounding.
Count count_floor_exp(double lg) {
    if (lg < 43.0) return Count::from_u64(static_cast<std::uint64_t>(
        std::floor(std::exp(lg) + 1e-9)));
    return Count::from_log(lg);
}

Count class_count(const TypeClass& tc) { return Count::from_log(tc.log_count); }

}  // namespace

double prob_above_threshold(const TypeClassTable& table, double log_m) {
    std::vector<double> terms;
    for (const auto& tc : table.classes) {
        if (tc.class_log_prob == kNegInf) continue;
        if (tc.per_element_log_prob > -log_m) terms.push_back(tc.class_log_prob);
    }
    if (terms.empty()) return 0.0;
    return std::min(std::exp(log_sum(std::move(terms))), 1.0);
}

ThresholdCode build_threshold_code(const TypeClassTable& table, double log_m) {
    if (!(log_m >= 0.0)) throw std::invalid_argument("build_threshold_code: logM < 0");
    const Count m = count_floor_exp(log_m);
    const auto order = table.order_by_descending_prob();

    ThresholdCode code;
    code.n = table.n;
    code.size = m;
    code.log_size = m.log();

    Count remaining = m;
    std::vector<double> leftover;  // log masses of outcomes not retained
    std::size_t pos = 0;
    for (; pos < order.size(); ++pos) {
        const auto& tc = table.classes[order[pos]];
        const Count nc = class_count(tc);
        if (remaining.is_zero()) break;
        if (nc <= remaining) {
            code.retained.emplace_back(order[pos], nc);
            remaining = remaining.minus(nc);
        } else {
            code.retained.emplace_back(order[pos], remaining);
            if (tc.class_log_prob != kNegInf) {
                const Count skipped = nc.minus(remaining);
                if (!skipped.is_zero())
                    leftover.push_back(skipped.log() + tc.per_element_log_prob);
            }
            remaining = Count();
            ++pos;
            break;
        }
    }
    for (; pos < order.size(); ++pos) {
        const auto& tc = table.classes[order[pos]];
        if (tc.class_log_prob != kNegInf) leftover.push_back(tc.class_log_prob);
    }
    code.error = leftover.empty()
                     ? 0.0
                     : std::clamp(std::exp(log_sum(std::move(leftover))), 0.0, 1.0);
    return code;
}

double min_log_size_for_error(const TypeClassTable& table, double eps) {
    if (!(eps >= 0.0 && eps < 1.0))
        throw std::invalid_argument("min_log_size_for_error: eps outside [0,1)");
    const auto order = table.order_by_descending_prob();
    const std::size_t len = order.size();

    // tail[k] = log mass of classes order[k..end], built from the small end.
    std::vector<double> tail(len + 1, kNegInf);
    for (std::size_t k = len; k-- > 0;)
        tail[k] = log_add(tail[k + 1], table.classes[order[k]].class_log_prob);

    const double log_eps = eps > 0 ? std::log(eps) : kNegInf;
    std::size_t c = 0;
    while (c < len && !(tail[c + 1] <= log_eps)) ++c;
    if (c == len)
        throw std::runtime_error("min_log_size_for_error: no feasible size");

    Count m;
    for (std::size_t k = 0; k < c; ++k) m += class_count(table.classes[order[k]]);

    const auto& boundary = table.classes[order[c]];
    const Count nc = class_count(boundary);
    Count r = nc;
    if (boundary.per_element_log_prob != kNegInf) {
        const double gap = eps - std::exp(tail[c + 1]);
        if (gap > 0) {
            const double log_skip = std::log(gap) - boundary.per_element_log_prob;
            Count skip = count_floor_exp(std::max(log_skip, 0.0));
            if (log_skip < 0) skip = Count();
            r = skip < nc ? nc.minus(skip) : Count::from_u64(1);
        }
    }
    if (r.is_zero()) r = Count::from_u64(1);
    m += r;
    return m.log();
}

ConverseCheck converse_check_code(const TypeClassTable& table, double log_m,
                                  double error, double log_m_prime) {
    ConverseCheck c;
    c.lhs = 1.0 - error;
    c.rhs = prob_above_threshold(table, log_m_prime) + std::exp(log_m - log_m_prime);
    c.holds = c.lhs <= c.rhs + 1e-12;
    return c;
}

double second_order_coefficient(double log_m, std::uint64_t n, double a) {
    if (n == 0) throw std::invalid_argument("second_order_coefficient: n must be >= 1");
    return (log_m - static_cast<double>(n) * a) / std::sqrt(static_cast<double>(n));
}

std::string code_to_json(const ThresholdCode& code, const TypeClassTable& table) {
    nlohmann::json j;
    j["n"] = code.n;
    j["logM_nats"] = code.log_size;
    j["error"] = code.error;
    auto& classes = j["retained_classes"] = nlohmann::json::array();
    for (const auto& [idx, kept] : code.retained) {
        nlohmann::json entry;
        entry["composition"] = table.classes[idx].composition;
        if (kept.exact())
            entry["kept"] = kept.value();
        else
            entry["kept"] = nullptr;
        entry["kept_log"] = kept.log();
        classes.push_back(std::move(entry));
    }
    return j.dump(2);
}

}  // namespace socint
