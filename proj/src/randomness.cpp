#include "socint/randomness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>

#include <json.hpp>

#include "socint/coding.hpp"
#include "socint/golden.hpp"
#include "socint/normal.hpp"

namespace socint {

namespace {

Count count_mul(const Count& a, const Count& b) {
    if (a.is_zero() || b.is_zero()) return Count();
    if (a.exact() && b.exact()) {
        const unsigned __int128 p =
            static_cast<unsigned __int128>(a.value()) * b.value();
        if (p <= std::numeric_limits<std::uint64_t>::max())
            return Count::from_u64(static_cast<std::uint64_t>(p));
    }
    return Count::from_log(a.log() + b.log());
}

Count count_floor_div(const Count& a, const Count& b) {
    if (a.is_zero()) return Count();
    if (a.exact() && b.exact()) return Count::from_u64(a.value() / b.value());
    if (a.log() < b.log()) return Count();
    return Count::from_log(a.log() - b.log());
}

// ceil(e^{log_u}) for the log of a non-negative real.
Count ceil_count_log(double log_u) {
    if (log_u == kNegInf) return Count();
    if (log_u < 43.0)
        return Count::from_u64(
            static_cast<std::uint64_t>(std::ceil(std::exp(log_u) - 1e-9)));
    return Count::from_log(log_u);
}

Count count_floor_exp(double lg) {
    if (lg == kNegInf) return Count();
    if (lg < 43.0)
        return Count::from_u64(
            static_cast<std::uint64_t>(std::floor(std::exp(lg) + 1e-9)));
    return Count::from_log(lg);
}

const Count kOne = Count::from_u64(1);

}  // namespace

LoadProfile::LoadProfile(Count m) {
    if (!m.is_zero()) groups_.push_back(BinGroup{kNegInf, m});
}

Count LoadProfile::total_bins() const {
    Count t;
    for (const auto& g : groups_) t += g.bins;
    return t;
}

double LoadProfile::total_log_mass() const {
    std::vector<double> terms;
    for (const auto& g : groups_)
        if (g.log_load != kNegInf) terms.push_back(g.bins.log() + g.log_load);
    return terms.empty() ? kNegInf : log_sum(std::move(terms));
}

void LoadProfile::normalize() {
    std::sort(groups_.begin(), groups_.end(),
              [](const BinGroup& a, const BinGroup& b) {
                  return a.log_load < b.log_load;
              });
    std::vector<BinGroup> merged;
    for (auto& g : groups_) {
        if (g.bins.is_zero()) continue;
        if (!merged.empty() && merged.back().log_load == g.log_load)
            merged.back().bins += g.bins;
        else
            merged.push_back(g);
    }
    groups_.swap(merged);
}

void LoadProfile::add_group(Count bins, double log_load) {
    if (bins.is_zero()) return;
    groups_.push_back(BinGroup{log_load, bins});
    normalize();
}

void LoadProfile::fill(Count chunks, double log_chunk) {
    if (chunks.is_zero() || log_chunk == kNegInf) return;
    if (groups_.empty()) throw std::logic_error("LoadProfile::fill: no bins");

    // Fast path: one chunk each to part of the least-loaded group.
    if (chunks <= groups_.front().bins) {
        const BinGroup low = groups_.front();
        groups_.erase(groups_.begin());
        const Count rest = low.bins.minus(chunks);
        if (!rest.is_zero()) groups_.push_back(BinGroup{low.log_load, rest});
        groups_.push_back(BinGroup{log_add(low.log_load, log_chunk), chunks});
        normalize();
        return;
    }

    // General path, a discrete water fill. The sequential-greedy result is
    // characterized by the level function C(t) = sum over bins of
    // max(0, ceil((t - L_b)/q)), the chunks needed to raise every bin to at
    // least t. Locate the highest group level t0 with C(t0) <= N; raise the
    // groups below t0 to it, hand out whole one-chunk-per-bin sweeps (every
    // chunk in these phases is served strictly below the untouched groups,
    // so they reproduce greedy exactly), and give the remainder one each to
    // the lowest bins across raised and untouched groups alike.
    const Count n_chunks = chunks;

    // chunks per bin of base level `lb` to reach at least level `lt`
    auto lift = [&](double lt, double lb) {
        return ceil_count_log(log_sub(lt, lb) - log_chunk);
    };
    // C(L_g) restricted to groups below index g
    auto cost_to = [&](std::size_t g) {
        Count c;
        for (std::size_t i = 0; i < g; ++i)
            c += count_mul(lift(groups_[g].log_load, groups_[i].log_load),
                           groups_[i].bins);
        return c;
    };

    // Gallop up from the bottom before bisecting: fills usually stay within
    // the lowest few groups, and cost_to(g) itself is O(g), so probing high
    // indices first would dominate the sweep cost.
    std::size_t lo = 0, hi = groups_.size() - 1;  // cost_to(0) == 0 <= N
    for (std::size_t step = 1; lo + step <= hi; step *= 2) {
        if (cost_to(lo + step) <= n_chunks) {
            lo += step;
        } else {
            hi = lo + step - 1;
            break;
        }
    }
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo + 1) / 2;
        if (cost_to(mid) <= n_chunks)
            lo = mid;
        else
            hi = mid - 1;
    }
    const std::size_t gstar = lo;
    const double t0 = groups_[gstar].log_load;

    std::vector<Count> c(gstar + 1);
    Count base_cost, m_act;
    for (std::size_t i = 0; i < gstar; ++i) {
        c[i] = lift(t0, groups_[i].log_load);
        base_cost += count_mul(c[i], groups_[i].bins);
    }
    for (std::size_t i = 0; i <= gstar; ++i) m_act += groups_[i].bins;

    Count d = n_chunks.minus(base_cost);
    const Count k = count_floor_div(d, m_act);
    if (!k.is_zero()) {
        for (std::size_t i = 0; i <= gstar; ++i) c[i] += k;
        d = d.minus(count_mul(k, m_act));
    }

    struct Entry {
        double level;
        Count bins;
    };
    std::vector<Entry> entries;
    entries.reserve(groups_.size());
    for (std::size_t i = 0; i <= gstar; ++i) {
        const double level =
            c[i].is_zero() ? groups_[i].log_load
                           : log_add(groups_[i].log_load, c[i].log() + log_chunk);
        entries.push_back({level, groups_[i].bins});
    }
    for (std::size_t i = gstar + 1; i < groups_.size(); ++i)
        entries.push_back({groups_[i].log_load, groups_[i].bins});
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.level < b.level; });

    std::vector<BinGroup> out;
    Count r = d;
    for (const auto& e : entries) {
        if (!r.is_zero()) {
            if (e.bins <= r) {
                out.push_back(BinGroup{log_add(e.level, log_chunk), e.bins});
                r = r.minus(e.bins);
                continue;
            }
            out.push_back(BinGroup{log_add(e.level, log_chunk), r});
            out.push_back(BinGroup{e.level, e.bins.minus(r)});
            r = Count();
            continue;
        }
        out.push_back(BinGroup{e.level, e.bins});
    }
    groups_.swap(out);
    normalize();
}

double LoadProfile::distance_to_uniform() const {
    const Count m = total_bins();
    if (m.is_zero()) return 0.0;
    const double log_u = -m.log();
    std::vector<double> above, below;
    for (const auto& g : groups_) {
        if (g.log_load > log_u)
            above.push_back(g.bins.log() + log_sub(g.log_load, log_u));
        else if (g.log_load < log_u)
            below.push_back(g.bins.log() + log_sub(log_u, g.log_load));
    }
    const double a = above.empty() ? 0.0 : std::exp(log_sum(std::move(above)));
    const double b = below.empty() ? 0.0 : std::exp(log_sum(std::move(below)));
    return std::clamp(0.5 * (a + b), 0.0, 1.0);
}

double LoadProfile::kl_to_uniform() const {
    const Count m = total_bins();
    const double log_m = m.log();
    double sum = 0.0, comp = 0.0;
    for (const auto& g : groups_) {
        if (g.log_load == kNegInf) continue;
        const double w = std::exp(g.bins.log() + g.log_load);
        const double term = w * (g.log_load + log_m);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return std::max(sum, 0.0);
}

double LoadProfile::kl_from_uniform() const {
    const Count m = total_bins();
    const double log_m = m.log();
    double sum = 0.0;
    for (const auto& g : groups_) {
        if (g.log_load == kNegInf) return kPosInf;
        sum += std::exp(g.bins.log() - log_m) * g.log_load;
    }
    return std::max(-log_m - sum, 0.0);
}

LoadProfile build_virtual_profile(const TypeClassTable& table, Count m) {
    if (m.is_zero())
        throw std::invalid_argument("build_virtual_profile: M must be >= 1");
    LoadProfile profile(m);
    for (std::size_t idx : table.order_by_descending_prob()) {
        const auto& tc = table.classes[idx];
        if (tc.per_element_log_prob == kNegInf) continue;
        profile.fill(Count::from_log(tc.log_count), tc.per_element_log_prob);
    }
    return profile;
}

Extractor build_extractor(const TypeClassTable& table, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("build_extractor: M must be >= 1");
    if (m > kMaxMaterializedBins)
        throw std::invalid_argument(
            "build_extractor: M exceeds the materializable bin cap; use the "
            "virtual profile path");
    Count total;
    for (const auto& tc : table.classes) total += Count::from_log(tc.log_count);
    if (!total.exact() || total.value() > 5'000'000)
        throw std::invalid_argument(
            "build_extractor: too many outcomes to materialize; use the "
            "virtual profile path");

    Extractor ext;
    ext.n = table.n;
    ext.m = m;
    ext.bin_loads.assign(m, 0.0);

    using Slot = std::pair<double, std::uint64_t>;
    std::priority_queue<Slot, std::vector<Slot>, std::greater<>> heap;
    for (std::uint64_t b = 0; b < m; ++b) heap.emplace(0.0, b);

    for (std::size_t idx : table.order_by_descending_prob()) {
        const auto& tc = table.classes[idx];
        const std::uint64_t count = Count::from_log(tc.log_count).value();
        const double q = tc.per_element_log_prob == kNegInf
                             ? 0.0
                             : std::exp(tc.per_element_log_prob);
        std::vector<double> counts(m, 0.0);
        for (std::uint64_t e = 0; e < count; ++e) {
            auto [load, bin] = heap.top();
            heap.pop();
            counts[bin] += 1.0;
            load += q;
            ext.bin_loads[bin] = load;
            heap.emplace(load, bin);
        }
        ext.assignment.emplace_back(idx, std::move(counts));
    }
    return ext;
}

double extractor_distance(const Extractor& ext) {
    const double u = 1.0 / static_cast<double>(ext.m);
    double sum = 0.0;
    for (double load : ext.bin_loads) sum += std::abs(load - u);
    return std::clamp(0.5 * sum, 0.0, 1.0);
}

namespace {

double apply_norm(double value, std::uint32_t n, KlNormalization norm) {
    switch (norm) {
        case KlNormalization::one:
            return value;
        case KlNormalization::inv_sqrt_n:
            return value / std::sqrt(static_cast<double>(n));
        case KlNormalization::inv_n:
            return value / static_cast<double>(n);
    }
    return value;
}

}  // namespace

double extractor_kl(const Extractor& ext, KlDirection dir, KlNormalization norm) {
    const double log_m = std::log(static_cast<double>(ext.m));
    double d = 0.0;
    if (dir == KlDirection::to_uniform) {
        for (double load : ext.bin_loads)
            if (load > 0) d += load * (std::log(load) + log_m);
    } else {
        const double u = 1.0 / static_cast<double>(ext.m);
        for (double load : ext.bin_loads) {
            if (load <= 0) return kPosInf;
            d += u * (std::log(u) - std::log(load));
        }
    }
    return apply_norm(std::max(d, 0.0), ext.n, norm);
}

double profile_kl(const LoadProfile& profile, std::uint32_t n, KlDirection dir,
                  KlNormalization norm) {
    const double d = dir == KlDirection::to_uniform ? profile.kl_to_uniform()
                                                    : profile.kl_from_uniform();
    return apply_norm(d, n, norm);
}

ExtractorConverseCheck converse_check_extractor(const TypeClassTable& table,
                                                double log_m, double distance,
                                                double log_m_prime) {
    ExtractorConverseCheck c;
    c.lhs = distance;
    c.rhs = prob_above_threshold(table, log_m_prime) - std::exp(log_m_prime - log_m);
    c.holds = c.lhs >= c.rhs - 1e-12;
    return c;
}

double max_log_size_for_distance(const TypeClassTable& table, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("max_log_size_for_distance: eps outside (0,1)");
    auto dist = [&](double log_m) {
        return build_virtual_profile(table, count_floor_exp(log_m))
            .distance_to_uniform();
    };

    Count total;
    for (const auto& tc : table.classes) total += Count::from_log(tc.log_count);
    if (total.exact() && total.value() <= 1'000'000) {
        // Integer doubling then bisection.
        const std::uint64_t cap = 4 * total.value();
        std::uint64_t lo = 1, hi = 2;
        while (hi <= cap && dist(std::log(static_cast<double>(hi))) <= eps) {
            lo = hi;
            hi *= 2;
        }
        if (hi > cap) return std::log(static_cast<double>(lo));
        while (hi - lo > 1) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            if (dist(std::log(static_cast<double>(mid))) <= eps)
                lo = mid;
            else
                hi = mid;
        }
        return std::log(static_cast<double>(lo));
    }

    double lo = 0.0, hi = total.log() + 1.0;
    if (dist(hi) <= eps) return hi;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (dist(mid) <= eps)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double kl_rate_lower_bound(const SpectrumCDF& f, double a) {
    double sum = 0.0, comp = 0.0;
    for (const auto& atom : f.atoms) {
        if (atom.value < 0.0 || atom.value > a) continue;
        const double term = (a - atom.value) * atom.mass;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return std::max(sum, 0.0);
}

double kl_rate_lower_bound_gaussian(double v, double b) {
    if (!(v >= 0.0))
        throw std::invalid_argument("kl_rate_lower_bound_gaussian: V must be >= 0");
    if (v == 0.0) return std::max(b, 0.0);
    const double s = std::sqrt(v);
    return std::max(b * std_normal_cdf(b / s) + s * std_normal_pdf(b / s), 0.0);
}

SStarFamily s_star_family(const FiniteDistribution& p, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("s_star_family: delta must be > 0");
    const double h = entropy(p);
    SStarFamily out;
    out.s_star = h + delta;
    out.s_star_1 = h;

    auto f = [&](double s) { return (s * delta + renyi_psi(p, s)) / (1.0 - s); };

    // 256-point grid, log-spaced toward both ends of (0,1), then a
    // golden-section refinement around the best grid point. The objective
    // may be non-unimodal, hence the grid pass.
    std::vector<double> grid;
    grid.reserve(256);
    const double lo = 1e-9;
    for (int i = 0; i < 128; ++i) {
        const double t = static_cast<double>(i) / 127.0;
        const double s = std::exp(std::log(lo) + t * (std::log(0.5) - std::log(lo)));
        grid.push_back(s);
        grid.push_back(1.0 - s);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return b - a < 1e-12; }),
               grid.end());
    std::size_t best = 0;
    double best_val = kPosInf;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = f(grid[i]);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const double bl = best > 0 ? grid[best - 1] : lo;
    const double br = best + 1 < grid.size() ? grid[best + 1] : 1.0 - lo;
    auto [arg, val] = golden_minimize(f, bl, br, 1e-10);

    // s -> 0 boundary: psi(s) -> log(support size), so the infimum there is
    // log |supp(P)|. s -> 1 diverges to +inf.
    const double boundary = std::log(static_cast<double>(p.support_size()));
    if (boundary < val - 1e-12) {
        out.s_star_2 = boundary;
        out.s_star_2_arg = 0.0;
    } else {
        out.s_star_2 = std::min(val, boundary);
        out.s_star_2_arg = arg;
    }
    return out;
}

SStarSecondOrder s_star_second_order(double v, double delta) {
    if (!(v > 0.0))
        throw std::invalid_argument("s_star_second_order: V must be > 0");
    if (!(delta > 0.0))
        throw std::invalid_argument("s_star_second_order: delta must be > 0");
    auto g = [&](double b) { return kl_rate_lower_bound_gaussian(v, b); };
    const double step = std::max(1.0, std::sqrt(v));
    double lo = 0.0, hi = 0.0;
    while (g(lo) > delta) lo -= step;
    while (g(hi) < delta) hi += step;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < delta)
            lo = mid;
        else
            hi = mid;
    }
    SStarSecondOrder out;
    out.s_star_2nd = 0.5 * (lo + hi);
    out.s_star_1_2nd = std::sqrt(v) * std_normal_quantile(1.0 - std::exp(-delta));
    return out;
}

CompositeCode build_composite_code(const TypeClassTable& table,
                                   double threshold_rate,
                                   double log_spread_extra) {
    const double n = static_cast<double>(table.n);
    // -(1/n) log p_n < threshold_rate  <=>  per-element log-prob > -n * rate.
    const double lp_cut = -n * threshold_rate;

    CompositeCode out;
    out.n = table.n;

    std::vector<double> inj_mass;
    std::vector<std::size_t> spread_classes;
    for (std::size_t i = 0; i < table.classes.size(); ++i) {
        const auto& tc = table.classes[i];
        if (tc.per_element_log_prob > lp_cut) {
            out.injective_size += Count::from_log(tc.log_count);
            if (tc.class_log_prob != kNegInf) inj_mass.push_back(tc.class_log_prob);
        } else {
            spread_classes.push_back(i);
        }
    }
    out.epsilon_n = inj_mass.empty()
                        ? 0.0
                        : std::clamp(std::exp(log_sum(std::move(inj_mass))), 0.0, 1.0);

    bool spread_has_mass = false;
    for (std::size_t i : spread_classes)
        if (table.classes[i].class_log_prob != kNegInf) spread_has_mass = true;

    if (out.epsilon_n < 1.0 && spread_has_mass) {
        const double log_mhat = std::log1p(-out.epsilon_n) + log_spread_extra;
        out.spread_size = count_floor_exp(log_mhat);
        if (out.spread_size.is_zero()) out.spread_size = kOne;
    } else if (!spread_classes.empty()) {
        // Zero-probability leftovers still need somewhere to map.
        out.spread_size = kOne;
    }

    // The decoder inverts the injective part and recovers a spread bin by
    // its most probable member when that member still beats the uniform
    // level 1/M (threshold decoding; below that level it declares failure).
    // Greedy assignment pours classes in descending probability, so a bin's
    // first chunk is its largest; the recovered mass is one above-threshold
    // chunk per bin that was still empty.
    const double log_m_total = (out.injective_size + out.spread_size).log();
    std::vector<double> recovered;
    LoadProfile profile = out.spread_size.is_zero() ? LoadProfile()
                                                    : LoadProfile(out.spread_size);
    if (!out.spread_size.is_zero()) {
        std::vector<std::size_t> order(spread_classes);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return table.classes[a].per_element_log_prob >
                   table.classes[b].per_element_log_prob;
        });
        Count empty = out.spread_size;
        for (std::size_t i : order) {
            const auto& tc = table.classes[i];
            if (tc.per_element_log_prob == kNegInf) continue;
            const Count cnt = Count::from_log(tc.log_count);
            const Count firsts = cnt < empty ? cnt : empty;
            if (!firsts.is_zero()) {
                if (tc.per_element_log_prob > -log_m_total)
                    recovered.push_back(firsts.log() + tc.per_element_log_prob);
                empty = empty.minus(firsts);
            }
            profile.fill(cnt, tc.per_element_log_prob);
        }
    }
    const double rec =
        recovered.empty() ? 0.0 : std::exp(log_sum(std::move(recovered)));
    out.code_error = std::clamp(1.0 - out.epsilon_n - rec, 0.0, 1.0);
    for (std::size_t i = 0; i < table.classes.size(); ++i) {
        const auto& tc = table.classes[i];
        if (tc.per_element_log_prob > lp_cut)
            profile.add_group(Count::from_log(tc.log_count), tc.per_element_log_prob);
    }

    out.profile = std::move(profile);
    const Count total = out.injective_size + out.spread_size;
    out.log_total_size = total.log();
    out.extractor_distance = out.profile.distance_to_uniform();
    out.kl_to_uniform = out.profile.kl_to_uniform();
    return out;
}

KlOptimalCode build_kl_optimal_code(const TypeClassTable& table, double a) {
    KlOptimalCode out;
    out.composite =
        build_composite_code(table, a, static_cast<double>(table.n) * a);
    out.kl_per_n = out.composite.kl_to_uniform / static_cast<double>(table.n);
    return out;
}

std::string extractor_to_json(const Extractor& ext) {
    nlohmann::json j;
    j["n"] = ext.n;
    j["M"] = ext.m;
    j["distance"] = extractor_distance(ext);
    j["kl_to_uniform"] =
        extractor_kl(ext, KlDirection::to_uniform, KlNormalization::one);
    const double from = extractor_kl(ext, KlDirection::from_uniform,
                                     KlNormalization::one);
    if (std::isinf(from))
        j["kl_from_uniform"] = "inf";
    else
        j["kl_from_uniform"] = from;
    if (ext.m <= 1000) {
        j["loads_histogram"] = ext.bin_loads;
    } else {
        const auto [mn, mx] =
            std::minmax_element(ext.bin_loads.begin(), ext.bin_loads.end());
        const double lo = *mn, hi = *mx;
        std::vector<std::uint64_t> buckets(32, 0);
        const double width = hi > lo ? (hi - lo) / 32.0 : 1.0;
        for (double load : ext.bin_loads) {
            auto b = static_cast<std::size_t>((load - lo) / width);
            buckets[std::min<std::size_t>(b, 31)] += 1;
        }
        j["loads_histogram"] = {{"min", lo}, {"max", hi}, {"counts", buckets}};
    }
    return j.dump(2);
}

}  // namespace socint
