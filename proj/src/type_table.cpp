#include "socint/type_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace socint {

double log_multinomial(std::uint32_t n, const std::vector<std::uint32_t>& counts) {
    double lg = std::lgamma(static_cast<double>(n) + 1.0);
    for (std::uint32_t k : counts) lg -= std::lgamma(static_cast<double>(k) + 1.0);
    return lg;
}

std::uint64_t exact_multinomial(std::uint32_t n, const std::vector<std::uint32_t>& counts) {
    if (n > 20) throw std::invalid_argument("exact_multinomial: n > 20");
    // Product of binomials over a running total; every prefix is itself a
    // binomial product, so intermediate values stay integral.
    std::uint64_t result = 1;
    std::uint32_t used = 0;
    for (std::uint32_t k : counts) {
        for (std::uint32_t i = 1; i <= k; ++i) {
            result = result * (used + i) / i;
        }
        used += k;
    }
    return result;
}

double TypeClassTable::total_log_count() const {
    return static_cast<double>(n) * std::log(static_cast<double>(alphabet_size));
}

std::vector<std::size_t> TypeClassTable::order_by_descending_prob() const {
    std::vector<std::size_t> idx(classes.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return classes[a].per_element_log_prob > classes[b].per_element_log_prob;
    });
    return idx;
}

namespace {

std::uint64_t composition_count(std::uint32_t n, std::uint32_t d) {
    // C(n+d-1, d-1), saturating.
    std::uint64_t c = 1;
    for (std::uint32_t i = 1; i < d; ++i) {
        const double est = static_cast<double>(c) * (n + i) / i;
        if (est > 4e18) return std::numeric_limits<std::uint64_t>::max();
        c = c * (n + i) / i;
    }
    return c;
}

}  // namespace

TypeClassTable iid_type_table(const FiniteDistribution& p, std::uint32_t n,
                              std::uint64_t max_classes) {
    if (n == 0) throw std::invalid_argument("iid_type_table: n must be positive");
    const auto d = static_cast<std::uint32_t>(p.size());
    const std::uint64_t n_classes = composition_count(n, d);
    if (n_classes > max_classes)
        throw std::invalid_argument("iid_type_table: composition count " +
                                    std::to_string(n_classes) + " exceeds cap " +
                                    std::to_string(max_classes));

    TypeClassTable table;
    table.n = n;
    table.alphabet_size = d;
    table.source_probs = p.probs();
    table.classes.reserve(n_classes);

    std::vector<std::uint32_t> comp(d, 0);
    auto emit = [&](const std::vector<std::uint32_t>& c) {
        TypeClass tc;
        tc.composition = c;
        tc.log_count = log_multinomial(n, c);
        double lp = 0.0;
        for (std::uint32_t i = 0; i < d; ++i) {
            if (c[i] == 0) continue;
            if (p.log_prob(i) == kNegInf) {
                lp = kNegInf;
                break;
            }
            lp += static_cast<double>(c[i]) * p.log_prob(i);
        }
        tc.per_element_log_prob = lp;
        tc.class_log_prob = lp == kNegInf ? kNegInf : tc.log_count + lp;
        table.classes.push_back(std::move(tc));
    };
    // Lexicographic enumeration of compositions of n into d parts.
    auto enumerate = [&](auto&& self, std::uint32_t pos, std::uint32_t left) -> void {
        if (pos == d - 1) {
            comp[pos] = left;
            emit(comp);
            return;
        }
        for (std::uint32_t k = 0; k <= left; ++k) {
            comp[pos] = k;
            self(self, pos + 1, left - k);
        }
    };
    enumerate(enumerate, 0, n);
    return table;
}

TypeClassTable explicit_table(const FiniteDistribution& pn, std::uint32_t n) {
    TypeClassTable table;
    table.n = n;
    table.alphabet_size = static_cast<std::uint32_t>(pn.size());
    table.source_probs = pn.probs();
    table.classes.reserve(pn.size());
    for (std::size_t i = 0; i < pn.size(); ++i) {
        TypeClass tc;
        tc.composition = {static_cast<std::uint32_t>(i)};
        tc.log_count = 0.0;
        tc.per_element_log_prob = pn.log_prob(i);
        tc.class_log_prob = pn.log_prob(i);
        table.classes.push_back(std::move(tc));
    }
    return table;
}

double truncated_entropy(const TypeClassTable& table, double log_m) {
    if (!std::isfinite(log_m)) throw std::invalid_argument("truncated_entropy: logM not finite");
    // Outcomes with p(w) > 1/M, i.e. per_element_log_prob > -logM (strict).
    double h = 0.0, comp = 0.0;
    for (const auto& tc : table.classes) {
        if (tc.class_log_prob == kNegInf) continue;
        if (!(tc.per_element_log_prob > -log_m)) continue;
        const double term = -std::exp(tc.class_log_prob) * tc.per_element_log_prob;
        const double y = term - comp;
        const double s = h + y;
        comp = (s - h) - y;
        h = s;
    }
    return h;
}

namespace {
constexpr char kMagic[8] = {'s', 'o', 'c', 'i', 'n', 't', 'T', '1'};
constexpr std::uint32_t kCacheVersion = 1;

template <typename T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
void get(std::istream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
}
}  // namespace

void save_type_table(const TypeClassTable& table, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("save_type_table: cannot open " + path);
    os.write(kMagic, sizeof(kMagic));
    put(os, kCacheVersion);
    put(os, table.n);
    put(os, table.alphabet_size);
    const auto np = static_cast<std::uint64_t>(table.source_probs.size());
    put(os, np);
    for (double p : table.source_probs) put(os, p);
    const auto nc = static_cast<std::uint64_t>(table.classes.size());
    put(os, nc);
    for (const auto& tc : table.classes) {
        for (std::uint32_t k : tc.composition) put(os, k);
        put(os, tc.log_count);
        put(os, tc.per_element_log_prob);
        put(os, tc.class_log_prob);
    }
}

TypeClassTable load_type_table(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_type_table: cannot open " + path);
    char magic[8];
    is.read(magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("load_type_table: bad magic in " + path);
    std::uint32_t version = 0;
    get(is, version);
    if (version != kCacheVersion)
        throw std::runtime_error("load_type_table: unsupported cache version");
    TypeClassTable table;
    get(is, table.n);
    get(is, table.alphabet_size);
    std::uint64_t np = 0;
    get(is, np);
    table.source_probs.resize(np);
    for (auto& p : table.source_probs) get(is, p);
    std::uint64_t nc = 0;
    get(is, nc);
    table.classes.resize(nc);
    for (auto& tc : table.classes) {
        tc.composition.resize(table.alphabet_size);
        for (auto& k : tc.composition) get(is, k);
        get(is, tc.log_count);
        get(is, tc.per_element_log_prob);
        get(is, tc.class_log_prob);
    }
    if (!is) throw std::runtime_error("load_type_table: truncated file " + path);
    return table;
}

std::string type_table_cache_key(const FiniteDistribution& p, std::uint32_t n) {
    // FNV-1a over the probability bytes and n.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const void* data, std::size_t len) {
        const auto* b = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    };
    for (double pr : p.probs()) mix(&pr, sizeof(pr));
    mix(&n, sizeof(n));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string("tbl_") + buf + ".bin";
}

}  // namespace socint
