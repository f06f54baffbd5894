#include "socint/universal.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "socint/coding.hpp"
#include "socint/logdomain.hpp"
#include "socint/type_table.hpp"

namespace socint {

UniversalTypeCode universal_type_code(std::uint32_t n, std::uint32_t d, double a,
                                      double b) {
    if (d < 2) throw std::invalid_argument("universal_type_code: d must be >= 2");
    if (n == 0) throw std::invalid_argument("universal_type_code: n must be >= 1");

    // Reuse the table enumerator with a dummy uniform source; only the
    // compositions and log-counts matter, and the class order is the shared
    // lexicographic one.
    const TypeClassTable table = iid_type_table(FiniteDistribution::uniform(d), n);

    UniversalTypeCode code;
    code.n = n;
    code.d = d;
    code.a = a;
    code.b = b;
    code.included.resize(table.classes.size(), false);

    const double cap = static_cast<double>(n) * a +
                       std::sqrt(static_cast<double>(n)) * b + 1e-12;
    std::vector<double> sizes;
    for (std::size_t i = 0; i < table.classes.size(); ++i) {
        if (table.classes[i].log_count <= cap) {
            code.included[i] = true;
            code.included_types.push_back(table.classes[i].composition);
            sizes.push_back(table.classes[i].log_count);
        }
    }
    code.log_total_size = sizes.empty() ? kNegInf : log_sum(std::move(sizes));
    return code;
}

namespace {

// P^n(T_n(a,b)^c) via the excluded classes, accumulated in log domain.
double excluded_log_mass(const UniversalTypeCode& ucode,
                         const FiniteDistribution& p) {
    if (p.size() != ucode.d)
        throw std::invalid_argument("universal: evaluation source has wrong alphabet");
    const TypeClassTable table = iid_type_table(p, ucode.n);
    if (table.classes.size() != ucode.included.size())
        throw std::logic_error("universal: composition enumeration mismatch");
    std::vector<double> terms;
    for (std::size_t i = 0; i < table.classes.size(); ++i) {
        if (ucode.included[i]) continue;
        if (table.classes[i].class_log_prob == kNegInf) continue;
        terms.push_back(table.classes[i].class_log_prob);
    }
    return terms.empty() ? kNegInf : log_sum(std::move(terms));
}

}  // namespace

double universal_code_error(const UniversalTypeCode& ucode,
                            const FiniteDistribution& p) {
    const double lg = excluded_log_mass(ucode, p);
    return lg == kNegInf ? 0.0 : std::min(std::exp(lg), 1.0);
}

double universal_extractor_distance(std::uint32_t n, std::uint32_t d, double a,
                                    double b, const FiniteDistribution& p) {
    const UniversalTypeCode code = universal_type_code(n, d, a, b);
    const double p_out = universal_code_error(code, p);  // P^n(T^c)
    const double p_in = 1.0 - p_out;                     // P^n(T)
    return std::min(p_out / static_cast<double>(n) + p_in, 1.0);
}

std::string universal_report_json(const UniversalTypeCode& ucode,
                                  const std::vector<FiniteDistribution>& sources) {
    nlohmann::json j;
    j["n"] = ucode.n;
    j["d"] = ucode.d;
    j["a_nats"] = ucode.a;
    j["b"] = ucode.b;
    j["log_size_nats"] = ucode.log_total_size;
    j["second_order_b"] = second_order_coefficient(ucode.log_total_size, ucode.n,
                                                   ucode.a);
    auto& errors = j["errors"] = nlohmann::json::array();
    for (const auto& p : sources) {
        nlohmann::json entry;
        entry["P"] = p.probs();
        entry["error"] = universal_code_error(ucode, p);
        errors.push_back(std::move(entry));
    }
    return j.dump(2);
}

}  // namespace socint
