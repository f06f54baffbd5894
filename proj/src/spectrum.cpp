#include "socint/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "socint/logdomain.hpp"

namespace socint {

SpectrumCDF spectrum_cdf(const TypeClassTable& table) {
    // Merge classes on exact per-element log-probability. Keys are the
    // per-element values, so the map order is ascending in probability and
    // descending in spectrum value; we flip at the end.
    std::map<double, std::vector<double>> groups;
    for (const auto& tc : table.classes) {
        if (tc.class_log_prob == kNegInf) continue;
        groups[tc.per_element_log_prob].push_back(tc.class_log_prob);
    }
    if (groups.empty()) throw std::invalid_argument("spectrum_cdf: empty support");

    SpectrumCDF f;
    f.n = table.n;
    f.atoms.reserve(groups.size());
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        SpectrumAtom atom;
        atom.value = -it->first / static_cast<double>(table.n);
        atom.log_mass = log_sum(std::move(it->second));
        atom.mass = std::exp(atom.log_mass);
        f.atoms.push_back(atom);
    }
    f.cumulative.resize(f.atoms.size());
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < f.atoms.size(); ++i) {
        const double y = f.atoms[i].mass - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        f.cumulative[i] = sum;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::runtime_error("spectrum_cdf: total mass " + std::to_string(sum));
    f.cumulative.back() = 1.0;
    return f;
}

double quantile_rate(const SpectrumCDF& f, double eps, bool inclusive) {
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("quantile_rate: eps outside (0,1]");
    for (std::size_t i = 0; i < f.atoms.size(); ++i) {
        const bool hit = inclusive ? f.cumulative[i] >= eps : f.cumulative[i] > eps;
        if (hit) return f.atoms[i].value;
    }
    return f.atoms.back().value;
}

double second_order_quantile(const SpectrumCDF& f, double eps, double a,
                             bool inclusive) {
    return std::sqrt(static_cast<double>(f.n)) * (quantile_rate(f, eps, inclusive) - a);
}

double sigma_exponent(const SpectrumCDF& f, double a) {
    // Tail accumulated in log domain so values around e^{-n sigma} survive.
    std::vector<double> tail;
    for (auto it = f.atoms.rbegin(); it != f.atoms.rend(); ++it) {
        if (it->value < a) break;
        tail.push_back(it->log_mass);
    }
    if (tail.empty()) return kPosInf;
    const double log_tail = log_sum(std::move(tail));
    return std::max(-log_tail / static_cast<double>(f.n), 0.0);
}

std::string spectrum_to_csv(const SpectrumCDF& f) {
    std::ostringstream os;
    os.precision(17);
    os << "value,mass,cumulative\n";
    for (std::size_t i = 0; i < f.atoms.size(); ++i)
        os << f.atoms[i].value << ',' << f.atoms[i].mass << ',' << f.cumulative[i]
           << '\n';
    return os.str();
}

}  // namespace socint
