#include "socint/logdomain.hpp"

#include <algorithm>

namespace socint {

double log_sum(std::vector<double> terms) {
    std::erase(terms, kNegInf);
    if (terms.empty()) return kNegInf;
    std::sort(terms.begin(), terms.end());
    const double top = terms.back();
    if (top == kPosInf) return kPosInf;
    // Kahan accumulation of e^{t - top}, smallest first.
    double sum = 0.0, comp = 0.0;
    for (double t : terms) {
        const double y = std::exp(t - top) - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return top + std::log(sum);
}

}  // namespace socint
