#pragma once

#include <cmath>
#include <utility>

namespace socint {

// Golden-section minimization of a unary function on [lo, hi] down to the
// given interval width. Returns (argmin, min). Assumes f is unimodal on the
// bracket; callers that cannot guarantee that should grid-scan first and
// pass a bracket around the best grid point.
template <typename F>
std::pair<double, double> golden_minimize(F&& f, double lo, double hi,
                                          double tol = 1e-10) {
    static const double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = f(x2);
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, f(x)};
}

}  // namespace socint
