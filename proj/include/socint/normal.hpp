#pragma once

#include <stdexcept>

namespace socint {

// Standard normal CDF, absolute error well below 1e-12.
double std_normal_cdf(double x);

// Standard normal density.
double std_normal_pdf(double x);

// Inverse CDF on (0,1). Acklam's rational approximation refined by one
// Newton step against std_normal_cdf; round-trip error <= 1e-10.
// Rejects eps in {0,1} rather than returning a signed infinity.
double std_normal_quantile(double eps);

// sqrt(V) * Phi^{-1}(eps); 0 when V == 0.
double gaussian_second_order(double v, double eps);

}  // namespace socint
