#pragma once

#include <complex>

namespace archimedea::analytic {

using Complex = std::complex<double>;

// Principal branch of log Gamma. Relative error <= ~1e-14 for re(z) > 1/2
// (Stirling with Bernoulli tail after an upward recurrence shift); the
// reflection formula handles the left half-plane.
Complex log_gamma(Complex z);

Complex gamma_fn(Complex z);

// Upper incomplete gamma Gamma(s, x) for complex s and real x >= 0.
// Continued fraction for large x, lower-series complement otherwise.
Complex upper_gamma(Complex s, double x);

} // namespace archimedea::analytic
