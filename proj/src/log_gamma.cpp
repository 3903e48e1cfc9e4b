#include "archimedea/log_gamma.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "archimedea/errors.hpp"

namespace archimedea::analytic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLog2Pi = 1.8378770664093454836;

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr double kStirling[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

// Stirling expansion, valid once re(z) is comfortably positive.
Complex log_gamma_stirling(Complex z) {
    Complex lz = std::log(z);
    Complex acc = (z - 0.5) * lz - z + 0.5 * kLog2Pi;
    Complex zi = 1.0 / z;
    Complex zi2 = zi * zi;
    Complex p = zi;
    for (double c : kStirling) {
        acc += c * p;
        p *= zi2;
    }
    return acc;
}

// log sin(pi z) without overflow, arranged so that
// log_gamma(z) = log(pi) - logsin - log_gamma(1-z) stays on a consistent branch
// near the real axis.
Complex log_sin_pi(Complex z) {
    if (z.imag() > 1.0) {
        // sin(pi z) = e^{-i pi z} (e^{2 pi i z} - 1) / (2i) and |e^{2 pi i z}| < 1
        Complex w = std::exp(Complex(0.0, 2.0 * kPi) * z);
        return Complex(0.0, -kPi) * z + std::log((w - 1.0) / Complex(0.0, 2.0));
    }
    if (z.imag() < -1.0) {
        Complex w = std::exp(Complex(0.0, -2.0 * kPi) * z);
        return Complex(0.0, kPi) * z + std::log((1.0 - w) / Complex(0.0, 2.0));
    }
    return std::log(std::sin(kPi * z));
}

} // namespace

Complex log_gamma(Complex z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        fail("pole-at-point", "log_gamma pole at nonpositive integer");
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
    }
    // shift until the Stirling tail is below 1e-15
    Complex shift = 0.0;
    Complex w = z;
    while (w.real() < 12.0 && std::abs(w) < 12.0) {
        shift += std::log(w);
        w += 1.0;
    }
    return log_gamma_stirling(w) - shift;
}

Complex gamma_fn(Complex z) { return std::exp(log_gamma(z)); }

namespace {

Complex lower_gamma_series(Complex s, double x) {
    // gamma(s,x) = x^s e^{-x} sum_n x^n / (s (s+1) ... (s+n))
    Complex term = 1.0 / s;
    Complex sum = term;
    for (int n = 1; n < 20000; ++n) {
        term *= x / (s + Complex(n));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::exp(s * std::log(x) - x) * sum;
}

Complex upper_gamma_cf(Complex s, double x) {
    // Gamma(s,x) = e^{-x} x^s / (x+1-s - 1(1-s)/(x+3-s - 2(2-s)/(...)))
    const double tiny = 1e-300;
    Complex b = x + 1.0 - s;
    Complex c = 1.0 / tiny;
    Complex d = 1.0 / b;
    Complex f = d;
    for (int k = 1; k < 20000; ++k) {
        Complex a = -double(k) * (double(k) - s);
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        Complex delta = d * c;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(s * std::log(x) - x) * f;
}

bool near_nonpositive_integer(Complex s) {
    if (s.real() > 0.25) return false;
    double r = std::round(s.real());
    return r <= 0.0 && std::abs(s.real() - r) < 0.25 && std::abs(s.imag()) < 0.25;
}

} // namespace

Complex upper_gamma(Complex s, double x) {
    if (x < 0.0) fail("invalid-argument", "upper_gamma needs x >= 0");
    if (x == 0.0) return gamma_fn(s);
    if (near_nonpositive_integer(s)) {
        // Gamma(s,x) = (Gamma(s+1,x) - x^s e^{-x}) / s, iterated out of the pole zone
        return (upper_gamma(s + 1.0, x) - std::exp(s * std::log(x) - x)) / s;
    }
    if (x > 1.2 * std::abs(s) + 10.0) return upper_gamma_cf(s, x);
    return gamma_fn(s) - lower_gamma_series(s, x);
}

} // namespace archimedea::analytic
