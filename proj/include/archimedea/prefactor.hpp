#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "archimedea/rational.hpp"

namespace archimedea::arch {

using Complex = std::complex<double>;

// constant * base^s with the constant kept as coeff * 2^a * pi^b * extra and
// the base as 2^c * pi^d * base_extra. The exact fields absorb everything the
// Gamma_R / Gamma_C bookkeeping and the duplication/recurrence rewrites
// produce for rational shifts; `extra` collects unit phases from imaginary
// shift parts and any genuinely floating input.
struct Prefactor {
    Rational coeff{1};
    Rational two_exp{0};
    Rational pi_exp{0};
    Complex extra{1.0, 0.0};
    Rational base_two{0};
    Rational base_pi{0};
    double base_extra{1.0};

    static Prefactor one() { return Prefactor{}; }

    Complex constant() const {
        double lg = two_exp.value() * std::numbers::ln2 + pi_exp.value() * std::log(std::numbers::pi);
        return coeff.value() * std::exp(lg) * extra;
    }

    double log_base() const {
        return base_two.value() * std::numbers::ln2 + base_pi.value() * std::log(std::numbers::pi) +
               std::log(base_extra);
    }

    double base() const { return std::exp(log_base()); }

    Complex eval(Complex s) const { return constant() * std::exp(s * log_base()); }

    // log of eval, up to 2*pi*i (used where only exp matters)
    Complex log_eval(Complex s) const { return std::log(constant()) + s * log_base(); }

    Prefactor& operator*=(const Prefactor& o) {
        coeff *= o.coeff;
        two_exp += o.two_exp;
        pi_exp += o.pi_exp;
        extra *= o.extra;
        base_two += o.base_two;
        base_pi += o.base_pi;
        base_extra *= o.base_extra;
        return *this;
    }

    Prefactor& operator/=(const Prefactor& o) {
        coeff /= o.coeff;
        two_exp -= o.two_exp;
        pi_exp -= o.pi_exp;
        extra /= o.extra;
        base_two -= o.base_two;
        base_pi -= o.base_pi;
        base_extra /= o.base_extra;
        return *this;
    }

    friend Prefactor operator*(Prefactor a, const Prefactor& b) { return a *= b; }
    friend Prefactor operator/(Prefactor a, const Prefactor& b) { return a /= b; }

    // multiply by r * 2^t2 * pi^tpi (constant part only)
    void mul_exact(Rational r, Rational t2, Rational tpi) {
        coeff *= r;
        two_exp += t2;
        pi_exp += tpi;
    }

    void mul_base_exact(Rational t2, Rational tpi) {
        base_two += t2;
        base_pi += tpi;
    }

    void conjugate_in_place() { extra = std::conj(extra); }
};

} // namespace archimedea::arch
