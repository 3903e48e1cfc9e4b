#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "archimedea/errors.hpp"

namespace archimedea {

using Complex = std::complex<double>;

// Dense polynomial over C, coefficients low degree first.
class Poly {
public:
    Poly() : c_{Complex(0.0)} {}
    explicit Poly(Complex c0) : c_{c0} {}
    explicit Poly(std::vector<Complex> c) : c_(std::move(c)) { trim(); }

    static Poly one() { return Poly(Complex(1.0)); }
    // s - root
    static Poly linear_from_root(Complex root) { return Poly({-root, Complex(1.0)}); }

    const std::vector<Complex>& coeffs() const { return c_; }
    int degree() const { return (int)c_.size() - 1; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == Complex(0.0); }
    Complex leading() const { return c_.back(); }

    Complex eval(Complex s) const {
        Complex acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
        return acc;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()), Complex(0.0));
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (b * Complex(-1.0)); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Complex> c(a.c_.size() + b.c_.size() - 1, Complex(0.0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, Complex k) {
        std::vector<Complex> c(a.c_);
        for (auto& x : c) x *= k;
        return Poly(std::move(c));
    }

    Poly monic() const {
        if (is_zero()) fail("invalid-argument", "monic of zero polynomial");
        return *this * (Complex(1.0) / leading());
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (auto& x : c_) m = std::max(m, std::abs(x));
        return m;
    }

    // All complex roots by the Durand-Kerner iteration; adequate for the small
    // degrees arising here (local Euler factors, emitted gamma-recurrence
    // products).
    std::vector<Complex> roots(double tol = 1e-12, int max_iter = 500) const {
        int n = degree();
        if (n <= 0) return {};
        std::vector<Complex> a(c_.begin(), c_.end());
        Complex lead = a.back();
        for (auto& x : a) x /= lead;
        double radius = 1.0;
        for (int i = 0; i < n; ++i) radius = std::max(radius, 2.0 * std::pow(std::abs(a[i]), 1.0 / (n - i)));
        std::vector<Complex> z(n);
        const Complex seed(0.4, 0.9);
        Complex w = 1.0;
        for (int i = 0; i < n; ++i) { w *= seed; z[i] = radius * w; }
        auto peval = [&](Complex s) {
            Complex acc = 1.0;
            for (int i = n - 1; i >= 0; --i) acc = acc * s + a[i];
            return acc;
        };
        for (int it = 0; it < max_iter; ++it) {
            double moved = 0.0;
            for (int i = 0; i < n; ++i) {
                Complex d = peval(z[i]);
                for (int j = 0; j < n; ++j)
                    if (j != i) d /= (z[i] - z[j]);
                z[i] -= d;
                moved = std::max(moved, std::abs(d));
            }
            if (moved < tol * std::max(1.0, radius)) break;
        }
        return z;
    }

private:
    std::vector<Complex> c_;

    void trim() {
        while (c_.size() > 1 && std::abs(c_.back()) == 0.0) c_.pop_back();
        if (c_.empty()) c_.push_back(Complex(0.0));
    }
};

// Quotient of two monic polynomials kept in root form; construction cancels
// matching num/den roots so the pair stays coprime (root-matching tolerance
// 1e-8). Leading scalars are the caller's business (they live in Prefactor).
class PolyRatio {
public:
    static constexpr double kRootMatchTol = 1e-8;

    PolyRatio() = default;

    const std::vector<Complex>& num_roots() const { return num_; }
    const std::vector<Complex>& den_roots() const { return den_; }
    bool is_one() const { return num_.empty() && den_.empty(); }

    void push_num_root(Complex r) {
        if (!cancel_from(den_, r)) num_.push_back(r);
    }
    void push_den_root(Complex r) {
        if (!cancel_from(num_, r)) den_.push_back(r);
    }

    // Removes one num root matching r (within tol); false if none present.
    bool take_num_root(Complex r) { return cancel_from(num_, r); }
    bool take_den_root(Complex r) { return cancel_from(den_, r); }

    PolyRatio inverse() const {
        PolyRatio inv;
        inv.num_ = den_;
        inv.den_ = num_;
        return inv;
    }

    friend PolyRatio operator*(const PolyRatio& a, const PolyRatio& b) {
        PolyRatio r = a;
        for (auto& x : b.num_) r.push_num_root(x);
        for (auto& x : b.den_) r.push_den_root(x);
        return r;
    }

    Poly num() const { return expand(num_); }
    Poly den() const { return expand(den_); }

    Complex eval(Complex s) const {
        Complex v = 1.0;
        for (auto& r : num_) v *= (s - r);
        for (auto& r : den_) v /= (s - r);
        return v;
    }

private:
    std::vector<Complex> num_, den_;

    static bool cancel_from(std::vector<Complex>& v, Complex r) {
        for (size_t i = 0; i < v.size(); ++i) {
            if (std::abs(v[i] - r) < kRootMatchTol) {
                v.erase(v.begin() + i);
                return true;
            }
        }
        return false;
    }

    static Poly expand(const std::vector<Complex>& roots) {
        Poly p = Poly::one();
        for (auto& r : roots) p = p * Poly::linear_from_root(r);
        return p;
    }
};

} // namespace archimedea
