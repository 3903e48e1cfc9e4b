#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "archimedea/errors.hpp"

namespace archimedea {

// Exact rational on int64 with __int128 intermediates. Values stay desk-scale
// (gamma shifts, lattice steps, prefactor exponents), so overflow means a bug
// upstream and is reported loudly.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    double value() const { return double(num_) / double(den_); }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_positive() const { return num_ > 0; }
    bool is_negative() const { return num_ < 0; }

    Rational operator-() const { return make_raw(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return from128(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
        return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Largest integer <= value.
    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    // Nearest integer, halves rounded down, so value - round() lies in (-1/2, 1/2].
    long long round_half_down() const {
        Rational shifted = *this + Rational(1, 2);
        long long f = shifted.floor();
        if (shifted == Rational(f)) return f - 1;  // exactly on a half
        return f;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Parses "p", "p/q" or decimal "a.b" exactly; throws DomainError on junk.
    static Rational parse(const std::string& s);

private:
    long long num_, den_;

    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    static Rational make_raw(long long n, long long d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }

    static Rational from128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        const __int128 lim = (__int128)1 << 62;
        if (n >= lim || n <= -lim || d >= lim)
            throw std::overflow_error("Rational: overflow");
        return make_raw((long long)n, (long long)d);
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a;
    }
};

inline Rational Rational::parse(const std::string& s) {
    if (s.empty()) fail("invalid-argument", "empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            long long n = std::stoll(s.substr(0, slash));
            long long d = std::stoll(s.substr(slash + 1));
            return Rational(n, d);
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
            bool neg = !ip.empty() && ip[0] == '-';
            long long whole = ip.empty() || ip == "-" || ip == "+" ? 0 : std::stoll(ip);
            long long den = 1;
            long long frac = 0;
            for (char c : fp) {
                if (c < '0' || c > '9') fail("invalid-argument", "bad rational literal: " + s);
                frac = frac * 10 + (c - '0');
                den *= 10;
                if (den > 1000000000000000LL) fail("invalid-argument", "rational literal too long: " + s);
            }
            Rational r = Rational(whole < 0 ? -whole : whole) + Rational(frac, den);
            if (neg) r = -r;
            return r;
        }
        return Rational(std::stoll(s));
    } catch (const std::invalid_argument&) {
        fail("invalid-argument", "bad rational literal: " + s);
    } catch (const std::out_of_range&) {
        fail("invalid-argument", "rational literal out of range: " + s);
    }
}

// Complex number with exact rational real and imaginary parts; used for gamma
// shifts so lattice membership tests stay exact whenever the inputs are exact.
struct CRat {
    Rational re, im;

    CRat() = default;
    CRat(Rational r) : re(r) {}
    CRat(Rational r, Rational i) : re(r), im(i) {}

    bool is_real() const { return im.is_zero(); }
    std::complex<double> value() const { return {re.value(), im.value()}; }

    friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
    CRat operator-() const { return {-re, -im}; }
    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }

    std::string str() const {
        if (im.is_zero()) return re.str();
        std::string s = re.is_zero() ? "" : re.str();
        if (im.is_positive() && !re.is_zero()) s += "+";
        s += im.str() + "i";
        return s;
    }
};

} // namespace archimedea
