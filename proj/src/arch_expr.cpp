#include "archimedea/arch_expr.hpp"

#include <cmath>
#include <numbers>

#include "archimedea/errors.hpp"
#include "archimedea/log_gamma.hpp"

namespace archimedea::arch {

namespace {

std::string cx_str(Complex z) {
    std::string s = std::to_string(z.real());
    if (z.imag() != 0.0) s += (z.imag() > 0 ? "+" : "") + std::to_string(z.imag()) + "i";
    return s;
}

// unit phase base^{i t} for the inexact part of complex exponents
Complex phase_pow(double log_base, double t) {
    if (t == 0.0) return {1.0, 0.0};
    return std::exp(Complex(0.0, t * log_base));
}

} // namespace

std::string GammaAtom::display() const {
    std::string sh = mu_exact ? mu_exact->str() : cx_str(mu);
    if (lambda == Rational(1, 2)) {
        std::string a = mu_exact ? (CRat{mu_exact->re * 2, mu_exact->im * 2}).str() : cx_str(2.0 * mu);
        return (kind == AtomKind::GammaC ? "G(1/2," + sh + ")" : "GR(" + a + ")");
    }
    if (lambda == Rational(1) && kind == AtomKind::GammaC) return "GC(" + sh + ")";
    return "G(" + lambda.str() + "," + sh + ")";
}

ArchExpr build(BuildKind kind, const CRat& shift, Rational scale) {
    ArchExpr e;
    GammaAtom atom;
    const double lnpi = std::log(std::numbers::pi);
    const double ln2pi = std::log(2.0 * std::numbers::pi);
    switch (kind) {
    case BuildKind::gamma_r:
        // Gamma_R(s+a) = pi^{-a/2} (pi^{-1/2})^s Gamma(s/2 + a/2)
        atom.lambda = Rational(1, 2);
        atom.mu_exact = CRat{shift.re / 2, shift.im / 2};
        atom.mu = atom.mu_exact->value();
        atom.kind = AtomKind::GammaR;
        e.pref.mul_exact(Rational(1), Rational(0), -shift.re / 2);
        e.pref.extra *= phase_pow(lnpi, -shift.im.value() / 2.0);
        e.pref.mul_base_exact(Rational(0), Rational(-1, 2));
        break;
    case BuildKind::gamma_c:
        // Gamma_C(s+a) = 2 (2pi)^{-a} ((2pi)^{-1})^s Gamma(s + a)
        atom.lambda = Rational(1);
        atom.mu_exact = shift;
        atom.mu = shift.value();
        atom.kind = AtomKind::GammaC;
        e.pref.mul_exact(Rational(2), -shift.re, -shift.re);
        e.pref.extra *= phase_pow(ln2pi, -shift.im.value());
        e.pref.mul_base_exact(Rational(-1), Rational(-1));
        break;
    case BuildKind::plain:
        if (!scale.is_positive()) fail("invalid-argument", "atom scale must be > 0");
        atom.lambda = scale;
        atom.mu_exact = shift;
        atom.mu = shift.value();
        atom.kind = AtomKind::Plain;
        break;
    }
    e.num.push_back(atom);
    return e;
}

ArchExpr build(BuildKind kind, Complex shift, Rational scale) {
    ArchExpr e;
    GammaAtom atom;
    const double lnpi = std::log(std::numbers::pi);
    const double ln2pi = std::log(2.0 * std::numbers::pi);
    switch (kind) {
    case BuildKind::gamma_r:
        atom.lambda = Rational(1, 2);
        atom.mu = shift / 2.0;
        atom.kind = AtomKind::GammaR;
        e.pref.extra *= std::exp(-shift / 2.0 * lnpi);
        e.pref.mul_base_exact(Rational(0), Rational(-1, 2));
        break;
    case BuildKind::gamma_c:
        atom.lambda = Rational(1);
        atom.mu = shift;
        atom.kind = AtomKind::GammaC;
        e.pref.coeff = Rational(2);
        e.pref.extra *= std::exp(-shift * ln2pi);
        e.pref.mul_base_exact(Rational(-1), Rational(-1));
        break;
    case BuildKind::plain:
        if (!scale.is_positive()) fail("invalid-argument", "atom scale must be > 0");
        atom.lambda = scale;
        atom.mu = shift;
        atom.kind = AtomKind::Plain;
        break;
    }
    e.num.push_back(atom);
    return e;
}

ArchExpr combine(const ArchExpr& a, const ArchExpr& b, CombineOp op) {
    ArchExpr e;
    e.num = a.num;
    e.den = a.den;
    e.pref = a.pref;
    e.ratio = a.ratio;
    if (op == CombineOp::mul) {
        e.num.insert(e.num.end(), b.num.begin(), b.num.end());
        e.den.insert(e.den.end(), b.den.begin(), b.den.end());
        e.pref *= b.pref;
        e.ratio = e.ratio * b.ratio;
    } else {
        e.num.insert(e.num.end(), b.den.begin(), b.den.end());
        e.den.insert(e.den.end(), b.num.begin(), b.num.end());
        e.pref /= b.pref;
        e.ratio = e.ratio * b.ratio.inverse();
    }
    return e;
}

Rational degree(const ArchExpr& e) {
    Rational d(0);
    for (auto& a : e.num) d += a.lambda;
    for (auto& a : e.den) d -= a.lambda;
    return d * Rational(2);
}

int atom_parity(const GammaAtom& atom) {
    if (auto a = atom.shift_exact()) {
        return (int)(((a->re.round_half_down() % 2) + 2) % 2);
    }
    double re = atom.shift().real();
    long long m = (long long)std::floor(re + 0.5);
    if (re + 0.5 == (double)m) --m;
    return (int)(((m % 2) + 2) % 2);
}

namespace {

// a -> a+1 if parity even, a-1 if odd; prefactor gains pi^{-/+1/2}
// (inverted for denominator atoms).
void twist_atom(GammaAtom& atom, Prefactor& pref, bool denominator) {
    int up = atom_parity(atom) == 0 ? 1 : -1;
    // mu steps by 1/2 since lambda = 1/2
    if (atom.mu_exact) atom.mu_exact->re += Rational(up, 2);
    atom.mu += 0.5 * up;
    Rational dpi = Rational(denominator ? up : -up, 2);
    pref.mul_exact(Rational(1), Rational(0), dpi);
}

} // namespace

ArchExpr twist_parity(const ArchExpr& e, int eps_chi) {
    if (eps_chi % 2 == 0) return e;
    ArchExpr t = e;
    for (auto& atom : t.num) {
        if (atom.kind == AtomKind::GammaC) continue;
        if (atom.kind == AtomKind::Plain)
            fail("unsupported-twist", "plain atom " + atom.display() + " carries no parity");
        twist_atom(atom, t.pref, false);
    }
    for (auto& atom : t.den) {
        if (atom.kind == AtomKind::GammaC) continue;
        if (atom.kind == AtomKind::Plain)
            fail("unsupported-twist", "plain atom " + atom.display() + " carries no parity");
        twist_atom(atom, t.pref, true);
    }
    return t;
}

Complex eval_arch(const ArchExpr& e, Complex s) {
    for (auto& r : e.ratio.den_roots())
        if (std::abs(s - r) < 1e-13)
            fail("pole-at-point", "rational part has a pole at the evaluation point");
    Complex lg = 0.0;
    for (auto& atom : e.num) {
        Complex z = atom.lambda.value() * s + atom.mu;
        if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
            fail("pole-at-point", "pole of " + atom.display() + " at the evaluation point");
        lg += analytic::log_gamma(z);
    }
    for (auto& atom : e.den) {
        Complex z = atom.lambda.value() * s + atom.mu;
        if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
            return 0.0;  // zero of the expression
        lg -= analytic::log_gamma(z);
    }
    return e.pref.eval(s) * std::exp(lg) * e.ratio.eval(s);
}

ArchExpr conjugate(const ArchExpr& e) {
    ArchExpr c = e;
    auto conj_atoms = [](std::vector<GammaAtom>& v) {
        for (auto& a : v) {
            a.mu = std::conj(a.mu);
            if (a.mu_exact) a.mu_exact->im = -a.mu_exact->im;
        }
    };
    conj_atoms(c.num);
    conj_atoms(c.den);
    c.pref.conjugate_in_place();
    PolyRatio r;
    for (auto& x : e.ratio.num_roots()) r.push_num_root(std::conj(x));
    for (auto& x : e.ratio.den_roots()) r.push_den_root(std::conj(x));
    c.ratio = r;
    return c;
}

} // namespace archimedea::arch
