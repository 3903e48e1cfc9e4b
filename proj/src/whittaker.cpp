#include "archimedea/whittaker.hpp"

#include <cmath>
#include <numbers>

#include "archimedea/errors.hpp"
#include "archimedea/log_gamma.hpp"

namespace archimedea::whittaker {

using arch::DiscreteSeries;
using arch::PrincipalSeries;

namespace {

const double kPi = std::numbers::pi;

double binom(int n, int m) {
    double b = 1.0;
    for (int i = 0; i < m; ++i) b = b * (n - i) / (i + 1);
    return b;
}

} // namespace

int min_index(const GL2ArchType& rep) {
    if (auto* ps = std::get_if<PrincipalSeries>(&rep)) return ps->eps1 + ps->eps2;
    return std::get<DiscreteSeries>(rep).k;
}

QPoly q_poly(const GL2ArchType& rep, int n) {
    if (auto* ps = std::get_if<PrincipalSeries>(&rep)) {
        int eps = ps->eps1 + ps->eps2;
        if (n < 0 || n % 2 != eps % 2 || n < eps)
            fail("wrong-parity", "n must have the representation parity and n >= eps1+eps2");
        Complex nu1 = ps->nu + Complex(0.0, ps->b1);
        Complex nu2 = -ps->nu + Complex(0.0, ps->b2);
        // A_i = (s + eps_i + nu_i)/2; each admissible m contributes
        // binom(n,m) prod_{j<k1}(A1+j) prod_{j<k2}(A2+j),
        // k1 = (m-eps1)/2, k2 = (n-m-eps2)/2.
        Poly sum;
        for (int m = ps->eps1; m <= n - ps->eps2; m += 2) {
            int k1 = (m - ps->eps1) / 2;
            int k2 = (n - m - ps->eps2) / 2;
            Poly term(Complex(binom(n, m)));
            for (int j = 0; j < k1; ++j)
                term = term * Poly({(Complex((double)ps->eps1) + nu1) / 2.0 + Complex((double)j),
                                    Complex(0.5)});
            for (int j = 0; j < k2; ++j)
                term = term * Poly({(Complex((double)ps->eps2) + nu2) / 2.0 + Complex((double)j),
                                    Complex(0.5)});
            sum = sum + term;
        }
        if (sum.is_zero()) fail("wrong-parity", "no admissible binomial term at this n");
        Complex lead = sum.leading();
        // ratio of the pi powers: Psi carries pi^{-s-(nu1+nu2+n)/2}, the
        // L-factor pi^{-s-(eps+nu1+nu2)/2}
        Complex pref = lead * std::pow(kPi, -(double)(n - eps) / 2.0);
        return QPoly{sum.monic(), pref};
    }
    const auto& ds = std::get<DiscreteSeries>(rep);
    if (n < ds.k || (n - ds.k) % 2 != 0)
        fail("wrong-parity", "discrete series of weight k admits n = k, k+2, ...");
    int j = (n - ds.k) / 2;
    Poly poly = Poly::one();
    Complex base((ds.k - 1) / 2.0, ds.b3);
    for (int l = 0; l < j; ++l) poly = poly * Poly({base + Complex((double)l), Complex(1.0)});
    return QPoly{poly, std::pow(Complex(2.0 * kPi), -(double)j)};
}

Complex psi_value(const GL2ArchType& rep, int n, Complex s) {
    QPoly q = q_poly(rep, n);
    return q.prefactor * q.poly.eval(s) * arch::eval_arch(arch::gl2_arch_factor(rep, 0), s);
}

WhittakerCoeffs test_vector(const GL2ArchType& rep, const Poly& P) {
    int n0 = min_index(rep);
    int d = P.degree();
    std::vector<QPoly> basis;
    for (int j = 0; j <= d; ++j) basis.push_back(q_poly(rep, n0 + 2 * j));
    WhittakerCoeffs w{rep, {}};
    Poly rem = P;
    for (int j = d; j >= 0; --j) {
        Complex coeff = rem.degree() >= j ? rem.coeffs()[j] : Complex(0.0);
        Complex c = coeff / basis[j].prefactor;
        w.entries[n0 + 2 * j] = c;
        rem = rem - basis[j].poly * (c * basis[j].prefactor);
    }
    double resid = rem.max_abs_coeff();
    double scale = std::max(1.0, P.max_abs_coeff());
    if (resid > 1e-9 * scale)
        fail("invalid-argument", "triangular solve residual too large (ill-conditioned input)");
    return w;
}

Complex eval_test_vector(const WhittakerCoeffs& w, Complex s) {
    Complex acc = 0.0;
    for (auto& [n, c] : w.entries) acc += c * psi_value(w.rep, n, s);
    return acc;
}

std::pair<arch::ArchExpr, Complex> gl2_l_and_eps(const GL2ArchType& rep, int eps_chi) {
    return {arch::gl2_arch_factor(rep, eps_chi), arch::gl2_eps_constant(rep)};
}

std::pair<Complex, Complex> mellin_bessel_check(Complex nu, Complex s) {
    double delta = s.real() - std::abs(nu.real());
    if (delta <= 0.05) fail("invalid-domain", "need re(s) > |re(nu)|");
    Complex rhs = std::pow(Complex(2.0), s - 2.0) *
                  std::exp(analytic::log_gamma((s + nu) / 2.0) + analytic::log_gamma((s - nu) / 2.0));
    // lhs = (1/2) int int exp(-e^v cosh u + nu u + s v) du dv  (t = e^u, a = e^v)
    double V = std::max(40.0, 20.0 / delta + 10.0);
    double W = 6.0;  // e^{-e^6} dead
    double U = V + 12.0;
    double h = 0.05;
    auto inner = [&](double v) {
        double x = std::exp(v);
        Complex acc = 0.0;
        for (double u = -U; u <= U; u += h) {
            double e = -x * std::cosh(u);
            if (e < -700.0) continue;
            acc += std::exp(Complex(e, 0.0) + nu * u);
        }
        return acc * h;
    };
    Complex lhs = 0.0;
    for (double v = -V; v <= W; v += h) lhs += inner(v) * std::exp(s * v);
    lhs *= h * 0.5;
    return {lhs, rhs};
}

} // namespace archimedea::whittaker
