#include "archimedea/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "archimedea/errors.hpp"
#include "archimedea/log_gamma.hpp"

namespace archimedea::arch {

namespace {

constexpr double kTol = 1e-9;
const double kLnPi = std::log(std::numbers::pi);
const double kLn2Pi = std::log(2.0 * std::numbers::pi);

struct WAtom {
    GammaAtom atom;
    int order;  // input position, tie-break of last resort
};

// mu1 - mu2 as an integer lattice element, exact when both shifts are exact.
std::optional<long long> mu_diff_integer(const GammaAtom& a, const GammaAtom& b) {
    if (a.mu_exact && b.mu_exact) {
        CRat d = *a.mu_exact - *b.mu_exact;
        if (!d.im.is_zero() || !d.re.is_integer()) return std::nullopt;
        return d.re.num();
    }
    Complex d = a.mu - b.mu;
    if (std::abs(d.imag()) > kTol) return std::nullopt;
    double r = std::round(d.real());
    if (std::abs(d.real() - r) > kTol) return std::nullopt;
    return (long long)r;
}

void sub_mu(GammaAtom& a, const Rational& r) {
    if (a.mu_exact) a.mu_exact->re -= r;
    a.mu -= r.value();
}

// Gamma(z+1) = z Gamma(z) applied m>=0 times starting from the atom's current
// argument minus m: Gamma(lam s + mu) = prod_{j=0..m-1} (lam s + mu - m + j) * Gamma(lam s + mu - m).
// Emits monic factors and the lambda^m scalar into (ratio, pref).
void emit_descending(const GammaAtom& target_low, long long m, PolyRatio& ratio, Prefactor& pref,
                     bool into_num) {
    // factors (lam s + mu_low + j), j = 0..m-1, roots -(mu_low + j)/lam
    for (long long j = 0; j < m; ++j) {
        Complex root = -(target_low.mu + (double)j) / target_low.lambda.value();
        if (into_num)
            ratio.push_num_root(root);
        else
            ratio.push_den_root(root);
    }
    Rational lam_pow(1);
    for (long long j = 0; j < m; ++j) lam_pow *= target_low.lambda;
    if (into_num)
        pref.mul_exact(lam_pow, Rational(0), Rational(0));
    else
        pref.mul_exact(Rational(1) / lam_pow, Rational(0), Rational(0));
}

// Gamma(lam s + mu) = 2^{lam s + mu - 1} pi^{-1/2} Gamma(lam/2 s + mu/2) Gamma(lam/2 s + (mu+1)/2)
std::pair<GammaAtom, GammaAtom> split_atom(const GammaAtom& a, Prefactor& pref, bool denominator) {
    GammaAtom h1, h2;
    h1.lambda = h2.lambda = a.lambda / Rational(2);
    h1.kind = h2.kind = (h1.lambda == Rational(1, 2)) ? AtomKind::GammaR : AtomKind::Plain;
    if (a.mu_exact) {
        h1.mu_exact = CRat{a.mu_exact->re / 2, a.mu_exact->im / 2};
        h2.mu_exact = CRat{(a.mu_exact->re + Rational(1)) / 2, a.mu_exact->im / 2};
        h1.mu = h1.mu_exact->value();
        h2.mu = h2.mu_exact->value();
        Rational re = a.mu_exact->re;
        if (denominator) {
            pref.mul_exact(Rational(1), Rational(1) - re, Rational(1, 2));
            pref.mul_base_exact(-a.lambda, Rational(0));
            pref.extra /= std::exp(Complex(0.0, a.mu_exact->im.value() * std::numbers::ln2));
        } else {
            pref.mul_exact(Rational(1), re - Rational(1), Rational(-1, 2));
            pref.mul_base_exact(a.lambda, Rational(0));
            pref.extra *= std::exp(Complex(0.0, a.mu_exact->im.value() * std::numbers::ln2));
        }
    } else {
        h1.mu = a.mu / 2.0;
        h2.mu = (a.mu + 1.0) / 2.0;
        Complex f = std::exp((a.mu - 1.0) * std::numbers::ln2) * std::pow(std::numbers::pi, -0.5);
        if (denominator) {
            pref.extra /= f;
            pref.mul_base_exact(-a.lambda, Rational(0));
        } else {
            pref.extra *= f;
            pref.mul_base_exact(a.lambda, Rational(0));
        }
    }
    return {h1, h2};
}

struct Candidate {
    enum Type { direct, split_num, split_den } type;
    size_t num_idx;     // partner in the numerator list
    long long cost;     // emitted polynomial degree
    double shift_dist;  // |a_n - a_d|
    int order;
};

double g3_margin(const GammaAtom& a) {
    // (G3): re(-mu/lambda) < 1/2
    return 0.5 - (-a.mu / a.lambda.value()).real();
}

// ---- classification ------------------------------------------------------

GL2ArchType classify_discrete(const GammaAtom& atom) {
    double two_re = 2.0 * atom.mu.real();
    double r = std::round(two_re);
    if (std::abs(two_re - r) > kTol || r < 0.0)
        fail("not-unitary", "surviving Gamma_C shift " + atom.display() +
                                " does not give an integral weight");
    return DiscreteSeries{(int)r + 1, atom.mu.imag()};
}

GL2ArchType classify_principal(const GammaAtom& a1, const GammaAtom& a2) {
    // shifts of the Gamma_R normal form
    Complex s1 = a1.shift(), s2 = a2.shift();
    double sum = s1.real() + s2.real();
    double sint = std::round(sum);
    if (std::abs(sum - sint) > kTol || sint < -0.5 || sint > 2.5)
        fail("not-unitary", "principal-series shifts violate unitarity: re sum = " + std::to_string(sum));
    int S = (int)sint;
    auto pick_eps = [&](double re) {
        long long m = (long long)std::floor(re + 0.5);
        if (re + 0.5 == (double)m) --m;
        return (int)m;
    };
    int eps1 = pick_eps(s1.real());
    int eps2 = S - eps1;
    if (eps1 < 0 || eps1 > 1 || eps2 < 0 || eps2 > 1) {
        eps1 = 1 - eps1;
        eps2 = S - eps1;
        if (eps1 < 0 || eps1 > 1 || eps2 < 0 || eps2 > 1)
            fail("not-unitary", "no admissible parity decomposition");
    }
    Complex nu1 = s1 - (double)eps1;
    Complex nu2 = s2 - (double)eps2;
    Complex nu = (nu1 - nu2) / 2.0;
    if (std::abs(nu.real()) > 0.5 + kTol)
        fail("not-unitary", "principal-series parameter outside the unitary range");
    double b1 = (nu1 - nu).imag();
    double b2 = (nu2 + nu).imag();
    return PrincipalSeries{eps1, eps2, nu, b1, b2};
}

} // namespace

ReductionVerdict reduce_quotient(const ArchExpr& expr) {
    if (degree(expr) != Rational(2))
        fail("wrong-degree", "reduce_quotient needs degree 2, got " + degree(expr).str());
    for (auto& a : expr.num)
        if (g3_margin(a) <= kTol)
            fail("invalid-argument", "atom " + a.display() + " violates re(-mu/lambda) < 1/2");
    for (auto& a : expr.den)
        if (g3_margin(a) <= kTol)
            fail("invalid-argument", "atom " + a.display() + " violates re(-mu/lambda) < 1/2");

    std::vector<WAtom> num, den;
    int ord = 0;
    for (auto& a : expr.num) num.push_back({a, ord++});
    for (auto& a : expr.den) den.push_back({a, ord++});
    PolyRatio ratio = expr.ratio;
    Prefactor pref = expr.pref;

    auto den_rank = [](const WAtom& w) {
        Complex a = w.atom.shift();
        return std::tuple<double, double, int>(-a.real(), -a.imag(), w.order);
    };

    for (int guard = 0; !den.empty(); ++guard) {
        if (guard > 500) fail("invalid-argument", "reduction did not terminate");
        size_t di = 0;
        for (size_t i = 1; i < den.size(); ++i)
            if (den_rank(den[i]) < den_rank(den[di])) di = i;
        const GammaAtom d = den[di].atom;

        std::vector<Candidate> cands;
        for (size_t ni = 0; ni < num.size(); ++ni) {
            const GammaAtom& n = num[ni].atom;
            if (n.lambda == d.lambda) {
                if (auto m = mu_diff_integer(n, d))
                    cands.push_back({Candidate::direct, ni, std::llabs(*m),
                                     std::abs(n.shift() - d.shift()), num[ni].order});
            } else if (n.lambda == d.lambda * Rational(2)) {
                // split n; the matching half has integer mu-difference with d
                GammaAtom h1 = n, h2 = n;
                h1.lambda = h2.lambda = d.lambda;
                h1.mu = n.mu / 2.0;
                h2.mu = (n.mu + 1.0) / 2.0;
                if (n.mu_exact) {
                    h1.mu_exact = CRat{n.mu_exact->re / 2, n.mu_exact->im / 2};
                    h2.mu_exact = CRat{(n.mu_exact->re + Rational(1)) / 2, n.mu_exact->im / 2};
                }
                for (auto* h : {&h1, &h2}) {
                    if (auto m = mu_diff_integer(*h, d))
                        cands.push_back({Candidate::split_num, ni, std::llabs(*m),
                                         std::abs(h->shift() - d.shift()), num[ni].order});
                }
            } else if (d.lambda == n.lambda * Rational(2)) {
                GammaAtom h1 = d, h2 = d;
                h1.lambda = h2.lambda = n.lambda;
                h1.mu = d.mu / 2.0;
                h2.mu = (d.mu + 1.0) / 2.0;
                if (d.mu_exact) {
                    h1.mu_exact = CRat{d.mu_exact->re / 2, d.mu_exact->im / 2};
                    h2.mu_exact = CRat{(d.mu_exact->re + Rational(1)) / 2, d.mu_exact->im / 2};
                }
                for (auto* h : {&h1, &h2}) {
                    if (auto m = mu_diff_integer(n, *h))
                        cands.push_back({Candidate::split_den, ni, std::llabs(*m),
                                         std::abs(n.shift() - h->shift()), num[ni].order});
                }
            }
        }
        if (cands.empty()) return InfinitelyManyZeros{d};

        auto best = std::min_element(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
            return std::tuple(x.cost, x.shift_dist, x.order, (int)x.type) <
                   std::tuple(y.cost, y.shift_dist, y.order, (int)y.type);
        });

        if (best->type == Candidate::split_num) {
            auto [h1, h2] = split_atom(num[best->num_idx].atom, pref, false);
            int o = num[best->num_idx].order;
            num.erase(num.begin() + best->num_idx);
            num.push_back({h1, o});
            num.push_back({h2, o});
            continue;
        }
        if (best->type == Candidate::split_den) {
            auto [h1, h2] = split_atom(den[di].atom, pref, true);
            int o = den[di].order;
            den.erase(den.begin() + di);
            den.push_back({h1, o});
            den.push_back({h2, o});
            continue;
        }

        // direct cancellation
        const GammaAtom n = num[best->num_idx].atom;
        long long m = *mu_diff_integer(n, d);
        if (m >= 0) {
            // Gamma(..mu_n)/Gamma(..mu_d) = prod_{j<m} (lam s + mu_d + j)
            emit_descending(d, m, ratio, pref, true);
        } else {
            emit_descending(n, -m, ratio, pref, false);
        }
        num.erase(num.begin() + best->num_idx);
        den.erase(den.begin() + di);
    }

    // ---- classification of the surviving degree-2 numerator ----
    // window-normalize lambda=1/2 atoms into re(a) in (-1/2, 3/2)
    for (auto& w : num) {
        if (w.atom.lambda != Rational(1, 2)) continue;
        while (w.atom.shift().real() >= 1.5 - kTol) {
            // Gamma(z) = (z-1) Gamma(z-1), z = s/2 + mu
            sub_mu(w.atom, Rational(1));
            emit_descending(w.atom, 1, ratio, pref, true);
        }
    }
    // merge equal-lambda pairs with mu-difference exactly 1/2 (reverse duplication)
    for (bool merged = true; merged;) {
        merged = false;
        for (size_t i = 0; i < num.size() && !merged; ++i) {
            for (size_t j = 0; j < num.size() && !merged; ++j) {
                if (i == j || num[i].atom.lambda != num[j].atom.lambda) continue;
                if (num[i].atom.lambda >= Rational(1)) continue;
                // want mu_j = mu_i + 1/2
                GammaAtom probe = num[j].atom;
                sub_mu(probe, Rational(1, 2));
                auto dd = mu_diff_integer(probe, num[i].atom);
                if (!dd || *dd != 0) continue;
                // Gamma(z) Gamma(z+1/2) = 2^{1-2z} sqrt(pi) Gamma(2z), z = lam s + mu_i
                const GammaAtom& lo = num[i].atom;
                GammaAtom up;
                up.lambda = lo.lambda * Rational(2);
                up.kind = up.lambda == Rational(1) ? AtomKind::GammaC : AtomKind::Plain;
                up.mu = 2.0 * lo.mu;
                if (lo.mu_exact) up.mu_exact = CRat{lo.mu_exact->re * 2, lo.mu_exact->im * 2};
                if (lo.mu_exact) {
                    pref.mul_exact(Rational(1), Rational(1) - lo.mu_exact->re * 2, Rational(1, 2));
                    pref.extra *= std::exp(Complex(0.0, -2.0 * lo.mu_exact->im.value() * std::numbers::ln2));
                } else {
                    pref.extra *= std::exp((1.0 - 2.0 * lo.mu) * std::numbers::ln2) * std::sqrt(std::numbers::pi);
                }
                pref.mul_base_exact(-lo.lambda * 2, Rational(0));
                int o = std::min(num[i].order, num[j].order);
                size_t hi = std::max(i, j), lo_i = std::min(i, j);
                num.erase(num.begin() + hi);
                num.erase(num.begin() + lo_i);
                num.push_back({up, o});
                merged = true;
            }
        }
    }

    GL2ArchType gl2;
    if (num.size() == 1 && num[0].atom.lambda == Rational(1)) {
        gl2 = classify_discrete(num[0].atom);
        // atom Gamma(s+mu) = (1/2) (2pi)^{s+mu} Gamma_C(s+mu)
        const GammaAtom& a = num[0].atom;
        if (a.mu_exact) {
            pref.mul_exact(Rational(1, 2), a.mu_exact->re, a.mu_exact->re);
            pref.extra *= std::exp(Complex(0.0, a.mu_exact->im.value() * kLn2Pi));
        } else {
            pref.coeff /= Rational(2);
            pref.extra *= std::exp(a.mu * kLn2Pi);
        }
        pref.mul_base_exact(Rational(1), Rational(1));
    } else if (num.size() == 2 && num[0].atom.lambda == Rational(1, 2) &&
               num[1].atom.lambda == Rational(1, 2)) {
        size_t first = 0, second = 1;
        Complex sa = num[0].atom.shift(), sb = num[1].atom.shift();
        if (std::tuple(sb.real(), sb.imag()) > std::tuple(sa.real(), sa.imag())) std::swap(first, second);
        gl2 = classify_principal(num[first].atom, num[second].atom);
        // atom Gamma(s/2+mu) = pi^{(s+2mu)/2} Gamma_R(s+2mu)
        for (auto& w : {num[first], num[second]}) {
            const GammaAtom& a = w.atom;
            if (a.mu_exact) {
                pref.mul_exact(Rational(1), Rational(0), a.mu_exact->re);
                pref.extra *= std::exp(Complex(0.0, a.mu_exact->im.value() * kLnPi));
            } else {
                pref.extra *= std::exp(a.mu * kLnPi);
            }
            pref.mul_base_exact(Rational(0), Rational(1, 2));
        }
    } else {
        std::string got;
        for (auto& w : num) got += w.atom.display() + " ";
        fail("not-unitary", "surviving factors are not of GL(2) type: " + got);
    }
    return FinitelyManyZeros{gl2, ratio, pref};
}

ReductionVerdict normalize_rational(const ReductionVerdict& v) {
    auto* fin = std::get_if<FinitelyManyZeros>(&v);
    if (!fin) return v;
    auto* ds = std::get_if<DiscreteSeries>(&fin->gl2);
    if (!ds) return v;

    FinitelyManyZeros out = *fin;
    int k = ds->k;
    double b3 = ds->b3;
    for (;;) {
        Complex alpha_down((3.0 - k) / 2.0, -b3);  // rightmost pole of L(s-1,tau)
        Complex alpha_up(-(k - 1.0) / 2.0, -b3);   // rightmost pole of L(s,tau)
        if (out.ratio.take_den_root(alpha_down)) {
            if (k - 2 < 1) fail("cannot-normalize", "absorption would drive the weight below 1");
            k -= 2;
            out.prefactor.mul_exact(Rational(1), Rational(-1), Rational(-1));
            continue;
        }
        if (out.ratio.take_num_root(alpha_up)) {
            k += 2;
            out.prefactor.mul_exact(Rational(1), Rational(1), Rational(1));
            continue;
        }
        break;
    }
    out.gl2 = DiscreteSeries{k, b3};
    return out;
}

StirlingProfile stirling_profile(const ArchExpr& expr) {
    Rational lam_sum(0);
    for (auto& a : expr.num) lam_sum += a.lambda;
    for (auto& a : expr.den) lam_sum -= a.lambda;
    if (lam_sum != Rational(1))
        fail("unsupported-profile", "sum of scales must differ by 1, got " + lam_sum.str());

    int r = (int)expr.num.size(), rp = (int)expr.den.size();
    double R2 = (r - rp - 1) / 2.0;
    Complex mu_sum = 0.0;
    Complex logD = R2 * kLn2Pi;
    double logK = 0.0;
    for (auto& a : expr.num) {
        mu_sum += a.mu;
        logD += (a.mu - 0.5) * std::log(a.lambda.value());
        logK += a.lambda.value() * std::log(a.lambda.value());
    }
    for (auto& a : expr.den) {
        mu_sum -= a.mu;
        logD -= (a.mu - 0.5) * std::log(a.lambda.value());
        logK -= a.lambda.value() * std::log(a.lambda.value());
    }
    Complex mu = mu_sum - R2;
    // a monic/monic rational part shifts the effective mu by its degree difference
    mu += (double)((int)expr.ratio.num_roots().size() - (int)expr.ratio.den_roots().size());
    Complex D = std::exp(logD);
    double K = std::exp(logK);

    // two-point fit of the 1/s correction: f(sigma) ~ c1/(sigma+mu) + c2/(sigma+mu)^2
    auto f = [&](double sigma) {
        Complex lg = 0.0;
        for (auto& a : expr.num) lg += analytic::log_gamma(a.lambda.value() * sigma + a.mu);
        for (auto& a : expr.den) lg -= analytic::log_gamma(a.lambda.value() * sigma + a.mu);
        lg += std::log(expr.ratio.eval(sigma));
        lg -= logD + sigma * logK + analytic::log_gamma(sigma + mu);
        return std::exp(lg) - 1.0;
    };
    Complex u1 = 1.0 / (100.0 + mu), u2 = 1.0 / (200.0 + mu);
    Complex f1 = f(100.0), f2 = f(200.0);
    // solve [u1 u1^2; u2 u2^2] (c1,c2)^T = (f1,f2)^T
    Complex det = u1 * u2 * u2 - u2 * u1 * u1;
    Complex c1 = (f1 * u2 * u2 - f2 * u1 * u1) / det;
    return StirlingProfile{D, K, mu, c1};
}

ArchExpr gl2_arch_factor(const GL2ArchType& t, int eps_chi) {
    if (auto* ps = std::get_if<PrincipalSeries>(&t)) {
        int e1 = (ps->eps1 + eps_chi) % 2, e2 = (ps->eps2 + eps_chi) % 2;
        Complex sh1 = (double)e1 + ps->nu + Complex(0.0, ps->b1);
        Complex sh2 = (double)e2 - ps->nu + Complex(0.0, ps->b2);
        ArchExpr f1 = (ps->nu.imag() == 0.0 && ps->b1 == 0.0 && ps->b2 == 0.0 && ps->nu.real() == 0.0)
                          ? build(BuildKind::gamma_r, CRat{Rational(e1)})
                          : build(BuildKind::gamma_r, sh1);
        ArchExpr f2 = (ps->nu.imag() == 0.0 && ps->b1 == 0.0 && ps->b2 == 0.0 && ps->nu.real() == 0.0)
                          ? build(BuildKind::gamma_r, CRat{Rational(e2)})
                          : build(BuildKind::gamma_r, sh2);
        return combine(f1, f2, CombineOp::mul);
    }
    const auto& ds = std::get<DiscreteSeries>(t);
    if (ds.b3 == 0.0) return build(BuildKind::gamma_c, CRat{Rational(ds.k - 1, 2)});
    return build(BuildKind::gamma_c, Complex((ds.k - 1) / 2.0, ds.b3));
}

Complex gl2_eps_constant(const GL2ArchType& t) {
    static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    if (auto* ps = std::get_if<PrincipalSeries>(&t)) return ipow[(ps->eps1 + ps->eps2) % 4];
    return ipow[std::get<DiscreteSeries>(t).k % 4];
}

GL2ArchType contragredient(const GL2ArchType& t) {
    if (auto* ps = std::get_if<PrincipalSeries>(&t))
        return PrincipalSeries{ps->eps1, ps->eps2, -ps->nu, -ps->b1, -ps->b2};
    const auto& ds = std::get<DiscreteSeries>(t);
    return DiscreteSeries{ds.k, -ds.b3};
}

Complex eval_verdict(const ReductionVerdict& v, Complex s) {
    auto* fin = std::get_if<FinitelyManyZeros>(&v);
    if (!fin) fail("invalid-argument", "cannot evaluate an InfinitelyManyZeros verdict");
    return fin->prefactor.eval(s) * fin->ratio.eval(s) * eval_arch(gl2_arch_factor(fin->gl2, 0), s);
}

std::string gl2_display(const GL2ArchType& t) {
    if (auto* ps = std::get_if<PrincipalSeries>(&t)) {
        auto cx = [](Complex z) {
            return std::to_string(z.real()) + (z.imag() >= 0 ? "+" : "") + std::to_string(z.imag()) + "i";
        };
        return "PrincipalSeries(" + std::to_string(ps->eps1) + "," + std::to_string(ps->eps2) + "," +
               cx(ps->nu) + "," + std::to_string(ps->b1) + "," + std::to_string(ps->b2) + ")";
    }
    const auto& ds = std::get<DiscreteSeries>(t);
    return "DiscreteSeries(k=" + std::to_string(ds.k) + ",b3=" + std::to_string(ds.b3) + ")";
}

} // namespace archimedea::arch
