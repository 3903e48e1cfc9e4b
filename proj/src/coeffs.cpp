#include "archimedea/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>

#include "archimedea/errors.hpp"
#include "archimedea/polynomial.hpp"

namespace archimedea::coeffs {

using arch::ArchExpr;
using arch::BuildKind;
using arch::CombineOp;
using dirichlet::DirichletCharacter;

namespace {

constexpr std::uint64_t kMemoBlock = 4096;

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize_u64(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> f;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.push_back({p, e});
        }
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

// h_k (complete homogeneous symmetric) of the inverse roots, i.e. a(p^k),
// via 1/prod(1 - alpha x) = sum h_k x^k.
std::vector<Complex> local_coeff_prefix(const std::vector<Complex>& roots, int kmax) {
    // denominator polynomial prod (1 - alpha x)
    std::vector<Complex> b{1.0};
    for (auto& al : roots) {
        std::vector<Complex> nb(b.size() + 1, Complex(0.0));
        for (size_t i = 0; i < b.size(); ++i) {
            nb[i] += b[i];
            nb[i + 1] -= b[i] * al;
        }
        b = std::move(nb);
    }
    std::vector<Complex> h(kmax + 1, Complex(0.0));
    h[0] = 1.0;
    for (int k = 1; k <= kmax; ++k) {
        Complex acc = 0.0;
        for (size_t j = 1; j < b.size() && (int)j <= k; ++j) acc += b[j] * h[k - j];
        h[k] = -acc;
    }
    return h;
}

struct EulerCoeffFn {
    std::function<std::vector<Complex>(std::uint64_t)> local;
    Complex operator()(std::uint64_t n) const {
        if (n == 0) fail("invalid-argument", "coefficient index must be >= 1");
        Complex v = 1.0;
        for (auto& [p, e] : factorize_u64(n)) {
            auto h = local_coeff_prefix(local(p), e);
            v *= h[e];
        }
        return v;
    }
};

// ---- Ramanujan tau -------------------------------------------------------

std::vector<__int128> square_i128(const std::vector<__int128>& a, size_t n) {
    std::vector<__int128> c(n, 0);
    for (size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        size_t jmax = n - i;
        if (i < jmax) c[2 * i] += a[i] * a[i];
        for (size_t j = i + 1; j < jmax; ++j) {
            if (a[j] == 0) continue;
            c[i + j] += 2 * a[i] * a[j];
        }
    }
    return c;
}

std::vector<__int128> mul_i128(const std::vector<__int128>& a, const std::vector<__int128>& b,
                               size_t n) {
    std::vector<__int128> c(n, 0);
    for (size_t i = 0; i < n && i < a.size(); ++i) {
        if (a[i] == 0) continue;
        size_t jmax = std::min(n - i, b.size());
        for (size_t j = 0; j < jmax; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

std::mutex g_tau_mutex;
std::vector<double> g_tau;  // g_tau[i] = tau(i+1)

} // namespace

namespace {

// grows the cached tau prefix geometrically; caller holds the lock
void ensure_tau(std::uint64_t N) {
    if (g_tau.size() >= N) return;
    size_t n = std::max<size_t>({N, 2 * g_tau.size(), 1024});
    // eta / q^{1/24} = sum_k (-1)^k q^{k(3k-1)/2}
    std::vector<__int128> eta(n, 0);
    for (long long k = 0;; ++k) {
        long long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
        if (g1 >= (long long)n && g2 >= (long long)n) break;
        long long sgn = (k % 2 == 0) ? 1 : -1;
        if (g1 < (long long)n) eta[g1] += sgn;
        if (g2 < (long long)n && k > 0) eta[g2] += sgn;
    }
    auto e2 = square_i128(eta, n);
    auto e4 = square_i128(e2, n);
    auto e8 = square_i128(e4, n);
    auto e16 = square_i128(e8, n);
    auto e24 = mul_i128(e16, e8, n);
    g_tau.resize(n);
    for (size_t i = 0; i < n; ++i) g_tau[i] = (double)e24[i];  // tau(i+1)
}

} // namespace

std::vector<double> ramanujan_tau(std::uint64_t N) {
    std::lock_guard<std::mutex> lock(g_tau_mutex);
    ensure_tau(N);
    return {g_tau.begin(), g_tau.begin() + N};
}

double ramanujan_tau_at(std::uint64_t n) {
    std::lock_guard<std::mutex> lock(g_tau_mutex);
    ensure_tau(n);
    return g_tau[n - 1];
}

// ---- CoefficientSeries plumbing -------------------------------------------

struct CoefficientSeries::Memo {
    std::mutex mu;
    std::vector<Complex> a, ad;
};

CoefficientSeries::CoefficientSeries() : memo_(std::make_shared<Memo>()) {}

Complex CoefficientSeries::a(std::uint64_t n) const {
    if (n == 0) fail("invalid-argument", "coefficient index must be >= 1");
    std::lock_guard<std::mutex> lock(memo_->mu);
    if (memo_->a.size() < n) {
        std::uint64_t target = ((n + kMemoBlock - 1) / kMemoBlock) * kMemoBlock;
        std::uint64_t old = memo_->a.size();
        memo_->a.resize(target);
        for (std::uint64_t i = old; i < target; ++i) memo_->a[i] = coeff_fn(i + 1);
    }
    return memo_->a[n - 1];
}

Complex CoefficientSeries::a_dual(std::uint64_t n) const {
    if (n == 0) fail("invalid-argument", "coefficient index must be >= 1");
    if (!dual_fn) return std::conj(a(n));
    std::lock_guard<std::mutex> lock(memo_->mu);
    if (memo_->ad.size() < n) {
        std::uint64_t target = ((n + kMemoBlock - 1) / kMemoBlock) * kMemoBlock;
        std::uint64_t old = memo_->ad.size();
        memo_->ad.resize(target);
        for (std::uint64_t i = old; i < target; ++i) memo_->ad[i] = dual_fn(i + 1);
    }
    return memo_->ad[n - 1];
}

bool CoefficientSeries::self_dual() const {
    for (std::uint64_t n = 1; n <= 40; ++n)
        if (std::abs(a(n) - a_dual(n)) > 1e-12) return false;
    return true;
}

LocalFactor CoefficientSeries::local_factor(std::uint64_t p) const {
    if (!is_prime_u64(p)) fail("invalid-argument", "local_factor needs a prime");
    // Recover the inverse roots from a(p^k), k <= degree: the denominator
    // polynomial satisfies sum_{j<=min(k,d)} b_j a(p^{k-j}) = 0.
    int d = degree;
    std::vector<Complex> apk(d + 1);
    std::uint64_t pk = 1;
    for (int k = 0; k <= d; ++k) {
        apk[k] = a(pk);
        if (k < d) {
            if (pk > (std::uint64_t)4e17 / p) fail("invalid-argument", "prime power overflow");
            pk *= p;
        }
    }
    std::vector<Complex> b(d + 1, Complex(0.0));
    b[0] = 1.0;
    for (int k = 1; k <= d; ++k) {
        Complex acc = apk[k];
        for (int j = 1; j < k; ++j) acc += b[j] * apk[k - j];
        b[k] = -acc;
    }
    int deg = d;
    while (deg > 0 && std::abs(b[deg]) < 1e-10) --deg;
    LocalFactor lf;
    lf.prime = p;
    if (deg > 0) {
        // roots of B(x) = prod(1 - alpha x) are 1/alpha
        std::vector<Complex> rev(b.begin(), b.begin() + deg + 1);
        auto xroots = Poly(rev).roots();
        for (auto& x : xroots) lf.inverse_roots.push_back(1.0 / x);
    }
    double bound = std::pow((double)p, 0.5 - 1.0 / (double(degree) * degree + 1.0));
    for (auto& al : lf.inverse_roots)
        if (std::abs(al) >= bound + 1e-9) lf.js_bound_ok = false;
    return lf;
}

// ---- built-ins -------------------------------------------------------------

CoefficientSeries zeta_series() {
    CoefficientSeries s;
    s.label = "zeta";
    s.conductor = 1.0;
    s.omega = 1.0;
    s.degree = 1;
    s.theta_bound = 0.0;
    s.arch_factor = arch::build(BuildKind::gamma_r, CRat{Rational(0)});
    s.completed_poles = {{Complex(1.0, 0.0), Complex(1.0, 0.0)}, {Complex(0.0, 0.0), Complex(-1.0, 0.0)}};
    s.coeff_fn = [](std::uint64_t) { return Complex(1.0, 0.0); };
    s.local_ = [](std::uint64_t) { return std::vector<Complex>{Complex(1.0, 0.0)}; };
    return s;
}

CoefficientSeries dirichlet_l_series(const DirichletCharacter& chi) {
    if (chi.modulus() == 1) return zeta_series();
    CoefficientSeries s;
    s.label = "dirichlet_" + std::to_string(chi.modulus()) + "_" + std::to_string(chi.index());
    s.degree = 1;
    s.theta_bound = 0.0;
    for (auto& [p, e] : factorize_u64(chi.modulus())) {
        (void)e;
        s.bad_primes.insert(p);
    }
    s.coeff_fn = [chi](std::uint64_t n) { return chi.value((long long)n); };
    DirichletCharacter bar = chi.inverse();
    s.dual_fn = [bar](std::uint64_t n) { return bar.value((long long)n); };
    s.local_ = [chi](std::uint64_t p) {
        Complex v = chi.value((long long)p);
        if (std::abs(v) < 0.5) return std::vector<Complex>{};
        return std::vector<Complex>{v};
    };
    if (chi.is_primitive()) {
        std::uint64_t q = chi.modulus();
        int eps = chi.parity();
        s.conductor = (double)q;
        s.arch_factor = arch::build(BuildKind::gamma_r, CRat{Rational(eps)});
        Complex ieps = eps == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
        s.omega = dirichlet::gauss_sum(chi) / (ieps * std::sqrt((double)q));
    } else {
        s.conductor = (double)chi.conductor();
        s.arch_factor = arch::build(BuildKind::gamma_r, CRat{Rational(chi.parity())});
        s.fe_known = false;  // induced series: completed data belongs to the core
    }
    return s;
}

CoefficientSeries delta_series() {
    CoefficientSeries s;
    s.label = "delta";
    s.conductor = 1.0;
    s.omega = 1.0;
    s.degree = 2;
    s.theta_bound = 0.0;
    s.arch_factor = arch::build(BuildKind::gamma_c, CRat{Rational(11, 2)});
    s.coeff_fn = [](std::uint64_t n) {
        return Complex(ramanujan_tau_at(n) / std::pow((double)n, 5.5), 0.0);
    };
    s.local_ = [](std::uint64_t p) {
        double ap = ramanujan_tau_at(p) / std::pow((double)p, 5.5);
        // alpha + conj(alpha) = a(p), |alpha| = 1 (Deligne)
        double disc = 4.0 - ap * ap;
        if (disc < 0.0) disc = 0.0;
        Complex al(ap / 2.0, std::sqrt(disc) / 2.0);
        return std::vector<Complex>{al, std::conj(al)};
    };
    return s;
}

CoefficientSeries sym_power_delta_series(int m) {
    if (m < 0 || m > 4) fail("invalid-argument", "symmetric power must have 0 <= m <= 4");
    if (m == 0) return zeta_series();
    if (m == 1) return delta_series();
    CoefficientSeries s;
    s.label = "sym" + std::to_string(m) + "delta";
    s.conductor = 1.0;
    s.degree = m + 1;
    s.theta_bound = 0.0;
    s.local_ = [m](std::uint64_t p) {
        double ap = ramanujan_tau_at(p) / std::pow((double)p, 5.5);
        double theta = std::acos(std::clamp(ap / 2.0, -1.0, 1.0));
        std::vector<Complex> roots;
        for (int j = 0; j <= m; ++j) {
            double ang = (m - 2 * j) * theta;
            roots.push_back({std::cos(ang), std::sin(ang)});
        }
        return roots;
    };
    s.coeff_fn = EulerCoeffFn{s.local_};
    if (m == 2) {
        s.omega = 1.0;
        s.arch_factor = arch::combine(arch::build(BuildKind::gamma_r, CRat{Rational(1)}),
                                      arch::build(BuildKind::gamma_c, CRat{Rational(11)}),
                                      CombineOp::mul);
    } else {
        // root numbers for sym^3, sym^4 are not pinned at desk scale
        s.fe_known = false;
        s.omega = 1.0;
    }
    return s;
}

CoefficientSeries builtin_series(const std::string& name) {
    if (name == "zeta") return zeta_series();
    if (name == "delta") return delta_series();
    if (name == "sym2delta") return sym_power_delta_series(2);
    if (name == "sym3delta") return sym_power_delta_series(3);
    if (name == "sym4delta") return sym_power_delta_series(4);
    if (name.rfind("dirichlet:", 0) == 0) {
        auto rest = name.substr(10);
        auto colon = rest.find(':');
        if (colon == std::string::npos) fail("invalid-argument", "expected dirichlet:<q>:<index>");
        std::uint64_t q = std::stoull(rest.substr(0, colon));
        std::uint64_t idx = std::stoull(rest.substr(colon + 1));
        return dirichlet_l_series(dirichlet::character_by_index(q, idx));
    }
    fail("invalid-argument", "unknown series name: " + name);
}

std::vector<Complex> dirichlet_coeffs(const CoefficientSeries& s, std::uint64_t N) {
    if (N < 1) fail("invalid-argument", "N must be >= 1");
    std::vector<Complex> out(N);
    for (std::uint64_t n = 1; n <= N; ++n) out[n - 1] = s.a(n);
    return out;
}

// ---- twisting --------------------------------------------------------------

CoefficientSeries twist(const CoefficientSeries& s, const DirichletCharacter& chi) {
    if (chi.modulus() == 1) return s;
    CoefficientSeries t;
    t.label = s.label + "*chi" + std::to_string(chi.modulus()) + "." + std::to_string(chi.index());
    t.degree = s.degree;
    t.theta_bound = s.theta_bound;
    t.bad_primes = s.bad_primes;
    for (auto& [p, e] : factorize_u64(chi.modulus())) {
        (void)e;
        t.bad_primes.insert(p);
    }
    // capture by value: providers must outlive the source object
    auto base = std::make_shared<CoefficientSeries>(s);
    t.coeff_fn = [base, chi](std::uint64_t n) { return base->a(n) * chi.value((long long)n); };
    DirichletCharacter bar = chi.inverse();
    t.dual_fn = [base, bar](std::uint64_t n) { return base->a_dual(n) * bar.value((long long)n); };
    if (s.local_) {
        auto local = s.local_;
        t.local_ = [local, chi](std::uint64_t p) {
            Complex v = chi.value((long long)p);
            if (std::abs(v) < 0.5) return std::vector<Complex>{};
            auto roots = local(p);
            for (auto& r : roots) r *= v;
            return roots;
        };
    }

    bool unramified_at_bad = true;
    for (auto p : s.bad_primes)
        if (chi.modulus() % p == 0) unramified_at_bad = false;
    if (!s.fe_known || !chi.is_primitive() || !unramified_at_bad) {
        t.fe_known = false;
        t.arch_factor = s.arch_factor;
        t.conductor = s.conductor;
        t.omega = s.omega;
        return t;
    }

    int n = s.degree;
    std::uint64_t D = chi.modulus();
    int eps = chi.parity();
    t.conductor = s.conductor * std::pow((double)D, n);
    t.arch_factor = arch::twist_parity(s.arch_factor, eps);
    // omega update: arch epsilon ratio times chi(N) times the finite part
    // [(-1)^eps tau(chi)/sqrt(D)]^n (trivial central character built-ins).
    Complex arch_phase = 1.0;
    if (eps == 1) {
        for (auto& atom : s.arch_factor.num) {
            if (atom.kind != arch::AtomKind::GammaR) continue;
            arch_phase *= Complex(0.0, 1.0) * (arch::atom_parity(atom) == 0 ? 1.0 : -1.0);
        }
        for (auto& atom : s.arch_factor.den) {
            if (atom.kind != arch::AtomKind::GammaR) continue;
            arch_phase /= Complex(0.0, 1.0) * (arch::atom_parity(atom) == 0 ? 1.0 : -1.0);
        }
    }
    Complex fin = (eps == 0 ? 1.0 : -1.0) * dirichlet::gauss_sum(chi) / std::sqrt((double)D);
    Complex finpow = 1.0;
    for (int i = 0; i < n; ++i) finpow *= fin;
    t.omega = arch_phase * s.omega * chi.value((long long)std::llround(s.conductor)) * finpow;
    t.completed_poles.clear();  // nontrivial primitive twists of the built-ins are entire
    return t;
}

// ---- products, quotients, partials ----------------------------------------

CoefficientSeries combine(const CoefficientSeries& a, const CoefficientSeries& b, SeriesOp op) {
    CoefficientSeries r;
    auto pa = std::make_shared<CoefficientSeries>(a);
    auto pb = std::make_shared<CoefficientSeries>(b);
    r.bad_primes = a.bad_primes;
    r.bad_primes.insert(b.bad_primes.begin(), b.bad_primes.end());
    r.theta_bound = std::max(a.theta_bound, b.theta_bound);
    if (op == SeriesOp::product) {
        r.label = a.label + "*" + b.label;
        r.degree = a.degree + b.degree;
        r.conductor = a.conductor * b.conductor;
        r.omega = a.omega * b.omega;
        r.arch_factor = arch::combine(a.arch_factor, b.arch_factor, CombineOp::mul);
        r.coeff_fn = [pa, pb](std::uint64_t n) {
            Complex c = 0.0;
            for (std::uint64_t d = 1; d * d <= n; ++d) {
                if (n % d != 0) continue;
                c += pa->a(d) * pb->a(n / d);
                if (d != n / d) c += pa->a(n / d) * pb->a(d);
            }
            return c;
        };
        r.dual_fn = [pa, pb](std::uint64_t n) {
            Complex c = 0.0;
            for (std::uint64_t d = 1; d * d <= n; ++d) {
                if (n % d != 0) continue;
                c += pa->a_dual(d) * pb->a_dual(n / d);
                if (d != n / d) c += pa->a_dual(n / d) * pb->a_dual(d);
            }
            return c;
        };
        if (a.local_ && b.local_) {
            auto la = a.local_, lb = b.local_;
            r.local_ = [la, lb](std::uint64_t p) {
                auto roots = la(p);
                auto rb = lb(p);
                roots.insert(roots.end(), rb.begin(), rb.end());
                return roots;
            };
        }
        r.fe_known = a.fe_known && b.fe_known;
        // poles of Lambda_a Lambda_b; residues need the other Lambda evaluated,
        // which the analytic layer does (PendingPole). Coinciding locations
        // would give higher-order poles: not representable, FE data dropped.
        bool clash = false;
        for (auto& [beta, res] : a.completed_poles)
            for (auto& [bb, rr] : b.completed_poles)
                if (std::abs(beta - bb) < 1e-9) clash = true;
        if (clash) {
            r.fe_known = false;
        } else {
            for (auto& [beta, res] : a.completed_poles)
                r.pending_poles.push_back({beta, res, pb});
            for (auto& [beta, res] : b.completed_poles)
                r.pending_poles.push_back({beta, res, pa});
        }
        return r;
    }
    // quotient: formal inverse convolution; needs b's first coefficient 1
    if (std::abs(b.a(1) - Complex(1.0, 0.0)) > 1e-12)
        fail("non-invertible", "quotient needs b(1) = 1");
    r.label = a.label + "/" + b.label;
    r.degree = a.degree - b.degree;
    r.conductor = a.conductor / b.conductor;
    r.omega = a.omega / b.omega;
    r.arch_factor = arch::combine(a.arch_factor, b.arch_factor, CombineOp::div);
    r.fe_known = false;  // quotients may have unboundedly many poles
    auto cache = std::make_shared<std::pair<std::mutex, std::vector<Complex>>>();
    r.coeff_fn = [pa, pb, cache](std::uint64_t n) {
        std::lock_guard<std::mutex> lock(cache->first);
        auto& c = cache->second;
        while (c.size() < n) {
            std::uint64_t m = c.size() + 1;
            Complex v = pa->a(m);
            for (std::uint64_t d = 2; d <= m; ++d) {
                if (m % d != 0) continue;
                v -= pb->a(d) * c[m / d - 1];
            }
            c.push_back(v);
        }
        return c[n - 1];
    };
    auto dcache = std::make_shared<std::pair<std::mutex, std::vector<Complex>>>();
    r.dual_fn = [pa, pb, dcache](std::uint64_t n) {
        std::lock_guard<std::mutex> lock(dcache->first);
        auto& c = dcache->second;
        while (c.size() < n) {
            std::uint64_t m = c.size() + 1;
            Complex v = pa->a_dual(m);
            for (std::uint64_t d = 2; d <= m; ++d) {
                if (m % d != 0) continue;
                v -= pb->a_dual(d) * c[m / d - 1];
            }
            c.push_back(v);
        }
        return c[n - 1];
    };
    if (a.local_ && b.local_) {
        auto la = a.local_, lb = b.local_;
        r.local_ = [la, lb](std::uint64_t p) {
            auto roots = la(p);
            for (auto& beta : lb(p)) {
                bool found = false;
                for (size_t i = 0; i < roots.size(); ++i) {
                    if (std::abs(roots[i] - beta) < 1e-9) {
                        roots.erase(roots.begin() + i);
                        found = true;
                        break;
                    }
                }
                if (!found)
                    fail("invalid-argument",
                         "quotient local factor is not of inverse-root form at p = " + std::to_string(p));
            }
            return roots;
        };
    }
    return r;
}

CoefficientSeries partial(const CoefficientSeries& a, const std::set<std::uint64_t>& primes) {
    CoefficientSeries r;  // fresh memo: the providers change
    auto pa = std::make_shared<CoefficientSeries>(a);
    std::string tag = "_S";
    for (auto p : primes) tag += "_" + std::to_string(p);
    r.label = a.label + tag;
    r.conductor = a.conductor;
    r.omega = a.omega;
    r.arch_factor = a.arch_factor;
    r.theta_bound = a.theta_bound;
    r.degree = a.degree;
    r.bad_primes = a.bad_primes;
    r.fe_known = false;  // partial L-functions do not satisfy the clean reflection
    auto coprime = [primes](std::uint64_t n) {
        for (auto p : primes)
            if (n % p == 0) return false;
        return true;
    };
    r.coeff_fn = [pa, coprime](std::uint64_t n) {
        return coprime(n) ? pa->a(n) : Complex(0.0, 0.0);
    };
    r.dual_fn = [pa, coprime](std::uint64_t n) {
        return coprime(n) ? pa->a_dual(n) : Complex(0.0, 0.0);
    };
    if (a.local_) {
        auto la = a.local_;
        r.local_ = [la, primes](std::uint64_t p) {
            if (primes.count(p)) return std::vector<Complex>{};
            return la(p);
        };
    }
    return r;
}

// ---- cache files -----------------------------------------------------------

void write_cache(const CoefficientSeries& s, std::uint64_t N, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) fail("invalid-argument", "cannot open cache file for writing: " + path);
    std::string label = s.label;
    for (auto& c : label)
        if (c == ' ' || c == '\t') c = '_';
    std::fprintf(f, "# archimedea-coeffs v1 %s %llu\n", label.c_str(), (unsigned long long)N);
    for (std::uint64_t n = 1; n <= N; ++n) {
        Complex v = s.a(n);
        std::fprintf(f, "%llu\t%.17g\t%.17g\n", (unsigned long long)n, v.real(), v.imag());
    }
    std::fclose(f);
}

CacheFile read_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("invalid-argument", "cannot open cache file: " + path);
    std::string hash, magic, ver;
    CacheFile cf;
    in >> hash >> magic >> ver >> cf.label >> cf.N;
    if (hash != "#" || magic != "archimedea-coeffs" || ver != "v1")
        fail("invalid-argument", "bad cache header in " + path);
    cf.values.resize(cf.N);
    for (std::uint64_t i = 0; i < cf.N; ++i) {
        std::uint64_t n;
        double re, im;
        if (!(in >> n >> re >> im)) fail("invalid-argument", "truncated cache file: " + path);
        if (n != i + 1) fail("invalid-argument", "cache file line out of order: " + path);
        cf.values[i] = Complex(re, im);
    }
    return cf;
}

} // namespace archimedea::coeffs
