#include "archimedea/characters.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "archimedea/errors.hpp"

namespace archimedea::dirichlet {

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = (__uint128_t)r * b % m;
        b = (__uint128_t)b * b % m;
        e >>= 1;
    }
    return r;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> f;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.push_back({p, e});
        }
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

std::uint64_t phi_prime_power(std::uint64_t p, int e) {
    std::uint64_t pe = 1;
    for (int i = 0; i < e - 1; ++i) pe *= p;
    return pe * (p - 1);
}

// smallest primitive root mod p^e (odd p)
std::uint64_t primitive_root(std::uint64_t p, int e) {
    std::uint64_t phi_p = p - 1;
    auto fac = factorize(phi_p);
    std::uint64_t g = 0;
    for (std::uint64_t c = 2; c < p; ++c) {
        bool ok = true;
        for (auto& [q, _] : fac)
            if (pow_mod(c, phi_p / q, p) == 1) { ok = false; break; }
        if (ok) { g = c; break; }
    }
    if (e == 1) return g;
    // lift: g stays primitive mod p^e unless g^{p-1} = 1 mod p^2
    std::uint64_t p2 = p * p;
    if (pow_mod(g, p - 1, p2) == 1) g += p;
    return g;
}

// CRT lift: x = a mod m, x = 1 mod (q/m)
std::uint64_t crt_lift(std::uint64_t a, std::uint64_t m, std::uint64_t q) {
    std::uint64_t rest = q / m;
    if (rest == 1) return a % q;
    // x = a + m*t with a + m*t = 1 mod rest
    std::uint64_t m_mod = m % rest;
    // inverse of m mod rest
    long long t0 = 0, t1 = 1;
    long long r0 = (long long)rest, r1 = (long long)m_mod;
    while (r1) {
        long long qd = r0 / r1;
        long long r2 = r0 - qd * r1;
        r0 = r1; r1 = r2;
        long long t2 = t0 - qd * t1;
        t0 = t1; t1 = t2;
    }
    std::uint64_t minv = (std::uint64_t)((t0 % (long long)rest + (long long)rest) % (long long)rest);
    std::uint64_t need = (1 + rest - a % rest) % rest;
    std::uint64_t t = (__uint128_t)need * minv % rest;
    return (a + (__uint128_t)m * t) % q;
}

std::shared_ptr<const UnitGroup> build_unit_group(std::uint64_t q) {
    auto g = std::make_shared<UnitGroup>();
    g->modulus = q;
    g->phi = 1;
    if (q == 1) return g;
    for (auto& [p, e] : factorize(q)) {
        std::uint64_t pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            g->phi *= pe / 2;
            if (e == 1) continue;
            if (e == 2) {
                UnitGroup::Component c;
                c.prime_power = 4;
                c.generator = crt_lift(3, 4, q);
                c.order = 2;
                c.dlog.assign(4, UINT32_MAX);
                c.dlog[1] = 0;
                c.dlog[3] = 1;
                g->components.push_back(std::move(c));
                continue;
            }
            // 2^e, e >= 3: <-1> x <5>
            UnitGroup::Component cm, c5;
            cm.prime_power = c5.prime_power = pe;
            cm.generator = crt_lift(pe - 1, pe, q);
            cm.order = 2;
            c5.generator = crt_lift(5, pe, q);
            c5.order = pe / 4;
            cm.dlog.assign(pe, UINT32_MAX);
            c5.dlog.assign(pe, UINT32_MAX);
            for (std::uint64_t a = 0; a < 2; ++a) {
                std::uint64_t base = a ? pe - 1 : 1;
                std::uint64_t v = base;
                for (std::uint64_t b = 0; b < c5.order; ++b) {
                    cm.dlog[v] = (std::uint32_t)a;
                    c5.dlog[v] = (std::uint32_t)b;
                    v = (__uint128_t)v * 5 % pe;
                }
            }
            g->components.push_back(std::move(cm));
            g->components.push_back(std::move(c5));
        } else {
            std::uint64_t ph = phi_prime_power(p, e);
            g->phi *= ph;
            UnitGroup::Component c;
            c.prime_power = pe;
            std::uint64_t root = primitive_root(p, e);
            c.generator = crt_lift(root, pe, q);
            c.order = ph;
            c.dlog.assign(pe, UINT32_MAX);
            std::uint64_t v = 1;
            for (std::uint64_t k = 0; k < ph; ++k) {
                c.dlog[v] = (std::uint32_t)k;
                v = (__uint128_t)v * root % pe;
            }
            g->components.push_back(std::move(c));
        }
    }
    return g;
}

std::mutex g_group_mutex;
std::map<std::uint64_t, std::shared_ptr<const UnitGroup>> g_group_cache;

} // namespace

std::shared_ptr<const UnitGroup> UnitGroup::get(std::uint64_t q) {
    if (q == 0) fail("invalid-argument", "modulus must be positive");
    std::lock_guard<std::mutex> lock(g_group_mutex);
    auto it = g_group_cache.find(q);
    if (it != g_group_cache.end()) return it->second;
    auto g = build_unit_group(q);
    g_group_cache[q] = g;
    return g;
}

DirichletCharacter::DirichletCharacter(std::uint64_t q, std::vector<long long> exponents)
    : group_(UnitGroup::get(q)), exps_(std::move(exponents)) {
    if (exps_.size() != group_->components.size())
        fail("invalid-argument", "character exponent tuple has wrong length");
    for (size_t i = 0; i < exps_.size(); ++i) {
        long long d = (long long)group_->components[i].order;
        exps_[i] = ((exps_[i] % d) + d) % d;
    }
}

std::uint64_t DirichletCharacter::index() const {
    std::uint64_t idx = 0;
    for (size_t i = 0; i < exps_.size(); ++i) {
        idx = idx * group_->components[i].order + (std::uint64_t)exps_[i];
    }
    return idx;
}

Rational DirichletCharacter::angle(std::uint64_t n) const {
    std::uint64_t q = modulus();
    n %= q;
    if (q == 1) return Rational(0);
    if (std::gcd(n, q) != 1) fail("invalid-argument", "angle undefined off the unit group");
    Rational t(0);
    for (size_t i = 0; i < exps_.size(); ++i) {
        const auto& c = group_->components[i];
        std::uint32_t dl = c.dlog[n % c.prime_power];
        t += Rational((long long)((__int128)exps_[i] * dl % (long long)c.order), (long long)c.order);
    }
    t -= Rational(t.floor());
    return t;
}

Complex DirichletCharacter::value(long long n) const {
    std::uint64_t q = modulus();
    long long m = ((n % (long long)q) + (long long)q) % (long long)q;
    if (q > 1 && std::gcd((std::uint64_t)m, q) != 1) return {0.0, 0.0};
    Rational t = angle((std::uint64_t)m);
    if (t == Rational(0)) return {1.0, 0.0};
    if (t == Rational(1, 2)) return {-1.0, 0.0};
    if (t == Rational(1, 4)) return {0.0, 1.0};
    if (t == Rational(3, 4)) return {0.0, -1.0};
    double th = 2.0 * std::numbers::pi * t.value();
    return {std::cos(th), std::sin(th)};
}

bool DirichletCharacter::vanishes_at(long long n) const {
    std::uint64_t q = modulus();
    if (q == 1) return false;
    long long m = ((n % (long long)q) + (long long)q) % (long long)q;
    return std::gcd((std::uint64_t)m, q) != 1;
}

std::uint64_t DirichletCharacter::order() const {
    std::uint64_t o = 1;
    for (size_t i = 0; i < exps_.size(); ++i) {
        std::uint64_t d = group_->components[i].order;
        std::uint64_t g = std::gcd((std::uint64_t)exps_[i], d);
        o = std::lcm(o, d / g);
    }
    return o;
}

int DirichletCharacter::parity() const {
    std::uint64_t q = modulus();
    if (q <= 2) return 0;
    Rational t = angle(q - 1);
    return t.is_zero() ? 0 : 1;  // chi(-1) is +-1
}

std::uint64_t DirichletCharacter::conductor() const {
    std::uint64_t cond = 1;
    for (size_t i = 0; i < exps_.size(); ++i) {
        const auto& c = group_->components[i];
        std::uint64_t d = c.order;
        std::uint64_t m = d / std::gcd((std::uint64_t)exps_[i], d);  // order of this component character
        if (m == 1) continue;
        std::uint64_t pe = c.prime_power;
        if (pe % 2 == 0) {
            if (c.generator % pe == pe - 1) {
                // the <-1> component (also the single mod-4 generator)
                cond = std::lcm(cond, (std::uint64_t)4);
            } else {
                // the <5> component: conductor 2^{v2(m)+2}
                std::uint64_t f = 4;
                while (f / 4 < m) f *= 2;
                cond = std::lcm(cond, f);
            }
        } else {
            // odd p^e: smallest p^f with m | phi(p^f)
            std::uint64_t p = factorize(pe)[0].first;
            std::uint64_t pf = p;
            std::uint64_t ph = p - 1;
            while (ph % m != 0) { pf *= p; ph *= p; }
            cond = std::lcm(cond, pf);
        }
    }
    return cond;
}

bool DirichletCharacter::is_trivial() const {
    for (auto e : exps_)
        if (e != 0) return false;
    return true;
}

DirichletCharacter DirichletCharacter::primitive_core() const {
    std::uint64_t f = conductor();
    if (f == modulus()) return *this;
    auto core_group = UnitGroup::get(f);
    std::vector<long long> core_exps;
    for (const auto& c : core_group->components) {
        // lift the generator to something coprime to q and read off the angle
        std::uint64_t g = c.generator;
        while (std::gcd(g, modulus()) != 1) g += f;
        Rational t = angle(g % modulus());
        Rational e = t * Rational((long long)c.order);
        if (!e.is_integer()) fail("invalid-argument", "core exponent not integral (bug)");
        core_exps.push_back(e.num());
    }
    return DirichletCharacter(f, std::move(core_exps));
}

DirichletCharacter DirichletCharacter::inverse() const {
    std::vector<long long> e;
    for (size_t i = 0; i < exps_.size(); ++i)
        e.push_back(exps_[i] == 0 ? 0 : (long long)group_->components[i].order - exps_[i]);
    return DirichletCharacter(modulus(), std::move(e));
}

std::vector<DirichletCharacter> character_table(std::uint64_t q) {
    if (q == 0) fail("invalid-argument", "modulus must be positive");
    auto group = UnitGroup::get(q);
    std::vector<DirichletCharacter> table;
    table.reserve(group->phi);
    std::vector<long long> exps(group->components.size(), 0);
    for (;;) {
        table.emplace_back(q, exps);
        int i = (int)exps.size() - 1;
        for (; i >= 0; --i) {
            if (++exps[i] < (long long)group->components[i].order) break;
            exps[i] = 0;
        }
        if (i < 0) break;
        if (table.size() > group->phi) fail("invalid-argument", "character enumeration bug");
    }
    return table;
}

DirichletCharacter character_by_index(std::uint64_t q, std::uint64_t index) {
    auto group = UnitGroup::get(q);
    if (index >= group->phi) fail("invalid-argument", "character index out of range");
    std::vector<long long> exps(group->components.size(), 0);
    for (int i = (int)exps.size() - 1; i >= 0; --i) {
        exps[i] = (long long)(index % group->components[i].order);
        index /= group->components[i].order;
    }
    return DirichletCharacter(q, std::move(exps));
}

DirichletCharacter multiply(const DirichletCharacter& a, const DirichletCharacter& b) {
    std::uint64_t L = std::lcm(a.modulus(), b.modulus());
    auto group = UnitGroup::get(L);
    std::vector<long long> exps;
    for (const auto& c : group->components) {
        Rational t = a.angle(c.generator % a.modulus()) + b.angle(c.generator % b.modulus());
        t -= Rational(t.floor());
        Rational e = t * Rational((long long)c.order);
        if (!e.is_integer()) fail("invalid-argument", "product exponent not integral (bug)");
        exps.push_back(e.num());
    }
    return DirichletCharacter(L, std::move(exps));
}

Complex gauss_sum(const DirichletCharacter& chi) {
    if (!chi.is_primitive())
        fail("imprimitive-character", "gauss_sum needs a primitive character; take primitive_core first");
    std::uint64_t q = chi.modulus();
    if (q == 1) return {1.0, 0.0};
    Complex tau = 0.0;
    for (std::uint64_t a = 1; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        double th = 2.0 * std::numbers::pi * (double)a / (double)q;
        tau += chi.value((long long)a) * Complex(std::cos(th), std::sin(th));
    }
    return tau;
}

EpsFactor eps_global(const DirichletCharacter& chi) {
    if (!chi.is_primitive()) fail("imprimitive-character", "eps_global needs a primitive character");
    std::uint64_t D = chi.modulus();
    Complex tau = gauss_sum(chi);
    Complex mi = chi.parity() == 0 ? Complex(1.0, 0.0) : Complex(0.0, -1.0);
    return EpsFactor{mi * tau / std::sqrt((double)D), (double)D};
}

Complex eps_infty(const DirichletCharacter& chi) {
    return chi.parity() == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
}

EpsFactor eps_product_coprime(const DirichletCharacter& chi1, const DirichletCharacter& chi2) {
    if (!chi1.is_primitive() || !chi2.is_primitive())
        fail("imprimitive-character", "eps_product_coprime needs primitive characters");
    std::uint64_t d1 = chi1.modulus(), d2 = chi2.modulus();
    if (std::gcd(d1, d2) != 1) fail("not-coprime", "conductors are not coprime");
    // tau(chi1 chi2) = chi1(D2) chi2(D1) tau(chi1) tau(chi2); normalize with the
    // parity of the product so the result is the global epsilon of chi1*chi2.
    Complex tau = chi1.value((long long)d2) * chi2.value((long long)d1) * gauss_sum(chi1) *
                  gauss_sum(chi2);
    int par = (chi1.parity() + chi2.parity()) % 2;
    Complex mi = par == 0 ? Complex(1.0, 0.0) : Complex(0.0, -1.0);
    double K = (double)(d1 * d2);
    return EpsFactor{mi * tau / std::sqrt(K), K};
}

WeilEpsDescriptor weil_eps_descriptor(int n, const DirichletCharacter& omega_pi,
                                      const DirichletCharacter& omega_rho,
                                      const DirichletCharacter& chi0,
                                      const DirichletCharacter& chi) {
    if (n < 3) fail("invalid-argument", "descriptor defined for n >= 3");
    if (!chi0.is_primitive()) fail("imprimitive-character", "chi0 must be primitive");
    DirichletCharacter chi_p = chi.is_primitive() ? chi : chi.primitive_core();
    std::uint64_t D = chi_p.modulus();
    std::uint64_t N0 = chi0.modulus();
    if (std::gcd(D, N0) != 1) fail("not-coprime", "conductor of chi must be coprime to that of chi0");

    // c = r(omega_pi chi0) r(chi0)^2 / r(omega_rho chi0)
    Complex r_pi = eps_global(multiply(omega_pi, chi0).primitive_core()).r;
    Complex r_rho = eps_global(multiply(omega_rho, chi0).primitive_core()).r;
    Complex r0 = eps_global(chi0).r;
    Complex c = r_pi * r0 * r0 / r_rho;

    DirichletCharacter psi = multiply(multiply(omega_pi, omega_rho.inverse()), multiply(chi0, chi0));
    Complex evaluated = psi.value((long long)D);

    EpsFactor e = eps_global(chi_p);
    EpsFactor esq{e.r * e.r, e.K * e.K};
    std::uint64_t N = N0 * N0;
    return WeilEpsDescriptor{c, evaluated, N, chi_p.value((long long)(N % (D == 0 ? 1 : D))), esq};
}

} // namespace archimedea::dirichlet
