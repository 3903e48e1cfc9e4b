#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "archimedea/rational.hpp"

namespace archimedea::dirichlet {

using Complex = std::complex<double>;

// Multiplicative structure of (Z/q)^*: one cyclic component per odd prime
// power (smallest primitive root, CRT-lifted to a generator mod q) and the
// {-1, 5} pair for 2^k, k >= 3. Cached per modulus; read-safe.
struct UnitGroup {
    std::uint64_t modulus = 1;
    struct Component {
        std::uint64_t prime_power;         // p^e it belongs to
        std::uint64_t generator;           // CRT-lifted generator mod q
        std::uint64_t order;               // order of the generator
        std::vector<std::uint32_t> dlog;   // index by n mod p^e; UINT32_MAX if not a unit
    };
    std::vector<Component> components;
    std::uint64_t phi = 1;

    static std::shared_ptr<const UnitGroup> get(std::uint64_t q);
};

// Character mod q given by exponents on the fixed generators; values are
// exact roots of unity e^{2 pi i t} with t rational.
class DirichletCharacter {
public:
    DirichletCharacter() : group_(UnitGroup::get(1)) {}
    DirichletCharacter(std::uint64_t q, std::vector<long long> exponents);

    std::uint64_t modulus() const { return group_->modulus; }
    const std::vector<long long>& exponents() const { return exps_; }

    // character index in the mixed-radix enumeration used by character_table
    std::uint64_t index() const;

    // angle t with chi(n) = e^{2 pi i t}; undefined when gcd(n, q) > 1
    Rational angle(std::uint64_t n) const;
    Complex value(long long n) const;
    bool vanishes_at(long long n) const;

    std::uint64_t order() const;
    int parity() const;  // chi(-1) = (-1)^parity
    std::uint64_t conductor() const;
    bool is_primitive() const { return conductor() == modulus(); }
    bool is_trivial() const;

    DirichletCharacter primitive_core() const;
    DirichletCharacter inverse() const;  // = conjugate

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<long long> exps_;
};

std::vector<DirichletCharacter> character_table(std::uint64_t q);
DirichletCharacter character_by_index(std::uint64_t q, std::uint64_t index);

// chi1 * chi2 as a character mod lcm(q1, q2)
DirichletCharacter multiply(const DirichletCharacter& a, const DirichletCharacter& b);

// tau(chi) = sum_a chi(a) e^{2 pi i a / q}; requires a primitive character.
Complex gauss_sum(const DirichletCharacter& chi);

// r * K^{1/2 - s} with |r| = 1, K > 0
struct EpsFactor {
    Complex r;
    double K;
};

// Global epsilon factor of a primitive character: (-i)^{eps} tau(chi) D^{-s}
// in normal form, i.e. r = (-i)^{eps} tau/sqrt(D), K = D.
EpsFactor eps_global(const DirichletCharacter& chi);

// archimedean constant i^{eps_chi}
Complex eps_infty(const DirichletCharacter& chi);

// epsilon factor of chi1*chi2 for coprime conductors via
// chi1(D2) chi2(D1) eps(chi1) eps(chi2).
EpsFactor eps_product_coprime(const DirichletCharacter& chi1, const DirichletCharacter& chi2);

// The four factors of E0(s,chi) = c * (omega_pi omega_rho^{-1} chi0^2)(D)
// * N^{1/2-s} * chi(N) * eps(s,chi)^2 that control the stable functional
// equation of the chi0-twisted quotient.
struct WeilEpsDescriptor {
    Complex constant;        // unit modulus
    Complex evaluated_char;  // (omega_pi omega_rho^{-1} chi0^2)(D)
    std::uint64_t N;         // cond(chi0)^2
    Complex chi_at_N;
    EpsFactor eps_chi_sq;
};

WeilEpsDescriptor weil_eps_descriptor(int n, const DirichletCharacter& omega_pi,
                                      const DirichletCharacter& omega_rho,
                                      const DirichletCharacter& chi0,
                                      const DirichletCharacter& chi);

} // namespace archimedea::dirichlet
