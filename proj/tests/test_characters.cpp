#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "archimedea/characters.hpp"
#include "archimedea/errors.hpp"

using namespace archimedea;
using namespace archimedea::dirichlet;
using Cx = std::complex<double>;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("character tables") {
    auto t1 = character_table(1);
    REQUIRE(t1.size() == 1);
    CHECK(t1[0].conductor() == 1);
    CHECK(t1[0].value(5) == Cx(1.0, 0.0));

    auto t4 = character_table(4);
    REQUIRE(t4.size() == 2);
    CHECK(t4[0].is_trivial());
    CHECK(t4[1].parity() == 1);
    CHECK(t4[1].conductor() == 4);
    CHECK(t4[1].value(3) == Cx(-1.0, 0.0));
    CHECK(t4[1].value(2) == Cx(0.0, 0.0));

    auto t9 = character_table(9);
    REQUIRE(t9.size() == 6);
    std::set<std::uint64_t> conds;
    for (auto& chi : t9) conds.insert(chi.conductor());
    CHECK(conds == std::set<std::uint64_t>{1, 3, 9});

    // enumeration index round-trips
    for (std::uint64_t q : {1, 4, 9, 12, 16, 24, 40}) {
        auto t = character_table(q);
        for (std::uint64_t i = 0; i < t.size(); ++i) CHECK(t[i].index() == i);
    }

    CHECK_THROWS_AS(character_table(0), DomainError);
}

TEST_CASE("character values are multiplicative roots of unity") {
    for (std::uint64_t q : {5, 8, 12, 45}) {
        for (auto& chi : character_table(q)) {
            for (long long m = 1; m < 20; ++m)
                for (long long n = 1; n < 20; ++n) {
                    Cx lhs = chi.value(m * n);
                    Cx rhs = chi.value(m) * chi.value(n);
                    CHECK(std::abs(lhs - rhs) < 1e-12);
                }
            // chi(-1) = (-1)^parity
            Cx mm = chi.value(-1);
            CHECK(std::abs(mm - Cx(chi.parity() == 0 ? 1.0 : -1.0, 0.0)) < 1e-12);
        }
    }
}

TEST_CASE("primitive core") {
    // the character mod 12 induced from the quadratic character mod 3
    for (auto& chi : character_table(12)) {
        if (chi.conductor() != 3) continue;
        auto core = chi.primitive_core();
        CHECK(core.modulus() == 3);
        CHECK(core.is_primitive());
        for (long long n = 1; n < 12; ++n) {
            if (std::gcd<long long>(n, 12) != 1) continue;
            CHECK(std::abs(chi.value(n) - core.value(n)) < 1e-12);
        }
    }
}

TEST_CASE("gauss sums: small frozen values") {
    // quadratic mod 3: exp(2pi i/3) - exp(4pi i/3) = i sqrt(3)
    auto t3 = character_table(3);
    CHECK(std::abs(gauss_sum(t3[1]) - Cx(0.0, std::sqrt(3.0))) < 1e-12);
    // quadratic mod 4: 2i
    auto t4 = character_table(4);
    CHECK(std::abs(gauss_sum(t4[1]) - Cx(0.0, 2.0)) < 1e-12);
    // quadratic mod 5: sqrt(5)
    for (auto& chi : character_table(5)) {
        if (chi.order() == 2) CHECK(std::abs(gauss_sum(chi) - Cx(std::sqrt(5.0), 0.0)) < 1e-12);
    }
    // imprimitive input is rejected
    for (auto& chi : character_table(12))
        if (chi.conductor() == 3) CHECK_THROWS_AS(gauss_sum(chi), DomainError);
}

TEST_CASE("gauss sum modulus and duality, q <= 40") {
    for (std::uint64_t q = 1; q <= 40; ++q) {
        for (auto& chi : character_table(q)) {
            if (!chi.is_primitive()) continue;
            Cx tau = gauss_sum(chi);
            CHECK(std::abs(std::abs(tau) - std::sqrt((double)q)) < 1e-9);
            Cx tau_bar = gauss_sum(chi.inverse());
            double sign = chi.parity() == 0 ? 1.0 : -1.0;
            CHECK(std::abs(tau * tau_bar - Cx(sign * (double)q, 0.0)) < 1e-9);
        }
    }
}

TEST_CASE("epsilon factors of characters") {
    auto t4 = character_table(4);
    auto e4 = eps_global(t4[1]);
    CHECK(std::abs(e4.r - Cx(1.0, 0.0)) < 1e-12);
    CHECK(e4.K == doctest::Approx(4.0));
    CHECK(std::abs(eps_infty(t4[1]) - Cx(0.0, 1.0)) < 1e-15);

    auto t3 = character_table(3);
    auto e3 = eps_global(t3[1]);
    CHECK(std::abs(e3.r - Cx(1.0, 0.0)) < 1e-12);
    CHECK(e3.K == doctest::Approx(3.0));

    auto t1 = character_table(1);
    auto e1 = eps_global(t1[0]);
    CHECK(std::abs(e1.r - Cx(1.0, 0.0)) < 1e-12);
    CHECK(e1.K == doctest::Approx(1.0));

    // duality: tau(chi)/sqrt(q) times tau(chi_bar)/sqrt(q) is chi(-1); in the
    // (-i)^eps normalization the two root numbers multiply to 1.
    for (std::uint64_t q = 1; q <= 30; ++q)
        for (auto& chi : character_table(q)) {
            if (!chi.is_primitive()) continue;
            double sign = chi.parity() == 0 ? 1.0 : -1.0;
            Cx bare = gauss_sum(chi) * gauss_sum(chi.inverse()) / (double)q;
            CHECK(std::abs(bare - Cx(sign, 0.0)) < 1e-9);
            Cx lhs = eps_global(chi).r * eps_global(chi.inverse()).r;
            CHECK(std::abs(lhs - Cx(1.0, 0.0)) < 1e-9);
        }
}

TEST_CASE("epsilon product over coprime conductors") {
    auto t3 = character_table(3);
    auto t4 = character_table(4);
    auto e = eps_product_coprime(t3[1], t4[1]);
    CHECK(e.K == doctest::Approx(12.0));
    CHECK(std::abs(std::abs(e.r) - 1.0) < 1e-12);
    // against the directly induced character mod 12
    auto prod = multiply(t3[1], t4[1]);
    CHECK(prod.is_primitive());
    auto direct = eps_global(prod);
    CHECK(std::abs(e.r - direct.r) < 1e-10);
    CHECK(e.K == doctest::Approx(direct.K));

    // chi times the trivial character
    auto t1 = character_table(1);
    auto e2 = eps_product_coprime(t3[1], t1[0]);
    auto base = eps_global(t3[1]);
    CHECK(std::abs(e2.r - base.r) < 1e-12);
    CHECK(e2.K == doctest::Approx(base.K));

    // order-4 mod 5 times quadratic mod 4, vs induced mod 20
    for (auto& chi5 : character_table(5)) {
        if (chi5.order() != 4) continue;
        auto ep = eps_product_coprime(chi5, t4[1]);
        auto ind = eps_global(multiply(chi5, t4[1]));
        CHECK(std::abs(ep.r - ind.r) < 1e-10);
        CHECK(ep.K == doctest::Approx(ind.K));
        break;
    }

    // all coprime pairs with product modulus <= 60
    for (std::uint64_t q1 = 1; q1 <= 60; ++q1)
        for (std::uint64_t q2 = q1; q1 * q2 <= 60; ++q2) {
            if (std::gcd(q1, q2) != 1) continue;
            for (auto& c1 : character_table(q1)) {
                if (!c1.is_primitive()) continue;
                for (auto& c2 : character_table(q2)) {
                    if (!c2.is_primitive()) continue;
                    auto viaid = eps_product_coprime(c1, c2);
                    auto ind = eps_global(multiply(c1, c2));
                    CHECK(std::abs(viaid.r - ind.r) < 1e-10);
                    CHECK(std::abs(viaid.K - ind.K) < 1e-9);
                }
            }
        }

    CHECK_THROWS_AS(eps_product_coprime(t3[1], character_table(9)[1]), DomainError);
}

TEST_CASE("weil epsilon descriptor") {
    auto triv = character_table(1)[0];
    auto chi0_5 = character_table(5)[0];
    for (auto& c : character_table(5))
        if (c.order() == 2) chi0_5 = c;
    auto chi4 = character_table(4)[1];

    // chi trivial: reduces to constant * N^{1/2-s}
    auto d0 = weil_eps_descriptor(3, triv, triv, chi0_5, triv);
    CHECK(d0.N == 25);
    CHECK(std::abs(std::abs(d0.constant) - 1.0) < 1e-10);
    CHECK(std::abs(d0.evaluated_char - Cx(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(d0.eps_chi_sq.r - Cx(1.0, 0.0)) < 1e-12);
    CHECK(d0.eps_chi_sq.K == doctest::Approx(1.0));

    // quadratic everything, chi0 mod 5, chi mod 4
    auto d1 = weil_eps_descriptor(3, chi4, triv, chi0_5, chi4);
    CHECK(d1.N == 25);
    CHECK(d1.eps_chi_sq.K == doctest::Approx(16.0));
    CHECK(std::abs(std::abs(d1.constant) - 1.0) < 1e-10);

    // swapping omega_pi and omega_rho inverts the evaluated character
    DirichletCharacter om4 = character_table(5)[0];
    for (auto& c : character_table(5))
        if (c.order() == 4) { om4 = c; break; }
    auto chi0_3 = character_table(3)[1];
    auto chi8 = character_table(8)[0];
    for (auto& c : character_table(8))
        if (c.conductor() == 8) { chi8 = c; break; }
    auto a = weil_eps_descriptor(3, om4, triv, chi0_3, chi8);
    auto b = weil_eps_descriptor(3, triv, om4, chi0_3, chi8);
    CHECK(std::abs(a.evaluated_char * b.evaluated_char - Cx(1.0, 0.0)) < 1e-10);
    CHECK(std::abs(a.evaluated_char.imag()) > 0.5);  // genuinely complex case

    // conductor clash
    CHECK_THROWS_AS(weil_eps_descriptor(3, triv, triv, chi0_5, character_table(25)[1]), DomainError);
}
