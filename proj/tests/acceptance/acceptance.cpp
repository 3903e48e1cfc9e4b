// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "archimedea/analytic.hpp"
#include "archimedea/characters.hpp"
#include "archimedea/coeffs.hpp"
#include "archimedea/log_gamma.hpp"
#include "archimedea/reduction.hpp"
#include "archimedea/selberg.hpp"
#include "archimedea/whittaker.hpp"

using namespace archimedea;
using arch::ArchExpr;
using arch::BuildKind;
using arch::CombineOp;
using Cx = std::complex<double>;

namespace {

const double kPi = std::numbers::pi;
int g_failures = 0;

struct Criterion {
    const char* name;
    double time_limit_s;
    std::function<bool(std::string&)> body;
};

void run_criterion(int idx, const Criterion& c) {
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = c.body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.time_limit_s) {
        ok = false;
        detail += " [over time limit]";
    }
    std::printf("%s criterion %d: %s (%.2fs%s%s)\n", ok ? "PASS" : "FAIL", idx, c.name, secs,
                detail.empty() ? "" : "; ", detail.c_str());
    if (!ok) ++g_failures;
}

double rel_err(Cx got, Cx want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

ArchExpr mul(const ArchExpr& a, const ArchExpr& b) { return arch::combine(a, b, CombineOp::mul); }
ArchExpr quo(const ArchExpr& a, const ArchExpr& b) { return arch::combine(a, b, CombineOp::div); }

// ---- random degree-2 quotient generator -------------------------------------
// Builds quotients guaranteed to cancel completely: a GL(2)-type base plus
// matched numerator/denominator pairs on the recurrence or duplication
// lattices, every pair carrying its own imaginary offset so matchings cannot
// cross.
struct QuotientSample {
    ArchExpr expr;
    int atoms;
};

QuotientSample random_quotient_local(std::mt19937& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto uniform = [&](double a, double b) { return a + (b - a) * U(rng); };
    auto pick_int = [&](int a, int b) {
        return a + (int)(U(rng) * (b - a + 1) * 0.999999);
    };
    int max_m = scale < 1.0 ? 1 : 2;
    double im_range = 2.5 * scale;

    arch::GL2ArchType target;
    int base_atoms;
    if (U(rng) < 0.5) {
        int e1 = pick_int(0, 1), e2 = pick_int(0, 1);
        Cx nu = U(rng) < 0.6 ? Cx(0.0, uniform(-2.0 * scale, 2.0 * scale))
                             : Cx(uniform(-0.4, 0.4), 0.0);
        target = arch::PrincipalSeries{e1, e2, nu, uniform(-im_range, im_range),
                                       uniform(-im_range, im_range)};
        base_atoms = 2;
    } else {
        target = arch::DiscreteSeries{pick_int(1, scale < 1.0 ? 4 : 11),
                                      uniform(-im_range, im_range)};
        base_atoms = 1;
    }
    ArchExpr e = arch::gl2_arch_factor(target, 0);
    int atoms = base_atoms;

    int steps = pick_int(0, 2);
    for (int i = 0; i < steps && atoms + 2 <= 6; ++i) {
        double kind = U(rng);
        double im = uniform(-im_range, im_range);
        if (kind < 0.45) {
            // Gamma_R pair on the 2Z lattice
            Cx a(uniform(-0.4, 1.2 * scale), im);
            int m = pick_int(0, max_m);
            e = mul(e, arch::build(BuildKind::gamma_r, a + 2.0 * m));
            e = quo(e, arch::build(BuildKind::gamma_r, a));
            atoms += 2;
        } else if (kind < 0.85) {
            // Gamma_C pair on the Z lattice
            Cx a(uniform(-0.4, 1.5 * scale), im);
            int m = pick_int(0, max_m);
            e = mul(e, arch::build(BuildKind::gamma_c, a + (double)m));
            e = quo(e, arch::build(BuildKind::gamma_c, a));
            atoms += 2;
        } else if (atoms + 3 <= 6) {
            if (U(rng) < 0.5) {
                // num Gamma_C(b) against den Gamma_R(b+2j) Gamma_R(b+1+2j')
                Cx b(uniform(-0.4, 1.0), im);
                e = mul(e, arch::build(BuildKind::gamma_c, b));
                e = quo(e, arch::build(BuildKind::gamma_r, b + 2.0 * pick_int(0, 1)));
                e = quo(e, arch::build(BuildKind::gamma_r, b + 1.0 + 2.0 * pick_int(0, 1)));
            } else {
                // den Gamma_C(b) against num Gamma_R(b+2j) Gamma_R(b+1+2j')
                Cx b(uniform(-0.4, 1.0), im);
                e = quo(e, arch::build(BuildKind::gamma_c, b));
                e = mul(e, arch::build(BuildKind::gamma_r, b + 2.0 * pick_int(0, 1)));
                e = mul(e, arch::build(BuildKind::gamma_r, b + 1.0 + 2.0 * pick_int(0, 1)));
            }
            atoms += 3;
        }
    }
    return {e, atoms};
}

// ---- criteria ----------------------------------------------------------------

bool crit1_gamma_closure(std::string& detail) {
    std::mt19937 rng(0xA11CE);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
        auto sample = random_quotient(rng);
        if (arch::degree(sample.expr) != Rational(2)) {
            detail = "generator degree drift at trial " + std::to_string(trial);
            return false;
        }
        auto v = arch::reduce_quotient(sample.expr);
        auto* fin = std::get_if<arch::FinitelyManyZeros>(&v);
        if (!fin) {
            detail = "unexpected infinite verdict at trial " + std::to_string(trial);
            return false;
        }
        if (arch::degree(arch::gl2_arch_factor(fin->gl2, 0)) != Rational(2)) {
            detail = "degree drift in the verdict at trial " + std::to_string(trial);
            return false;
        }
        for (int pt = 0; pt < 10; ++pt) {
            Cx s(2.0, U(rng));
            double err = rel_err(arch::eval_verdict(v, s), arch::eval_arch(sample.expr, s));
            if (err > 1e-9) {
                detail = "closure error " + std::to_string(err) + " at trial " +
                         std::to_string(trial);
                return false;
            }
        }
    }
    detail = "1000 quotients, 10 points each";
    return true;
}

bool crit2_paper_cases(std::string& detail) {
    // sym^2 Maass: Gamma_R(s+2iv) Gamma_R(s) Gamma_R(s-2iv) / Gamma_R(s)
    CRat iv{Rational(0), Rational(27, 20)};
    ArchExpr maass = quo(mul(mul(arch::build(BuildKind::gamma_r, iv),
                                 arch::build(BuildKind::gamma_r, CRat{Rational(0)})),
                             arch::build(BuildKind::gamma_r, CRat{-Rational(0), -iv.im})),
                         arch::build(BuildKind::gamma_r, CRat{Rational(0)}));
    auto v1 = arch::reduce_quotient(maass);
    auto* fin = std::get_if<arch::FinitelyManyZeros>(&v1);
    if (!fin) { detail = "Maass case not finite"; return false; }
    auto* ps = std::get_if<arch::PrincipalSeries>(&fin->gl2);
    if (!ps || ps->eps1 != 0 || ps->eps2 != 0 || !fin->ratio.is_one() ||
        std::abs(ps->nu - Cx(0.0, 27.0 / 20.0)) > 1e-12) {
        detail = "Maass case wrong classification";
        return false;
    }

    // even-weight holomorphic sym^2 over zeta, the displayed shifts
    // Gamma((s+k+1)/2) Gamma((s+1)/2) Gamma((s+k-1)/2) / Gamma_R(s), k = 12
    auto plain_half = [](Rational a) {
        return arch::build(BuildKind::plain, CRat{a / Rational(2)}, Rational(1, 2));
    };
    int k = 12;
    ArchExpr holo = quo(mul(mul(plain_half(Rational(k + 1)), plain_half(Rational(1))),
                            plain_half(Rational(k - 1))),
                        arch::build(BuildKind::gamma_r, CRat{Rational(0)}));
    auto v2 = arch::reduce_quotient(holo);
    if (!std::holds_alternative<arch::InfinitelyManyZeros>(v2)) {
        detail = "holomorphic even-weight case not infinite";
        return false;
    }
    detail = "both verdicts exact";
    return true;
}

bool crit3_stirling(std::string& detail) {
    // Gamma(s/2) Gamma((s+1)/2) -> (2 sqrt(pi), 1/2, 0)
    ArchExpr dup = mul(arch::build(BuildKind::plain, CRat{Rational(0)}, Rational(1, 2)),
                       arch::build(BuildKind::plain, CRat{Rational(1, 2)}, Rational(1, 2)));
    auto p = arch::stirling_profile(dup);
    if (rel_err(p.D, Cx(2.0 * std::sqrt(kPi))) > 1e-10 || std::abs(p.Kprime - 0.5) > 1e-12 ||
        std::abs(p.mu) > 1e-10) {
        detail = "duplication profile constants wrong";
        return false;
    }
    auto check_bound = [](const ArchExpr& e, const arch::StirlingProfile& prof) {
        for (double sigma = 50.0; sigma <= 400.0; sigma += 7.0) {
            Cx lg = 0.0;
            for (auto& atom : e.num)
                lg += analytic::log_gamma(atom.lambda.value() * sigma + atom.mu);
            for (auto& atom : e.den)
                lg -= analytic::log_gamma(atom.lambda.value() * sigma + atom.mu);
            Cx model = std::log(prof.D) + sigma * std::log(prof.Kprime) +
                       analytic::log_gamma(sigma + prof.mu);
            if (std::abs(std::exp(lg - model) - 1.0) > 10.0 / sigma) return false;
        }
        return true;
    };
    if (!check_bound(dup, p)) { detail = "duplication bound violated"; return false; }

    std::mt19937 rng(0x57131);
    for (int trial = 0; trial < 10; ++trial) {
        // random (G3)-compliant degree-2 gamma system at modest shift scale,
        // where the fixed constant 10 genuinely dominates c1
        auto sample = random_quotient(rng, 0.5);
        ArchExpr e = sample.expr;
        auto prof = arch::stirling_profile(e);
        if (!check_bound(e, prof)) {
            detail = "bound violated on random system " + std::to_string(trial);
            return false;
        }
    }
    detail = "profile constants exact, 10/sigma bound on [50,400]";
    return true;
}

bool crit4_characters(std::string& detail) {
    for (std::uint64_t q = 1; q <= 100; ++q) {
        for (auto& chi : dirichlet::character_table(q)) {
            if (!chi.is_primitive()) continue;
            double t = std::abs(dirichlet::gauss_sum(chi));
            if (std::abs(t - std::sqrt((double)q)) > 1e-9) {
                detail = "|tau| != sqrt(q) at q = " + std::to_string(q);
                return false;
            }
        }
    }
    int pairs = 0;
    for (std::uint64_t q1 = 1; q1 <= 60; ++q1)
        for (std::uint64_t q2 = 1; q1 * q2 <= 60; ++q2) {
            if (std::gcd(q1, q2) != 1) continue;
            for (auto& c1 : dirichlet::character_table(q1)) {
                if (!c1.is_primitive()) continue;
                for (auto& c2 : dirichlet::character_table(q2)) {
                    if (!c2.is_primitive()) continue;
                    auto via = dirichlet::eps_product_coprime(c1, c2);
                    auto ind = dirichlet::eps_global(dirichlet::multiply(c1, c2));
                    if (std::abs(via.r - ind.r) > 1e-10 || std::abs(via.K - ind.K) > 1e-10) {
                        detail = "eps product mismatch at (" + std::to_string(q1) + "," +
                                 std::to_string(q2) + ")";
                        return false;
                    }
                    ++pairs;
                }
            }
        }
    detail = "all primitive q <= 100; " + std::to_string(pairs) + " coprime eps pairs";
    return true;
}

bool crit5_fe_residuals(std::string& detail) {
    std::mt19937 rng(0xFE0);
    std::uniform_real_distribution<double> Ure(0.15, 0.85), Uim(-4.0, 4.0);
    auto z = coeffs::zeta_series();
    auto L3 = coeffs::dirichlet_l_series(dirichlet::character_by_index(3, 1));
    auto L4 = coeffs::dirichlet_l_series(dirichlet::character_by_index(4, 1));
    auto d = coeffs::delta_series();
    analytic::QuadratureSpec q;
    for (auto* s : {&z, &L3, &L4, &d}) {
        // the internal series length stays far below the N <= 5000 budget:
        // an explicit N = 5000 evaluation must agree with the automatic one
        Cx probe(0.4, 1.0);
        if (std::abs(analytic::completed_eval(*s, probe, 5000, q) -
                     analytic::completed_eval_auto(*s, probe, q)) > 1e-10) {
            detail = "N = 5000 evaluation disagrees with the automatic one for " + s->label;
            return false;
        }
        double worst = 0.0;
        for (int pt = 0; pt < 20; ++pt) {
            Cx sp(Ure(rng), Uim(rng));
            worst = std::max(worst, analytic::fe_residual(*s, sp));
        }
        if (worst > 1e-8) {
            detail = "residual " + std::to_string(worst) + " for " + s->label;
            return false;
        }
    }
    detail = "20 strip points each for zeta, L(chi3), L(chi4), delta";
    return true;
}

bool crit6_completed_values(std::string& detail) {
    auto z = coeffs::zeta_series();
    analytic::QuadratureSpec q;
    Cx v2 = analytic::completed_eval(z, {2.0, 0.0}, 60, q);
    Cx vm1 = analytic::completed_eval(z, {-1.0, 0.0}, 60, q);
    if (std::abs(v2 - Cx(kPi / 6.0)) > 1e-10) {
        detail = "Lambda(2) off by " + std::to_string(std::abs(v2 - Cx(kPi / 6.0)));
        return false;
    }
    if (std::abs(vm1 - v2) > 1e-10) {
        detail = "reflection mismatch " + std::to_string(std::abs(vm1 - v2));
        return false;
    }
    detail = "Lambda(2) = pi/6 and Lambda(-1) = Lambda(2) to 1e-10";
    return true;
}

bool crit7_zero_scan(std::string& detail) {
    auto z = coeffs::zeta_series();
    auto zeros = analytic::scan_zeros(z, 10.0, 26.0, 0.01);
    const double want[3] = {14.134725, 21.022040, 25.010858};
    if (zeros.size() != 3) {
        detail = "found " + std::to_string(zeros.size()) + " zeros, expected 3";
        return false;
    }
    for (int i = 0; i < 3; ++i) {
        if (std::abs(zeros[i] - want[i]) > 1e-3) {
            detail = "ordinate " + std::to_string(i) + " off";
            return false;
        }
    }
    detail = "14.1347, 21.0220, 25.0109 within 1e-3";
    return true;
}

bool crit8_pole_witness(std::string& detail) {
    auto s2 = coeffs::sym_power_delta_series(2);
    auto z = coeffs::zeta_series();
    auto rep = analytic::quotient_pole_report(s2, z, 14.0, 22.0);
    int certified = 0;
    for (auto& e : rep.entries)
        if (e.certified) ++certified;
    if (rep.entries.size() < 2 || certified < 2) {
        detail = "certified " + std::to_string(certified) + " of " +
                 std::to_string(rep.entries.size());
        return false;
    }
    bool near1 = std::abs(rep.entries[0].t - 14.1347) < 1e-3;
    bool near2 = std::abs(rep.entries[1].t - 21.0220) < 1e-3;
    if (!near1 || !near2) { detail = "pole ordinates off"; return false; }
    char buf[160];
    std::snprintf(buf, sizeof buf, "poles at %.4f, %.4f; |Lambda| margin ratio %.1e / %.1e",
                  rep.entries[0].t, rep.entries[1].t, rep.entries[0].num_abs, rep.margin);
    detail = buf;
    return true;
}

bool crit9_whittaker(std::string& detail) {
    std::mt19937 rng(0x817);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    std::uniform_int_distribution<int> Udeg(0, 5), Ue(0, 1), Uk(0, 5);
    for (int trial = 0; trial < 200; ++trial) {
        arch::GL2ArchType rep;
        if (trial % 3 == 2) {
            rep = arch::DiscreteSeries{1 + 2 * Uk(rng), U(rng)};
        } else {
            Cx nu = (trial % 2 == 0) ? Cx(0.0, U(rng)) : Cx(0.24 * U(rng), 0.0);
            rep = arch::PrincipalSeries{Ue(rng), Ue(rng), nu, U(rng), U(rng)};
        }
        int deg = Udeg(rng);
        std::vector<Cx> cs(deg + 1);
        for (auto& c : cs) c = Cx(U(rng), U(rng));
        if (std::abs(cs[deg]) < 0.1) cs[deg] = Cx(1.0, 0.0);
        Poly P(cs);
        auto w = whittaker::test_vector(rep, P);
        auto L = arch::gl2_arch_factor(rep, 0);
        for (int pt = 0; pt < 20; ++pt) {
            Cx s(2.0, 1.5 * U(rng));
            Cx lhs = whittaker::eval_test_vector(w, s);
            Cx rhs = P.eval(s) * arch::eval_arch(L, s);
            if (rel_err(lhs, rhs) > 1e-9) {
                detail = "identity residual at trial " + std::to_string(trial);
                return false;
            }
        }
    }
    // degree laws at the minimal cases
    arch::GL2ArchType c1{arch::PrincipalSeries{0, 0, Cx(0.0, 0.37), 0.1, -0.1}};
    arch::GL2ArchType c2{arch::PrincipalSeries{1, 1, Cx(0.0, 0.37), 0.1, -0.1}};
    arch::GL2ArchType c3{arch::PrincipalSeries{1, 0, Cx(0.0, 0.37), 0.1, -0.1}};
    for (int n : {0, 2, 4, 6})
        if (whittaker::q_poly(c1, n).poly.degree() != n / 2) { detail = "case(1) degree law"; return false; }
    for (int n : {2, 4, 6})
        if (whittaker::q_poly(c2, n).poly.degree() != (n - 2) / 2) { detail = "case(2) degree law"; return false; }
    for (int n : {1, 3, 5})
        if (whittaker::q_poly(c3, n).poly.degree() != n / 2) { detail = "case(3) degree law"; return false; }
    detail = "200 random (rep, P), 20 points each; degree laws exact";
    return true;
}

bool crit10_partitions(std::string& detail) {
    using selberg::factorization_partitions;
    auto canon = [](const std::vector<selberg::DegreePartition>& ps) {
        std::set<std::vector<std::string>> out;
        for (auto& p : ps) {
            std::vector<std::string> parts;
            for (auto& x : p.parts) parts.push_back(x.str());
            std::sort(parts.begin(), parts.end());
            out.insert(parts);
        }
        return out;
    };
    if (canon(factorization_partitions(Rational(0))) !=
        std::set<std::vector<std::string>>{{}}) { detail = "d=0"; return false; }
    if (!factorization_partitions(Rational(3, 2)).empty()) { detail = "d=3/2"; return false; }
    if (canon(factorization_partitions(Rational(1))) !=
        std::set<std::vector<std::string>>{{"1"}}) { detail = "d=1"; return false; }
    if (canon(factorization_partitions(Rational(2))) !=
        std::set<std::vector<std::string>>{{"2"}, {"1", "1"}}) { detail = "d=2"; return false; }
    if (canon(factorization_partitions(Rational(3))) !=
        std::set<std::vector<std::string>>{{"3"}, {"1", "2"}, {"1", "1", "1"}}) {
        detail = "d=3";
        return false;
    }
    // brute force for integer d <= 8: multisets with parts in {1} u {2,..}
    std::function<int(int, int)> count = [&](int rem, int mn) {
        if (rem == 0) return 1;
        int acc = 0;
        for (int p = mn; p <= rem; ++p) acc += count(rem - p, p);
        return acc;
    };
    for (int d = 0; d <= 8; ++d) {
        if ((int)factorization_partitions(Rational(d)).size() != count(d, 1)) {
            detail = "cardinality mismatch at d = " + std::to_string(d);
            return false;
        }
    }
    detail = "forced sets for d in {0, 3/2, 1, 2, 3}; counts match brute force to d = 8";
    return true;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"gamma-calculus closure on 1000 random degree-2 quotients", 30.0, crit1_gamma_closure},
        {"paper case reproduction (Maass sym^2; even-weight sym^2/zeta)", 30.0, crit2_paper_cases},
        {"Stirling profile constants and 10/sigma envelope", 5.0, crit3_stirling},
        {"Gauss sums q <= 100 and coprime epsilon products <= 60", 10.0, crit4_characters},
        {"functional-equation residuals < 1e-8 at 20 strip points", 60.0, crit5_fe_residuals},
        {"Lambda_zeta(2) = pi/6 and the s -> 1-s reflection", 30.0, crit6_completed_values},
        {"zeta zero ordinates on [10, 26]", 120.0, crit7_zero_scan},
        {"certified poles of sym^2 Delta / zeta on [14, 22]", 600.0, crit8_pole_witness},
        {"Whittaker test-vector identity, 200 random (rep, P)", 20.0, crit9_whittaker},
        {"degree factorization partitions", 30.0, crit10_partitions},
    };
    for (size_t i = 0; i < criteria.size(); ++i) run_criterion((int)i + 1, criteria[i]);
    if (g_failures) {
        std::printf("acceptance: %d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    return 0;
}
