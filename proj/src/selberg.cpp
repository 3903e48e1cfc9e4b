#include "archimedea/selberg.hpp"

#include <cmath>

#include "archimedea/errors.hpp"

namespace archimedea::selberg {

namespace {

bool g3_ok(const arch::GammaAtom& a) {
    if (auto sh = a.shift_exact()) return -sh->re < Rational(1, 2);
    return (-a.mu / a.lambda.value()).real() < 0.5;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t k = 2; k <= n; ++k) {
        bool isp = true;
        for (std::uint64_t d = 2; d * d <= k; ++d)
            if (k % d == 0) { isp = false; break; }
        if (isp) ps.push_back(k);
    }
    return ps;
}

} // namespace

AxiomReport axiom_report(const FEData& fe, std::uint64_t N) {
    if (N < 100) fail("invalid-argument", "axiom_report needs N >= 100");
    AxiomReport r;

    // (G3), exact
    r.g3 = CheckStatus::pass;
    for (auto& a : fe.arch.num)
        if (!g3_ok(a)) { r.g3 = CheckStatus::fail; r.g3_witness = a; break; }
    if (r.g3 == CheckStatus::pass)
        for (auto& a : fe.arch.den)
            if (!g3_ok(a)) { r.g3 = CheckStatus::fail; r.g3_witness = a; break; }

    const auto& s = *fe.series;

    // (G1): slope of log sum |a_n| against log x
    double s_half = 0.0, s_full = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        double v = std::abs(s.a(n));
        if (n <= N / 2) s_half += v;
        s_full += v;
    }
    r.sigma_a_estimate = std::log(std::max(s_full, 1e-30) / std::max(s_half, 1e-30)) / std::log(2.0);
    r.g1 = r.sigma_a_estimate <= 1.05 ? CheckStatus::heuristic_pass : CheckStatus::heuristic_fail;

    // (G4): log F_p = sum b_{p^k} p^{-ks}, b_{p^k} = sum_i alpha_i^k / k
    r.theta_estimate = 0.0;
    r.g4 = CheckStatus::heuristic_pass;
    r.js_bound = CheckStatus::pass;
    double js_limit_exp = 0.5 - 1.0 / (double(s.degree) * s.degree + 1.0);
    for (auto p : primes_up_to(std::min<std::uint64_t>(N, 97))) {
        auto lf = s.local_factor(p);
        for (auto& al : lf.inverse_roots) {
            if (std::abs(al) >= std::pow((double)p, js_limit_exp) + 1e-9 &&
                r.js_bound == CheckStatus::pass) {
                r.js_bound = CheckStatus::fail;
                r.js_prime = p;
                r.js_alpha = al;
            }
        }
        for (int k = 1; k <= 4; ++k) {
            Complex b = 0.0;
            for (auto& al : lf.inverse_roots) b += std::pow(al, (double)k);
            b /= (double)k;
            double mag = std::abs(b) * k / std::max(1, s.degree);
            if (mag > 1.0)
                r.theta_estimate = std::max(r.theta_estimate, std::log(mag) / (k * std::log((double)p)));
        }
    }
    if (r.theta_estimate >= 0.5) r.g4 = CheckStatus::heuristic_fail;
    return r;
}

namespace {

void emit_partition(const std::vector<Rational>& parts, std::vector<DegreePartition>& out) {
    DegreePartition p;
    p.parts = parts;
    for (auto& part : p.parts)
        p.annotations.push_back(part == Rational(1) ? "shifted Dirichlet L" : "");
    out.push_back(std::move(p));
}

// Parts are 1 or >= 2 (the proved exclusions (0,1) and (1,2)); integer parts
// are enumerated non-decreasing, and a non-integer degree closes with its
// unique fractional remainder when that remainder is >= 2.
void enumerate_parts(const Rational& rem, long long min_int, std::vector<Rational>& cur,
                     std::vector<DegreePartition>& out) {
    if (rem == Rational(0)) {
        emit_partition(cur, out);
        return;
    }
    if (!rem.is_integer() && rem >= Rational(2)) {
        cur.push_back(rem);
        emit_partition(cur, out);
        cur.pop_back();
    }
    for (long long p = std::max(min_int, 1LL); Rational(p) <= rem; ++p) {
        cur.push_back(Rational(p));
        enumerate_parts(rem - Rational(p), p, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<DegreePartition> factorization_partitions(const Rational& d) {
    if (d < Rational(0)) fail("invalid-argument", "degree must be nonnegative");
    std::vector<DegreePartition> out;
    std::vector<Rational> cur;
    enumerate_parts(d, 1, cur, out);
    return out;
}

ObstructionReport primitivity_obstruction(const FEData& fe) {
    if (arch::degree(fe.arch) != Rational(3))
        fail("wrong-degree", "primitivity obstruction applies to degree 3, got " +
                                 arch::degree(fe.arch).str());
    std::string label = fe.series ? fe.series->label : "F";
    ObstructionReport rep;
    {
        ObstructionShape s;
        s.partition = {Rational(1), Rational(2)};
        s.quotient = "L(s," + label + ") / L(s+iA,chi) for a primitive Dirichlet character chi and real A";
        s.jobs.push_back({"reduce_quotient",
                          "arch(" + label + ") / Gamma_R(s+iA+eps(chi)); verdict must be "
                          "FinitelyManyZeros for the shape to survive"});
        s.jobs.push_back({"quotient_pole_report",
                          "num=" + label + ", den=dirichlet_l(chi) shifted by iA on a critical-strip "
                          "window; certified poles refute the shape"});
        rep.shapes.push_back(std::move(s));
    }
    {
        ObstructionShape s;
        s.partition = {Rational(1), Rational(1), Rational(1)};
        s.quotient = "L(s," + label +
                     ") / L(s+iA,chi), leaving a degree-2 product of two shifted Dirichlet L";
        s.jobs.push_back({"reduce_quotient",
                          "arch(" + label + ") / Gamma_R(s+iA+eps(chi)); classification of the "
                          "surviving degree-2 factor"});
        s.jobs.push_back({"quotient_pole_report",
                          "num=" + label + ", den=dirichlet_l(chi) shifted by iA; certified poles "
                          "refute the shape"});
        rep.shapes.push_back(std::move(s));
    }
    return rep;
}

} // namespace archimedea::selberg
