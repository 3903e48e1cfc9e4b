#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "archimedea/polynomial.hpp"
#include "archimedea/prefactor.hpp"
#include "archimedea/rational.hpp"

namespace archimedea::arch {

enum class AtomKind { GammaR, GammaC, Plain };

// One factor Gamma(lambda s + mu). Atoms built from Gamma_R / Gamma_C remember
// their origin so parity twisting is well defined; plain atoms are untwistable.
struct GammaAtom {
    Rational lambda{1};
    Complex mu{0.0, 0.0};
    std::optional<CRat> mu_exact;
    AtomKind kind = AtomKind::Plain;

    // normalized shift a = mu / lambda, the "a" of Gamma_R(s+a) / Gamma_C(s+a)
    Complex shift() const { return mu / lambda.value(); }
    std::optional<CRat> shift_exact() const {
        if (!mu_exact) return std::nullopt;
        Rational inv = Rational(1) / lambda;
        return CRat{mu_exact->re * inv, mu_exact->im * inv};
    }

    std::string display() const;
};

// prefactor(s) * prod Gamma(lambda s+mu) / prod Gamma(lambda' s+mu') * ratio(s)
struct ArchExpr {
    Prefactor pref;
    std::vector<GammaAtom> num;
    std::vector<GammaAtom> den;
    PolyRatio ratio;
};

enum class BuildKind { gamma_r, gamma_c, plain };
enum class CombineOp { mul, div };

ArchExpr build(BuildKind kind, const CRat& shift, Rational scale = Rational(1));
ArchExpr build(BuildKind kind, Complex shift, Rational scale = Rational(1));

ArchExpr combine(const ArchExpr& a, const ArchExpr& b, CombineOp op);

// d = 2 (sum lambda_num - sum lambda_den), exact; invariant under every
// rewrite in this module.
Rational degree(const ArchExpr& e);

// Flips the shift parity of every Gamma_R-origin atom by eps_chi (mod 2).
// Gamma_C atoms are untouched; a plain atom makes the twist undefined.
ArchExpr twist_parity(const ArchExpr& e, int eps_chi);

// Parity bit of a Gamma_R-origin atom: a = m + nu with re(nu) in (-1/2, 1/2],
// parity = m mod 2.
int atom_parity(const GammaAtom& atom);

Complex eval_arch(const ArchExpr& e, Complex s);

// Schwarz reflection: coefficients/shifts conjugated, so that
// eval(conjugate(e), s) == conj(eval(e, conj(s))).
ArchExpr conjugate(const ArchExpr& e);

} // namespace archimedea::arch
