#pragma once

#include <variant>

#include "archimedea/arch_expr.hpp"

namespace archimedea::arch {

// Classified archimedean GL(2) datum.
// PrincipalSeries: Gamma_R(s+eps1+nu+i b1) Gamma_R(s+eps2-nu+i b2), re(nu) in (-1/2,1/2).
// DiscreteSeries:  Gamma_C(s+(k-1)/2+i b3), k >= 1.
struct PrincipalSeries {
    int eps1 = 0, eps2 = 0;
    Complex nu{0.0, 0.0};
    double b1 = 0.0, b2 = 0.0;
};

struct DiscreteSeries {
    int k = 1;
    double b3 = 0.0;
};

using GL2ArchType = std::variant<PrincipalSeries, DiscreteSeries>;

struct FinitelyManyZeros {
    GL2ArchType gl2;
    PolyRatio ratio;
    Prefactor prefactor;
};

struct InfinitelyManyZeros {
    GammaAtom witness;  // uncancellable denominator atom
};

using ReductionVerdict = std::variant<FinitelyManyZeros, InfinitelyManyZeros>;

// Cancels every denominator gamma against a lattice-compatible numerator one
// (recurrence steps become polynomial factors, Gamma_R <-> Gamma_C via the
// duplication formula) and classifies the surviving degree-2 product as a
// GL(2) archimedean factor. A denominator atom with no admissible partner is
// returned as the witness of infinitely many zeros.
ReductionVerdict reduce_quotient(const ArchExpr& expr);

// For a DiscreteSeries verdict, absorbs ratio roots sitting at the rightmost
// pole of L(s-1,tau) (denominator side, k -> k-2) or of L(s,tau) (numerator
// side, k -> k+2) into the Gamma_C shift, with exact prefactor updates.
ReductionVerdict normalize_rational(const ReductionVerdict& v);

// expr(s)/prefactor(s) = D * Kprime^s * Gamma(s+mu) (1 + c1/(s+mu) + O(s^-2))
// as re(s) -> +infinity. Requires sum(lambda_num) - sum(lambda_den) = 1.
struct StirlingProfile {
    Complex D;
    double Kprime;
    Complex mu;
    Complex c1;
};

StirlingProfile stirling_profile(const ArchExpr& expr);

// The archimedean L-factor of the classified type, parity-twisted by eps_chi.
ArchExpr gl2_arch_factor(const GL2ArchType& t, int eps_chi = 0);

// i^{eps1+eps2} (principal series) or i^k (discrete series); independent of
// the twisting character.
Complex gl2_eps_constant(const GL2ArchType& t);

GL2ArchType contragredient(const GL2ArchType& t);

// prefactor(s) * ratio(s) * L(s, gl2) for a FinitelyManyZeros verdict.
Complex eval_verdict(const ReductionVerdict& v, Complex s);

std::string gl2_display(const GL2ArchType& t);

} // namespace archimedea::arch
