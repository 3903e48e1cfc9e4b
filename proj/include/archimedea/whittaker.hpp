#pragma once

#include <map>

#include "archimedea/polynomial.hpp"
#include "archimedea/reduction.hpp"

namespace archimedea::whittaker {

using arch::GL2ArchType;

// K-finite Whittaker data: coefficients c_n on the vectors W_n, n of the
// parity of the representation.
struct WhittakerCoeffs {
    GL2ArchType rep;
    std::map<int, Complex> entries;
};

struct QPoly {
    Poly poly;          // monic
    Complex prefactor;  // nonzero leading constant
};

// Psi(s, W_n) = prefactor * poly(s) * L(s, tau) as meromorphic functions.
// Principal series: the binomial sum of Gamma((s+nu1+m)/2) Gamma((s+nu2+n-m)/2)
// over m of the parity of eps1, divided by the L-factor via the recurrence.
// Discrete series: the Gamma_C recurrence ladder starting at n = k.
QPoly q_poly(const GL2ArchType& rep, int n);

// smallest n for which W_n contributes (eps1+eps2 resp. k)
int min_index(const GL2ArchType& rep);

// Psi(s, W_n) itself
Complex psi_value(const GL2ArchType& rep, int n, Complex s);

// Triangular solve: coefficients c_n with sum c_n Psi(s, W_n) = P(s) L(s, tau).
WhittakerCoeffs test_vector(const GL2ArchType& rep, const Poly& P);

Complex eval_test_vector(const WhittakerCoeffs& w, Complex s);

// (archimedean L-factor twisted by parity eps_chi, epsilon constant)
std::pair<arch::ArchExpr, Complex> gl2_l_and_eps(const GL2ArchType& rep, int eps_chi);

// lhs: the double integral of e^{-a(t+1/t)/2} t^nu a^s (normalized measure),
// rhs: 2^{s-2} Gamma((s+nu)/2) Gamma((s-nu)/2). Requires re(s) > |re(nu)|.
std::pair<Complex, Complex> mellin_bessel_check(Complex nu, Complex s);

} // namespace archimedea::whittaker
