#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "archimedea/arch_expr.hpp"
#include "archimedea/coeffs.hpp"

namespace archimedea::selberg {

// Functional-equation data as claimed for an axiom audit.
struct FEData {
    double Q = 1.0;
    Complex omega{1.0, 0.0};
    arch::ArchExpr arch;
    int pole_poly_degree = 0;  // degree m of the polynomial P(s) clearing the poles
    std::shared_ptr<const coeffs::CoefficientSeries> series;
    double theta = 0.0;        // claimed non-archimedean exponent
    double sigma_a_claim = 1.0;
};

enum class CheckStatus { pass, fail, heuristic_pass, heuristic_fail };

struct AxiomReport {
    CheckStatus g1;  // sigma_a <= 1, estimated from partial sums
    double sigma_a_estimate = 0.0;
    CheckStatus g3;  // re(-mu/lambda) < 1/2 on every atom, exact
    std::optional<arch::GammaAtom> g3_witness;
    CheckStatus g4;  // theta < 1/2, estimated from log-Euler coefficients
    double theta_estimate = 0.0;
    CheckStatus js_bound;  // |alpha_i(p)| < p^{1/2 - 1/(n^2+1)}
    std::uint64_t js_prime = 0;
    Complex js_alpha{0.0, 0.0};
};

// G3 decided exactly from the atoms; G1/G4 labeled heuristic since they are
// read off finitely many coefficients.
AxiomReport axiom_report(const FEData& fe, std::uint64_t N);

// Part multisets of degree-d factorizations permitted by the classification
// theorems: no zero parts, nothing in (0,1) or (1,2). Degree-1 parts are the
// shifted Dirichlet L-functions.
struct DegreePartition {
    std::vector<Rational> parts;
    std::vector<std::string> annotations;  // parallel to parts
};
std::vector<DegreePartition> factorization_partitions(const Rational& d);

// Refutation jobs for a claimed factorization of a degree-3 L-function: each
// nontrivial shape names the degree-2 quotient whose pole count decides it.
struct RefutationJob {
    std::string operation;    // "reduce_quotient" | "quotient_pole_report"
    std::string description;
};
struct ObstructionShape {
    std::vector<Rational> partition;
    std::string quotient;  // the F2 the shape would force
    std::vector<RefutationJob> jobs;
};
struct ObstructionReport {
    std::vector<ObstructionShape> shapes;
};
ObstructionReport primitivity_obstruction(const FEData& fe);

} // namespace archimedea::selberg
