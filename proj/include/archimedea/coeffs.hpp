#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "archimedea/arch_expr.hpp"
#include "archimedea/characters.hpp"

namespace archimedea::coeffs {

using Complex = std::complex<double>;

// Euler factor at p as its inverse roots: L_p(s) = prod_i (1 - alpha_i p^{-s})^{-1}.
struct LocalFactor {
    std::uint64_t prime = 2;
    std::vector<Complex> inverse_roots;
    bool js_bound_ok = true;  // |alpha_i| < p^{1/2 - 1/(n^2+1)}
};

// Dirichlet-coefficient provider with functional-equation data.
// Completed convention: Lambda(s) = conductor^{s/2} * arch(s) * sum a_n n^{-s},
// Lambda(s) = omega * conj(Lambda(1 - conj(s))).
class CoefficientSeries {
public:
    std::string label;
    double conductor = 1.0;  // arithmetic conductor N; Q = sqrt(N)
    Complex omega{1.0, 0.0};
    bool fe_known = true;  // false: twisting/combining left no trusted FE data
    arch::ArchExpr arch_factor;
    std::vector<std::pair<Complex, Complex>> completed_poles;  // (location, residue) of Lambda
    // Poles inherited from a factor of a product: the residue is the factor's
    // residue times Lambda of the other factor, which the analytic layer
    // evaluates on demand.
    struct PendingPole {
        Complex location;
        Complex base_residue;
        std::shared_ptr<const CoefficientSeries> cofactor;
    };
    std::vector<PendingPole> pending_poles;
    double theta_bound = 0.0;
    int degree = 1;
    std::set<std::uint64_t> bad_primes;

    Complex a(std::uint64_t n) const;       // coefficients, memoized
    Complex a_dual(std::uint64_t n) const;  // contragredient coefficients

    bool self_dual() const;  // dual provider == provider (real coefficients)

    // Euler-product access; absent for non-Eulerian combinations.
    bool has_euler_product() const { return (bool)local_; }
    LocalFactor local_factor(std::uint64_t p) const;

    // internal wiring
    std::function<Complex(std::uint64_t)> coeff_fn;
    std::function<Complex(std::uint64_t)> dual_fn;  // empty: conj of coeff_fn
    std::function<std::vector<Complex>(std::uint64_t)> local_;  // inverse roots at p

    CoefficientSeries();

private:
    struct Memo;
    std::shared_ptr<Memo> memo_;
};

// zeta | dirichlet_l(chi) | delta | sym_power_delta(m), m <= 4
CoefficientSeries zeta_series();
CoefficientSeries dirichlet_l_series(const dirichlet::DirichletCharacter& chi);
CoefficientSeries delta_series();
CoefficientSeries sym_power_delta_series(int m);
CoefficientSeries builtin_series(const std::string& name);

std::vector<Complex> dirichlet_coeffs(const CoefficientSeries& s, std::uint64_t N);

CoefficientSeries twist(const CoefficientSeries& s, const dirichlet::DirichletCharacter& chi);

enum class SeriesOp { product, quotient };
CoefficientSeries combine(const CoefficientSeries& a, const CoefficientSeries& b, SeriesOp op);
CoefficientSeries partial(const CoefficientSeries& a, const std::set<std::uint64_t>& primes);

// Ramanujan tau via the eta^24 expansion (pentagonal series, then squarings).
// tau(1..N); the integer convolutions are exact, the doubles round once.
std::vector<double> ramanujan_tau(std::uint64_t N);
double ramanujan_tau_at(std::uint64_t n);

// Coefficient cache file: "# archimedea-coeffs v1 <label> <N>" then
// "n<TAB>re<TAB>im" with 17 significant digits.
void write_cache(const CoefficientSeries& s, std::uint64_t N, const std::string& path);
struct CacheFile {
    std::string label;
    std::uint64_t N;
    std::vector<Complex> values;  // values[i] = a_{i+1}
};
CacheFile read_cache(const std::string& path);

} // namespace archimedea::coeffs
