#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "archimedea/arch_expr.hpp"
#include "archimedea/coeffs.hpp"
#include "archimedea/log_gamma.hpp"

namespace archimedea::analytic {

struct QuadratureSpec {
    // absolute contour abscissa when nonzero, else max(0, re s) + 1 + degree/4 + theta
    double contour_offset = 0.0;
    double step = 0.05;        // trapezoid step h on the vertical line
    double truncation = 0.0;   // T; 0 grows it until the tail is below target_error
    double target_error = 1e-12;
};

// K_inc(y; s) = (1/2 pi i) int_{re w = c} gamma(w) y^{-w} / (w - s) dw,
// gamma = the (denominator-free) archimedean expression. Single Gamma_R /
// Gamma_C factors take the incomplete-gamma closed form; everything else the
// vertical-line trapezoid with cached contour samples.
Complex incomplete_kernel(const arch::ArchExpr& a, double y, Complex s, const QuadratureSpec& q);

// the quadrature route unconditionally (oracle for the closed forms)
Complex incomplete_kernel_quadrature(const arch::ArchExpr& a, double y, Complex s,
                                     const QuadratureSpec& q);

// Lambda(s) = N^{s/2} gamma(s) F(s) via the split representation
//   Lambda(s) = sum a_n K(n/Q; s) + omega sum conj-a_n K~(n/Q; 1-s)
//               - sum_poles res/(beta - s).
Complex completed_eval(const coeffs::CoefficientSeries& series, Complex s, std::uint64_t N,
                       const QuadratureSpec& q);

// grows N until the tail estimate is below target_error
Complex completed_eval_auto(const coeffs::CoefficientSeries& series, Complex s,
                            const QuadratureSpec& q = {});

// |Lambda(s) - omega Lambda~(1-s)| / (|Lambda(s)| + |Lambda~(1-s)| + 1e-30)
double fe_residual(const coeffs::CoefficientSeries& series, Complex s);

// Ordinates of zeros of the rotated completed function on re(s) = 1/2,
// located by sign change and refined by bisection to 1e-6.
std::vector<double> scan_zeros(const coeffs::CoefficientSeries& series, double t0, double t1,
                               double step);

struct PoleReport {
    struct Entry {
        double t;
        int den_zero_order;
        double num_abs;
        bool certified;
    };
    std::vector<Entry> entries;
    double grid_max = 0.0;     // max |Lambda_num| on the scanned grid
    double margin = 0.0;       // certification threshold used
};

// For each zero t of den on [t0, t1], reports |Lambda_num(1/2 + i t)|;
// certifies a pole of num/den when it clears the margin.
PoleReport quotient_pole_report(const coeffs::CoefficientSeries& num,
                                const coeffs::CoefficientSeries& den, double t0, double t1);

} // namespace archimedea::analytic
