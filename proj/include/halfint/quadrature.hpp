#ifndef HALFINT_QUADRATURE_HPP
#define HALFINT_QUADRATURE_HPP

#include <complex>
#include <functional>

namespace halfint {

using cplx = std::complex<double>;

struct QuadResult {
    cplx value{0.0, 0.0};
    double error = 0.0;        // estimate
    long long intervals = 0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod (G7, K15) for complex-valued integrands on [a, b].
// Splits the worst interval until the summed error estimate drops below
// max(abs_tol, rel_tol * |value|) or the interval budget is exhausted.
QuadResult gk15_adaptive(const std::function<cplx(double)>& f, double a, double b,
                         double abs_tol, double rel_tol = 1e-12,
                         long long max_intervals = 100000);

// single K15 panel with embedded G7 error estimate
QuadResult gk15_panel(const std::function<cplx(double)>& f, double a, double b);

} // namespace halfint

#endif
