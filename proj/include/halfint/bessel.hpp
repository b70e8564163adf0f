#ifndef HALFINT_BESSEL_HPP
#define HALFINT_BESSEL_HPP

#include <complex>
#include <functional>

#include "halfint/quadrature.hpp"
#include "halfint/specfun.hpp"

namespace halfint {

// Archimedean kernel selector.  Holomorphic(k) or Maass(s, k), epsilon the
// sign character index.  Holomorphic with epsilon = -1 is the zero kernel.
struct KernelSpec {
    enum class Arch { holomorphic, maass } arch = Arch::holomorphic;
    long long k = 1;
    cplx s{0.0, 0.0};       // Maass spectral parameter
    int sign = +1;          // epsilon

    static KernelSpec holomorphic(long long k, int sign) { return {Arch::holomorphic, k, {0, 0}, sign}; }
    static KernelSpec maass(cplx s, long long k, int sign) { return {Arch::maass, k, s, sign}; }
};

// unimodular-times-positive prefactor sqrt(2)(1-i) pi e^{-3 pi i k/2} / cos(pi k),
// computed from integer k (no floating-point powers)
cplx holomorphic_kernel_constant(long long k);

// the combination K_s((-1)^k 4 pi i x^{1/2}) - i K_s(-(-1)^k 4 pi i x^{1/2}),
// evaluated through the rotated-contour representation of K
cplx imagarg_K_combo(cplx s, double x, int k_parity);

// kernel value at x != 0, with the delta_{x>0} / delta_{x<0} support built in
cplx kernel_eval(const KernelSpec& spec, double x);

// a smooth function with compact support in (0, inf)
struct SupportedFunction {
    std::function<double(double)> f;
    double lo = 0, hi = 0;
};

struct HankelResult {
    cplx value{0, 0};
    double error = 0;
    bool converged = false;
    long long intervals = 0;
};

// [H F](alpha) = int_0^inf J(alpha y) F(y) dy over the support of F,
// adaptive quadrature with an interval budget
HankelResult hankel_transform(const SupportedFunction& F, const KernelSpec& spec,
                              double alpha, double tol,
                              long long max_intervals = 100000);

} // namespace halfint

#endif
