#include "halfint/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace halfint {

cplx holomorphic_kernel_constant(long long k) {
    // e^{-3 pi i k / 2} cycles with period 4; cos(pi k) = (-1)^k
    static const cplx cyc[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    long long r = ((k % 4) + 4) % 4;
    cplx e = cyc[r];
    double cospk = (k % 2 == 0) ? 1.0 : -1.0;
    return std::sqrt(2.0) * cplx(1, -1) * M_PI * e / cospk;
}

cplx imagarg_K_combo(cplx s, double x, int k_parity) {
    if (x <= 0) throw std::domain_error("imagarg_K_combo: x must be positive");
    const double w = 4.0 * M_PI * std::sqrt(x);
    const int sig = (k_parity % 2 == 0) ? +1 : -1;
    return bessel_K_imag_arg(s, w, sig) - cplx(0, 1) * bessel_K_imag_arg(s, w, -sig);
}

namespace {

cplx cpow_i(cplx e, bool minus) {
    // (+-i)^e = exp(e log(+-i)) = exp(+- i pi e / 2), principal branch
    cplx ln = cplx(0, minus ? -M_PI / 2.0 : M_PI / 2.0);
    return std::exp(e * ln);
}

} // namespace

cplx kernel_eval(const KernelSpec& spec, double x) {
    if (x == 0) throw std::domain_error("kernel_eval: x must be nonzero");
    if (spec.arch == KernelSpec::Arch::holomorphic) {
        if (spec.sign < 0) return {0, 0};              // zero kernel
        if (x < 0) return {0, 0};                      // delta_{x>0}
        double j = bessel_J_halfint(2 * spec.k - 1, 4.0 * M_PI * std::sqrt(x));
        return holomorphic_kernel_constant(spec.k) * j / std::sqrt(x);
    }
    // Maass
    const cplx s = spec.s;
    if (spec.sign > 0) {
        if (x < 0) return {0, 0};
        return 2.0 / std::sqrt(x) * imagarg_K_combo(s, x, (int)(spec.k % 2));
    }
    if (x > 0) return {0, 0};                          // delta_{x<0}
    const double ax = -x;
    cplx Ks = bessel_K(s, 4.0 * M_PI * std::sqrt(ax));
    cplx bracket, ratio;
    if (spec.k % 2 == 0) {
        bracket = cpow_i(-s - 1.0, true) - cpow_i(-s, false);   // (-i)^{-s-1} - i^{-s}
        ratio = std::exp(lgamma_cplx((1.0 + s) / 2.0 - (double)spec.k / 2.0 - (double)spec.k / 4.0)
                       - lgamma_cplx((1.0 + s) / 2.0 + (double)spec.k / 2.0 + (double)spec.k / 4.0));
    } else {
        bracket = cpow_i(-s - 1.0, false) + cpow_i(-s, true);                            // i^{-s-1} + (-i)^{-s}
        ratio = std::exp(lgamma_cplx((1.0 + s) / 2.0 + (double)spec.k / 2.0 + (double)spec.k / 4.0)
                       - lgamma_cplx((1.0 + s) / 2.0 - (double)spec.k / 2.0 - (double)spec.k / 4.0));
    }
    return 2.0 / std::sqrt(ax) * bracket * ratio * Ks;
}

HankelResult hankel_transform(const SupportedFunction& F, const KernelSpec& spec,
                              double alpha, double tol,
                              long long max_intervals) {
    if (alpha == 0) throw std::domain_error("hankel_transform: alpha must be nonzero");
    if (!(F.lo > 0) || !(F.hi > F.lo))
        throw std::domain_error("hankel_transform: support must lie in (0, inf)");
    if (tol <= 0) throw std::domain_error("hankel_transform: tol must be positive");

    // identically-zero kernel: skip the quadrature
    if (spec.arch == KernelSpec::Arch::holomorphic && spec.sign < 0)
        return {cplx(0, 0), 0.0, true, 0};
    // sign support: alpha*y keeps the sign of alpha on y > 0
    if ((spec.sign > 0 && alpha < 0) || (spec.sign < 0 && alpha > 0))
        return {cplx(0, 0), 0.0, true, 0};

    auto f = [&](double y) -> cplx {
        double v = F.f(y);
        if (v == 0.0) return {0, 0};
        return kernel_eval(spec, alpha * y) * v;
    };
    QuadResult q = gk15_adaptive(f, F.lo, F.hi, tol, 1e-13, max_intervals);
    HankelResult r;
    r.value = q.value;
    r.error = q.error;
    r.converged = q.converged;
    r.intervals = q.intervals;
    if (!r.converged && q.error > tol)
        return r;   // caller decides; flag carries the verdict
    return r;
}

} // namespace halfint
