#ifndef HALFINT_SPECFUN_HPP
#define HALFINT_SPECFUN_HPP

#include <complex>

namespace halfint {

using cplx = std::complex<double>;

// log Gamma on C (Lanczos, principal branch away from the negative reals)
cplx lgamma_cplx(cplx z);
cplx gamma_cplx(cplx z);

// J_nu for half-integral nu = nu_num/2 (nu_num odd positive), x > 0.
// Spherical closed forms with the recurrence run in its stable direction.
double bessel_J_halfint(long long nu_num, double x);

// K_s(x) for x > 0, s complex (the uses here have |Re s| < 1/2 or s purely
// imaginary), via the cosh integral with an explicit truncation bound.
cplx bessel_K(cplx s, double x);

// K_s evaluated at the purely imaginary argument sign * i * w, w > 0,
// by rotating the contour of the cosh integral.
cplx bessel_K_imag_arg(cplx s, double w, int sign);

// Whittaker W_{kappa, mu}(x), x > 0, via the Kummer-U integral
// representation plus the three-term recurrence in the first parameter.
cplx whittaker_W(cplx kappa, cplx mu, double x);

// Kummer U(a, b, x) for x > 0 (same machinery, exposed for tests)
cplx kummer_U(cplx a, cplx b, double x);

} // namespace halfint

#endif
