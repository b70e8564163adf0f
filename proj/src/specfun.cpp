#include "halfint/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "halfint/quadrature.hpp"

namespace halfint {

namespace {

// Lanczos g = 7, n = 9
const double lanczos_c[9] = {
    0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,  12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

cplx lgamma_core(cplx z) {
    // for Re z >= 0.5
    z -= 1.0;
    cplx x = lanczos_c[0];
    for (int i = 1; i < 9; ++i) x += lanczos_c[i] / (z + (double)i);
    cplx t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

} // namespace

cplx lgamma_cplx(cplx z) {
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(M_PI) - std::log(std::sin(M_PI * z)) - lgamma_core(1.0 - z);
    }
    return lgamma_core(z);
}

cplx gamma_cplx(cplx z) { return std::exp(lgamma_cplx(z)); }

// ------------------------------------------------------------------
// half-integral J via spherical Bessel functions
// ------------------------------------------------------------------

namespace {

double sph_j0(double x) { return x == 0 ? 1.0 : std::sin(x) / x; }
double sph_j1(double x) { return x == 0 ? 0.0 : std::sin(x) / (x * x) - std::cos(x) / x; }

// j_n by series, for small x
double sph_series(long long n, double x) {
    // j_n(x) = x^n / (2n+1)!! * sum_m (-x^2/2)^m / (m! (2n+3)(2n+5)...(2n+2m+1))
    double dfact = 1.0;
    for (long long i = 3; i <= 2 * n + 1; i += 2) dfact *= (double)i;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 40; ++m) {
        term *= -(x * x / 2.0) / ((double)m * (double)(2 * n + 2 * m + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return std::pow(x, (double)n) / dfact * sum;
}

double sph_jn(long long n, double x) {
    if (n == 0) return sph_j0(x);
    if (n == 1) return sph_j1(x);
    if (x < 0.1 || (double)n > 1.3 * x + 8.0) {
        if (x < 0.5 * std::sqrt((double)n)) return sph_series(n, x);
        // Miller's downward recurrence, normalised by j_0
        long long start = n + 16 + (long long)(1.2 * x);
        double jp1 = 0.0, j = 1e-300;
        double target = 0.0;
        for (long long m = start; m >= 1; --m) {
            double jm1 = (double)(2 * m + 1) / x * j - jp1;
            jp1 = j;
            j = jm1;
            if (m - 1 == n) target = jp1;
            if (std::abs(j) > 1e250) {   // rescale to avoid overflow
                j *= 1e-200; jp1 *= 1e-200; target *= 1e-200;
            }
        }
        if (n == 0) target = j;
        return target * (sph_j0(x) / j);
    }
    // upward recurrence is stable for n < x
    double jm1 = sph_j0(x), j = sph_j1(x);
    for (long long m = 1; m < n; ++m) {
        double jp1 = (double)(2 * m + 1) / x * j - jm1;
        jm1 = j;
        j = jp1;
    }
    return j;
}

} // namespace

double bessel_J_halfint(long long nu_num, double x) {
    if (nu_num <= 0 || nu_num % 2 == 0)
        throw std::domain_error("bessel_J_halfint: nu must be a positive half-integer");
    if (x <= 0) throw std::domain_error("bessel_J_halfint: x must be positive");
    long long n = (nu_num - 1) / 2;          // nu = n + 1/2
    return std::sqrt(2.0 * x / M_PI) * sph_jn(n, x) / 1.0;
}

// ------------------------------------------------------------------
// K Bessel
// ------------------------------------------------------------------

cplx bessel_K(cplx s, double x) {
    if (x <= 0) throw std::domain_error("bessel_K: x must be positive");
    const double sre = std::abs(s.real());
    // truncate where the integrand has dropped 42 e-folds below its t = 0 peak
    double T = 1.0;
    const double L = x + 42.0 + std::max(0.0, -std::log(x));
    while (x * std::cosh(T) - sre * T < L && T < 80.0) T += 0.5;
    auto f = [&](double t) -> cplx { return std::exp(-x * std::cosh(t)) * std::cosh(s * t); };
    QuadResult q = gk15_adaptive(f, 0.0, T, 1e-300, 1e-13, 4000);
    return q.value;
}

cplx bessel_K_imag_arg(cplx s, double w, int sign) {
    if (w <= 0) throw std::domain_error("bessel_K_imag_arg: w must be positive");
    if (sign != 1 && sign != -1) throw std::domain_error("bessel_K_imag_arg: sign must be +-1");
    // K_s(z) = (1/2) sum_{pm} int_0^inf e^{-z cosh t} e^{pm s t} dt, z = sign i w.
    // Rotate each ray to [0, -i sign pi/2] + [0, inf): on the vertical leg
    // z cosh(-i sign v) = i sign w cos v; on the horizontal leg
    // z cosh(u - i sign pi/2) = w sinh u, killing the oscillation.
    const cplx rot = cplx(0, -(double)sign);
    const double sre = std::abs(s.real());
    double U = 1.0;
    const double L = 42.0 + std::max(0.0, -std::log(w)) + sre * M_PI;
    while (w * std::sinh(U) - sre * U < L && U < 80.0) U += 0.5;
    cplx total(0, 0);
    for (int pm : {1, -1}) {
        cplx ss = (double)pm * s;
        auto leg1 = [&](double v) -> cplx {
            cplx t = rot * v;
            return std::exp(-cplx(0, (double)sign) * w * std::cos(v) + ss * t) * rot;
        };
        auto leg2 = [&](double u) -> cplx {
            cplx t = u + rot * (M_PI / 2.0);
            return std::exp(-w * std::sinh(u) + ss * t);
        };
        QuadResult q1 = gk15_adaptive(leg1, 0.0, M_PI / 2.0, 1e-13, 1e-11, 2000);
        QuadResult q2 = gk15_adaptive(leg2, 0.0, U, 1e-13, 1e-11, 2000);
        total += q1.value + q2.value;
    }
    return 0.5 * total;
}

// ------------------------------------------------------------------
// Whittaker W via Kummer U
// ------------------------------------------------------------------

namespace {

// U(a, b, x) for Re a > 0 by the Laplace integral
cplx kummer_U_integral(cplx a, cplx b, double x) {
    // 1/Gamma(a) int_0^inf e^{-x t} t^{a-1} (1+t)^{b-a-1} dt.
    // Integrable endpoint singularity t^{a-1}; split geometrically.
    cplx pref = std::exp(-lgamma_cplx(a));
    auto f = [&](double t) -> cplx {
        if (t <= 0) return {0, 0};
        return std::exp(-x * t + (a - 1.0) * std::log(t) + (b - a - 1.0) * std::log1p(t));
    };
    const double T = (42.0 + 8.0) / x + 40.0;
    cplx total(0, 0);
    double lo = 0.0, seg = 1e-7;
    while (lo < T) {
        double hi = std::min(lo + seg, T);
        QuadResult q = gk15_adaptive(f, lo, hi, 1e-17, 1e-14, 2000);
        total += q.value;
        lo = hi;
        seg *= 2.0;
    }
    return pref * total;
}

} // namespace

cplx kummer_U(cplx a, cplx b, double x) {
    if (x <= 0) throw std::domain_error("kummer_U: x must be positive");
    if (a.real() > 0.25) return kummer_U_integral(a, b, x);
    // shift a into the integral's half-plane, then recur back down:
    // U(a-1) = (2a - b + x) U(a) - a (a - b + 1) U(a+1)
    long long m = (long long)std::ceil(0.5 - a.real());
    cplx ah = a + (double)m;
    cplx cur = kummer_U_integral(ah, b, x);
    cplx nxt = kummer_U_integral(ah + 1.0, b, x);
    for (long long j = 0; j < m; ++j) {
        cplx av = ah - (double)j;
        cplx prev = (2.0 * av - b + x) * cur - av * (av - b + 1.0) * nxt;
        nxt = cur;
        cur = prev;
    }
    return cur;
}

cplx whittaker_W(cplx kappa, cplx mu, double x) {
    if (x <= 0) throw std::domain_error("whittaker_W: x must be positive");
    cplx a = mu - kappa + 0.5;
    cplx b = 1.0 + 2.0 * mu;
    return std::exp(-x / 2.0 + (mu + 0.5) * std::log(x)) * kummer_U(a, b, x);
}

} // namespace halfint
