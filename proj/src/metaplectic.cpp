#include "halfint/metaplectic.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace halfint {

Mat22 Mat22::inverse() const {
    Rational dt = det();
    if (dt.is_zero()) throw std::domain_error("Mat22: singular");
    return {d / dt, -b / dt, -c / dt, a / dt};
}

Rational ell(const Mat22& g) {
    return g.c.is_zero() ? g.d : g.c;
}

int s_local(const Mat22& g, const Place& v) {
    if (g.det().is_zero()) throw std::domain_error("s_local: singular matrix");
    if (v.tag == Place::Tag::global) throw std::domain_error("s_local: place must be local");
    if (v.tag == Place::Tag::real) return 1;
    if (g.c.is_zero() || g.d.is_zero()) return 1;
    if (padic_val(g.c, v.p) % 2 == 0) return 1;
    return hilbert_padic(g.c, g.d * g.det(), v.p);
}

int beta_local(const Mat22& g1, const Mat22& g2, const Place& v) {
    if (v.tag == Place::Tag::global) throw std::domain_error("beta_local: place must be local");
    Mat22 g12 = g1 * g2;
    Rational x = ell(g12) / ell(g1);
    Rational y = ell(g12) / ell(g2) * g1.det();
    int h = (v.tag == Place::Tag::real) ? hilbert_real(x, y) : hilbert_padic(x, y, v.p);
    return h * s_local(g1, v) * s_local(g2, v) * s_local(g12, v);
}

MetaElement meta_mul(const MetaElement& x, const MetaElement& y) {
    if (!(x.place == y.place)) throw std::domain_error("meta_mul: place mismatch");
    if (x.place.tag == Place::Tag::global) throw std::domain_error("meta_mul: use the local cover");
    return {x.g * y.g, beta_local(x.g, y.g, x.place) * x.eps * y.eps, x.place};
}

namespace {

void collect_primes(const Rational& x, std::set<long long>& out) {
    if (x.is_zero()) return;
    for (long long p : prime_factors(x.num)) out.insert(p);
    for (long long p : prime_factors(x.den)) out.insert(p);
}

// {2} together with primes of entries, det, and ell-values: outside this
// set every s_v and beta_v below is 1
std::set<long long> relevant_primes(const Mat22& g1) {
    std::set<long long> ps{2};
    collect_primes(g1.a, ps); collect_primes(g1.b, ps);
    collect_primes(g1.c, ps); collect_primes(g1.d, ps);
    collect_primes(g1.det(), ps); collect_primes(ell(g1), ps);
    return ps;
}

} // namespace

int s_global(const Mat22& gamma) {
    if (gamma.det().is_zero()) throw std::domain_error("s_global: singular matrix");
    int s = 1;
    for (long long p : relevant_primes(gamma)) s *= s_local(gamma, Place::padic(p));
    return s;   // real place contributes 1
}

int beta_global(const Mat22& g1, const Mat22& g2) {
    std::set<long long> ps = relevant_primes(g1);
    for (long long p : relevant_primes(g2)) ps.insert(p);
    for (long long p : relevant_primes(g1 * g2)) ps.insert(p);
    int b = beta_local(g1, g2, Place::real());
    for (long long p : ps) b *= beta_local(g1, g2, Place::padic(p));
    return b;
}

MetaElement lift_global(const Mat22& gamma) {
    return {gamma, s_global(gamma), Place::global()};
}

cplx sqrt_branch(cplx z) {
    if (z == cplx(0, 0)) return {0, 0};
    double th = std::arg(z);           // (-pi, pi]
    return std::sqrt(std::abs(z)) * std::polar(1.0, th / 2.0);
}

cplx theta_multiplier(const Mat22& gamma, cplx z) {
    if (!(gamma.det() == Rational(1)) || !gamma.a.is_integer() || !gamma.b.is_integer() ||
        !gamma.c.is_integer() || !gamma.d.is_integer() || gamma.c.num % 4 != 0)
        throw std::domain_error("theta_multiplier: gamma must lie in Gamma_0(4)");
    if (z.imag() <= 0) throw std::domain_error("theta_multiplier: need Im z > 0");
    long long c = gamma.c.num, d = gamma.d.num;
    cplx eps_bar = std::conj(eps_d(d));
    // c Re z + d cancels catastrophically near the real axis; carry the
    // linear form in extended precision
    std::complex<long double> czd = (long double)c * std::complex<long double>(z) + (long double)d;
    return eps_bar * (double)kronecker_shimura(c, d) * sqrt_branch(cplx((double)czd.real(), (double)czd.imag()));
}

cplx theta_series(cplx z, double tol) {
    if (z.imag() <= 0) throw std::domain_error("theta_series: need Im z > 0");
    cplx s(1, 0);
    const double y = z.imag();
    for (long long n = 1;; ++n) {
        cplx term = std::exp(cplx(0, 2 * M_PI) * ((double)(n * n) * z));
        s += 2.0 * term;
        if (std::exp(-2 * M_PI * y * (double)(n * n)) < tol && n > 2) break;
        if (n > 100000) break;
    }
    return s;
}

} // namespace halfint
