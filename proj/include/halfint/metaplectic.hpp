#ifndef HALFINT_METAPLECTIC_HPP
#define HALFINT_METAPLECTIC_HPP

#include <complex>

#include "halfint/arith.hpp"
#include "halfint/rational.hpp"

namespace halfint {

// 2x2 matrix with exact rational entries
struct Mat22 {
    Rational a, b, c, d;

    static Mat22 identity() { return {1, 0, 0, 1}; }
    Rational det() const { return a * d - b * c; }
    friend Mat22 operator*(const Mat22& x, const Mat22& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend bool operator==(const Mat22& x, const Mat22& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    Mat22 inverse() const;
};

inline Mat22 mat_n(const Rational& x) { return {1, x, 0, 1}; }            // upper unipotent
inline Mat22 mat_nbar(const Rational& x) { return {1, 0, x, 1}; }         // lower unipotent
inline Mat22 mat_a(const Rational& y) { return {y, 0, 0, 1}; }            // diag(y, 1)
inline Mat22 mat_w() { return {0, 1, -1, 0}; }
inline Mat22 mat_z(const Rational& l) { return {l, 0, 0, l}; }

// a place of Q: the real place or a finite prime
struct Place {
    enum class Tag { real, padic, global } tag = Tag::real;
    long long p = 0;

    static Place real() { return {Tag::real, 0}; }
    static Place padic(long long p) { return {Tag::padic, p}; }
    static Place global() { return {Tag::global, 0}; }
    bool operator==(const Place& o) const { return tag == o.tag && p == o.p; }
};

// element (g, eps) of the two-fold cover at a tagged place
struct MetaElement {
    Mat22 g;
    int eps = 1;     // +-1
    Place place;
};

// l(g) = c if c != 0, else d
Rational ell(const Mat22& g);

// s(g): [c, d det(g)]_p when c d != 0, v_p(c) odd, at a finite place; 1 otherwise
int s_local(const Mat22& g, const Place& v);

// the cocycle beta(g1, g2) at a local place
int beta_local(const Mat22& g1, const Mat22& g2, const Place& v);

// (g1 g2, beta(g1,g2) eps1 eps2); places must match and be local
MetaElement meta_mul(const MetaElement& x, const MetaElement& y);

// s(gamma) = prod_v s_v(gamma) over the finitely many contributing places
int s_global(const Mat22& gamma);

// product of beta_v(g1, g2) over all places (finite product)
int beta_global(const Mat22& g1, const Mat22& g2);

// gamma^sigma = (gamma, s(gamma))
MetaElement lift_global(const Mat22& gamma);

// square root with the branch -pi/2 < arg <= pi/2
cplx sqrt_branch(cplx z);

// j_theta(gamma, z) = conj(eps_d) (c/d) (cz+d)^{1/2} for gamma in Gamma_0(4)
cplx theta_multiplier(const Mat22& gamma, cplx z);

// theta series sum_{n} e(n^2 z), truncated to an exponential tail below tol
cplx theta_series(cplx z, double tol = 1e-14);

} // namespace halfint

#endif
