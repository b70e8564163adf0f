#ifndef HALFINT_ARITH_HPP
#define HALFINT_ARITH_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "halfint/rational.hpp"

namespace halfint {

using cplx = std::complex<double>;

// ------------------------------------------------------------------
// residue symbols and characters
// ------------------------------------------------------------------

// Jacobi symbol (a/n) for odd n > 0; 0 when gcd(a,n) > 1.
int jacobi(long long a, long long n);

// Quadratic residue symbol (c/d) for odd d, Shimura's convention:
//   d > 0: Jacobi symbol, (c/1) = 1, 0 when gcd(c,d) > 1;
//   d < 0: (c/d) = (c/|d|) for c > 0 and -(c/|d|) for c < 0; (0/-1) = 1.
int kronecker_shimura(long long c, long long d);

// chi_4(x) = e((x-1)/4) for odd x: +1 if x = 1 (4), -1 if x = 3 (4).
int chi4(long long x);

// eps_d = chi_4(d)^{1/2} under the branch -pi/2 < arg <= pi/2:
// 1 for d = 1 (4), i for d = 3 (4).  Returned as the power of i in {0,1}.
int eps_d_ipow(long long d);
cplx eps_d(long long d);

// ------------------------------------------------------------------
// Hilbert symbols
// ------------------------------------------------------------------

// real place: -1 iff both arguments negative
int hilbert_real(const Rational& a, const Rational& b);

// quadratic Hilbert symbol over Q_p (p = 2 allowed), standard
// valuation/unit-part formulas
int hilbert_padic(const Rational& a, const Rational& b, long long p);

// p-adic valuation of a nonzero rational
long long padic_val(const Rational& x, long long p);

// primes dividing |n| (trial division; inputs here are small)
std::vector<long long> prime_factors(long long n);

// modular inverse, result in [0, m); requires gcd(a, m) = 1
long long inv_mod(long long a, long long m);

long long gcd_ll(long long a, long long b);

// largest divisor of n composed of primes dividing x, i.e. gcd(n, x^inf)
long long gcd_pow_inf(long long n, long long x);

// ------------------------------------------------------------------
// Dirichlet characters (exact root-of-unity values)
// ------------------------------------------------------------------

// Value stored as the angle num/den of a root of unity e(num/den).
struct RootOfUnity {
    long long num = 0;
    long long den = 1;
    cplx to_complex() const;
    RootOfUnity conj() const { return {(-num % den + den) % den, den}; }
    bool is_one() const { return num % den == 0; }
};

class DirichletCharacter {
public:
    // principal character mod N
    static DirichletCharacter principal(long long N);
    // chi_4 induced to modulus N (requires 4 | N)
    static DirichletCharacter chi4_induced(long long N);
    // explicit table: angle of chi(u) for every unit u mod N (keyed by u);
    // validates complete multiplicativity
    static DirichletCharacter from_table(long long N, const std::map<long long, RootOfUnity>& values);

    long long modulus() const { return N_; }
    long long conductor() const { return M_; }
    bool is_even() const;   // chi(-1) = 1

    // chi(x); 0 when gcd(x, N) > 1
    cplx operator()(long long x) const;
    // exact angle; only valid when gcd(x, N) = 1
    RootOfUnity angle(long long x) const;

private:
    long long N_ = 1;
    long long M_ = 1;
    std::map<long long, RootOfUnity> val_;  // on units mod N
    void compute_conductor();
};

// ------------------------------------------------------------------
// cusps of Gamma_0(N)
// ------------------------------------------------------------------

// Cusp a/q of Gamma_0(N) in lowest terms, with the character conductor M
// carried along for delta.  infinity() uses the q = N representative.
struct Cusp {
    long long a = 1;
    long long q = 1;   // > 0
    long long N = 4;   // 4 | N
    long long M = 1;   // M | N

    Cusp(long long a_, long long q_, long long N_, long long M_);
    static Cusp infinity(long long N, long long M);

    // Gamma_0(N)-equivalent representative with denominator gcd(q, N)
    Cusp reduced() const;
};

// width w = N / gcd(q^2, N); rejects q not dividing N
long long cusp_width(const Cusp& c);
// delta = lcm(q^2, N, qM) / q^2; rejects q not dividing N
long long cusp_delta(const Cusp& c);

} // namespace halfint

#endif
