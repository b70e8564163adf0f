#ifndef HALFINT_QSERIES_HPP
#define HALFINT_QSERIES_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "halfint/arith.hpp"
#include "halfint/rational.hpp"

namespace halfint {

// Truncated power series in q^{1/D} with exact rational coefficients.
// Stored exponent e means q^{e/D}.  Exponents e < order are exact;
// nothing is known from order on.
class FracQSeries {
public:
    FracQSeries() = default;
    FracQSeries(long long D, long long order) : D_(D), order_(order) {
        if (D <= 0) throw std::domain_error("FracQSeries: D must be positive");
    }

    long long D() const { return D_; }
    long long order() const { return order_; }
    const std::map<long long, Rational>& coeffs() const { return c_; }

    Rational coeff(long long e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Rational(0) : it->second;
    }
    // coefficient of q^n (integer exponent)
    Rational coeff_q(long long n) const { return coeff(n * D_); }

    void set(long long e, const Rational& v) {
        if (e >= order_) return;              // beyond truncation: unknown
        if (v.is_zero()) c_.erase(e); else c_[e] = v;
    }

    bool is_integral() const;                 // all exponents divisible by D
    // smallest stored exponent, or order when empty
    long long low() const { return c_.empty() ? order_ : c_.begin()->first; }

    // rewrite on a finer exponent lattice D' (D | D')
    FracQSeries rescaled(long long Dnew) const;

    friend FracQSeries qs_add(const FracQSeries& x, const FracQSeries& y);
    friend FracQSeries qs_mul(const FracQSeries& x, const FracQSeries& y);
    friend FracQSeries qs_mul_serial(const FracQSeries& x, const FracQSeries& y);
    FracQSeries operator-() const;

    // multiplicative inverse; requires a nonzero leading coefficient
    FracQSeries inverse() const;
    FracQSeries pow(long long e) const;       // e may be negative

    // cache file: header "D <D> order <order>", then "e\tnum\tden" lines
    void save(const std::string& path) const;
    static FracQSeries load(const std::string& path);

private:
    long long D_ = 1;
    long long order_ = 0;
    std::map<long long, Rational> c_;
};

FracQSeries qs_add(const FracQSeries& x, const FracQSeries& y);
FracQSeries qs_mul(const FracQSeries& x, const FracQSeries& y);
// serial convolution kept as the reference for the parallel path
FracQSeries qs_mul_serial(const FracQSeries& x, const FracQSeries& y);

// eta(m z) = q^{m/24} prod (1 - q^{mn}), via the pentagonal-number series,
// on the D = 24 lattice
FracQSeries eta_expansion(long long m, long long order_q24);

// theta(m z) = 1 + 2 sum q^{m n^2}; D = 1 lattice, order in q-units
FracQSeries theta_expansion(long long m, long long order_q);

struct EtaQuotient {
    FracQSeries series;
    Rational weight;   // (sum of exponents) / 2
};
// prod_m eta(m z)^{r_m}; order on the D = 24 lattice
EtaQuotient eta_quotient(const std::vector<std::pair<long long, long long>>& spec,
                         long long order_q24);

// Hecke operator T_{p^2} on integral-exponent series of weight k + 1/2:
//   b(n) = a(p^2 n) + chi(p) ((-1)^k n / p) p^{k-1} a(n) + chi(p^2) p^{2k-1} a(n/p^2)
// Requires p prime not dividing the character modulus and chi(p) in {+-1}
// (exact arithmetic).  Output order = input order / p^2.
FracQSeries hecke_Tp2(const FracQSeries& f, long long k, const DirichletCharacter& chi, long long p);

// T_{p^2} f = lambda f on all coefficients below the common truncation?
struct EigenResult {
    bool is_eigen = false;
    std::optional<Rational> lambda;
};
EigenResult eigen_check(const FracQSeries& f, long long k, const DirichletCharacter& chi,
                        long long p, long long order_q);

} // namespace halfint

#endif
