#ifndef HALFINT_FORMS_HPP
#define HALFINT_FORMS_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "halfint/arith.hpp"
#include "halfint/metaplectic.hpp"
#include "halfint/qseries.hpp"

namespace halfint {

// archimedean type
struct ArchType {
    enum class Kind { holomorphic, maass } kind = Kind::holomorphic;
    cplx s{0.0, 0.0};                       // Maass spectral parameter
    static ArchType holomorphic() { return {Kind::holomorphic, {0, 0}}; }
    static ArchType maass(cplx s) { return {Kind::maass, s}; }
};

// Whittaker profile kappa_f(y).
// Holomorphic: (4 pi y)^{(2k+1)/4} e^{-2 pi y} for y > 0, 0 for y < 0.
// Maass: W_{sgn(y)(2k+1)/4, s/2}(4 pi |y|).
double whittaker_kappa_holomorphic(double y, long long k);
cplx whittaker_kappa(double y, long long k, const ArchType& arch);

// Weight k + 1/2 automorphic form of level N (4 | N) and character chi.
// The coefficient source is either an exact q-expansion (arithmetic
// normalisation: f = Im^{(2k+1)/4} sum atilde(n) q^n) or an explicit table
// of spectral coefficients.
class HalfIntegralForm {
public:
    HalfIntegralForm(std::string label, long long k, long long N, DirichletCharacter chi,
                     ArchType arch, FracQSeries qexp);
    HalfIntegralForm(std::string label, long long k, long long N, DirichletCharacter chi,
                     ArchType arch, std::map<long long, cplx> table);

    const std::string& label() const { return label_; }
    long long k() const { return k_; }
    long long N() const { return N_; }
    const DirichletCharacter& chi() const { return chi_; }
    const ArchType& arch() const { return arch_; }
    bool has_qexp() const { return qexp_.has_value(); }
    const FracQSeries& qexp() const;

    // arithmetic coefficient atilde(n) (q-expansion) or table value
    cplx coeff_arith(long long n) const;
    // spectral coefficient a_f(n) = atilde(n) / (4 pi n)^{(2k+1)/4} for
    // q-expansion sources; the table is already spectral
    cplx coeff_spectral(long long n) const;
    // largest n with known coefficients
    long long coeff_order() const;
    // weight (4 pi y)^{(2k+1)/4} relating arithmetic test functions to
    // spectral ones; 1 for table sources
    double spectral_weight(double y) const;

    // delta(infinity); equals 1 whenever the conductor divides N
    long long delta_infinity() const;

private:
    std::string label_;
    long long k_;
    long long N_;
    DirichletCharacter chi_;
    ArchType arch_;
    std::optional<FracQSeries> qexp_;
    std::map<long long, cplx> table_;
};

struct EvalResult {
    cplx value{0, 0};
    double tail = 0;        // bound on the dropped tail
};

// partial Fourier sum at infinity; throws when the tail estimate exceeds tol
EvalResult evaluate(const HalfIntegralForm& f, cplx z, long long truncation, double tol = 1e30);

// (|j_theta(gamma,z)| / j_theta(gamma,z))^{2k+1} f(gamma z) for a value
// callback f; gamma in Gamma_0(4)
cplx slash_action(const std::function<cplx(cplx)>& fvals, const Mat22& gamma, cplx z, long long k);

// Gamma_0(N)-reduction: gamma with Im(gamma z) as large as the orbit allows,
// built by repeated translation/inversion improvement steps (cap 500).
struct Routing {
    long long a = 1, b = 0, c = 0, d = 1;   // the Gamma_0(N) element found
    cplx z_high;                             // gamma z
};
// best-effort reduction; y_search only sizes the candidate search
Routing route_best(cplx z, long long N, double y_search);
// as above but an error when Im(gamma z) < y_min is not reached
Routing route_to_height(cplx z, long long N, double y_min);

// f(z) through automorphy routing and the infinity expansion
cplx evaluate_routed(const HalfIntegralForm& f, cplx z, double tol, double y_min = 0.0);

// Fourier data at a cusp
struct CuspCoefficients {
    Cusp cusp;
    long long abar;          // inverse of a used in the scaling matrix
    long long delta;         // delta(cusp)
    long long k;
    ArchType arch;
    std::map<long long, cplx> table;         // spectral a_f(n; cusp), n >= 1
    std::map<long long, cplx> raw_average;   // horocycle averages for n <= 0
    double noise;            // per-sample noise before the kappa division
    double precision;        // error bound at the largest extracted n
    double y0;
    long long samples;

    // error bound on table[n]: noise amplified by the kappa division
    double error_at(long long n) const;
};

struct ExtractionOptions {
    double y0 = 0;                // 0: choose from the precision rule below
    long long oversample = 4;     // samples = oversample * (n_max + 1)
    long long samples = 0;        // explicit override
    double target_precision = 1e-8;  // wanted coefficient accuracy at n_max
    double kappa_floor = 1e-12;   // hard floor: kappa(n_max y0/delta) >= floor * max kappa
    double eval_tol = 1e-13;
    std::optional<long long> abar;  // override for the scaling-matrix inverse
    bool parallel = true;
    bool include_negative = false;  // extract n < 0 raw averages too
};

// numerical Fourier coefficients a_f(n; cusp) for 0 <= n <= n_max via a
// discrete horocycle average of f | sigma~^{-1}
CuspCoefficients coeffs_at_cusp_numeric(const HalfIntegralForm& f, const Cusp& cusp,
                                        long long n_max, const ExtractionOptions& opt = {});

// the constant epsbar_a (b/abar) chi4(a)^k chi(a)^{-1} relating coefficients
// at a/b (N | b) to those at infinity
cplx cusp_constant_corollary(long long a, long long b, long long k, const DirichletCharacter& chi);

// form manifest: key = value lines (label, k, N, chi, arch, coeffs/construct)
HalfIntegralForm load_form_manifest(const std::string& path);

} // namespace halfint

#endif
