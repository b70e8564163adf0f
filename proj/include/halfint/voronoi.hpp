#ifndef HALFINT_VORONOI_HPP
#define HALFINT_VORONOI_HPP

#include <functional>
#include <optional>
#include <string>

#include "halfint/bessel.hpp"
#include "halfint/forms.hpp"

namespace halfint {

// Smooth compactly supported test function on (0, inf).
class TestFunction {
public:
    // exp(-1/(1 - ((y-c)/r)^2)) on (c-r, c+r), zero outside; needs c - r > 0
    static TestFunction bump(double center, double radius);
    // arbitrary callback with declared support
    static TestFunction sampled(std::function<double(double)> f, double lo, double hi);

    double operator()(double y) const { return f_(y); }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    SupportedFunction supported() const { return {f_, lo_, hi_}; }
    // support scaled pointwise by a smooth weight
    SupportedFunction weighted(std::function<double(double)> w) const;

    double center = 0, radius = 0;   // set for the bump family
    bool is_bump = false;

private:
    std::function<double(double)> f_;
    double lo_ = 0, hi_ = 0;
};

struct VoronoiJob {
    const HalfIntegralForm* form = nullptr;
    long long a = 1;
    long long b = 1;
    TestFunction F;
    double tol = 1e-6;
    long long lhs_n_max = 1 << 24;     // LHS is finite anyway; cap as a guard
    long long rhs_n_max = 4000000;
    double quad_tol = 1e-11;
    // general-path extraction knobs
    ExtractionOptions extraction;
    enum class Path { automatic, corollary, general } path = Path::automatic;
};

struct VoronoiReport {
    cplx lhs{0, 0}, rhs{0, 0};
    double abs_err = 0, rel_err = 0;
    long long lhs_terms = 0, rhs_terms = 0;
    double rhs_tail_estimate = 0;
    std::optional<cplx> cusp_constant_used;
    std::string path_used;
};

// Replace a by a' with e(a'n/b) = e(an/b) and gcd(a', b N) = 1
// (hence gcd(a', b delta) = 1 since delta | N).
long long normalize_twist(long long a, long long b, long long N);

struct SumResult {
    cplx value{0, 0};
    long long terms = 0;
    double tail_estimate = 0;
};

// sum_{n in supp F} e(an/b) atilde(n) F(n), exact coefficients
SumResult lhs_sum(const VoronoiJob& job);

// dual sum via the corollary constant (requires N | b)
SumResult rhs_sum_corollary(const VoronoiJob& job, cplx* constant_out = nullptr);

// dual sum with numerically extracted cusp coefficients (general b)
SumResult rhs_sum_general(const VoronoiJob& job);

// run both sides, fill the report; disagreement is data, not an error
VoronoiReport verify(const VoronoiJob& job);

// one JSON object (single line) with the report plus a job echo
std::string report_to_json(const VoronoiJob& job, const VoronoiReport& rep);

} // namespace halfint

#endif
