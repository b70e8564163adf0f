#include "halfint/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace halfint {

TestFunction TestFunction::bump(double center, double radius) {
    if (!(center - radius > 0))
        throw std::domain_error("TestFunction::bump: support must lie in (0, inf)");
    TestFunction t;
    t.center = center;
    t.radius = radius;
    t.is_bump = true;
    t.lo_ = center - radius;
    t.hi_ = center + radius;
    t.f_ = [center, radius](double y) {
        double u = (y - center) / radius;
        if (std::abs(u) >= 1.0) return 0.0;
        return std::exp(-1.0 / (1.0 - u * u));
    };
    return t;
}

TestFunction TestFunction::sampled(std::function<double(double)> f, double lo, double hi) {
    if (!(lo > 0) || !(hi > lo))
        throw std::domain_error("TestFunction::sampled: support must lie in (0, inf)");
    TestFunction t;
    t.lo_ = lo;
    t.hi_ = hi;
    t.f_ = std::move(f);
    return t;
}

SupportedFunction TestFunction::weighted(std::function<double(double)> w) const {
    auto f = f_;
    return {[f, w](double y) { return w(y) * f(y); }, lo_, hi_};
}

long long normalize_twist(long long a, long long b, long long N) {
    if (b <= 0 || N % 4 != 0) throw std::domain_error("normalize_twist: bad b or N");
    if (gcd_ll(a, b) != 1) throw std::domain_error("normalize_twist: gcd(a, b) != 1");
    long long g = gcd_pow_inf(N, (a == 0 ? 1 : a) * b);
    long long step = b * (N / g);
    long long ap = a;
    for (int t = 0; t <= 4 * N; ++t) {
        if (gcd_ll(ap, b * N) == 1) return ap;
        ap += step;
    }
    throw std::runtime_error("normalize_twist: no admissible residue found");
}

namespace {

cplx unit_phase(long long num, long long den) {
    // e(num / den) with exact reduction of the angle
    long long r = num % den;
    if (r < 0) r += den;
    return std::polar(1.0, 2.0 * M_PI * (double)r / (double)den);
}

// truncation bookkeeping per the ratio-extrapolation rule: stop once three
// consecutive nonzero terms sit below tol/100 and the extrapolated tail is
// below tol/10
struct TailControl {
    double tol;
    double noise_floor;     // per-term quadrature noise
    std::deque<double> last;
    void record(double mag) {
        last.push_back(mag);
        if (last.size() > 9) last.pop_front();
    }
    // envelope ratio across the 9-term window; robust against single terms
    // sitting at oscillation zeros
    double tail_estimate() const {
        if (last.size() < 9) return 1e300;
        double p1 = 0, p3 = 0;
        for (int i = 0; i < 3; ++i) p1 = std::max(p1, last[i]);
        for (int i = 6; i < 9; ++i) p3 = std::max(p3, last[i]);
        if (p3 <= 0) return 0.0;
        if (p1 <= 0) return p3;
        double r = std::pow(p3 / p1, 1.0 / 6.0);
        double extrap = (r >= 0.999) ? 1e300 : p3 * r / (1.0 - r);
        // at the quadrature noise plateau the ratio carries no information
        if (p3 < 8.0 * noise_floor)
            extrap = std::min(extrap, 150.0 * std::max(p3, noise_floor));
        return extrap;
    }
    bool done() const {
        if (last.size() < 9) return false;
        bool small3 = true;
        for (size_t i = last.size() - 3; i < last.size(); ++i)
            if (last[i] >= tol / 100.0) small3 = false;
        if (small3 && tail_estimate() < tol / 10.0) return true;
        // the last six terms are indistinguishable from quadrature noise
        for (size_t i = last.size() - 6; i < last.size(); ++i)
            if (last[i] >= 5.0 * noise_floor) return false;
        return true;
    }
};

struct RhsTermSpec {
    long long n;
    cplx coeff;      // spectral a_f(n; cusp)
};

// shared dual-sum loop: phases, kernel transforms, truncation control.
// coeff_at(n) supplies the spectral cusp coefficient (or 0 to skip).
SumResult rhs_assemble(const VoronoiJob& job, long long abar, long long delta,
                       const std::function<cplx(long long)>& coeff_at,
                       bool include_negative) {
    const HalfIntegralForm& f = *job.form;
    const long long b = job.b;
    const double denom = (double)delta * (double)b * (double)b;
    auto wfun = [&f](double y) { return f.spectral_weight(y); };
    SupportedFunction Ft = job.F.weighted(wfun);

    KernelSpec spec_pos = f.arch().kind == ArchType::Kind::holomorphic
                              ? KernelSpec::holomorphic(f.k(), +1)
                              : KernelSpec::maass(f.arch().s, f.k(), +1);
    KernelSpec spec_neg = spec_pos;
    spec_neg.sign = -1;

    // the transform normalisation relating the displayed kernel to the
    // Whittaker value on the dual side: an extra factor (-i) |alpha|
    const cplx norm_const(0.0, -1.0);

    SumResult out;
    TailControl ctl{job.tol, job.quad_tol, {}};
    const long long block = 32;
    std::vector<RhsTermSpec> batch;
    std::vector<cplx> batch_vals;

    auto flush = [&]() -> bool {
        if (batch.empty()) return false;
        batch_vals.assign(batch.size(), cplx(0, 0));
        std::atomic<bool> fail{false};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (long long i = 0; i < (long long)batch.size(); ++i) {
            const long long n = batch[i].n;
            const double alpha = (double)n / denom;
            try {
                // scale so that |alpha| * (transform error) stays below quad_tol
                double tol_h = job.quad_tol / std::max(1.0, std::abs(alpha));
                HankelResult h = hankel_transform(Ft, n > 0 ? spec_pos : spec_neg, alpha, tol_h);
                if (!h.converged && h.error * std::abs(alpha) > 10 * job.quad_tol) fail.store(true);
                batch_vals[i] = h.value;
            } catch (const std::exception&) {
                fail.store(true);
            }
        }
        if (fail) throw std::runtime_error("rhs: hankel transform failed to converge");
        for (size_t i = 0; i < batch.size(); ++i) {
            const long long n = batch[i].n;
            const double alpha = (double)n / denom;
            cplx term = unit_phase(-n * abar, b * delta) * batch[i].coeff *
                        norm_const * std::abs(alpha) * batch_vals[i];
            out.value += term;
            ++out.terms;
            ctl.record(std::abs(term));
            if (ctl.done()) { batch.clear(); return true; }
        }
        batch.clear();
        return false;
    };

    bool stopped = false;
    for (long long n = 1; n <= job.rhs_n_max && !stopped; ++n) {
        for (long long sn : {n, -n}) {
            if (sn < 0 && !include_negative) continue;
            cplx c = coeff_at(sn);
            if (c == cplx(0, 0)) continue;
            batch.push_back({sn, c});
        }
        if ((long long)batch.size() >= block) stopped = flush();
    }
    if (!stopped) flush();
    out.tail_estimate = std::min(ctl.tail_estimate(), 1e300);
    return out;
}

} // namespace

SumResult lhs_sum(const VoronoiJob& job) {
    const HalfIntegralForm& f = *job.form;
    long long lo = (long long)std::ceil(job.F.lo());
    long long hi = (long long)std::floor(job.F.hi());
    hi = std::min(hi, job.lhs_n_max);
    if (f.coeff_order() <= hi)
        throw std::runtime_error("lhs_sum: coefficient source shorter than supp(F)");
    SumResult out;
    for (long long n = std::max<long long>(lo, 1); n <= hi; ++n) {
        cplx a = f.coeff_arith(n);
        if (a == cplx(0, 0)) continue;
        double Fv = job.F(n);
        if (Fv == 0.0) continue;
        out.value += unit_phase(job.a * n, job.b) * a * Fv;
        ++out.terms;
    }
    return out;
}

SumResult rhs_sum_corollary(const VoronoiJob& job, cplx* constant_out) {
    const HalfIntegralForm& f = *job.form;
    if (job.b % f.N() != 0)
        throw std::domain_error("rhs_sum_corollary: requires N | b");
    if (gcd_ll(job.a, job.b) != 1)
        throw std::domain_error("rhs_sum_corollary: gcd(a, b) != 1");
    const long long delta = 1;    // N | b puts the cusp in the infinity class
    const long long abar = inv_mod(job.a, job.b);
    const cplx C = cusp_constant_corollary(job.a, job.b, f.k(), f.chi());
    if (constant_out) *constant_out = C;
    auto coeff = [&](long long n) { return C * f.coeff_spectral(n); };
    const bool negatives = f.arch().kind != ArchType::Kind::holomorphic;
    return rhs_assemble(job, abar, delta, coeff, negatives);
}

SumResult rhs_sum_general(const VoronoiJob& job) {
    const HalfIntegralForm& f = *job.form;
    if (gcd_ll(job.a, job.b) != 1)
        throw std::domain_error("rhs_sum_general: gcd(a, b) != 1");
    // replace a by a' = a mod b with gcd(a', b N) = 1; the twisted sum on
    // the left is unchanged
    const long long ap = normalize_twist(job.a, job.b, f.N());
    Cusp cusp(ap, job.b, f.N(), f.chi().conductor());
    const long long delta = cusp_delta(cusp.reduced());
    const long long abar = inv_mod(ap, job.b * delta);

    ExtractionOptions opt = job.extraction;
    opt.abar = abar;
    const bool negatives = f.arch().kind != ArchType::Kind::holomorphic;
    opt.include_negative = negatives;
    CuspCoefficients cc = coeffs_at_cusp_numeric(f, cusp, job.rhs_n_max, opt);

    auto coeff = [&](long long n) -> cplx {
        auto it = cc.table.find(n);
        if (it == cc.table.end()) return {0, 0};
        double fl = std::max(10.0 * cc.error_at(n), 1e-14);
        return std::abs(it->second) < fl ? cplx(0, 0) : it->second;
    };
    return rhs_assemble(job, abar, delta, coeff, negatives);
}

VoronoiReport verify(const VoronoiJob& job) {
    if (!job.form) throw std::domain_error("verify: missing form");
    VoronoiReport rep;
    SumResult L = lhs_sum(job);
    rep.lhs = L.value;
    rep.lhs_terms = L.terms;

    bool use_corollary = job.path == VoronoiJob::Path::corollary ||
                         (job.path == VoronoiJob::Path::automatic && job.b % job.form->N() == 0);
    SumResult R;
    if (use_corollary) {
        cplx C;
        R = rhs_sum_corollary(job, &C);
        rep.cusp_constant_used = C;
        rep.path_used = "corollary";
    } else {
        R = rhs_sum_general(job);
        rep.path_used = "general";
    }
    rep.rhs = R.value;
    rep.rhs_terms = R.terms;
    rep.rhs_tail_estimate = R.tail_estimate;
    rep.abs_err = std::abs(rep.lhs - rep.rhs);
    rep.rel_err = rep.abs_err / std::max(std::abs(rep.lhs), 1.0);
    return rep;
}

std::string report_to_json(const VoronoiJob& job, const VoronoiReport& rep) {
    nlohmann::json j;
    j["job"] = {
        {"form", job.form ? job.form->label() : ""},
        {"a", job.a},
        {"b", job.b},
        {"tol", job.tol},
        {"rhs_n_max", job.rhs_n_max},
        {"bump_center", job.F.center},
        {"bump_radius", job.F.radius},
    };
    auto put_cplx = [](cplx v) { return nlohmann::json{{"re", v.real()}, {"im", v.imag()}}; };
    j["lhs"] = put_cplx(rep.lhs);
    j["rhs"] = put_cplx(rep.rhs);
    j["abs_err"] = rep.abs_err;
    j["rel_err"] = rep.rel_err;
    j["lhs_terms"] = rep.lhs_terms;
    j["rhs_terms"] = rep.rhs_terms;
    j["rhs_tail_estimate"] = rep.rhs_tail_estimate;
    if (rep.cusp_constant_used)
        j["cusp_constant_used"] = put_cplx(*rep.cusp_constant_used);
    else
        j["cusp_constant_used"] = nullptr;
    j["path"] = rep.path_used;
    return j.dump();
}

} // namespace halfint
