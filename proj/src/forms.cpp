#include "halfint/forms.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "halfint/specfun.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace halfint {

double whittaker_kappa_holomorphic(double y, long long k) {
    if (y <= 0) return 0.0;
    double u = 4.0 * M_PI * y;
    return std::pow(u, (2.0 * k + 1.0) / 4.0) * std::exp(-2.0 * M_PI * y);
}

cplx whittaker_kappa(double y, long long k, const ArchType& arch) {
    if (y == 0) throw std::domain_error("whittaker_kappa: y must be nonzero");
    if (arch.kind == ArchType::Kind::holomorphic)
        return whittaker_kappa_holomorphic(y, k);
    double kap = (2.0 * k + 1.0) / 4.0;
    return whittaker_W(y > 0 ? kap : -kap, arch.s / 2.0, 4.0 * M_PI * std::abs(y));
}

HalfIntegralForm::HalfIntegralForm(std::string label, long long k, long long N,
                                   DirichletCharacter chi, ArchType arch, FracQSeries qexp)
    : label_(std::move(label)), k_(k), N_(N), chi_(std::move(chi)), arch_(arch),
      qexp_(std::move(qexp)) {
    if (N_ % 4 != 0) throw std::domain_error("HalfIntegralForm: 4 must divide N");
    if (!qexp_->is_integral())
        throw std::domain_error("HalfIntegralForm: q-expansion must have integral exponents");
}

HalfIntegralForm::HalfIntegralForm(std::string label, long long k, long long N,
                                   DirichletCharacter chi, ArchType arch,
                                   std::map<long long, cplx> table)
    : label_(std::move(label)), k_(k), N_(N), chi_(std::move(chi)), arch_(arch),
      table_(std::move(table)) {
    if (N_ % 4 != 0) throw std::domain_error("HalfIntegralForm: 4 must divide N");
}

const FracQSeries& HalfIntegralForm::qexp() const {
    if (!qexp_) throw std::logic_error("form has no q-expansion source");
    return *qexp_;
}

cplx HalfIntegralForm::coeff_arith(long long n) const {
    if (qexp_) {
        if (n <= 0) return {0, 0};
        return {qexp_->coeff_q(n).to_double(), 0.0};
    }
    auto it = table_.find(n);
    return it == table_.end() ? cplx(0, 0) : it->second;
}

cplx HalfIntegralForm::coeff_spectral(long long n) const {
    if (qexp_) {
        if (n <= 0) return {0, 0};
        Rational a = qexp_->coeff_q(n);
        if (a.is_zero()) return {0, 0};
        return a.to_double() / std::pow(4.0 * M_PI * (double)n, (2.0 * k_ + 1.0) / 4.0);
    }
    auto it = table_.find(n);
    return it == table_.end() ? cplx(0, 0) : it->second;
}

long long HalfIntegralForm::coeff_order() const {
    if (qexp_) return qexp_->order() / qexp_->D();
    long long m = 0;
    for (auto& [n, v] : table_) m = std::max(m, std::llabs(n));
    return m + 1;
}

double HalfIntegralForm::spectral_weight(double y) const {
    if (!qexp_) return 1.0;
    return std::pow(4.0 * M_PI * y, (2.0 * k_ + 1.0) / 4.0);
}

long long HalfIntegralForm::delta_infinity() const {
    return cusp_delta(Cusp::infinity(N_, chi_.conductor()));
}

EvalResult evaluate(const HalfIntegralForm& f, cplx z, long long truncation, double tol) {
    if (z.imag() <= 0) throw std::domain_error("evaluate: need Im z > 0");
    const double x = z.real(), y = z.imag();
    const long long dinf = f.delta_infinity();
    cplx sum(0, 0);
    double maxmod = 0.0;
    long long last_n = 0;

    auto add_term = [&](long long n) {
        cplx a = f.coeff_spectral(n);
        if (a == cplx(0, 0)) return;
        cplx kap = whittaker_kappa((double)n * y / (double)dinf, f.k(), f.arch());
        cplx e = std::exp(cplx(0, 2.0 * M_PI * (double)n * x / (double)dinf));
        sum += a * kap * e;
        maxmod = std::max(maxmod, std::abs(a));
        last_n = std::max(last_n, std::llabs(n));
    };

    if (f.has_qexp()) {
        const auto& qs = f.qexp();
        for (auto& [e, v] : qs.coeffs()) {
            long long n = e / qs.D();
            if (n > truncation) break;
            if (n >= 1) add_term(n);
        }
    } else {
        for (long long n = -truncation; n <= truncation; ++n)
            if (n != 0) add_term(n);
    }

    // tail bound: coefficients are assumed to grow at most linearly beyond
    // the truncation; the kappa factor decays like e^{-2 pi n y / delta}
    double rho = std::exp(-2.0 * M_PI * y / (double)dinf);
    double tail = 0.0;
    if (rho < 1.0) {
        double n0 = (double)std::max(truncation + 1, last_n + 1);
        double kap_n0 = std::abs(whittaker_kappa(n0 * y / (double)dinf, f.k(), f.arch()));
        tail = 2.0 * std::max(1.0, maxmod) * n0 * kap_n0 / (1.0 - rho);
    } else {
        tail = 1e300;
    }
    if (tail > tol)
        throw std::runtime_error("evaluate: tail estimate " + std::to_string(tail) +
                                 " exceeds requested precision");
    return {sum, tail};
}

cplx slash_action(const std::function<cplx(cplx)>& fvals, const Mat22& gamma, cplx z, long long k) {
    cplx j = theta_multiplier(gamma, z);
    cplx u = std::abs(j) / j;
    cplx mult = std::pow(u, cplx((double)(2 * k + 1), 0.0));
    cplx az = (gamma.a.to_double() * z + gamma.b.to_double()) /
              (gamma.c.to_double() * z + gamma.d.to_double());
    return mult * fvals(az);
}

// ------------------------------------------------------------------
// Gamma_0(N) height routing
// ------------------------------------------------------------------

namespace {

struct IMat {
    long long a = 1, b = 0, c = 0, d = 1;
};

IMat imul(const IMat& x, const IMat& y) {
    auto mul = [](long long p, long long q) {
        __int128 v = (__int128)p * q;
        if (v > (__int128)4e17 || v < -(__int128)4e17)
            throw std::overflow_error("routing: matrix entries overflow");
        return (long long)v;
    };
    return {mul(x.a, y.a) + mul(x.b, y.c), mul(x.a, y.b) + mul(x.b, y.d),
            mul(x.c, y.a) + mul(x.d, y.c), mul(x.c, y.b) + mul(x.d, y.d)};
}

cplx moebius_apply(const IMat& m, cplx z) {
    std::complex<long double> zl(z);
    std::complex<long double> num = (long double)m.a * zl + (long double)m.b;
    std::complex<long double> den = (long double)m.c * zl + (long double)m.d;
    std::complex<long double> w = num / den;
    return {(double)w.real(), (double)w.imag()};
}

} // namespace

Routing route_best(cplx z, long long N, double y_search) {
    if (z.imag() <= 0) throw std::domain_error("route_best: need Im z > 0");
    const double y_min = y_search;
    IMat tot;
    cplx w = z;
    for (int step = 0; step < 500; ++step) {
        // translation into |Re| <= 1/2
        long long m = std::llround(w.real());
        if (m != 0) {
            tot = imul(IMat{1, -m, 0, 1}, tot);
            w -= (double)m;
        }
        if (w.imag() >= 1.0) break;    // cannot improve past the N = 1 bound
        // inversion step: c = N t minimising |c w + d|^2, worth applying
        // only if the norm drops below 1
        double yw = w.imag(), xw = w.real();
        long long tmax = (long long)std::ceil(1.0 / ((double)N * std::sqrt(std::max(yw * y_min, 1e-300)))) + 1;
        tmax = std::min(tmax, (long long)2000000);
        double best = 0.995;
        long long bc = 0, bd = 0;
        for (long long t = 1; t <= tmax; ++t) {
            long long c = N * t;
            if ((double)c * yw * (double)c * yw > best) break;   // |cw+d| >= c Im w
            long long d0 = std::llround(-(double)c * xw);
            for (long long d = d0 - 2; d <= d0 + 2; ++d) {
                double nr = std::norm((double)c * w + (double)d);
                if (nr < best && std::gcd(c < 0 ? -c : c, d < 0 ? -d : d) == 1) {
                    best = nr; bc = c; bd = d;
                }
            }
        }
        if (bc == 0) break;
        // complete (bc, bd) to a Gamma_0(N) matrix
        long long aa, bb;
        long long g = bc;
        aa = inv_mod(bd, g < 0 ? -g : g);
        // choose aa so that (aa * bd - 1) is divisible by bc
        __int128 num = (__int128)aa * bd - 1;
        bb = (long long)(num / bc);
        if ((__int128)aa * bd - (__int128)bb * bc != 1)
            throw std::logic_error("route_to_height: completion failed");
        IMat gm{aa, bb, bc, bd};
        tot = imul(gm, tot);
        w = moebius_apply(gm, w);
    }
    return {tot.a, tot.b, tot.c, tot.d, w};
}

Routing route_to_height(cplx z, long long N, double y_min) {
    Routing r = route_best(z, N, y_min);
    if (r.z_high.imag() < y_min)
        throw std::runtime_error("route_to_height: could not reach the requested height");
    return r;
}

namespace {

// partial series sum at a routed point, growing the truncation until the
// tail bound clears the requested tolerance
EvalResult series_with_retry(const HalfIntegralForm& f, cplx z_high, double tol) {
    const double yh = z_high.imag();
    const double efolds = -std::log(std::max(tol, 1e-290) * 0.25) + 16.0;
    long long trunc = (long long)std::ceil(efolds / (2.0 * M_PI * yh / (double)f.delta_infinity()));
    EvalResult ev;
    for (int attempt = 0;; ++attempt) {
        trunc = std::min(trunc, f.coeff_order() - 1);
        ev = evaluate(f, z_high, trunc, 1e30);
        if (ev.tail <= tol * 0.25 || trunc >= f.coeff_order() - 1 || attempt >= 4) break;
        trunc *= 2;
    }
    if (ev.tail > tol * 0.25)
        throw std::runtime_error("evaluate_routed: series tail above tolerance");
    return ev;
}

cplx unimodular_power(cplx j, long long e) {
    cplx u = std::abs(j) / j;
    return std::pow(u, cplx((double)e, 0.0));
}

} // namespace

namespace {

// Points whose whole orbit stays below this height sit deep inside the
// horoball of a cusp outside the infinity class (the compact core of the
// fundamental domain lies higher, at heights of order 1/N^2).  There the
// cuspidal decay gives |f| <= C exp(-2 pi / (N^2 y)), zero at double
// precision below the threshold.
double deep_cusp_threshold(long long N) {
    return 2.0 * M_PI / (60.0 * (double)N * (double)N);
}

EvalResult series_or_deep_zero(const HalfIntegralForm& f, const Routing& r, double tol) {
    try {
        return series_with_retry(f, r.z_high, tol);
    } catch (const std::exception&) {
        if (r.z_high.imag() <= deep_cusp_threshold(f.N()))
            return {cplx(0, 0), std::exp(-2.0 * M_PI / ((double)f.N() * (double)f.N() * r.z_high.imag()))};
        throw;
    }
}

} // namespace

cplx evaluate_routed(const HalfIntegralForm& f, cplx z, double tol, double y_min) {
    // the fundamental domain of Gamma_0(N) dips to heights of order 1/N^2
    // near interior low points, so that is the guaranteed reachable floor
    if (y_min <= 0) y_min = 0.25 * deep_cusp_threshold(f.N());
    Routing r = route_best(z, f.N(), y_min);
    EvalResult ev = series_or_deep_zero(f, r, tol);
    if (r.a == 1 && r.b == 0 && r.c == 0 && r.d == 1) return ev.value;
    // f(z) = conj(chi(d)) (|j|/j)^{2k+1} f(gamma z)
    Mat22 gm{Rational(r.a), Rational(r.b), Rational(r.c), Rational(r.d)};
    cplx mult = unimodular_power(theta_multiplier(gm, z), 2 * f.k() + 1);
    return std::conj(f.chi()(r.d)) * mult * ev.value;
}

namespace {

// (f | routing)(applied after an exact integral fractional-linear map P):
// evaluates f(P zeta) together with the theta-multiplier phase of the
// routing step, composing gamma * P exactly in integers.  The linear forms
// c z + d cancel catastrophically near the real axis, so they are formed
// from the composite integer matrix in extended precision.
cplx routed_value_after(const HalfIntegralForm& f, const IMat& P, cplx zeta, double tol) {
    std::complex<long double> zl(zeta);
    std::complex<long double> num0 = (long double)P.a * zl + (long double)P.b;
    std::complex<long double> den0 = (long double)P.c * zl + (long double)P.d;
    std::complex<long double> wl = num0 / den0;
    cplx w((double)wl.real(), (double)wl.imag());
    Routing r = route_best(w, f.N(), 0.25 * deep_cusp_threshold(f.N()));
    IMat dlt = imul(IMat{r.a, r.b, r.c, r.d}, P);
    std::complex<long double> num = (long double)dlt.a * zl + (long double)dlt.b;
    std::complex<long double> den = (long double)dlt.c * zl + (long double)dlt.d;
    std::complex<long double> zhl = num / den;
    cplx z_high((double)zhl.real(), (double)zhl.imag());
    Routing rz = r; rz.z_high = z_high;
    EvalResult ev = series_or_deep_zero(f, rz, tol);
    // j_theta(gamma, w): the linear form c w + d equals j(dlt, zeta)/j(P, zeta)
    std::complex<long double> cwdl = den / den0;
    cplx cwd((double)cwdl.real(), (double)cwdl.imag());
    cplx j = std::conj(eps_d(r.d)) * (double)kronecker_shimura(r.c, r.d) * sqrt_branch(cwd);
    return std::conj(f.chi()(r.d)) * unimodular_power(j, 2 * f.k() + 1) * ev.value;
}

} // namespace

// ------------------------------------------------------------------
// coefficients at cusps
// ------------------------------------------------------------------

CuspCoefficients coeffs_at_cusp_numeric(const HalfIntegralForm& f, const Cusp& cusp,
                                        long long n_max, const ExtractionOptions& opt) {
    if (cusp.N != f.N()) throw std::domain_error("coeffs_at_cusp_numeric: level mismatch");
    const long long q = cusp.q;
    const long long delta = cusp_delta(cusp.reduced());
    const long long k = f.k();

    long long abar = opt.abar.value_or(inv_mod(cusp.a, q * delta));
    if (((__int128)cusp.a * abar - 1) % q != 0)
        throw std::logic_error("coeffs_at_cusp_numeric: abar is not an inverse mod q");

    // choose y0 so that the kappa division at n_max still meets the wanted
    // coefficient precision; never drop below the kappa underflow floor
    const double noise_scale = 3.0 * opt.eval_tol;
    double y0 = opt.y0;
    if (y0 <= 0) {
        const double expo = (2.0 * k + 1.0) / 4.0;
        const double kap_max = std::pow(2.0 * expo, expo) * std::exp(-expo);   // at y = expo/(2 pi)
        double target = std::max(noise_scale / opt.target_precision, opt.kappa_floor * kap_max);
        // solve (4 pi u)^{expo} e^{-2 pi u} = target for u = n_max y0 / delta
        double u = 1.0;
        for (int it = 0; it < 200; ++it) {
            double g = expo * std::log(4.0 * M_PI * u) - 2.0 * M_PI * u - std::log(target);
            double dg = expo / u - 2.0 * M_PI;
            double un = u - g / dg;
            if (!(un > 0)) un = u * 0.5;
            if (std::abs(un - u) < 1e-12 * u) { u = un; break; }
            u = un;
        }
        y0 = u * (double)delta / (double)std::max<long long>(n_max, 1);
        y0 = std::min(y0, 0.5);
    }

    long long S = opt.samples > 0 ? opt.samples : opt.oversample * (n_max + 1);

    // g(zeta) = (|psi|/psi)^{2k+1} f(sigma^{-1} zeta), psi = (q zeta + abar)^{1/2},
    // sigma^{-1} = (a, (a abar - 1)/q; q, abar)
    const double q_d = (double)q, abar_d = (double)abar;

    const IMat sigma_inv{cusp.a, (long long)(((__int128)cusp.a * abar - 1) / q), q, abar};
    std::vector<cplx> samples(S);
    std::atomic<long long> failures{0};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) if (opt.parallel)
#endif
    for (long long j = 0; j < S; ++j) {
        cplx zeta((double)j * (double)delta / (double)S, y0);
        cplx psi = sqrt_branch(q_d * zeta + abar_d);
        cplx u = std::abs(psi) / psi;
        cplx mult = std::pow(u, cplx((double)(2 * k + 1), 0.0));
        try {
            samples[j] = mult * routed_value_after(f, sigma_inv, zeta, opt.eval_tol);
        } catch (const std::exception&) {
            ++failures;
        }
    }
    if (failures > 0)
        throw std::runtime_error("coeffs_at_cusp_numeric: " + std::to_string((long long)failures) +
                                 " sample evaluations failed");

    CuspCoefficients out{cusp, abar, delta, k, f.arch(), {}, {}, 0.0, 0.0, y0, S};
    double supg = 0.0;
    for (auto& v : samples) supg = std::max(supg, std::abs(v));

    const bool holo = f.arch().kind == ArchType::Kind::holomorphic;
    const long long n_lo = (holo && !opt.include_negative) ? 0 : -n_max;
    std::vector<long long> ns;
    for (long long n = n_lo; n <= n_max; ++n) ns.push_back(n);
    std::vector<cplx> avgs(ns.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (opt.parallel)
#endif
    for (long long idx = 0; idx < (long long)ns.size(); ++idx) {
        const long long n = ns[idx];
        const cplx step = std::polar(1.0, -2.0 * M_PI * (double)n / (double)S);
        cplx ph(1.0, 0.0), acc(0, 0);
        for (long long j = 0; j < S; ++j) {
            acc += samples[j] * ph;
            ph *= step;
            if ((j & 1023) == 1023)   // resync the rotation against drift
                ph = std::polar(1.0, -2.0 * M_PI * (double)n * (double)((j + 1) % S) / (double)S);
        }
        avgs[idx] = acc / (double)S;
    }
    for (size_t idx = 0; idx < ns.size(); ++idx) {
        const long long n = ns[idx];
        const cplx acc = avgs[idx];
        if (n <= 0 || (holo && n < 0)) {
            out.raw_average[n] = acc;
            continue;
        }
        cplx kap = whittaker_kappa((double)n * y0 / (double)delta, k, f.arch());
        if (std::abs(kap) < 1e-280) {
            out.raw_average[n] = acc;
            continue;
        }
        out.table[n] = acc / kap;
    }
    // error model: per-sample evaluation error plus DFT roundoff, divided by
    // the kappa value of the entry in question
    out.noise = opt.eval_tol + 1e-15 * supg * std::sqrt((double)S);
    double worst = 0.0;
    for (auto& [n, v] : out.table) worst = std::max(worst, out.error_at(n));
    out.precision = worst;
    return out;
}

double CuspCoefficients::error_at(long long n) const {
    auto it = table.find(n);
    if (it == table.end()) return 0.0;
    double kk = std::abs(whittaker_kappa((double)n * y0 / (double)delta, k, arch));
    return kk > 0 ? noise / kk : 1e300;
}

cplx cusp_constant_corollary(long long a, long long b, long long k, const DirichletCharacter& chi) {
    if (b <= 0) throw std::domain_error("cusp_constant_corollary: b must be positive");
    if (b % chi.modulus() != 0)
        throw std::domain_error("cusp_constant_corollary: N must divide b");
    if (gcd_ll(a, b) != 1) throw std::domain_error("cusp_constant_corollary: gcd(a,b) != 1");
    long long abar = inv_mod(a, b);
    if (abar % 2 == 0)
        throw std::logic_error("cusp_constant_corollary: even inverse (b must be even)");
    cplx c = std::conj(eps_d(a));
    c *= (double)kronecker_shimura(b, abar);
    if (k % 2 != 0) c *= (double)chi4(a);
    c *= std::conj(chi(a));
    return c;
}

// ------------------------------------------------------------------
// manifest
// ------------------------------------------------------------------

namespace {

std::map<std::string, std::string> parse_kv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read manifest " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

} // namespace

HalfIntegralForm load_form_manifest(const std::string& path) {
    auto kv = parse_kv(path);
    auto need = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::runtime_error("manifest missing key '" + key + "'");
        return it->second;
    };
    std::string label = need("label");
    long long k = std::stoll(need("k"));
    long long N = std::stoll(need("N"));
    std::string chis = need("chi");
    DirichletCharacter chi = chis == "principal" ? DirichletCharacter::principal(N)
                           : chis == "chi4"      ? DirichletCharacter::chi4_induced(N)
                           : throw std::runtime_error("manifest: unknown character '" + chis + "'");
    std::string archs = need("arch");
    ArchType arch;
    if (archs == "holomorphic") {
        arch = ArchType::holomorphic();
    } else if (archs.rfind("maass:", 0) == 0) {
        std::istringstream ss(archs.substr(6));
        double re = 0, im = 0; char comma = 0;
        ss >> re >> comma >> im;
        arch = ArchType::maass({re, im});
    } else {
        throw std::runtime_error("manifest: unknown arch '" + archs + "'");
    }

    namespace fs = std::filesystem;
    fs::path base = fs::path(path).parent_path();
    if (auto it = kv.find("coeffs"); it != kv.end()) {
        fs::path cache = base / it->second;
        if (fs::exists(cache))
            return HalfIntegralForm(label, k, N, chi, arch, FracQSeries::load(cache.string()));
    }
    if (auto it = kv.find("construct"); it != kv.end()) {
        // construct = etaq:m1^r1,m2^r2,...   order = <q-order>
        const std::string& c = it->second;
        if (c.rfind("etaq:", 0) != 0)
            throw std::runtime_error("manifest: unknown construct '" + c + "'");
        std::vector<std::pair<long long, long long>> spec;
        std::istringstream ss(c.substr(5));
        std::string part;
        while (std::getline(ss, part, ',')) {
            auto caret = part.find('^');
            long long m = std::stoll(part.substr(0, caret));
            long long r = caret == std::string::npos ? 1 : std::stoll(part.substr(caret + 1));
            spec.push_back({m, r});
        }
        long long order_q = kv.count("order") ? std::stoll(kv.at("order")) : 4096;
        EtaQuotient eq = eta_quotient(spec, order_q * 24);
        if (auto it2 = kv.find("coeffs"); it2 != kv.end())
            eq.series.save((base / it2->second).string());
        return HalfIntegralForm(label, k, N, chi, arch, std::move(eq.series));
    }
    throw std::runtime_error("manifest: no usable coefficient source");
}

} // namespace halfint
