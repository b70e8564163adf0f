#include "halfint/qseries.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace halfint {

bool FracQSeries::is_integral() const {
    for (auto& [e, v] : c_)
        if (e % D_ != 0) return false;
    return true;
}

FracQSeries FracQSeries::rescaled(long long Dnew) const {
    if (Dnew % D_ != 0) throw std::domain_error("rescaled: new D must be a multiple");
    long long f = Dnew / D_;
    FracQSeries r(Dnew, order_ * f);
    for (auto& [e, v] : c_) r.c_[e * f] = v;
    return r;
}

namespace {

// bring both series onto the lcm lattice
std::pair<FracQSeries, FracQSeries> common_lattice(const FracQSeries& x, const FracQSeries& y) {
    long long D = std::lcm(x.D(), y.D());
    return {x.D() == D ? x : x.rescaled(D), y.D() == D ? y : y.rescaled(D)};
}

} // namespace

FracQSeries qs_add(const FracQSeries& x0, const FracQSeries& y0) {
    auto [x, y] = common_lattice(x0, y0);
    FracQSeries r(x.D(), std::min(x.order(), y.order()));
    for (auto& [e, v] : x.c_) r.set(e, v);
    for (auto& [e, v] : y.c_) r.set(e, r.coeff(e) + v);
    return r;
}

FracQSeries FracQSeries::operator-() const {
    FracQSeries r(D_, order_);
    for (auto& [e, v] : c_) r.c_[e] = -v;
    return r;
}

FracQSeries qs_mul_serial(const FracQSeries& x0, const FracQSeries& y0) {
    auto [x, y] = common_lattice(x0, y0);
    // unknown tails start at order+low of the other factor
    long long ord = std::min(x.order() + y.low(), y.order() + x.low());
    FracQSeries r(x.D(), ord);
    for (auto& [ex, vx] : x.c_) {
        for (auto& [ey, vy] : y.c_) {
            long long e = ex + ey;
            if (e >= ord) break;   // y sorted ascending
            r.set(e, r.coeff(e) + vx * vy);
        }
    }
    return r;
}

FracQSeries qs_mul(const FracQSeries& x0, const FracQSeries& y0) {
    auto [x, y] = common_lattice(x0, y0);
    long long ord = std::min(x.order() + y.low(), y.order() + x.low());
    const size_t work = x.c_.size() * y.c_.size();
    if (work < (size_t)1 << 16) return qs_mul_serial(x0, y0);

    std::vector<std::pair<long long, Rational>> xs(x.c_.begin(), x.c_.end());
    std::vector<std::pair<long long, Rational>> ys(y.c_.begin(), y.c_.end());
    FracQSeries r(x.D(), ord);
#ifdef _OPENMP
    int nt = omp_get_max_threads();
#else
    int nt = 1;
#endif
    std::vector<std::unordered_map<long long, Rational>> parts(nt);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (long long i = 0; i < (long long)xs.size(); ++i) {
#ifdef _OPENMP
        auto& acc = parts[omp_get_thread_num()];
#else
        auto& acc = parts[0];
#endif
        const long long ex = xs[i].first;
        const Rational& vx = xs[i].second;
        for (auto& [ey, vy] : ys) {
            long long e = ex + ey;
            if (e >= ord) break;
            auto it = acc.find(e);
            if (it == acc.end()) acc.emplace(e, vx * vy);
            else it->second += vx * vy;
        }
    }
    // exact arithmetic: merge order cannot change the result
    for (auto& part : parts)
        for (auto& [e, v] : part) r.set(e, r.coeff(e) + v);
    return r;
}

FracQSeries FracQSeries::inverse() const {
    if (c_.empty())
        throw std::domain_error("FracQSeries::inverse: zero leading coefficient");
    const long long m = low();
    const Rational am = c_.begin()->second;
    // (sum_{e>=m} a_e q^e)^{-1} = q^{-m}/a_m * (1 + u)^{-1}, built by recurrence:
    // b_{-m+j} determined by sum_{i} a_{m+i} b_{-m+j-i} = [j == 0]
    long long span = order_ - m;            // number of meaningful exponents
    FracQSeries r(D_, -m + span);
    std::unordered_map<long long, Rational> b;
    b[-m] = Rational(1) / am;
    r.set(-m, b[-m]);
    for (long long j = 1; j < span; ++j) {
        Rational s(0);
        for (auto& [e, a] : c_) {
            long long i = e - m;
            if (i <= 0) continue;
            if (i > j) break;
            auto it = b.find(-m + j - i);
            if (it != b.end()) s += a * it->second;
        }
        Rational bj = -s / am;
        if (!bj.is_zero()) { b[-m + j] = bj; r.set(-m + j, bj); }
    }
    return r;
}

FracQSeries FracQSeries::pow(long long e) const {
    if (e == 0) {
        FracQSeries one(D_, order_ - low() > 0 ? order_ - low() : order_);
        one.set(0, 1);
        return one;
    }
    const FracQSeries base = e > 0 ? *this : inverse();
    long long n = e > 0 ? e : -e;
    FracQSeries acc = base;
    for (long long i = 1; i < n; ++i) acc = qs_mul(acc, base);
    return acc;
}

void FracQSeries::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "D " << D_ << " order " << order_ << "\n";
    for (auto& [e, v] : c_)
        out << e << "\t" << v.num << "\t" << v.den << "\n";
}

FracQSeries FracQSeries::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string key1, key2;
    long long D = 0, order = 0;
    in >> key1 >> D >> key2 >> order;
    if (key1 != "D" || key2 != "order" || D <= 0)
        throw std::runtime_error("bad cache header in " + path);
    FracQSeries r(D, order);
    long long e, num, den;
    while (in >> e >> num >> den) {
        Rational v; v.num = num; v.den = den;   // stored reduced
        r.set(e, v);
    }
    return r;
}

FracQSeries eta_expansion(long long m, long long order_q24) {
    if (m < 1) throw std::domain_error("eta_expansion: m must be >= 1");
    FracQSeries r(24, order_q24);
    // eta(m z) = sum_j (-1)^j q^{m (6j-1)^2 / 24}
    if (m < order_q24) r.set(m, 1);          // j = 0
    for (long long j = 1;; ++j) {
        bool any = false;
        for (long long sj : {j, -j}) {
            long long t = 6 * sj - 1;
            long long e = m * t * t;
            if (e < order_q24) {
                r.set(e, r.coeff(e) + Rational((j % 2 == 0) ? 1 : -1));
                any = true;
            }
        }
        if (!any) break;
    }
    return r;
}

FracQSeries theta_expansion(long long m, long long order_q) {
    if (m < 1) throw std::domain_error("theta_expansion: m must be >= 1");
    FracQSeries r(1, order_q);
    r.set(0, 1);
    for (long long n = 1; m * n * n < order_q; ++n)
        r.set(m * n * n, 2);
    return r;
}

EtaQuotient eta_quotient(const std::vector<std::pair<long long, long long>>& spec,
                         long long order_q24) {
    if (spec.empty()) throw std::domain_error("eta_quotient: empty spec");
    Rational w(0);
    FracQSeries acc(24, order_q24);
    acc.set(0, 1);
    // order bookkeeping is handled by qs_mul/inverse; start generous
    bool first = true;
    for (auto& [m, r] : spec) {
        w += Rational(r, 2);
        FracQSeries e = eta_expansion(m, order_q24);
        FracQSeries p = e.pow(r);
        acc = first ? p : qs_mul(acc, p);
        first = false;
    }
    return {acc, w};
}

FracQSeries hecke_Tp2(const FracQSeries& f, long long k, const DirichletCharacter& chi, long long p) {
    if (chi.modulus() % p == 0) throw std::domain_error("hecke_Tp2: p divides the level");
    if (!f.is_integral()) throw std::domain_error("hecke_Tp2: series must have integral exponents");
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::domain_error("hecke_Tp2: p not prime");

    auto chi_sign = [&](long long x) -> long long {
        cplx v = chi(x);
        if (std::abs(v - cplx(1, 0)) < 1e-12) return 1;
        if (std::abs(v + cplx(1, 0)) < 1e-12) return -1;
        throw std::domain_error("hecke_Tp2: chi(p) not in {+-1}, exact path unavailable");
    };
    const long long cp = chi_sign(p), cp2 = chi_sign(p * p);

    long long pk1 = 1;                     // p^{k-1}, k >= 1 in our uses; k = 0 handled below
    for (long long i = 0; i + 1 < k; ++i) pk1 *= p;
    Rational pk1r = (k >= 1) ? Rational(pk1) : Rational(1, p);
    Rational p2k1r = pk1r * pk1r * Rational(p);   // p^{2k-1}

    const long long D = f.D();
    const long long ord_n = f.order() / D;        // order in q-units
    const long long out_ord = ord_n / (p * p);
    FracQSeries out(D, out_ord * D);
    long long sign_k = (k % 2 == 0) ? 1 : -1;
    for (long long n = 0; n < out_ord; ++n) {
        Rational b = f.coeff_q(p * p * n);
        if (n > 0) {
            long long ls = jacobi(((sign_k * n) % p + p) % p, p);
            if (ls != 0) b += Rational(cp * ls) * pk1r * f.coeff_q(n);
        }
        if (n % (p * p) == 0)
            b += Rational(cp2) * p2k1r * f.coeff_q(n / (p * p));
        out.set(n * D, b);
    }
    return out;
}

EigenResult eigen_check(const FracQSeries& f, long long k, const DirichletCharacter& chi,
                        long long p, long long order_q) {
    FracQSeries Tf = hecke_Tp2(f, k, chi, p);
    long long lim = std::min(order_q, Tf.order() / Tf.D());
    std::optional<Rational> lambda;
    bool nonzero = false;
    for (long long n = 0; n < lim; ++n) {
        Rational a = f.coeff_q(n), b = Tf.coeff_q(n);
        if (!a.is_zero()) {
            nonzero = true;
            Rational l = b / a;
            if (!lambda) lambda = l;
            else if (!(*lambda == l)) return {false, std::nullopt};
        } else if (!b.is_zero()) {
            return {false, std::nullopt};
        }
    }
    if (!nonzero) return {false, std::nullopt};
    return {true, lambda};
}

} // namespace halfint
