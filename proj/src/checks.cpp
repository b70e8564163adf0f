#include "halfint/checks.hpp"

#include "halfint/bessel.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>
#include <vector>

namespace halfint {

namespace {

void note_failure(CheckReport& rep, const std::string& msg) {
    ++rep.failures;
    if (rep.counterexamples.size() < 8) rep.counterexamples.push_back(msg);
}

Mat22 random_invertible(std::mt19937_64& rng, long long lim) {
    std::uniform_int_distribution<long long> d(-lim, lim);
    while (true) {
        Mat22 m{Rational(d(rng)), Rational(d(rng)), Rational(d(rng)), Rational(d(rng))};
        if (!m.det().is_zero()) return m;
    }
}

std::string mat_str(const Mat22& m) {
    std::ostringstream os;
    os << "(" << m.a << " " << m.b << "; " << m.c << " " << m.d << ")";
    return os.str();
}

} // namespace

Mat22 random_gamma0(std::mt19937_64& rng, long long N, long long tmax, bool gamma1) {
    std::uniform_int_distribution<long long> dt(-tmax, tmax);
    std::uniform_int_distribution<long long> dd(-4 * tmax, 4 * tmax);
    while (true) {
        long long c = N * dt(rng);
        long long d = dd(rng);
        if (gamma1) d = 4 * (d / 4) + 1;                  // d = 1 mod 4
        if (d % 2 == 0) continue;
        if (c == 0) {
            long long dl = gamma1 ? 1 : (d > 0 ? 1 : -1);
            return {Rational(dl), Rational(dt(rng)), Rational(0), Rational(dl)};
        }
        if (gcd_ll(c, d) != 1) continue;
        long long ac = c < 0 ? -c : c;
        long long a = ac == 1 ? 0 : inv_mod(d, ac);
        if (gamma1 && ac > 1) {
            // a = d^{-1} mod |c| and 4 | c force a = 1 mod 4 automatically
        }
        __int128 num = (__int128)a * d - 1;
        long long b = (long long)(num / c);
        if ((__int128)a * d - (__int128)b * c != 1) continue;
        return {Rational(a), Rational(b), Rational(c), Rational(d)};
    }
}

CheckReport check_cocycle(uint64_t seed, long long count) {
    CheckReport rep{"cocycle"};
    std::mt19937_64 rng(seed);
    const Place places[4] = {Place::real(), Place::padic(2), Place::padic(3), Place::padic(5)};
    for (long long i = 0; i < count; ++i) {
        Mat22 x = random_invertible(rng, 20);
        Mat22 y = random_invertible(rng, 20);
        Mat22 z = random_invertible(rng, 20);
        ++rep.trials;
        for (const Place& v : places) {
            MetaElement mx{x, 1, v}, my{y, 1, v}, mz{z, 1, v};
            MetaElement l = meta_mul(meta_mul(mx, my), mz);
            MetaElement r = meta_mul(mx, meta_mul(my, mz));
            if (!(l.g == r.g) || l.eps != r.eps) {
                std::ostringstream os;
                os << "assoc fails at " << (v.tag == Place::Tag::real ? "real" : "p=" + std::to_string(v.p))
                   << ": x=" << mat_str(x) << " y=" << mat_str(y) << " z=" << mat_str(z);
                note_failure(rep, os.str());
            }
        }
    }
    return rep;
}

int hilbert_solvability_oracle(long long a, long long b, long long p) {
    auto val = [&](long long x) {
        long long v = 0;
        while (x % p == 0) { x /= p; ++v; }
        return v;
    };
    // Hensel-sufficient modulus: a primitive zero mod p^m lifts to Z_p
    long long m = 1 + 2 * (val(std::llabs(a)) + val(std::llabs(b))) + (p == 2 ? 2 : 0);
    long long pm = 1;
    for (long long i = 0; i < m; ++i) pm *= p;
    long long am = ((a % pm) + pm) % pm, bm = ((b % pm) + pm) % pm;
    std::vector<char> is_square(pm, 0);
    for (long long z = 0; z < pm; ++z) is_square[(z * z) % pm] = 1;
    std::vector<long long> ax2(pm), by2(pm);
    for (long long t = 0; t < pm; ++t) {
        ax2[t] = (__int128)am * t % pm * t % pm;
        by2[t] = (__int128)bm * t % pm * t % pm;
    }
    // primitive zero: some coordinate is a unit.  If only z were a unit,
    // a x^2 + b y^2 would have positive valuation -- impossible.  So scan
    // (x unit, any y) and (x = 0 mod p, y unit).
    for (long long x = 0; x < pm; ++x) {
        bool xunit = x % p != 0;
        for (long long y = 0; y < pm; ++y) {
            if (!xunit && y % p == 0) continue;
            long long q = ax2[x] + by2[y];
            if (q >= pm) q -= pm;
            if (is_square[q]) return 1;
        }
    }
    return -1;
}

CheckReport check_hilbert(uint64_t seed, long long count) {
    CheckReport rep{"hilbert"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> dn(-60, 60), dd(1, 20);
    for (long long i = 0; i < count; ++i) {
        Rational a(dn(rng), dd(rng)), b(dn(rng), dd(rng));
        if (a.is_zero() || b.is_zero()) { --i; continue; }
        ++rep.trials;
        // symmetry and bilinearity at a random prime
        const long long ps[4] = {2, 3, 5, 7};
        long long p = ps[rng() % 4];
        Rational a2(dn(rng), dd(rng));
        if (a2.is_zero()) a2 = Rational(1);
        if (hilbert_padic(a, b, p) != hilbert_padic(b, a, p))
            note_failure(rep, "symmetry fails: a=" + a.str() + " b=" + b.str() + " p=" + std::to_string(p));
        if (hilbert_padic(a * a2, b, p) != hilbert_padic(a, b, p) * hilbert_padic(a2, b, p))
            note_failure(rep, "bilinearity fails: a=" + a.str() + " a2=" + a2.str() + " b=" + b.str() +
                              " p=" + std::to_string(p));
        // product formula over all relevant places
        int prod = hilbert_real(a, b);
        std::unordered_set<long long> places{2};
        for (long long v : {a.num, a.den, b.num, b.den})
            for (long long q : prime_factors(v)) places.insert(q);
        for (long long q : places) prod *= hilbert_padic(a, b, q);
        if (prod != 1)
            note_failure(rep, "product formula fails: a=" + a.str() + " b=" + b.str());
    }
    // solvability oracle on the fixed grid
    for (long long p : {2LL, 3LL, 5LL, 7LL}) {
        const long long grid[] = {1, -1, 2, -2, 3, -3, 5, -5, p, -p};
        for (long long a : grid)
            for (long long b : grid) {
                ++rep.trials;
                int lhs = hilbert_padic(Rational(a), Rational(b), p);
                int rhs = hilbert_solvability_oracle(a, b, p);
                if (lhs != rhs)
                    note_failure(rep, "oracle mismatch: [" + std::to_string(a) + "," +
                                      std::to_string(b) + "]_" + std::to_string(p) +
                                      " formula=" + std::to_string(lhs) +
                                      " oracle=" + std::to_string(rhs));
            }
    }
    return rep;
}

CheckReport check_lemma_s(uint64_t seed, long long count) {
    CheckReport rep{"lemma-s"};
    std::mt19937_64 rng(seed);
    for (long long i = 0; i < count; ++i) {
        Mat22 g = random_gamma0(rng, 4, 60000, /*gamma1=*/true);
        ++rep.trials;
        int sg = s_global(g);
        int ks = kronecker_shimura(g.c.num, g.d.num);
        if (sg != ks)
            note_failure(rep, "s(gamma) != (c/d) for gamma=" + mat_str(g) +
                              ": s=" + std::to_string(sg) + " symbol=" + std::to_string(ks));
    }
    return rep;
}

CheckReport check_theta_multiplier(uint64_t seed, long long count) {
    CheckReport rep{"theta-multiplier"};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.3, 1.5);
    for (long long i = 0; i < count; ++i) {
        Mat22 g1 = random_gamma0(rng, 4, 15);
        Mat22 g2 = random_gamma0(rng, 4, 15);
        cplx z(ux(rng), uy(rng));
        ++rep.trials;
        cplx g2z = (g2.a.to_double() * z + g2.b.to_double()) / (g2.c.to_double() * z + g2.d.to_double());
        cplx lhs = theta_multiplier(g1 * g2, z);
        cplx rhs = theta_multiplier(g1, g2z) * theta_multiplier(g2, z);
        if (std::abs(lhs - rhs) > 1e-10) {
            std::ostringstream os;
            os << "cocycle fails: g1=" << mat_str(g1) << " g2=" << mat_str(g2)
               << " z=" << z.real() << "+" << z.imag() << "i |diff|=" << std::abs(lhs - rhs);
            note_failure(rep, os.str());
        }
    }
    // theta-series consistency, |c| <= 40, Im z >= 0.3
    for (long long i = 0; i < count / 4 + 8; ++i) {
        Mat22 g = random_gamma0(rng, 4, 10);
        if (std::llabs(g.c.num) > 40) continue;
        cplx z(ux(rng), uy(rng));
        ++rep.trials;
        cplx gz = (g.a.to_double() * z + g.b.to_double()) / (g.c.to_double() * z + g.d.to_double());
        cplx ratio = theta_series(gz) / theta_series(z);
        cplx jt = theta_multiplier(g, z);
        if (std::abs(ratio - jt) > 1e-8) {
            std::ostringstream os;
            os << "theta ratio fails: g=" << mat_str(g) << " |diff|=" << std::abs(ratio - jt);
            note_failure(rep, os.str());
        }
    }
    return rep;
}

CheckReport check_bessel(uint64_t seed, long long count) {
    CheckReport rep{"bessel"};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.2, 40.0);
    auto closeness = [](double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-10}); };
    for (long long i = 0; i < count; ++i) {
        double x = ux(rng);
        ++rep.trials;
        // three-term recurrence J_{nu-1} + J_{nu+1} = (2 nu / x) J_nu
        long long nu_num = 1 + 2 * (long long)(rng() % 4);   // nu = 1/2 .. 7/2
        double nu = nu_num / 2.0;
        double lhs = bessel_J_halfint(nu_num, x) * (2.0 * nu / x);
        double rhs = (nu_num >= 3 ? bessel_J_halfint(nu_num - 2, x)
                                  : std::sqrt(2.0 / (M_PI * x)) * std::cos(x))   // J_{-1/2}
                     + bessel_J_halfint(nu_num + 2, x);
        if (closeness(lhs, rhs) > 1e-10 && std::abs(lhs - rhs) > 1e-12)
            note_failure(rep, "J recurrence fails at nu=" + std::to_string(nu) + " x=" + std::to_string(x));
        // closed forms
        double j12 = bessel_J_halfint(1, x);
        double ref12 = std::sqrt(2.0 / (M_PI * x)) * std::sin(x);
        if (std::abs(j12 - ref12) > 1e-12 * std::max(1.0, std::abs(ref12)))
            note_failure(rep, "J_{1/2} closed form fails at x=" + std::to_string(x));
        cplx k12 = bessel_K(cplx(0.5, 0), x);
        double refk = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x);
        if (std::abs(k12 - refk) > 1e-11 * refk)
            note_failure(rep, "K_{1/2} closed form fails at x=" + std::to_string(x));
        // kernel support
        KernelSpec holo_m = KernelSpec::holomorphic(1 + (long long)(rng() % 3), -1);
        if (kernel_eval(holo_m, x) != cplx(0, 0) || kernel_eval(holo_m, -x) != cplx(0, 0))
            note_failure(rep, "holomorphic minus kernel not identically zero");
        KernelSpec mp = KernelSpec::maass(cplx(0, 1.1), 1, +1);
        if (kernel_eval(mp, -x) != cplx(0, 0))
            note_failure(rep, "maass plus kernel not supported on x > 0");
    }
    return rep;
}

CheckReport run_check_suite(const std::string& name, uint64_t seed, long long count) {
    if (name == "cocycle") return check_cocycle(seed, count);
    if (name == "hilbert") return check_hilbert(seed, count);
    if (name == "lemma-s") return check_lemma_s(seed, count);
    if (name == "theta-multiplier") return check_theta_multiplier(seed, count);
    if (name == "bessel") return check_bessel(seed, count);
    throw std::domain_error("unknown check suite '" + name + "'");
}

} // namespace halfint
