#include "halfint/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace halfint {

long long gcd_ll(long long a, long long b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

int jacobi(long long a, long long n) {
    if (n <= 0 || n % 2 == 0) throw std::domain_error("jacobi: n must be positive odd");
    a %= n; if (a < 0) a += n;
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

int kronecker_shimura(long long c, long long d) {
    if (d % 2 == 0) throw std::domain_error("kronecker_shimura: d must be odd");
    if (d > 0) return d == 1 ? 1 : jacobi(c, d);
    long long ad = -d;
    if (c == 0) return ad == 1 ? 1 : 0;
    int s = ad == 1 ? 1 : jacobi(c, ad);
    return c > 0 ? s : -s;
}

int chi4(long long x) {
    if (x % 2 == 0) throw std::domain_error("chi4: x must be odd");
    long long r = x % 4; if (r < 0) r += 4;
    return r == 1 ? 1 : -1;
}

int eps_d_ipow(long long d) {
    return chi4(d) == 1 ? 0 : 1;
}

cplx eps_d(long long d) {
    return eps_d_ipow(d) == 0 ? cplx(1, 0) : cplx(0, 1);
}

int hilbert_real(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) throw std::domain_error("hilbert_real: zero argument");
    return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
}

long long padic_val(const Rational& x, long long p) {
    if (x.is_zero()) throw std::domain_error("padic_val: zero");
    long long v = 0;
    long long n = x.num < 0 ? -x.num : x.num;
    while (n % p == 0) { n /= p; ++v; }
    long long d = x.den;
    while (d % p == 0) { d /= p; --v; }
    return v;
}

namespace {

bool is_prime_small(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// (value, unit part) of a nonzero rational at p; unit returned as
// num*den with p-parts removed, which represents the same square class.
std::pair<long long, long long> val_unit(const Rational& x, long long p) {
    long long v = 0;
    long long n = x.num, d = x.den;
    while (n % p == 0) { n /= p; ++v; }
    while (d % p == 0) { d /= p; --v; }
    return {v, Rational::checked((__int128)n * d)};
}

} // namespace

int hilbert_padic(const Rational& a, const Rational& b, long long p) {
    if (a.is_zero() || b.is_zero()) throw std::domain_error("hilbert_padic: zero argument");
    if (!is_prime_small(p)) throw std::domain_error("hilbert_padic: p not prime");
    auto [al, u] = val_unit(a, p);
    auto [be, v] = val_unit(b, p);
    if (p != 2) {
        int s = 1;
        if ((al % 2) && (be % 2) && (p % 4 == 3)) s = -s;
        if (be % 2) s *= jacobi(u, p);
        if (al % 2) s *= jacobi(v, p);
        return s;
    }
    auto eps2 = [](long long u) { long long r = u % 8; if (r < 0) r += 8; return ((r - 1) / 2) % 2; };
    auto omega = [](long long u) { long long r = u % 8; if (r < 0) r += 8; return ((r * r - 1) / 8) % 2; };
    long long e = eps2(u) * eps2(v) + (al % 2 ? 1 : 0) * omega(v) + (be % 2 ? 1 : 0) * omega(u);
    return e % 2 ? -1 : 1;
}

std::vector<long long> prime_factors(long long n) {
    std::vector<long long> out;
    if (n < 0) n = -n;
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

long long inv_mod(long long a, long long m) {
    if (m <= 0) throw std::domain_error("inv_mod: modulus must be positive");
    long long a0 = a % m; if (a0 < 0) a0 += m;
    long long r0 = m, r1 = a0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        r0 -= q * r1; std::swap(r0, r1);
        t0 -= q * t1; std::swap(t0, t1);
    }
    if (r0 != 1) throw std::domain_error("inv_mod: arguments not coprime");
    return ((t0 % m) + m) % m;
}

long long gcd_pow_inf(long long n, long long x) {
    if (n == 0) throw std::domain_error("gcd_pow_inf: n = 0");
    if (n < 0) n = -n;
    if (x < 0) x = -x;
    long long part = 1, m = n;
    while (true) {
        long long g = std::gcd(m, x);
        if (g <= 1) break;
        part *= g;
        m /= g;
    }
    return part;
}

// ------------------------------------------------------------------

cplx RootOfUnity::to_complex() const {
    const double tau = 2.0 * M_PI * (double)num / (double)den;
    return {std::cos(tau), std::sin(tau)};
}

DirichletCharacter DirichletCharacter::principal(long long N) {
    DirichletCharacter c;
    c.N_ = N;
    for (long long u = 0; u < N; ++u)
        if (std::gcd(u, N) == 1) c.val_[u] = RootOfUnity{0, 1};
    c.M_ = 1;
    return c;
}

DirichletCharacter DirichletCharacter::chi4_induced(long long N) {
    if (N % 4 != 0) throw std::domain_error("chi4_induced: 4 must divide N");
    DirichletCharacter c;
    c.N_ = N;
    for (long long u = 0; u < N; ++u)
        if (std::gcd(u, N) == 1) c.val_[u] = (u % 4 == 1) ? RootOfUnity{0, 1} : RootOfUnity{1, 2};
    c.M_ = 4;
    return c;
}

DirichletCharacter DirichletCharacter::from_table(long long N, const std::map<long long, RootOfUnity>& values) {
    DirichletCharacter c;
    c.N_ = N;
    for (long long u = 0; u < N; ++u) {
        if (std::gcd(u, N) != 1) continue;
        auto it = values.find(u);
        if (it == values.end()) throw std::domain_error("character table incomplete");
        c.val_[u] = it->second;
    }
    // complete multiplicativity on units
    for (auto& [u, xu] : c.val_)
        for (auto& [v, xv] : c.val_) {
            long long uv = (u * v) % N;
            cplx lhs = c.val_.at(uv).to_complex();
            cplx rhs = xu.to_complex() * xv.to_complex();
            if (std::abs(lhs - rhs) > 1e-12)
                throw std::domain_error("character table not multiplicative");
        }
    c.compute_conductor();
    return c;
}

void DirichletCharacter::compute_conductor() {
    for (long long d = 1; d <= N_; ++d) {
        if (N_ % d != 0) continue;
        bool ok = true;
        for (auto& [u, x] : val_) {
            if (u % d == 1 % d && !x.is_one()) { ok = false; break; }
        }
        if (ok) { M_ = d; return; }
    }
    M_ = N_;
}

bool DirichletCharacter::is_even() const {
    long long m1 = ((-1) % N_ + N_) % N_;
    auto it = val_.find(m1);
    return it != val_.end() && it->second.is_one();
}

cplx DirichletCharacter::operator()(long long x) const {
    long long u = (x % N_ + N_) % N_;
    auto it = val_.find(u);
    return it == val_.end() ? cplx(0, 0) : it->second.to_complex();
}

RootOfUnity DirichletCharacter::angle(long long x) const {
    long long u = (x % N_ + N_) % N_;
    auto it = val_.find(u);
    if (it == val_.end()) throw std::domain_error("character angle: not a unit");
    return it->second;
}

// ------------------------------------------------------------------

Cusp::Cusp(long long a_, long long q_, long long N_in, long long M_in)
    : a(a_), q(q_), N(N_in), M(M_in) {
    if (q <= 0) throw std::domain_error("Cusp: denominator must be positive");
    if (N % 4 != 0) throw std::domain_error("Cusp: 4 must divide N");
    if (M <= 0 || N % M != 0) throw std::domain_error("Cusp: conductor must divide N");
    if (gcd_ll(a, q) != 1) throw std::domain_error("Cusp: a/q not in lowest terms");
}

Cusp Cusp::infinity(long long N, long long M) { return Cusp(1, N, N, M); }

Cusp Cusp::reduced() const {
    long long q0 = std::gcd(q, N);
    // numerator of the representative is irrelevant to width/delta;
    // pick one coprime to q0
    long long a0 = a % q0; if (a0 < 0) a0 += q0;
    while (q0 > 1 && std::gcd(a0, q0) != 1) ++a0;
    if (q0 == 1) a0 = 0;
    return Cusp(q0 == 1 ? (a0 == 0 ? 0 : a0) : a0, q0, N, M);
}

long long cusp_width(const Cusp& c) {
    if (c.N % c.q != 0)
        throw std::domain_error("cusp_width: q does not divide N, reduce the cusp first");
    return c.N / std::gcd(c.q * c.q, c.N);
}

long long cusp_delta(const Cusp& c) {
    if (c.N % c.q != 0)
        throw std::domain_error("cusp_delta: q does not divide N, reduce the cusp first");
    long long q2 = c.q * c.q;
    long long l = std::lcm(q2, c.N);
    l = std::lcm(l, c.q * c.M);
    return l / q2;
}

} // namespace halfint
