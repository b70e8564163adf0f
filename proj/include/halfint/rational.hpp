#ifndef HALFINT_RATIONAL_HPP
#define HALFINT_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <iosfwd>
#include <ostream>

namespace halfint {

// Exact rational on 64-bit limbs. Intermediates go through __int128 and
// overflow past 2^62 throws; the series and symbol workloads here stay
// far below that, and we would rather abort loudly than return garbage.
struct Rational {
    long long num = 0;
    long long den = 1;   // > 0, gcd(|num|, den) = 1

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    static long long checked(__int128 v) {
        constexpr __int128 lim = (__int128)1 << 62;
        if (v >= lim || v <= -lim)
            throw std::overflow_error("Rational: 64-bit overflow");
        return (long long)v;
    }

    void normalize() {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        long long g = std::gcd(a.den, b.den);
        __int128 n = (__int128)a.num * (b.den / g) + (__int128)b.num * (a.den / g);
        __int128 d = (__int128)(a.den / g) * b.den;
        Rational r; r.num = checked(n); r.den = checked(d); r.normalize(); return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num, b.den); }
    friend Rational operator-(const Rational& a) { Rational r = a; r.num = -r.num; return r; }
    friend Rational operator*(const Rational& a, const Rational& b) {
        long long g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
        long long g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
        Rational r;
        r.num = checked((__int128)(a.num / g1) * (b.num / g2));
        r.den = checked((__int128)(a.den / g2) * (b.den / g1));
        r.normalize(); return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::domain_error("Rational: division by zero");
        return a * Rational(b.den, b.num);
    }
    Rational& operator+=(const Rational& b) { *this = *this + b; return *this; }
    Rational& operator-=(const Rational& b) { *this = *this - b; return *this; }
    Rational& operator*=(const Rational& b) { *this = *this * b; return *this; }
    Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }
    int sign() const { return num > 0 ? 1 : (num < 0 ? -1 : 0); }
    double to_double() const { return (double)num / (double)den; }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }
};

} // namespace halfint

#endif
