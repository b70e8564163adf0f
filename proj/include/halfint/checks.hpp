#ifndef HALFINT_CHECKS_HPP
#define HALFINT_CHECKS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "halfint/metaplectic.hpp"

namespace halfint {

struct CheckReport {
    std::string suite;
    long long trials = 0;
    long long failures = 0;
    std::vector<std::string> counterexamples;   // verbatim, first few
    bool passed() const { return failures == 0; }
};

// exact associativity of meta_mul (equivalently, the 2-cocycle identity for
// beta) at the real place and p in {2, 3, 5}
CheckReport check_cocycle(uint64_t seed, long long count);

// symmetry, bilinearity, the product formula over all places, and agreement
// with the mod-p^k solvability oracle on a fixed small grid
CheckReport check_hilbert(uint64_t seed, long long count);

// s_global(gamma) = (c/d) on random elements of Gamma_1(4)
CheckReport check_lemma_s(uint64_t seed, long long count);

// theta cocycle identity and the theta-series ratio against the closed form
CheckReport check_theta_multiplier(uint64_t seed, long long count);

// half-integral J recurrence, closed forms for J_{1/2}, J_{3/2}, K_{1/2},
// kernel support conditions
CheckReport check_bessel(uint64_t seed, long long count);

CheckReport run_check_suite(const std::string& name, uint64_t seed, long long count);

// random element of Gamma_0(N) (gamma1: force a = d = 1 mod N on top of it)
Mat22 random_gamma0(std::mt19937_64& rng, long long N, long long tmax, bool gamma1 = false);

// brute-force solvability oracle for z^2 = a x^2 + b y^2 over Q_p:
// primitive zero search modulo p^m with m = 1 + 2(v(a)+v(b)) + 2 [p = 2]
int hilbert_solvability_oracle(long long a, long long b, long long p);

} // namespace halfint

#endif
