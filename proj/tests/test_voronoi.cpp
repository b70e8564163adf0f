#include <doctest.h>

#include <cmath>
#include <random>

#include <json.hpp>

#include "halfint/voronoi.hpp"

using namespace halfint;

namespace {

HalfIntegralForm make_f0(long long order_q) {
    EtaQuotient eq = eta_quotient({{8, 3}}, 24 * order_q);
    return HalfIntegralForm("eta8cube", 1, 64, DirichletCharacter::principal(64),
                            ArchType::holomorphic(), std::move(eq.series));
}

} // namespace

TEST_CASE("TestFunction bump") {
    TestFunction F = TestFunction::bump(100, 50);
    CHECK(F(49.9) == 0.0);
    CHECK(F(150.1) == 0.0);
    CHECK(F(100) == doctest::Approx(std::exp(-1.0)));
    CHECK(F(80) > 0);
    CHECK(F.lo() == 50);
    CHECK(F.hi() == 150);
    CHECK_THROWS_AS(TestFunction::bump(1.0, 2.0), std::domain_error);
    TestFunction g = TestFunction::sampled([](double y) { return y; }, 1, 2);
    CHECK(g(1.5) == 1.5);
}

TEST_CASE("normalize_twist") {
    // b = 0 mod N with a already coprime: unchanged
    CHECK(normalize_twist(3, 64, 64) == 3);
    // a sharing a factor with N gets shifted by a multiple of b
    long long ap = normalize_twist(2, 5, 64);
    CHECK((ap - 2) % 5 == 0);
    CHECK(gcd_ll(ap, 5 * 64) == 1);
    CHECK_THROWS_AS(normalize_twist(3, 6, 64), std::domain_error);  // gcd(a,b) != 1
    std::mt19937_64 rng(51);
    int done = 0;
    while (done < 100) {
        long long N = 4 * (1 + (long long)(rng() % 24));
        long long b = 1 + (long long)(rng() % 40);
        long long a = (long long)(rng() % 80) - 40;
        if (a == 0 || gcd_ll(a, b) != 1) continue;
        ++done;
        long long a2 = normalize_twist(a, b, N);
        CHECK((a2 - a) % b == 0);
        CHECK(gcd_ll(a2, b * N) == 1);
        Cusp c(((a2 % b) + b) % b == 0 ? 1 : a2, b, N, 1);   // delta needs lowest terms
        long long delta = cusp_delta(Cusp(1, gcd_ll(b, N), N, 1));
        CHECK(gcd_ll(a2, b * delta) == 1);
    }
}

TEST_CASE("lhs_sum") {
    HalfIntegralForm f0 = make_f0(400);
    VoronoiJob job;
    job.form = &f0;
    job.a = 1;
    job.b = 64;

    // no integer in the support: empty sum
    job.F = TestFunction::bump(0.5, 0.45);
    SumResult s = lhs_sum(job);
    CHECK(s.value == cplx(0, 0));
    CHECK(s.terms == 0);

    // single term n = 9 with a_f(9) = -3
    job.F = TestFunction::bump(9.0, 0.9);
    job.a = 5;
    s = lhs_sum(job);
    CHECK(s.terms == 1);
    cplx ref = std::polar(1.0, 2.0 * M_PI * 45.0 / 64.0) * cplx(-3, 0) * job.F(9.0);
    CHECK(std::abs(s.value - ref) < 1e-15);

    // invariance under a -> a + m b, exactly
    VoronoiJob job2 = job;
    job2.a = job.a + 7 * job.b;
    CHECK(lhs_sum(job2).value == s.value);
    job2.a = normalize_twist(job.a, job.b, 64);
    CHECK(lhs_sum(job2).value == s.value);

    // coefficient source shorter than the support is an error
    job.F = TestFunction::bump(500, 20);
    CHECK_THROWS_AS(lhs_sum(job), std::runtime_error);
}

TEST_CASE("verify: zero form") {
    FracQSeries z(24, 24 * 300);
    HalfIntegralForm zero("zero", 1, 64, DirichletCharacter::principal(64),
                          ArchType::holomorphic(), std::move(z));
    VoronoiJob job;
    job.form = &zero;
    job.a = 1;
    job.b = 64;
    job.F = TestFunction::bump(100, 50);
    job.rhs_n_max = 200;
    VoronoiReport rep = verify(job);
    CHECK(rep.lhs == cplx(0, 0));
    CHECK(rep.rhs == cplx(0, 0));
    CHECK(rep.abs_err == 0.0);
    CHECK(rep.rel_err == 0.0);
}

TEST_CASE("verify: corollary identity at desk scale, report fields") {
    HalfIntegralForm f0 = make_f0(500000);
    VoronoiJob job;
    job.form = &f0;
    job.a = 3;
    job.b = 64;
    job.F = TestFunction::bump(100, 50);
    job.tol = 1e-6;
    job.rhs_n_max = 450000;
    VoronoiReport rep = verify(job);
    CHECK(rep.path_used == "corollary");
    CHECK(rep.rel_err < 1e-6);
    CHECK(rep.rel_err == rep.abs_err / std::max(std::abs(rep.lhs), 1.0));
    REQUIRE(rep.cusp_constant_used.has_value());
    CHECK(std::abs(*rep.cusp_constant_used - cusp_constant_corollary(3, 64, 1, f0.chi())) < 1e-15);
    CHECK(rep.lhs_terms == 2);

    // report invariance: a -> a + b leaves the lhs bit-identical
    VoronoiJob jb = job;
    jb.a += job.b;
    VoronoiReport rep2 = verify(jb);
    CHECK(rep2.lhs == rep.lhs);

    // JSON: one line, parses, echoes the job
    std::string line = report_to_json(job, rep);
    CHECK(line.find('\n') == std::string::npos);
    auto j = nlohmann::json::parse(line);
    CHECK(j["job"]["a"] == 3);
    CHECK(j["job"]["b"] == 64);
    CHECK(j["lhs"]["re"].get<double>() == rep.lhs.real());
    CHECK(j["rel_err"].get<double>() == rep.rel_err);
    CHECK(j["path"] == "corollary");
}

TEST_CASE("corollary and general paths agree at matched caps") {
    HalfIntegralForm f0 = make_f0(4000);
    VoronoiJob job;
    job.form = &f0;
    job.a = 3;
    job.b = 64;
    job.F = TestFunction::bump(100, 50);
    job.tol = 1e-8;          // keep the truncation rule from firing early
    job.rhs_n_max = 3000;
    cplx C;
    SumResult cor = rhs_sum_corollary(job, &C);
    SumResult gen = rhs_sum_general(job);
    CHECK(cor.terms == gen.terms);
    CHECK(std::abs(cor.value - gen.value) < 1e-6);
}

TEST_CASE("delta and argument bookkeeping in the general path") {
    HalfIntegralForm f0 = make_f0(600);
    // cusp 1/3 of level 64 has delta = 64; abar is the inverse mod b delta
    Cusp c(1, 3, 64, 1);
    CHECK(cusp_delta(c.reduced()) == 64);
    CHECK(inv_mod(1, 3 * 64) == 1);
    // doubling b quarters the transform argument n / (delta b^2)
    for (long long n : {1LL, 9LL, 49LL}) {
        double a1 = (double)n / (1.0 * 64 * 64);
        double a2 = (double)n / (1.0 * 128 * 128);
        CHECK(a1 == 4.0 * a2);
    }
}

TEST_CASE("doubling the cap stays within the reported tail estimate") {
    HalfIntegralForm f0 = make_f0(200000);
    VoronoiJob job;
    job.form = &f0;
    job.a = 1;
    job.b = 64;
    job.F = TestFunction::bump(100, 50);
    job.tol = 1e-12;       // force cap-limited truncation
    job.rhs_n_max = 40000;
    SumResult r1 = rhs_sum_corollary(job);
    job.rhs_n_max = 80000;
    SumResult r2 = rhs_sum_corollary(job);
    CHECK(std::abs(r2.value - r1.value) <= r1.tail_estimate * 1.5 + 1e-12);
}

TEST_CASE("holomorphic dual side has no negative-frequency terms") {
    HalfIntegralForm f0 = make_f0(3000);
    VoronoiJob job;
    job.form = &f0;
    job.a = 1;
    job.b = 64;
    job.F = TestFunction::bump(100, 50);
    job.rhs_n_max = 2500;
    // the minus kernel is identically zero, so restricting hankel to
    // negative arguments contributes exactly nothing
    KernelSpec minus = KernelSpec::holomorphic(1, -1);
    auto Ft = job.F.weighted([&](double y) { return f0.spectral_weight(y); });
    for (long long n : {1LL, 9LL, 25LL}) {
        HankelResult h = hankel_transform(Ft, minus, -(double)n / 4096.0, 1e-10);
        CHECK(h.value == cplx(0, 0));
    }
}
