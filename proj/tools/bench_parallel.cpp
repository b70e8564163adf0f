// Benchmark: OpenMP-parallel kernels against their serial reference paths.
//
//   bench_parallel [--quick]
//
// Covers the three data-parallel hot spots: exact q-series convolution,
// cusp-coefficient extraction (sample evaluation + horocycle DFT), and a
// batch of Hankel transforms.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "halfint/bessel.hpp"
#include "halfint/forms.hpp"
#include "halfint/qseries.hpp"
#include "halfint/voronoi.hpp"

using namespace halfint;
using clk = std::chrono::steady_clock;

namespace {

double secs(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

void bench_convolution(bool quick) {
    long long n = quick ? 1500 : 4000;
    FracQSeries a(1, n), b(1, n);
    for (long long i = 0; i < n; ++i) {
        a.set(i, Rational((i * i + 1) % 17 - 8, 1 + i % 5));
        b.set(i, Rational((3 * i + 2) % 19 - 9, 1 + i % 4));
    }
    auto t0 = clk::now();
    FracQSeries s = qs_mul_serial(a, b);
    double ts = secs(t0);
    t0 = clk::now();
    FracQSeries p = qs_mul(a, b);
    double tp = secs(t0);
    bool same = s.coeffs() == p.coeffs();
    std::printf("convolution %lldx%lld     serial %7.3fs   parallel %7.3fs   speedup %.2fx   %s\n",
                n, n, ts, tp, ts / tp, same ? "results identical" : "MISMATCH");
}

void bench_extraction(bool quick) {
    long long n_max = quick ? 2000 : 6000;
    EtaQuotient eq = eta_quotient({{8, 3}}, 24 * 80000);
    HalfIntegralForm f0("eta8cube", 1, 64, DirichletCharacter::principal(64),
                        ArchType::holomorphic(), std::move(eq.series));
    Cusp c(1, 3, 64, 1);
    ExtractionOptions opt;
    opt.parallel = false;
    auto t0 = clk::now();
    CuspCoefficients r1 = coeffs_at_cusp_numeric(f0, c, n_max, opt);
    double ts = secs(t0);
    opt.parallel = true;
    t0 = clk::now();
    CuspCoefficients r2 = coeffs_at_cusp_numeric(f0, c, n_max, opt);
    double tp = secs(t0);
    double worst = 0;
    for (auto& [n, v] : r1.table) worst = std::max(worst, std::abs(v - r2.table.at(n)));
    std::printf("extraction n_max=%-6lld serial %7.3fs   parallel %7.3fs   speedup %.2fx   max diff %.1e\n",
                n_max, ts, tp, ts / tp, worst);
}

void bench_hankel(bool quick) {
    int count = quick ? 60 : 200;
    KernelSpec spec = KernelSpec::holomorphic(1, +1);
    TestFunction F = TestFunction::bump(100, 50);
    SupportedFunction sf = F.supported();
    std::vector<cplx> out((size_t)count);
    auto run = [&](bool par) {
        auto t0 = clk::now();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) if (par)
#endif
        for (int i = 0; i < count; ++i) {
            double alpha = (double)(2 * i + 1) * (2 * i + 1) / 4096.0;
            out[(size_t)i] = hankel_transform(sf, spec, alpha, 1e-11).value;
        }
        return secs(t0);
    };
    double ts = run(false);
    double tp = run(true);
    std::printf("hankel batch x%-8d serial %7.3fs   parallel %7.3fs   speedup %.2fx\n",
                count, ts, tp, ts / tp);
}

} // namespace

int main(int argc, char** argv) {
    bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel paths run serially\n");
#endif
    bench_convolution(quick);
    bench_extraction(quick);
    bench_hankel(quick);
    return 0;
}
