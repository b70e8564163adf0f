// Batch front-end: construct forms, run the property-check suites, tabulate
// kernels and cusp coefficients, and verify the summation identity.
//
// Exit codes: 0 success / identity holds, 2 infrastructure failure,
// 3 identity violated beyond the tolerance.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "halfint/checks.hpp"
#include "halfint/forms.hpp"
#include "halfint/voronoi.hpp"

using namespace halfint;

namespace {

std::ostream* open_out(const std::string& path, std::ofstream& file) {
    if (path.empty()) return &std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    return &file;
}

FracQSeries inject_coeff_error(const FracQSeries& qs, long long n, double delta) {
    FracQSeries out = qs;
    Rational d((long long)std::llround(delta * 840), 840);   // exact small rational
    out.set(n * qs.D(), out.coeff_q(n) + d);
    return out;
}

int cmd_verify(CLI::App* sub) {
    auto form_path = sub->get_option("--form")->as<std::string>();
    long long a = sub->get_option("--a")->as<long long>();
    long long b = sub->get_option("--b")->as<long long>();
    double center = sub->get_option("--bump-center")->as<double>();
    double radius = sub->get_option("--bump-radius")->as<double>();
    double tol = sub->get_option("--tol")->as<double>();
    long long n_max = sub->get_option("--n-max")->as<long long>();
    bool json = sub->get_option("--json")->as<bool>();
    std::string out_path = sub->get_option("--out")->as<std::string>();
    std::string path_sel = sub->get_option("--path")->as<std::string>();
    std::string inject = sub->get_option("--inject-coeff-error")->as<std::string>();

    HalfIntegralForm form = load_form_manifest(form_path);
    std::unique_ptr<HalfIntegralForm> mutated;
    if (!inject.empty()) {
        auto colon = inject.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("--inject-coeff-error expects n:delta");
        long long n = std::stoll(inject.substr(0, colon));
        double delta = std::stod(inject.substr(colon + 1));
        mutated = std::make_unique<HalfIntegralForm>(
            form.label() + "+err", form.k(), form.N(), form.chi(), form.arch(),
            inject_coeff_error(form.qexp(), n, delta));
    }
    const HalfIntegralForm& f = mutated ? *mutated : form;

    VoronoiJob job;
    job.form = &f;
    job.a = a;
    job.b = b;
    job.F = TestFunction::bump(center, radius);
    job.tol = tol;
    job.rhs_n_max = n_max;
    job.path = path_sel == "corollary" ? VoronoiJob::Path::corollary
             : path_sel == "general"   ? VoronoiJob::Path::general
                                       : VoronoiJob::Path::automatic;

    VoronoiReport rep = verify(job);
    std::ofstream file;
    std::ostream& os = *open_out(out_path, file);
    if (json) {
        os << report_to_json(job, rep) << "\n";
    } else {
        os << "form        " << f.label() << "\n"
           << "cusp        " << a << "/" << b << "  (path: " << rep.path_used << ")\n"
           << "lhs         " << rep.lhs.real() << " + " << rep.lhs.imag() << "i  (" << rep.lhs_terms << " terms)\n"
           << "rhs         " << rep.rhs.real() << " + " << rep.rhs.imag() << "i  (" << rep.rhs_terms << " terms)\n"
           << "abs_err     " << rep.abs_err << "\n"
           << "rel_err     " << rep.rel_err << "\n"
           << "tail_est    " << rep.rhs_tail_estimate << "\n";
    }
    return rep.rel_err <= tol ? 0 : 3;
}

int cmd_check(CLI::App* sub) {
    std::string suite = sub->get_option("--suite")->as<std::string>();
    uint64_t seed = sub->get_option("--seed")->as<uint64_t>();
    long long count = sub->get_option("--count")->as<long long>();
    CheckReport rep = run_check_suite(suite, seed, count);
    std::cout << "suite " << rep.suite << ": " << rep.trials << " trials, "
              << rep.failures << " failures -> " << (rep.passed() ? "PASS" : "FAIL") << "\n";
    for (auto& c : rep.counterexamples) std::cout << "  counterexample: " << c << "\n";
    return rep.passed() ? 0 : 1;
}

int cmd_coeffs(CLI::App* sub) {
    auto form_path = sub->get_option("--form")->as<std::string>();
    long long n_max = sub->get_option("--n-max")->as<long long>();
    std::string cusp_str = sub->get_option("--cusp")->as<std::string>();
    bool json = sub->get_option("--json")->as<bool>();
    bool csv = sub->get_option("--csv")->as<bool>();
    std::string out_path = sub->get_option("--out")->as<std::string>();

    HalfIntegralForm form = load_form_manifest(form_path);
    std::ofstream file;
    std::ostream& os = *open_out(out_path, file);

    if (cusp_str.empty() || cusp_str == "infinity") {
        if (!form.has_qexp()) throw std::runtime_error("coeffs: form has no exact source");
        if (csv) os << "n,numerator,denominator\n";
        for (long long n = 0; n <= n_max; ++n) {
            Rational c = form.qexp().coeff_q(n);
            if (c.is_zero()) continue;
            if (json)
                os << "{\"n\":" << n << ",\"num\":" << c.num << ",\"den\":" << c.den << "}\n";
            else if (csv)
                os << n << "," << c.num << "," << c.den << "\n";
            else
                os << n << "\t" << c.str() << "\n";
        }
        return 0;
    }
    auto slash = cusp_str.find('/');
    if (slash == std::string::npos) throw std::runtime_error("coeffs: cusp must be a/b");
    long long ca = std::stoll(cusp_str.substr(0, slash));
    long long cb = std::stoll(cusp_str.substr(slash + 1));
    Cusp cusp(ca, cb, form.N(), form.chi().conductor());
    CuspCoefficients cc = coeffs_at_cusp_numeric(form, cusp, n_max);
    if (csv) os << "n,re,im,err\n";
    for (auto& [n, v] : cc.table) {
        double err = cc.error_at(n);
        if (json)
            os << "{\"n\":" << n << ",\"re\":" << v.real() << ",\"im\":" << v.imag()
               << ",\"err\":" << err << "}\n";
        else if (csv)
            os << n << "," << v.real() << "," << v.imag() << "," << err << "\n";
        else
            os << n << "\t" << v.real() << " + " << v.imag() << "i\t+- " << err << "\n";
    }
    return 0;
}

int cmd_kernel(CLI::App* sub) {
    std::string arch = sub->get_option("--arch")->as<std::string>();
    long long k = sub->get_option("--k")->as<long long>();
    double s_im = sub->get_option("--s-im")->as<double>();
    double s_re = sub->get_option("--s-re")->as<double>();
    int eps = sub->get_option("--eps")->as<int>();
    double x0 = sub->get_option("--x-min")->as<double>();
    double x1 = sub->get_option("--x-max")->as<double>();
    long long nx = sub->get_option("--x-count")->as<long long>();
    std::string out_path = sub->get_option("--out")->as<std::string>();

    KernelSpec spec = arch == "holomorphic"
                          ? KernelSpec::holomorphic(k, eps)
                          : KernelSpec::maass(cplx(s_re, s_im), k, eps);
    std::ofstream file;
    std::ostream& os = *open_out(out_path, file);
    os << "# kernel arch=" << arch << " k=" << k;
    if (arch != "holomorphic") os << " s=" << s_re << "+" << s_im << "i";
    os << " eps=" << (eps > 0 ? "+1" : "-1") << "\n";
    os << "x,re,im\n";
    os.precision(15);
    for (long long i = 0; i < nx; ++i) {
        double x = x0 + (x1 - x0) * (double)i / (double)std::max<long long>(nx - 1, 1);
        if (x == 0) x = (x1 > 0 ? 1e-9 : -1e-9);
        cplx v = kernel_eval(spec, x);
        os << x << "," << v.real() << "," << v.imag() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-integral weight forms: cocycles, kernels, summation identity"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file ('#' comments)");

    auto* verify_cmd = app.add_subcommand("verify", "check the summation identity for a form and cusp a/b");
    verify_cmd->add_option("--form", "form manifest path")->required();
    verify_cmd->add_option("--a", "twist numerator a")->default_val(1);
    verify_cmd->add_option("--b", "twist denominator b")->required();
    verify_cmd->add_option("--bump-center", "test bump center")->default_val(100.0);
    verify_cmd->add_option("--bump-radius", "test bump radius")->default_val(50.0);
    verify_cmd->add_option("--tol", "relative tolerance")->default_val(1e-6);
    verify_cmd->add_option("--n-max", "dual-sum cap")->default_val((long long)2000000);
    verify_cmd->add_option("--path", "auto|corollary|general")->default_val("auto");
    verify_cmd->add_option("--inject-coeff-error", "n:delta, perturb one coefficient (mutation testing)")
        ->default_val("");
    verify_cmd->add_flag("--json", "emit a single JSON line");
    verify_cmd->add_option("--out", "output path")->default_val("");

    auto* check_cmd = app.add_subcommand("check", "run a property-check suite");
    check_cmd->add_option("--suite", "cocycle|hilbert|lemma-s|theta-multiplier|bessel")->required();
    check_cmd->add_option("--seed", "RNG seed")->default_val((uint64_t)1);
    check_cmd->add_option("--count", "number of random trials")->default_val((long long)1000);

    auto* coeffs_cmd = app.add_subcommand("coeffs", "list Fourier coefficients");
    coeffs_cmd->add_option("--form", "form manifest path")->required();
    coeffs_cmd->add_option("--n-max", "largest n")->default_val((long long)100);
    coeffs_cmd->add_option("--cusp", "cusp a/b (default: infinity)")->default_val("");
    coeffs_cmd->add_flag("--json", "JSON lines");
    coeffs_cmd->add_flag("--csv", "CSV with header");
    coeffs_cmd->add_option("--out", "output path")->default_val("");

    auto* kernel_cmd = app.add_subcommand("kernel", "tabulate a Bessel kernel on a grid");
    kernel_cmd->add_option("--arch", "holomorphic|maass")->default_val("holomorphic");
    kernel_cmd->add_option("--k", "weight parameter k")->default_val((long long)1);
    kernel_cmd->add_option("--s-re", "Maass spectral parameter, real part")->default_val(0.0);
    kernel_cmd->add_option("--s-im", "Maass spectral parameter, imaginary part")->default_val(1.0);
    kernel_cmd->add_option("--eps", "sign epsilon (+1 or -1)")->default_val(1);
    kernel_cmd->add_option("--x-min", "grid start")->default_val(0.1);
    kernel_cmd->add_option("--x-max", "grid end")->default_val(10.0);
    kernel_cmd->add_option("--x-count", "grid size")->default_val((long long)64);
    kernel_cmd->add_option("--out", "output path")->default_val("");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(verify_cmd)) return cmd_verify(verify_cmd);
        if (app.got_subcommand(check_cmd)) return cmd_check(check_cmd);
        if (app.got_subcommand(coeffs_cmd)) return cmd_coeffs(coeffs_cmd);
        if (app.got_subcommand(kernel_cmd)) return cmd_kernel(kernel_cmd);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
