// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "fsis/coeffs.hpp"
#include "fsis/errors.hpp"
#include "fsis/harness.hpp"
#include "fsis/model.hpp"
#include "fsis/series.hpp"
#include "fsis/solvers.hpp"
#include "fsis/specfn.hpp"

#include <boost/math/special_functions/bernoulli.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace fsis;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail)
{
    std::printf("%s  %2d  %-34s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

std::string fmt(const char* f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

ModelParams endemic(double alpha)
{
    ModelParams p;
    p.beta = 0.7;
    p.gamma = 0.05;
    p.mu = 0.12;
    p.lambda = p.mu;
    p.alpha = alpha;
    p.I0 = 0.5 * derive(p).c;
    return p;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const fs::path kRoot = fs::current_path() / "acceptance_out";

void table1()
{
    const std::array<std::array<double, 3>, 3> reference{{{1e-5, 9e-4, 9e-4}, {1e-5, 2e-3, 2e-4}, {3e-5, 8e-3, 8e-3}}};
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<RunResult> rows = run_table1(kRoot / "table1");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    bool ok = secs < 5.0;
    std::string detail = fmt("%.2fs;", secs);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i].report;
        const double got[3] = {r.distance(Method::Series, Method::PECE), r.distance(Method::Series, Method::L1),
                               r.distance(Method::PECE, Method::L1)};
        detail += " a=" + format_double(rows[i].config.params.alpha) + ":";
        for (int j = 0; j < 3; ++j) {
            const double ratio = got[j] / reference[i][j];
            const bool within = ratio >= 0.1 && ratio <= 10.0;
            ok = ok && within;
            detail += fmt(" %.1e", got[j]) + (within ? "" : fmt("(x%.1f vs ", ratio) + fmt("%.0e)", reference[i][j]));
        }
    }
    report(1, "table1 distances", ok, detail);
}

void continuity()
{
    const ModelParams p = endemic(0.99);
    ConfigValues v = preset_values("c-nonzero");
    v["alpha"] = "0.99";
    const RunResult r = run(config_from_values(v));
    std::vector<double> classical(r.config.grid.size());
    for (long n = 0; n <= r.config.grid.N(); ++n)
        classical[n] = classical_sis(p, r.config.grid.t(n)).first;
    bool ok = true;
    std::string detail;
    for (Method m : {Method::Series, Method::PECE, Method::L1}) {
        const double d = max_abs_diff(r.trajectory(m).u, classical);
        ok = ok && d <= 1e-2;
        detail += std::string(to_string(m)) + fmt(" %.2e  ", d);
    }
    report(2, "alpha -> 1 continuity", ok, detail);
}

void blow_up()
{
    ConfigValues v = preset_values("c-zero");
    v["alpha"] = "0.5";
    const RunResult r = run(config_from_values(v));
    const auto t = r.series->first_divergence();
    const auto bounded = [](const Trajectory& tr) {
        for (double x : tr.u)
            if (!(x >= 0.0 && x <= 1.0))
                return false;
        return true;
    };
    const bool ok = t && *t <= 1.0 && bounded(r.trajectory(Method::PECE)) && bounded(r.trajectory(Method::L1));
    report(3, "c = 0 blow-up detection", ok,
           (t ? "series diverges at t=" + format_double(*t) : std::string("no divergence")) +
               (bounded(r.trajectory(Method::PECE)) && bounded(r.trajectory(Method::L1)) ? ", schemes in [0,1]"
                                                                                          : ", schemes leave [0,1]"));
}

void coefficient_oracles()
{
    // 1/(1+e^-x) = 1/2 + tanh(x/2)/2 and tanh y = sum_n 2^2n (2^2n - 1) B_2n y^(2n-1) / (2n)!
    std::vector<double> sig(10, 0.0);
    sig[0] = 0.5;
    for (int n = 1; 2 * n - 1 <= 9; ++n) {
        const double p = std::pow(2.0, 2 * n);
        const double coeff = p * (p - 1.0) * boost::math::bernoulli_b2n<double>(n) / std::tgamma(2 * n + 1.0) /
                             std::pow(2.0, 2 * n - 1) / 2.0;
        sig[2 * n - 1] = coeff * std::tgamma(2 * n); // times (2n-1)!
    }
    const CoeffTable e = euler_alpha(1.0, 9);
    const double de = max_abs_diff(e.values, sig);

    const CoeffTable a = a_coeffs(1.0 - 1e-12, 8);
    double da = 0.0;
    for (int k = 0; k <= 8; ++k)
        da = std::max(da, std::abs(a[k] - (k % 2 ? -1.0 : 1.0) * std::tgamma(k + 1.0) / std::pow(2.0, k + 1)));
    const bool ok = de <= 1e-10 && da <= 1e-8 && sig[3] == -0.125 && sig[5] == 0.25;
    report(4, "coefficient oracle equivalence", ok, fmt("euler vs sigmoid %.1e, ", de) + fmt("A vs closed form %.1e", da));
}

void even_vanishing()
{
    double worst = 0.0;
    for (double al : {0.3, 0.5, 0.7, 0.99}) {
        const CoeffTable e = euler_alpha(al, 20);
        for (int k = 1; k <= 10; ++k)
            worst = std::max(worst, std::abs(e[2 * k]));
    }
    report(5, "even alpha-Euler numbers vanish", worst < 1e-10, fmt("max |E_2k| = %.1e", worst));
}

void radius_ordering()
{
    bool ok = true;
    std::string detail;
    for (double al : {0.3, 0.5, 0.7}) {
        const RadiusEstimate r = empirical_radius(a_coeffs(al, 200), 1.0);
        const double bound = std::pow(0.5, 1.0 / al);
        ok = ok && r.empirical && *r.empirical >= 0.95 * bound;
        detail += "a=" + format_double(al) + fmt(" %.3f", r.empirical.value_or(0.0)) + fmt(">=%.3f; ", 0.95 * bound);
    }
    const ModelParams p = endemic(1.0);
    const double b = derive(p).b;
    const RadiusEstimate r = empirical_radius(euler_alpha(1.0, 200), b);
    const double pole = std::numbers::pi / b;
    const double rel = r.empirical ? std::abs(*r.empirical - pole) / pole : 1.0;
    ok = ok && rel <= 0.1;
    detail += fmt("alpha=1: %.3f", r.empirical.value_or(0.0)) + fmt(" vs pi/b %.3f", pole);
    report(6, "radius ordering", ok, detail);
}

void discrete_operators()
{
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double const_err = 0.0, lin_err = 0.0;
    bool preserved = true;
    for (double al : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double c0 = 10.0 * u(rng);
        for (double d : discrete_caputo_l1(std::vector<double>(101, c0), al, 0.05))
            const_err = std::max(const_err, std::abs(d));

        std::vector<double> x(101), y(101), z(101);
        const double a = u(rng), b = u(rng);
        for (int n = 0; n <= 100; ++n) {
            x[n] = u(rng);
            y[n] = u(rng);
            z[n] = a * x[n] + b * y[n];
        }
        const auto Dx = discrete_caputo_l1(x, al, 0.05), Dy = discrete_caputo_l1(y, al, 0.05),
                   Dz = discrete_caputo_l1(z, al, 0.05);
        for (std::size_t n = 0; n < Dz.size(); ++n)
            lin_err = std::max(lin_err, std::abs(Dz[n] - a * Dx[n] - b * Dy[n]));

        const TimeGrid g = TimeGrid::make(5.0, 0.05);
        const Rhs zero = [](double) { return 0.0; };
        for (double v : solve_pece(zero, c0, g, al).u)
            preserved = preserved && v == c0;
        for (double v : solve_l1(zero, c0, g, al).u)
            preserved = preserved && v == c0;
    }
    const bool ok = const_err <= 1e-12 && lin_err <= 1e-12 && preserved;
    report(7, "discrete operator properties", ok,
           fmt("constant %.1e, ", const_err) + fmt("linearity %.1e, ", lin_err) +
               (preserved ? "constants preserved" : "constants NOT preserved"));
}

void scheme_limits()
{
    const ModelParams p = endemic(0.999);
    const Rhs f = logistic_rhs(p, derive(p));
    const TimeGrid g = TimeGrid::make(5.0, 0.05);
    const Trajectory l1 = solve_l1(f, p.I0, g, 0.999);
    std::vector<double> euler(g.size());
    euler[0] = p.I0;
    for (long n = 0; n < g.N(); ++n)
        euler[n + 1] = euler[n] + g.dt() * f(euler[n]);
    const double d_l1 = max_abs_diff(l1.u, euler);

    const TimeGrid h = TimeGrid::make(1.0, 0.01);
    const Trajectory pece = solve_pece([](double x) { return -x; }, 1.0, h, 1.0);
    std::vector<double> heun(h.size());
    heun[0] = 1.0;
    for (long n = 0; n < h.N(); ++n) {
        const double pred = heun[n] - h.dt() * heun[n];
        heun[n + 1] = heun[n] + 0.5 * h.dt() * (-heun[n] - pred);
    }
    const double d_pece = max_abs_diff(pece.u, heun);
    report(8, "scheme limit checks", d_l1 <= 1e-3 && d_pece <= 1e-10,
           fmt("L1(0.999) vs Euler %.1e, ", d_l1) + fmt("PECE(1) vs Heun %.1e", d_pece));
}

void mittag_leffler_checks()
{
    double d_exp = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double z = -5.0 + 0.01 * i;
        d_exp = std::max(d_exp, std::abs(mittag_leffler(1.0, z) - std::exp(z)));
    }
    bool at_zero = true;
    for (int i = 1; i <= 100; ++i)
        at_zero = at_zero && mittag_leffler(0.01 * i, 0.0) == 1.0;
    const double d_erfc = std::abs(mittag_leffler(0.5, -1.0) - std::exp(1.0) * std::erfc(1.0));

    ModelParams p = endemic(0.6);
    bool constant = true;
    for (int i = 0; i <= 100; ++i)
        constant = constant && population_nt(p, 1234.5, 0.3 * i) == 1234.5;

    const bool ok = d_exp <= 1e-10 && at_zero && d_erfc <= 1e-8 && constant;
    report(9, "Mittag-Leffler correctness", ok,
           fmt("E_1 vs exp %.1e, ", d_exp) + fmt("E_1/2(-1) vs erfc %.1e, ", d_erfc) +
               (at_zero ? "E(0)=1, " : "E(0)!=1, ") + (constant ? "N(t) constant" : "N(t) varies"));
}

void determinism()
{
    std::vector<std::string> first;
    bool ok = true;
    for (const char* run_dir : {"det_a", "det_b"}) {
        const fs::path dir = kRoot / run_dir;
        fs::remove_all(dir);
        const std::vector<RunResult> rows = run_table1(dir);
        std::vector<std::string> texts{table1_csv(rows)};
        for (const RunResult& r : rows)
            for (const fs::path& f : emit(r))
                if (f.extension() == ".csv")
                    texts.push_back(slurp(f));
        if (first.empty())
            first = texts;
        else
            ok = texts == first;
    }
    report(10, "determinism", ok, std::to_string(first.size()) + " CSV documents compared byte for byte");
}

} // namespace

int main()
{
    const std::vector<std::function<void()>> criteria{table1,          continuity,         blow_up,
                                                      coefficient_oracles, even_vanishing, radius_ordering,
                                                      discrete_operators,  scheme_limits,  mittag_leffler_checks,
                                                      determinism};
    int id = 1;
    for (const auto& c : criteria) {
        try {
            c();
        } catch (const std::exception& e) {
            report(id, "criterion raised", false, e.what());
        }
        ++id;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
