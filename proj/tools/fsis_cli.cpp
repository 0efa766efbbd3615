// fsis: fractional SIS model runs from the command line.
//
//   fsis coeffs --kind euler --alpha 0.7 --K 30
//   fsis solve --preset c-nonzero --alpha 0.7 --method pece --out out/pece
//   fsis compare --config run.cfg --formats csv,json,svg
//   fsis table1 --out out/table1
//   fsis c0-suite --out out/c0
//   fsis population --alpha 0.5 --lambda 0.1 --mu 0.3 --N0 1000 --T 10 --dt 0.1
//
// Exit codes: 0 success, 1 validation error, 2 numeric failure.

#include "fsis/errors.hpp"
#include "fsis/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;

struct ConfigFlags {
    std::string config;
    fsis::ConfigValues values;

    void attach(CLI::App* app)
    {
        app->add_option("--config", config, "Config file (key = value lines) or a run manifest (.json)");
        for (const char* key : {"preset", "beta", "gamma", "mu", "lambda", "alpha", "i0", "T", "dt", "methods",
                                "terms", "out", "formats"}) {
            const std::string k = key;
            app->add_option_function<std::string>(
                "--" + k, [this, k](const std::string& v) { values[k] = v; }, "Override config key '" + k + "'");
        }
    }

    fsis::RunConfig resolve() const
    {
        fsis::ConfigValues merged;
        if (!config.empty())
            merged = fsis::read_config_values(config);
        // A preset given on the command line replaces the file's keys wholesale.
        if (values.count("preset"))
            merged.clear();
        for (const auto& [k, v] : values)
            merged[k] = v;
        return fsis::config_from_values(merged);
    }
};

void print_report(const fsis::ComparisonReport& report)
{
    std::printf("alpha = %s\n", fsis::format_double(report.alpha).c_str());
    for (const auto& p : report.pairs)
        std::printf("  |%s - %s|_inf = %.3e\n", std::string(fsis::to_string(p.a)).c_str(),
                    std::string(fsis::to_string(p.b)).c_str(), p.linf);
}

void print_written(const std::vector<std::filesystem::path>& files)
{
    for (const auto& f : files)
        std::printf("wrote %s\n", f.string().c_str());
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fractional SIS model: series solutions, PECE and L1 schemes"};
    app.require_subcommand(1);

    // coeffs
    auto* coeffs = app.add_subcommand("coeffs", "Dump a coefficient table as CSV k,value");
    std::string kind = "euler";
    double c_alpha = 1.0;
    int c_order = 20;
    std::string c_out;
    coeffs->add_option("--kind", kind, "euler (c != 0) or a (c = 0)")->check(CLI::IsMember({"euler", "a"}));
    coeffs->add_option("--alpha", c_alpha, "Fractional order in (0, 1]")->required();
    coeffs->add_option("--K", c_order, "Highest coefficient index");
    coeffs->add_option("--out", c_out, "Output file (stdout if omitted)");

    // solve / compare
    auto* solve = app.add_subcommand("solve", "Run one method and write its trajectory");
    ConfigFlags solve_flags;
    solve_flags.attach(solve);
    std::string method;
    solve->add_option("--method", method, "series, pece, l1 or classical")->required();

    auto* cmp = app.add_subcommand("compare", "Run all requested methods and report pairwise L-infinity distances");
    ConfigFlags cmp_flags;
    cmp_flags.attach(cmp);

    // presets
    auto* table1 = app.add_subcommand("table1", "c-nonzero preset, alpha in {0.99, 0.7, 0.3}");
    std::string t1_out = "out/table1";
    table1->add_option("--out", t1_out, "Output directory");

    auto* c0 = app.add_subcommand("c0-suite", "c-zero preset, alpha in {0.99, 0.7, 0.5}");
    std::string c0_out = "out/c0-suite";
    c0->add_option("--out", c0_out, "Output directory");

    // population
    auto* pop = app.add_subcommand("population", "Total population N(t) = N0 E_alpha((lambda - mu) t^alpha)");
    double p_alpha = 1.0, p_lambda = 0.0, p_mu = 0.0, p_n0 = 1.0, p_T = 1.0, p_dt = 0.1;
    std::string p_out;
    pop->add_option("--alpha", p_alpha)->required();
    pop->add_option("--lambda", p_lambda)->required();
    pop->add_option("--mu", p_mu)->required();
    pop->add_option("--N0", p_n0);
    pop->add_option("--T", p_T);
    pop->add_option("--dt", p_dt);
    pop->add_option("--out", p_out, "Output file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*coeffs) {
            const fsis::CoeffTable table =
                kind == "euler" ? fsis::euler_alpha(c_alpha, c_order) : fsis::a_coeffs(c_alpha, c_order);
            const std::string csv = fsis::coeffs_csv(table);
            if (c_out.empty())
                std::cout << csv;
            else
                fsis::write_text_file(c_out, csv);
        } else if (*solve) {
            solve_flags.values["methods"] = method;
            const fsis::RunConfig cfg = solve_flags.resolve();
            const fsis::RunResult r = fsis::run(cfg);
            print_written(fsis::emit(r));
            if (r.series && !r.series->all_converged())
                std::printf("note: series did not converge at every node (see manifest)\n");
        } else if (*cmp) {
            const fsis::RunResult r = fsis::run(cmp_flags.resolve());
            print_report(r.report);
            print_written(fsis::emit(r));
        } else if (*table1) {
            const auto rows = fsis::run_table1(t1_out);
            std::printf("%-6s %16s %16s %16s\n", "alpha", "|F - N1|", "|F - N2|", "|N1 - N2|");
            for (const auto& r : rows) {
                fsis::emit(r);
                using fsis::Method;
                std::printf("%-6s %16.1e %16.1e %16.1e\n", fsis::format_double(r.config.params.alpha).c_str(),
                            r.report.distance(Method::Series, Method::PECE),
                            r.report.distance(Method::Series, Method::L1),
                            r.report.distance(Method::PECE, Method::L1));
            }
            const std::filesystem::path csv = std::filesystem::path(t1_out) / "table1.csv";
            fsis::write_text_file(csv, fsis::table1_csv(rows));
            std::printf("wrote %s\n", csv.string().c_str());
        } else if (*c0) {
            const auto rows = fsis::run_c0_suite(c0_out);
            for (const auto& row : rows) {
                fsis::emit(row.run);
                const auto show = [](const std::optional<double>& t) {
                    return t ? fsis::format_double(*t) : std::string("none");
                };
                std::printf("alpha=%-5s series_diverged=%-5s first_divergence=%-5s schemes_bounded=%-5s "
                            "crossing(pece)=%s crossing(l1)=%s\n",
                            fsis::format_double(row.run.config.params.alpha).c_str(),
                            row.series_diverged ? "true" : "false", show(row.first_divergence).c_str(),
                            row.schemes_bounded ? "true" : "false", show(row.crossing_pece).c_str(),
                            show(row.crossing_l1).c_str());
            }
        } else if (*pop) {
            fsis::ModelParams p;
            p.alpha = p_alpha;
            p.lambda = p_lambda;
            p.mu = p_mu;
            if (!(p_alpha > 0.0 && p_alpha <= 1.0))
                throw fsis::ValidationError("alpha must lie in (0, 1]");
            const fsis::TimeGrid grid = fsis::TimeGrid::make(p_T, p_dt);
            std::string csv = "t,N\n";
            char buf[80];
            for (long n = 0; n <= grid.N(); ++n) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", grid.t(n), fsis::population_nt(p, p_n0, grid.t(n)));
                csv += buf;
            }
            if (p_out.empty())
                std::cout << csv;
            else
                fsis::write_text_file(p_out, csv);
        }
    } catch (const fsis::ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const fsis::DomainError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const fsis::HypothesisError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const fsis::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitValidation;
    } catch (const fsis::Error& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return kExitNumeric;
    }
    return 0;
}
