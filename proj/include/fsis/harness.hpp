#pragma once

#include "fsis/coeffs.hpp"
#include "fsis/model.hpp"
#include "fsis/series.hpp"
#include "fsis/solvers.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fsis {

enum class OutputFormat { Csv, Json, Svg };

std::string_view to_string(OutputFormat f);

/// Flat key/value view of a run configuration. Keys: beta, gamma, mu, lambda,
/// alpha, i0, T, dt, methods, terms, out, formats, preset.
using ConfigValues = std::map<std::string, std::string>;

struct RunConfig {
    ModelParams params;
    TimeGrid grid = TimeGrid::make(5.0, 0.05);
    std::set<Method> methods;
    int series_terms = 120;
    std::filesystem::path output_dir = "out";
    std::set<OutputFormat> formats{OutputFormat::Csv, OutputFormat::Json};
    std::string preset;

    /// The key/value form that reproduces this config through config_from_values.
    ConfigValues to_values() const;
};

/// Named parameter sets for the two reference experiments:
///   c-nonzero  beta=0.7 gamma=0.05 mu=0.12, I0=c/2, T=5, dt=0.05
///   c-zero     beta=0.7 gamma=0.07 mu=0.63, I0=1/(2 beta), T=1, dt=0.01
ConfigValues preset_values(const std::string& name);
std::vector<std::string> preset_names();

/// Parses `key = value` lines ('#' starts a comment). A `.json` path is read as
/// a run manifest written by emit() and yields that run's configuration.
/// Throws ParseError (with line number) or ValidationError.
ConfigValues read_config_values(const std::filesystem::path& path);
ConfigValues parse_config_text(const std::string& text);

/// Applies the preset named by values["preset"] (if any), then the explicit
/// keys, fills defaults (T=5, dt=0.05, terms=120, formats=csv,json,
/// methods=pece, lambda=mu, i0=auto) and validates.
RunConfig config_from_values(const ConfigValues& values);

RunConfig load_config(const std::filesystem::path& path);

struct PairDistance {
    Method a;
    Method b;
    double linf;
};

struct ComparisonReport {
    std::vector<PairDistance> pairs;
    TimeGrid grid;
    double alpha;

    /// Throws std::out_of_range if the pair was not compared.
    double distance(Method a, Method b) const;
};

/// max_n |a.u_n - b.u_n|; throws GridMismatchError for different grids.
double linf_distance(const Trajectory& a, const Trajectory& b);

/// Every unordered pair, in input order.
ComparisonReport compare(const std::vector<Trajectory>& trajectories, double alpha);

struct RunResult {
    RunConfig config;
    DerivedParams derived;
    std::vector<Trajectory> trajectories; // in Method order
    std::optional<SeriesTrajectory> series;
    std::optional<RadiusEstimate> series_radius;
    ComparisonReport report;

    const Trajectory& trajectory(Method m) const;
};

/// Runs every requested method on the config's grid.
RunResult run(const RunConfig& config);

/// Table of L-infinity distances for alpha in {0.99, 0.7, 0.3} on the c-nonzero preset.
std::vector<RunResult> run_table1(const std::filesystem::path& output_dir = "out");

/// `alpha,series_vs_pece,series_vs_l1,pece_vs_l1` with one row per run.
std::string table1_csv(const std::vector<RunResult>& rows);

/// First grid time at which the ordering of I and S differs from the one at t = 0.
std::optional<double> crossing_time(const Trajectory& traj);

struct C0SuiteRow {
    RunResult run;
    bool series_diverged = false;
    std::optional<double> first_divergence;
    bool schemes_bounded = false; // PECE and L1 stay in [0, 1]
    std::optional<double> crossing_pece;
    std::optional<double> crossing_l1;
};

/// c-zero preset for alpha in {0.99, 0.7, 0.5}, all four methods.
std::vector<C0SuiteRow> run_c0_suite(const std::filesystem::path& output_dir = "out");

/// Writes into result.config.output_dir:
///   csv   `<method>.csv` with columns t,I,S
///   json  `trajectories.json`, {"t": [...], "<method>": [I...]}
///   svg   `plot.svg`
/// plus `manifest.json` for every run. Returns the paths written.
std::vector<std::filesystem::path> emit(const RunResult& result);

/// `t,I,S` with 17 significant digits, S written as 1 - I.
std::string trajectory_csv(const Trajectory& traj);

std::string coeffs_csv(const CoeffTable& table);

std::string svg_plot(const std::vector<Trajectory>& trajectories, const std::string& title);

/// Shortest decimal text that reads back as the same double.
std::string format_double(double x);

void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace fsis
