#include "fsis/harness.hpp"

#include "fsis/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fsis {

namespace {

constexpr std::array<const char*, 13> kKeys = {"beta", "gamma", "mu",    "lambda",  "alpha",
                                                "i0",   "T",     "dt",    "methods", "terms",
                                                "out",  "formats", "preset"};

constexpr double kTheoremDatumTol = 1e-12;

bool is_known_key(const std::string& key)
{
    return std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end();
}

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

double parse_number(const std::string& key, const std::string& text)
{
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ValidationError("config key '" + key + "': not a finite number: '" + text + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& text)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ValidationError("config key '" + key + "': not an integer: '" + text + "'");
    return v;
}

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (const auto& s : items) {
        if (!out.empty())
            out += ',';
        out += s;
    }
    return out;
}

std::optional<OutputFormat> parse_format(const std::string& name)
{
    for (OutputFormat f : {OutputFormat::Csv, OutputFormat::Json, OutputFormat::Svg})
        if (name == to_string(f))
            return f;
    return std::nullopt;
}

bool near(double a, double b)
{
    return std::fabs(a - b) <= kTheoremDatumTol * std::max(1.0, std::fabs(b));
}

void validate_series_request(const ModelParams& p, const DerivedParams& d)
{
    if (d.c > 0.0) {
        if (!(std::pow(d.b, 1.0 / p.alpha) < 1.0))
            throw ValidationError("method series: the c != 0 series requires b^(1/alpha) < 1");
        if (!near(p.I0, d.c / 2.0))
            throw ValidationError("method series: the c != 0 series requires i0 = c/2");
    } else if (std::fabs(d.c) <= kTheoremDatumTol) {
        if (!near(p.I0, 1.0 / (2.0 * p.beta)))
            throw ValidationError("method series: the c = 0 series requires i0 = 1/(2 beta)");
    } else {
        throw ValidationError("method series: requires c > 0 or c = 0 (sigma >= 1)");
    }
}

} // namespace

std::string_view to_string(OutputFormat f)
{
    switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::Svg: return "svg";
    }
    return "unknown";
}

std::string format_double(double x)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

std::vector<std::string> preset_names()
{
    return {"c-nonzero", "c-zero"};
}

ConfigValues preset_values(const std::string& name)
{
    if (name == "c-nonzero")
        return {{"beta", "0.7"}, {"gamma", "0.05"}, {"mu", "0.12"},   {"alpha", "0.99"},
                {"i0", "auto"},  {"T", "5"},        {"dt", "0.05"},   {"terms", "200"},
                {"methods", "series,pece,l1,classical"}, {"preset", name}};
    if (name == "c-zero")
        return {{"beta", "0.7"}, {"gamma", "0.07"}, {"mu", "0.63"},   {"alpha", "0.99"},
                {"i0", "auto"},  {"T", "1"},        {"dt", "0.01"},   {"terms", "150"},
                {"methods", "series,pece,l1,classical"}, {"preset", name}};
    throw ValidationError("unknown preset '" + name + "' (known: c-nonzero, c-zero)");
}

ConfigValues parse_config_text(const std::string& text)
{
    ConfigValues values;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ParseError("line " + std::to_string(lineno) + ": missing key");
        if (!is_known_key(key))
            throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (values.count(key))
            throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        values[key] = value;
    }
    return values;
}

ConfigValues read_config_values(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();

    if (path.extension() != ".json")
        return parse_config_text(buf.str());

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (!j.contains("config") || !j["config"].is_object())
        throw ParseError(path.string() + ": manifest has no 'config' object");
    ConfigValues values;
    for (const auto& [key, value] : j["config"].items()) {
        if (!is_known_key(key))
            throw ParseError(path.string() + ": unknown config key '" + key + "'");
        if (!value.is_string())
            throw ParseError(path.string() + ": config value for '" + key + "' must be a string");
        values[key] = value.get<std::string>();
    }
    return values;
}

RunConfig config_from_values(const ConfigValues& values)
{
    ConfigValues v;
    if (auto it = values.find("preset"); it != values.end() && !it->second.empty())
        v = preset_values(it->second);
    for (const auto& [key, value] : values) {
        if (!is_known_key(key))
            throw ValidationError("unknown config key '" + key + "'");
        v[key] = value;
    }

    auto require = [&](const char* key) -> const std::string& {
        auto it = v.find(key);
        if (it == v.end() || it->second.empty())
            throw ValidationError(std::string("missing required config key '") + key + "'");
        return it->second;
    };
    auto get_or = [&](const char* key, const char* fallback) {
        auto it = v.find(key);
        return it == v.end() || it->second.empty() ? std::string(fallback) : it->second;
    };

    RunConfig cfg;
    cfg.preset = get_or("preset", "");
    ModelParams& p = cfg.params;
    p.beta = parse_number("beta", require("beta"));
    p.gamma = parse_number("gamma", require("gamma"));
    p.mu = parse_number("mu", require("mu"));
    p.lambda = v.count("lambda") && !v["lambda"].empty() ? parse_number("lambda", v["lambda"]) : p.mu;
    p.alpha = parse_number("alpha", require("alpha"));

    p.I0 = 0.0;
    p.validate(); // rates and alpha, before anything is derived from them

    const std::string i0 = get_or("i0", "auto");
    if (i0 == "auto") {
        if (!(p.gamma + p.mu > 0.0) || !(p.beta > 0.0))
            throw ValidationError("i0=auto needs beta > 0 and gamma + mu > 0");
        const DerivedParams d = derive(p);
        if (d.c > 0.0)
            p.I0 = d.c / 2.0;
        else if (std::fabs(d.c) <= kTheoremDatumTol)
            p.I0 = 1.0 / (2.0 * p.beta);
        else
            throw ValidationError("i0=auto is only defined for c > 0 (c/2) or c = 0 (1/(2 beta))");
    } else {
        p.I0 = parse_number("i0", i0);
    }
    p.validate();

    cfg.grid = TimeGrid::make(parse_number("T", get_or("T", "5")), parse_number("dt", get_or("dt", "0.05")));

    cfg.series_terms = parse_int("terms", get_or("terms", "120"));
    if (cfg.series_terms < 1 || cfg.series_terms > kMaxCoeffOrder)
        throw ValidationError("terms must lie in [1, " + std::to_string(kMaxCoeffOrder) + "]");

    cfg.output_dir = get_or("out", "out");

    cfg.formats.clear();
    for (const auto& name : split_list(get_or("formats", "csv,json"))) {
        auto f = parse_format(name);
        if (!f)
            throw ValidationError("unknown output format '" + name + "' (csv, json, svg)");
        cfg.formats.insert(*f);
    }

    for (const auto& name : split_list(get_or("methods", "pece"))) {
        auto m = parse_method(name);
        if (!m)
            throw ValidationError("unknown method '" + name + "' (series, pece, l1, classical)");
        cfg.methods.insert(*m);
    }
    if (cfg.methods.empty())
        throw ValidationError("at least one method is required");

    if (cfg.methods.count(Method::L1) && !(p.alpha < 1.0))
        throw ValidationError("method l1 requires 0 < alpha < 1: the L1 scheme excludes the extreme values of alpha");
    if (cfg.methods.count(Method::Series))
        validate_series_request(p, derive(p));

    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    return config_from_values(read_config_values(path));
}

ConfigValues RunConfig::to_values() const
{
    std::vector<std::string> m;
    for (Method x : methods)
        m.emplace_back(to_string(x));
    std::vector<std::string> f;
    for (OutputFormat x : formats)
        f.emplace_back(to_string(x));
    return {{"beta", format_double(params.beta)},
            {"gamma", format_double(params.gamma)},
            {"mu", format_double(params.mu)},
            {"lambda", format_double(params.lambda)},
            {"alpha", format_double(params.alpha)},
            {"i0", format_double(params.I0)},
            {"T", format_double(grid.T())},
            {"dt", format_double(grid.dt())},
            {"methods", join(m)},
            {"terms", std::to_string(series_terms)},
            {"out", output_dir.string()},
            {"formats", join(f)}};
}

double ComparisonReport::distance(Method a, Method b) const
{
    for (const auto& p : pairs)
        if ((p.a == a && p.b == b) || (p.a == b && p.b == a))
            return p.linf;
    throw std::out_of_range("ComparisonReport: pair not compared");
}

double linf_distance(const Trajectory& a, const Trajectory& b)
{
    if (!(a.grid == b.grid) || a.u.size() != b.u.size())
        throw GridMismatchError("linf_distance: trajectories live on different grids");
    double d = 0.0;
    for (std::size_t n = 0; n < a.u.size(); ++n)
        d = std::max(d, std::fabs(a.u[n] - b.u[n]));
    return d;
}

ComparisonReport compare(const std::vector<Trajectory>& trajectories, double alpha)
{
    if (trajectories.empty())
        throw DomainError("compare: no trajectories");
    ComparisonReport report{{}, trajectories.front().grid, alpha};
    for (std::size_t i = 0; i < trajectories.size(); ++i)
        for (std::size_t j = i + 1; j < trajectories.size(); ++j)
            report.pairs.push_back({trajectories[i].method, trajectories[j].method,
                                    linf_distance(trajectories[i], trajectories[j])});
    return report;
}

const Trajectory& RunResult::trajectory(Method m) const
{
    for (const auto& t : trajectories)
        if (t.method == m)
            return t;
    throw std::out_of_range("RunResult: method was not run");
}

RunResult run(const RunConfig& config)
{
    const ModelParams& p = config.params;
    const DerivedParams d = derive(p);
    const LogisticRhs f = logistic_rhs(p, d);

    std::vector<Trajectory> trajectories;
    std::optional<SeriesTrajectory> series;
    std::optional<RadiusEstimate> series_radius;
    for (Method m : config.methods) {
        switch (m) {
        case Method::Series: {
            const int K = config.series_terms;
            const EvalPolicy policy{1e-14, K + 1};
            const SeriesSolution solution = d.c > 0.0
                                                ? build_series_thm1(d, p.alpha, euler_alpha(p.alpha, K))
                                                : build_series_thm2(d, p.beta, p.alpha, a_coeffs(p.alpha, K));
            series = sample_trajectory(solution, config.grid, policy);
            series_radius = solution.radius();
            trajectories.push_back(series->trajectory);
            break;
        }
        case Method::PECE:
            trajectories.push_back(solve_pece(f, p.I0, config.grid, p.alpha));
            break;
        case Method::L1:
            trajectories.push_back(solve_l1(f, p.I0, config.grid, p.alpha));
            break;
        case Method::Classical: {
            Trajectory t{config.grid, std::vector<double>(config.grid.size()), Method::Classical, {}};
            for (long n = 0; n <= config.grid.N(); ++n)
                t.u[n] = classical_sis(p, config.grid.t(n)).first;
            trajectories.push_back(std::move(t));
            break;
        }
        }
        trajectories.back().meta["alpha"] = format_double(p.alpha);
    }

    ComparisonReport report = compare(trajectories, p.alpha);
    return RunResult{config, d, std::move(trajectories), std::move(series), series_radius, std::move(report)};
}

std::vector<RunResult> run_table1(const std::filesystem::path& output_dir)
{
    std::vector<RunResult> rows;
    for (double alpha : {0.99, 0.7, 0.3}) {
        ConfigValues v = preset_values("c-nonzero");
        v["alpha"] = format_double(alpha);
        v["methods"] = "series,pece,l1";
        v["out"] = (output_dir / ("alpha_" + format_double(alpha))).string();
        rows.push_back(run(config_from_values(v)));
    }
    return rows;
}

std::string table1_csv(const std::vector<RunResult>& rows)
{
    std::string out = "alpha,series_vs_pece,series_vs_l1,pece_vs_l1\n";
    for (const auto& r : rows) {
        out += format_double(r.config.params.alpha);
        for (auto [a, b] : {std::pair{Method::Series, Method::PECE}, std::pair{Method::Series, Method::L1},
                            std::pair{Method::PECE, Method::L1}})
            out += ',' + format_double(r.report.distance(a, b));
        out += '\n';
    }
    return out;
}

std::optional<double> crossing_time(const Trajectory& traj)
{
    if (traj.u.empty())
        return std::nullopt;
    const bool initial = traj.u[0] >= traj.S(0);
    for (std::size_t n = 1; n < traj.u.size(); ++n)
        if ((traj.u[n] >= traj.S(n)) != initial)
            return traj.grid.t(static_cast<long>(n));
    return std::nullopt;
}

std::vector<C0SuiteRow> run_c0_suite(const std::filesystem::path& output_dir)
{
    std::vector<C0SuiteRow> rows;
    for (double alpha : {0.99, 0.7, 0.5}) {
        ConfigValues v = preset_values("c-zero");
        v["alpha"] = format_double(alpha);
        v["out"] = (output_dir / ("alpha_" + format_double(alpha))).string();
        C0SuiteRow row{run(config_from_values(v)), false, std::nullopt, false, std::nullopt, std::nullopt};
        row.series_diverged = row.run.series->any_diverged();
        row.first_divergence = row.run.series->first_divergence();
        const auto in_unit = [](const Trajectory& t) {
            return std::all_of(t.u.begin(), t.u.end(), [](double x) { return x >= 0.0 && x <= 1.0; });
        };
        const Trajectory& pece = row.run.trajectory(Method::PECE);
        const Trajectory& l1 = row.run.trajectory(Method::L1);
        row.schemes_bounded = in_unit(pece) && in_unit(l1);
        row.crossing_pece = crossing_time(pece);
        row.crossing_l1 = crossing_time(l1);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace fsis
