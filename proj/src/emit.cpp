#include "fsis/errors.hpp"
#include "fsis/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace fsis {

namespace {

std::string fixed17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt2(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

const char* method_colour(Method m)
{
    switch (m) {
    case Method::Series: return "#1f77b4";
    case Method::PECE: return "#d62728";
    case Method::L1: return "#2ca02c";
    case Method::Classical: return "#7f7f7f";
    }
    return "#000000";
}

nlohmann::ordered_json optional_number(const std::optional<double>& v)
{
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json manifest(const RunResult& r, const std::vector<std::string>& files)
{
    using json = nlohmann::ordered_json;
    const ModelParams& p = r.config.params;

    json j;
    j["tool"] = {{"name", "fsis"}, {"version", FSIS_VERSION}};
    json cfg = json::object();
    for (const auto& [k, v] : r.config.to_values())
        cfg[k] = v;
    j["config"] = cfg;
    j["params"] = {{"beta", p.beta},   {"gamma", p.gamma}, {"mu", p.mu},
                   {"lambda", p.lambda}, {"alpha", p.alpha}, {"I0", p.I0}};
    j["derived"] = {{"sigma", r.derived.sigma}, {"c", r.derived.c}, {"b", r.derived.b},
                    {"M", optional_number(r.derived.M)}, {"r_alpha", optional_number(r.derived.r_alpha)}};
    j["grid"] = {{"T", r.config.grid.T()}, {"dt", r.config.grid.dt()}, {"N", r.config.grid.N()}};

    json methods = json::array();
    for (const auto& t : r.trajectories)
        methods.push_back(std::string(to_string(t.method)));
    j["methods"] = methods;

    if (r.series) {
        json nodes = json::object();
        json converged = json::array(), diverged = json::array(), beyond = json::array(), terms = json::array();
        for (const auto& e : r.series->nodes) {
            converged.push_back(e.converged);
            diverged.push_back(e.diverged);
            beyond.push_back(e.beyond_theoretical_radius);
            terms.push_back(e.terms_used);
        }
        nodes["converged"] = converged;
        nodes["diverged"] = diverged;
        nodes["beyond_theoretical_radius"] = beyond;
        nodes["terms_used"] = terms;
        json radius = nullptr;
        if (r.series_radius)
            radius = {{"theoretical", r.series_radius->theoretical},
                      {"empirical", optional_number(r.series_radius->empirical)},
                      {"k_used", r.series_radius->k_used}};
        j["series"] = {{"terms", r.config.series_terms},
                       {"radius", radius},
                       {"all_converged", r.series->all_converged()},
                       {"first_divergence", optional_number(r.series->first_divergence())},
                       {"nodes", nodes}};
    }

    json pairs = json::array();
    for (const auto& pd : r.report.pairs)
        pairs.push_back({{"a", std::string(to_string(pd.a))}, {"b", std::string(to_string(pd.b))}, {"linf", pd.linf}});
    j["comparison"] = pairs;
    j["files"] = files;
    return j;
}

} // namespace

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    out.close();
    if (!out)
        throw IoError("failed writing " + path.string());
}

std::string trajectory_csv(const Trajectory& traj)
{
    std::string out = "t,I,S\n";
    for (std::size_t n = 0; n < traj.u.size(); ++n) {
        out += fixed17(traj.grid.t(static_cast<long>(n)));
        out += ',';
        out += fixed17(traj.u[n]);
        out += ',';
        out += fixed17(traj.S(n));
        out += '\n';
    }
    return out;
}

std::string coeffs_csv(const CoeffTable& table)
{
    std::string out = "k,value\n";
    for (std::size_t k = 0; k < table.values.size(); ++k)
        out += std::to_string(k) + ',' + fixed17(table.values[k]) + '\n';
    return out;
}

std::string svg_plot(const std::vector<Trajectory>& trajectories, const std::string& title)
{
    constexpr double W = 720, H = 440, left = 60, right = 150, top = 40, bottom = 50;
    const double pw = W - left - right;
    const double ph = H - top - bottom;

    double tmax = 0.0, ymin = 0.0, ymax = 1.0;
    for (const auto& t : trajectories) {
        tmax = std::max(tmax, t.grid.T());
        for (std::size_t n = 0; n < t.u.size(); ++n) {
            if (!std::isfinite(t.u[n]))
                continue;
            ymin = std::min({ymin, t.u[n], t.S(n)});
            ymax = std::max({ymax, t.u[n], t.S(n)});
        }
    }
    if (tmax <= 0.0)
        tmax = 1.0;
    const auto sx = [&](double t) { return left + pw * t / tmax; };
    const auto sy = [&](double y) { return top + ph * (ymax - y) / (ymax - ymin); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"440\" viewBox=\"0 0 720 440\">\n";
    s += "<rect width=\"720\" height=\"440\" fill=\"white\"/>\n";
    s += "<text x=\"" + fmt2(left) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" + title + "</text>\n";
    s += "<rect x=\"" + fmt2(left) + "\" y=\"" + fmt2(top) + "\" width=\"" + fmt2(pw) + "\" height=\"" + fmt2(ph)
         + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double t = tmax * i / 5.0;
        const double y = ymin + (ymax - ymin) * i / 5.0;
        s += "<text x=\"" + fmt2(sx(t)) + "\" y=\"" + fmt2(top + ph + 18) +
             "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" + fmt2(t) + "</text>\n";
        s += "<text x=\"" + fmt2(left - 6) + "\" y=\"" + fmt2(sy(y) + 4) +
             "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" + fmt2(y) + "</text>\n";
    }
    s += "<text x=\"" + fmt2(left + pw / 2) + "\" y=\"" + fmt2(H - 10) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">t</text>\n";

    int row = 0;
    for (const auto& t : trajectories) {
        const char* colour = method_colour(t.method);
        for (int which = 0; which < 2; ++which) {
            std::string pts;
            for (std::size_t n = 0; n < t.u.size(); ++n) {
                const double y = which == 0 ? t.u[n] : t.S(n);
                if (!std::isfinite(y))
                    continue;
                pts += fmt2(sx(t.grid.t(static_cast<long>(n)))) + ',' + fmt2(sy(y)) + ' ';
            }
            s += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\"";
            if (which == 1)
                s += " stroke-dasharray=\"6 3\"";
            s += " points=\"" + pts + "\"/>\n";
        }
        const double ly = top + 16.0 * row++;
        s += "<line x1=\"" + fmt2(W - right + 12) + "\" y1=\"" + fmt2(ly) + "\" x2=\"" + fmt2(W - right + 36) +
             "\" y2=\"" + fmt2(ly) + "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + fmt2(W - right + 42) + "\" y=\"" + fmt2(ly + 4) +
             "\" font-family=\"sans-serif\" font-size=\"11\">" + std::string(to_string(t.method)) +
             " (I solid, S dashed)</text>\n";
    }
    s += "</svg>\n";
    return s;
}

std::vector<std::filesystem::path> emit(const RunResult& result)
{
    const auto& dir = result.config.output_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

    const auto& formats = result.config.formats;
    std::vector<std::filesystem::path> written;
    std::vector<std::string> names;

    if (formats.count(OutputFormat::Csv)) {
        for (const auto& t : result.trajectories) {
            const std::string name = std::string(to_string(t.method)) + ".csv";
            write_text_file(dir / name, trajectory_csv(t));
            written.push_back(dir / name);
            names.push_back(name);
        }
    }
    if (formats.count(OutputFormat::Svg)) {
        const std::string title = "alpha = " + format_double(result.config.params.alpha);
        write_text_file(dir / "plot.svg", svg_plot(result.trajectories, title));
        written.push_back(dir / "plot.svg");
        names.push_back("plot.svg");
    }
    if (formats.count(OutputFormat::Json)) {
        nlohmann::ordered_json j;
        j["t"] = result.config.grid.nodes();
        for (const auto& t : result.trajectories)
            j[std::string(to_string(t.method))] = t.u;
        write_text_file(dir / "trajectories.json", j.dump() + "\n");
        written.push_back(dir / "trajectories.json");
        names.push_back("trajectories.json");
    }
    // the manifest is written for every run
    write_text_file(dir / "manifest.json", manifest(result, names).dump(2) + "\n");
    written.push_back(dir / "manifest.json");
    return written;
}

} // namespace fsis
