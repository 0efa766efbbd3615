#include "fsis/series.hpp"

#include "fsis/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fsis {

namespace {

constexpr double kResidueRatio = 1e-10;
constexpr int kGrowthStart = 10;
constexpr int kGrowthRun = 5;

RadiusEstimate radius_for(const CoeffTable& table, double arg_scale, double theoretical)
{
    try {
        RadiusEstimate est = empirical_radius(table, arg_scale);
        est.theoretical = theoretical;
        return est;
    } catch (const InsufficientDataError&) {
        return RadiusEstimate{theoretical, std::nullopt, 0};
    }
}

void check_table(const CoeffTable& table, CoeffKind kind, double alpha, const char* fn)
{
    if (table.kind != kind) {
        std::ostringstream os;
        os << fn << ": expected a " << to_string(kind) << " coefficient table, got " << to_string(table.kind);
        throw DomainError(os.str());
    }
    if (table.alpha != alpha)
        throw DomainError(std::string(fn) + ": coefficient table was built for a different alpha");
    if (table.values.empty())
        throw DomainError(std::string(fn) + ": empty coefficient table");
}

} // namespace

SeriesSolution::SeriesSolution(SeriesKind kind, CoeffTable coeffs, double scale_c, double arg_scale,
                               RadiusEstimate radius)
    : kind_(kind), coeffs_(std::move(coeffs)), scale_c_(scale_c), arg_scale_(arg_scale), radius_(radius)
{
    const CoeffKind expected = kind == SeriesKind::CarryingCapacity ? CoeffKind::EulerAlpha : CoeffKind::ACoeff;
    if (coeffs_.kind != expected)
        throw DomainError("SeriesSolution: coefficient kind does not match the series kind");
    if (coeffs_.values.empty())
        throw DomainError("SeriesSolution: empty coefficient table");
    if (!(arg_scale_ > 0.0))
        throw DomainError("SeriesSolution: arg_scale must be positive");

    const auto& c = coeffs_.values;
    const std::size_t n = c.size();
    log_gamma_.resize(n);
    significant_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        log_gamma_[k] = log_gamma(coeffs_.alpha * static_cast<double>(k) + 1.0);
        double neighbour = 0.0;
        if (k > 0)
            neighbour = std::max(neighbour, std::fabs(c[k - 1]));
        if (k + 1 < n)
            neighbour = std::max(neighbour, std::fabs(c[k + 1]));
        significant_[k] = c[k] != 0.0 && std::fabs(c[k]) > kResidueRatio * neighbour;
    }
}

SeriesSolution build_series_thm1(const DerivedParams& derived, double alpha, CoeffTable coeff_table)
{
    if (derived.c == 0.0)
        throw HypothesisError("build_series_thm1: requires carrying capacity c != 0");
    if (!(derived.c > 0.0))
        throw HypothesisError("build_series_thm1: requires c > 0 so that I0 = c/2 is a valid fraction");
    check_table(coeff_table, CoeffKind::EulerAlpha, alpha, "build_series_thm1");
    const double theoretical = radius_theorem1(alpha, derived.b);
    RadiusEstimate radius = radius_for(coeff_table, derived.b, theoretical);
    return SeriesSolution(SeriesKind::CarryingCapacity, std::move(coeff_table), derived.c, derived.b, radius);
}

SeriesSolution build_series_thm2(const DerivedParams& derived, double beta, double alpha,
                                 CoeffTable coeff_table)
{
    if (std::fabs(derived.c) > 1e-12) {
        std::ostringstream os;
        os << "build_series_thm2: requires sigma = 1 (c = 0), got sigma=" << derived.sigma;
        throw HypothesisError(os.str());
    }
    if (!(beta > 0.0))
        throw DomainError("build_series_thm2: beta must be positive");
    check_table(coeff_table, CoeffKind::ACoeff, alpha, "build_series_thm2");
    if (coeff_table.values[0] != 0.5)
        throw DomainError("build_series_thm2: table must start at A_0 = 1/2");
    RadiusEstimate radius = radius_for(coeff_table, 1.0, radius_theorem2(alpha));
    return SeriesSolution(SeriesKind::ZeroCapacity, std::move(coeff_table), 1.0 / beta, 1.0, radius);
}

EvalResult eval(const SeriesSolution& series, double t, const EvalPolicy& policy)
{
    if (!(t >= 0.0))
        throw DomainError("eval: t must be non-negative");
    policy.validate();

    const auto& c = series.coeffs().values;
    EvalResult r;
    r.beyond_theoretical_radius = t > series.radius().theoretical;

    if (t == 0.0) {
        r.value_I = series.scale_c() * c[0];
        r.value_S = 1.0 - r.value_I;
        r.terms_used = 1;
        r.converged = true;
        return r;
    }

    const double log_x = std::log(series.arg_scale()) + series.alpha() * std::log(t);
    const int available = std::min(static_cast<int>(c.size()), policy.max_terms);

    double sum = 0.0;
    int small = 0;
    int growth = 0;
    double previous = -1.0;
    int k = 0;
    for (; k < available; ++k) {
        if (c[k] == 0.0)
            continue; // vanishing alpha-Euler entries take no part in either stop rule
        const double term = c[k] * std::exp(k * log_x - series.log_gamma_at(k));
        if (!std::isfinite(term)) {
            r.diverged = true;
            break;
        }
        sum += term;

        small = std::fabs(term) < policy.abs_tol ? small + 1 : 0;
        if (small >= 3) {
            r.converged = true;
            ++k;
            break;
        }

        if (series.significant(k)) {
            const double mag = std::fabs(term);
            if (previous >= 0.0 && k >= kGrowthStart)
                growth = mag > previous ? growth + 1 : 0;
            previous = mag;
            if (growth >= kGrowthRun) {
                r.diverged = true;
                ++k;
                break;
            }
        }
    }

    r.terms_used = k;
    r.value_I = series.scale_c() * sum;
    r.value_S = 1.0 - r.value_I;
    return r;
}

bool SeriesTrajectory::all_converged() const
{
    return std::all_of(nodes.begin(), nodes.end(), [](const EvalResult& r) { return r.converged; });
}

bool SeriesTrajectory::any_diverged() const
{
    return std::any_of(nodes.begin(), nodes.end(), [](const EvalResult& r) { return r.diverged; });
}

std::optional<double> SeriesTrajectory::first_divergence() const
{
    for (std::size_t n = 0; n < nodes.size(); ++n)
        if (nodes[n].diverged)
            return trajectory.grid.t(static_cast<long>(n));
    return std::nullopt;
}

SeriesTrajectory sample_trajectory(const SeriesSolution& series, const TimeGrid& grid, const EvalPolicy& policy)
{
    SeriesTrajectory out{Trajectory{grid, std::vector<double>(grid.size()), Method::Series, {}}, {}};
    out.nodes.reserve(grid.size());
    for (long n = 0; n <= grid.N(); ++n) {
        EvalResult r = eval(series, grid.t(n), policy);
        out.trajectory.u[n] = r.value_I;
        out.nodes.push_back(r);
    }
    out.trajectory.meta["all_converged"] = out.all_converged() ? "true" : "false";
    return out;
}

double rescale_exponent(double A0)
{
    if (!(A0 > 0.0 && A0 < 1.0))
        throw DomainError("rescale_exponent: A0 must lie in (0, 1)");
    if (A0 < 0.5)
        return 1.0 / A0;
    return 4.0 + 0.5 * (1.0 / A0 - 4.0);
}

SeriesSolution rescaled_c0_solution(double A0, double alpha, CoeffTable coeff_table)
{
    const double q = rescale_exponent(A0);
    check_table(coeff_table, CoeffKind::ACoeff, alpha, "rescaled_c0_solution");
    if (coeff_table.values[0] != A0)
        throw DomainError("rescaled_c0_solution: table must start at A_0 = A0");
    // (t / 2^q)^(alpha k) = (2^(-q alpha))^k t^(alpha k)
    const double arg_scale = std::pow(2.0, -q * alpha);
    const double theoretical = std::pow(2.0, q) * std::pow(A0, 1.0 / alpha);
    RadiusEstimate radius = radius_for(coeff_table, arg_scale, theoretical);
    return SeriesSolution(SeriesKind::ZeroCapacity, std::move(coeff_table), 1.0, arg_scale, radius);
}

} // namespace fsis
