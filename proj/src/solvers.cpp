#include "fsis/solvers.hpp"

#include "fsis/errors.hpp"
#include "fsis/specfn.hpp"

#include <cmath>
#include <sstream>

namespace fsis {

namespace {

void check_alpha_closed(double alpha, const char* fn)
{
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        std::ostringstream os;
        os << fn << ": alpha must lie in (0, 1], got " << alpha;
        throw DomainError(os.str());
    }
}

void check_alpha_open(double alpha, const char* fn)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream os;
        os << fn << ": alpha must lie in (0, 1) with the endpoints excluded, got " << alpha;
        throw DomainError(os.str());
    }
}

// k^p for k = 0..count-1
std::vector<double> powers(double p, long count)
{
    std::vector<double> out(count);
    for (long k = 0; k < count; ++k)
        out[k] = std::pow(static_cast<double>(k), p);
    return out;
}

// Offsets m = n - j of the rectangle rule: (m+1)^a - m^a.
std::vector<double> rectangle_offsets(const std::vector<double>& pa, long count)
{
    std::vector<double> out(count);
    for (long m = 0; m < count; ++m)
        out[m] = pa[m + 1] - pa[m];
    return out;
}

// Offsets m = n - j of the interior trapezoid weights: (m+2)^(a+1) - 2 (m+1)^(a+1) + m^(a+1).
std::vector<double> trapezoid_offsets(const std::vector<double>& pa1, long count)
{
    std::vector<double> out(count);
    for (long m = 0; m < count; ++m)
        out[m] = pa1[m + 2] - 2.0 * pa1[m + 1] + pa1[m];
    return out;
}

// First trapezoid weight without the dt^a / (a (a+1)) factor: n^(a+1) - (n - a) (n+1)^a.
double trapezoid_first(double alpha, long n, const std::vector<double>& pa, const std::vector<double>& pa1)
{
    return pa1[n] - (static_cast<double>(n) - alpha) * pa[n + 1];
}

// L1 increments w_k = (k+1)^(1-a) - k^(1-a).
std::vector<double> l1_increment_weights(double alpha, long count)
{
    const std::vector<double> p = powers(1.0 - alpha, count + 1);
    std::vector<double> w(count);
    for (long k = 0; k < count; ++k)
        w[k] = p[k + 1] - p[k];
    return w;
}

void check_step(double value, long step, const char* fn)
{
    if (!std::isfinite(value)) {
        std::ostringstream os;
        os << fn << ": non-finite value at step " << step;
        throw NumericError(os.str(), step);
    }
}

} // namespace

TimeGrid TimeGrid::make(double T, double dt)
{
    if (!(T > 0.0) || !std::isfinite(T))
        throw ValidationError("time grid: T must be positive");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ValidationError("time grid: dt must be positive");
    const double ratio = T / dt;
    const long N = std::lround(ratio);
    if (N < 1)
        throw ValidationError("time grid: need at least one step (dt > T)");
    if (std::fabs(ratio - static_cast<double>(N)) > 1e-9 * ratio) {
        std::ostringstream os;
        os << "time grid: T=" << T << " is not an integer multiple of dt=" << dt;
        throw ValidationError(os.str());
    }
    return TimeGrid(T, dt, N);
}

std::vector<double> TimeGrid::nodes() const
{
    std::vector<double> out(size());
    for (long n = 0; n <= N_; ++n)
        out[n] = t(n);
    return out;
}

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::Series: return "series";
    case Method::PECE: return "pece";
    case Method::L1: return "l1";
    case Method::Classical: return "classical";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name)
{
    for (Method m : {Method::Series, Method::PECE, Method::L1, Method::Classical})
        if (name == to_string(m))
            return m;
    return std::nullopt;
}

std::vector<double> pece_weights_b(double alpha, long n, double dt)
{
    check_alpha_closed(alpha, "pece_weights_b");
    if (n < 0)
        throw DomainError("pece_weights_b: n must be non-negative");
    const std::vector<double> pa = powers(alpha, n + 2);
    const std::vector<double> off = rectangle_offsets(pa, n + 1);
    const double scale = std::pow(dt, alpha) / alpha;
    std::vector<double> b(n + 1);
    for (long j = 0; j <= n; ++j)
        b[j] = scale * off[n - j];
    return b;
}

std::vector<double> pece_weights_a(double alpha, long n, double dt)
{
    check_alpha_closed(alpha, "pece_weights_a");
    if (n < 0)
        throw DomainError("pece_weights_a: n must be non-negative");
    const std::vector<double> pa = powers(alpha, n + 2);
    const std::vector<double> pa1 = powers(alpha + 1.0, n + 2);
    const std::vector<double> off = trapezoid_offsets(pa1, n);
    const double scale = std::pow(dt, alpha) / (alpha * (alpha + 1.0));
    std::vector<double> a(n + 2);
    a[0] = scale * trapezoid_first(alpha, n, pa, pa1);
    for (long j = 1; j <= n; ++j)
        a[j] = scale * off[n - j];
    a[n + 1] = scale;
    return a;
}

Trajectory solve_pece(const Rhs& f, double u0, const TimeGrid& grid, double alpha)
{
    check_alpha_closed(alpha, "solve_pece");
    const long N = grid.N();

    const std::vector<double> pa = powers(alpha, N + 2);
    const std::vector<double> pa1 = powers(alpha + 1.0, N + 2);
    const std::vector<double> rect = rectangle_offsets(pa, N + 1);
    const std::vector<double> trap = trapezoid_offsets(pa1, N);
    const double dta = std::pow(grid.dt(), alpha);
    const double b_scale = dta / alpha;
    const double a_scale = dta / (alpha * (alpha + 1.0));
    const double inv_gamma = 1.0 / gamma(alpha);

    std::vector<double> u(N + 1);
    std::vector<double> fu(N + 1);
    u[0] = u0;
    fu[0] = f(u0);
    for (long n = 0; n < N; ++n) {
        double pred_sum = 0.0;
        for (long j = 0; j <= n; ++j)
            pred_sum += rect[n - j] * fu[j];
        const double predicted = u0 + inv_gamma * b_scale * pred_sum;
        check_step(predicted, n + 1, "solve_pece");

        double corr_sum = trapezoid_first(alpha, n, pa, pa1) * fu[0];
        for (long j = 1; j <= n; ++j)
            corr_sum += trap[n - j] * fu[j];
        corr_sum += f(predicted);
        u[n + 1] = u0 + inv_gamma * a_scale * corr_sum;
        check_step(u[n + 1], n + 1, "solve_pece");
        fu[n + 1] = f(u[n + 1]);
    }
    return Trajectory{grid, std::move(u), Method::PECE, {}};
}

std::vector<double> l1_coeffs(double alpha, long n)
{
    check_alpha_open(alpha, "l1_coeffs");
    if (n < 1)
        throw DomainError("l1_coeffs: n must be at least 1");
    // g(r) = w_{r-1}
    const std::vector<double> w = l1_increment_weights(alpha, n);
    std::vector<double> c(n);
    c[0] = w[n - 1];
    for (long j = 1; j < n; ++j)
        c[j] = w[n - j - 1] - w[n - j];
    return c;
}

Trajectory solve_l1(const Rhs& f, double u0, const TimeGrid& grid, double alpha)
{
    check_alpha_open(alpha, "solve_l1");
    const long N = grid.N();
    const std::vector<double> w = l1_increment_weights(alpha, N);
    const double step = gamma(2.0 - alpha) * std::pow(grid.dt(), alpha);

    std::vector<double> u(N + 1);
    u[0] = u0;
    for (long n = 0; n < N; ++n) {
        double memory = 0.0;
        for (long k = 1; k <= n; ++k)
            memory += w[k] * (u[n + 1 - k] - u[n - k]);
        u[n + 1] = u[n] - memory + step * f(u[n]);
        check_step(u[n + 1], n + 1, "solve_l1");
    }
    return Trajectory{grid, std::move(u), Method::L1, {}};
}

std::vector<double> discrete_caputo_l1(std::span<const double> u, double alpha, double dt)
{
    check_alpha_open(alpha, "discrete_caputo_l1");
    if (u.size() < 2)
        throw DomainError("discrete_caputo_l1: need at least two samples");
    if (!(dt > 0.0))
        throw DomainError("discrete_caputo_l1: dt must be positive");
    const long N = static_cast<long>(u.size()) - 1;
    const std::vector<double> w = l1_increment_weights(alpha, N);
    const double scale = 1.0 / (gamma(2.0 - alpha) * std::pow(dt, alpha));

    std::vector<double> d(N);
    for (long n = 1; n <= N; ++n) {
        double s = 0.0;
        for (long k = 0; k < n; ++k)
            s += w[k] * (u[n - k] - u[n - k - 1]);
        d[n - 1] = scale * s;
    }
    return d;
}

} // namespace fsis
