#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fsis {

/// Uniform grid t_n = n dt, n = 0..N, with N dt = T.
class TimeGrid {
public:
    /// N = round(T / dt). Throws ValidationError unless T, dt > 0, N >= 1 and
    /// T / dt is an integer to within 1e-9 relative.
    static TimeGrid make(double T, double dt);

    double T() const { return T_; }
    double dt() const { return dt_; }
    long N() const { return N_; }
    std::size_t size() const { return static_cast<std::size_t>(N_) + 1; }
    double t(long n) const { return static_cast<double>(n) * dt_; }
    std::vector<double> nodes() const;

    bool operator==(const TimeGrid&) const = default;

private:
    TimeGrid(double T, double dt, long N) : T_(T), dt_(dt), N_(N) {}

    double T_;
    double dt_;
    long N_;
};

enum class Method { Series, PECE, L1, Classical };

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

/// Sampled solution u_n = u(t_n). For the SIS model u is the infected fraction
/// and the susceptible fraction is 1 - u.
struct Trajectory {
    TimeGrid grid;
    std::vector<double> u;
    Method method = Method::PECE;
    std::map<std::string, std::string> meta;

    double S(std::size_t n) const { return 1.0 - u[n]; }
};

using Rhs = std::function<double(double)>;

/// Product rectangle weights b_{j,n+1}, j = 0..n.
std::vector<double> pece_weights_b(double alpha, long n, double dt);

/// Product trapezoidal weights a_{j,n+1}, j = 0..n+1.
std::vector<double> pece_weights_a(double alpha, long n, double dt);

/// Fractional Adams-Bashforth-Moulton predictor-corrector, one corrector pass
/// per step. alpha in (0, 1]; at alpha = 1 it is the trapezoid rule with an
/// Euler-type predictor over the full history.
Trajectory solve_pece(const Rhs& f, double u0, const TimeGrid& grid, double alpha);

/// L1 history coefficients C_{n,j}, j = 0..n-1:
///   C_{n,0} = g(n), C_{n,j} = g(n-j) - g(n-j+1), g(r) = r^(1-alpha) - (r-1)^(1-alpha).
/// alpha in (0, 1) strictly, n >= 1.
std::vector<double> l1_coeffs(double alpha, long n);

/// Explicit L1 march
///   u_{n+1} = sum_{j=0}^{n} C_{n+1,j} u_j + Gamma(2-alpha) dt^alpha f(u_n).
/// Evaluated in the equivalent increment form
///   u_{n+1} = u_n - sum_{k=1}^{n} w_k (u_{n+1-k} - u_{n-k}) + Gamma(2-alpha) dt^alpha f(u_n),
/// w_k = (k+1)^(1-alpha) - k^(1-alpha), so that constants are reproduced exactly.
Trajectory solve_l1(const Rhs& f, double u0, const TimeGrid& grid, double alpha);

/// L1 approximation of the Caputo derivative at t_1..t_N of samples u_0..u_N.
/// Element n-1 of the result belongs to node n.
std::vector<double> discrete_caputo_l1(std::span<const double> u, double alpha, double dt);

} // namespace fsis
