#include "fsis/specfn.hpp"

#include "fsis/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fsis {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Largest x with Gamma(x) < DBL_MAX.
constexpr double kGammaMaxArg = 171.62437695630271;

const double kHalfLogTwoPi = 0.5 * std::log(2.0 * std::numbers::pi);

double lanczos_sum(double z)
{
    double a = kLanczosCoef[0];
    for (std::size_t i = 1; i < kLanczosCoef.size(); ++i)
        a += kLanczosCoef[i] / (z + static_cast<double>(i));
    return a;
}

void require_positive(double x, const char* fn)
{
    if (!(x > 0.0)) {
        std::ostringstream os;
        os << fn << ": argument must be positive, got " << x;
        throw DomainError(os.str());
    }
}

} // namespace

void EvalPolicy::validate() const
{
    if (!(abs_tol > 0.0))
        throw DomainError("EvalPolicy: abs_tol must be positive");
    if (max_terms < 1)
        throw DomainError("EvalPolicy: max_terms must be at least 1");
}

double gamma(double x)
{
    require_positive(x, "gamma");
    if (x > kGammaMaxArg) {
        std::ostringstream os;
        os << "gamma: Gamma(" << x << ") overflows double";
        throw OverflowError(os.str());
    }
    if (x < 0.5)
        return gamma(x + 1.0) / x;

    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    // t^(z+1/2) is split in two halves so it does not overflow before exp(-t) is applied.
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * lanczos_sum(z);
}

double log_gamma(double x)
{
    require_positive(x, "log_gamma");
    if (std::isinf(x))
        return x;
    if (x < 0.5)
        return log_gamma(x + 1.0) - std::log(x);

    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    return kHalfLogTwoPi + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

double beta(double x, double y)
{
    require_positive(x, "beta");
    require_positive(y, "beta");
    return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

double mittag_leffler(double alpha, double z, const EvalPolicy& policy)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("mittag_leffler: alpha must lie in (0, 1]");
    policy.validate();
    if (z == 0.0)
        return 1.0;

    const double log_abs_z = std::log(std::fabs(z));
    double sum = 1.0;
    int small = 0;
    for (int k = 1; k < policy.max_terms; ++k) {
        double term = std::exp(k * log_abs_z - log_gamma(alpha * k + 1.0));
        if (z < 0.0 && (k % 2 == 1))
            term = -term;
        if (!std::isfinite(term))
            break;
        sum += term;
        small = std::fabs(term) < policy.abs_tol ? small + 1 : 0;
        if (small >= 3)
            return sum;
    }
    std::ostringstream os;
    os << "mittag_leffler: series for alpha=" << alpha << ", z=" << z
       << " did not converge within " << policy.max_terms << " terms";
    throw NonConvergenceError(os.str());
}

std::pair<double, double> ml_asymptotics(double alpha, double lam_minus_mu, double t)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("ml_asymptotics: alpha must lie in (0, 1)");
    if (lam_minus_mu > 0.0)
        throw DomainError("ml_asymptotics: requires lambda - mu <= 0");
    if (lam_minus_mu == 0.0)
        throw DomainError("ml_asymptotics: e_inf is undefined for lambda == mu");
    require_positive(t, "ml_asymptotics");

    const double rate = std::fabs(lam_minus_mu);
    const double ta = std::pow(t, alpha);
    const double e0 = std::exp(-rate * ta / gamma(1.0 + alpha));
    const double e_inf = 1.0 / (rate * ta * gamma(1.0 - alpha));
    return {e0, e_inf};
}

} // namespace fsis
