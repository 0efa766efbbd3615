#include "fsis/model.hpp"

#include "fsis/coeffs.hpp"
#include "fsis/errors.hpp"
#include "fsis/specfn.hpp"

#include <cmath>

namespace fsis {

void ModelParams::validate() const
{
    if (!(beta > 0.0))
        throw ValidationError("beta must be positive");
    if (!(gamma >= 0.0))
        throw ValidationError("gamma must be non-negative");
    if (!(mu >= 0.0))
        throw ValidationError("mu must be non-negative");
    if (!(lambda >= 0.0))
        throw ValidationError("lambda must be non-negative");
    if (!(gamma + mu > 0.0))
        throw ValidationError("gamma + mu must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw ValidationError("alpha must lie in (0, 1]");
    if (!(I0 >= 0.0 && I0 <= 1.0))
        throw ValidationError("I0 must lie in [0, 1]");
}

DerivedParams derive(const ModelParams& params)
{
    if (!(params.gamma + params.mu > 0.0))
        throw ValidationError("derive: gamma + mu must be positive");

    DerivedParams d;
    d.sigma = params.beta / (params.gamma + params.mu);
    d.c = (d.sigma - 1.0) / d.sigma;
    d.b = params.beta * d.c;
    if (d.c > 0.0 && std::pow(d.b, 1.0 / params.alpha) < 1.0) {
        d.M = std::pow(d.b, -1.0 / params.alpha);
        d.r_alpha = radius_theorem1(params.alpha, d.b);
    }
    return d;
}

LogisticRhs logistic_rhs(const ModelParams& params, const DerivedParams& derived)
{
    return LogisticRhs{params.beta, derived.c};
}

std::pair<double, double> classical_sis(const ModelParams& params, double t)
{
    const DerivedParams d = derive(params);
    if (t == 0.0)
        return {params.I0, 1.0 - params.I0};
    // c / (1 + (c/I0 - 1) e^{-bt}) rewritten as 1 / (e^{-bt}/I0 + (1 - e^{-bt})/c),
    // whose second term tends to beta t as c -> 0.
    const double bt = d.b * t;
    const double growth = d.c == 0.0 ? params.beta * t : -std::expm1(-bt) / d.c;
    const double I = 1.0 / (std::exp(-bt) / params.I0 + growth);
    return {I, 1.0 - I};
}

double population_nt(const ModelParams& params, double N0, double t)
{
    if (!(N0 > 0.0))
        throw DomainError("population_nt: N0 must be positive");
    if (!(t >= 0.0))
        throw DomainError("population_nt: t must be non-negative");
    const double rate = params.lambda - params.mu;
    return N0 * mittag_leffler(params.alpha, rate * std::pow(t, params.alpha));
}

} // namespace fsis
