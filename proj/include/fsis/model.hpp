#pragma once

#include <optional>
#include <utility>

namespace fsis {

/// SIS rates and fractional order. Rates are per unit time.
struct ModelParams {
    double beta = 0.0;   // contact rate
    double gamma = 0.0;  // recovery removal rate
    double mu = 0.0;     // birth rate = death removal rate
    double lambda = 0.0; // birth rate for the N(t) utility; equals mu in the core model
    double alpha = 1.0;  // Caputo order in (0, 1]
    double I0 = 0.0;     // initial infected fraction, S0 = 1 - I0

    double S0() const { return 1.0 - I0; }

    /// Throws ValidationError naming the first violated invariant.
    void validate() const;
};

struct DerivedParams {
    double sigma = 0.0;             // basic reproduction number beta / (gamma + mu)
    double c = 0.0;                 // carrying capacity (sigma - 1) / sigma
    double b = 0.0;                 // beta * c
    std::optional<double> M;        // b^(-1/alpha); only for c > 0 and b^(1/alpha) < 1
    std::optional<double> r_alpha;  // lower bound on the c != 0 series radius, same condition
};

DerivedParams derive(const ModelParams& params);

/// Right-hand side f(I) = beta c I - beta I^2 of the reduced scalar equation.
struct LogisticRhs {
    double beta;
    double c;

    double operator()(double I) const { return beta * c * I - beta * I * I; }
};

LogisticRhs logistic_rhs(const ModelParams& params, const DerivedParams& derived);

/// Closed-form alpha = 1 solution (I, S) at time t, for any I0 in (0, 1).
std::pair<double, double> classical_sis(const ModelParams& params, double t);

/// Total population N0 E_alpha((lambda - mu) t^alpha).
double population_nt(const ModelParams& params, double N0, double t);

} // namespace fsis
