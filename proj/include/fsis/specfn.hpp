#pragma once

#include <utility>

namespace fsis {

/// Truncation control for the series evaluated in this library.
struct EvalPolicy {
    double abs_tol = 1e-14;
    int max_terms = 500;

    /// Throws DomainError unless abs_tol > 0 and max_terms >= 1.
    void validate() const;
};

// Lanczos approximation (g = 7, 9 terms). Throws DomainError for x <= 0
// and OverflowError when the result is not representable.
double gamma(double x);
double log_gamma(double x);

/// B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y), formed in log space.
double beta(double x, double y);

/// One-parameter Mittag-Leffler function E_alpha(z) = sum_k z^k / Gamma(alpha k + 1).
///
/// Direct summation; stops once three consecutive terms fall below
/// policy.abs_tol. Throws NonConvergenceError if max_terms is reached first,
/// which is what happens for large negative z where the series cancels
/// catastrophically; use ml_asymptotics there.
double mittag_leffler(double alpha, double z, const EvalPolicy& policy = {});

/// Small and large time companions (e0, e_inf) of E_alpha((lambda - mu) t^alpha)
/// for lambda - mu <= 0:
///   e0    = exp(-|lambda - mu| t^alpha / Gamma(1 + alpha))
///   e_inf = t^(-alpha) / (|lambda - mu| Gamma(1 - alpha))
/// Requires alpha in (0, 1) and t > 0. lambda == mu leaves e_inf undefined
/// and is rejected.
std::pair<double, double> ml_asymptotics(double alpha, double lam_minus_mu, double t);

} // namespace fsis
