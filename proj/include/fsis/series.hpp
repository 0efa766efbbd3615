#pragma once

#include "fsis/coeffs.hpp"
#include "fsis/model.hpp"
#include "fsis/solvers.hpp"
#include "fsis/specfn.hpp"

#include <optional>
#include <vector>

namespace fsis {

enum class SeriesKind {
    CarryingCapacity, // c != 0, alpha-Euler numbers
    ZeroCapacity,     // c = 0, A coefficients
};

/// I(t) = scale_c * sum_k c_k arg_scale^k t^(alpha k) / Gamma(alpha k + 1), S = 1 - I.
class SeriesSolution {
public:
    SeriesSolution(SeriesKind kind, CoeffTable coeffs, double scale_c, double arg_scale,
                   RadiusEstimate radius);

    double alpha() const { return coeffs_.alpha; }
    SeriesKind kind() const { return kind_; }
    const CoeffTable& coeffs() const { return coeffs_; }
    double scale_c() const { return scale_c_; }
    double arg_scale() const { return arg_scale_; }
    const RadiusEstimate& radius() const { return radius_; }

    /// log Gamma(alpha k + 1), precomputed once per solution.
    double log_gamma_at(int k) const { return log_gamma_[k]; }
    /// Whether coefficient k takes part in the divergence test. Entries that are
    /// rounding residue next to much larger neighbours (the vanishing even
    /// alpha-Euler numbers) are skipped.
    bool significant(int k) const { return significant_[k]; }

private:
    SeriesKind kind_;
    CoeffTable coeffs_;
    double scale_c_;
    double arg_scale_;
    RadiusEstimate radius_;
    std::vector<double> log_gamma_;
    std::vector<bool> significant_;
};

struct EvalResult {
    double value_I = 0.0;
    double value_S = 1.0;
    int terms_used = 0;
    bool converged = false;
    bool diverged = false;
    bool beyond_theoretical_radius = false;
};

/// c != 0 series with I0 = c/2. Requires c > 0 and b^(1/alpha) < 1.
SeriesSolution build_series_thm1(const DerivedParams& derived, double alpha, CoeffTable coeff_table);

/// c = 0 series with I0 = 1/(2 beta). Requires sigma = 1 (|c| <= 1e-12).
SeriesSolution build_series_thm2(const DerivedParams& derived, double beta, double alpha,
                                 CoeffTable coeff_table);

/// Partial sums with two in-band outcomes:
///   converged: three consecutive terms below policy.abs_tol;
///   diverged:  past k = 10, significant terms grew five times in a row.
/// If neither happens before the table (or max_terms) runs out the last
/// partial sum is returned with converged = false.
EvalResult eval(const SeriesSolution& series, double t, const EvalPolicy& policy = {});

struct SeriesTrajectory {
    Trajectory trajectory;
    std::vector<EvalResult> nodes;

    bool all_converged() const;
    bool any_diverged() const;
    std::optional<double> first_divergence() const;
};

SeriesTrajectory sample_trajectory(const SeriesSolution& series, const TimeGrid& grid,
                                   const EvalPolicy& policy = {});

/// Shift exponent q used to rescale a c = 0 series with initial value A0:
/// q = 1/A0 for A0 < 1/2, otherwise 4 + (1/A0 - 4)/2.
double rescale_exponent(double A0);

/// v(t) = u(t / 2^q) where u solves D^alpha u = -u^2, u(0) = A0. The table
/// must come from a_coeffs(alpha, K, form, A0). The theoretical radius is
/// 2^q A0^(1/alpha).
SeriesSolution rescaled_c0_solution(double A0, double alpha, CoeffTable coeff_table);

} // namespace fsis
