#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace fsis {

/// Highest order a coefficient table may be built to.
inline constexpr int kMaxCoeffOrder = 200;

enum class CoeffKind {
    EulerAlpha, // alpha-Euler numbers, carrying capacity c != 0
    ACoeff,     // coefficients of the c = 0 series
};

std::string_view to_string(CoeffKind kind);

/// Finite prefix c_0..c_K of a fractional power series coefficient sequence.
/// The series is sum_k c_k x^k t^(alpha k) / Gamma(alpha k + 1).
struct CoeffTable {
    double alpha = 1.0;
    CoeffKind kind = CoeffKind::EulerAlpha;
    std::vector<double> values;

    int order() const { return static_cast<int>(values.size()) - 1; }
    double operator[](std::size_t k) const { return values[k]; }
};

/// Which algebraic form of the convolution weight to use.
///   Beta:       1 / ((alpha k + 1) B(alpha i + 1, alpha j + 1))
///   GammaRatio: Gamma(alpha k + 1) / (Gamma(alpha i + 1) Gamma(alpha j + 1))
/// They are identical in exact arithmetic; both are exposed so they can be
/// checked against each other.
enum class RecursionForm { Beta, GammaRatio };

/// alpha-Euler numbers E_0..E_K:
///   E_0 = 1/2,  E_{k+1} = E_k - sum_{i+j=k} w(i, j) E_i E_j.
/// alpha in (0, 1], 0 <= K <= kMaxCoeffOrder. Throws OverflowError naming
/// the first index that leaves the double range.
CoeffTable euler_alpha(double alpha, int K, RecursionForm form = RecursionForm::Beta);

/// Coefficients A_0..A_K of the c = 0 series:
///   A_0 = a0 (1/2 for the SIS solution),  A_{k+1} = -sum_{i+j=k} w(i, j) A_i A_j.
CoeffTable a_coeffs(double alpha, int K, RecursionForm form = RecursionForm::Beta, double a0 = 0.5);

/// Lower bound on the convergence radius of the c != 0 series,
///   (1 / b^(1/alpha)) (Gamma(alpha+1) Gamma(3 alpha+1) / Gamma(2 alpha+1))^(1 / (2 alpha)).
/// Throws HypothesisError unless b > 0 and b^(1/alpha) < 1.
double radius_theorem1(double alpha, double b);

/// Guaranteed radius (1/2)^(1/alpha) of the c = 0 series.
double radius_theorem2(double alpha);

struct RadiusEstimate {
    double theoretical = 0.0;
    std::optional<double> empirical;
    int k_used = 0;
};

/// Root-test estimate of the radius of sum_k psi_k b_scale^k t^(alpha k) / Gamma(alpha k + 1).
///
/// lim sup is approximated by the maximum of |psi_k b_scale^k / Gamma(alpha k + 1)|^(1/k)
/// over the upper half of the table; the maximum rather than the last value
/// because the alpha-Euler numbers vanish at even indices. The theoretical
/// member is radius_theorem1(alpha, b_scale) for EulerAlpha tables and
/// (|a_0| / b_scale)^(1/alpha) for ACoeff tables, which reduces to
/// radius_theorem2(alpha) for a_0 = 1/2 and b_scale = 1.
///
/// Throws InsufficientDataError with fewer than 20 nonzero coefficients.
RadiusEstimate empirical_radius(const CoeffTable& table, double b_scale);

} // namespace fsis
