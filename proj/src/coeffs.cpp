#include "fsis/coeffs.hpp"

#include "fsis/errors.hpp"
#include "fsis/specfn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fsis {

namespace {

void check_order(int K, const char* fn)
{
    if (K < 0 || K > kMaxCoeffOrder) {
        std::ostringstream os;
        os << fn << ": order K=" << K << " outside [0, " << kMaxCoeffOrder << "]";
        throw DomainError(os.str());
    }
}

// Convolution weights w(i, k - i) for one k, in the requested algebraic form.
class ConvolutionWeights {
public:
    ConvolutionWeights(double alpha, int K, RecursionForm form) : alpha_(alpha), form_(form)
    {
        log_gamma_.reserve(K + 1);
        for (int k = 0; k <= K; ++k)
            log_gamma_.push_back(log_gamma(alpha * k + 1.0));
    }

    double operator()(int i, int j) const
    {
        const int k = i + j;
        if (i == 0 || j == 0)
            return 1.0;
        if (form_ == RecursionForm::Beta)
            return 1.0 / ((alpha_ * k + 1.0) * beta(alpha_ * i + 1.0, alpha_ * j + 1.0));
        if (alpha_ * k + 1.0 < 170.0)
            return gamma(alpha_ * k + 1.0) / (gamma(alpha_ * i + 1.0) * gamma(alpha_ * j + 1.0));
        return std::exp(log_gamma_[k] - log_gamma_[i] - log_gamma_[j]);
    }

private:
    double alpha_;
    RecursionForm form_;
    std::vector<double> log_gamma_;
};

// sum_{i+j=k, first <= i <= k-first} w(i, j) c_i c_j
double convolution(const std::vector<double>& c, int k, const ConvolutionWeights& w, int first = 0)
{
    double s = 0.0;
    for (int i = first; i <= k - first; ++i)
        s += w(i, k - i) * c[i] * c[k - i];
    return s;
}

void check_finite(double v, int index, const char* fn, double alpha)
{
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << fn << ": coefficient " << index << " leaves the double range (alpha=" << alpha << ")";
        throw OverflowError(os.str());
    }
}

} // namespace

std::string_view to_string(CoeffKind kind)
{
    return kind == CoeffKind::EulerAlpha ? "euler" : "a";
}

CoeffTable euler_alpha(double alpha, int K, RecursionForm form)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("euler_alpha: alpha must lie in (0, 1]");
    check_order(K, "euler_alpha");

    CoeffTable table{alpha, CoeffKind::EulerAlpha, {}};
    auto& e = table.values;
    e.reserve(K + 1);
    e.push_back(0.5);
    const ConvolutionWeights w(alpha, K, form);
    // w(0, k) = 1 and E_0 = 1/2, so the two end terms of the convolution are
    // E_k / 2 each and cancel the leading E_k exactly. Dropping them by hand
    // avoids a cancellation that otherwise leaves O(eps |E_k|) in the even entries.
    for (int k = 0; k < K; ++k) {
        const double next = k == 0 ? e[0] - e[0] * e[0] : -convolution(e, k, w, 1);
        check_finite(next, k + 1, "euler_alpha", alpha);
        e.push_back(next);
    }
    return table;
}

CoeffTable a_coeffs(double alpha, int K, RecursionForm form, double a0)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("a_coeffs: alpha must lie in (0, 1]");
    check_order(K, "a_coeffs");
    if (!std::isfinite(a0))
        throw DomainError("a_coeffs: initial coefficient must be finite");

    CoeffTable table{alpha, CoeffKind::ACoeff, {}};
    auto& a = table.values;
    a.reserve(K + 1);
    a.push_back(a0);
    const ConvolutionWeights w(alpha, K, form);
    for (int k = 0; k < K; ++k) {
        const double next = -convolution(a, k, w);
        check_finite(next, k + 1, "a_coeffs", alpha);
        a.push_back(next);
    }
    return table;
}

double radius_theorem1(double alpha, double b)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("radius_theorem1: alpha must lie in (0, 1]");
    if (!(b > 0.0) || !(std::pow(b, 1.0 / alpha) < 1.0)) {
        std::ostringstream os;
        os << "radius_theorem1: requires 0 < b^(1/alpha) < 1, got b=" << b << ", alpha=" << alpha;
        throw HypothesisError(os.str());
    }
    const double ratio = std::exp(log_gamma(alpha + 1.0) + log_gamma(3.0 * alpha + 1.0)
                                  - log_gamma(2.0 * alpha + 1.0));
    return std::pow(ratio, 1.0 / (2.0 * alpha)) / std::pow(b, 1.0 / alpha);
}

double radius_theorem2(double alpha)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("radius_theorem2: alpha must lie in (0, 1]");
    return std::pow(0.5, 1.0 / alpha);
}

RadiusEstimate empirical_radius(const CoeffTable& table, double b_scale)
{
    if (!(b_scale > 0.0))
        throw DomainError("empirical_radius: b_scale must be positive");
    const double alpha = table.alpha;
    const long nonzero = std::count_if(table.values.begin() + std::min<std::size_t>(1, table.values.size()),
                                       table.values.end(), [](double v) { return v != 0.0; });
    if (nonzero < 20) {
        std::ostringstream os;
        os << "empirical_radius: need at least 20 nonzero coefficients, table has " << nonzero;
        throw InsufficientDataError(os.str());
    }

    RadiusEstimate est;
    if (table.kind == CoeffKind::EulerAlpha)
        est.theoretical = radius_theorem1(alpha, b_scale);
    else
        est.theoretical = std::pow(std::fabs(table.values[0]) / b_scale, 1.0 / alpha);

    const int K = table.order();
    const double log_b = std::log(b_scale);
    double root_max = 0.0;
    int used = 0;
    for (int k = std::max(1, K / 2); k <= K; ++k) {
        const double v = table.values[k];
        if (v == 0.0)
            continue;
        const double root = std::exp((std::log(std::fabs(v)) + k * log_b - log_gamma(alpha * k + 1.0)) / k);
        root_max = std::max(root_max, root);
        ++used;
    }
    est.k_used = used;
    est.empirical = std::pow(root_max, -1.0 / alpha);
    return est;
}

} // namespace fsis
