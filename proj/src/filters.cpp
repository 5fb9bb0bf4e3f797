#include "uqsg/filters.hpp"

#include <cmath>

#include "uqsg/errors.hpp"

namespace uqsg {

std::string to_string(FilterKind kind) {
    switch (kind) {
        case FilterKind::None: return "none";
        case FilterKind::L2: return "l2";
        case FilterKind::LassoFixed: return "lasso";
        case FilterKind::LassoAdaptive: return "lasso_adaptive";
    }
    return "none";
}

FilterKind filter_kind_from_string(const std::string& name) {
    if (name == "none") return FilterKind::None;
    if (name == "l2") return FilterKind::L2;
    if (name == "lasso" || name == "lasso_fixed") return FilterKind::LassoFixed;
    if (name == "lasso_adaptive") return FilterKind::LassoAdaptive;
    throw ConfigurationError("unknown filter kind '" + name + "'");
}

double l2_filter_value(int i, double lambda) {
    if (i == 0) return 1.0;
    const double ii = static_cast<double>(i) * (i + 1);
    return 1.0 / (1.0 + lambda * ii * ii);
}

double lasso_filter_value(int i, double u_hat_i, double lambda, const GpcBasis& basis) {
    if (i == 0) return 1.0;
    const double magnitude = std::abs(u_hat_i);
    const double threshold = lambda * basis.lasso_weight(i);
    if (magnitude <= threshold) return 0.0;
    return 1.0 - threshold / magnitude;
}

double adaptive_lambda(std::span<const double> coeffs, const GpcBasis& basis) {
    const int n = basis.order();
    if (n == 0) throw ConfigurationError("adaptive Lasso filter needs order N >= 1");
    return std::abs(coeffs[n]) / basis.lasso_weight(n);
}

namespace {

// Soft threshold sign(u) max(|u| - t, 0), equal to g(i, u) u without a division.
void soft_threshold(double& u, double threshold) {
    const double magnitude = std::abs(u);
    u = magnitude <= threshold ? 0.0 : std::copysign(magnitude - threshold, u);
}

void adaptive_filter(const GpcBasis& basis, std::span<double> coeffs) {
    const int n = basis.order();
    if (n == 0) throw ConfigurationError("adaptive Lasso filter needs order N >= 1");
    const double top = std::abs(coeffs[n]);
    if (top == 0.0) return;
    const double lambda = top / basis.lasso_weight(n);
    for (int i = 1; i < n; ++i) soft_threshold(coeffs[i], lambda * basis.lasso_weight(i));
    // lambda* is defined by this coefficient reaching zero; set it exactly
    coeffs[n] = 0.0;
}

}  // namespace

void apply_filter(const FilterConfig& config, const GpcBasis& basis, std::span<double> coeffs) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    switch (config.kind) {
        case FilterKind::None:
            return;
        case FilterKind::L2:
            for (int i = 1; i <= n; ++i) coeffs[i] *= l2_filter_value(i, config.lambda);
            return;
        case FilterKind::LassoFixed:
            for (int i = 1; i <= n; ++i) soft_threshold(coeffs[i], config.lambda * basis.lasso_weight(i));
            return;
        case FilterKind::LassoAdaptive:
            adaptive_filter(basis, coeffs);
            return;
    }
}

void apply_filter(const FilterConfig& config, const GpcBasis& basis, MomentField& moments) {
    if (config.kind == FilterKind::None) return;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < moments.cells(); ++j) {
        for (int s = 0; s < moments.states(); ++s) apply_filter(config, basis, moments.coeffs(j, s));
    }
}

}  // namespace uqsg
