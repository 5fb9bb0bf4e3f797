#pragma once

#include <span>
#include <string>

#include "uqsg/basis.hpp"
#include "uqsg/moment_field.hpp"

namespace uqsg {

enum class FilterKind { None, L2, LassoFixed, LassoAdaptive };

std::string to_string(FilterKind kind);
FilterKind filter_kind_from_string(const std::string& name);

struct FilterConfig {
    FilterKind kind = FilterKind::None;
    /// Strength for L2 and LassoFixed; ignored by LassoAdaptive.
    double lambda = 0.0;
};

/// Spline-based L2 filter 1 / (1 + lambda i^2 (i+1)^2).
double l2_filter_value(int i, double lambda);

/// Lasso (soft-threshold) filter (1 - lambda i(i+1) ||phi_i||_1 / |u_i|)_+.
/// Order 0 always maps to 1; a zero coefficient of order >= 1 maps to 0.
double lasso_filter_value(int i, double u_hat_i, double lambda, const GpcBasis& basis);

/// Filter strength making the highest-order coefficient vanish:
/// |u_N| / (N(N+1) ||phi_N||_1). Throws ConfigurationError for N = 0.
double adaptive_lambda(std::span<const double> coeffs, const GpcBasis& basis);

/// Filters one state's coefficient vector in place.
void apply_filter(const FilterConfig& config, const GpcBasis& basis, std::span<double> coeffs);

/// Filters every state of every cell.
void apply_filter(const FilterConfig& config, const GpcBasis& basis, MomentField& moments);

}  // namespace uqsg
