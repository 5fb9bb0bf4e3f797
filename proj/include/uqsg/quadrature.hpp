#pragma once

#include <string>
#include <vector>

namespace uqsg {

enum class QuadratureFamily { GaussLegendre, GaussLobatto };

std::string to_string(QuadratureFamily family);
QuadratureFamily quadrature_family_from_string(const std::string& name);

/// Quadrature on [-1,1] against the uniform density 1/2: weights sum to one.
struct QuadratureRule {
    QuadratureFamily family = QuadratureFamily::GaussLegendre;
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }

    /// Highest polynomial degree integrated exactly.
    int exactness() const;
};

/// n-point Gauss-Legendre rule (n >= 1), nodes ascending.
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Lobatto rule (n >= 2), endpoints included, nodes ascending.
QuadratureRule gauss_lobatto(int n);

QuadratureRule make_rule(QuadratureFamily family, int n);

/// Plain (unnormalized) Legendre polynomial P_n(x) and its derivative.
struct LegendreValue {
    double p;
    double dp;
};
LegendreValue legendre(int n, double x);

}  // namespace uqsg
