#pragma once

#include <functional>
#include <span>
#include <vector>

#include "uqsg/quadrature.hpp"

namespace uqsg {

/// Orthonormal Legendre value phi_i(xi) = sqrt(2i+1) P_i(xi), uniform density on [-1,1].
double orthonormal_legendre(int i, double xi);

/// Fills out[0..N] with phi_0(xi)..phi_N(xi) via the three-term recurrence.
void orthonormal_legendre_all(double xi, std::span<double> out);

/// Orthonormal Legendre chaos of order N paired with one quadrature rule.
///
/// Holds the basis table Phi[q][i] = phi_i(xi_q), the L1 norms
/// ||phi_i||_{L1} = int |phi_i| f dxi, and the triple products
/// C[i][j][k] = int phi_i phi_j phi_k f dxi. Immutable once built.
class GpcBasis {
public:
    GpcBasis(int order, QuadratureRule rule);

    int order() const { return order_; }
    int size() const { return order_ + 1; }
    const QuadratureRule& quadrature() const { return rule_; }
    int num_nodes() const { return rule_.size(); }
    double node(int q) const { return rule_.nodes[q]; }
    double weight(int q) const { return rule_.weights[q]; }

    double phi(int q, int i) const { return table_[static_cast<size_t>(q) * size() + i]; }
    /// Row Phi[q][0..N].
    std::span<const double> phi_row(int q) const {
        return {table_.data() + static_cast<size_t>(q) * size(), static_cast<size_t>(size())};
    }

    double l1_norm(int i) const { return l1_norms_[i]; }
    std::span<const double> l1_norms() const { return l1_norms_; }
    /// i (i+1) ||phi_i||_{L1}: the Lasso threshold per unit strength.
    double lasso_weight(int i) const { return lasso_weights_[i]; }

    double triple(int i, int j, int k) const {
        const size_t n = size();
        return triple_[(static_cast<size_t>(i) * n + j) * n + k];
    }

    /// sum_i coeffs[i] phi_i(xi); throws DomainError for |xi| > 1.
    double eval(std::span<const double> coeffs, double xi) const;

    /// sum_i coeffs[i] Phi[q][i] at stored node q.
    double eval_at_node(std::span<const double> coeffs, int q) const;

    /// Moments u_i = sum_q w_q u(xi_q) phi_i(xi_q). When u is identical at
    /// every node the result is exactly (u, 0, ..., 0).
    std::vector<double> project(const std::function<double(double)>& u) const;

    /// Vector-valued projection. u(xi, out) fills `states` values; result is
    /// state-major: out[s * size() + i].
    void project(const std::function<void(double, std::span<double>)>& u, int states,
                 std::span<double> out) const;

    /// Projection of node values u[q * states + s] (state-major output as above).
    void project_nodes(std::span<const double> node_values, int states, std::span<double> out) const;

private:
    int order_;
    QuadratureRule rule_;
    std::vector<double> table_;
    std::vector<double> l1_norms_;
    std::vector<double> lasso_weights_;
    std::vector<double> triple_;
};

/// Builds an order-N basis on a quad_order-point rule of the given family.
/// Throws ConfigurationError when the rule cannot integrate phi_i phi_j exactly.
GpcBasis build_basis(int order, int quad_order,
                     QuadratureFamily family = QuadratureFamily::GaussLegendre);

/// L1 norm of phi_i computed piecewise between its roots.
double legendre_l1_norm(int i);

/// Expectation and variance of one state's expansion: E = u_0, Var = sum_{i>=1} u_i^2.
struct MeanVariance {
    double mean;
    double variance;
};
MeanVariance mean_and_variance(std::span<const double> coeffs);

}  // namespace uqsg
