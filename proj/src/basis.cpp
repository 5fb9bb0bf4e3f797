#include "uqsg/basis.hpp"

#include <cmath>
#include <string>

#include "uqsg/errors.hpp"

namespace uqsg {

void orthonormal_legendre_all(double xi, std::span<double> out) {
    const int n = static_cast<int>(out.size());
    if (n == 0) return;
    double p_prev = 1.0;
    out[0] = 1.0;
    if (n == 1) return;
    double p = xi;
    out[1] = std::sqrt(3.0) * p;
    for (int k = 1; k + 1 < n; ++k) {
        const double p_next = ((2.0 * k + 1.0) * xi * p - k * p_prev) / (k + 1.0);
        p_prev = p;
        p = p_next;
        out[k + 1] = std::sqrt(2.0 * (k + 1) + 1.0) * p;
    }
}

double orthonormal_legendre(int i, double xi) {
    return std::sqrt(2.0 * i + 1.0) * legendre(i, xi).p;
}

double legendre_l1_norm(int i) {
    if (i == 0) return 1.0;
    // The roots of P_i are exactly the i-point Gauss-Legendre nodes; between
    // consecutive roots phi_i has one sign and is a degree-i polynomial, so an
    // (i/2+1)-point rule per piece is exact.
    const QuadratureRule roots = gauss_legendre(i);
    const QuadratureRule piece = gauss_legendre(i / 2 + 1);
    double total = 0.0;
    double lo = -1.0;
    for (int r = 0; r <= i; ++r) {
        const double hi = r < i ? roots.nodes[r] : 1.0;
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        double sum = 0.0;
        for (int q = 0; q < piece.size(); ++q) {
            // piece weights carry the 1/2 density already; rescale to [lo,hi]
            sum += piece.weights[q] * orthonormal_legendre(i, mid + half * piece.nodes[q]);
        }
        total += std::abs(sum) * half;
        lo = hi;
    }
    return total;
}

GpcBasis::GpcBasis(int order, QuadratureRule rule) : order_(order), rule_(std::move(rule)) {
    if (order_ < 0) throw ConfigurationError("gPC order must be non-negative");
    if (rule_.exactness() < 2 * order_) {
        throw ConfigurationError("quadrature with " + std::to_string(rule_.size()) + " " +
                                 to_string(rule_.family) +
                                 " nodes cannot integrate order-" + std::to_string(order_) +
                                 " products exactly");
    }
    const int n = size();
    table_.resize(static_cast<size_t>(rule_.size()) * n);
    for (int q = 0; q < rule_.size(); ++q) {
        orthonormal_legendre_all(rule_.nodes[q],
                                 std::span<double>(table_.data() + static_cast<size_t>(q) * n, n));
    }

    l1_norms_.resize(n);
    for (int i = 0; i < n; ++i) l1_norms_[i] = legendre_l1_norm(i);
    lasso_weights_.resize(n);
    for (int i = 0; i < n; ++i) lasso_weights_[i] = i * (i + 1.0) * l1_norms_[i];

    // Triple products have degree 3N; a dedicated rule makes them exact
    // independently of the stored quadrature.
    const QuadratureRule exact = gauss_legendre((3 * order_ + 1 + 1) / 2 + 1);
    std::vector<double> values(static_cast<size_t>(exact.size()) * n);
    for (int q = 0; q < exact.size(); ++q) {
        orthonormal_legendre_all(exact.nodes[q],
                                 std::span<double>(values.data() + static_cast<size_t>(q) * n, n));
    }
    triple_.assign(static_cast<size_t>(n) * n * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            for (int k = j; k < n; ++k) {
                double sum = 0.0;
                for (int q = 0; q < exact.size(); ++q) {
                    const double* v = values.data() + static_cast<size_t>(q) * n;
                    sum += exact.weights[q] * v[i] * v[j] * v[k];
                }
                // fill all permutations with the same value
                const int idx[3] = {i, j, k};
                const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                         {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
                for (const auto& p : perms) {
                    triple_[(static_cast<size_t>(idx[p[0]]) * n + idx[p[1]]) * n + idx[p[2]]] = sum;
                }
            }
        }
    }
}

double GpcBasis::eval(std::span<const double> coeffs, double xi) const {
    if (!(std::abs(xi) <= 1.0)) {
        throw DomainError("xi = " + std::to_string(xi) + " lies outside [-1, 1]");
    }
    const int n = static_cast<int>(coeffs.size());
    std::vector<double> phi(n);
    orthonormal_legendre_all(xi, phi);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += coeffs[i] * phi[i];
    return sum;
}

double GpcBasis::eval_at_node(std::span<const double> coeffs, int q) const {
    const auto row = phi_row(q);
    double sum = 0.0;
    for (int i = 0; i < size(); ++i) sum += coeffs[i] * row[i];
    return sum;
}

void GpcBasis::project_nodes(std::span<const double> node_values, int states,
                             std::span<double> out) const {
    const int n = size();
    const int nq = num_nodes();
    for (int s = 0; s < states; ++s) {
        const double first = node_values[s];
        bool constant = true;
        for (int q = 1; q < nq && constant; ++q) {
            constant = node_values[static_cast<size_t>(q) * states + s] == first;
        }
        double* u = out.data() + static_cast<size_t>(s) * n;
        if (constant) {
            u[0] = first;
            for (int i = 1; i < n; ++i) u[i] = 0.0;
            continue;
        }
        for (int i = 0; i < n; ++i) u[i] = 0.0;
        for (int q = 0; q < nq; ++q) {
            const double wu = weight(q) * node_values[static_cast<size_t>(q) * states + s];
            const auto row = phi_row(q);
            for (int i = 0; i < n; ++i) u[i] += wu * row[i];
        }
    }
}

void GpcBasis::project(const std::function<void(double, std::span<double>)>& u, int states,
                       std::span<double> out) const {
    std::vector<double> values(static_cast<size_t>(num_nodes()) * states);
    for (int q = 0; q < num_nodes(); ++q) {
        u(node(q), std::span<double>(values.data() + static_cast<size_t>(q) * states, states));
    }
    project_nodes(values, states, out);
}

std::vector<double> GpcBasis::project(const std::function<double(double)>& u) const {
    std::vector<double> out(size());
    project([&u](double xi, std::span<double> v) { v[0] = u(xi); }, 1, out);
    return out;
}

GpcBasis build_basis(int order, int quad_order, QuadratureFamily family) {
    if (order < 0) throw ConfigurationError("gPC order must be non-negative");
    if (quad_order < order + 1) {
        throw ConfigurationError("quad_order " + std::to_string(quad_order) +
                                 " is smaller than N+1 = " + std::to_string(order + 1));
    }
    return GpcBasis(order, make_rule(family, quad_order));
}

MeanVariance mean_and_variance(std::span<const double> coeffs) {
    double var = 0.0;
    for (size_t i = 1; i < coeffs.size(); ++i) var += coeffs[i] * coeffs[i];
    return {coeffs.empty() ? 0.0 : coeffs[0], var};
}

}  // namespace uqsg
