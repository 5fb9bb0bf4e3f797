#include "uqsg/moment_flux.hpp"

#include <algorithm>
#include <vector>

namespace uqsg {

bool is_deterministic(std::span<const double> moments, int orders) {
    for (size_t k = 0; k < moments.size(); ++k) {
        if (k % orders != 0 && moments[k] != 0.0) return false;
    }
    return true;
}

void nodal_values(const GpcBasis& basis, std::span<const double> moments, int states,
                  std::span<double> out) {
    const int n = basis.size();
    for (int q = 0; q < basis.num_nodes(); ++q) {
        const auto row = basis.phi_row(q);
        for (int s = 0; s < states; ++s) {
            const double* u = moments.data() + static_cast<size_t>(s) * n;
            double sum = 0.0;
            for (int i = 0; i < n; ++i) sum += u[i] * row[i];
            out[static_cast<size_t>(q) * states + s] = sum;
        }
    }
}

void lift_nodal_flux(const Physics& physics, const GpcBasis& basis,
                     std::span<const double> nodes_l, std::span<const double> nodes_r, int dir,
                     double alpha, std::span<double> out, std::span<double> scratch) {
    const int p = physics.states();
    const int n = basis.size();
    std::fill(out.begin(), out.begin() + static_cast<size_t>(p) * n, 0.0);
    for (int q = 0; q < basis.num_nodes(); ++q) {
        physics.numerical_flux(nodes_l.subspan(static_cast<size_t>(q) * p, p),
                               nodes_r.subspan(static_cast<size_t>(q) * p, p), dir, alpha,
                               scratch.first(p));
        const auto row = basis.phi_row(q);
        const double w = basis.weight(q);
        for (int s = 0; s < p; ++s) {
            const double wf = w * scratch[s];
            double* f = out.data() + static_cast<size_t>(s) * n;
            for (int i = 0; i < n; ++i) f[i] += wf * row[i];
        }
    }
}

void lift_flux(const Physics& physics, const GpcBasis& basis, std::span<const double> moments_l,
               std::span<const double> moments_r, int dir, double alpha, std::span<double> out) {
    const int p = physics.states();
    const int n = basis.size();
    std::vector<double> scratch(p);
    if (is_deterministic(moments_l, n) && is_deterministic(moments_r, n)) {
        std::vector<double> ul(p), ur(p);
        for (int s = 0; s < p; ++s) {
            ul[s] = moments_l[static_cast<size_t>(s) * n];
            ur[s] = moments_r[static_cast<size_t>(s) * n];
        }
        physics.numerical_flux(ul, ur, dir, alpha, scratch);
        std::fill(out.begin(), out.begin() + static_cast<size_t>(p) * n, 0.0);
        for (int s = 0; s < p; ++s) out[static_cast<size_t>(s) * n] = scratch[s];
        return;
    }
    const size_t count = static_cast<size_t>(basis.num_nodes()) * p;
    std::vector<double> nodes_l(count), nodes_r(count);
    nodal_values(basis, moments_l, p, nodes_l);
    nodal_values(basis, moments_r, p, nodes_r);
    lift_nodal_flux(physics, basis, nodes_l, nodes_r, dir, alpha, out, scratch);
}

void burgers_lf_flux_analytic(const GpcBasis& basis, std::span<const double> moments_l,
                              std::span<const double> moments_r, double alpha,
                              std::span<double> out) {
    const int n = basis.size();
    for (int k = 0; k < n; ++k) {
        double quad = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                quad += (moments_l[i] * moments_l[j] + moments_r[i] * moments_r[j]) *
                        basis.triple(i, j, k);
            }
        }
        out[k] = 0.25 * quad - 0.5 * alpha * (moments_r[k] - moments_l[k]);
    }
}

}  // namespace uqsg
