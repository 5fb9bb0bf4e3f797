#pragma once

#include <span>
#include <vector>

#include "uqsg/basis.hpp"
#include "uqsg/entropy.hpp"
#include "uqsg/physics.hpp"

namespace uqsg {

/// Dual variables (gPC coefficients of the entropy variables) of one cell,
/// state-major: lambda[s * (N+1) + i].
struct DualState {
    std::vector<double> lambda;
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;

    bool empty() const { return lambda.empty(); }
};

/// Newton settings for the dual problem.
struct DualSolverSettings {
    double tolerance = 1e-7;      // on ||grad||_inf
    int max_iterations = 200;
    double armijo = 1e-4;
    double shrink = 0.5;
};

/// Dual objective <U_*(lambda . phi)> - sum lambda_si u_si under the basis quadrature.
double dual_objective(std::span<const double> lambda, std::span<const double> moments,
                      const Entropy& entropy, const GpcBasis& basis);

/// Gradient <u(lambda . phi) phi_i> - u_i, state-major.
void dual_gradient(std::span<const double> lambda, std::span<const double> moments,
                   const Entropy& entropy, const GpcBasis& basis, std::span<double> grad);

/// Hessian <u'(lambda . phi) phi_i phi_j> as a dense row-major matrix of size
/// p(N+1) x p(N+1), index s * (N+1) + i.
void dual_hessian(std::span<const double> lambda, const Entropy& entropy, const GpcBasis& basis,
                  std::span<double> hessian);

/// Solves the dual problem for one cell's moments (state-major) by damped
/// Newton, warm-started from `warm_start` when it has the right size.
///
/// Throws NonRealizableError when the order-0 moments are not an admissible
/// state, NonConvergenceError when the iteration limit is reached.
DualState solve_dual(std::span<const double> moments, const Entropy& entropy,
                     const GpcBasis& basis, const DualSolverSettings& settings,
                     const DualState& warm_start = {});

/// Conserved values u(lambda . phi(xi_q)) at the quadrature nodes, node-major.
void reconstruct_nodes(std::span<const double> lambda, const Entropy& entropy,
                       const GpcBasis& basis, std::span<double> nodes);

/// Moments <u(lambda . phi) phi_i>, state-major. Realizable by construction.
std::vector<double> reconstruct_moments(const DualState& dual, const Entropy& entropy,
                                        const GpcBasis& basis);

/// IPM moment flux between two converged duals:
/// F_si = sum_q w_q f*(u(v_l(xi_q)), u(v_r(xi_q)))_s phi_i(xi_q).
std::vector<double> ipm_flux(const DualState& left, const DualState& right, const Physics& physics,
                             const Entropy& entropy, const GpcBasis& basis, int dir, double alpha);

}  // namespace uqsg
