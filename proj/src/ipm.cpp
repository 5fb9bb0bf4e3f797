#include "uqsg/ipm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cfloat>
#include <cmath>
#include <string>

#include "uqsg/errors.hpp"
#include "uqsg/moment_flux.hpp"

namespace uqsg {

namespace {

// v(xi_q) = sum_i lambda_si phi_i(xi_q), node-major.
void entropy_variables_at_nodes(std::span<const double> lambda, int states, const GpcBasis& basis,
                                std::span<double> v) {
    nodal_values(basis, lambda, states, v);
}

bool nodes_in_domain(std::span<const double> v, const Entropy& entropy, int nq) {
    const int p = entropy.states();
    for (int q = 0; q < nq; ++q) {
        if (!entropy.in_domain(v.subspan(static_cast<size_t>(q) * p, p))) return false;
    }
    return true;
}

double objective_from_nodes(std::span<const double> v, std::span<const double> lambda,
                            std::span<const double> moments, const Entropy& entropy,
                            const GpcBasis& basis) {
    const int p = entropy.states();
    double sum = 0.0;
    for (int q = 0; q < basis.num_nodes(); ++q) {
        sum += basis.weight(q) * entropy.potential(v.subspan(static_cast<size_t>(q) * p, p));
    }
    for (size_t k = 0; k < lambda.size(); ++k) sum -= lambda[k] * moments[k];
    return sum;
}

}  // namespace

double dual_objective(std::span<const double> lambda, std::span<const double> moments,
                      const Entropy& entropy, const GpcBasis& basis) {
    const int p = entropy.states();
    std::vector<double> v(static_cast<size_t>(basis.num_nodes()) * p);
    entropy_variables_at_nodes(lambda, p, basis, v);
    if (!nodes_in_domain(v, entropy, basis.num_nodes())) return HUGE_VAL;
    return objective_from_nodes(v, lambda, moments, entropy, basis);
}

void reconstruct_nodes(std::span<const double> lambda, const Entropy& entropy,
                       const GpcBasis& basis, std::span<double> nodes) {
    const int p = entropy.states();
    std::vector<double> v(static_cast<size_t>(basis.num_nodes()) * p);
    entropy_variables_at_nodes(lambda, p, basis, v);
    for (int q = 0; q < basis.num_nodes(); ++q) {
        entropy.conserved(std::span<const double>(v).subspan(static_cast<size_t>(q) * p, p),
                          nodes.subspan(static_cast<size_t>(q) * p, p));
    }
}

void dual_gradient(std::span<const double> lambda, std::span<const double> moments,
                   const Entropy& entropy, const GpcBasis& basis, std::span<double> grad) {
    const int p = entropy.states();
    std::vector<double> u(static_cast<size_t>(basis.num_nodes()) * p);
    reconstruct_nodes(lambda, entropy, basis, u);
    basis.project_nodes(u, p, grad);
    for (size_t k = 0; k < grad.size(); ++k) grad[k] -= moments[k];
}

void dual_hessian(std::span<const double> lambda, const Entropy& entropy, const GpcBasis& basis,
                  std::span<double> hessian) {
    const int p = entropy.states();
    const int n = basis.size();
    const int dim = p * n;
    std::vector<double> v(static_cast<size_t>(basis.num_nodes()) * p);
    std::vector<double> jac(static_cast<size_t>(p) * p);
    entropy_variables_at_nodes(lambda, p, basis, v);
    std::fill(hessian.begin(), hessian.end(), 0.0);
    for (int q = 0; q < basis.num_nodes(); ++q) {
        entropy.jacobian(std::span<const double>(v).subspan(static_cast<size_t>(q) * p, p), jac);
        const auto row = basis.phi_row(q);
        const double w = basis.weight(q);
        for (int s = 0; s < p; ++s) {
            for (int r = 0; r < p; ++r) {
                const double wj = w * jac[static_cast<size_t>(s) * p + r];
                for (int i = 0; i < n; ++i) {
                    const double a = wj * row[i];
                    double* h = hessian.data() + static_cast<size_t>(s * n + i) * dim + r * n;
                    for (int j = 0; j < n; ++j) h[j] += a * row[j];
                }
            }
        }
    }
}

DualState solve_dual(std::span<const double> moments, const Entropy& entropy,
                     const GpcBasis& basis, const DualSolverSettings& settings,
                     const DualState& warm_start) {
    const int p = entropy.states();
    const int n = basis.size();
    const int dim = p * n;
    const int nq = basis.num_nodes();
    if (!(settings.tolerance > 0.0)) throw ConfigurationError("dual tolerance must be positive");

    std::vector<double> mean(p);
    for (int s = 0; s < p; ++s) {
        mean[s] = moments[static_cast<size_t>(s) * n];
        if (!std::isfinite(mean[s])) throw NonRealizableError("non-finite moments");
    }
    if (!entropy.admissible(mean)) {
        throw NonRealizableError("order-0 moments are not an admissible state");
    }

    DualState state;
    if (warm_start.lambda.size() == static_cast<size_t>(dim)) {
        state.lambda = warm_start.lambda;
    } else {
        state.lambda.assign(dim, 0.0);
        std::vector<double> v0(p);
        entropy.entropy_variable(mean, v0);
        for (int s = 0; s < p; ++s) state.lambda[static_cast<size_t>(s) * n] = v0[s];
    }

    std::vector<double> v(static_cast<size_t>(nq) * p);
    std::vector<double> u(static_cast<size_t>(nq) * p);
    std::vector<double> grad(dim);
    std::vector<double> trial(dim);
    std::vector<double> hessian(static_cast<size_t>(dim) * dim);
    Eigen::LLT<Eigen::MatrixXd> llt(dim);

    entropy_variables_at_nodes(state.lambda, p, basis, v);
    if (!nodes_in_domain(v, entropy, nq)) {
        // warm start outside the domain: restart from the mean state
        std::fill(state.lambda.begin(), state.lambda.end(), 0.0);
        std::vector<double> v0(p);
        entropy.entropy_variable(mean, v0);
        for (int s = 0; s < p; ++s) state.lambda[static_cast<size_t>(s) * n] = v0[s];
        entropy_variables_at_nodes(state.lambda, p, basis, v);
    }
    double objective = objective_from_nodes(v, state.lambda, moments, entropy, basis);

    for (int it = 0;; ++it) {
        for (int q = 0; q < nq; ++q) {
            entropy.conserved(std::span<const double>(v).subspan(static_cast<size_t>(q) * p, p),
                              std::span<double>(u).subspan(static_cast<size_t>(q) * p, p));
        }
        basis.project_nodes(u, p, grad);
        double residual = 0.0;
        for (int k = 0; k < dim; ++k) {
            grad[k] -= moments[k];
            residual = std::max(residual, std::abs(grad[k]));
        }
        state.iterations = it;
        state.residual = residual;
        if (residual < settings.tolerance) {
            state.converged = true;
            return state;
        }
        if (it >= settings.max_iterations) {
            throw NonConvergenceError("dual Newton solve did not converge in " +
                                          std::to_string(it) + " iterations (residual " +
                                          std::to_string(residual) + ")",
                                      residual, it);
        }

        dual_hessian(state.lambda, entropy, basis, hessian);
        const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
            h(hessian.data(), dim, dim);
        llt.compute(h);
        if (llt.info() != Eigen::Success) {
            throw NonConvergenceError("dual Hessian is not positive definite", residual, it);
        }
        const Eigen::Map<const Eigen::VectorXd> g(grad.data(), dim);
        const Eigen::VectorXd direction = -llt.solve(g);
        const double slope = g.dot(direction);
        const double slack = 16.0 * DBL_EPSILON * (std::abs(objective) + 1.0);

        double step = 1.0;
        for (;;) {
            for (int k = 0; k < dim; ++k) trial[k] = state.lambda[k] + step * direction[k];
            entropy_variables_at_nodes(trial, p, basis, v);
            if (nodes_in_domain(v, entropy, nq)) {
                const double candidate = objective_from_nodes(v, trial, moments, entropy, basis);
                if (candidate <= objective + settings.armijo * step * slope + slack) {
                    objective = candidate;
                    break;
                }
            }
            step *= settings.shrink;
            if (step < 1e-14) {
                throw NonConvergenceError("dual line search stalled (residual " +
                                              std::to_string(residual) + ")",
                                          residual, it);
            }
        }
        state.lambda.swap(trial);
    }
}

std::vector<double> reconstruct_moments(const DualState& dual, const Entropy& entropy,
                                        const GpcBasis& basis) {
    const int p = entropy.states();
    std::vector<double> nodes(static_cast<size_t>(basis.num_nodes()) * p);
    reconstruct_nodes(dual.lambda, entropy, basis, nodes);
    std::vector<double> moments(static_cast<size_t>(p) * basis.size());
    basis.project_nodes(nodes, p, moments);
    return moments;
}

std::vector<double> ipm_flux(const DualState& left, const DualState& right, const Physics& physics,
                             const Entropy& entropy, const GpcBasis& basis, int dir, double alpha) {
    const int p = physics.states();
    const size_t count = static_cast<size_t>(basis.num_nodes()) * p;
    std::vector<double> nodes_l(count), nodes_r(count), scratch(p);
    reconstruct_nodes(left.lambda, entropy, basis, nodes_l);
    reconstruct_nodes(right.lambda, entropy, basis, nodes_r);
    std::vector<double> out(static_cast<size_t>(p) * basis.size());
    lift_nodal_flux(physics, basis, nodes_l, nodes_r, dir, alpha, out, scratch);
    return out;
}

}  // namespace uqsg
