#pragma once

#include <span>

#include "uqsg/basis.hpp"
#include "uqsg/physics.hpp"

namespace uqsg {

/// True when every coefficient of order >= 1 is exactly zero in all states.
/// `moments` is state-major with `orders` entries per state.
bool is_deterministic(std::span<const double> moments, int orders);

/// Expansion values at the stored quadrature nodes, node-major: out[q * states + s].
void nodal_values(const GpcBasis& basis, std::span<const double> moments, int states,
                  std::span<double> out);

/// Moment flux from node values of the left and right states:
/// F_si = sum_q w_q f*(u_l(xi_q), u_r(xi_q))_s phi_i(xi_q). Output is state-major.
/// `scratch` needs physics.states() entries.
void lift_nodal_flux(const Physics& physics, const GpcBasis& basis,
                     std::span<const double> nodes_l, std::span<const double> nodes_r, int dir,
                     double alpha, std::span<double> out, std::span<double> scratch);

/// Moment-system numerical flux by quadrature of the pointwise flux f* over
/// the two expansions. Deterministic data (all orders >= 1 zero on both
/// sides) is evaluated pointwise, giving (f*(u_l0, u_r0), 0, ..., 0) exactly.
void lift_flux(const Physics& physics, const GpcBasis& basis, std::span<const double> moments_l,
               std::span<const double> moments_r, int dir, double alpha, std::span<double> out);

/// Closed-form Burgers/Lax-Friedrichs moment flux using the triple-product tensor:
/// F_k = 1/4 sum_ij (l_i l_j + r_i r_j) C_ijk - alpha/2 (r_k - l_k).
void burgers_lf_flux_analytic(const GpcBasis& basis, std::span<const double> moments_l,
                              std::span<const double> moments_r, double alpha,
                              std::span<double> out);

}  // namespace uqsg
