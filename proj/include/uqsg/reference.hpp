#pragma once

#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include "uqsg/basis.hpp"
#include "uqsg/mesh.hpp"
#include "uqsg/moment_field.hpp"
#include "uqsg/quadrature.hpp"
#include "uqsg/scenario.hpp"

namespace uqsg {

/// Collocation samples restricted to the solver mesh.
struct ReferenceField {
    Mesh mesh;
    int states = 1;
    QuadratureRule rule;
    /// samples[(q * cells + j) * states + s]
    std::vector<double> samples;
    /// mean[j * states + s], variance likewise (clamped at 0).
    std::vector<double> mean;
    std::vector<double> variance;

    int nodes() const { return rule.size(); }
    double sample(int q, int j, int s) const {
        return samples[(static_cast<size_t>(q) * mesh.cells() + j) * states + s];
    }
};

/// A collocation node solve failed; node() identifies the offending xi_q.
class CollocationError : public std::runtime_error {
public:
    CollocationError(const std::string& what, int node, std::exception_ptr cause)
        : std::runtime_error(what), node_(node), cause_(std::move(cause)) {}
    int node() const noexcept { return node_; }
    const std::exception_ptr& cause() const noexcept { return cause_; }

private:
    int node_;
    std::exception_ptr cause_;
};

/// Deterministic (N = 0) solves at each node xi_q on the mesh refined by
/// `refine`, restricted to the scenario mesh by exact cell averaging.
ReferenceField collocation_reference(const ScenarioSettings& settings, int nodes, int refine,
                                     QuadratureFamily family = QuadratureFamily::GaussLobatto);

/// Fills mean/variance from samples.
void finalize_statistics(ReferenceField& reference);

/// Cell averages of `fine` (cells x states) over each coarse cell; inactive
/// fine cells are skipped.
std::vector<double> restrict_to(const Mesh& fine, const Mesh& coarse, int states,
                                const std::vector<double>& fine_values);

/// sqrt(sum_j |cell| sum_q w_q (u_ref - u_N)^2) for one state.
double l2_solution_error(const MomentField& moments, const GpcBasis& basis,
                         const ReferenceField& reference, int state = 0);
/// L2-in-x error between mean fields for one state.
double expectation_error(const MomentField& moments, const ReferenceField& reference, int state = 0);
double variance_error(const MomentField& moments, const ReferenceField& reference, int state = 0);
/// sqrt(sum_j |cell| (a_j - b_j)^2) over active cells.
double l2_field_error(const Mesh& mesh, const std::vector<double>& a, const std::vector<double>& b);

/// Per-cell mean and variance of a moment field: [j * states + s].
std::vector<double> moment_mean(const MomentField& moments, int state);
std::vector<double> moment_variance(const MomentField& moments, int state);

/// Least-squares slope of log(y) over log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergenceCase {
    ClosureKind closure = ClosureKind::SG;
    FilterConfig filter;
};

struct ConvergenceRow {
    int order = 0;
    ConvergenceCase method;
    double error_solution = 0.0;
    double error_mean = 0.0;
    double error_variance = 0.0;
    double walltime = 0.0;
};

struct ConvergenceSlope {
    ConvergenceCase method;
    double solution = 0.0;
    double mean = 0.0;
    double variance = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    /// Empty when fewer than two orders were run.
    std::vector<ConvergenceSlope> slopes;
};

/// Runs every (order, method) pair against `reference` for state `state`.
ConvergenceTable convergence_table(const ScenarioSettings& settings, const std::vector<int>& orders,
                                   const std::vector<ConvergenceCase>& methods,
                                   const ReferenceField& reference, int state = 0);

std::string method_label(const ConvergenceCase& method);
/// Header N,closure,filter,error_solution,error_mean,error_variance,walltime_s.
void write_convergence_csv(std::ostream& out, const ConvergenceTable& table,
                           bool include_walltime = true);
void write_slopes_csv(std::ostream& out, const ConvergenceTable& table);

}  // namespace uqsg
