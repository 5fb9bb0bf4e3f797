#include "uqsg/reference.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "uqsg/errors.hpp"
#include "uqsg/solver.hpp"

namespace uqsg {

std::vector<double> restrict_to(const Mesh& fine, const Mesh& coarse, int states,
                                const std::vector<double>& fine_values) {
    if (fine.nx() % coarse.nx() != 0 || fine.ny() % coarse.ny() != 0 ||
        fine.dimension() != coarse.dimension()) {
        throw ConfigurationError("fine mesh is not an integer refinement of the coarse mesh");
    }
    const int fx = fine.nx() / coarse.nx();
    const int fy = fine.ny() / coarse.ny();
    std::vector<double> out(static_cast<size_t>(coarse.cells()) * states, 0.0);
    std::vector<int> counts(coarse.cells(), 0);
    for (int j = 0; j < fine.cells(); ++j) {
        if (!fine.active(j)) continue;
        const int c = coarse.index(fine.ix(j) / fx, fine.iy(j) / fy);
        ++counts[c];
        for (int s = 0; s < states; ++s) {
            out[static_cast<size_t>(c) * states + s] += fine_values[static_cast<size_t>(j) * states + s];
        }
    }
    for (int c = 0; c < coarse.cells(); ++c) {
        if (counts[c] == 0) continue;
        for (int s = 0; s < states; ++s) out[static_cast<size_t>(c) * states + s] /= counts[c];
    }
    return out;
}

void finalize_statistics(ReferenceField& reference) {
    const int cells = reference.mesh.cells();
    const int p = reference.states;
    reference.mean.assign(static_cast<size_t>(cells) * p, 0.0);
    reference.variance.assign(static_cast<size_t>(cells) * p, 0.0);
    // two passes: sum_q w_q (u_q - mean)^2 avoids cancellation in E[u^2] - E[u]^2
    for (int q = 0; q < reference.nodes(); ++q) {
        const double w = reference.rule.weights[q];
        for (int j = 0; j < cells; ++j) {
            for (int s = 0; s < p; ++s) reference.mean[static_cast<size_t>(j) * p + s] += w * reference.sample(q, j, s);
        }
    }
    for (int q = 0; q < reference.nodes(); ++q) {
        const double w = reference.rule.weights[q];
        for (int j = 0; j < cells; ++j) {
            for (int s = 0; s < p; ++s) {
                const size_t k = static_cast<size_t>(j) * p + s;
                const double d = reference.sample(q, j, s) - reference.mean[k];
                reference.variance[k] += w * d * d;
            }
        }
    }
}

ReferenceField collocation_reference(const ScenarioSettings& settings, int nodes, int refine,
                                     QuadratureFamily family) {
    if (nodes < 2) throw ConfigurationError("collocation needs at least 2 nodes");
    if (refine < 1) throw ConfigurationError("refinement factor must be >= 1");
    const Problem base = make_problem(settings);
    ReferenceField reference;
    reference.mesh = base.mesh;
    reference.states = base.physics->states();
    reference.rule = make_rule(family, nodes);
    const Mesh fine = base.mesh.refined(refine);
    const int p = reference.states;
    const size_t per_node = static_cast<size_t>(base.mesh.cells()) * p;
    reference.samples.assign(per_node * nodes, 0.0);

    SolverConfig config;
    config.closure = ClosureKind::SG;
    config.order = 0;
    config.cfl = settings.cfl;
    config.t_end = settings.t_end;

    std::vector<std::exception_ptr> errors(nodes);
#pragma omp parallel for schedule(dynamic, 1)
    for (int q = 0; q < nodes; ++q) {
        try {
            const double xi = reference.rule.nodes[q];
            Problem problem{base.physics, fine, nullptr, nullptr};
            const InitialCondition ic = base.initial;
            problem.initial = [ic, xi](double x, double y, double, std::span<double> out) {
                ic(x, y, xi, out);
            };
            Solver solver(std::move(problem), config);
            solver.run();
            const MomentField& m = solver.moments();
            std::vector<double> values(static_cast<size_t>(fine.cells()) * p);
            for (int j = 0; j < fine.cells(); ++j) {
                for (int s = 0; s < p; ++s) values[static_cast<size_t>(j) * p + s] = m(s, 0, j);
            }
            const auto coarse = restrict_to(fine, reference.mesh, p, values);
            std::copy(coarse.begin(), coarse.end(), reference.samples.begin() + q * per_node);
        } catch (...) {
            errors[q] = std::current_exception();
        }
    }
    for (int q = 0; q < nodes; ++q) {
        if (!errors[q]) continue;
        std::string what = "unknown error";
        try {
            std::rethrow_exception(errors[q]);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        std::ostringstream msg;
        msg << std::setprecision(17) << "collocation node " << q << " (xi = " << reference.rule.nodes[q]
            << ") failed: " << what;
        throw CollocationError(msg.str(), q, errors[q]);
    }
    finalize_statistics(reference);
    return reference;
}

namespace {

void check_compatible(const MomentField& moments, const ReferenceField& reference, int state) {
    if (moments.cells() != reference.mesh.cells() || moments.states() != reference.states) {
        throw ConfigurationError("moment field and reference live on different meshes");
    }
    if (state < 0 || state >= reference.states) throw ConfigurationError("state out of range");
}

}  // namespace

double l2_solution_error(const MomentField& moments, const GpcBasis& basis,
                         const ReferenceField& reference, int state) {
    check_compatible(moments, reference, state);
    if (basis.order() != moments.order()) throw ConfigurationError("basis order mismatch");
    const int nq = reference.nodes();
    const int n = basis.size();
    std::vector<double> phi(static_cast<size_t>(nq) * n);
    for (int q = 0; q < nq; ++q) {
        orthonormal_legendre_all(reference.rule.nodes[q],
                                 std::span<double>(phi.data() + static_cast<size_t>(q) * n, n));
    }
    const Mesh& mesh = reference.mesh;
    double sum = 0.0;
    for (int j = 0; j < mesh.cells(); ++j) {
        if (!mesh.active(j)) continue;
        const auto c = moments.coeffs(j, state);
        double cell = 0.0;
        for (int q = 0; q < nq; ++q) {
            double u = 0.0;
            for (int i = 0; i < n; ++i) u += c[i] * phi[static_cast<size_t>(q) * n + i];
            const double d = reference.sample(q, j, state) - u;
            cell += reference.rule.weights[q] * d * d;
        }
        sum += cell;
    }
    return std::sqrt(sum * mesh.cell_volume());
}

std::vector<double> moment_mean(const MomentField& moments, int state) {
    std::vector<double> out(moments.cells());
    for (int j = 0; j < moments.cells(); ++j) out[j] = moments(state, 0, j);
    return out;
}

std::vector<double> moment_variance(const MomentField& moments, int state) {
    std::vector<double> out(moments.cells());
    for (int j = 0; j < moments.cells(); ++j) {
        double v = 0.0;
        for (int i = 1; i < moments.orders(); ++i) v += moments(state, i, j) * moments(state, i, j);
        out[j] = v;
    }
    return out;
}

double l2_field_error(const Mesh& mesh, const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != static_cast<size_t>(mesh.cells()) || b.size() != a.size()) {
        throw ConfigurationError("field sizes do not match the mesh");
    }
    double sum = 0.0;
    for (int j = 0; j < mesh.cells(); ++j) {
        if (!mesh.active(j)) continue;
        const double d = a[j] - b[j];
        sum += d * d;
    }
    return std::sqrt(sum * mesh.cell_volume());
}

namespace {

std::vector<double> reference_state(const ReferenceField& reference, const std::vector<double>& field,
                                    int state) {
    std::vector<double> out(reference.mesh.cells());
    for (int j = 0; j < reference.mesh.cells(); ++j) {
        out[j] = field[static_cast<size_t>(j) * reference.states + state];
    }
    return out;
}

}  // namespace

double expectation_error(const MomentField& moments, const ReferenceField& reference, int state) {
    check_compatible(moments, reference, state);
    return l2_field_error(reference.mesh, moment_mean(moments, state),
                          reference_state(reference, reference.mean, state));
}

double variance_error(const MomentField& moments, const ReferenceField& reference, int state) {
    check_compatible(moments, reference, state);
    return l2_field_error(reference.mesh, moment_variance(moments, state),
                          reference_state(reference, reference.variance, state));
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw ConfigurationError("slope fit needs at least two points");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(x.size());
    for (size_t k = 0; k < x.size(); ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw ConfigurationError("slope fit needs positive data");
        const double lx = std::log(x[k]);
        const double ly = std::log(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw ConfigurationError("slope fit needs distinct abscissae");
    return (n * sxy - sx * sy) / denom;
}

std::string method_label(const ConvergenceCase& method) {
    return to_string(method.closure) + "/" + to_string(method.filter.kind);
}

ConvergenceTable convergence_table(const ScenarioSettings& settings, const std::vector<int>& orders,
                                   const std::vector<ConvergenceCase>& methods,
                                   const ReferenceField& reference, int state) {
    if (orders.empty() || methods.empty()) throw ConfigurationError("empty convergence sweep");
    ConvergenceTable table;
    for (const auto& method : methods) {
        for (int order : orders) {
            ScenarioSettings run = settings;
            run.order = order;
            run.closure = method.closure;
            run.filter = method.filter;
            Solver solver(make_problem(run), make_solver_config(run));
            const auto start = std::chrono::steady_clock::now();
            solver.run();
            const MomentField result = solver.solution();
            ConvergenceRow row;
            row.walltime =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            row.order = order;
            row.method = method;
            row.error_solution = l2_solution_error(result, solver.basis(), reference, state);
            row.error_mean = expectation_error(result, reference, state);
            row.error_variance = variance_error(result, reference, state);
            table.rows.push_back(row);
        }
        if (orders.size() >= 2) {
            std::vector<double> x, es, em, ev;
            for (const auto& row : table.rows) {
                if (method_label(row.method) != method_label(method)) continue;
                x.push_back(row.order);
                es.push_back(row.error_solution);
                em.push_back(row.error_mean);
                ev.push_back(row.error_variance);
            }
            table.slopes.push_back({method, loglog_slope(x, es), loglog_slope(x, em), loglog_slope(x, ev)});
        }
    }
    return table;
}

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table, bool include_walltime) {
    out << "N,closure,filter,error_solution,error_mean,error_variance,walltime_s\n";
    out << std::setprecision(17);
    for (const auto& row : table.rows) {
        out << row.order << ',' << to_string(row.method.closure) << ','
            << to_string(row.method.filter.kind) << ',' << row.error_solution << ','
            << row.error_mean << ',' << row.error_variance << ',';
        if (include_walltime) out << row.walltime;
        out << '\n';
    }
}

void write_slopes_csv(std::ostream& out, const ConvergenceTable& table) {
    out << "closure,filter,slope_solution,slope_mean,slope_variance\n";
    out << std::setprecision(17);
    for (const auto& slope : table.slopes) {
        out << to_string(slope.method.closure) << ',' << to_string(slope.method.filter.kind) << ','
            << slope.solution << ',' << slope.mean << ',' << slope.variance << '\n';
    }
}

}  // namespace uqsg
