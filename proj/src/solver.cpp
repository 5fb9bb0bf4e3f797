#include "uqsg/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>

#include "uqsg/errors.hpp"
#include "uqsg/moment_flux.hpp"

namespace uqsg {

std::string to_string(ClosureKind kind) { return kind == ClosureKind::SG ? "sg" : "ipm"; }

ClosureKind closure_kind_from_string(const std::string& name) {
    if (name == "sg") return ClosureKind::SG;
    if (name == "ipm") return ClosureKind::IPM;
    throw ConfigurationError("unknown closure '" + name + "'");
}

GpcBasis closure_basis(const SolverConfig& config) {
    const int n = config.order;
    if (config.closure == ClosureKind::SG) {
        int points = config.quadrature_points;
        if (points <= 0) {
            points = config.quadrature == QuadratureFamily::GaussLegendre ? 2 * n + 1 : 2 * n + 2;
        }
        return build_basis(n, points, config.quadrature);
    }
    int points = config.ipm_points;
    if (points <= 0) points = std::max(4 * n, n + 2);
    return build_basis(n, points, config.ipm_quadrature);
}

MomentField init_moments(const Mesh& mesh, const InitialCondition& initial, const GpcBasis& basis,
                         int states) {
    MomentField field(mesh.cells(), states, basis.order());
#pragma omp parallel for schedule(static)
    for (int j = 0; j < mesh.cells(); ++j) {
        if (!mesh.active(j)) continue;
        const double x = mesh.x_center(mesh.ix(j));
        const double y = mesh.y_center(mesh.iy(j));
        basis.project([&](double xi, std::span<double> out) { initial(x, y, xi, out); }, states,
                      field.cell(j));
    }
    return field;
}

namespace {

void mirror_moments(const Physics& physics, int orders, int dir, std::span<double> moments) {
    const int p = physics.states();
    double tmp[4];
    for (int i = 0; i < orders; ++i) {
        for (int s = 0; s < p; ++s) tmp[s] = moments[static_cast<size_t>(s) * orders + i];
        physics.reflect(std::span<double>(tmp, p), dir);
        for (int s = 0; s < p; ++s) moments[static_cast<size_t>(s) * orders + i] = tmp[s];
    }
}

void mirror_nodes(const Physics& physics, int dir, std::span<double> nodes) {
    const size_t p = physics.states();
    for (size_t k = 0; k + p <= nodes.size(); k += p) physics.reflect(nodes.subspan(k, p), dir);
}

}  // namespace

Solver::Solver(Problem problem, SolverConfig config)
    : problem_(std::move(problem)), config_(config), basis_(closure_basis(config)) {
    if (!problem_.physics) throw ConfigurationError("solver needs a physics model");
    if (!problem_.initial) throw ConfigurationError("solver needs an initial condition");
    if (!(config_.cfl > 0.0 && config_.cfl <= 1.0)) {
        throw ConfigurationError("CFL number must lie in (0, 1]");
    }
    if (!(config_.t_end >= 0.0)) throw ConfigurationError("end time must be non-negative");
    if (config_.filter.lambda < 0.0) throw ConfigurationError("filter strength must be >= 0");
    if (config_.filter.kind == FilterKind::LassoAdaptive && config_.order == 0) {
        throw ConfigurationError("adaptive Lasso filter needs order N >= 1");
    }
    if (problem_.physics->dimension() != problem_.mesh.dimension()) {
        throw ConfigurationError("physics and mesh dimensions differ");
    }
    const int p = problem_.physics->states();
    if (config_.closure == ClosureKind::IPM) {
        if (config_.filter.kind != FilterKind::None) {
            throw ConfigurationError("filters apply to the SG closure only");
        }
        if (!problem_.entropy || problem_.entropy->states() != p) {
            throw ConfigurationError("IPM closure needs an entropy matching the physics");
        }
    }
    if (config_.flux_path == FluxPath::Analytic &&
        (config_.closure != ClosureKind::SG || problem_.physics->kind() != PhysicsKind::Burgers)) {
        throw ConfigurationError("analytic moment flux is available for SG Burgers only");
    }

    moments_ = init_moments(problem_.mesh, problem_.initial, basis_, p);
    if (config_.closure == ClosureKind::IPM) duals_.resize(problem_.mesh.cells());
    for (int j = 0; j < problem_.mesh.cells(); ++j) {
        if (problem_.mesh.active(j)) active_list_.push_back(j);
    }
    nodes_.assign(static_cast<size_t>(problem_.mesh.cells()) * basis_.num_nodes() * p, 0.0);
    deterministic_.assign(problem_.mesh.cells(), 0);
    outflow_.assign(p, 0.0);
    build_faces();
    build_ghosts();
}

void Solver::build_faces() {
    const Mesh& mesh = problem_.mesh;
    const int nx = mesh.nx();
    const int ny = mesh.ny();
    const int x_faces = (nx + 1) * ny;
    const int y_faces = mesh.dimension() == 2 ? nx * (ny + 1) : 0;
    faces_.assign(x_faces + y_faces, Face{});
    cell_faces_.assign(mesh.cells(), {-1, -1, -1, -1});

    auto classify = [&](int id, int left, int right, int dir, Side low_side, Side high_side) {
        Face& f = faces_[id];
        f.dir = dir;
        const bool left_active = left >= 0 && mesh.active(left);
        const bool right_active = right >= 0 && mesh.active(right);
        if (!left_active && !right_active) return;
        f.skip = false;
        f.left = left_active ? left : -1;
        f.right = right_active ? right : -1;
        if (left_active && right_active) return;
        const int cell = left_active ? left : right;
        Side side;
        bool wall;
        if (left_active && right < 0) {
            side = high_side;
            wall = mesh.boundary(high_side) == BoundaryKind::SlipWall;
        } else if (right_active && left < 0) {
            side = low_side;
            wall = mesh.boundary(low_side) == BoundaryKind::SlipWall;
        } else {
            // obstacle or duct wall
            side = left_active ? high_side : low_side;
            wall = true;
        }
        f.wall = wall;
        boundary_faces_.push_back({id, cell, side, wall});
    };

    for (int iy = 0; iy < ny; ++iy) {
        for (int fx = 0; fx <= nx; ++fx) {
            const int id = fx + (nx + 1) * iy;
            const int left = fx > 0 ? mesh.index(fx - 1, iy) : -1;
            const int right = fx < nx ? mesh.index(fx, iy) : -1;
            classify(id, left, right, 0, Side::Left, Side::Right);
            if (left >= 0) cell_faces_[left][1] = id;
            if (right >= 0) cell_faces_[right][0] = id;
        }
    }
    if (mesh.dimension() == 2) {
        for (int fy = 0; fy <= ny; ++fy) {
            for (int ix = 0; ix < nx; ++ix) {
                const int id = x_faces + ix + nx * fy;
                const int below = fy > 0 ? mesh.index(ix, fy - 1) : -1;
                const int above = fy < ny ? mesh.index(ix, fy) : -1;
                classify(id, below, above, 1, Side::Bottom, Side::Top);
                if (below >= 0) cell_faces_[below][3] = id;
                if (above >= 0) cell_faces_[above][2] = id;
            }
        }
    }
    face_flux_.assign(faces_.size() * static_cast<size_t>(problem_.physics->states()) *
                          basis_.size(),
                      0.0);
}

void Solver::build_ghosts() {
    const Mesh& mesh = problem_.mesh;
    const int p = problem_.physics->states();
    const int n = basis_.size();
    const int nq = basis_.num_nodes();
    for (const BoundaryFace& bf : boundary_faces_) {
        if (bf.wall) continue;
        double x = mesh.x_center(mesh.ix(bf.cell));
        double y = mesh.y_center(mesh.iy(bf.cell));
        switch (bf.side) {
            case Side::Left: x -= mesh.dx(); break;
            case Side::Right: x += mesh.dx(); break;
            case Side::Bottom: y -= mesh.dy(); break;
            case Side::Top: y += mesh.dy(); break;
        }
        Ghost ghost;
        ghost.moments.resize(static_cast<size_t>(p) * n);
        ghost.nodes.resize(static_cast<size_t>(nq) * p);
        basis_.project([&](double xi, std::span<double> out) { problem_.initial(x, y, xi, out); },
                       p, ghost.moments);
        if (config_.closure == ClosureKind::IPM) {
            const DualState dual = solve_dual(ghost.moments, *problem_.entropy, basis_, config_.dual);
            reconstruct_nodes(dual.lambda, *problem_.entropy, basis_, ghost.nodes);
            basis_.project_nodes(ghost.nodes, p, ghost.moments);
        } else {
            ghost.deterministic = is_deterministic(ghost.moments, n);
            nodal_values(basis_, ghost.moments, p, ghost.nodes);
        }
        faces_[bf.face].ghost = static_cast<int>(ghosts_.size());
        ghosts_.push_back(std::move(ghost));
    }
}

std::vector<double> Solver::ghost_moments(int face) const {
    const Face& f = faces_.at(face);
    if (f.skip || (f.left >= 0 && f.right >= 0)) {
        throw ConfigurationError("face " + std::to_string(face) + " is not a boundary face");
    }
    if (f.ghost >= 0) return ghosts_[f.ghost].moments;
    const int cell = f.left >= 0 ? f.left : f.right;
    const auto block = moments_.cell(cell);
    std::vector<double> out(block.begin(), block.end());
    mirror_moments(*problem_.physics, basis_.size(), f.dir, out);
    return out;
}

void Solver::prepare_nodes() {
    const int p = problem_.physics->states();
    const int n = basis_.size();
    const int nq = basis_.num_nodes();
    const size_t stride = static_cast<size_t>(nq) * p;
    const int count = static_cast<int>(active_list_.size());

    if (config_.closure == ClosureKind::SG) {
        apply_filter(config_.filter, basis_, moments_);
#pragma omp parallel for schedule(static)
        for (int k = 0; k < count; ++k) {
            const int j = active_list_[k];
            const auto block = moments_.cell(j);
            std::span<double> out(nodes_.data() + j * stride, stride);
            const bool det = is_deterministic(block, n);
            deterministic_[j] = det ? 1 : 0;
            if (det) {
                for (int q = 0; q < nq; ++q) {
                    for (int s = 0; s < p; ++s) out[static_cast<size_t>(q) * p + s] = block[s * n];
                }
            } else {
                nodal_values(basis_, block, p, out);
            }
        }
    } else {
        std::vector<std::exception_ptr> errors(count);
        std::vector<int> iterations(count, 0);
#pragma omp parallel for schedule(dynamic, 16)
        for (int k = 0; k < count; ++k) {
            const int j = active_list_[k];
            try {
                duals_[j] = solve_dual(moments_.cell(j), *problem_.entropy, basis_, config_.dual,
                                       duals_[j]);
                iterations[k] = duals_[j].iterations;
                std::span<double> out(nodes_.data() + j * stride, stride);
                reconstruct_nodes(duals_[j].lambda, *problem_.entropy, basis_, out);
                basis_.project_nodes(out, p, moments_.cell(j));
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
        for (int k = 0; k < count; ++k) {
            if (errors[k]) std::rethrow_exception(errors[k]);
        }
        last_dual_iterations_ = count > 0 ? *std::max_element(iterations.begin(), iterations.end()) : 0;
    }

    for (int j : active_list_) {
        for (int q = 0; q < nq; ++q) {
            const std::span<const double> state(nodes_.data() + j * stride + static_cast<size_t>(q) * p,
                                                p);
            if (!problem_.physics->admissible(state)) {
                throw HyperbolicityLossError(
                    "inadmissible state at cell " + std::to_string(j) + ", node " +
                        std::to_string(q) + ", step " + std::to_string(steps_),
                    j, steps_);
            }
        }
    }
}

double Solver::compute_dt() const {
    const Mesh& mesh = problem_.mesh;
    const Physics& physics = *problem_.physics;
    const int nq = basis_.num_nodes();
    const size_t stride = static_cast<size_t>(nq) * physics.states();
    double speed[2] = {0.0, 0.0};
    for (int dir = 0; dir < mesh.dimension(); ++dir) {
        for (int j : active_list_) {
            speed[dir] = std::max(
                speed[dir],
                max_wave_speed(physics, std::span<const double>(nodes_.data() + j * stride, stride),
                               dir));
        }
        for (const Ghost& g : ghosts_) {
            speed[dir] = std::max(speed[dir], max_wave_speed(physics, g.nodes, dir));
        }
    }
    double rate = speed[0] / mesh.dx();
    if (mesh.dimension() == 2) rate += speed[1] / mesh.dy();
    const double remaining = config_.t_end - time_;
    if (rate == 0.0) return remaining;
    return std::min(config_.cfl / rate, remaining);
}

void Solver::compute_fluxes(double dt) {
    const Mesh& mesh = problem_.mesh;
    const Physics& physics = *problem_.physics;
    const int p = physics.states();
    const int n = basis_.size();
    const int nq = basis_.num_nodes();
    const size_t stride = static_cast<size_t>(nq) * p;
    const size_t block = static_cast<size_t>(p) * n;
    const int face_count = static_cast<int>(faces_.size());
    const bool sg = config_.closure == ClosureKind::SG;
    const bool analytic = config_.flux_path == FluxPath::Analytic;

#pragma omp parallel
    {
        std::vector<double> mirror(stride);
        std::vector<double> mirror_mom(block);
        std::vector<double> scratch(p);
        double mean_l[4];
        double mean_r[4];
#pragma omp for schedule(static)
        for (int id = 0; id < face_count; ++id) {
            const Face& f = faces_[id];
            if (f.skip) continue;
            std::span<double> out(face_flux_.data() + id * block, block);
            const double alpha = (f.dir == 0 ? mesh.dx() : mesh.dy()) / dt;

            std::span<const double> nodes_l, nodes_r, mom_l, mom_r;
            bool det_l = false, det_r = false;
            auto cell_side = [&](int cell, std::span<const double>& nodes,
                                 std::span<const double>& mom, bool& det) {
                nodes = std::span<const double>(nodes_.data() + cell * stride, stride);
                mom = moments_.cell(cell);
                det = deterministic_[cell] != 0;
            };
            if (f.left >= 0) cell_side(f.left, nodes_l, mom_l, det_l);
            if (f.right >= 0) cell_side(f.right, nodes_r, mom_r, det_r);
            if (f.left < 0 || f.right < 0) {
                const bool missing_left = f.left < 0;
                auto& nodes = missing_left ? nodes_l : nodes_r;
                auto& mom = missing_left ? mom_l : mom_r;
                bool& det = missing_left ? det_l : det_r;
                if (f.ghost >= 0) {
                    const Ghost& g = ghosts_[f.ghost];
                    nodes = g.nodes;
                    mom = g.moments;
                    det = g.deterministic;
                } else {
                    const int cell = missing_left ? f.right : f.left;
                    const auto src_nodes = std::span<const double>(nodes_.data() + cell * stride, stride);
                    std::copy(src_nodes.begin(), src_nodes.end(), mirror.begin());
                    mirror_nodes(physics, f.dir, mirror);
                    const auto src_mom = moments_.cell(cell);
                    std::copy(src_mom.begin(), src_mom.end(), mirror_mom.begin());
                    mirror_moments(physics, n, f.dir, mirror_mom);
                    nodes = mirror;
                    mom = mirror_mom;
                    det = deterministic_[cell] != 0;
                }
            }

            if (sg && det_l && det_r) {
                for (int s = 0; s < p; ++s) {
                    mean_l[s] = mom_l[static_cast<size_t>(s) * n];
                    mean_r[s] = mom_r[static_cast<size_t>(s) * n];
                }
                physics.numerical_flux(std::span<const double>(mean_l, p),
                                       std::span<const double>(mean_r, p), f.dir, alpha, scratch);
                std::fill(out.begin(), out.end(), 0.0);
                for (int s = 0; s < p; ++s) out[static_cast<size_t>(s) * n] = scratch[s];
            } else if (analytic) {
                burgers_lf_flux_analytic(basis_, mom_l, mom_r, alpha, out);
            } else {
                lift_nodal_flux(physics, basis_, nodes_l, nodes_r, f.dir, alpha, out, scratch);
            }
        }
    }
}

void Solver::update(double dt) {
    const Mesh& mesh = problem_.mesh;
    const int p = problem_.physics->states();
    const int n = basis_.size();
    const size_t block = static_cast<size_t>(p) * n;
    const int count = static_cast<int>(active_list_.size());
    const double rx = dt / mesh.dx();
    const double ry = dt / mesh.dy();
    const bool two_d = mesh.dimension() == 2;

#pragma omp parallel for schedule(static)
    for (int k = 0; k < count; ++k) {
        const int j = active_list_[k];
        const auto& cf = cell_faces_[j];
        auto u = moments_.cell(j);
        const double* west = face_flux_.data() + cf[0] * block;
        const double* east = face_flux_.data() + cf[1] * block;
        for (size_t m = 0; m < block; ++m) u[m] -= rx * (east[m] - west[m]);
        if (two_d) {
            const double* south = face_flux_.data() + cf[2] * block;
            const double* north = face_flux_.data() + cf[3] * block;
            for (size_t m = 0; m < block; ++m) u[m] -= ry * (north[m] - south[m]);
        }
    }

    for (int j : active_list_) {
        for (double v : moments_.cell(j)) {
            if (!std::isfinite(v)) {
                throw NumericalBlowupError("non-finite moment in cell " + std::to_string(j) +
                                               " at step " + std::to_string(steps_),
                                           j, steps_);
            }
        }
    }

    for (const BoundaryFace& bf : boundary_faces_) {
        const Face& f = faces_[bf.face];
        const double area = mesh.dimension() == 1 ? 1.0 : (f.dir == 0 ? mesh.dy() : mesh.dx());
        const double sign = f.left >= 0 ? 1.0 : -1.0;
        for (int s = 0; s < p; ++s) {
            outflow_[s] += sign * dt * area * face_flux_[bf.face * block + static_cast<size_t>(s) * n];
        }
    }
}

double Solver::step() {
    if (time_ >= config_.t_end) return 0.0;
    prepare_nodes();
    const double remaining = config_.t_end - time_;
    const double dt = compute_dt();
    compute_fluxes(dt);
    update(dt);
    time_ = dt >= remaining ? config_.t_end : time_ + dt;
    ++steps_;
    return dt;
}

RunReport Solver::run(const SnapshotCallback& callback, double snapshot_interval) {
    RunReport report;
    const auto start = std::chrono::steady_clock::now();
    const bool snapshots = callback && snapshot_interval > 0.0;
    double next_snapshot = 0.0;
    if (snapshots) {
        callback(time_, solution());
        next_snapshot = time_ + snapshot_interval;
    }
    while (time_ < config_.t_end) {
        const double dt = step();
        report.dt_history.push_back(dt);
        report.max_dual_iterations = std::max(report.max_dual_iterations, last_dual_iterations_);
        if (snapshots && time_ >= next_snapshot && time_ < config_.t_end) {
            callback(time_, solution());
            while (next_snapshot <= time_) next_snapshot += snapshot_interval;
        }
    }
    if (snapshots) callback(time_, solution());
    report.steps = steps_;
    report.final_time = time_;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

MomentField Solver::solution() const {
    MomentField out = moments_;
    if (steps_ > 0 && config_.closure == ClosureKind::SG) apply_filter(config_.filter, basis_, out);
    return out;
}

std::vector<double> Solver::total_mass() const {
    const int p = problem_.physics->states();
    std::vector<double> mass(p, 0.0);
    const double volume = problem_.mesh.cell_volume();
    for (int j : active_list_) {
        for (int s = 0; s < p; ++s) mass[s] += moments_(s, 0, j) * volume;
    }
    return mass;
}

}  // namespace uqsg
