#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "uqsg/basis.hpp"
#include "uqsg/entropy.hpp"
#include "uqsg/filters.hpp"
#include "uqsg/ipm.hpp"
#include "uqsg/mesh.hpp"
#include "uqsg/moment_field.hpp"
#include "uqsg/physics.hpp"

namespace uqsg {

enum class ClosureKind { SG, IPM };
enum class FluxPath { Quadrature, Analytic };

std::string to_string(ClosureKind kind);
ClosureKind closure_kind_from_string(const std::string& name);

struct SolverConfig {
    ClosureKind closure = ClosureKind::SG;
    FilterConfig filter;
    double cfl = 0.8;
    double t_end = 0.0;
    int order = 0;

    /// SG quadrature; 0 points selects 2N+1 nodes.
    QuadratureFamily quadrature = QuadratureFamily::GaussLegendre;
    int quadrature_points = 0;
    FluxPath flux_path = FluxPath::Quadrature;

    /// IPM quadrature; 0 points selects max(4N, N+2) nodes.
    QuadratureFamily ipm_quadrature = QuadratureFamily::GaussLobatto;
    int ipm_points = 0;
    DualSolverSettings dual;
};

/// Initial condition u_IC(x, y, xi) written into `out` (one entry per state).
using InitialCondition = std::function<void(double x, double y, double xi, std::span<double> out)>;

struct Problem {
    std::shared_ptr<const Physics> physics;
    Mesh mesh;
    InitialCondition initial;
    /// Required for the IPM closure.
    std::shared_ptr<const Entropy> entropy;
};

struct RunReport {
    long steps = 0;
    double final_time = 0.0;
    double wall_seconds = 0.0;
    std::vector<double> dt_history;
    int max_dual_iterations = 0;
};

using SnapshotCallback = std::function<void(double time, const MomentField& moments)>;

/// Basis used by a closure: SG (2N+1 Gauss-Legendre by default) or IPM.
GpcBasis closure_basis(const SolverConfig& config);

/// Cell moments from the projected initial condition, evaluated at cell centers.
/// Inactive cells stay zero.
MomentField init_moments(const Mesh& mesh, const InitialCondition& initial, const GpcBasis& basis,
                         int states);

/// Finite-volume solver for the (filtered) SG or IPM moment system.
///
/// Each step: filter (SG) or dual solve + moment recalculation (IPM), node
/// values, CFL time step, moment fluxes on all faces, forward Euler update.
class Solver {
public:
    Solver(Problem problem, SolverConfig config);

    const GpcBasis& basis() const { return basis_; }
    const Mesh& mesh() const { return problem_.mesh; }
    const Physics& physics() const { return *problem_.physics; }
    const SolverConfig& config() const { return config_; }
    const MomentField& moments() const { return moments_; }
    double time() const { return time_; }
    long steps() const { return steps_; }

    /// Advances one step (clipped to land on t_end) and returns the dt used.
    double step();

    /// Integrates to t_end. With snapshot_interval > 0 the callback receives
    /// the state at t = 0 and whenever a multiple of the interval is passed.
    RunReport run(const SnapshotCallback& callback = {}, double snapshot_interval = 0.0);

    /// Reported solution: the state after the final step with the filter
    /// applied (the initial moments when no step was taken).
    MomentField solution() const;

    /// Ghost moments seen by the active cell across boundary face `face`
    /// (Dirichlet data or mirrored wall state), state-major.
    std::vector<double> ghost_moments(int face) const;
    /// Boundary faces in the order used by ghost_moments().
    struct BoundaryFace {
        int face;
        int cell;
        Side side;
        bool wall;
    };
    const std::vector<BoundaryFace>& boundary_faces() const { return boundary_faces_; }

    /// sum_j u_s0j |cell| over active cells, per state.
    std::vector<double> total_mass() const;
    /// Accumulated outward boundary flux of the order-0 moments, per state.
    const std::vector<double>& boundary_outflow() const { return outflow_; }

    const std::vector<DualState>& duals() const { return duals_; }

private:
    struct Face {
        int left = -1;   // cell index or -1
        int right = -1;  // cell index or -1
        int dir = 0;
        int ghost = -1;  // Dirichlet ghost index, -1 for interior or wall
        bool wall = false;
        bool skip = true;
    };
    struct Ghost {
        std::vector<double> moments;
        std::vector<double> nodes;
        bool deterministic = false;
    };

    void build_faces();
    void build_ghosts();
    void prepare_nodes();
    double compute_dt() const;
    void compute_fluxes(double dt);
    void update(double dt);

    Problem problem_;
    SolverConfig config_;
    GpcBasis basis_;
    MomentField moments_;
    std::vector<DualState> duals_;
    std::vector<Face> faces_;
    std::vector<std::array<int, 4>> cell_faces_;  // west, east, south, north
    std::vector<Ghost> ghosts_;
    std::vector<BoundaryFace> boundary_faces_;
    std::vector<double> nodes_;
    std::vector<std::uint8_t> deterministic_;
    std::vector<double> face_flux_;
    std::vector<double> outflow_;
    std::vector<int> active_list_;
    double time_ = 0.0;
    long steps_ = 0;
    int last_dual_iterations_ = 0;
};

}  // namespace uqsg
