#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uqsg/filters.hpp"
#include "uqsg/mesh.hpp"
#include "uqsg/physics.hpp"
#include "uqsg/quadrature.hpp"
#include "uqsg/solver.hpp"

namespace uqsg {

/// Typed view of a scenario file.
struct ScenarioSettings {
    PhysicsKind model = PhysicsKind::Burgers;
    double gamma = 1.4;

    double a = 0.0;
    double b = 1.0;
    int nx = 100;
    int ny = 0;  // 0: same as nx (2D only)
    std::vector<SquareObstacle> obstacles;
    std::optional<double> duct_floor;
    std::array<BoundaryKind, 4> boundaries{BoundaryKind::Dirichlet, BoundaryKind::Dirichlet,
                                           BoundaryKind::Dirichlet, BoundaryKind::Dirichlet};

    double x0 = 0.5;
    double x1 = 1.5;
    double sigma = 0.2;
    double u_left = 12.0;
    double u_right = 1.0;
    double rho_left = 1.0;
    double p_left = 1.0;
    double rho_right = 0.3;
    double p_right = 0.3;

    int order = 5;
    QuadratureFamily quadrature = QuadratureFamily::GaussLegendre;
    int points = 0;
    FluxPath flux = FluxPath::Quadrature;

    ClosureKind closure = ClosureKind::SG;
    double tolerance = 1e-7;
    int max_iterations = 200;
    QuadratureFamily ipm_quadrature = QuadratureFamily::GaussLobatto;
    int ipm_points = 0;
    /// Relative widening of the Burgers barrier bounds beyond [min, max] of the data.
    double bound_margin = 1e-3;

    FilterConfig filter;

    double t_end = 0.1;
    double cfl = 0.8;

    std::string output_dir = "out";
    double snapshot_every = 0.0;
};

/// Key-value scenario document with sections [physics], [domain], [ic], [uq],
/// [closure], [filter], [time], [output]. Unknown keys are rejected.
class Scenario {
public:
    /// All keys at their defaults.
    Scenario();

    static Scenario parse(std::istream& in);
    static Scenario parse_string(const std::string& text);
    static Scenario load(const std::string& path);

    /// Sets "section.key" to a raw value; throws ParseError for unknown keys or
    /// values that do not convert.
    void set(const std::string& key, const std::string& value, int line = 0);
    /// Applies "section.key=value".
    void apply_override(const std::string& assignment);
    const std::string& get(const std::string& key) const;
    static const std::vector<std::string>& keys();

    const ScenarioSettings& settings() const { return settings_; }

    /// Writes every key; parse(write()) reproduces the same settings.
    void write(std::ostream& out) const;
    std::string to_string() const;

private:
    void rebuild(const std::string& key, int line);

    std::map<std::string, std::string> values_;
    ScenarioSettings settings_;
};

std::vector<SquareObstacle> parse_obstacles(const std::string& text);
std::string format_obstacles(const std::vector<SquareObstacle>& obstacles);

Mesh make_mesh(const ScenarioSettings& s);
InitialCondition make_initial_condition(const ScenarioSettings& s);
/// Barrier bounds for Burgers IPM: data range widened by bound_margin.
std::pair<double, double> burgers_bounds(const ScenarioSettings& s);
Problem make_problem(const ScenarioSettings& s);
SolverConfig make_solver_config(const ScenarioSettings& s);

}  // namespace uqsg
