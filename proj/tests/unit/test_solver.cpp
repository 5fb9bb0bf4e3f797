#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "exact_riemann.hpp"
#include "uqsg/errors.hpp"
#include "uqsg/moment_flux.hpp"
#include "uqsg/scenario.hpp"
#include "uqsg/solver.hpp"

using namespace uqsg;

namespace {

ScenarioSettings burgers_settings(int nx, int order, double t_end) {
    ScenarioSettings s;
    s.model = PhysicsKind::Burgers;
    s.a = 0.0;
    s.b = 3.0;
    s.nx = nx;
    s.order = order;
    s.t_end = t_end;
    return s;
}

ScenarioSettings euler1d_settings(int nx, int order, double t_end) {
    ScenarioSettings s;
    s.model = PhysicsKind::Euler1D;
    s.a = 0.0;
    s.b = 1.0;
    s.nx = nx;
    s.x0 = 0.5;
    s.sigma = 0.05;
    s.order = order;
    s.t_end = t_end;
    return s;
}

ScenarioSettings euler2d_settings(int n, int order, double t_end) {
    ScenarioSettings s;
    s.model = PhysicsKind::Euler2D;
    s.a = -0.3;
    s.b = 0.3;
    s.nx = n;
    s.obstacles = {{0.0, 0.15, 0.06}, {0.1, 0.0, 0.04}};
    s.x0 = 0.05;
    s.sigma = 0.05;
    s.rho_right = 0.8;
    s.p_right = 0.3;
    s.order = order;
    s.t_end = t_end;
    return s;
}

Solver make_solver(const ScenarioSettings& s) { return Solver(make_problem(s), make_solver_config(s)); }

MomentField run_to_end(const ScenarioSettings& s) {
    Solver solver = make_solver(s);
    solver.run();
    return solver.solution();
}

}  // namespace

TEST_CASE("initial moments") {
    const ScenarioSettings s = burgers_settings(30, 4, 0.0);
    const Problem problem = make_problem(s);
    const GpcBasis basis = closure_basis(make_solver_config(s));
    const MomentField m = init_moments(problem.mesh, problem.initial, basis, 1);
    // x = 0.05 lies left of x0 - sigma for every xi
    CHECK(m(0, 0, 0) == 12.0);
    for (int i = 1; i <= 4; ++i) CHECK(m(0, i, 0) == 0.0);
    // x = 2.95 lies right of x1 + sigma
    CHECK(m(0, 0, 29) == 1.0);
    for (int i = 1; i <= 4; ++i) CHECK(m(0, i, 29) == 0.0);
    // x = 0.55 is inside the uncertain ramp start: increasing in xi
    CHECK(m(0, 1, 5) > 0.0);
    // x = 1.05 is on the ramp for every xi: linear in xi, slope (u_L - u_R) sigma / (x1 - x0)
    const double slope = 11.0 * 0.2 / 1.0;
    CHECK(m(0, 0, 10) == doctest::Approx(12.0 - 11.0 * (1.05 - 0.5)).epsilon(1e-13));
    CHECK(m(0, 1, 10) == doctest::Approx(slope / std::sqrt(3.0)).epsilon(1e-13));
    for (int i = 2; i <= 4; ++i) CHECK(std::abs(m(0, i, 10)) < 1e-13);
}

TEST_CASE("mesh with obstacles and floor") {
    Mesh mesh = Mesh::box(-0.3, 0.3, 60, -0.3, 0.3, 60);
    CHECK(mesh.active_cells() == 3600);
    mesh.add_square_obstacle({0.0, 0.15, 0.06});
    // centers at -0.025..0.025 step 0.01 in x, 0.125..0.175 in y: 6 x 6 cells
    CHECK(mesh.active_cells() == 3600 - 36);
    CHECK_FALSE(mesh.active(mesh.index(30, 45)));
    CHECK(mesh.active(mesh.index(30, 30)));

    Mesh duct = Mesh::box(0.0, 1.0, 8, 0.0, 1.0, 8);
    duct.set_floor(0.3725);
    // rows with centers 0.0625, 0.1875, 0.3125 lie below the floor
    CHECK(duct.active_cells() == 40);
    const Mesh fine = duct.refined(2);
    CHECK(fine.nx() == 16);
    CHECK(fine.has_floor());
    CHECK(fine.active_cells() == 16 * 10);
}

TEST_CASE("t_end = 0 returns the projected initial condition") {
    const ScenarioSettings s = burgers_settings(50, 5, 0.0);
    Solver solver = make_solver(s);
    const MomentField initial = solver.moments();
    const RunReport report = solver.run();
    CHECK(report.steps == 0);
    CHECK(report.final_time == 0.0);
    CHECK(solver.solution() == initial);
}

TEST_CASE("a constant state is steady") {
    ScenarioSettings s = burgers_settings(40, 3, 0.05);
    s.u_left = 2.0;
    s.u_right = 2.0;
    Solver solver = make_solver(s);
    const MomentField initial = solver.moments();
    solver.run();
    CHECK(solver.steps() > 0);
    CHECK(solver.solution() == initial);

    ScenarioSettings e = euler2d_settings(30, 2, 0.02);
    e.rho_right = e.rho_left;
    e.p_right = e.p_left;
    for (auto& b : e.boundaries) b = BoundaryKind::SlipWall;
    Solver euler = make_solver(e);
    const MomentField rest = euler.moments();
    euler.run();
    CHECK(euler.steps() > 0);
    const MomentField after = euler.solution();
    for (size_t k = 0; k < rest.data().size(); ++k) {
        CHECK(std::abs(after.data()[k] - rest.data()[k]) <= 1e-13);
    }
}

TEST_CASE("ghost states") {
    const ScenarioSettings s = burgers_settings(20, 4, 0.01);
    const Solver solver = make_solver(s);
    REQUIRE(solver.boundary_faces().size() == 2);
    for (const auto& face : solver.boundary_faces()) {
        const auto ghost = solver.ghost_moments(face.face);
        CHECK_FALSE(face.wall);
        CHECK(ghost[0] == (face.side == Side::Left ? 12.0 : 1.0));
        for (int i = 1; i <= 4; ++i) CHECK(ghost[i] == 0.0);
    }

    ScenarioSettings e = euler2d_settings(20, 2, 0.01);
    e.boundaries[static_cast<int>(Side::Bottom)] = BoundaryKind::SlipWall;
    const Solver euler = make_solver(e);
    int walls = 0;
    for (const auto& face : euler.boundary_faces()) {
        if (!face.wall) continue;
        ++walls;
        const auto ghost = euler.ghost_moments(face.face);
        const auto inner = euler.moments().cell(face.cell);
        const bool x_face = face.side == Side::Left || face.side == Side::Right;
        const int normal = x_face ? 1 : 2;
        for (int s = 0; s < 4; ++s) {
            for (int i = 0; i <= 2; ++i) {
                const double expected = s == normal ? -inner[s * 3 + i] : inner[s * 3 + i];
                CHECK(ghost[s * 3 + i] == expected);
            }
        }
    }
    // bottom wall plus the perimeters of both obstacles
    CHECK(walls > 20);
    CHECK_THROWS_AS(euler.ghost_moments(euler.mesh().nx() / 2 + 1), ConfigurationError);
}

TEST_CASE("deterministic input stays deterministic and matches N = 0") {
    for (auto kind : {FilterKind::None, FilterKind::L2, FilterKind::LassoFixed, FilterKind::LassoAdaptive}) {
        ScenarioSettings s = burgers_settings(60, 6, 0.05);
        s.sigma = 0.0;
        s.filter = {kind, kind == FilterKind::LassoAdaptive ? 0.0 : 1e-3};
        const MomentField full = run_to_end(s);
        ScenarioSettings d = s;
        d.order = 0;
        d.filter = {};
        const MomentField mean = run_to_end(d);
        for (int j = 0; j < full.cells(); ++j) {
            CHECK(full(0, 0, j) == mean(0, 0, j));
            for (int i = 1; i <= 6; ++i) CHECK(full(0, i, j) == 0.0);
        }
    }

    ScenarioSettings e = euler1d_settings(80, 4, 0.05);
    e.sigma = 0.0;
    e.filter = {FilterKind::LassoAdaptive, 0.0};
    const MomentField full = run_to_end(e);
    e.order = 0;
    e.filter = {};
    const MomentField mean = run_to_end(e);
    for (int j = 0; j < full.cells(); ++j) {
        for (int s = 0; s < 3; ++s) {
            CHECK(full(s, 0, j) == mean(s, 0, j));
            for (int i = 1; i <= 4; ++i) CHECK(full(s, i, j) == 0.0);
        }
    }
}

TEST_CASE("an identity filter reproduces plain SG") {
    ScenarioSettings s = burgers_settings(80, 5, 0.04);
    const MomentField plain = run_to_end(s);
    s.filter = {FilterKind::L2, 0.0};
    CHECK(run_to_end(s) == plain);
    s.filter = {FilterKind::LassoFixed, 0.0};
    CHECK(run_to_end(s) == plain);
}

TEST_CASE("analytic and quadrature flux paths agree") {
    ScenarioSettings s = burgers_settings(80, 6, 0.04);
    const MomentField quad = run_to_end(s);
    s.flux = FluxPath::Analytic;
    const MomentField closed = run_to_end(s);
    for (size_t k = 0; k < quad.data().size(); ++k) {
        CHECK(std::abs(quad.data()[k] - closed.data()[k]) <= 1e-10);
    }
}

TEST_CASE("conservation of the mean moments") {
    std::vector<ScenarioSettings> cases{burgers_settings(100, 5, 0.1), euler1d_settings(100, 4, 0.1),
                                        euler2d_settings(30, 2, 0.05)};
    cases[0].filter = {FilterKind::LassoAdaptive, 0.0};
    cases[1].filter = {FilterKind::L2, 1e-4};
    cases[2].boundaries[static_cast<int>(Side::Top)] = BoundaryKind::SlipWall;
    for (const auto& s : cases) {
        Solver solver = make_solver(s);
        const auto start = solver.total_mass();
        solver.run();
        const auto end = solver.total_mass();
        const auto& outflow = solver.boundary_outflow();
        for (size_t st = 0; st < start.size(); ++st) {
            const double scale = std::max(1.0, std::abs(start[st]));
            CHECK(std::abs(end[st] - start[st] + outflow[st]) <= 1e-12 * scale * (1.0 + solver.steps() / 1000.0));
        }
    }
}

TEST_CASE("results do not depend on the thread count") {
    const ScenarioSettings s = euler2d_settings(24, 3, 0.03);
    const MomentField a = run_to_end(s);
    const MomentField b = run_to_end(s);
    CHECK(a == b);
#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const MomentField serial = run_to_end(s);
    omp_set_num_threads(std::max(2, saved));
    const MomentField parallel = run_to_end(s);
    omp_set_num_threads(saved);
    CHECK(serial == parallel);
    CHECK(serial == a);
#endif
}

TEST_CASE("deterministic shock tube against the exact solution") {
    const oracle::ExactRiemann exact({1.0, 0.0, 1.0}, {0.3, 0.0, 0.3}, 1.4);
    double previous = 1e9;
    for (int nx : {100, 200, 400}) {
        ScenarioSettings s = euler1d_settings(nx, 0, 0.14);
        s.sigma = 0.0;
        const MomentField m = run_to_end(s);
        const Mesh mesh = make_mesh(s);
        double error = 0.0;
        for (int j = 0; j < mesh.cells(); ++j) {
            const double x = mesh.x_center(j);
            error += std::abs(m(0, 0, j) - exact.sample((x - 0.5) / 0.14).rho) * mesh.dx();
        }
        CHECK(error < 0.02);
        CHECK(error < previous);
        previous = error;
    }
}

TEST_CASE("HLL keeps a strong rarefaction admissible") {
    ScenarioSettings s = euler1d_settings(200, 0, 0.1);
    s.sigma = 0.0;
    s.rho_left = 1.0;
    s.p_left = 1.0;
    s.rho_right = 1e-3;
    s.p_right = 1e-3;
    s.cfl = 0.9;
    Solver solver = make_solver(s);
    solver.run();
    const auto& physics = solver.physics();
    for (int j = 0; j < solver.mesh().cells(); ++j) {
        const auto block = solver.moments().cell(j);
        const double u[3] = {block[0], block[1], block[2]};
        CHECK(physics.admissible(u));
    }
}

TEST_CASE("the adaptive filter keeps the top moment at zero") {
    ScenarioSettings s = euler1d_settings(100, 5, 0.08);
    s.filter = {FilterKind::LassoAdaptive, 0.0};
    const MomentField m = run_to_end(s);
    for (int j = 0; j < m.cells(); ++j) {
        for (int st = 0; st < 3; ++st) CHECK(m(st, 5, j) == 0.0);
    }
}

TEST_CASE("IPM on Burgers") {
    ScenarioSettings s = burgers_settings(60, 4, 0.05);
    s.closure = ClosureKind::IPM;
    Solver solver = make_solver(s);
    const RunReport report = solver.run();
    CHECK(report.steps > 0);
    CHECK(report.max_dual_iterations >= 0);
    const auto [lo, hi] = burgers_bounds(s);
    CHECK(lo == doctest::Approx(1.0 - 0.011));
    CHECK(hi == doctest::Approx(12.0 + 0.011));
    const GpcBasis& basis = solver.basis();
    const BoundedBarrierEntropy entropy(lo, hi);
    for (int j = 0; j < solver.mesh().cells(); ++j) {
        const auto& dual = solver.duals()[j];
        for (int q = 0; q < basis.num_nodes(); ++q) {
            double v = 0.0;
            for (int i = 0; i <= 4; ++i) v += dual.lambda[i] * basis.phi(q, i);
            const double u = entropy.inverse(v);
            CHECK(u >= lo);
            CHECK(u <= hi);
        }
    }

    // deterministic data: IPM and SG take identical steps up to the dual tolerance
    s.sigma = 0.0;
    s.tolerance = 1e-13;
    const MomentField ipm = run_to_end(s);
    s.closure = ClosureKind::SG;
    const MomentField sg = run_to_end(s);
    for (int j = 0; j < sg.cells(); ++j) CHECK(std::abs(ipm(0, 0, j) - sg(0, 0, j)) <= 1e-8);
}

TEST_CASE("solver errors") {
    ScenarioSettings nan = burgers_settings(20, 2, 0.01);
    Problem problem = make_problem(nan);
    problem.initial = [](double x, double, double, std::span<double> out) {
        out[0] = x > 1.5 ? std::nan("") : 1.0;
    };
    Solver blowup(problem, make_solver_config(nan));
    CHECK_THROWS_AS(blowup.run(), NumericalBlowupError);

    // a Gibbs undershoot of the density expansion at the quadrature nodes
    ScenarioSettings e = euler1d_settings(20, 3, 0.01);
    e.rho_right = 1e-3;
    e.p_right = 1e-3;
    e.sigma = 0.4;
    Solver negative = make_solver(e);
    CHECK_THROWS_AS(negative.run(), HyperbolicityLossError);
}

TEST_CASE("configuration errors") {
    const ScenarioSettings s = burgers_settings(20, 3, 0.1);
    auto config = make_solver_config(s);
    config.cfl = 1.5;
    CHECK_THROWS_AS(Solver(make_problem(s), config), ConfigurationError);
    config = make_solver_config(s);
    config.t_end = -1.0;
    CHECK_THROWS_AS(Solver(make_problem(s), config), ConfigurationError);
    config = make_solver_config(s);
    config.filter = {FilterKind::L2, -1.0};
    CHECK_THROWS_AS(Solver(make_problem(s), config), ConfigurationError);
    config = make_solver_config(s);
    config.order = 0;
    config.filter = {FilterKind::LassoAdaptive, 0.0};
    CHECK_THROWS_AS(Solver(make_problem(s), config), ConfigurationError);
    config = make_solver_config(s);
    config.closure = ClosureKind::IPM;
    CHECK_THROWS_AS(Solver(make_problem(s), config), ConfigurationError);

    ScenarioSettings e = euler1d_settings(20, 3, 0.1);
    auto econfig = make_solver_config(e);
    econfig.flux_path = FluxPath::Analytic;
    CHECK_THROWS_AS(Solver(make_problem(e), econfig), ConfigurationError);

    CHECK(closure_kind_from_string("ipm") == ClosureKind::IPM);
    CHECK(to_string(ClosureKind::SG) == "sg");
    CHECK_THROWS_AS(closure_kind_from_string("moments"), ConfigurationError);
}
