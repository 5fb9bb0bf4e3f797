#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "uqsg/basis.hpp"
#include "uqsg/entropy.hpp"
#include "uqsg/errors.hpp"
#include "uqsg/ipm.hpp"
#include "uqsg/physics.hpp"

using namespace uqsg;

TEST_CASE("bounded-barrier maps") {
    const auto e = bounded_barrier_maps(1.0, 12.0);
    CHECK(e.inverse(0.0) == doctest::Approx(6.5));
    CHECK(std::abs(e.derivative(6.5)) < 1e-15);
    CHECK(e.inverse(std::log(10.0)) == doctest::Approx(11.0).epsilon(1e-14));
    for (double w : {1.001, 2.0, 6.5, 11.9, 11.999}) {
        CHECK(e.inverse(e.derivative(w)) == doctest::Approx(w).epsilon(1e-12));
    }
    for (double v : {-700.0, -30.0, -1.0, 0.0, 3.0, 30.0, 700.0}) {
        const double u = e.inverse(v);
        CHECK(u >= 1.0);
        CHECK(u <= 12.0);
        CHECK(e.inverse_derivative(v) >= 0.0);
    }
    for (double v : {-5.0, 0.0, 2.0}) {
        CHECK(e.inverse(v) > 1.0);
        CHECK(e.inverse(v) < 12.0);
        const double h = 1e-6;
        const double fd = (e.inverse(v + h) - e.inverse(v - h)) / (2 * h);
        CHECK(e.inverse_derivative(v) == doctest::Approx(fd).epsilon(1e-8));
        const double vp[1] = {v + h}, vm[1] = {v - h};
        const double dpot = (e.potential(vp) - e.potential(vm)) / (2 * h);
        CHECK(dpot == doctest::Approx(e.inverse(v)).epsilon(1e-8));
    }
    CHECK_THROWS_AS(e.derivative(0.5), DomainError);
    CHECK_THROWS_AS(e.derivative(12.0), DomainError);
    CHECK_THROWS_AS(bounded_barrier_maps(2.0, 1.0), ConfigurationError);
}

TEST_CASE("Euler entropy maps round trip and their Jacobian matches finite differences") {
    for (int dim : {1, 2}) {
        const EulerEntropy e(dim, 1.4);
        const int p = dim + 2;
        std::vector<double> u(p), v(p), back(p), jac(p * p), up(p), um(p);
        const double vel[2] = {0.3, -0.6};
        euler_conserved(0.7, std::span<const double>(vel, dim), 1.9, 1.4, u);
        e.entropy_variable(u, v);
        e.conserved(v, back);
        for (int s = 0; s < p; ++s) CHECK(back[s] == doctest::Approx(u[s]).epsilon(1e-12));

        e.jacobian(v, jac);
        const double h = 1e-6;
        for (int r = 0; r < p; ++r) {
            std::vector<double> vp = v, vm = v;
            vp[r] += h;
            vm[r] -= h;
            e.conserved(vp, up);
            e.conserved(vm, um);
            for (int s = 0; s < p; ++s) {
                const double fd = (up[s] - um[s]) / (2 * h);
                CHECK(jac[s * p + r] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
                CHECK(jac[s * p + r] == doctest::Approx(jac[r * p + s]).epsilon(1e-12));
            }
            const double dpot = (e.potential(vp) - e.potential(vm)) / (2 * h);
            CHECK(dpot == doctest::Approx(u[r]).epsilon(1e-7).scale(1.0));
        }
        CHECK(e.admissible(u));
        std::vector<double> bad = u;
        bad[0] = -1.0;
        CHECK_FALSE(e.admissible(bad));
    }
}

TEST_CASE("dual of deterministic moments") {
    const BoundedBarrierEntropy e(1.0, 12.0);
    const GpcBasis basis = build_basis(5, 20, QuadratureFamily::GaussLobatto);
    const std::vector<double> m{4.0, 0, 0, 0, 0, 0};
    const DualState d = solve_dual(m, e, basis, {});
    CHECK(d.converged);
    CHECK(d.lambda[0] == doctest::Approx(e.derivative(4.0)).epsilon(1e-12));
    for (int i = 1; i <= 5; ++i) CHECK(std::abs(d.lambda[i]) < 1e-12);
    const auto back = reconstruct_moments(d, e, basis);
    CHECK(back[0] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("dual round trip on a logistic profile") {
    const double lo = 1.0, hi = 12.0;
    const BoundedBarrierEntropy e(lo, hi);
    for (int n : {1, 4, 10}) {
        const GpcBasis basis = build_basis(n, std::max(4 * n, n + 2), QuadratureFamily::GaussLobatto);
        const GpcBasis fine = build_basis(n, 80);
        const auto m = fine.project([&](double xi) { return lo + (hi - lo) / (1.0 + std::exp(-xi)); });
        const DualState d = solve_dual(m, e, basis, {});
        const auto back = reconstruct_moments(d, e, basis);
        for (int i = 0; i <= n; ++i) CHECK(std::abs(back[i] - m[i]) < 1e-7);
    }
}

TEST_CASE("dual gradient matches finite differences and the Hessian is SPD") {
    const BoundedBarrierEntropy e(1.0, 12.0);
    const int n = 4;
    const GpcBasis basis = build_basis(n, 16, QuadratureFamily::GaussLobatto);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-0.8, 0.8);
    const std::vector<double> m{6.0, 1.0, -0.5, 0.2, 0.1};
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> lambda(n + 1);
        for (auto& v : lambda) v = dist(rng);
        std::vector<double> grad(n + 1), hess((n + 1) * (n + 1));
        dual_gradient(lambda, m, e, basis, grad);
        dual_hessian(lambda, e, basis, hess);
        const double h = 1e-6;
        for (int k = 0; k <= n; ++k) {
            auto lp = lambda, lm = lambda;
            lp[k] += h;
            lm[k] -= h;
            const double fd = (dual_objective(lp, m, e, basis) - dual_objective(lm, m, e, basis)) / (2 * h);
            CHECK(grad[k] == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
            for (int j = 0; j <= n; ++j) CHECK(hess[k * (n + 1) + j] == doctest::Approx(hess[j * (n + 1) + k]).epsilon(1e-14));
        }
        // positive diagonal and a positive quadratic form along random directions
        for (int k = 0; k <= n; ++k) CHECK(hess[k * (n + 1) + k] > 0.0);
        std::vector<double> dir(n + 1);
        for (auto& v : dir) v = dist(rng);
        double q = 0.0;
        for (int a = 0; a <= n; ++a) {
            for (int b = 0; b <= n; ++b) q += dir[a] * hess[a * (n + 1) + b] * dir[b];
        }
        CHECK(q > 0.0);
    }
}

TEST_CASE("dual solver errors") {
    const BoundedBarrierEntropy e(1.0, 12.0);
    const GpcBasis basis = build_basis(3, 12, QuadratureFamily::GaussLobatto);
    CHECK_THROWS_AS(solve_dual(std::vector<double>{13.0, 0, 0, 0}, e, basis, {}), NonRealizableError);
    CHECK_THROWS_AS(solve_dual(std::vector<double>{NAN, 0, 0, 0}, e, basis, {}), NonRealizableError);
    DualSolverSettings strict;
    strict.max_iterations = 1;
    try {
        solve_dual(std::vector<double>{6.0, 3.0, -1.0, 0.5}, e, basis, strict);
        FAIL("expected non-convergence");
    } catch (const NonConvergenceError& err) {
        CHECK(err.residual() > strict.tolerance);
        CHECK(err.iterations() == 1);
    }
}

TEST_CASE("warm start reuses the previous dual") {
    const BoundedBarrierEntropy e(1.0, 12.0);
    const GpcBasis basis = build_basis(6, 24, QuadratureFamily::GaussLobatto);
    const GpcBasis fine = build_basis(6, 80);
    const auto m = fine.project([](double xi) { return 6.0 + 4.0 * std::tanh(3.0 * xi); });
    const DualState cold = solve_dual(m, e, basis, {});
    const DualState warm = solve_dual(m, e, basis, {}, cold);
    CHECK(warm.iterations == 0);
    CHECK(warm.lambda == cold.lambda);
}

TEST_CASE("IPM flux") {
    const BoundedBarrierEntropy e(1.0, 12.0);
    const BurgersPhysics burgers;
    const GpcBasis basis = build_basis(3, 12, QuadratureFamily::GaussLobatto);
    const std::vector<double> c{5.0, 0, 0, 0};
    const DualState d = solve_dual(c, e, basis, {});
    const auto f = ipm_flux(d, d, burgers, e, basis, 0, 30.0);
    CHECK(f[0] == doctest::Approx(burgers_flux(5.0)).epsilon(1e-12));
    for (int i = 1; i <= 3; ++i) CHECK(std::abs(f[i]) < 1e-12);

    // N = 1 with two Gauss nodes against a hand-written quadrature sum
    const GpcBasis two(1, gauss_legendre(2));
    DualState l, r;
    l.lambda = {0.3, -0.4};
    r.lambda = {-0.2, 0.7};
    const double alpha = 25.0;
    const auto flux = ipm_flux(l, r, burgers, e, two, 0, alpha);
    const double nodes[2] = {-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
    double expected[2] = {0.0, 0.0};
    for (double xi : nodes) {
        const double phi1 = std::sqrt(3.0) * xi;
        const double ul = e.inverse(0.3 - 0.4 * phi1);
        const double ur = e.inverse(-0.2 + 0.7 * phi1);
        const double fs = 0.5 * (0.5 * ul * ul + 0.5 * ur * ur) - 0.5 * alpha * (ur - ul);
        expected[0] += 0.5 * fs;
        expected[1] += 0.5 * fs * phi1;
    }
    CHECK(flux[0] == doctest::Approx(expected[0]).epsilon(1e-14));
    CHECK(flux[1] == doctest::Approx(expected[1]).epsilon(1e-14));
}

TEST_CASE("Euler dual round trip") {
    const EulerEntropy e(1, 1.4);
    const GpcBasis basis = build_basis(3, 12, QuadratureFamily::GaussLobatto);
    const GpcBasis fine = build_basis(3, 60);
    std::vector<double> m(3 * 4);
    fine.project(
        [](double xi, std::span<double> out) {
            const double rho = 0.65 + 0.3 * std::tanh(2.0 * xi);
            const double vel[1] = {0.1 * xi};
            euler_conserved(rho, vel, rho, 1.4, out);
        },
        3, m);
    const DualState d = solve_dual(m, e, basis, {});
    const auto back = reconstruct_moments(d, e, basis);
    for (size_t k = 0; k < m.size(); ++k) CHECK(std::abs(back[k] - m[k]) < 1e-7);
}
