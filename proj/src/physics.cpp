#include "uqsg/physics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "uqsg/errors.hpp"

namespace uqsg {

std::string to_string(PhysicsKind kind) {
    switch (kind) {
        case PhysicsKind::Burgers: return "burgers";
        case PhysicsKind::Euler1D: return "euler1d";
        case PhysicsKind::Euler2D: return "euler2d";
    }
    return "burgers";
}

PhysicsKind physics_kind_from_string(const std::string& name) {
    if (name == "burgers") return PhysicsKind::Burgers;
    if (name == "euler1d") return PhysicsKind::Euler1D;
    if (name == "euler2d") return PhysicsKind::Euler2D;
    throw ConfigurationError("unknown physics model '" + name + "'");
}

double burgers_flux(double u) { return 0.5 * u * u; }

double lax_friedrichs(double u_l, double u_r, double alpha) {
    return 0.5 * (burgers_flux(u_l) + burgers_flux(u_r)) - 0.5 * alpha * (u_r - u_l);
}

namespace {

int euler_dim(std::span<const double> state) { return static_cast<int>(state.size()) - 2; }

double kinetic(std::span<const double> state) {
    const int d = euler_dim(state);
    double m2 = 0.0;
    for (int k = 0; k < d; ++k) m2 += state[1 + k] * state[1 + k];
    return 0.5 * m2 / state[0];
}

double unchecked_pressure(std::span<const double> state, double gamma) {
    return (gamma - 1.0) * (state.back() - kinetic(state));
}

void require_admissible(std::span<const double> state, double gamma) {
    if (!(state[0] > 0.0)) {
        throw HyperbolicityLossError("non-positive density " + std::to_string(state[0]));
    }
    const double p = unchecked_pressure(state, gamma);
    if (!(p > 0.0)) throw HyperbolicityLossError("non-positive pressure " + std::to_string(p));
}

}  // namespace

double pressure(std::span<const double> state, double gamma) {
    if (!(state[0] > 0.0)) {
        throw HyperbolicityLossError("non-positive density " + std::to_string(state[0]));
    }
    return unchecked_pressure(state, gamma);
}

void euler_conserved(double rho, std::span<const double> velocity, double p, double gamma,
                     std::span<double> out) {
    const int d = static_cast<int>(velocity.size());
    double v2 = 0.0;
    out[0] = rho;
    for (int k = 0; k < d; ++k) {
        out[1 + k] = rho * velocity[k];
        v2 += velocity[k] * velocity[k];
    }
    out[1 + d] = p / (gamma - 1.0) + 0.5 * rho * v2;
}

void euler_flux(std::span<const double> state, int dir, double gamma, std::span<double> out) {
    const int d = euler_dim(state);
    const double rho = state[0];
    const double un = state[1 + dir] / rho;
    const double p = unchecked_pressure(state, gamma);
    out[0] = state[1 + dir];
    for (int k = 0; k < d; ++k) out[1 + k] = state[1 + k] * un;
    out[1 + dir] += p;
    out[1 + d] = (state[1 + d] + p) * un;
}

WaveSpeeds davis_wave_speeds(std::span<const double> u_l, std::span<const double> u_r, int dir,
                             double gamma) {
    const double vl = u_l[1 + dir] / u_l[0];
    const double vr = u_r[1 + dir] / u_r[0];
    const double cl = std::sqrt(gamma * unchecked_pressure(u_l, gamma) / u_l[0]);
    const double cr = std::sqrt(gamma * unchecked_pressure(u_r, gamma) / u_r[0]);
    return {std::min(vl - cl, vr - cr), std::max(vl + cl, vr + cr)};
}

void hll(std::span<const double> u_l, std::span<const double> u_r, int dir, double gamma,
         std::span<double> out) {
    require_admissible(u_l, gamma);
    require_admissible(u_r, gamma);
    const int p = static_cast<int>(u_l.size());
    const auto [sl, sr] = davis_wave_speeds(u_l, u_r, dir, gamma);
    if (sl >= 0.0) {
        euler_flux(u_l, dir, gamma, out);
        return;
    }
    std::array<double, 4> fl{};
    std::array<double, 4> fr{};
    if (sr <= 0.0) {
        euler_flux(u_r, dir, gamma, out);
        return;
    }
    euler_flux(u_l, dir, gamma, std::span<double>(fl.data(), p));
    euler_flux(u_r, dir, gamma, std::span<double>(fr.data(), p));
    const double inv = 1.0 / (sr - sl);
    for (int k = 0; k < p; ++k) {
        out[k] = (sr * fl[k] - sl * fr[k] + sl * sr * (u_r[k] - u_l[k])) * inv;
    }
}

void BurgersPhysics::numerical_flux(std::span<const double> u_l, std::span<const double> u_r, int,
                                    double alpha, std::span<double> out) const {
    out[0] = lax_friedrichs(u_l[0], u_r[0], alpha);
}

void BurgersPhysics::flux(std::span<const double> u, int, std::span<double> out) const {
    out[0] = burgers_flux(u[0]);
}

double BurgersPhysics::max_speed(std::span<const double> u, int) const { return std::abs(u[0]); }

void BurgersPhysics::reflect(std::span<double> u, int) const { u[0] = -u[0]; }

EulerPhysics::EulerPhysics(int dimension, double gamma) : dim_(dimension), gamma_(gamma) {
    if (dimension != 1 && dimension != 2) {
        throw ConfigurationError("Euler physics supports 1 or 2 space dimensions");
    }
    if (!(gamma > 1.0)) throw ConfigurationError("heat capacity ratio must exceed 1");
}

void EulerPhysics::numerical_flux(std::span<const double> u_l, std::span<const double> u_r,
                                  int dir, double, std::span<double> out) const {
    hll(u_l, u_r, dir, gamma_, out);
}

void EulerPhysics::flux(std::span<const double> u, int dir, std::span<double> out) const {
    euler_flux(u, dir, gamma_, out);
}

double EulerPhysics::max_speed(std::span<const double> u, int dir) const {
    const double c = std::sqrt(gamma_ * unchecked_pressure(u, gamma_) / u[0]);
    return std::abs(u[1 + dir] / u[0]) + c;
}

bool EulerPhysics::admissible(std::span<const double> u) const {
    return u[0] > 0.0 && unchecked_pressure(u, gamma_) > 0.0;
}

void EulerPhysics::reflect(std::span<double> u, int dir) const { u[1 + dir] = -u[1 + dir]; }

std::unique_ptr<Physics> make_physics(PhysicsKind kind, double gamma) {
    switch (kind) {
        case PhysicsKind::Burgers: return std::make_unique<BurgersPhysics>();
        case PhysicsKind::Euler1D: return std::make_unique<EulerPhysics>(1, gamma);
        case PhysicsKind::Euler2D: return std::make_unique<EulerPhysics>(2, gamma);
    }
    throw ConfigurationError("unknown physics");
}

double max_wave_speed(const Physics& physics, std::span<const double> states, int dir) {
    const size_t p = physics.states();
    double speed = 0.0;
    for (size_t k = 0; k + p <= states.size(); k += p) {
        speed = std::max(speed, physics.max_speed(states.subspan(k, p), dir));
    }
    return speed;
}

}  // namespace uqsg
