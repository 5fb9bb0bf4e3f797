#pragma once

#include <memory>
#include <span>
#include <string>

namespace uqsg {

enum class PhysicsKind { Burgers, Euler1D, Euler2D };

std::string to_string(PhysicsKind kind);
PhysicsKind physics_kind_from_string(const std::string& name);

// Pointwise deterministic physics -------------------------------------------

double burgers_flux(double u);

/// Euler pressure (gamma-1)(rho e - |m|^2 / (2 rho)) for a conserved state
/// (rho, m_1[, m_2], rho e). Throws HyperbolicityLossError for rho <= 0.
double pressure(std::span<const double> state, double gamma);

/// Conserved Euler state from primitive values; velocity has 1 or 2 entries.
void euler_conserved(double rho, std::span<const double> velocity, double p, double gamma,
                     std::span<double> out);

/// Physical Euler flux in direction `dir` (0 = x, 1 = y).
void euler_flux(std::span<const double> state, int dir, double gamma, std::span<double> out);

/// 1/2 (f(u_l) + f(u_r)) - alpha/2 (u_r - u_l) for the scalar Burgers flux.
double lax_friedrichs(double u_l, double u_r, double alpha);

/// HLL flux with Davis wave-speed estimates in direction `dir`.
/// Throws HyperbolicityLossError if either state has rho <= 0 or p <= 0.
void hll(std::span<const double> u_l, std::span<const double> u_r, int dir, double gamma,
         std::span<double> out);

/// Davis estimates S_L = min(u_l - c_l, u_r - c_r), S_R = max(u_l + c_l, u_r + c_r).
struct WaveSpeeds {
    double left;
    double right;
};
WaveSpeeds davis_wave_speeds(std::span<const double> u_l, std::span<const double> u_r, int dir,
                             double gamma);

// Physics interface used by the moment solver --------------------------------

/// Deterministic conservation law: state layout, fluxes and wave speeds.
class Physics {
public:
    virtual ~Physics() = default;

    virtual PhysicsKind kind() const = 0;
    virtual int states() const = 0;
    virtual int dimension() const = 0;

    /// Numerical flux f*(u_l, u_r) across a face with normal `dir`.
    /// `alpha` is the Lax-Friedrichs dissipation h / dt (unused by HLL).
    virtual void numerical_flux(std::span<const double> u_l, std::span<const double> u_r, int dir,
                                double alpha, std::span<double> out) const = 0;

    virtual void flux(std::span<const double> u, int dir, std::span<double> out) const = 0;

    /// Largest characteristic speed |u_n| (+ c) of one state in direction dir.
    virtual double max_speed(std::span<const double> u, int dir) const = 0;

    /// False when the state leaves the hyperbolic region (rho <= 0 or p <= 0).
    virtual bool admissible(std::span<const double> u) const = 0;

    /// Mirror across a wall with normal `dir` (negates normal momentum).
    virtual void reflect(std::span<double> u, int dir) const = 0;

    /// Index of the momentum component normal to `dir`, or -1 for scalar laws.
    virtual int normal_momentum(int dir) const = 0;
};

class BurgersPhysics final : public Physics {
public:
    PhysicsKind kind() const override { return PhysicsKind::Burgers; }
    int states() const override { return 1; }
    int dimension() const override { return 1; }
    void numerical_flux(std::span<const double> u_l, std::span<const double> u_r, int dir,
                        double alpha, std::span<double> out) const override;
    void flux(std::span<const double> u, int dir, std::span<double> out) const override;
    double max_speed(std::span<const double> u, int dir) const override;
    bool admissible(std::span<const double>) const override { return true; }
    void reflect(std::span<double> u, int dir) const override;
    int normal_momentum(int) const override { return -1; }
};

class EulerPhysics final : public Physics {
public:
    EulerPhysics(int dimension, double gamma);

    PhysicsKind kind() const override {
        return dim_ == 1 ? PhysicsKind::Euler1D : PhysicsKind::Euler2D;
    }
    int states() const override { return dim_ + 2; }
    int dimension() const override { return dim_; }
    double gamma() const { return gamma_; }
    void numerical_flux(std::span<const double> u_l, std::span<const double> u_r, int dir,
                        double alpha, std::span<double> out) const override;
    void flux(std::span<const double> u, int dir, std::span<double> out) const override;
    double max_speed(std::span<const double> u, int dir) const override;
    bool admissible(std::span<const double> u) const override;
    void reflect(std::span<double> u, int dir) const override;
    int normal_momentum(int dir) const override { return 1 + dir; }

private:
    int dim_;
    double gamma_;
};

std::unique_ptr<Physics> make_physics(PhysicsKind kind, double gamma);

/// Maximum of max_speed over a batch of states stored contiguously.
double max_wave_speed(const Physics& physics, std::span<const double> states, int dir);

}  // namespace uqsg
