#pragma once

#include <memory>
#include <span>

namespace uqsg {

/// Strictly convex entropy U with entropy variables v = U'(u).
///
/// The dual (IPM) problem only needs the Legendre transform U_*(v), its
/// gradient u(v) = (U')^{-1}(v) and the Hessian du/dv.
class Entropy {
public:
    virtual ~Entropy() = default;

    virtual int states() const = 0;

    /// U(u); throws DomainError outside the admissible set.
    virtual double value(std::span<const double> u) const = 0;

    /// v = U'(u); throws DomainError outside the admissible set.
    virtual void entropy_variable(std::span<const double> u, std::span<double> v) const = 0;

    /// u(v) = (U')^{-1}(v).
    virtual void conserved(std::span<const double> v, std::span<double> u) const = 0;

    /// du/dv as a row-major states x states matrix (symmetric positive definite).
    virtual void jacobian(std::span<const double> v, std::span<double> jac) const = 0;

    /// Legendre transform U_*(v) = v.u(v) - U(u(v)).
    virtual double potential(std::span<const double> v) const = 0;

    /// Whether v lies in the domain of U_*.
    virtual bool in_domain(std::span<const double> v) const = 0;

    /// Whether a deterministic state u is admissible (interior of the domain of U').
    virtual bool admissible(std::span<const double> u) const = 0;
};

/// Scalar bounded-barrier entropy
/// U(u) = (u - u_-) ln(u - u_-) + (u_+ - u) ln(u_+ - u),
/// whose reconstruction u(v) = (u_- + u_+ e^v) / (1 + e^v) stays in (u_-, u_+).
class BoundedBarrierEntropy final : public Entropy {
public:
    BoundedBarrierEntropy(double u_minus, double u_plus);

    double lower() const { return lower_; }
    double upper() const { return upper_; }

    int states() const override { return 1; }
    double value(std::span<const double> u) const override;
    void entropy_variable(std::span<const double> u, std::span<double> v) const override;
    void conserved(std::span<const double> v, std::span<double> u) const override;
    void jacobian(std::span<const double> v, std::span<double> jac) const override;
    double potential(std::span<const double> v) const override;
    bool in_domain(std::span<const double>) const override { return true; }
    bool admissible(std::span<const double> u) const override;

    // scalar conveniences
    double derivative(double u) const;        // U'(u)
    double inverse(double v) const;           // u(v)
    double inverse_derivative(double v) const;  // u'(v)

private:
    double lower_;
    double upper_;
};

BoundedBarrierEntropy bounded_barrier_maps(double u_minus, double u_plus);

/// Physical Euler entropy U = -rho S / (gamma - 1), S = ln(p rho^-gamma).
/// Experimental: used for Euler IPM runs only.
class EulerEntropy final : public Entropy {
public:
    EulerEntropy(int dimension, double gamma);

    int states() const override { return dim_ + 2; }
    double value(std::span<const double> u) const override;
    void entropy_variable(std::span<const double> u, std::span<double> v) const override;
    void conserved(std::span<const double> v, std::span<double> u) const override;
    void jacobian(std::span<const double> v, std::span<double> jac) const override;
    double potential(std::span<const double> v) const override;
    bool in_domain(std::span<const double> v) const override;
    bool admissible(std::span<const double> u) const override;

private:
    int dim_;
    double gamma_;
};

}  // namespace uqsg
