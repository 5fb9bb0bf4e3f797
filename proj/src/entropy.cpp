#include "uqsg/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uqsg/errors.hpp"

namespace uqsg {

namespace {

double sigmoid(double v) {
    if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
    const double e = std::exp(v);
    return e / (1.0 + e);
}

double softplus(double v) { return std::max(v, 0.0) + std::log1p(std::exp(-std::abs(v))); }

}  // namespace

BoundedBarrierEntropy::BoundedBarrierEntropy(double u_minus, double u_plus)
    : lower_(u_minus), upper_(u_plus) {
    if (!(u_minus < u_plus)) {
        throw ConfigurationError("bounded-barrier entropy needs u_- < u_+");
    }
}

BoundedBarrierEntropy bounded_barrier_maps(double u_minus, double u_plus) {
    return BoundedBarrierEntropy(u_minus, u_plus);
}

bool BoundedBarrierEntropy::admissible(std::span<const double> u) const {
    return u[0] > lower_ && u[0] < upper_;
}

double BoundedBarrierEntropy::derivative(double u) const {
    if (!(u > lower_ && u < upper_)) {
        throw DomainError("u = " + std::to_string(u) + " outside (" + std::to_string(lower_) +
                          ", " + std::to_string(upper_) + ")");
    }
    return std::log((u - lower_) / (upper_ - u));
}

double BoundedBarrierEntropy::inverse(double v) const {
    return lower_ + (upper_ - lower_) * sigmoid(v);
}

double BoundedBarrierEntropy::inverse_derivative(double v) const {
    const double s = sigmoid(v);
    return (upper_ - lower_) * s * (1.0 - s);
}

double BoundedBarrierEntropy::value(std::span<const double> u) const {
    const double x = u[0];
    if (!(x >= lower_ && x <= upper_)) {
        throw DomainError("u = " + std::to_string(x) + " outside the entropy bounds");
    }
    auto xlogx = [](double t) { return t > 0.0 ? t * std::log(t) : 0.0; };
    return xlogx(x - lower_) + xlogx(upper_ - x);
}

void BoundedBarrierEntropy::entropy_variable(std::span<const double> u, std::span<double> v) const {
    v[0] = derivative(u[0]);
}

void BoundedBarrierEntropy::conserved(std::span<const double> v, std::span<double> u) const {
    u[0] = inverse(v[0]);
}

void BoundedBarrierEntropy::jacobian(std::span<const double> v, std::span<double> jac) const {
    jac[0] = inverse_derivative(v[0]);
}

double BoundedBarrierEntropy::potential(std::span<const double> v) const {
    const double width = upper_ - lower_;
    return lower_ * v[0] + width * softplus(v[0]) - width * std::log(width);
}

EulerEntropy::EulerEntropy(int dimension, double gamma) : dim_(dimension), gamma_(gamma) {
    if (dimension != 1 && dimension != 2) throw ConfigurationError("Euler entropy: dim 1 or 2");
    if (!(gamma > 1.0)) throw ConfigurationError("heat capacity ratio must exceed 1");
}

bool EulerEntropy::admissible(std::span<const double> u) const {
    if (!(u[0] > 0.0)) return false;
    double m2 = 0.0;
    for (int k = 0; k < dim_; ++k) m2 += u[1 + k] * u[1 + k];
    return (gamma_ - 1.0) * (u[1 + dim_] - 0.5 * m2 / u[0]) > 0.0;
}

double EulerEntropy::value(std::span<const double> u) const {
    if (!admissible(u)) throw DomainError("inadmissible Euler state");
    double m2 = 0.0;
    for (int k = 0; k < dim_; ++k) m2 += u[1 + k] * u[1 + k];
    const double rho = u[0];
    const double p = (gamma_ - 1.0) * (u[1 + dim_] - 0.5 * m2 / rho);
    const double s = std::log(p) - gamma_ * std::log(rho);
    return -rho * s / (gamma_ - 1.0);
}

void EulerEntropy::entropy_variable(std::span<const double> u, std::span<double> v) const {
    if (!admissible(u)) throw DomainError("inadmissible Euler state");
    const double rho = u[0];
    double vel2 = 0.0;
    for (int k = 0; k < dim_; ++k) vel2 += (u[1 + k] / rho) * (u[1 + k] / rho);
    const double p = (gamma_ - 1.0) * (u[1 + dim_] - 0.5 * rho * vel2);
    const double s = std::log(p) - gamma_ * std::log(rho);
    const double beta = rho / p;
    v[0] = (gamma_ - s) / (gamma_ - 1.0) - 0.5 * beta * vel2;
    for (int k = 0; k < dim_; ++k) v[1 + k] = beta * u[1 + k] / rho;
    v[1 + dim_] = -beta;
}

bool EulerEntropy::in_domain(std::span<const double> v) const { return v[1 + dim_] < 0.0; }

void EulerEntropy::conserved(std::span<const double> v, std::span<double> u) const {
    const double beta = -v[1 + dim_];
    double vel2 = 0.0;
    for (int k = 0; k < dim_; ++k) vel2 += (v[1 + k] / beta) * (v[1 + k] / beta);
    const double s = gamma_ - (gamma_ - 1.0) * (v[0] + 0.5 * beta * vel2);
    // rho^(1-gamma) = beta e^S
    const double rho = std::exp((std::log(beta) + s) / (1.0 - gamma_));
    const double p = rho / beta;
    u[0] = rho;
    for (int k = 0; k < dim_; ++k) u[1 + k] = rho * v[1 + k] / beta;
    u[1 + dim_] = p / (gamma_ - 1.0) + 0.5 * rho * vel2;
}

double EulerEntropy::potential(std::span<const double> v) const {
    // v.u - U = rho
    double u[4];
    conserved(v, std::span<double>(u, states()));
    return u[0];
}

void EulerEntropy::jacobian(std::span<const double> v, std::span<double> jac) const {
    double u[4];
    const int n = states();
    conserved(v, std::span<double>(u, n));
    const double rho = u[0];
    const double energy = u[n - 1];
    double m2 = 0.0;
    for (int k = 0; k < dim_; ++k) m2 += u[1 + k] * u[1 + k];
    const double p = (gamma_ - 1.0) * (energy - 0.5 * m2 / rho);
    const double enthalpy = (energy + p) / rho;
    const double c2 = gamma_ * p / rho;
    auto at = [&](int r, int c) -> double& { return jac[static_cast<size_t>(r) * n + c]; };
    at(0, 0) = rho;
    at(0, n - 1) = energy;
    at(n - 1, 0) = energy;
    for (int k = 0; k < dim_; ++k) {
        at(0, 1 + k) = u[1 + k];
        at(1 + k, 0) = u[1 + k];
        for (int l = 0; l < dim_; ++l) {
            at(1 + k, 1 + l) = u[1 + k] * u[1 + l] / rho + (k == l ? p : 0.0);
        }
        at(1 + k, n - 1) = enthalpy * u[1 + k];
        at(n - 1, 1 + k) = enthalpy * u[1 + k];
    }
    at(n - 1, n - 1) = rho * enthalpy * enthalpy - c2 * p / (gamma_ - 1.0);
}

}  // namespace uqsg
