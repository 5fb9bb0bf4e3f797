#pragma once

#include <stdexcept>
#include <string>

namespace uqsg {

/// Invalid or inconsistent configuration (orders, quadrature sizes, meshes).
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a map (e.g. xi outside [-1,1]).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Scenario file could not be parsed. line() is 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Dual (IPM) Newton solve hit its iteration limit.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double residual, int iterations)
        : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

/// Moment vector lies outside the image of the entropy reconstruction map.
class NonRealizableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Negative density or pressure encountered. cell/step are -1 when unknown.
class HyperbolicityLossError : public std::runtime_error {
public:
    HyperbolicityLossError(const std::string& what, long cell = -1, long step = -1)
        : std::runtime_error(what), cell_(cell), step_(step) {}
    long cell() const noexcept { return cell_; }
    long step() const noexcept { return step_; }

private:
    long cell_;
    long step_;
};

/// NaN or Inf in the moment field after an update.
class NumericalBlowupError : public std::runtime_error {
public:
    NumericalBlowupError(const std::string& what, long cell, long step)
        : std::runtime_error(what), cell_(cell), step_(step) {}
    long cell() const noexcept { return cell_; }
    long step() const noexcept { return step_; }

private:
    long cell_;
    long step_;
};

}  // namespace uqsg
