#include "uqsg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uqsg/errors.hpp"

namespace uqsg {

std::string to_string(QuadratureFamily family) {
    return family == QuadratureFamily::GaussLegendre ? "legendre" : "lobatto";
}

QuadratureFamily quadrature_family_from_string(const std::string& name) {
    if (name == "legendre" || name == "gauss_legendre") return QuadratureFamily::GaussLegendre;
    if (name == "lobatto" || name == "gauss_lobatto") return QuadratureFamily::GaussLobatto;
    throw ConfigurationError("unknown quadrature family '" + name + "'");
}

int QuadratureRule::exactness() const {
    const int n = size();
    return family == QuadratureFamily::GaussLegendre ? 2 * n - 1 : 2 * n - 3;
}

LegendreValue legendre(int n, double x) {
    if (n == 0) return {1.0, 0.0};
    double p_prev = 1.0;
    double p = x;
    for (int k = 1; k < n; ++k) {
        const double p_next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
        p_prev = p;
        p = p_next;
    }
    double dp;
    if (std::abs(x) < 1.0) {
        dp = n * (x * p - p_prev) / (x * x - 1.0);
    } else {
        // P_n'(+-1) = (+-1)^{n+1} n(n+1)/2
        dp = 0.5 * n * (n + 1.0) * ((x > 0.0 || n % 2 == 1) ? 1.0 : -1.0);
    }
    return {p, dp};
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw ConfigurationError("Gauss-Legendre rule needs at least one node");
    QuadratureRule rule;
    rule.family = QuadratureFamily::GaussLegendre;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = legendre(n, x).dp;
        // weights w.r.t. density 1/2
        const double w = 1.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

QuadratureRule gauss_lobatto(int n) {
    if (n < 2) throw ConfigurationError("Gauss-Lobatto rule needs at least two nodes");
    QuadratureRule rule;
    rule.family = QuadratureFamily::GaussLobatto;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = n - 1;  // interior nodes are roots of P_m'
    const double end_weight = 1.0 / (n * (n - 1.0));
    rule.nodes.front() = -1.0;
    rule.nodes.back() = 1.0;
    rule.weights.front() = end_weight;
    rule.weights.back() = end_weight;
    for (int i = 1; i <= (n - 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * i / m);
        for (int it = 0; it < 100; ++it) {
            // Newton on q = P_m', using (1-x^2) P_m'' = 2x P_m' - m(m+1) P_m
            const auto [p, dp] = legendre(m, x);
            const double ddp = (2.0 * x * dp - m * (m + 1.0) * p) / (1.0 - x * x);
            const double dx = dp / ddp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double p = legendre(m, x).p;
        const double w = 1.0 / (n * (n - 1.0) * p * p);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        const double p = legendre(m, 0.0).p;
        rule.nodes[n / 2] = 0.0;
        rule.weights[n / 2] = 1.0 / (n * (n - 1.0) * p * p);
    }
    return rule;
}

QuadratureRule make_rule(QuadratureFamily family, int n) {
    return family == QuadratureFamily::GaussLegendre ? gauss_legendre(n) : gauss_lobatto(n);
}

}  // namespace uqsg
