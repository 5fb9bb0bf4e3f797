#pragma once

// Exact Riemann solver for the 1D Euler equations (ideal gas), used as an
// independent oracle for the HLL flux and shock positions.

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracle {

struct Primitive {
    double rho;
    double u;
    double p;
};

class ExactRiemann {
public:
    ExactRiemann(Primitive left, Primitive right, double gamma)
        : l_(left), r_(right), g_(gamma) {
        cl_ = std::sqrt(g_ * l_.p / l_.rho);
        cr_ = std::sqrt(g_ * r_.p / r_.rho);
        if (2.0 / (g_ - 1.0) * (cl_ + cr_) <= r_.u - l_.u) {
            throw std::runtime_error("vacuum generated");
        }
        solve_star();
    }

    double p_star() const { return p_star_; }
    double u_star() const { return u_star_; }

    /// Speed of the right-moving shock (valid when p_star > p_right).
    double right_shock_speed() const {
        return r_.u + cr_ * std::sqrt((g_ + 1.0) / (2.0 * g_) * p_star_ / r_.p + (g_ - 1.0) / (2.0 * g_));
    }

    /// Solution sampled at similarity coordinate s = x / t.
    Primitive sample(double s) const {
        if (s <= u_star_) return sample_side(s, l_, cl_, -1.0);
        return sample_side(s, r_, cr_, 1.0);
    }

private:
    // f_K(p) and its derivative (Toro, ch. 4).
    void f_side(double p, const Primitive& k, double c, double& f, double& df) const {
        if (p > k.p) {
            const double a = 2.0 / ((g_ + 1.0) * k.rho);
            const double b = (g_ - 1.0) / (g_ + 1.0) * k.p;
            const double q = std::sqrt(a / (p + b));
            f = (p - k.p) * q;
            df = q * (1.0 - 0.5 * (p - k.p) / (b + p));
        } else {
            const double ratio = p / k.p;
            f = 2.0 * c / (g_ - 1.0) * (std::pow(ratio, (g_ - 1.0) / (2.0 * g_)) - 1.0);
            df = 1.0 / (k.rho * c) * std::pow(ratio, -(g_ + 1.0) / (2.0 * g_));
        }
    }

    void solve_star() {
        double p = std::max(1e-12, 0.5 * (l_.p + r_.p));
        for (int it = 0; it < 100; ++it) {
            double fl, dfl, fr, dfr;
            f_side(p, l_, cl_, fl, dfl);
            f_side(p, r_, cr_, fr, dfr);
            const double next = std::max(1e-14, p - (fl + fr + r_.u - l_.u) / (dfl + dfr));
            if (std::abs(next - p) < 1e-15 * (next + p)) {
                p = next;
                break;
            }
            p = next;
        }
        double fl, dfl, fr, dfr;
        f_side(p, l_, cl_, fl, dfl);
        f_side(p, r_, cr_, fr, dfr);
        p_star_ = p;
        u_star_ = 0.5 * (l_.u + r_.u) + 0.5 * (fr - fl);
    }

    // sign = -1 for the left family, +1 for the right family.
    Primitive sample_side(double s, const Primitive& k, double c, double sign) const {
        const double gm = (g_ - 1.0) / (g_ + 1.0);
        if (p_star_ > k.p) {
            const double shock =
                k.u + sign * c * std::sqrt((g_ + 1.0) / (2.0 * g_) * p_star_ / k.p + (g_ - 1.0) / (2.0 * g_));
            if (sign * (s - shock) >= 0.0) return k;
            const double ratio = p_star_ / k.p;
            return {k.rho * (ratio + gm) / (gm * ratio + 1.0), u_star_, p_star_};
        }
        const double head = k.u + sign * c;
        const double c_star = c * std::pow(p_star_ / k.p, (g_ - 1.0) / (2.0 * g_));
        const double tail = u_star_ + sign * c_star;
        if (sign * (s - head) >= 0.0) return k;
        if (sign * (s - tail) <= 0.0) {
            return {k.rho * std::pow(p_star_ / k.p, 1.0 / g_), u_star_, p_star_};
        }
        const double u = 2.0 / (g_ + 1.0) * (-sign * c + (g_ - 1.0) / 2.0 * k.u + s);
        const double cf = 2.0 / (g_ + 1.0) * (c - sign * (g_ - 1.0) / 2.0 * (k.u - s));
        const double rho = k.rho * std::pow(cf / c, 2.0 / (g_ - 1.0));
        return {rho, u, k.p * std::pow(cf / c, 2.0 * g_ / (g_ - 1.0))};
    }

    Primitive l_, r_;
    double g_;
    double cl_ = 0.0, cr_ = 0.0;
    double p_star_ = 0.0, u_star_ = 0.0;
};

}  // namespace oracle
