#pragma once
// Test-only oracles, kept independent of the library's evaluation path:
// Gauss-Legendre quadrature plus central finite differences for the mixed
// partials. Nothing here touches Jet2 or integrate_exp_poly.

#include <cmath>
#include <functional>
#include <vector>

#include "moll/functional.hpp"

namespace oracle {

struct GaussLegendre {
    std::vector<double> x, w;  // nodes and weights on [0,1]
    explicit GaussLegendre(int n) {
        x.resize(n);
        w.resize(n);
        const double pi = std::acos(-1.0);
        for (int i = 0; i < n; ++i) {
            // Newton iteration from the Chebyshev initial guess
            double t = std::cos(pi * (i + 0.75) / (n + 0.5));
            double p0 = 1.0, p1 = 0.0, dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                p0 = 1.0;
                p1 = 0.0;
                for (int k = 0; k < n; ++k) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2 * k + 1) * t * p1 - k * p2) / (k + 1);
                }
                dp = n * (t * p0 - p1) / (t * t - 1.0);
                double dt = p0 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15) break;
            }
            x[i] = 0.5 * (1.0 - t);  // map [-1,1] -> [0,1], reversed order is fine
            w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
        }
    }
    double integrate(const std::function<double(double)>& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
        return s;
    }
    double integrate2(const std::function<double(double, double)>& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) row += w[j] * f(x[i], x[j]);
            s += w[i] * row;
        }
        return s;
    }
};

// c11 with the inner d/dx taken by central differences
inline double c11_quad(const moll::Polynomial& P1, const moll::Polynomial& Q, double R,
                       double th1, int n = 64, double h = 1e-4) {
    GaussLegendre gl(n);
    auto D = [&](double u, double v) {
        auto g = [&](double x) { return std::exp(R * th1 * x) * P1.eval(x + u) * Q.eval(v + th1 * x); };
        return (g(h) - g(-h)) / (2.0 * h);
    };
    double I = gl.integrate2([&](double u, double v) {
        double d = D(u, v);
        return std::exp(2.0 * R * v) * d * d;
    });
    return 1.0 + I / th1;
}

// mixed partial d2/dxdy|_0 of a scalar function by the 4-point stencil
inline double dxdy_fd(const std::function<double(double, double)>& f, double h = 1e-4) {
    return (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
}

inline double c12_quad(const moll::MollifierConfig& cfg, int n = 64, double h = 1e-4) {
    GaussLegendre gl(n);
    const double th1 = cfg.theta1, th2 = cfg.theta2, R = cfg.R;
    const double a = 1.0 - th2 / th1, b = th2 / th1;
    const moll::Polynomial P1p = cfg.P1.deriv();
    double total = 0.0;
    for (int l = 2; l <= cfg.K; ++l) {
        const moll::Polynomial& P = cfg.P(l);
        const double sgn = (l % 2 == 0) ? 1.0 : -1.0;
        double fct = 1.0;
        for (int i = 2; i <= l; ++i) fct *= i;
        const double t1 = gl.integrate([&](double u) {
            return std::pow(1.0 - u, l - 1) * cfg.P1.eval(u) * P.eval(u);
        }) * sgn / (fct / l);
        const int E = cfg.c12_variant == moll::C12Variant::ell_minus_1 ? l - 1 : l;
        const double t2 = gl.integrate([&](double u) {
            return std::pow(1.0 - u, E) * P1p.eval(a + b * u) * P.eval(u);
        }) * sgn / fct;
        auto f = [&](double x, double y) {
            return std::exp(R * (th1 * x + th2 * y)) * gl.integrate2([&](double u, double v) {
                return std::exp(2.0 * R * v) * std::pow(1.0 - u, l) *
                       cfg.P1.eval(x + a + b * u) * P.eval(y + u) * cfg.Q.eval(th2 * y + v) *
                       cfg.Q.eval(th1 * x + v);
            });
        };
        const double t3 = sgn / fct * dxdy_fd(f, h);
        total += t1 - (th1 - th2) / th1 * t2 + t3 / th1;
    }
    return total;
}

inline double c22_quad(const moll::MollifierConfig& cfg, int n = 64, double h = 1e-4) {
    GaussLegendre gl(n);
    const double th2 = cfg.theta2, R = cfg.R;
    double total = 0.0;
    for (int l1 = 2; l1 <= cfg.K; ++l1) {
        for (int l2 = 2; l2 <= cfg.K; ++l2) {
            const moll::Polynomial& Pa = cfg.P(l1);
            const moll::Polynomial& Pb = cfg.P(l2);
            double fct1 = 1.0, fct2 = 1.0;
            for (int i = 2; i <= l1 + l2 - 1; ++i) fct1 *= i;
            fct2 = fct1 * (l1 + l2);
            const double base1 = gl.integrate([&](double u) {
                return std::pow(1.0 - u, l1 + l2 - 1) * Pa.eval(u) * Pb.eval(u);
            }) / fct1;
            auto f = [&](double x, double y) {
                return std::exp(R * th2 * (x + y)) * gl.integrate2([&](double u, double v) {
                    return std::exp(2.0 * R * v) * std::pow(1.0 - u, l1 + l2) * Pa.eval(x + u) *
                           Pb.eval(y + u) * cfg.Q.eval(v + th2 * x) * cfg.Q.eval(v + th2 * y);
                });
            };
            const double base2 = dxdy_fd(f, h) / (th2 * fct2);
            for (int k = 0; k <= std::min(l1, l2); ++k) {
                double bin = 1.0, fall = 1.0;
                for (int i = 0; i < k; ++i) {
                    bin = bin * (l1 - i) / (i + 1);
                    fall *= (l2 - i);
                }
                const double sgn = ((l1 + l2) % 2 == 0) ? 1.0 : -1.0;
                total += sgn * bin * fall * std::pow(2.0, l1 + l2 - 2 * k) * (base1 + base2);
            }
        }
    }
    return total;
}

}  // namespace oracle
