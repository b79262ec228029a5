#pragma once
// Dense real polynomials, first-order bivariate jets and the closed-form
// integrals int_0^1 e^{lambda v} p(v) dv used by every c-formula.

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace moll {

struct Polynomial {
    std::vector<double> c;  // c[i] = coefficient of x^i

    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs) : c(std::move(coeffs)) { normalize(); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }

    double eval(double t) const {
        double r = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) r = r * t + c[i];
        return r;
    }

    void normalize() {
        while (!c.empty() && c.back() == 0.0) c.pop_back();
    }

    Polynomial deriv() const {
        if (c.size() <= 1) return Polynomial{};
        std::vector<double> d(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
        return Polynomial(std::move(d));
    }
};

Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial sub(const Polynomial& a, const Polynomial& b);
Polynomial mul(const Polynomial& a, const Polynomial& b);
Polynomial scale(const Polynomial& a, double s);
// p(a + b t) as a polynomial in t
Polynomial compose_affine(const Polynomial& p, double a, double b);
// (1 - t)^n
Polynomial one_minus_pow(int n);

// x + sum_i a_i x(1-x)^i  (the P1 parameter basis)
Polynomial p1_from_shifted_basis(const std::vector<double>& a);
// sum_j b_j x^j with b_0 = 0  (the P_l parameter basis); b[0] is the x^1 coefficient
Polynomial pl_from_linear_basis(const std::vector<double>& b);
// q0 + sum_i q_i (1-2x)^{2i-1}  (the Q parameter basis)
Polynomial q_from_odd_basis(double q0, const std::vector<double>& q);

double integrate_poly01(const Polynomial& p);
// int_0^1 e^{lambda v} p(v) dv, exact moment recurrence with a series branch
// below |lambda| = 1e-8 so the two branches agree at the crossover.
double integrate_exp_poly(const Polynomial& p, double lambda);

// First-order jet in two variables: value and d/dx, d/dy, d2/dxdy at x=y=0.
struct Jet2 {
    double v = 0.0, dx = 0.0, dy = 0.0, dxdy = 0.0;

    Jet2() = default;
    Jet2(double v_, double dx_, double dy_, double dxdy_) : v(v_), dx(dx_), dy(dy_), dxdy(dxdy_) {}
    static Jet2 constant(double v_) { return {v_, 0.0, 0.0, 0.0}; }

    Jet2 operator+(const Jet2& o) const { return {v + o.v, dx + o.dx, dy + o.dy, dxdy + o.dxdy}; }
    Jet2 operator*(const Jet2& o) const {
        return {v * o.v,
                v * o.dx + dx * o.v,
                v * o.dy + dy * o.v,
                v * o.dxdy + dx * o.dy + dy * o.dx + dxdy * o.v};
    }
    Jet2 operator*(double s) const { return {v * s, dx * s, dy * s, dxdy * s}; }
    Jet2& operator+=(const Jet2& o) { v += o.v; dx += o.dx; dy += o.dy; dxdy += o.dxdy; return *this; }
};

// e^{cx x + cy y} truncated to first order per variable
inline Jet2 exp_jet(double cx, double cy) { return {1.0, cx, cy, cx * cy}; }

// Polynomial in one integration variable with Jet2 coefficients.
using JetPoly = std::vector<Jet2>;

enum class JetVar { x, y, none };

// p(jet_scale*X + a + b t) where X is the chosen jet variable; exact binomial
// expansion (X^2 = 0 in the jet ring). jet_scale covers arguments like
// Q(theta2 y + v). Degrees above 64 are rejected.
JetPoly poly_shift_jet(const Polynomial& p, JetVar var, double jet_scale, double a, double b);
inline JetPoly poly_shift_jet(const Polynomial& p, JetVar var, double a, double b) {
    return poly_shift_jet(p, var, 1.0, a, b);
}

JetPoly jp_mul(const JetPoly& a, const JetPoly& b);
JetPoly jp_scale(const JetPoly& a, const Jet2& s);
JetPoly jp_from_poly(const Polynomial& p);
Jet2 jp_integrate01(const JetPoly& a);                      // int_0^1
Jet2 jp_integrate_exp(const JetPoly& a, double lambda);     // int_0^1 e^{lambda t} *

// int_0^1 int_0^1 e^{rate v} fu(u) fv(v) du dv as a Jet2; u integrates against
// unit moments, v against integrate_exp_poly moments. The tensor split is exact
// because every integrand here is a finite sum of (jet) x u^a x v^b terms.
Jet2 integrate_unit_square_jet(const JetPoly& fu, const JetPoly& fv, double rate);

}  // namespace moll
