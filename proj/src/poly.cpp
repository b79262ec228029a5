#include "moll/poly.hpp"

#include <cmath>
#include <cstdlib>

namespace moll {

Polynomial add(const Polynomial& a, const Polynomial& b) {
    std::vector<double> r(std::max(a.c.size(), b.c.size()), 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return Polynomial(std::move(r));
}

Polynomial sub(const Polynomial& a, const Polynomial& b) {
    std::vector<double> r(std::max(a.c.size(), b.c.size()), 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
    return Polynomial(std::move(r));
}

Polynomial mul(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial{};
    std::vector<double> r(a.c.size() + b.c.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return Polynomial(std::move(r));
}

Polynomial scale(const Polynomial& a, double s) {
    std::vector<double> r = a.c;
    for (double& x : r) x *= s;
    return Polynomial(std::move(r));
}

Polynomial compose_affine(const Polynomial& p, double a, double b) {
    // Horner in the affine argument
    Polynomial r;
    for (std::size_t i = p.c.size(); i-- > 0;) {
        // r = r*(a + b t) + p.c[i]
        std::vector<double> nr(r.c.size() + 1, 0.0);
        for (std::size_t k = 0; k < r.c.size(); ++k) {
            nr[k] += a * r.c[k];
            nr[k + 1] += b * r.c[k];
        }
        nr[0] += p.c[i];
        r = Polynomial(std::move(nr));
    }
    return r;
}

Polynomial one_minus_pow(int n) {
    Polynomial r(std::vector<double>{1.0});
    Polynomial base(std::vector<double>{1.0, -1.0});
    for (int i = 0; i < n; ++i) r = mul(r, base);
    return r;
}

Polynomial p1_from_shifted_basis(const std::vector<double>& a) {
    Polynomial r(std::vector<double>{0.0, 1.0});
    Polynomial x(std::vector<double>{0.0, 1.0});
    for (std::size_t i = 0; i < a.size(); ++i)
        r = add(r, scale(mul(x, one_minus_pow(static_cast<int>(i) + 1)), a[i]));
    return r;
}

Polynomial pl_from_linear_basis(const std::vector<double>& b) {
    std::vector<double> r(b.size() + 1, 0.0);
    for (std::size_t j = 0; j < b.size(); ++j) r[j + 1] = b[j];
    return Polynomial(std::move(r));
}

Polynomial q_from_odd_basis(double q0, const std::vector<double>& q) {
    Polynomial r(std::vector<double>{q0});
    Polynomial base(std::vector<double>{1.0, -2.0});
    for (std::size_t i = 0; i < q.size(); ++i) {
        Polynomial pw(std::vector<double>{1.0});
        int e = 2 * static_cast<int>(i) + 1;
        for (int k = 0; k < e; ++k) pw = mul(pw, base);
        r = add(r, scale(pw, q[i]));
    }
    return r;
}

double integrate_poly01(const Polynomial& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.c.size(); ++i) s += p.c[i] / static_cast<double>(i + 1);
    return s;
}

// moments I_m = int_0^1 t^m e^{lambda t} dt for m = 0..n.
// The forward recurrence I_m = (e^l - m I_{m-1})/l amplifies roundoff like
// m!/l^m, so it is only used when |lambda| is large; the series
// I_m = sum_j lambda^j / (j! (m+j+1)) is uniformly stable for lambda >= -8
// (all terms positive for lambda >= 0, mild cancellation below).
static std::vector<double> exp_moments(int n, double lambda) {
    std::vector<double> I(n + 1);
    if (lambda >= -8.0 && lambda <= 32.0) {
        for (int m = 0; m <= n; ++m) {
            double s = 0.0, term = 1.0;
            for (int j = 0;; ++j) {
                double addend = term / static_cast<double>(m + j + 1);
                s += addend;
                if (std::abs(addend) < 1e-22 || j > 400) break;
                term *= lambda / static_cast<double>(j + 1);
            }
            I[m] = s;
        }
        return I;
    }
    const double el = std::exp(lambda);
    I[0] = (el - 1.0) / lambda;
    for (int m = 1; m <= n; ++m) I[m] = (el - static_cast<double>(m) * I[m - 1]) / lambda;
    return I;
}

double integrate_exp_poly(const Polynomial& p, double lambda) {
    if (p.is_zero()) return 0.0;
    const std::vector<double> I = exp_moments(p.degree(), lambda);
    double total = 0.0;
    for (std::size_t m = 0; m < p.c.size(); ++m) total += p.c[m] * I[m];
    return total;
}

JetPoly poly_shift_jet(const Polynomial& p, JetVar var, double jet_scale, double a, double b) {
    if (p.degree() > 64) throw std::invalid_argument("poly_shift_jet: degree above 64");
    Polynomial val = compose_affine(p, a, b);
    Polynomial der = compose_affine(p.deriv(), a, b);
    std::size_t n = std::max(val.c.size(), der.c.size());
    if (n == 0) n = 1;
    JetPoly out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = i < val.c.size() ? val.c[i] : 0.0;
        double d = (i < der.c.size() ? der.c[i] : 0.0) * jet_scale;
        switch (var) {
            case JetVar::x: out[i] = {v, d, 0.0, 0.0}; break;
            case JetVar::y: out[i] = {v, 0.0, d, 0.0}; break;
            case JetVar::none: out[i] = Jet2::constant(v); break;
        }
    }
    return out;
}

JetPoly jp_mul(const JetPoly& a, const JetPoly& b) {
    if (a.empty() || b.empty()) return {};
    JetPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

JetPoly jp_scale(const JetPoly& a, const Jet2& s) {
    JetPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

JetPoly jp_from_poly(const Polynomial& p) {
    JetPoly r(p.c.empty() ? 1 : p.c.size());
    for (std::size_t i = 0; i < p.c.size(); ++i) r[i] = Jet2::constant(p.c[i]);
    return r;
}

Jet2 jp_integrate01(const JetPoly& a) {
    Jet2 t;
    for (std::size_t i = 0; i < a.size(); ++i) t += a[i] * (1.0 / static_cast<double>(i + 1));
    return t;
}

Jet2 jp_integrate_exp(const JetPoly& a, double lambda) {
    if (a.empty()) return {};
    const std::vector<double> I = exp_moments(static_cast<int>(a.size()) - 1, lambda);
    Jet2 t;
    for (std::size_t i = 0; i < a.size(); ++i) t += a[i] * I[i];
    return t;
}

Jet2 integrate_unit_square_jet(const JetPoly& fu, const JetPoly& fv, double rate) {
    return jp_integrate01(fu) * jp_integrate_exp(fv, rate);
}

}  // namespace moll
