#include "moll/functional.hpp"

#include <cmath>

namespace moll {

namespace {

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

double falling(int l, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (l - i);
    return r;
}

}  // namespace

void MollifierConfig::validate() const {
    if (K < 2) throw ValidationError("K: must be >= 2");
    if (!(R > 0.0)) throw ValidationError("R: must be positive");
    if (!(theta1 > 0.0) || theta1 > 4.0 / 7.0 + 1e-12)
        throw ValidationError("theta1: must lie in (0, 4/7]");
    if (!(theta2 > 0.0) || theta2 > 0.5 + 1e-12)
        throw ValidationError("theta2: must lie in (0, 1/2]");
    if (theta1 + theta2 > 1.0 + 1e-12)
        throw ValidationError("theta1+theta2: must be <= 1");
    if (static_cast<int>(Pl.size()) != K - 1)
        throw ValidationError("Pl: need exactly K-1 polynomials P_2..P_K");
    if (std::abs(P1.eval(0.0)) > 1e-6) throw ValidationError("P1: requires P1(0)=0 (tol 1e-6)");
    if (std::abs(P1.eval(1.0) - 1.0) > 1e-6) throw ValidationError("P1: requires P1(1)=1 (tol 1e-6)");
    for (std::size_t i = 0; i < Pl.size(); ++i)
        if (std::abs(Pl[i].eval(0.0)) > 1e-6)
            throw ValidationError("P" + std::to_string(i + 2) + ": requires P_l(0)=0 (tol 1e-6)");
    if (std::abs(Q.eval(0.0) - 1.0) > 1e-6) throw ValidationError("Q: requires Q(0)=1 (tol 1e-6)");
    const double qsum = Q.eval(0.0) + Q.eval(1.0);
    for (int g = 0; g <= 10; ++g) {
        double x = 0.1 * g;
        if (std::abs(Q.eval(x) + Q.eval(1.0 - x) - qsum) > 1e-6)
            throw ValidationError("Q: requires Q(x)+Q(1-x) constant (tol 1e-6)");
    }
}

double eval_c11(const Polynomial& P1, const Polynomial& Q, double R, double theta1) {
    if (!(theta1 > 0.0)) throw DomainError("theta1: must be positive");
    // d/dx[e^{R theta1 x} P1(x+u) Q(v+theta1 x)]|_{x=0}
    //   = (R theta1 P1 + P1')(u) Q(v) + theta1 P1(u) Q'(v)
    const Polynomial A = add(scale(P1, R * theta1), P1.deriv());
    const Polynomial B = scale(P1, theta1);
    const Polynomial Qp = Q.deriv();
    const double lam = 2.0 * R;
    double val = integrate_poly01(mul(A, A)) * integrate_exp_poly(mul(Q, Q), lam) +
                 2.0 * integrate_poly01(mul(A, B)) * integrate_exp_poly(mul(Q, Qp), lam) +
                 integrate_poly01(mul(B, B)) * integrate_exp_poly(mul(Qp, Qp), lam);
    return 1.0 + val / theta1;
}

double eval_c12(const MollifierConfig& cfg, std::map<TermKey, double>* breakdown) {
    const double th1 = cfg.theta1, th2 = cfg.theta2, R = cfg.R;
    if (th2 > th1 + 1e-12) throw DomainError("theta2: c12 requires theta1 >= theta2");
    const double a = 1.0 - th2 / th1, b = th2 / th1;
    const Polynomial P1sh = compose_affine(cfg.P1.deriv(), a, b);
    double total = 0.0;
    for (int l = 2; l <= cfg.K; ++l) {
        const Polynomial& P = cfg.P(l);
        const double sgn = (l % 2 == 0) ? 1.0 : -1.0;
        const double t1 =
            sgn / factorial(l - 1) * integrate_poly01(mul(mul(one_minus_pow(l - 1), cfg.P1), P));
        const int E = cfg.c12_variant == C12Variant::ell_minus_1 ? l - 1 : l;
        const double t2 = sgn / factorial(l) * integrate_poly01(mul(mul(one_minus_pow(E), P1sh), P));
        // d2/dxdy of e^{R(th1 x + th2 y)} II e^{2Rv} (1-u)^l
        //   P1(x + 1 - (1-u) th2/th1) P_l(y+u) Q(th2 y + v) Q(th1 x + v) du dv
        const JetPoly U = jp_mul(jp_from_poly(one_minus_pow(l)),
                                 jp_mul(poly_shift_jet(cfg.P1, JetVar::x, a, b),
                                        poly_shift_jet(P, JetVar::y, 0.0, 1.0)));
        const JetPoly V = jp_mul(poly_shift_jet(cfg.Q, JetVar::y, th2, 0.0, 1.0),
                                 poly_shift_jet(cfg.Q, JetVar::x, th1, 0.0, 1.0));
        const Jet2 J = integrate_unit_square_jet(U, V, 2.0 * R) * exp_jet(R * th1, R * th2);
        const double t3 = sgn / factorial(l) * J.dxdy;
        const double term = t1 - (th1 - th2) / th1 * t2 + t3 / th1;
        if (breakdown) (*breakdown)[TermKey{l, 0, -1}] = term;
        total += term;
    }
    return total;
}

double eval_c22(const MollifierConfig& cfg, std::map<TermKey, double>* breakdown) {
    const double th2 = cfg.theta2, R = cfg.R;
    double total = 0.0;
    for (int l1 = 2; l1 <= cfg.K; ++l1) {
        for (int l2 = 2; l2 <= cfg.K; ++l2) {
            const Polynomial& Pa = cfg.P(l1);
            const Polynomial& Pb = cfg.P(l2);
            const double base1 =
                integrate_poly01(mul(mul(one_minus_pow(l1 + l2 - 1), Pa), Pb)) / factorial(l1 + l2 - 1);
            const JetPoly U = jp_mul(jp_from_poly(one_minus_pow(l1 + l2)),
                                     jp_mul(poly_shift_jet(Pa, JetVar::x, 0.0, 1.0),
                                            poly_shift_jet(Pb, JetVar::y, 0.0, 1.0)));
            const JetPoly V = jp_mul(poly_shift_jet(cfg.Q, JetVar::x, th2, 0.0, 1.0),
                                     poly_shift_jet(cfg.Q, JetVar::y, th2, 0.0, 1.0));
            const Jet2 J = integrate_unit_square_jet(U, V, 2.0 * R) * exp_jet(R * th2, R * th2);
            const double base2 = J.dxdy / (th2 * factorial(l1 + l2));
            for (int k = 0; k <= std::min(l1, l2); ++k) {
                const double sgn = ((l1 + l2) % 2 == 0) ? 1.0 : -1.0;  // (-1)^{l1+l2-2k}
                const double w = sgn * binom(l1, k) * falling(l2, k) *
                                 std::pow(2.0, static_cast<double>(l1 + l2 - 2 * k));
                const double term = w * (base1 + base2);
                if (breakdown) (*breakdown)[TermKey{l1, l2, k}] = term;
                total += term;
            }
        }
    }
    return total;
}

FunctionalReport eval_total(const MollifierConfig& cfg) {
    cfg.validate();
    FunctionalReport rep;
    rep.c11 = eval_c11(cfg.P1, cfg.Q, cfg.R, cfg.theta1);
    rep.c12 = eval_c12(cfg, &rep.term_breakdown);
    rep.c22 = eval_c22(cfg, &rep.term_breakdown);
    rep.c_total = rep.c11 + 2.0 * rep.c12 + rep.c22;
    rep.kappa = kappa_from_c(rep.c_total, cfg.R);
    return rep;
}

FunctionalReport eval_kappa_star(const MollifierConfig& cfg) {
    // the kappa* convention restricts Q to degree 1 in the (1-2x) basis,
    // i.e. an affine Q
    if (cfg.Q.degree() > 1)
        throw ValidationError("Q: kappa* mode requires a linear Q");
    FunctionalReport rep = eval_total(cfg);
    rep.kappa_star = true;
    return rep;
}

ShiftedTerms eval_c_shifted(const MollifierConfig& cfg, double alpha, double beta, double logT) {
    const double th1 = cfg.theta1, th2 = cfg.theta2;
    const double L1 = th1 * logT, L2 = th2 * logT;
    const double rate = -(alpha + beta) * logT;  // T^{-v(alpha+beta)}
    ShiftedTerms out;

    // c11(alpha,beta) = 1 + (1/th1) dxdy[ y1^{-beta x - alpha y}
    //                     II T^{-v(alpha+beta)} P1(x+u) P1(y+u) du dv ]
    {
        const JetPoly U = jp_mul(poly_shift_jet(cfg.P1, JetVar::x, 0.0, 1.0),
                                 poly_shift_jet(cfg.P1, JetVar::y, 0.0, 1.0));
        const Jet2 J = integrate_unit_square_jet(U, jp_from_poly(Polynomial({1.0})), rate) *
                       exp_jet(-beta * L1, -alpha * L1);
        out.c11 = 1.0 + J.dxdy / th1;
    }
    // c12(alpha,beta): first two terms as in eval_c12 (they carry no shifts),
    // third with y1^{-beta x} y2^{-alpha y} and no Q
    {
        if (th2 > th1 + 1e-12) throw DomainError("theta2: c12 requires theta1 >= theta2");
        const double a = 1.0 - th2 / th1, b = th2 / th1;
        const Polynomial P1sh = compose_affine(cfg.P1.deriv(), a, b);
        double total = 0.0;
        for (int l = 2; l <= cfg.K; ++l) {
            const Polynomial& P = cfg.P(l);
            const double sgn = (l % 2 == 0) ? 1.0 : -1.0;
            const double t1 =
                sgn / factorial(l - 1) * integrate_poly01(mul(mul(one_minus_pow(l - 1), cfg.P1), P));
            const int E = cfg.c12_variant == C12Variant::ell_minus_1 ? l - 1 : l;
            const double t2 =
                sgn / factorial(l) * integrate_poly01(mul(mul(one_minus_pow(E), P1sh), P));
            const JetPoly U = jp_mul(jp_from_poly(one_minus_pow(l)),
                                     jp_mul(poly_shift_jet(cfg.P1, JetVar::x, a, b),
                                            poly_shift_jet(P, JetVar::y, 0.0, 1.0)));
            const Jet2 J = integrate_unit_square_jet(U, jp_from_poly(Polynomial({1.0})), rate) *
                           exp_jet(-beta * L1, -alpha * L2);
            total += t1 - (th1 - th2) / th1 * t2 + sgn / factorial(l) * J.dxdy / th1;
        }
        out.c12 = total;
    }
    // c22(alpha,beta): y2^{-beta x - alpha y}, no Q
    {
        double total = 0.0;
        for (int l1 = 2; l1 <= cfg.K; ++l1) {
            for (int l2 = 2; l2 <= cfg.K; ++l2) {
                const Polynomial& Pa = cfg.P(l1);
                const Polynomial& Pb = cfg.P(l2);
                const double base1 = integrate_poly01(mul(mul(one_minus_pow(l1 + l2 - 1), Pa), Pb)) /
                                     factorial(l1 + l2 - 1);
                const JetPoly U = jp_mul(jp_from_poly(one_minus_pow(l1 + l2)),
                                         jp_mul(poly_shift_jet(Pa, JetVar::x, 0.0, 1.0),
                                                poly_shift_jet(Pb, JetVar::y, 0.0, 1.0)));
                const Jet2 J = integrate_unit_square_jet(U, jp_from_poly(Polynomial({1.0})), rate) *
                               exp_jet(-beta * L2, -alpha * L2);
                const double base2 = J.dxdy / (th2 * factorial(l1 + l2));
                for (int k = 0; k <= std::min(l1, l2); ++k) {
                    const double sgn = ((l1 + l2) % 2 == 0) ? 1.0 : -1.0;
                    total += sgn * binom(l1, k) * falling(l2, k) *
                             std::pow(2.0, static_cast<double>(l1 + l2 - 2 * k)) * (base1 + base2);
                }
            }
        }
        out.c22 = total;
    }
    return out;
}

}  // namespace moll
