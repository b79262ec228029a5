#include "moll/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace moll {

void SearchSpace::check() const {
    if (p1_degree < 0) throw ValidationError("p1_degree: must be >= 0");
    if (pl_degrees.empty()) throw ValidationError("pl_degrees: need one entry per l = 2..K");
    if (kappa_star && q_odd_terms != 1)
        throw ValidationError("q_odd_terms: kappa_star mode forces q_odd_terms = 1");
    if (q_odd_terms < 0) throw ValidationError("q_odd_terms: must be >= 0");
    if (!(r_min <= r_max)) throw ValidationError("r_bounds: need r_min <= r_max");
}

int SearchSpace::dim() const {
    int d = p1_degree + q_odd_terms + 1;  // + R
    for (int g : pl_degrees) d += g;
    return d;
}

MollifierConfig unpack(const SearchSpace& sp, const std::vector<double>& v) {
    sp.check();
    if (static_cast<int>(v.size()) != sp.dim())
        throw std::invalid_argument("unpack: vector length does not match space dimension");
    MollifierConfig cfg;
    cfg.K = sp.K();
    cfg.theta1 = sp.theta1;
    cfg.theta2 = sp.theta2;
    cfg.c12_variant = sp.c12_variant;
    std::size_t pos = 0;
    std::vector<double> a(v.begin(), v.begin() + sp.p1_degree);
    pos += sp.p1_degree;
    cfg.P1 = p1_from_shifted_basis(a);
    for (int g : sp.pl_degrees) {
        std::vector<double> b(v.begin() + pos, v.begin() + pos + g);
        pos += g;
        cfg.Pl.push_back(pl_from_linear_basis(b));
    }
    std::vector<double> q(v.begin() + pos, v.begin() + pos + sp.q_odd_terms);
    pos += sp.q_odd_terms;
    double q0 = 1.0;
    for (double qi : q) q0 -= qi;
    cfg.Q = q_from_odd_basis(q0, q);
    cfg.R = std::clamp(v[pos], sp.r_min, sp.r_max);
    return cfg;
}

std::vector<double> pack(const SearchSpace& sp, const MollifierConfig& cfg) {
    sp.check();
    // invert the three parameter bases; exact because they are triangular
    std::vector<double> out;
    // P1 = x + sum a_i x(1-x)^i: x(1-x)^i has top monomial (-1)^i x^{i+1},
    // so peel from the highest degree down.
    {
        Polynomial rem = sub(cfg.P1, Polynomial({0.0, 1.0}));
        std::vector<double> a(sp.p1_degree, 0.0);
        for (int i = sp.p1_degree; i >= 1; --i) {
            const double top = (i + 1 <= rem.degree()) ? rem.c[i + 1] : 0.0;
            const double ai = top / ((i % 2 == 0) ? 1.0 : -1.0);
            a[i - 1] = ai;
            rem = sub(rem, scale(mul(Polynomial({0.0, 1.0}), one_minus_pow(i)), ai));
        }
        out.insert(out.end(), a.begin(), a.end());
    }
    for (std::size_t idx = 0; idx < sp.pl_degrees.size(); ++idx) {
        const Polynomial& P = cfg.Pl.at(idx);
        for (int j = 1; j <= sp.pl_degrees[idx]; ++j)
            out.push_back(j < static_cast<int>(P.c.size()) ? P.c[j] : 0.0);
    }
    {
        // Q = q0 + sum q_i (1-2x)^{2i-1}: (1-2x)^{2i-1} has leading monomial
        // (-2)^{2i-1} x^{2i-1}; solve downward from the top odd degree.
        Polynomial rem = cfg.Q;
        std::vector<double> q(sp.q_odd_terms, 0.0);
        for (int i = sp.q_odd_terms; i >= 1; --i) {
            const int e = 2 * i - 1;
            const double lead = (e < static_cast<int>(rem.c.size())) ? rem.c[e] : 0.0;
            const double qi = lead / std::pow(-2.0, e);
            q[i - 1] = qi;
            Polynomial pw({1.0});
            for (int k = 0; k < e; ++k) pw = mul(pw, Polynomial({1.0, -2.0}));
            rem = sub(rem, scale(pw, qi));
        }
        out.insert(out.end(), q.begin(), q.end());
    }
    out.push_back(cfg.R);
    if (static_cast<int>(out.size()) != sp.dim())
        throw std::invalid_argument("pack: config does not fit the space");
    return out;
}

double objective_kappa(const SearchSpace& sp, const std::vector<double>& v) {
    try {
        MollifierConfig cfg = unpack(sp, v);
        FunctionalReport rep = sp.kappa_star ? eval_kappa_star(cfg) : eval_total(cfg);
        return std::isfinite(rep.kappa) ? rep.kappa : -std::numeric_limits<double>::infinity();
    } catch (const std::exception&) {
        return -std::numeric_limits<double>::infinity();
    }
}

namespace {

struct RestartOutcome {
    std::vector<double> x;
    double kappa = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, double>> trace;
};

RestartOutcome nelder_mead(const SearchSpace& sp, std::vector<double> x0, int budget) {
    const int n = static_cast<int>(x0.size());
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    const double edge = 0.05, diam_tol = 1e-7;

    if (budget == 1) {  // no moves accepted: report the start point itself
        RestartOutcome out;
        out.x = std::move(x0);
        out.kappa = objective_kappa(sp, out.x);
        out.trace.emplace_back(0, out.kappa);
        return out;
    }

    std::vector<std::vector<double>> X(n + 1, x0);
    for (int i = 0; i < n; ++i) X[i + 1][i] += edge;
    std::vector<double> f(n + 1);
    for (int i = 0; i <= n; ++i) f[i] = -objective_kappa(sp, X[i]);  // minimize -kappa

    RestartOutcome out;
    auto record = [&](int it) {
        const double best = -*std::min_element(f.begin(), f.end());
        if (out.trace.empty() || best > out.trace.back().second)
            out.trace.emplace_back(it, best);
        else
            out.trace.emplace_back(it, out.trace.back().second);
    };
    record(0);

    std::vector<int> idx(n + 1);
    for (int it = 1; it < budget; ++it) {
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return f[a] < f[b]; });
        std::vector<std::vector<double>> Xs(n + 1);
        std::vector<double> fs(n + 1);
        for (int i = 0; i <= n; ++i) {
            Xs[i] = X[idx[i]];
            fs[i] = f[idx[i]];
        }
        X.swap(Xs);
        f.swap(fs);

        double diam = 0.0;
        for (int i = 1; i <= n; ++i)
            for (int d = 0; d < n; ++d) diam = std::max(diam, std::abs(X[i][d] - X[0][d]));
        if (diam < diam_tol) break;

        std::vector<double> cen(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int d = 0; d < n; ++d) cen[d] += X[i][d] / n;

        auto ray = [&](double t) {
            std::vector<double> p(n);
            for (int d = 0; d < n; ++d) p[d] = cen[d] + t * (X[n][d] - cen[d]);
            return p;
        };
        const std::vector<double> xr = ray(-alpha);
        const double fr = -objective_kappa(sp, xr);
        if (fr < f[0]) {
            const std::vector<double> xe = ray(-gamma);
            const double fe = -objective_kappa(sp, xe);
            if (fe < fr) {
                X[n] = xe;
                f[n] = fe;
            } else {
                X[n] = xr;
                f[n] = fr;
            }
        } else if (fr < f[n - 1]) {
            X[n] = xr;
            f[n] = fr;
        } else {
            const std::vector<double> xc = ray(fr < f[n] ? -rho : rho);
            const double fc = -objective_kappa(sp, xc);
            if (fc < std::min(fr, f[n])) {
                X[n] = xc;
                f[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int d = 0; d < n; ++d) X[i][d] = X[0][d] + sigma * (X[i][d] - X[0][d]);
                    f[i] = -objective_kappa(sp, X[i]);
                }
            }
        }
        record(it);
    }
    int besti = static_cast<int>(std::min_element(f.begin(), f.end()) - f.begin());
    out.x = X[besti];
    out.kappa = -f[besti];
    return out;
}

}  // namespace

OptimResult optimize_kappa(const SearchSpace& sp, int budget, int restarts, std::uint64_t seed) {
    sp.check();
    if (budget < 1) throw std::invalid_argument("optimize_kappa: budget must be >= 1");
    if (restarts < 1) throw std::invalid_argument("optimize_kappa: restarts must be >= 1");
    const int n = sp.dim();

    // deterministic start points: warm (if any), Conrey-degenerate, random
    std::vector<std::vector<double>> starts;
    if (!sp.warm.empty()) {
        if (static_cast<int>(sp.warm.size()) != n)
            throw std::invalid_argument("warm start length does not match space dimension");
        starts.push_back(sp.warm);
    }
    {
        std::vector<double> conrey(n, 0.0);
        conrey[n - 1] = std::clamp(1.2, sp.r_min, sp.r_max);
        starts.push_back(conrey);
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 0.25);
    std::uniform_real_distribution<double> unif(sp.r_min, sp.r_max);
    const std::vector<double> anchor = starts[0];
    while (static_cast<int>(starts.size()) < restarts) {
        std::vector<double> p(n);
        for (int d = 0; d < n - 1; ++d) p[d] = anchor[d] + gauss(rng);
        p[n - 1] = unif(rng);
        starts.push_back(p);
    }
    starts.resize(restarts);

    std::vector<RestartOutcome> outs(restarts);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int r = 0; r < restarts; ++r) outs[r] = nelder_mead(sp, starts[r], budget);

    int best = 0;
    for (int r = 1; r < restarts; ++r)
        if (outs[r].kappa > outs[best].kappa) best = r;  // ties keep lowest index

    OptimResult res;
    res.best_config = unpack(sp, outs[best].x);
    res.trace = std::move(outs[best].trace);
    res.restarts_used = restarts;
    // re-verify on output
    res.best_kappa = sp.kappa_star ? eval_kappa_star(res.best_config).kappa
                                   : eval_total(res.best_config).kappa;
    return res;
}

std::vector<double> sensitivity_table(const SearchSpace& sp, const MollifierConfig& cfg, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("sensitivity_table: h must be positive");
    std::vector<double> x = pack(sp, cfg);
    std::vector<double> grad(x.size());
    for (std::size_t d = 0; d < x.size(); ++d) {
        std::vector<double> xp = x, xm = x;
        xp[d] += h;
        xm[d] -= h;
        grad[d] = (objective_kappa(sp, xp) - objective_kappa(sp, xm)) / (2.0 * h);
    }
    return grad;
}

}  // namespace moll
