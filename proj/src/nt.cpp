#include "moll/nt.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace moll::nt {

ArithTable build_table(std::int64_t N, int kmax) {
    if (N < 2) throw ResourceError("build_table: N must be >= 2");
    if (N > 100000000LL) throw ResourceError("build_table: N above the 1e8 memory guard");
    ArithTable t;
    t.limit = N;
    const std::size_t n = static_cast<std::size_t>(N) + 1;

    // linear sieve for least prime factor -> mu; Lambda from prime powers
    std::vector<std::int32_t> lpf(n, 0);
    std::vector<std::int32_t> primes;
    t.mu.assign(n, 0);
    t.mu[1] = 1;
    for (std::int64_t i = 2; i <= N; ++i) {
        if (lpf[i] == 0) {
            lpf[i] = static_cast<std::int32_t>(i);
            primes.push_back(static_cast<std::int32_t>(i));
        }
        for (std::int32_t p : primes) {
            if (p > lpf[i] || i * p > N) break;
            lpf[i * p] = p;
        }
        const std::int64_t m = i / lpf[i];
        t.mu[i] = (m % lpf[i] == 0) ? 0 : static_cast<std::int8_t>(-t.mu[m]);
    }
    t.lambda.assign(n, 0.0);
    for (std::int32_t p : primes) {
        const double lp = std::log(static_cast<double>(p));
        for (std::int64_t q = p; q <= N; q *= p) {
            t.lambda[q] = lp;
            if (q > N / p) break;
        }
    }

    // Lambda_{k+1}(n) = Lambda_k(n) log n + (Lambda * Lambda_k)(n)
    t.lambda_k[1] = t.lambda;
    for (int k = 1; k < kmax; ++k) {
        std::vector<double> conv = dirichlet_convolve(t.lambda, t.lambda_k[k]);
        std::vector<double> next(n, 0.0);
        for (std::int64_t i = 1; i <= N; ++i)
            next[i] = t.lambda_k[k][i] * std::log(static_cast<double>(i)) + conv[i];
        t.lambda_k[k + 1] = std::move(next);
    }

    // d_1 = 1, d_{k+1} = d_k * 1
    std::vector<std::int64_t> dk(n, 1);
    dk[0] = 0;
    t.d_k[1] = dk;
    for (int k = 1; k < kmax; ++k) {
        std::vector<std::int64_t> nxt(n, 0);
        for (std::int64_t d = 1; d <= N; ++d)
            for (std::int64_t m = d; m <= N; m += d) nxt[m] += dk[m / d];
        t.d_k[k + 1] = nxt;
        dk = std::move(nxt);
    }
    return t;
}

std::vector<double> dirichlet_convolve_serial(const std::vector<double>& f,
                                              const std::vector<double>& g) {
    if (f.size() != g.size()) throw std::invalid_argument("dirichlet_convolve: length mismatch");
    const std::int64_t N = static_cast<std::int64_t>(f.size()) - 1;
    std::vector<double> out(f.size(), 0.0);
    for (std::int64_t d = 1; d <= N; ++d) {
        const double fd = f[d];
        if (fd == 0.0) continue;
        for (std::int64_t m = d; m <= N; m += d) out[m] += fd * g[m / d];
    }
    return out;
}

std::vector<double> dirichlet_convolve(const std::vector<double>& f, const std::vector<double>& g) {
#ifdef _OPENMP
    if (f.size() != g.size()) throw std::invalid_argument("dirichlet_convolve: length mismatch");
    const std::int64_t N = static_cast<std::int64_t>(f.size()) - 1;
    std::vector<double> out(f.size(), 0.0);
    // block the output range; every cell is owned by one thread and accumulates
    // in ascending divisor order, matching the serial result bit for bit
#pragma omp parallel
    {
        const int nt = omp_get_num_threads();
        const int id = omp_get_thread_num();
        const std::int64_t lo = 1 + (N * id) / nt;
        const std::int64_t hi = (N * (id + 1)) / nt;  // inclusive
        for (std::int64_t d = 1; d <= hi; ++d) {
            const double fd = f[d];
            if (fd == 0.0) continue;
            std::int64_t m = ((lo + d - 1) / d) * d;
            for (; m <= hi; m += d) out[m] += fd * g[m / d];
        }
    }
    return out;
#else
    return dirichlet_convolve_serial(f, g);
#endif
}

double verify_lambda2_identity(const ArithTable& t, std::int64_t N) {
    if (N > t.limit) throw ResourceError("verify_lambda2_identity: N above table limit");
    const std::vector<double> ll = dirichlet_convolve(t.lambda, t.lambda);
    double dev = 0.0;
    for (std::int64_t i = 1; i <= N; ++i) {
        const double lhs = t.Lk(2)[i];
        const double rhs = t.lambda[i] * std::log(static_cast<double>(i)) + ll[i];
        dev = std::max(dev, std::abs(lhs - rhs));
    }
    return dev;
}

namespace {

std::vector<std::int64_t> prime_factors(std::int64_t h) {
    std::vector<std::int64_t> p;
    for (std::int64_t d = 2; d * d <= h; ++d) {
        if (h % d == 0) {
            p.push_back(d);
            while (h % d == 0) h /= d;
        }
    }
    if (h > 1) p.push_back(h);
    return p;
}

// sum over ordered l-tuples of distinct primes from `pool`, weight = prod log p
double ordered_tuple_sum(const std::vector<std::int64_t>& pool, std::vector<bool>& used, int l,
                         const std::vector<double>& logs) {
    if (l == 0) return 1.0;
    double s = 0.0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        s += logs[i] * ordered_tuple_sum(pool, used, l - 1, logs);
        used[i] = false;
    }
    return s;
}

double factorial_d(int n) {
    double r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double binom_d(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

std::pair<double, double> verify_combinatorial_identity(const ArithTable& t, std::int64_t h1,
                                                        std::int64_t h2, int l1, int l2) {
    if (h1 > t.limit || h2 > t.limit) throw ResourceError("h above table limit");
    if (t.mu[h1] == 0 || t.mu[h2] == 0)
        throw std::invalid_argument("verify_combinatorial_identity: h1, h2 must be square-free");

    const std::vector<std::int64_t> pa = prime_factors(h1);
    const std::vector<std::int64_t> pb = prime_factors(h2);
    std::vector<double> la(pa.size()), lb(pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) la[i] = std::log(static_cast<double>(pa[i]));
    for (std::size_t i = 0; i < pb.size(); ++i) lb[i] = std::log(static_cast<double>(pb[i]));

    std::vector<bool> ua(pa.size(), false), ub(pb.size(), false);
    const double lhs =
        ordered_tuple_sum(pa, ua, l1, la) * ordered_tuple_sum(pb, ub, l2, lb);

    // rhs: merged pool with membership masks; P-slots need p | gcd(h1,h2) and
    // weight log^2 p, Q-slots p | h1, R-slots p | h2, all primes distinct
    std::vector<std::int64_t> pool;
    for (std::int64_t p : pa) pool.push_back(p);
    for (std::int64_t p : pb)
        if (std::find(pool.begin(), pool.end(), p) == pool.end()) pool.push_back(p);
    const std::size_t np = pool.size();
    std::vector<bool> in1(np), in2(np);
    std::vector<double> lg(np);
    for (std::size_t i = 0; i < np; ++i) {
        in1[i] = h1 % pool[i] == 0;
        in2[i] = h2 % pool[i] == 0;
        lg[i] = std::log(static_cast<double>(pool[i]));
    }

    double rhs = 0.0;
    std::vector<bool> used(np, false);
    // ordered enumeration over the three groups in sequence
    std::function<double(int, int, int)> rec = [&](int need_p, int need_q, int need_r) -> double {
        if (need_p == 0 && need_q == 0 && need_r == 0) return 1.0;
        double s = 0.0;
        for (std::size_t i = 0; i < np; ++i) {
            if (used[i]) continue;
            if (need_p > 0) {
                if (in1[i] && in2[i]) {
                    used[i] = true;
                    s += lg[i] * lg[i] * rec(need_p - 1, need_q, need_r);
                    used[i] = false;
                }
            } else if (need_q > 0) {
                if (in1[i]) {
                    used[i] = true;
                    s += lg[i] * rec(0, need_q - 1, need_r);
                    used[i] = false;
                }
            } else {
                if (in2[i]) {
                    used[i] = true;
                    s += lg[i] * rec(0, 0, need_r - 1);
                    used[i] = false;
                }
            }
        }
        return s;
    };
    for (int k = 0; k <= std::min(l1, l2); ++k) {
        const double mult = factorial_d(k) * binom_d(l1, k) * binom_d(l2, k);
        rhs += mult * rec(k, l1 - k, l2 - k);
    }
    return {lhs, rhs};
}

double verify_arithmetic_factor(const ArithTable& t, double z, std::int64_t N) {
    if (N > t.limit) throw ResourceError("N above table limit");
    if (N > 3000) throw ResourceError("verify_arithmetic_factor: N above the 3000 guard (N^2 array)");
    // g(c) = sum_{d|c, d<=N, c/d<=N} mu(d); S = sum_c g(c) gbar(c) / c^{1+2z}
    // with gbar the mu-free side ... both sides carry mu here, so S = sum g(c)^2/c^{1+2z}
    // after pairing h,m with k,n on hm = kn = c.
    const std::int64_t C = N * N;
    std::vector<double> g(static_cast<std::size_t>(C) + 1, 0.0);
    for (std::int64_t d = 1; d <= N; ++d) {
        if (t.mu[d] == 0) continue;
        const double md = t.mu[d];
        for (std::int64_t m = 1; m <= N; ++m) g[d * m] += md;
    }
    double s = 0.0;
    for (std::int64_t c = 1; c <= C; ++c) {
        if (g[c] != 0.0)
            s += g[c] * g[c] * std::pow(static_cast<double>(c), -1.0 - 2.0 * z);
    }
    return s;
}

double arithmetic_factor_bruteforce(const ArithTable& t, double z, std::int64_t N) {
    if (N > 200) throw ResourceError("bruteforce: N above 200");
    double s = 0.0;
    for (std::int64_t h = 1; h <= N; ++h) {
        if (t.mu[h] == 0) continue;
        for (std::int64_t k = 1; k <= N; ++k) {
            if (t.mu[k] == 0) continue;
            for (std::int64_t m = 1; m <= N; ++m) {
                const std::int64_t hm = h * m;
                if (hm % k != 0) continue;
                const std::int64_t n = hm / k;
                if (n > N) continue;
                s += static_cast<double>(t.mu[h]) * t.mu[k] *
                     std::pow(static_cast<double>(h) * k * m * n, -0.5 - z);
            }
        }
    }
    return s;
}

SummationResult verify_summation_lemma(const ArithTable& t, const ConvSpec& spec, double z,
                                       double x, double s, const Polynomial& F,
                                       const Polynomial& H) {
    const std::int64_t zi = static_cast<std::int64_t>(z);
    if (zi > t.limit) throw ResourceError("z above table limit");
    if (!(z >= 3.0 && z <= x)) throw std::invalid_argument("need 3 <= z <= x");
    if (std::abs(s) > 1.0 / std::log(x) + 1e-15)
        throw std::invalid_argument("need |s| <= 1/log x");
    if (spec.lambda_log_power < 0 || spec.lambda_log_power > 1)
        throw std::invalid_argument("lambda_log_power must be 0 or 1");

    const std::size_t n = static_cast<std::size_t>(t.limit) + 1;
    // build the weight array
    std::vector<double> w(n, 0.0);
    if (spec.leading == 0) {
        w[1] = 1.0;
    } else if (spec.leading == 1) {
        std::fill(w.begin() + 1, w.end(), 1.0);
    } else {
        const auto& dk = t.d_k.at(spec.leading);
        for (std::size_t i = 1; i < n; ++i) w[i] = static_cast<double>(dk[i]);
    }
    for (int i = 0; i < spec.lambda_power; ++i) w = dirichlet_convolve(w, t.lambda);
    for (int i = 0; i < spec.lambda2_power; ++i) w = dirichlet_convolve(w, t.Lk(2));
    if (spec.lambda_log_power == 1) {
        std::vector<double> ll(n, 0.0);
        for (std::size_t i = 2; i < n; ++i) ll[i] = t.lambda[i] * std::log(static_cast<double>(i));
        w = dirichlet_convolve(w, ll);
    }

    const double logz = std::log(z), logx = std::log(x);
    double lhs = 0.0;
    for (std::int64_t i = 1; i <= zi; ++i) {
        if (w[i] == 0.0) continue;
        const double li = std::log(static_cast<double>(i));
        lhs += w[i] * std::pow(static_cast<double>(i), -1.0 - s) * F.eval((logx - li) / logx) *
               H.eval((logz - li) / logz);
    }

    const int m = spec.leading + spec.lambda_power + 2 * spec.lambda2_power +
                  2 * spec.lambda_log_power;
    if (m < 1) throw std::invalid_argument("degenerate spec: m = 0");
    const double C = std::pow(2.0, spec.lambda2_power);
    // integrand: (1-u)^{m-1} F(1-(1-u) logz/logx) H(u) e^{u s logz}
    const Polynomial Fc = compose_affine(F, 1.0 - logz / logx, logz / logx);
    const Polynomial integrand = mul(mul(one_minus_pow(m - 1), Fc), H);
    const double I = integrate_exp_poly(integrand, s * logz);
    const double rhs = C * std::pow(logz, m) / (factorial_d(m - 1) * std::pow(z, s)) * I;

    SummationResult r;
    r.lhs = lhs;
    r.rhs_main = rhs;
    r.rel_err = std::abs(lhs - rhs) / std::abs(rhs);
    return r;
}

std::pair<double, double> verify_residue_formula(double beta, int m, int j, double q) {
    if (m < 0 || m > 1) throw std::invalid_argument("residue formula: only orders m in {0,1}");
    if (!(q >= 1.0)) throw std::invalid_argument("residue formula: q must be >= 1");
    if (std::abs(beta) >= 1.0)
        throw std::invalid_argument("residue formula: |beta| < 1 so the unit circle encloses -beta");
    const int nodes = 1024;
    const double pi = std::acos(-1.0);
    const double lq = std::log(q);
    std::complex<double> acc = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double phi = 2.0 * pi * i / nodes;
        const std::complex<double> u(std::cos(phi), std::sin(phi));
        std::complex<double> val = std::pow(beta + u, m) * std::exp(lq * u) / std::pow(u, j + 1);
        acc += val * u;  // du = i u dphi; the 1/(2pi i) eats the i
    }
    const double contour = (acc / static_cast<double>(nodes)).real();
    // (1/j!) d^m/dy^m [e^{beta y}(y + log q)^j] at y = 0
    double closed;
    if (m == 0) {
        closed = std::pow(lq, j) / factorial_d(j);
    } else {
        closed = (beta * std::pow(lq, j) + j * std::pow(lq, j - 1)) / factorial_d(j);
    }
    return {contour, closed};
}

}  // namespace moll::nt
