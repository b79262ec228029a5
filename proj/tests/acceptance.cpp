// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Reference targets are the published values the tool is meant to reproduce;
// see README "Reproduction status" for the criteria that are known not to
// hold and the analysis behind that.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "moll/config.hpp"
#include "moll/nt.hpp"
#include "moll/optimize.hpp"
#include "oracle.hpp"

using namespace moll;
using clk = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
    std::printf("%-4s %s  %s\n", id.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

MollifierConfig preset_cfg(const std::string& name) {
    return parse_config_text(presets().at(name)).moll;
}

}  // namespace

// A1: eval_total on the first parameter list: kappa = 0.369927 +- 5e-4, < 1 s
static void a1() {
    auto t0 = clk::now();
    FunctionalReport rep = eval_total(preset_cfg("thm1"));
    double secs = seconds_since(t0);
    bool ok = std::abs(rep.kappa - 0.369927) <= 5e-4 && secs < 1.0;
    report("A1", ok, fmt("kappa = %.6f (target 0.369927 +- 5e-4), %.3f s", rep.kappa, secs));
}

// A2: third list: kappa = 0.410725 +- 5e-4; the closer c12 variant is recorded
static void a2() {
    MollifierConfig cfg = preset_cfg("thm2");
    cfg.c12_variant = C12Variant::ell_minus_1;
    double k_lm1 = eval_total(cfg).kappa;
    cfg.c12_variant = C12Variant::ell;
    double k_l = eval_total(cfg).kappa;
    const double target = 0.410725;
    const char* closer = std::abs(k_lm1 - target) <= std::abs(k_l - target)
                             ? "ell_minus_1" : "ell";
    bool ok = std::min(std::abs(k_lm1 - target), std::abs(k_l - target)) <= 5e-4;
    report("A2", ok,
           fmt("kappa = %.6f (ell_minus_1) / %.6f (ell), target 0.410725 +- 5e-4; "
               "recorded default: %s",
               k_lm1, k_l, closer));
}

// A3: kappa* lists: 0.359991 +- 1e-3 and 0.403211 +- 1e-3
static void a3() {
    double k1 = eval_kappa_star(preset_cfg("thm1-star")).kappa;
    double k2 = eval_kappa_star(preset_cfg("thm2-star")).kappa;
    bool ok1 = std::abs(k1 - 0.359991) <= 1e-3;
    bool ok2 = std::abs(k2 - 0.403211) <= 1e-3;
    std::string note = (ok1 && ok2)
                           ? ""
                           : " [open question: documented failure, see README reproduction status]";
    report("A3", ok1 && ok2,
           fmt("kappa* = %.6f (target 0.359991) and %.6f (target 0.403211)%s", k1, k2,
               note.c_str()));
}

// A4: Conrey baselines with P_l == 0: kappa >= 0.3655 at theta1 = 1/2 and
// >= 0.4085 at theta1 = 4/7, within 2000 x 8, runtime < 2 min
static void a4() {
    auto t0 = clk::now();
    SearchSpace half;
    half.p1_degree = 4;
    half.pl_degrees = {0, 0};
    half.q_odd_terms = 3;
    half.theta1 = 0.5;
    half.theta2 = 0.5;
    double k_half = optimize_kappa(half, 2000, 8, 1).best_kappa;

    SearchSpace fs = half;
    fs.theta1 = 4.0 / 7.0;
    fs.theta2 = 3.0 / 7.0;
    double k_47 = optimize_kappa(fs, 2000, 8, 1).best_kappa;
    double secs = seconds_since(t0);
    bool ok = k_half >= 0.3655 && k_47 >= 0.4085 && secs < 120.0;
    report("A4", ok,
           fmt("kappa = %.6f (>= 0.3655 at 1/2), %.6f (>= 0.4085 at 4/7), %.1f s", k_half, k_47,
               secs));
}

// A5: table rows: base/increment within +-0.05 pp of (36.58, 0.4127) and
// (40.88, 0.1925)
static void a5() {
    struct Row {
        const char* preset;
        double th1, th2, base_pct, inc_pct;
    } rows[] = {
        {"thm1", 0.5, 0.5, 36.58, 0.4127},
        {"thm2", 4.0 / 7.0, 3.0 / 7.0, 40.88, 0.1925},
    };
    bool all = true;
    std::string detail;
    for (const Row& r : rows) {
        RunConfig rc = parse_config_text(presets().at(r.preset));
        SearchSpace base = rc.space;
        base.theta1 = r.th1;
        base.theta2 = r.th2;
        base.pl_degrees.assign(base.pl_degrees.size(), 0);
        double kb = optimize_kappa(base, 2000, 8, 1).best_kappa;

        SearchSpace full = rc.space;
        full.theta1 = r.th1;
        full.theta2 = r.th2;
        full.warm = pack(full, rc.moll);
        double kf = optimize_kappa(full, 2000, 8, 1).best_kappa;

        double base_pct = 100.0 * kb;
        double inc_pct = 100.0 * (kf - kb);
        bool okb = std::abs(base_pct - r.base_pct) <= 0.05;
        bool oki = std::abs(inc_pct - r.inc_pct) <= 0.05;
        bool oknn = inc_pct >= -1e-9;  // increment cannot be negative
        all = all && okb && oki && oknn;
        detail += fmt("[%s base %.4f%% (target %.2f), inc %+.4f%% (target %.4f)] ", r.preset,
                      base_pct, r.base_pct, inc_pct, r.inc_pct);
    }
    report("A5", all, detail);
}

// A6: closed forms vs quadrature + finite-difference oracle on 20 random
// valid configs, relative error <= 1e-6
static void a6() {
    std::mt19937_64 rng(20240);
    std::uniform_real_distribution<double> coef(-0.6, 0.6), rr(0.5, 1.5);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        MollifierConfig c;
        c.K = 3;
        c.P1 = p1_from_shifted_basis({coef(rng), coef(rng), coef(rng), coef(rng)});
        c.Pl = {pl_from_linear_basis({coef(rng), coef(rng)}),
                pl_from_linear_basis({coef(rng), coef(rng)})};
        std::vector<double> q = {coef(rng), coef(rng)};
        c.Q = q_from_odd_basis(1.0 - q[0] - q[1], q);
        c.R = rr(rng);
        c.theta1 = 0.5;
        c.theta2 = 0.45;
        c.validate();
        const double v11 = eval_c11(c.P1, c.Q, c.R, c.theta1);
        const double v12 = eval_c12(c);
        const double v22 = eval_c22(c);
        const double q11 = oracle::c11_quad(c.P1, c.Q, c.R, c.theta1);
        const double q12 = oracle::c12_quad(c);
        const double q22 = oracle::c22_quad(c);
        worst = std::max(worst, std::abs(v11 - q11) / std::max(1e-2, std::abs(q11)));
        worst = std::max(worst, std::abs(v12 - q12) / std::max(1e-2, std::abs(q12)));
        worst = std::max(worst, std::abs(v22 - q22) / std::max(1e-2, std::abs(q22)));
    }
    report("A6", worst <= 1e-6, fmt("worst relative deviation %.2e (<= 1e-6)", worst));
}

// A7: identity suite
static void a7() {
    bool ok = true;
    std::string detail;

    nt::ArithTable t210 = nt::build_table(256, 2);
    double worst23 = 0.0;
    for (std::int64_t h1 = 1; h1 <= 210; ++h1) {
        if (t210.mu[h1] == 0) continue;
        for (std::int64_t h2 = 1; h2 <= 210; ++h2) {
            if (t210.mu[h2] == 0) continue;
            for (int l1 = 0; l1 <= 3; ++l1)
                for (int l2 = 0; l2 <= 3; ++l2) {
                    auto [a, b] = nt::verify_combinatorial_identity(t210, h1, h2, l1, l2);
                    worst23 = std::max(worst23, std::abs(a - b) / std::max(1.0, std::abs(a)));
                }
        }
    }
    ok = ok && worst23 <= 1e-12;
    detail += fmt("[tuple identity %.1e] ", worst23);

    nt::ArithTable t1e4 = nt::build_table(10000, 2);
    double dev_l2 = nt::verify_lambda2_identity(t1e4, 10000);
    ok = ok && dev_l2 <= 1e-9;
    detail += fmt("[Lambda_2 %.1e] ", dev_l2);

    double worst_res = 0.0;
    for (double beta : {0.0, 0.3, 0.6})
        for (int j : {1, 2, 3})
            for (double q : {2.0, 2.718281828459045, 10.0})
                for (int m : {0, 1}) {
                    auto [a, b] = nt::verify_residue_formula(beta, m, j, q);
                    worst_res = std::max(worst_res, std::abs(a - b));
                }
    ok = ok && worst_res <= 1e-10;
    detail += fmt("[residue %.1e] ", worst_res);

    nt::ArithTable t1100 = nt::build_table(1100, 2);
    double worst_af = 0.0;
    for (std::int64_t N : {10LL, 35LL, 60LL}) {
        double a = nt::verify_arithmetic_factor(t1100, 0.5, N);
        double b = nt::arithmetic_factor_bruteforce(t1100, 0.5, N);
        worst_af = std::max(worst_af, std::abs(a - b));
    }
    double s10 = nt::verify_arithmetic_factor(t1100, 0.5, 10);
    double s1000 = nt::verify_arithmetic_factor(t1100, 0.5, 1000);
    bool trend = std::abs(s1000 - 1.0) < std::abs(s10 - 1.0);
    ok = ok && worst_af <= 1e-12 && trend;
    detail += fmt("[arith-factor dev %.1e, |S(1e3)-1| = %.3f < |S(10)-1| = %.3f]", worst_af,
                  std::abs(s1000 - 1.0), std::abs(s10 - 1.0));

    report("A7", ok, detail);
}

// A8: summation-lemma trends, rel_err(1e6) < rel_err(1e3), sieve < 1 min
static void a8() {
    auto t0 = clk::now();
    nt::ArithTable t = nt::build_table(1000000, 3);
    Polynomial u({0.0, 1.0});
    struct Case {
        const char* name;
        nt::ConvSpec spec;
    } cases[] = {
        {"Lambda log", {0, 0, 0, 1}},       // Lemma with the Lambda log n weight
        {"d2", {2, 0, 0, 0}},               // d_k family, k = 2, l = 0
        {"d2*Lambda", {2, 1, 0, 0}},        // k = 2, l = 1
        {"1*Lambda^0*Llog", {1, 0, 0, 1}},  // a = 0
        {"1*Lambda^1*Llog", {1, 1, 0, 1}},  // a = 1
        {"1*Lambda2", {1, 0, 1, 0}},        // a = 0, b = 1
    };
    bool ok = true;
    std::string detail;
    for (const Case& c : cases) {
        auto lo = nt::verify_summation_lemma(t, c.spec, 1e3, 1e6, 0.0, u, u);
        auto hi = nt::verify_summation_lemma(t, c.spec, 1e6, 1e12, 0.0, u, u);
        ok = ok && hi.rel_err < lo.rel_err;
        detail += fmt("[%s %.3f->%.3f] ", c.name, lo.rel_err, hi.rel_err);
    }
    double secs = seconds_since(t0);
    ok = ok && secs < 60.0;
    detail += fmt("%.1f s", secs);
    report("A8", ok, detail);
}

// A9: identical seeds give identical traces (byte-equal CSV)
static void a9() {
    RunConfig rc = parse_config_text(presets().at("thm1"));
    SearchSpace sp = rc.space;
    sp.warm = pack(sp, rc.moll);
    auto render = [&]() {
        OptimResult r = optimize_kappa(sp, 150, 4, 31337);
        std::ostringstream os;
        os.precision(17);
        os << "iteration,kappa\n";
        for (auto& [it, kap] : r.trace) os << it << "," << kap << "\n";
        return os.str();
    };
    std::string t1 = render();
    std::string t2 = render();
    report("A9", t1 == t2, fmt("trace CSV byte-equal across runs (%zu bytes)", t1.size()));
}

int main() {
    std::printf("acceptance criteria\n");
    a1();
    a2();
    a3();
    a4();
    a5();
    a6();
    a7();
    a8();
    a9();
    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
