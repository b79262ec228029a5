// Command-line front end: evaluate the functional, search for better
// coefficients, run the verification suites and reproduce the summary table.
//
// Exit codes: 0 ok, 2 parse error, 3 validation error, 4 evaluation error,
// 5 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "moll/config.hpp"
#include "moll/nt.hpp"
#include "moll/optimize.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitEvaluation = 4;
constexpr int kExitVerify = 5;

moll::RunConfig load(const std::string& config_path, const std::string& preset) {
    if (!preset.empty()) {
        const auto& m = moll::presets();
        auto it = m.find(preset);
        if (it == m.end()) throw moll::ParseError("unknown preset: " + preset);
        return moll::parse_config_text(it->second);
    }
    if (config_path.empty()) throw moll::ParseError("need --config FILE or --preset NAME");
    return moll::parse_config_file(config_path);
}

int cmd_eval(const std::string& config_path, const std::string& preset,
             const std::string& breakdown_csv) {
    moll::RunConfig rc = load(config_path, preset);
    rc.moll.validate();
    moll::FunctionalReport rep =
        rc.kappa_star ? moll::eval_kappa_star(rc.moll) : moll::eval_total(rc.moll);
    std::printf("c11   = %.6f\n", rep.c11);
    std::printf("c12   = %.6f\n", rep.c12);
    std::printf("c22   = %.6f\n", rep.c22);
    std::printf("c     = %.6f\n", rep.c_total);
    std::printf("%s = %.6f\n", rep.kappa_star ? "kappa*" : "kappa", rep.kappa);
    if (!breakdown_csv.empty()) {
        std::ofstream out(breakdown_csv);
        if (!out) throw moll::EvaluationError("cannot write " + breakdown_csv);
        out << "kind,l1,l2,k,value\n";
        out.precision(17);
        for (const auto& [key, val] : rep.term_breakdown) {
            if (key.k < 0)
                out << "c12," << key.l1 << ",,," << val << "\n";
            else
                out << "c22," << key.l1 << "," << key.l2 << "," << key.k << "," << val << "\n";
        }
    }
    return 0;
}

int cmd_optimize(const std::string& config_path, const std::string& preset, int iters,
                 int restarts, std::uint64_t seed, const std::string& out_cfg,
                 const std::string& trace_csv, bool quiet = false, double* kappa_out = nullptr) {
    moll::RunConfig rc = load(config_path, preset);
    if (iters > 0) rc.budget = iters;
    if (restarts > 0) rc.restarts = restarts;
    if (seed != 0) rc.seed = seed;
    if (rc.warm_start) {
        rc.moll.validate();
        rc.space.warm = moll::pack(rc.space, rc.moll);
    }
    moll::OptimResult res = moll::optimize_kappa(rc.space, rc.budget, rc.restarts, rc.seed);
    if (!quiet) {
        std::printf("best %s = %.6f  (restarts %d, budget %d, seed %llu)\n",
                    rc.kappa_star ? "kappa*" : "kappa", res.best_kappa, res.restarts_used,
                    rc.budget, static_cast<unsigned long long>(rc.seed));
        std::printf("R = %.6f\n", res.best_config.R);
    }
    if (kappa_out) *kappa_out = res.best_kappa;
    if (!trace_csv.empty()) {
        std::ofstream out(trace_csv);
        if (!out) throw moll::EvaluationError("cannot write " + trace_csv);
        out << "iteration,kappa\n";
        out.precision(17);
        for (const auto& [it, kap] : res.trace) out << it << "," << kap << "\n";
    }
    if (!out_cfg.empty()) {
        moll::RunConfig best = rc;
        best.moll = res.best_config;
        std::ofstream out(out_cfg);
        if (!out) throw moll::EvaluationError("cannot write " + out_cfg);
        out << moll::write_config(best);
    }
    return 0;
}

struct SuiteResult {
    bool pass = true;
    void check(const char* name, bool ok, double dev) {
        std::printf("  %-42s %s  (max dev %.3e)\n", name, ok ? "PASS" : "FAIL", dev);
        pass = pass && ok;
    }
};

int cmd_verify(const std::string& suite, std::int64_t limit) {
    using namespace moll;
    SuiteResult out;
    const bool all = suite == "all";

    if (all || suite == "vonmangoldt") {
        std::printf("[vonmangoldt] limit %lld\n", static_cast<long long>(limit));
        nt::ArithTable t = nt::build_table(std::max<std::int64_t>(limit, 100), 3);
        double dev = nt::verify_lambda2_identity(t, limit);
        out.check("Lambda_2 = Lambda log + Lambda*Lambda", dev <= 1e-9, dev);
        // Lambda_k recursion vs direct mu * log^k
        double dev2 = 0.0;
        const std::int64_t n2 = std::min<std::int64_t>(limit, 10000);
        std::vector<double> logk(static_cast<std::size_t>(t.limit) + 1, 0.0);
        for (std::int64_t i = 1; i <= t.limit; ++i) logk[i] = 1.0;
        std::vector<double> mud(static_cast<std::size_t>(t.limit) + 1, 0.0);
        for (std::int64_t i = 1; i <= t.limit; ++i) mud[i] = t.mu[i];
        for (int k = 1; k <= 3; ++k) {
            for (std::int64_t i = 1; i <= t.limit; ++i)
                logk[i] = std::pow(std::log(static_cast<double>(i)), k);
            std::vector<double> direct = nt::dirichlet_convolve(mud, logk);
            for (std::int64_t i = 1; i <= n2; ++i)
                dev2 = std::max(dev2, std::abs(direct[i] - t.Lk(k)[i]));
        }
        out.check("Lambda_k recursion vs mu * log^k (k<=3)", dev2 <= 1e-8, dev2);
    }
    if (all || suite == "combinatorics") {
        std::printf("[combinatorics] square-free h1,h2 <= 210, l <= 3\n");
        nt::ArithTable t = nt::build_table(256, 2);
        double worst = 0.0;
        for (std::int64_t h1 = 1; h1 <= 210; ++h1) {
            if (t.mu[h1] == 0) continue;
            for (std::int64_t h2 = 1; h2 <= 210; ++h2) {
                if (t.mu[h2] == 0) continue;
                for (int l1 = 0; l1 <= 3; ++l1)
                    for (int l2 = 0; l2 <= 3; ++l2) {
                        auto [lhs, rhs] = nt::verify_combinatorial_identity(t, h1, h2, l1, l2);
                        double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
                        worst = std::max(worst, std::abs(lhs - rhs) / scale);
                    }
            }
        }
        out.check("prime-log tuple identity", worst <= 1e-12, worst);
    }
    if (all || suite == "arith-factor") {
        std::printf("[arith-factor]\n");
        nt::ArithTable t = nt::build_table(1100, 2);
        double s1 = nt::verify_arithmetic_factor(t, 0.5, 10);
        double s2 = nt::verify_arithmetic_factor(t, 0.5, 1000);
        out.check("S(1000) closer to 1 than S(10), z=0.5",
                  std::abs(s2 - 1.0) < std::abs(s1 - 1.0), std::abs(s2 - 1.0));
        nt::ArithTable t60 = nt::build_table(100, 2);
        double a = nt::verify_arithmetic_factor(t60, 0.5, 60);
        double b = nt::arithmetic_factor_bruteforce(t60, 0.5, 60);
        out.check("grouped sum matches quadruple loop (N=60)", std::abs(a - b) <= 1e-12,
                  std::abs(a - b));
    }
    if (all || suite == "summation") {
        std::printf("[summation] trend checks z = 1e3 -> min(limit, 1e6)\n");
        const std::int64_t zhi = std::min<std::int64_t>(std::max<std::int64_t>(limit, 100000), 1000000);
        nt::ArithTable t = nt::build_table(zhi, 3);
        const Polynomial u({0.0, 1.0});
        const Polynomial one({1.0});
        struct Case {
            const char* name;
            nt::ConvSpec spec;
        } cases[] = {
            {"Lambda log n", {0, 0, 0, 1}},
            {"d2 * Lambda^{*0}", {2, 0, 0, 0}},
            {"d2 * Lambda^{*1}", {2, 1, 0, 0}},
            {"1 * Lambda^{*0} * Lambda log", {1, 0, 0, 1}},
            {"1 * Lambda^{*1} * Lambda log", {1, 1, 0, 1}},
            {"1 * Lambda_2", {1, 0, 1, 0}},
        };
        for (const auto& c : cases) {
            auto lo = nt::verify_summation_lemma(t, c.spec, 1e3, 1e6, 0.0, u, u);
            auto hi = nt::verify_summation_lemma(t, c.spec, static_cast<double>(zhi),
                                                 static_cast<double>(zhi) * zhi, 0.0, u, u);
            out.check(c.name, hi.rel_err < lo.rel_err, hi.rel_err);
        }
    }
    if (all || suite == "residue") {
        std::printf("[residue] 3x3x3 grid\n");
        double worst = 0.0;
        for (double beta : {0.0, 0.3, 0.6})
            for (int m : {0, 1})
                for (int j : {1, 2, 3})
                    for (double q : {2.718281828459045, 2.0, 10.0}) {
                        auto [ct, cf] = nt::verify_residue_formula(beta, m, j, q);
                        worst = std::max(worst, std::abs(ct - cf));
                    }
        out.check("contour vs closed form", worst <= 1e-10, worst);
    }
    if (!all && suite != "vonmangoldt" && suite != "combinatorics" && suite != "arith-factor" &&
        suite != "summation" && suite != "residue") {
        std::fprintf(stderr, "unknown suite: %s\n", suite.c_str());
        return kExitParse;
    }
    return out.pass ? 0 : kExitVerify;
}

int cmd_table(const std::string& preset_name) {
    // base: P_l == 0 optimum at the fixed thetas; increment: full optimum minus base
    struct Row {
        const char* label;
        double th1, th2;
        const char* warm_preset;
    };
    Row row{};
    if (preset_name == "half-half") {
        row = {"theta1 = theta2 = 1/2", 0.5, 0.5, "thm1"};
    } else if (preset_name == "four-sevenths") {
        row = {"theta1 = 4/7, theta2 = 3/7", 4.0 / 7.0, 3.0 / 7.0, "thm2"};
    } else {
        std::fprintf(stderr, "unknown table preset: %s\n", preset_name.c_str());
        return kExitParse;
    }
    moll::RunConfig rc = moll::parse_config_text(moll::presets().at(row.warm_preset));

    moll::SearchSpace base = rc.space;
    base.theta1 = row.th1;
    base.theta2 = row.th2;
    base.pl_degrees.assign(base.pl_degrees.size(), 0);  // P_l forced to 0
    base.warm.clear();
    moll::OptimResult base_res = moll::optimize_kappa(base, 2000, 8, 1);

    moll::SearchSpace full = rc.space;
    full.theta1 = row.th1;
    full.theta2 = row.th2;
    full.warm = moll::pack(full, rc.moll);
    moll::OptimResult full_res = moll::optimize_kappa(full, 2000, 8, 1);

    const double base_pct = 100.0 * base_res.best_kappa;
    const double inc_pct = 100.0 * (full_res.best_kappa - base_res.best_kappa);
    std::printf("%s\n", row.label);
    std::printf("  base     %.4f%%\n", base_pct);
    std::printf("  increment %+.4f%%\n", inc_pct);
    std::printf("  total    %.4f%%\n", base_pct + inc_pct);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mollified second-moment functional: evaluation, optimization, verification"};
    app.require_subcommand(1);

    std::string config_path, preset, breakdown_csv, out_cfg, trace_csv, suite = "all",
                              table_preset;
    int iters = 0, restarts = 0;
    std::uint64_t seed = 0;
    std::int64_t limit = 10000;

    auto* eval = app.add_subcommand("eval", "evaluate c11, c12, c22, c and kappa");
    eval->add_option("--config", config_path, "config file");
    eval->add_option("--preset", preset, "bundled preset (thm1, thm1-star, thm2, thm2-star)");
    eval->add_option("--breakdown", breakdown_csv, "write per-term CSV");

    auto* opt = app.add_subcommand("optimize", "maximize kappa over the coefficient space");
    opt->add_option("--config", config_path, "config file");
    opt->add_option("--preset", preset, "bundled preset");
    opt->add_option("--iters", iters, "simplex iterations per restart");
    opt->add_option("--restarts", restarts, "number of restarts");
    opt->add_option("--seed", seed, "random seed");
    opt->add_option("--out", out_cfg, "write best config");
    opt->add_option("--trace", trace_csv, "write (iteration, kappa) CSV");

    auto* ver = app.add_subcommand("verify", "run the arithmetic verification suites");
    ver->add_option("--suite", suite,
                    "combinatorics|vonmangoldt|arith-factor|summation|residue|all");
    ver->add_option("--limit", limit, "sieve limit");

    auto* tab = app.add_subcommand("table", "base percentage and two-piece increment");
    tab->add_option("--preset", table_preset, "half-half | four-sevenths")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (eval->parsed()) return cmd_eval(config_path, preset, breakdown_csv);
        if (opt->parsed())
            return cmd_optimize(config_path, preset, iters, restarts, seed, out_cfg, trace_csv);
        if (ver->parsed()) return cmd_verify(suite, limit);
        if (tab->parsed()) return cmd_table(table_preset);
    } catch (const moll::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitParse;
    } catch (const moll::ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const moll::DomainError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return kExitValidation;
    } catch (const moll::nt::ResourceError& e) {
        std::fprintf(stderr, "evaluation error: %s\n", e.what());
        return kExitEvaluation;
    } catch (const moll::EvaluationError& e) {
        std::fprintf(stderr, "evaluation error: %s\n", e.what());
        return kExitEvaluation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitEvaluation;
    }
    return 0;
}
