#pragma once
// Constraint-free reparameterization of the coefficient search and a seeded
// Nelder-Mead maximizer of kappa with restarts.

#include <cstdint>
#include <optional>
#include <vector>

#include "moll/functional.hpp"

namespace moll {

struct SearchSpace {
    int p1_degree = 4;              // free coefficients a_1..a_d of P1 = x + sum a_i x(1-x)^i
    std::vector<int> pl_degrees;    // per l = 2..K: number of free b_j in sum b_j x^j, j >= 1
    int q_odd_terms = 3;            // m: Q = q0 + sum_{i<=m} q_i (1-2x)^{2i-1}, q0 = 1 - sum q_i
    double r_min = 0.8, r_max = 1.6;
    double theta1 = 0.5, theta2 = 0.5;
    C12Variant c12_variant = C12Variant::ell_minus_1;
    bool kappa_star = false;        // forces q_odd_terms = 1
    std::vector<double> warm;       // optional packed warm start (empty = none)

    // pl_degrees has one entry per l = 2..K (entries may be 0, meaning P_l == 0)
    int K() const { return static_cast<int>(pl_degrees.size()) + 1; }
    int dim() const;
    void check() const;
};

std::vector<double> pack(const SearchSpace& sp, const MollifierConfig& cfg);
// constraints hold by construction; R clamped to [r_min, r_max]
MollifierConfig unpack(const SearchSpace& sp, const std::vector<double>& v);

struct OptimResult {
    MollifierConfig best_config;
    double best_kappa = 0;
    std::vector<std::pair<int, double>> trace;  // (iteration, best-so-far kappa) of winning restart
    int restarts_used = 0;
};

// Nelder-Mead with standard coefficients (1, 2, 0.5, 0.5), initial edge 0.05,
// stop on simplex diameter < 1e-7 or budget iterations. Restarts: warm start
// (when given), the Conrey-degenerate point, then seeded random perturbations.
// Evaluation errors count as -inf. Deterministic given the seed; restarts may
// run in parallel, the merge is an (kappa, restart index) reduction.
OptimResult optimize_kappa(const SearchSpace& sp, int budget, int restarts, std::uint64_t seed);

// objective used by the optimizer (kappa or kappa*, -inf on failure)
double objective_kappa(const SearchSpace& sp, const std::vector<double>& v);

// central finite differences of kappa w.r.t. each packed coordinate
std::vector<double> sensitivity_table(const SearchSpace& sp, const MollifierConfig& cfg, double h);

}  // namespace moll
