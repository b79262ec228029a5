#pragma once
// The mollified-second-moment functional: c11, c12, c22, the total
// c = c11 + 2 c12 + c22 and the lower bound kappa = 1 - log(c)/R.

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "moll/poly.hpp"

namespace moll {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The second c12 term carries (1-u)^{l-1} in one statement of the source
// material and (1-u)^l in another; both are kept behind this switch.
enum class C12Variant { ell_minus_1, ell };

struct MollifierConfig {
    int K = 2;                 // cap of the l-sum, l = 2..K
    double R = 1.3;            // Levinson shift parameter
    double theta1 = 0.5;       // in (0, 4/7]
    double theta2 = 0.5;       // in (0, 1/2]
    Polynomial P1;             // P1(0)=0, P1(1)=1
    std::vector<Polynomial> Pl;  // Pl[i] is P_{i+2}; P_l(0)=0
    Polynomial Q;              // Q(0)=1, Q(x)+Q(1-x) constant
    C12Variant c12_variant = C12Variant::ell_minus_1;

    const Polynomial& P(int l) const { return Pl.at(static_cast<std::size_t>(l - 2)); }
    // throws ValidationError naming the offending field
    void validate() const;
};

// (l1, l2, k) for c22 contributions; c12 per-l terms use (l, 0, -1).
struct TermKey {
    int l1 = 0, l2 = 0, k = -1;
    bool operator<(const TermKey& o) const {
        return std::tie(l1, l2, k) < std::tie(o.l1, o.l2, o.k);
    }
};

struct FunctionalReport {
    double c11 = 0, c12 = 0, c22 = 0, c_total = 0, kappa = 0;
    bool kappa_star = false;
    std::map<TermKey, double> term_breakdown;
};

double eval_c11(const Polynomial& P1, const Polynomial& Q, double R, double theta1);
double eval_c12(const MollifierConfig& cfg, std::map<TermKey, double>* breakdown = nullptr);
double eval_c22(const MollifierConfig& cfg, std::map<TermKey, double>* breakdown = nullptr);
FunctionalReport eval_total(const MollifierConfig& cfg);
// identical computation, restricted to linear Q (the kappa* convention)
FunctionalReport eval_kappa_star(const MollifierConfig& cfg);

// Shifted constants c11(alpha,beta), c12(alpha,beta), c22(alpha,beta) with the
// explicit y1^{-beta x - alpha y} / T^{-v(alpha+beta)} factors and no Q (Q only
// enters through the operator substitution). Needs logT to give y_i = T^theta_i
// a scale. At alpha = beta = -R/logT these reproduce eval_* for Q == 1.
struct ShiftedTerms {
    double c11 = 0, c12 = 0, c22 = 0;
};
ShiftedTerms eval_c_shifted(const MollifierConfig& cfg, double alpha, double beta, double logT);

inline double kappa_from_c(double c_total, double R) {
    if (!(c_total > 0.0)) throw EvaluationError("c_total <= 0: config outside the method's validity");
    return 1.0 - std::log(c_total) / R;
}

}  // namespace moll
