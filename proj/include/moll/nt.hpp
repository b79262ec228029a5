#pragma once
// Sieve-backed exact arithmetic functions and brute-force verification of the
// discrete identities and summation lemmas behind the functional.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "moll/poly.hpp"

namespace moll::nt {

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArithTable {
    std::int64_t limit = 0;
    std::vector<std::int8_t> mu;                     // Moebius, {-1,0,1}
    std::vector<double> lambda;                      // von Mangoldt (units of log)
    std::map<int, std::vector<double>> lambda_k;     // Lambda_k = mu * log^k, k >= 1
    std::map<int, std::vector<std::int64_t>> d_k;    // k-fold divisor counts, k >= 1

    const std::vector<double>& Lk(int k) const { return lambda_k.at(k); }
};

// Linear sieve plus the recursion Lambda_{k+1} = Lambda_k log + Lambda * Lambda_k.
// N <= 1e8 (memory guard).
ArithTable build_table(std::int64_t N, int kmax = 3);

// (f*g)(n) = sum_{d|n} f(d) g(n/d); arrays indexed 1..N with [0] ignored.
// The default dispatches to the OpenMP kernel when built with OpenMP; both give
// bit-identical results (each output cell accumulates in ascending divisor order).
std::vector<double> dirichlet_convolve_serial(const std::vector<double>& f,
                                              const std::vector<double>& g);
std::vector<double> dirichlet_convolve(const std::vector<double>& f, const std::vector<double>& g);

// max_{n<=N} |Lambda_2(n) - Lambda(n)log n - (Lambda*Lambda)(n)|
double verify_lambda2_identity(const ArithTable& t, std::int64_t N);

// Both sides of the square-free combinatorial identity, by enumeration over
// ordered tuples of distinct primes. Throws if h1 or h2 is not square-free.
std::pair<double, double> verify_combinatorial_identity(const ArithTable& t, std::int64_t h1,
                                                        std::int64_t h2, int l1, int l2);

// S(N) = sum over h,k,m,n <= N with hm = kn of mu(h)mu(k) (hkmn)^{-1/2-z},
// grouped on the common product hm = kn <= N^2. Guard N <= 3000.
double verify_arithmetic_factor(const ArithTable& t, double z, std::int64_t N);
// the same sum by a naive quadruple loop (test oracle), N <= 200
double arithmetic_factor_bruteforce(const ArithTable& t, double z, std::int64_t N);

// weight = leading * Lambda^{*a} * Lambda_2^{*b} * (Lambda log)^{*llp}
// leading: 0 = Dirichlet identity, 1 = all ones (= d_1), k >= 2 = d_k
struct ConvSpec {
    int leading = 1;
    int lambda_power = 0;        // a
    int lambda2_power = 0;       // b
    int lambda_log_power = 0;    // in {0,1}
};

struct SummationResult {
    double lhs = 0, rhs_main = 0, rel_err = 0;
};

// LHS = sum_{n<=z} w(n)/n^{1+s} F(log(x/n)/log x) H(log(z/n)/log z) by sieve;
// RHS main term = C (log z)^m / ((m-1)! z^s) int_0^1 (1-u)^{m-1}
//   F(1-(1-u) log z/log x) H(u) z^{us} du  with m = k + a + 2b + 2 llp, C = 2^b.
SummationResult verify_summation_lemma(const ArithTable& t, const ConvSpec& spec, double z,
                                       double x, double s, const Polynomial& F,
                                       const Polynomial& H);

// (1/2pi i) oint (beta+u)^m q^u du/u^{j+1} on the unit circle (1024 nodes)
// against the closed form (1/j!) d^m/dy^m [e^{beta y}(y + log q)^j]|_{y=0}.
// m in {0,1}; |beta| < 1 so the contour encloses -beta.
std::pair<double, double> verify_residue_formula(double beta, int m, int j, double q);

}  // namespace moll::nt
