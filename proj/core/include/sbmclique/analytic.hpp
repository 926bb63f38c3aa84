#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbmclique {

struct RegimeError : std::domain_error {
  explicit RegimeError(const std::string& what) : std::domain_error(what) {}
};

// n (n-1) ... (n-k+1), evaluated as a descending product of k factors.
double falling_factorial(double n, int k);

// Conditional mean of the anchored clique statistic given that the anchors
// share a community: ((n-2)!/(n-m)!) * (lambda^((m+1)/2) / K)^(m-2).
double clique_mean(std::int64_t n_eff, std::int64_t K, double lambda, int m);

struct VarBounds {
  double same = 0.0;  // bound on var(S | anchors in same community)
  double diff = 0.0;  // bound on var(S | anchors in different communities)
};

// Unconditional-form variance upper bounds.  Hypotheses q <= 1/2 and
// q + 2*lambda <= 1 are enforced; m <= K is not (the expressions stay valid
// upper bounds and the verification grid exercises m > K).
VarBounds clique_var_bounds(std::int64_t n_eff, std::int64_t K, double q,
                            double lambda, int m);

struct RelVarBounds {
  double same = 0.0;  // bound on var / mean^2, same-community conditioning
  double diff = 0.0;
};

// Relative-form bounds, valid when the two growth conditions hold at slack
// rho; throws RegimeError naming the failed condition otherwise.
RelVarBounds prop_var_bounds(double n_eff, std::int64_t K, double q,
                             double lambda, int m, double rho);

// Largest admissible separation for clique size m (constant in n, K).
double lambda_cap_constant(int m);

// Prefactor of the separation threshold for clique size m.
double threshold_prefactor(int m);

struct ConditionCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct SignalCheck {
  int r = 0;
  double log_lhs = 0.0;  // log of min(sqrt(n)/K (lambda/sqrt(q_bar))^r,
                         //            lambda^(r/2) / sqrt(K/n))
  double log_rhs = 0.0;  // -8 c_s r log D
  bool holds = false;
};

// The three conditions of the median-of-means recovery guarantee, with both
// sides reported.  cond1/cond2 hold when lhs >= rhs; the cap when lhs <= rhs.
struct MomConditions {
  ConditionCheck cond1;
  ConditionCheck cond2;
  ConditionCheck lambda_cap;
  bool all() const {
    return cond1.holds && cond2.holds && lambda_cap.holds;
  }
};

MomConditions mom_condition_checks(std::int64_t n, std::int64_t K, double q,
                                   double lambda, int m);

struct RegimeReport {
  std::int64_t n = 0;
  std::int64_t K = 0;
  double q = 0.0;
  double lambda = 0.0;
  int m = 0;
  int D = 0;
  double c_s = 0.0;
  double rho = 0.0;

  MomConditions mom;
  double lambda_cap_const = 0.0;   // admissible-lambda constant for this m
  double threshold_prefac = 0.0;   // threshold prefactor for this m
  ConditionCheck ks;               // lhs = n lambda^2/(lambda+Kq), rhs = K;
                                   // holds means strictly below the threshold
  double recovery_threshold = 0.0;  // (lambda/K + q_bar)^(1 - log_n K)
  ConditionCheck hardness_condition;  // 2 D^(16 c_s) lambda <= threshold
  std::vector<SignalCheck> signal;    // per-r signal condition, r = 1..D
  bool signal_all = false;
  bool feasible = true;
  std::string note;
};

// Always produces a report; infeasible parameter combinations are flagged in
// `feasible`/`note` rather than thrown.
RegimeReport regime_report(std::int64_t n, std::int64_t K, double q,
                           double lambda, int m, int D, double c_s,
                           double rho);

struct ConditionEquivalenceReport {
  bool hypothesis_holds = false;  // hardness condition and log_n(K) >= 1/2
  bool vacuous = false;           // hypothesis failed; no claim made
  std::vector<SignalCheck> per_r;
  bool all_hold = false;
};

// Numerical check that the threshold-style hypothesis implies the per-r
// signal condition for every r in 1..D.  Evaluated in log space so extreme
// separations are handled exactly.
ConditionEquivalenceReport check_condition_equivalence(double n, double K,
                                                       double q, double lambda,
                                                       int D, double c_s);

enum class Conditioning { kSame, kDiff, kNone };

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// Exact conditional moments of the anchored clique statistic by enumerating
// all label assignments of the n-2 free nodes and using per-edge conditional
// moments.  Independent of the closed-form path; n <= 8 and K^(n-2) <= 1e7.
Moments brute_moments(int n, std::int64_t K, double q, double lambda, int m,
                      Conditioning conditioning);

namespace detail {
// Re-derivations with a different association order, used to guard against
// transcription slips in the primary implementations.
double clique_mean_alt(std::int64_t n_eff, std::int64_t K, double lambda,
                       int m);
VarBounds clique_var_bounds_alt(std::int64_t n_eff, std::int64_t K, double q,
                                double lambda, int m);
double lambda_cap_constant_alt(int m);
double threshold_prefactor_alt(int m);
}  // namespace detail

}  // namespace sbmclique
