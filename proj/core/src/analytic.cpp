#include "sbmclique/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "sbmclique/clique_stat.hpp"

namespace sbmclique {

double falling_factorial(double n, int k) {
  double out = 1.0;
  for (int t = 0; t < k; ++t) out *= n - static_cast<double>(t);
  return out;
}

namespace {

double int_factorial(int k) {
  double out = 1.0;
  for (int t = 2; t <= k; ++t) out *= static_cast<double>(t);
  return out;
}

void require_clique_domain(double n_eff, std::int64_t K, int m) {
  if (m < 3) throw RegimeError("clique moment: m must be >= 3");
  if (n_eff < m) throw RegimeError("clique moment: n_eff must be >= m");
  if (K < 2) throw RegimeError("clique moment: K must be >= 2");
}

}  // namespace

double clique_mean(std::int64_t n_eff, std::int64_t K, double lambda, int m) {
  require_clique_domain(static_cast<double>(n_eff), K, m);
  if (!(lambda > 0.0)) throw RegimeError("clique_mean: lambda must be > 0");
  const double per_node =
      std::pow(lambda, (m + 1) / 2.0) / static_cast<double>(K);
  double out = std::pow(per_node, m - 2);
  for (int t = 2; t < m; ++t) out *= static_cast<double>(n_eff - t);
  return out;
}

double detail::clique_mean_alt(std::int64_t n_eff, std::int64_t K,
                               double lambda, int m) {
  require_clique_domain(static_cast<double>(n_eff), K, m);
  // Log-space evaluation, ascending factor order.
  double log_fall = 0.0;
  for (int t = m - 1; t >= 2; --t)
    log_fall += std::log(static_cast<double>(n_eff - t));
  const double log_val =
      log_fall + (m - 2) * ((m + 1) / 2.0 * std::log(lambda) -
                            std::log(static_cast<double>(K)));
  return std::exp(log_val);
}

VarBounds clique_var_bounds(std::int64_t n_eff, std::int64_t K, double q,
                            double lambda, int m) {
  require_clique_domain(static_cast<double>(n_eff), K, m);
  if (!(q > 0.0 && q <= 0.5))
    throw RegimeError("clique_var_bounds: requires 0 < q <= 1/2");
  if (!(lambda > 0.0 && q + 2.0 * lambda <= 1.0))
    throw RegimeError("clique_var_bounds: requires q + 2*lambda <= 1");

  const double n = static_cast<double>(n_eff);
  const double Kd = static_cast<double>(K);
  const double q_bar = q * (1.0 - q);
  const double p_bar = q_bar + lambda * (1.0 - 2.0 * q);
  const double front = falling_factorial(n - 2.0, m - 2) * int_factorial(m - 2);
  const double half_edges = (m + 1) * (m - 2) / 2.0;  // |E| of the template
  const double ratio = q_bar / p_bar;                 // in (0, 1]
  const double mix =
      std::pow((m - 2) / Kd + std::pow(ratio, (m + 1) / 2.0), m - 2);

  VarBounds out;
  out.same = front * std::pow(p_bar, half_edges) * mix +
             front * std::pow(p_bar, 2.0 * half_edges) /
                 std::pow(Kd, 2 * m - 4) *
                 std::pow(n - m + Kd / std::pow(p_bar, (m + 1) / 2.0), m - 2) *
                 std::sqrt(p_bar);
  out.diff = front * std::pow(p_bar, half_edges) *
             (mix * std::pow(ratio, (m + 1) / 2.0) +
              std::pow(ratio, (m - 1) * m / 2.0));
  return out;
}

VarBounds detail::clique_var_bounds_alt(std::int64_t n_eff, std::int64_t K,
                                        double q, double lambda, int m) {
  // Same displayed bounds, assembled in a different order (log space for the
  // power blocks, factors multiplied smallest-first).
  const double n = static_cast<double>(n_eff);
  const double Kd = static_cast<double>(K);
  const double q_bar = q * (1.0 - q);
  const double p_bar = q_bar + lambda * (1.0 - 2.0 * q);
  const double log_p = std::log(p_bar);
  const double log_ratio = std::log(q_bar) - log_p;
  double log_front = 0.0;
  for (int t = 2; t < m; ++t)
    log_front += std::log(n - t) + std::log(static_cast<double>(t));
  const double he = (m + 1) * (m - 2) / 2.0;
  const double mix_base =
      (m - 2) / Kd + std::exp((m + 1) / 2.0 * log_ratio);
  const double term1 =
      std::exp(log_front + he * log_p + (m - 2) * std::log(mix_base));
  const double term2 = std::exp(
      log_front + 2.0 * he * log_p - (2 * m - 4) * std::log(Kd) +
      (m - 2) * std::log(n - m + Kd * std::exp(-(m + 1) / 2.0 * log_p)) +
      0.5 * log_p);
  VarBounds out;
  out.same = term1 + term2;
  out.diff = std::exp(log_front + he * log_p) *
             (std::exp((m - 2) * std::log(mix_base) +
                       (m + 1) / 2.0 * log_ratio) +
              std::exp((m - 1) * m / 2.0 * log_ratio));
  return out;
}

RelVarBounds prop_var_bounds(double n_eff, std::int64_t K, double q,
                             double lambda, int m, double rho) {
  if (m < 3) throw RegimeError("prop_var_bounds: m must be >= 3");
  if (!(rho > 0.0)) throw RegimeError("prop_var_bounds: rho must be > 0");
  if (!(q > 0.0 && q < 1.0 && lambda > 0.0))
    throw RegimeError("prop_var_bounds: bad (q, lambda)");
  const double Kd = static_cast<double>(K);
  const double q_bar = q * (1.0 - q);
  const double growth = 1.0 + q_bar / lambda;
  const double half = (m + 1) / 2.0;
  const double cond1_lhs = (n_eff - 2.0) * std::pow(lambda, half) / Kd;
  const double cond1_rhs = rho * (m - 2.0) * (m - 2.0) * std::pow(growth, half);
  if (!(cond1_lhs >= cond1_rhs))
    throw RegimeError("prop_var_bounds: growth condition 1 fails");
  const double cond2_lhs =
      (n_eff - 2.0) / (Kd * Kd) * std::pow(lambda * lambda / q_bar, half);
  const double cond2_rhs = rho * (m - 2.0);
  if (!(cond2_lhs >= cond2_rhs))
    throw RegimeError("prop_var_bounds: growth condition 2 fails");

  RelVarBounds out;
  out.same = std::pow(2.0 / rho, m - 2) +
             std::pow((m - 2.0) * std::pow(growth, m + 1) + 1.0 / rho, m - 2) *
                 std::sqrt(growth) * std::sqrt(lambda);
  out.diff = std::pow(2.0 / rho, m - 2) + std::pow(1.0 / rho, m - 2);
  return out;
}

double lambda_cap_constant(int m) {
  if (m < 3) throw RegimeError("lambda_cap_constant: m must be >= 3");
  return std::ldexp(1.0, -11) *
         std::pow(std::ldexp(static_cast<double>(m - 2), m + 2),
                  -(2 * m - 4));
}

double detail::lambda_cap_constant_alt(int m) {
  const double log2 = std::log(2.0);
  return std::exp(-log2 * (11.0 + (2.0 * m - 4.0) * (m + 2.0)) -
                  (2.0 * m - 4.0) * std::log(static_cast<double>(m - 2)));
}

double threshold_prefactor(int m) {
  if (m < 3) throw RegimeError("threshold_prefactor: m must be >= 3");
  const double inner = 96.0 * (m - 2.0) * (m - 2.0) *
                       std::pow(32.0, 1.0 / (m - 2.0));
  return 2.0 * std::pow(inner, 2.0 / (m + 1.0));
}

double detail::threshold_prefactor_alt(int m) {
  const double log_inner = std::log(96.0) +
                           2.0 * std::log(static_cast<double>(m - 2)) +
                           std::log(32.0) / (m - 2.0);
  return 2.0 * std::exp(2.0 / (m + 1.0) * log_inner);
}

MomConditions mom_condition_checks(std::int64_t n, std::int64_t K, double q,
                                   double lambda, int m) {
  MomConditions out;
  const double nd = static_cast<double>(n);
  const double Kd = static_cast<double>(K);
  const double log_n = std::log(nd);
  const double q_bar = q * (1.0 - q);
  const double growth = 1.0 + q_bar / lambda;
  const double half = (m + 1) / 2.0;
  const double scale = 48.0 * std::pow(32.0, 1.0 / (m - 2.0));

  out.cond1.lhs = (nd - 2.0) * std::pow(lambda, half) / (Kd * log_n);
  out.cond1.rhs = scale * (m - 2.0) * (m - 2.0) * std::pow(growth, half);
  out.cond1.holds = out.cond1.lhs >= out.cond1.rhs;

  out.cond2.lhs =
      (nd - 2.0) / (Kd * Kd * log_n) * std::pow(lambda * lambda / q_bar, half);
  out.cond2.rhs = scale * (m - 2.0);
  out.cond2.holds = out.cond2.lhs >= out.cond2.rhs;

  out.lambda_cap.lhs = lambda;
  out.lambda_cap.rhs = std::pow(32.0, -2.0) *
                       std::pow(growth, -(2.0 * (m + 1.0) * (m - 2.0) + 1.0)) *
                       std::pow(2.0 * m - 4.0, -(2.0 * m - 4.0));
  out.lambda_cap.holds = out.lambda_cap.lhs <= out.lambda_cap.rhs;
  return out;
}

namespace {

std::vector<SignalCheck> signal_checks(double n, double K, double q_bar,
                                       double lambda, int D, double c_s) {
  std::vector<SignalCheck> out;
  const double log_n = std::log(n);
  const double log_K = std::log(K);
  const double log_lambda = std::log(lambda);  // -inf at lambda = 0
  const double log_qbar = std::log(q_bar);
  const double log_D = std::log(static_cast<double>(D));
  for (int r = 1; r <= D; ++r) {
    SignalCheck c;
    c.r = r;
    const double log_a =
        0.5 * log_n - log_K + r * (log_lambda - 0.5 * log_qbar);
    const double log_b = 0.5 * r * log_lambda - 0.5 * (log_K - log_n);
    c.log_lhs = std::min(log_a, log_b);
    c.log_rhs = -8.0 * c_s * r * log_D;
    c.holds = c.log_lhs <= c.log_rhs;
    out.push_back(c);
  }
  return out;
}

}  // namespace

RegimeReport regime_report(std::int64_t n, std::int64_t K, double q,
                           double lambda, int m, int D, double c_s,
                           double rho) {
  RegimeReport rep;
  rep.n = n;
  rep.K = K;
  rep.q = q;
  rep.lambda = lambda;
  rep.m = m;
  rep.D = D;
  rep.c_s = c_s;
  rep.rho = rho;

  if (n < 3 || K < 2 || !(q > 0.0 && q < 1.0) || lambda < 0.0 || m < 3 ||
      D < 2 || !(c_s > 0.0)) {
    rep.feasible = false;
    rep.note = "parameters outside the evaluable domain";
    return rep;
  }
  if (q > 0.5 || q + 2.0 * lambda > 1.0) {
    rep.feasible = false;
    rep.note = "variance-bound hypotheses q <= 1/2, q + 2*lambda <= 1 fail";
  }

  const double nd = static_cast<double>(n);
  const double Kd = static_cast<double>(K);
  const double q_bar = q * (1.0 - q);

  rep.mom = mom_condition_checks(n, K, q, lambda, m);
  rep.lambda_cap_const = lambda_cap_constant(m);
  rep.threshold_prefac = threshold_prefactor(m);

  rep.ks.lhs = nd * lambda * lambda / (lambda + Kd * q);
  rep.ks.rhs = Kd;
  rep.ks.holds = rep.ks.lhs < rep.ks.rhs;

  const double log_nK = std::log(Kd) / std::log(nd);
  const double base = lambda / Kd + q_bar;
  rep.recovery_threshold = std::exp((1.0 - log_nK) * std::log(base));

  rep.hardness_condition.r = 0;
  rep.hardness_condition.log_lhs =
      std::log(2.0) + 16.0 * c_s * std::log(static_cast<double>(D)) +
      std::log(lambda);
  rep.hardness_condition.log_rhs = (1.0 - log_nK) * std::log(base);
  rep.hardness_condition.holds =
      rep.hardness_condition.log_lhs <= rep.hardness_condition.log_rhs;

  rep.signal = signal_checks(nd, Kd, q_bar, lambda, D, c_s);
  rep.signal_all = true;
  for (const auto& c : rep.signal) rep.signal_all = rep.signal_all && c.holds;
  return rep;
}

ConditionEquivalenceReport check_condition_equivalence(double n, double K,
                                                       double q, double lambda,
                                                       int D, double c_s) {
  ConditionEquivalenceReport rep;
  const double q_bar = q * (1.0 - q);
  const double log_nK = std::log(K) / std::log(n);
  const double log_lhs =
      std::log(2.0) + 16.0 * c_s * std::log(static_cast<double>(D)) +
      std::log(lambda);
  const double log_rhs = (1.0 - log_nK) * std::log(lambda / K + q_bar);
  rep.hypothesis_holds = log_nK >= 0.5 && log_lhs <= log_rhs;
  if (!rep.hypothesis_holds) {
    rep.vacuous = true;
    return rep;
  }
  rep.per_r = signal_checks(n, K, q_bar, lambda, D, c_s);
  rep.all_hold = true;
  for (const auto& c : rep.per_r) rep.all_hold = rep.all_hold && c.holds;
  return rep;
}

Moments brute_moments(int n, std::int64_t K, double q, double lambda, int m,
                      Conditioning conditioning) {
  if (n < 3 || n > 8) throw RegimeError("brute_moments: n must be in [3,8]");
  if (m < 3 || m > n) throw RegimeError("brute_moments: need 3 <= m <= n");
  if (!(q > 0.0 && q < 1.0 && lambda > 0.0 && q + lambda <= 1.0))
    throw RegimeError("brute_moments: bad (q, lambda)");
  double combos = 1.0;
  for (int t = 0; t < n - 2; ++t) combos *= static_cast<double>(K);
  if (combos > 1e7) throw RegimeError("brute_moments: K^(n-2) exceeds budget");

  if (conditioning == Conditioning::kNone) {
    // Total-probability mix of the two conditionals on the raw moments.
    const Moments same = brute_moments(n, K, q, lambda, m, Conditioning::kSame);
    const Moments diff = brute_moments(n, K, q, lambda, m, Conditioning::kDiff);
    const double w = 1.0 / static_cast<double>(K);
    const double mean = w * same.mean + (1.0 - w) * diff.mean;
    const double m2_same = same.variance + same.mean * same.mean;
    const double m2_diff = diff.variance + diff.mean * diff.mean;
    const double m2 = w * m2_same + (1.0 - w) * m2_diff;
    return {mean, m2 - mean * mean};
  }

  const double q_bar = q * (1.0 - q);
  const double p_bar = q_bar + lambda * (1.0 - 2.0 * q);

  // Labeled template edge masks per injection, over the n*(n-1)/2 node pairs.
  const CliqueTemplate tmpl = clique_template(m);
  std::vector<int> pool;
  for (int k = 2; k < n; ++k) pool.push_back(k);
  std::vector<std::uint64_t> masks;
  {
    std::vector<int> map(m);
    map[0] = 0;
    map[1] = 1;
    // Recursive enumeration of ordered (m-2)-tuples without repetition.
    std::vector<char> used(pool.size(), 0);
    auto pair_bit = [n](int u, int v) {
      if (u > v) std::swap(u, v);
      return u * n + v;
    };
    auto rec = [&](auto&& self, int depth) -> void {
      if (depth == m - 2) {
        std::uint64_t mask = 0;
        for (const auto& [u, v] : tmpl.edges)
          mask |= std::uint64_t{1} << pair_bit(map[u], map[v]);
        masks.push_back(mask);
        return;
      }
      for (std::size_t t = 0; t < pool.size(); ++t) {
        if (used[t]) continue;
        used[t] = 1;
        map[depth + 2] = pool[t];
        self(self, depth + 1);
        used[t] = 0;
      }
    };
    rec(rec, 0);
  }

  const int edge_bits = static_cast<int>(tmpl.edges.size());
  std::vector<double> lambda_pow(2 * edge_bits + 1, 1.0);
  for (std::size_t t = 1; t < lambda_pow.size(); ++t)
    lambda_pow[t] = lambda_pow[t - 1] * lambda;
  std::vector<double> qbar_pow(edge_bits + 1, 1.0);
  for (std::size_t t = 1; t < qbar_pow.size(); ++t)
    qbar_pow[t] = qbar_pow[t - 1] * q_bar;
  std::vector<double> ratio_pow(edge_bits + 1, 1.0);
  for (std::size_t t = 1; t < ratio_pow.size(); ++t)
    ratio_pow[t] = ratio_pow[t - 1] * (p_bar / q_bar);

  std::vector<int> z(n, 1);
  z[0] = 1;
  z[1] = conditioning == Conditioning::kSame ? 1 : 2;

  double mean_acc = 0.0;
  double second_acc = 0.0;
  std::int64_t assignments = 0;

  // Odometer over labels of the free nodes 2..n-1.
  std::vector<int> digits(n - 2, 1);
  while (true) {
    for (int t = 0; t < n - 2; ++t) z[t + 2] = digits[t];
    std::uint64_t same_mask = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (z[u] == z[v]) same_mask |= std::uint64_t{1} << (u * n + v);
      }
    }
    double mean_z = 0.0;
    for (std::uint64_t mask : masks) {
      if ((mask & ~same_mask) == 0) mean_z += lambda_pow[edge_bits];
    }
    double second_z = 0.0;
    for (std::size_t a = 0; a < masks.size(); ++a) {
      for (std::size_t b = 0; b < masks.size(); ++b) {
        const std::uint64_t inter = masks[a] & masks[b];
        const std::uint64_t delta = masks[a] ^ masks[b];
        if ((delta & ~same_mask) != 0) continue;
        const int d = std::popcount(delta);
        const int c = std::popcount(inter);
        const int cs = std::popcount(inter & same_mask);
        second_z += lambda_pow[d] * qbar_pow[c] * ratio_pow[cs];
      }
    }
    mean_acc += mean_z;
    second_acc += second_z;
    ++assignments;

    int pos = 0;
    while (pos < n - 2 && digits[pos] == K) {
      digits[pos] = 1;
      ++pos;
    }
    if (pos == n - 2) break;
    ++digits[pos];
  }

  const double inv = 1.0 / static_cast<double>(assignments);
  const double mean = mean_acc * inv;
  const double second = second_acc * inv;
  return {mean, second - mean * mean};
}

}  // namespace sbmclique
