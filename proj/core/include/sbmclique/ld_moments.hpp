#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sbmclique/ld_templates.hpp"

namespace sbmclique {

struct LdParams {
  std::int64_t K = 0;
  double q = 0.0;
  double lambda = 0.0;

  double q_bar() const { return q * (1.0 - q); }
  double p_bar() const { return q_bar() + lambda * (1.0 - 2.0 * q); }
  void validate() const;
};

// Parameter-independent structure of a labeled product moment
// E[prod_{e in singles} Y_e * prod_{e in doubles} Y_e^2].
//
// Vertices of the symmetric part must share a community label within each
// connected component; the remaining vertices are free.  The expectation is
// a sum over set partitions of those "slots" with falling-factorial weights
// in K, so one analysis serves every (K, q, lambda).
struct MomentShape {
  int singles = 0;
  int doubles = 0;
  int vstar = 0;        // labels incident to at least one edge
  int slots = 0;        // component slots + free vertices
  int always_within = 0;  // doubled edges internal to one component
  // counts[j][r]: number of slot partitions with j tracked doubled edges
  // inside a block and r blocks.  Empty when there are no tracked edges.
  std::vector<std::vector<double>> counts;

  double evaluate(const LdParams& params) const;
};

MomentShape analyze_labeled_moment(
    std::span<const std::pair<int, int>> singles,
    std::span<const std::pair<int, int>> doubles);

double labeled_moment(std::span<const std::pair<int, int>> singles,
                      std::span<const std::pair<int, int>> doubles,
                      const LdParams& params);

// E[P_{G,pi}] = lambda^{|E|} K^{-(|V*| - #components)}; labeling-independent.
double expected_P(const Template& g, std::int64_t K, double lambda);

// E[P_{G,pi}^2] via the partition engine.
double second_moment(const Template& g, const LdParams& params);

// E[P_{G1,pi1} P_{G2,pi2}] for any labelings compatible with the matching.
double cross_moment(const Template& g1, const Template& g2,
                    const MatchingInfo& m, const LdParams& params);

struct CorrelationCheck {
  double ratio = 0.0;
  double bound = 0.0;
  bool holds = false;
};

// Normalized cross-moment against the product bound
// min((lambda/sqrt(q_bar))^{|E_delta|} / K^{|U1|+|U2|},
//     lambda^{|E_delta|/2} / K^{(|U1|+|U2|)/2});
// requires the matching to lie in the star collection and q <= 1/2,
// q + 2 lambda <= 1.
CorrelationCheck pair_correlation_check(const Template& g1, const Template& g2,
                                        const MatchingInfo& m,
                                        const LdParams& params);

// First-moment version for a connected template: E[P]/sqrt(E[P^2]) against
// the same bound with |E_delta| -> |E| and |U1|+|U2| -> |V|-1.
CorrelationCheck single_correlation_check(const Template& g,
                                          const LdParams& params);

}  // namespace sbmclique
