#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sbmclique/clique_stat.hpp"
#include "sbmclique/sbm.hpp"

namespace sbmclique {

// Configuration for the pairwise median-of-means estimator.  L = 0 selects
// the default ceil(24 ln n) blocks; the threshold always uses the minimum
// block size.
struct MomConfig {
  int m = 3;
  std::int64_t L = 0;
  std::int64_t K = 0;
  double q = 0.0;
  double lambda = 0.0;
  std::uint64_t seed = 0;

  std::int64_t effective_blocks(std::int64_t n) const;
  void validate(std::int64_t n) const;
};

// Lower median: sorted element at 0-based index floor((len-1)/2).
double lower_median(std::span<const double> values);

struct PairEstimate {
  double median = 0.0;
  double threshold = 0.0;  // half the expected same-community block mean
  bool same = false;       // median strictly above the threshold
  double x_hat = 0.0;      // same ? 1 - 1/K : -1/K
};

PairEstimate pair_estimate(const CenteredMatrix& Y, std::int64_t i,
                           std::int64_t j, const MomConfig& cfg);

// Disjoint node sets covering [0, n).
struct Partition {
  std::vector<std::vector<std::int32_t>> classes;

  static Partition from_labels(std::span<const std::int32_t> labels);
  // Sorts members and orders classes by smallest member.
  void normalize();
  std::int64_t cover_size() const;
};

Partition partition_from_assignment(const Assignment& z);

// Full pipeline: estimate all pairs, then return the connected components of
// the estimated co-membership graph.  Deterministic in (Y, cfg); pair work is
// parallelized internally, component extraction is single-threaded.
Partition recover(const CenteredMatrix& Y, const MomConfig& cfg);

struct RecoveryStats {
  Partition partition;
  // Fraction of pairs whose estimate matches the truth (only when truth is
  // supplied; otherwise NaN).
  double pair_success_rate = 0.0;
};

RecoveryStats recover_with_stats(const CenteredMatrix& Y, const MomConfig& cfg,
                                 const Assignment* truth);

// Minimum over label matchings of the average symmetric difference,
// (1/2n) min_pi sum_k |truth_k  est_pi(k)| with empty-set padding; solved
// exactly as a maximum-weight assignment on intersection sizes.
double clustering_error(const Partition& est, const Partition& truth,
                        std::int64_t n);

// Serialized recovery result:
// {"n":..,"K":..,"m":..,"communities":[[..],..],"error":<float or null>}.
std::string recovery_result_json(const Partition& partition, std::int64_t n,
                                 std::int64_t K, int m,
                                 std::optional<double> error);

}  // namespace sbmclique
