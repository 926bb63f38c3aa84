#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sbmclique/sbm.hpp"

namespace sbmclique {

// m is treated as a small constant; enumeration cost is pool^(m-2).
inline constexpr int kMinCliqueSize = 3;
inline constexpr int kMaxCliqueSize = 8;

// Clique on vertices {0..m-1} with the edge (0, 1) removed; vertices 0 and 1
// are the anchors.  Edge count is (m+1)(m-2)/2.
struct CliqueTemplate {
  int m = 0;
  std::vector<std::pair<int, int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
};

CliqueTemplate clique_template(int m);

// Anchored clique statistic: sum over injections pi of the m-2 free template
// vertices into `pool` of the product of centered entries along the template
// edges, with the anchors mapped to i and j.  The default pool is all nodes
// except i and j.  Exact for m = 3 (four-way count decomposition), compensated
// summation on the generic path.
double clique_stat(const CenteredMatrix& Y, std::int64_t i, std::int64_t j,
                   int m, std::span<const std::int32_t> pool = {});

// Seeded partition of [n] \ {i, j} into L contiguous chunks of a shuffled
// order; sizes differ by at most one (first (n-2) mod L blocks get the extra
// node).  Stored flat: block l is order[offsets[l] .. offsets[l+1]).
struct BlockPartition {
  std::int64_t i = 0;
  std::int64_t j = 0;
  std::int64_t L = 0;
  std::vector<std::int32_t> order;
  std::vector<std::int64_t> offsets;

  std::span<const std::int32_t> block(std::int64_t l) const {
    return {order.data() + offsets[l],
            static_cast<std::size_t>(offsets[l + 1] - offsets[l])};
  }
  std::int64_t min_block_size() const;
};

BlockPartition block_partition(std::int64_t n, std::int64_t i, std::int64_t j,
                               std::int64_t L, std::uint64_t seed);

// Per-block restriction of the statistic; entry l uses only nodes of block l.
std::vector<double> partial_stats(const CenteredMatrix& Y, std::int64_t i,
                                  std::int64_t j, int m,
                                  const BlockPartition& blocks);

}  // namespace sbmclique
