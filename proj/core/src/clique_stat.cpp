#include "sbmclique/clique_stat.hpp"

#include <stdexcept>

#include "sbmclique/rng.hpp"
#include "sbmclique/summation.hpp"

namespace sbmclique {

CliqueTemplate clique_template(int m) {
  if (m < kMinCliqueSize)
    throw std::invalid_argument("clique_template: m must be >= 3");
  if (m > kMaxCliqueSize)
    throw std::invalid_argument("clique_template: m must be <= 8");
  CliqueTemplate t;
  t.m = m;
  for (int u = 0; u < m; ++u) {
    for (int v = u + 1; v < m; ++v) {
      if (u == 0 && v == 1) continue;
      t.edges.emplace_back(u, v);
    }
  }
  return t;
}

namespace {

double stat_m3(const CenteredMatrix& Y, std::int64_t i, std::int64_t j,
               std::span<const std::int32_t> pool) {
  // S = sum_k Y_ik Y_jk decomposes exactly over the four bit combinations.
  const Graph& g = Y.graph();
  std::int64_t counts[4] = {0, 0, 0, 0};
  for (std::int32_t k : pool) {
    const int c = (g.edge(i, k) ? 2 : 0) | (g.edge(j, k) ? 1 : 0);
    ++counts[c];
  }
  const double a = Y.value_for_bit(false);  // -q
  const double b = Y.value_for_bit(true);   // 1-q
  return static_cast<double>(counts[3]) * b * b +
         static_cast<double>(counts[1] + counts[2]) * a * b +
         static_cast<double>(counts[0]) * a * a;
}

// Ordered-tuple recursion; level d places free template vertex d+2.  The
// partial product at level d already contains every template edge among
// {anchors, placed vertices}, so a leaf contributes its product directly.
struct TupleEnumerator {
  const CenteredMatrix& Y;
  std::int64_t i, j;
  int free_vertices;
  std::span<const std::int32_t> pool;
  std::vector<std::int32_t> chosen;
  std::vector<char> used;
  CompensatedSum acc;

  TupleEnumerator(const CenteredMatrix& y, std::int64_t a, std::int64_t b,
                  int m, std::span<const std::int32_t> p)
      : Y(y), i(a), j(b), free_vertices(m - 2), pool(p) {
    chosen.resize(free_vertices);
    used.assign(pool.size(), 0);
  }

  void run(int depth, double product) {
    if (depth == free_vertices) {
      acc.add(product);
      return;
    }
    for (std::size_t t = 0; t < pool.size(); ++t) {
      if (used[t]) continue;
      const std::int32_t k = pool[t];
      double factor = Y(i, k) * Y(j, k);
      for (int d = 0; d < depth; ++d) factor *= Y(chosen[d], k);
      used[t] = 1;
      chosen[depth] = k;
      run(depth + 1, product * factor);
      used[t] = 0;
    }
  }
};

}  // namespace

double clique_stat(const CenteredMatrix& Y, std::int64_t i, std::int64_t j,
                   int m, std::span<const std::int32_t> pool) {
  if (m < kMinCliqueSize || m > kMaxCliqueSize)
    throw std::invalid_argument("clique_stat: m out of range [3,8]");
  if (i == j) throw std::invalid_argument("clique_stat: i == j");
  const std::int64_t n = Y.size();
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("clique_stat: node out of range");

  std::vector<std::int32_t> full;
  if (pool.empty()) {
    full.reserve(n - 2);
    for (std::int64_t k = 0; k < n; ++k) {
      if (k != i && k != j) full.push_back(static_cast<std::int32_t>(k));
    }
    pool = full;
  }
  if (static_cast<std::int64_t>(pool.size()) < m - 2)
    throw std::invalid_argument("clique_stat: pool smaller than m - 2");

  if (m == 3) return stat_m3(Y, i, j, pool);

  TupleEnumerator e(Y, i, j, m, pool);
  e.run(0, 1.0);
  return e.acc.value();
}

std::int64_t BlockPartition::min_block_size() const {
  std::int64_t best = offsets[1] - offsets[0];
  for (std::size_t l = 1; l + 1 < offsets.size(); ++l) {
    const std::int64_t s = offsets[l + 1] - offsets[l];
    if (s < best) best = s;
  }
  return best;
}

BlockPartition block_partition(std::int64_t n, std::int64_t i, std::int64_t j,
                               std::int64_t L, std::uint64_t seed) {
  if (L <= 0) throw std::invalid_argument("block_partition: L must be >= 1");
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("block_partition: bad pair");
  if (L > n - 2)
    throw std::invalid_argument("block_partition: more blocks than nodes");

  BlockPartition part;
  part.i = i;
  part.j = j;
  part.L = L;
  part.order.reserve(n - 2);
  for (std::int64_t k = 0; k < n; ++k) {
    if (k != i && k != j) part.order.push_back(static_cast<std::int32_t>(k));
  }

  const std::uint64_t lo = static_cast<std::uint64_t>(i < j ? i : j);
  const std::uint64_t hi = static_cast<std::uint64_t>(i < j ? j : i);
  rng::SplitMix64 engine(rng::key(seed, rng::Stream::kPairShuffle, lo, hi));
  for (std::size_t t = part.order.size() - 1; t > 0; --t) {
    const std::size_t s = engine.below(t + 1);
    std::swap(part.order[t], part.order[s]);
  }

  const std::int64_t pool = n - 2;
  const std::int64_t base = pool / L;
  const std::int64_t rem = pool % L;
  part.offsets.resize(L + 1);
  part.offsets[0] = 0;
  for (std::int64_t l = 0; l < L; ++l) {
    part.offsets[l + 1] = part.offsets[l] + base + (l < rem ? 1 : 0);
  }
  return part;
}

std::vector<double> partial_stats(const CenteredMatrix& Y, std::int64_t i,
                                  std::int64_t j, int m,
                                  const BlockPartition& blocks) {
  if (blocks.min_block_size() < m - 2)
    throw std::invalid_argument("partial_stats: block smaller than m - 2");
  std::vector<double> out;
  out.reserve(blocks.L);
  for (std::int64_t l = 0; l < blocks.L; ++l) {
    out.push_back(clique_stat(Y, i, j, m, blocks.block(l)));
  }
  return out;
}

}  // namespace sbmclique
