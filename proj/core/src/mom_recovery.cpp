#include "sbmclique/mom_recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_map>

#include <json.hpp>

#include "sbmclique/analytic.hpp"
#include "sbmclique/parallel.hpp"
#include "sbmclique/rng.hpp"

namespace sbmclique {

std::int64_t MomConfig::effective_blocks(std::int64_t n) const {
  if (L > 0) return L;
  return static_cast<std::int64_t>(
      std::ceil(24.0 * std::log(static_cast<double>(n))));
}

void MomConfig::validate(std::int64_t n) const {
  if (K < 2) throw std::invalid_argument("MomConfig: K must be >= 2");
  if (m < kMinCliqueSize || m > kMaxCliqueSize)
    throw std::invalid_argument("MomConfig: m out of range [3,8]");
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("MomConfig: q must lie in (0,1)");
  if (lambda < 0.0 || q + lambda > 1.0)
    throw std::invalid_argument("MomConfig: need 0 <= lambda <= 1 - q");
  const std::int64_t blocks = effective_blocks(n);
  if (blocks < 1 || blocks > n - 2)
    throw std::invalid_argument("MomConfig: invalid block count");
  if ((n - 2) / blocks < m - 2)
    throw std::invalid_argument("MomConfig: blocks smaller than m - 2");
}

double lower_median(std::span<const double> values) {
  if (values.empty())
    throw std::invalid_argument("lower_median: empty input");
  std::vector<double> copy(values.begin(), values.end());
  const std::size_t idx = (copy.size() - 1) / 2;
  std::nth_element(copy.begin(), copy.begin() + idx, copy.end());
  return copy[idx];
}

namespace {

double pair_threshold(std::int64_t min_block, const MomConfig& cfg) {
  if (cfg.lambda <= 0.0) return 0.0;
  return 0.5 * clique_mean(min_block + 2, cfg.K, cfg.lambda, cfg.m);
}

PairEstimate decide(double median, double threshold, std::int64_t K) {
  PairEstimate e;
  e.median = median;
  e.threshold = threshold;
  e.same = median > threshold;
  e.x_hat = (e.same ? 1.0 : 0.0) - 1.0 / static_cast<double>(K);
  return e;
}

// Reusable per-thread state for the all-pairs loop.
struct PairWorkspace {
  std::vector<std::int32_t> order;
  std::vector<double> stats;
};

PairEstimate pair_estimate_ws(const CenteredMatrix& Y, std::int64_t i,
                              std::int64_t j, const MomConfig& cfg,
                              std::int64_t L, PairWorkspace& ws) {
  const std::int64_t n = Y.size();
  ws.order.clear();
  for (std::int64_t k = 0; k < n; ++k) {
    if (k != i && k != j) ws.order.push_back(static_cast<std::int32_t>(k));
  }
  const std::uint64_t lo = static_cast<std::uint64_t>(i < j ? i : j);
  const std::uint64_t hi = static_cast<std::uint64_t>(i < j ? j : i);
  rng::SplitMix64 engine(
      rng::key(cfg.seed, rng::Stream::kPairShuffle, lo, hi));
  for (std::size_t t = ws.order.size() - 1; t > 0; --t) {
    const std::size_t s = engine.below(t + 1);
    std::swap(ws.order[t], ws.order[s]);
  }

  const std::int64_t pool = n - 2;
  const std::int64_t base = pool / L;
  const std::int64_t rem = pool % L;

  ws.stats.clear();
  const Graph& g = Y.graph();
  const double a = Y.value_for_bit(false);
  const double b = Y.value_for_bit(true);
  std::int64_t pos = 0;
  for (std::int64_t l = 0; l < L; ++l) {
    const std::int64_t len = base + (l < rem ? 1 : 0);
    if (cfg.m == 3) {
      std::int64_t c11 = 0, c10 = 0, c00 = 0;
      for (std::int64_t t = 0; t < len; ++t) {
        const std::int32_t k = ws.order[pos + t];
        const bool bi = g.edge(i, k);
        const bool bj = g.edge(j, k);
        if (bi && bj) ++c11;
        else if (bi || bj) ++c10;
        else ++c00;
      }
      ws.stats.push_back(static_cast<double>(c11) * b * b +
                         static_cast<double>(c10) * a * b +
                         static_cast<double>(c00) * a * a);
    } else {
      std::span<const std::int32_t> block(ws.order.data() + pos,
                                          static_cast<std::size_t>(len));
      ws.stats.push_back(clique_stat(Y, i, j, cfg.m, block));
    }
    pos += len;
  }
  // Minimum block size is always `base`; the remainder blocks hold one more.
  return decide(lower_median(ws.stats), pair_threshold(base, cfg), cfg.K);
}

}  // namespace

PairEstimate pair_estimate(const CenteredMatrix& Y, std::int64_t i,
                           std::int64_t j, const MomConfig& cfg) {
  const std::int64_t n = Y.size();
  cfg.validate(n);
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("pair_estimate: bad pair");
  PairWorkspace ws;
  return pair_estimate_ws(Y, i, j, cfg, cfg.effective_blocks(n), ws);
}

Partition Partition::from_labels(std::span<const std::int32_t> labels) {
  Partition p;
  std::unordered_map<std::int32_t, std::size_t> index;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto [it, inserted] = index.try_emplace(labels[v], p.classes.size());
    if (inserted) p.classes.emplace_back();
    p.classes[it->second].push_back(static_cast<std::int32_t>(v));
  }
  p.normalize();
  return p;
}

void Partition::normalize() {
  for (auto& c : classes) std::sort(c.begin(), c.end());
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

std::int64_t Partition::cover_size() const {
  std::int64_t total = 0;
  for (const auto& c : classes) total += static_cast<std::int64_t>(c.size());
  return total;
}

Partition partition_from_assignment(const Assignment& z) {
  return Partition::from_labels(z.z);
}

namespace {

struct UnionFind {
  std::vector<std::int32_t> parent;

  explicit UnionFind(std::int64_t n) : parent(n) {
    for (std::int64_t v = 0; v < n; ++v)
      parent[v] = static_cast<std::int32_t>(v);
  }
  std::int32_t find(std::int32_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  // Roots are always the smallest member, so labels are deterministic.
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent[b] = a;
    else parent[a] = b;
  }
};

struct AllPairsResult {
  std::vector<std::uint64_t> same_bits;  // upper-triangle co-membership
  std::int64_t words = 0;
  std::int64_t success = 0;  // pairs matching the truth, when supplied
};

AllPairsResult estimate_all_pairs(const CenteredMatrix& Y,
                                  const MomConfig& cfg,
                                  const Assignment* truth) {
  const std::int64_t n = Y.size();
  cfg.validate(n);
  const std::int64_t L = cfg.effective_blocks(n);
  AllPairsResult res;
  res.words = (n + 63) / 64;
  res.same_bits.assign(static_cast<std::size_t>(n * res.words), 0);

  const int workers = worker_count();
  std::vector<PairWorkspace> ws(workers);
  std::vector<std::int64_t> success(workers, 0);
  parallel_for_strided(
      0, n,
      [&](std::int64_t i, int w) {
        for (std::int64_t j = i + 1; j < n; ++j) {
          const PairEstimate e = pair_estimate_ws(Y, i, j, cfg, L, ws[w]);
          if (e.same) {
            res.same_bits[i * res.words + (j >> 6)] |= std::uint64_t{1}
                                                       << (j & 63);
          }
          if (truth != nullptr &&
              e.same == (truth->z[i] == truth->z[j])) {
            ++success[w];
          }
        }
      },
      workers);
  for (std::int64_t s : success) res.success += s;
  return res;
}

Partition components_of(const AllPairsResult& pairs, std::int64_t n) {
  UnionFind uf(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const std::uint64_t* row = pairs.same_bits.data() + i * pairs.words;
    for (std::int64_t w = 0; w < pairs.words; ++w) {
      std::uint64_t word = row[w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        word &= word - 1;
        uf.unite(static_cast<std::int32_t>(i),
                 static_cast<std::int32_t>(w * 64 + bit));
      }
    }
  }
  std::vector<std::int32_t> labels(n);
  for (std::int64_t v = 0; v < n; ++v)
    labels[v] = uf.find(static_cast<std::int32_t>(v));
  return Partition::from_labels(labels);
}

}  // namespace

Partition recover(const CenteredMatrix& Y, const MomConfig& cfg) {
  return components_of(estimate_all_pairs(Y, cfg, nullptr), Y.size());
}

RecoveryStats recover_with_stats(const CenteredMatrix& Y, const MomConfig& cfg,
                                 const Assignment* truth) {
  const std::int64_t n = Y.size();
  AllPairsResult pairs = estimate_all_pairs(Y, cfg, truth);
  RecoveryStats stats;
  stats.partition = components_of(pairs, n);
  if (truth != nullptr) {
    stats.pair_success_rate = static_cast<double>(pairs.success) /
                              (static_cast<double>(n) * (n - 1) / 2.0);
  } else {
    stats.pair_success_rate = std::numeric_limits<double>::quiet_NaN();
  }
  return stats;
}

namespace {

// Maximum-weight bipartite matching on sparse positive weights, successive
// shortest augmenting paths with potentials.  Each left node additionally
// owns a private zero-weight "skip" option, so the computed matching may
// leave nodes unmatched when that is optimal.
double max_weight_matching(
    std::int64_t n_left, std::int64_t n_right,
    const std::vector<std::vector<std::pair<std::int32_t, double>>>& adj) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n_left, 0.0), v(n_right, 0.0);
  std::vector<std::int32_t> match_left(n_left, -1), match_right(n_right, -1);

  for (std::int64_t l = 0; l < n_left; ++l) {
    for (const auto& [r, w] : adj[l]) u[l] = std::min(u[l], -w);
  }

  std::vector<double> dl(n_left), dr(n_right);
  std::vector<std::int32_t> parent_right(n_right);
  using Item = std::pair<double, std::int64_t>;  // (dist, node); lefts offset
  for (std::int64_t l0 = 0; l0 < n_left; ++l0) {
    std::fill(dl.begin(), dl.end(), kInf);
    std::fill(dr.begin(), dr.end(), kInf);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dl[l0] = 0.0;
    heap.emplace(0.0, n_right + l0);
    double best_dist = kInf;
    std::int64_t best_right = -1;  // -1 => skip terminal
    std::int64_t best_skip_left = -1;

    while (!heap.empty()) {
      const auto [d, node] = heap.top();
      heap.pop();
      if (d >= best_dist) break;
      if (node >= n_right) {
        const std::int64_t l = node - n_right;
        if (d > dl[l]) continue;
        const double skip_cost = d - u[l];
        if (skip_cost < best_dist) {
          best_dist = skip_cost;
          best_right = -1;
          best_skip_left = l;
        }
        for (const auto& [r, w] : adj[l]) {
          const double nd = d + (-w - u[l] - v[r]);
          if (nd < dr[r]) {
            dr[r] = nd;
            parent_right[r] = static_cast<std::int32_t>(l);
            heap.emplace(nd, r);
          }
        }
      } else {
        const std::int64_t r = node;
        if (d > dr[r]) continue;
        if (match_right[r] < 0) {
          if (d < best_dist) {
            best_dist = d;
            best_right = r;
          }
        } else {
          const std::int64_t l = match_right[r];
          if (d < dl[l]) {
            dl[l] = d;
            heap.emplace(d, n_right + l);
          }
        }
      }
    }

    const double delta = best_dist;
    for (std::int64_t l = 0; l < n_left; ++l)
      u[l] -= std::min(dl[l], delta);
    for (std::int64_t r = 0; r < n_right; ++r)
      v[r] += std::min(dr[r], delta);

    // Flip matches along the augmenting path.
    std::int64_t cur;
    if (best_right >= 0) {
      cur = best_right;
    } else {
      // Terminal is a skip option: that left releases its right (if any).
      cur = match_left[best_skip_left];
      match_left[best_skip_left] = -1;
      if (cur < 0) continue;  // the new node itself takes the skip option
    }
    while (true) {
      const std::int32_t l = parent_right[cur];
      const std::int64_t prev = match_left[l];
      match_left[l] = static_cast<std::int32_t>(cur);
      match_right[cur] = l;
      if (l == l0) break;
      cur = prev;
    }
  }

  double total = 0.0;
  for (std::int64_t l = 0; l < n_left; ++l) {
    if (match_left[l] < 0) continue;
    for (const auto& [r, w] : adj[l]) {
      if (r == match_left[l]) {
        total += w;
        break;
      }
    }
  }
  return total;
}

std::vector<std::int32_t> labels_of(const Partition& p, std::int64_t n,
                                    const char* who) {
  std::vector<std::int32_t> labels(n, -1);
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    for (std::int32_t v : p.classes[c]) {
      if (v < 0 || v >= n || labels[v] != -1)
        throw std::invalid_argument(std::string(who) +
                                    ": not a partition of [0, n)");
      labels[v] = static_cast<std::int32_t>(c);
    }
  }
  for (std::int64_t v = 0; v < n; ++v) {
    if (labels[v] == -1)
      throw std::invalid_argument(std::string(who) +
                                  ": not a partition of [0, n)");
  }
  return labels;
}

}  // namespace

double clustering_error(const Partition& est, const Partition& truth,
                        std::int64_t n) {
  const std::vector<std::int32_t> el = labels_of(est, n, "clustering_error/est");
  const std::vector<std::int32_t> tl =
      labels_of(truth, n, "clustering_error/truth");

  // Intersection sizes, sparse: at most one entry per node.
  std::unordered_map<std::int64_t, double> inter;
  const std::int64_t n_right = static_cast<std::int64_t>(truth.classes.size());
  for (std::int64_t v = 0; v < n; ++v) {
    inter[static_cast<std::int64_t>(el[v]) * n_right + tl[v]] += 1.0;
  }
  std::vector<std::vector<std::pair<std::int32_t, double>>> adj(
      est.classes.size());
  for (const auto& [key, w] : inter) {
    adj[key / n_right].emplace_back(static_cast<std::int32_t>(key % n_right),
                                    w);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());

  const double best = max_weight_matching(
      static_cast<std::int64_t>(est.classes.size()), n_right, adj);
  // sum |A_k triangle B_pi(k)| = |cover(A)| + |cover(B)| - 2 * matched overlap.
  return (2.0 * static_cast<double>(n) - 2.0 * best) /
         (2.0 * static_cast<double>(n));
}

std::string recovery_result_json(const Partition& partition, std::int64_t n,
                                 std::int64_t K, int m,
                                 std::optional<double> error) {
  nlohmann::json doc;
  doc["n"] = n;
  doc["K"] = K;
  doc["m"] = m;
  doc["communities"] = partition.classes;
  if (error.has_value()) {
    doc["error"] = *error;
  } else {
    doc["error"] = nullptr;
  }
  return doc.dump();
}

}  // namespace sbmclique
