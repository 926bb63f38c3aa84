#include "sbmclique/sbm.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <sstream>

#include "sbmclique/rng.hpp"

namespace sbmclique {

void SbmParams::validate() const {
  if (n < 3) throw std::invalid_argument("SbmParams: n must be >= 3");
  if (K < 2 || K > n)
    throw std::invalid_argument("SbmParams: K must satisfy 2 <= K <= n");
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("SbmParams: q must lie in (0,1)");
  if (!(lambda > 0.0))
    throw std::invalid_argument("SbmParams: lambda must be positive");
  if (q + lambda > 1.0)
    throw std::invalid_argument("SbmParams: p = q + lambda must be <= 1");
}

std::pair<double, double> derived_probs(double q, double lambda) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("derived_probs: q must lie in (0,1)");
  if (!(lambda > 0.0))
    throw std::invalid_argument("derived_probs: lambda must be positive");
  if (q + lambda > 1.0)
    throw std::invalid_argument("derived_probs: q + lambda must be <= 1");
  const double q_bar = q * (1.0 - q);
  return {q_bar, q_bar + lambda * (1.0 - 2.0 * q)};
}

Graph::Graph(std::int64_t n) : n_(n), words_((n + 63) / 64) {
  if (n < 1) throw std::invalid_argument("Graph: n must be >= 1");
  bits_.assign(static_cast<std::size_t>(n_ * words_), 0);
}

void Graph::set_edge(std::int64_t i, std::int64_t j) {
  if (i == j) throw std::invalid_argument("Graph: self-loops not allowed");
  bits_[i * words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
  bits_[j * words_ + (i >> 6)] |= std::uint64_t{1} << (i & 63);
}

std::int64_t Graph::edge_count() const {
  std::int64_t bits = 0;
  for (std::uint64_t w : bits_) bits += std::popcount(w);
  return bits / 2;
}

void Graph::write_edge_list(std::ostream& out) const {
  out << "n " << n_ << "\n";
  for (std::int64_t i = 0; i < n_; ++i) {
    for (std::int64_t j = i + 1; j < n_; ++j) {
      if (edge(i, j)) out << i << " " << j << "\n";
    }
  }
}

Graph Graph::read_edge_list(std::istream& in) {
  std::string line;
  std::int64_t line_no = 0;
  if (!std::getline(in, line))
    throw EdgeListError("empty edge-list file", 1);
  ++line_no;
  std::istringstream head(line);
  std::string tag;
  std::int64_t n = 0;
  if (!(head >> tag >> n) || tag != "n" || n < 1)
    throw EdgeListError("expected header 'n <count>'", line_no);
  Graph g(n);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::int64_t u = -1, v = -1;
    if (!(row >> u >> v))
      throw EdgeListError("expected 'u v' pair", line_no);
    std::string trailing;
    if (row >> trailing)
      throw EdgeListError("trailing tokens after edge", line_no);
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw EdgeListError("node index out of range", line_no);
    if (u >= v) throw EdgeListError("edges must satisfy u < v", line_no);
    if (g.edge(u, v)) throw EdgeListError("duplicate edge", line_no);
    g.set_edge(u, v);
  }
  return g;
}

CenteredMatrix::CenteredMatrix(const Graph& g, double q) : g_(&g), q_(q) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("CenteredMatrix: q must lie in (0,1)");
  values_[0] = -q;
  values_[1] = 1.0 - q;
}

CenteredMatrix center_adjacency(const Graph& g, double q) {
  return CenteredMatrix(g, q);
}

Assignment sample_assignment(const SbmParams& params, std::uint64_t seed,
                             PairCondition condition) {
  params.validate();
  Assignment a;
  a.z.resize(params.n);
  const auto K = static_cast<std::uint64_t>(params.K);
  for (std::int64_t i = 0; i < params.n; ++i) {
    const double u = rng::uniform(seed, rng::Stream::kAssignment,
                                  static_cast<std::uint64_t>(i));
    a.z[i] = static_cast<std::int32_t>(u * static_cast<double>(K)) + 1;
    if (a.z[i] > params.K) a.z[i] = static_cast<std::int32_t>(params.K);
  }
  if (condition == PairCondition::kSame) {
    a.z[1] = a.z[0];
  } else if (condition == PairCondition::kDiff) {
    // Resample z[1] uniformly over [K] \ {z[0]}; rejection-free.
    const double u = rng::uniform(seed, rng::Stream::kAssignmentResample, 1);
    auto idx = static_cast<std::int32_t>(u * static_cast<double>(K - 1));
    if (idx > params.K - 2) idx = static_cast<std::int32_t>(params.K - 2);
    a.z[1] = idx + 1 >= a.z[0] ? idx + 2 : idx + 1;
  }
  return a;
}

Graph sample_edges(const SbmParams& params, const Assignment& z,
                   std::uint64_t seed) {
  params.validate();
  if (z.size() != params.n)
    throw std::invalid_argument("sample_edges: assignment length != n");
  Graph g(params.n);
  const double p = params.p();
  for (std::int64_t i = 0; i < params.n; ++i) {
    for (std::int64_t j = i + 1; j < params.n; ++j) {
      const double prob = z.z[i] == z.z[j] ? p : params.q;
      const double u = rng::uniform(seed, rng::Stream::kEdge,
                                    static_cast<std::uint64_t>(i),
                                    static_cast<std::uint64_t>(j));
      if (u < prob) g.set_edge(i, j);
    }
  }
  return g;
}

std::pair<Assignment, Graph> sample_sbm(const SbmParams& params,
                                        std::uint64_t seed,
                                        PairCondition condition) {
  Assignment z = sample_assignment(params, seed, condition);
  Graph g = sample_edges(params, z, seed);
  return {std::move(z), std::move(g)};
}

double membership_value(const Assignment& z, std::int64_t i, std::int64_t j,
                        std::int64_t K) {
  return (z.z[i] == z.z[j] ? 1.0 : 0.0) - 1.0 / static_cast<double>(K);
}

std::vector<double> membership_target(const Assignment& z, std::int64_t K) {
  const std::int64_t n = z.size();
  std::vector<double> x(static_cast<std::size_t>(n * n), 0.0);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      if (i != j) x[i * n + j] = membership_value(z, i, j, K);
    }
  }
  return x;
}

}  // namespace sbmclique
