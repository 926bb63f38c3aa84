#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sbmclique {

// Model parameters for the symmetric stochastic block model: n nodes, K
// communities, between-community edge probability q, separation
// lambda = p - q.  Derived quantities q_bar = q(1-q) and
// p_bar = q_bar + lambda(1-2q) show up throughout the moment formulas.
struct SbmParams {
  std::int64_t n = 0;
  std::int64_t K = 0;
  double q = 0.0;
  double lambda = 0.0;

  double p() const { return q + lambda; }
  double q_bar() const { return q * (1.0 - q); }
  double p_bar() const { return q_bar() + lambda * (1.0 - 2.0 * q); }

  // Throws std::invalid_argument on out-of-range parameters.
  void validate() const;
};

// q_bar and p_bar for a (q, lambda) pair; validates 0 < q < 1, lambda > 0,
// q + lambda <= 1.
std::pair<double, double> derived_probs(double q, double lambda);

// Optional conditioning on the pair (node 0, node 1) when sampling.
enum class PairCondition { kNone, kSame, kDiff };

// Community labels, entries in 1..K.
struct Assignment {
  std::vector<std::int32_t> z;

  std::int64_t size() const { return static_cast<std::int64_t>(z.size()); }
};

struct EdgeListError : std::runtime_error {
  EdgeListError(const std::string& what, std::int64_t line_number)
      : std::runtime_error(what), line(line_number) {}
  std::int64_t line;
};

// Undirected simple graph with bit-packed adjacency rows.  Immutable once
// sampled/loaded; safe for concurrent reads.
class Graph {
 public:
  explicit Graph(std::int64_t n);

  std::int64_t size() const { return n_; }
  std::int64_t row_words() const { return words_; }
  const std::uint64_t* row(std::int64_t i) const {
    return bits_.data() + i * words_;
  }

  bool edge(std::int64_t i, std::int64_t j) const {
    return (row(i)[static_cast<std::uint64_t>(j) >> 6] >>
            (static_cast<std::uint64_t>(j) & 63)) &
           1u;
  }

  // Sets the undirected edge {i, j}; i != j.
  void set_edge(std::int64_t i, std::int64_t j);

  std::int64_t edge_count() const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && bits_ == other.bits_;
  }

  // Text format: first line "n <n>", then one "u v" per line with u < v,
  // 0-indexed.
  void write_edge_list(std::ostream& out) const;
  static Graph read_edge_list(std::istream& in);

 private:
  std::int64_t n_ = 0;
  std::int64_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// View of a graph with entries Y(i,j) = A(i,j) - q, i.e. 1-q on edges and -q
// on non-edges.  Holds a pointer to the graph; does not copy.
class CenteredMatrix {
 public:
  CenteredMatrix(const Graph& g, double q);

  double operator()(std::int64_t i, std::int64_t j) const {
    return values_[g_->edge(i, j)];
  }
  double value_for_bit(bool bit) const { return values_[bit]; }

  double q() const { return q_; }
  const Graph& graph() const { return *g_; }
  std::int64_t size() const { return g_->size(); }

 private:
  const Graph* g_;
  double q_;
  double values_[2];
};

CenteredMatrix center_adjacency(const Graph& g, double q);

// Labels are i.i.d. uniform on 1..K except as forced by the condition:
// kSame copies z[0] into z[1], kDiff resamples z[1] uniformly over the other
// K-1 values.  Deterministic in (params, seed, condition).
Assignment sample_assignment(const SbmParams& params, std::uint64_t seed,
                             PairCondition condition = PairCondition::kNone);

// Edges are independent Bernoulli(q + lambda * 1{z_i = z_j}); the draw for
// edge {i, j} depends only on (seed, i, j), so it is order-independent.
Graph sample_edges(const SbmParams& params, const Assignment& z,
                   std::uint64_t seed);

std::pair<Assignment, Graph> sample_sbm(
    const SbmParams& params, std::uint64_t seed,
    PairCondition condition = PairCondition::kNone);

// Pairwise target x_ij = 1{z_i = z_j} - 1/K.
double membership_value(const Assignment& z, std::int64_t i, std::int64_t j,
                        std::int64_t K);

// Dense n*n row-major matrix of membership values, zero diagonal.
std::vector<double> membership_target(const Assignment& z, std::int64_t K);

}  // namespace sbmclique
