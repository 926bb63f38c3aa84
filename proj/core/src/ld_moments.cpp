#include "sbmclique/ld_moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sbmclique {

void LdParams::validate() const {
  if (K < 2) throw std::invalid_argument("LdParams: K must be >= 2");
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("LdParams: q must lie in (0,1)");
  if (lambda < 0.0 || q + lambda > 1.0)
    throw std::invalid_argument("LdParams: need 0 <= lambda <= 1 - q");
}

namespace {

double int_pow(double base, int e) {
  double out = 1.0;
  for (int t = 0; t < e; ++t) out *= base;
  return out;
}

inline constexpr int kMaxSlots = 12;  // Bell(12) ~ 4.2e6 partitions

}  // namespace

MomentShape analyze_labeled_moment(
    std::span<const std::pair<int, int>> singles,
    std::span<const std::pair<int, int>> doubles) {
  MomentShape shape;
  shape.singles = static_cast<int>(singles.size());
  shape.doubles = static_cast<int>(doubles.size());

  int max_label = -1;
  for (const auto& [a, b] : singles) max_label = std::max({max_label, a, b});
  for (const auto& [a, b] : doubles) max_label = std::max({max_label, a, b});
  const int labels = max_label + 1;
  if (labels == 0) {
    shape.slots = 0;
    return shape;  // empty product; evaluate() returns 1
  }

  std::vector<char> present(labels, 0);
  std::vector<int> comp(labels);
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int v) {
    while (comp[v] != v) {
      comp[v] = comp[comp[v]];
      v = comp[v];
    }
    return v;
  };
  for (const auto& [a, b] : singles) {
    present[a] = present[b] = 1;
    const int ra = find(a), rb = find(b);
    if (ra != rb) comp[std::max(ra, rb)] = std::min(ra, rb);
  }
  for (const auto& [a, b] : doubles) present[a] = present[b] = 1;

  // One slot per single-edge component, one per remaining vertex.
  std::vector<int> slot_of(labels, -1);
  int slots = 0;
  for (int v = 0; v < labels; ++v) {
    if (!present[v]) continue;
    ++shape.vstar;
    const int root = find(v);
    if (slot_of[root] == -1) slot_of[root] = slots++;
    slot_of[v] = slot_of[root];
  }
  shape.slots = slots;
  if (slots > kMaxSlots)
    throw std::invalid_argument("labeled moment: partition budget exceeded");

  std::vector<std::pair<int, int>> tracked;
  for (const auto& [a, b] : doubles) {
    const int sa = slot_of[a], sb = slot_of[b];
    if (sa == sb) ++shape.always_within;
    else tracked.emplace_back(std::min(sa, sb), std::max(sa, sb));
  }

  if (tracked.empty()) {
    // No doubled edge straddles two slots; the color sum is free and
    // evaluate() collapses it to K^slots.
    return shape;
  }

  // Enumerate set partitions of the slots as restricted growth strings.
  shape.counts.assign(tracked.size() + 1,
                      std::vector<double>(slots + 1, 0.0));
  std::vector<int> assign(slots, 0);
  auto rec = [&](auto&& self, int v, int used) -> void {
    if (v == slots) {
      int within = 0;
      for (const auto& [a, b] : tracked) {
        if (assign[a] == assign[b]) ++within;
      }
      shape.counts[within][used] += 1.0;
      return;
    }
    for (int blk = 0; blk <= used; ++blk) {
      assign[v] = blk;
      self(self, v + 1, blk == used ? used + 1 : used);
    }
  };
  assign[0] = 0;
  rec(rec, 1, 1);
  return shape;
}

double MomentShape::evaluate(const LdParams& params) const {
  params.validate();
  const double q_bar = params.q_bar();
  const double p_bar = params.p_bar();
  const double ratio = p_bar / q_bar;
  const double Kd = static_cast<double>(params.K);

  double prefix = int_pow(params.lambda, singles) * int_pow(q_bar, doubles) *
                  int_pow(ratio, always_within) / int_pow(Kd, vstar);
  if (prefix == 0.0) return 0.0;

  if (counts.empty()) {
    // Free sum over slot colors: K per slot.
    return prefix * int_pow(Kd, slots);
  }

  // Falling factorials K (K-1) ... ; zero once r exceeds K.
  std::vector<double> weight(slots + 1, 0.0);
  double w = 1.0;
  for (int r = 1; r <= slots; ++r) {
    w *= Kd - static_cast<double>(r - 1);
    if (w < 0.0) w = 0.0;
    weight[r] = w;
  }
  double total = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    double per_j = 0.0;
    for (int r = 1; r <= slots; ++r) per_j += counts[j][r] * weight[r];
    total += per_j * int_pow(ratio, static_cast<int>(j));
  }
  return prefix * total;
}

double labeled_moment(std::span<const std::pair<int, int>> singles,
                      std::span<const std::pair<int, int>> doubles,
                      const LdParams& params) {
  return analyze_labeled_moment(singles, doubles).evaluate(params);
}

double expected_P(const Template& g, std::int64_t K, double lambda) {
  const int exponent = g.pruned_nodes() - g.pruned_component_count();
  return int_pow(lambda, g.edge_count()) /
         int_pow(static_cast<double>(K), exponent);
}

double second_moment(const Template& g, const LdParams& params) {
  return labeled_moment({}, g.edges, params);
}

double cross_moment(const Template& g1, const Template& g2,
                    const MatchingInfo& m, const LdParams& params) {
  return labeled_moment(m.symmetric_edges, m.shared_edges, params);
}

namespace {

CorrelationCheck correlation_of(double ratio_value, int delta_edges,
                                int excess_nodes, const LdParams& params) {
  if (!(params.q <= 0.5) || !(params.q + 2.0 * params.lambda <= 1.0))
    throw std::invalid_argument(
        "correlation check: requires q <= 1/2 and q + 2*lambda <= 1");
  CorrelationCheck c;
  c.ratio = std::abs(ratio_value);
  const double Kd = static_cast<double>(params.K);
  const double a = int_pow(params.lambda / std::sqrt(params.q_bar()),
                           delta_edges) /
                   int_pow(Kd, excess_nodes);
  const double b = std::pow(params.lambda, delta_edges / 2.0) /
                   std::pow(Kd, excess_nodes / 2.0);
  c.bound = std::min(a, b);
  c.holds = c.ratio <= c.bound * (1.0 + 1e-9);
  return c;
}

}  // namespace

CorrelationCheck pair_correlation_check(const Template& g1, const Template& g2,
                                        const MatchingInfo& m,
                                        const LdParams& params) {
  if (!m.in_m_star)
    throw std::invalid_argument(
        "pair_correlation_check: matching not in the star collection");
  const double cross = cross_moment(g1, g2, m, params);
  const double s1 = second_moment(g1, params);
  const double s2 = second_moment(g2, params);
  return correlation_of(cross / std::sqrt(s1 * s2),
                        static_cast<int>(m.symmetric_edges.size()),
                        m.unmatched1 + m.unmatched2, params);
}

CorrelationCheck single_correlation_check(const Template& g,
                                          const LdParams& params) {
  if (!g.connected_with_anchors())
    throw std::invalid_argument(
        "single_correlation_check: template must be connected");
  const double mean = expected_P(g, params.K, params.lambda);
  const double sm = second_moment(g, params);
  return correlation_of(mean / std::sqrt(sm), g.edge_count(), g.nodes - 1,
                        params);
}

}  // namespace sbmclique
