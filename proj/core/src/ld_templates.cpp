#include "sbmclique/ld_templates.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <stdexcept>

namespace sbmclique {

namespace {

// Triangular index of the pair (i < j) among C(nv, 2) pairs.
int pair_index(int nv, int i, int j) {
  return i * (2 * nv - i - 1) / 2 + (j - i - 1);
}

std::uint64_t edge_mask(int nv, const std::vector<std::pair<int, int>>& edges,
                        const std::vector<int>& relabel) {
  std::uint64_t mask = 0;
  for (const auto& [u, v] : edges) {
    int a = relabel[u];
    int b = relabel[v];
    if (a > b) std::swap(a, b);
    mask |= std::uint64_t{1} << pair_index(nv, a, b);
  }
  return mask;
}

std::vector<std::pair<int, int>> decode_mask(int nv, std::uint64_t mask) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < nv; ++i) {
    for (int j = i + 1; j < nv; ++j) {
      if (mask >> pair_index(nv, i, j) & 1) edges.emplace_back(i, j);
    }
  }
  return edges;
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

bool Template::anchor_isolated(int a) const {
  for (const auto& [u, v] : edges) {
    if (u == a || v == a) return false;
  }
  return true;
}

int Template::pruned_nodes() const {
  return nodes - (anchor_isolated(0) ? 1 : 0) - (anchor_isolated(1) ? 1 : 0);
}

std::vector<std::vector<int>> Template::edge_components() const {
  DisjointSet ds(nodes);
  std::vector<char> touched(nodes, 0);
  for (const auto& [u, v] : edges) {
    ds.unite(u, v);
    touched[u] = touched[v] = 1;
  }
  std::map<int, std::vector<int>> by_root;
  for (int v = 0; v < nodes; ++v) {
    if (touched[v]) by_root[ds.find(v)].push_back(v);
  }
  std::vector<std::vector<int>> out;
  out.reserve(by_root.size());
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  return out;
}

int Template::pruned_component_count() const {
  return static_cast<int>(edge_components().size());
}

bool Template::connected_with_anchors() const {
  DisjointSet ds(nodes);
  for (const auto& [u, v] : edges) ds.unite(u, v);
  for (int v = 1; v < nodes; ++v) {
    if (ds.find(v) != ds.find(0)) return false;
  }
  return true;
}

std::string Template::key() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "v%d-x%llx", nodes,
                static_cast<unsigned long long>(code));
  return buf;
}

Template make_template(int nodes, std::vector<std::pair<int, int>> edges) {
  if (nodes < 2 || nodes > 10)
    throw std::invalid_argument("make_template: nodes out of range [2,10]");
  if (edges.empty()) throw std::invalid_argument("make_template: no edges");
  std::vector<int> degree(nodes, 0);
  for (auto& [u, v] : edges) {
    if (u == v || u < 0 || v < 0 || u >= nodes || v >= nodes)
      throw std::invalid_argument("make_template: bad edge");
    if (u > v) std::swap(u, v);
    ++degree[u];
    ++degree[v];
  }
  {
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("make_template: duplicate edge");
  }
  for (int v = 2; v < nodes; ++v) {
    if (degree[v] == 0)
      throw std::invalid_argument("make_template: isolated non-anchor");
  }

  // Canonical form: minimize the adjacency bitstring over all orderings of
  // the non-anchors; brute force is exact and cheap at these sizes.
  std::vector<int> relabel(nodes);
  relabel[0] = 0;
  relabel[1] = 1;
  std::vector<int> perm(std::max(0, nodes - 2));
  std::iota(perm.begin(), perm.end(), 2);
  std::vector<int> identity(nodes);
  std::iota(identity.begin(), identity.end(), 0);
  const std::uint64_t original = edge_mask(nodes, edges, identity);
  std::uint64_t best = ~std::uint64_t{0};
  int aut = 0;
  do {
    for (std::size_t t = 0; t < perm.size(); ++t) relabel[t + 2] = perm[t];
    const std::uint64_t mask = edge_mask(nodes, edges, relabel);
    if (mask < best) best = mask;
    if (mask == original) ++aut;
  } while (std::next_permutation(perm.begin(), perm.end()));

  Template out;
  out.nodes = nodes;
  out.code = best;
  out.edges = decode_mask(nodes, best);
  out.aut = aut;
  return out;
}

std::vector<Template> enumerate_templates(int D) {
  if (D < 1 || D > kMaxTemplateEdges)
    throw std::invalid_argument("enumerate_templates: D out of range [1,4]");
  std::map<std::pair<int, std::uint64_t>, Template> classes;

  for (int extra = 0; extra <= 2 * D; ++extra) {
    const int nv = 2 + extra;
    std::vector<std::pair<int, int>> all_pairs;
    for (int i = 0; i < nv; ++i) {
      for (int j = i + 1; j < nv; ++j) all_pairs.emplace_back(i, j);
    }
    const int np = static_cast<int>(all_pairs.size());
    const int min_edges = std::max(1, (extra + 1) / 2);
    for (int e = min_edges; e <= D; ++e) {
      // Lexicographic combinations of e pairs.
      std::vector<int> pick(e);
      std::iota(pick.begin(), pick.end(), 0);
      while (true) {
        std::vector<int> degree(nv, 0);
        for (int t : pick) {
          ++degree[all_pairs[t].first];
          ++degree[all_pairs[t].second];
        }
        bool covered = true;
        for (int v = 2; v < nv; ++v) covered = covered && degree[v] > 0;
        if (covered) {
          std::vector<std::pair<int, int>> edges;
          edges.reserve(e);
          for (int t : pick) edges.push_back(all_pairs[t]);
          Template tmpl = make_template(nv, std::move(edges));
          classes.try_emplace({tmpl.nodes, tmpl.code}, std::move(tmpl));
        }
        int pos = e - 1;
        while (pos >= 0 && pick[pos] == np - e + pos) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (int t = pos + 1; t < e; ++t) pick[t] = pick[t - 1] + 1;
      }
    }
  }

  std::vector<Template> out;
  out.reserve(classes.size());
  for (auto& [key, tmpl] : classes) out.push_back(std::move(tmpl));
  return out;
}

MatchingInfo analyze_matching(const Template& g1, const Template& g2,
                              const std::vector<std::pair<int, int>>& pairs) {
  MatchingInfo m;
  m.pairs = pairs;
  const int matched_non_anchor = static_cast<int>(pairs.size());

  std::vector<int> label1(g1.nodes, -1), label2(g2.nodes, -1);
  label1[0] = label2[0] = 0;
  label1[1] = label2[1] = 1;
  for (int t = 0; t < matched_non_anchor; ++t) {
    label1[pairs[t].first] = 2 + t;
    label2[pairs[t].second] = 2 + t;
  }
  int next = 2 + matched_non_anchor;
  for (int v = 2; v < g1.nodes; ++v) {
    if (label1[v] == -1) {
      label1[v] = next++;
      ++m.unmatched1;
    }
  }
  for (int v = 2; v < g2.nodes; ++v) {
    if (label2[v] == -1) {
      label2[v] = next++;
      ++m.unmatched2;
    }
  }
  m.num_labels = next;

  auto labeled = [](const std::vector<std::pair<int, int>>& edges,
                    const std::vector<int>& lab) {
    std::vector<std::pair<int, int>> out;
    out.reserve(edges.size());
    for (const auto& [u, v] : edges) {
      int a = lab[u];
      int b = lab[v];
      if (a > b) std::swap(a, b);
      out.emplace_back(a, b);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  m.edges1 = labeled(g1.edges, label1);
  m.edges2 = labeled(g2.edges, label2);
  std::set_intersection(m.edges1.begin(), m.edges1.end(), m.edges2.begin(),
                        m.edges2.end(), std::back_inserter(m.shared_edges));
  std::set_symmetric_difference(m.edges1.begin(), m.edges1.end(),
                                m.edges2.begin(), m.edges2.end(),
                                std::back_inserter(m.symmetric_edges));

  std::vector<char> in_delta(m.num_labels, 0);
  DisjointSet delta(m.num_labels);
  for (const auto& [a, b] : m.symmetric_edges) {
    in_delta[a] = in_delta[b] = 1;
    delta.unite(a, b);
  }
  for (int lab = 0; lab < m.num_labels; ++lab) {
    if (in_delta[lab]) {
      ++m.v_delta;
      if (delta.find(lab) == lab) ++m.cc_delta;
    }
  }
  for (int lab = 0; lab < 2 + matched_non_anchor; ++lab) {
    if (in_delta[lab]) ++m.semi_matched;
    else ++m.perfectly_matched;
  }

  // Pruned matching: drop an anchor pair when that anchor is isolated on
  // either side.  Membership in the star collection requires every edge
  // component of both templates to contain a vertex whose pair survives.
  const bool anchor_ok[2] = {
      !g1.anchor_isolated(0) && !g2.anchor_isolated(0),
      !g1.anchor_isolated(1) && !g2.anchor_isolated(1)};
  auto components_touch = [&](const Template& g, const std::vector<int>& lab) {
    for (const auto& comp : g.edge_components()) {
      bool touched = false;
      for (int v : comp) {
        if (v <= 1) {
          if (anchor_ok[v]) touched = true;
        } else if (lab[v] < 2 + matched_non_anchor) {
          touched = true;
        }
        if (touched) break;
      }
      if (!touched) return false;
    }
    return true;
  };
  m.in_m_star = components_touch(g1, label1) && components_touch(g2, label2);
  return m;
}

void for_each_matching(const Template& g1, const Template& g2,
                       const std::function<void(const MatchingInfo&)>& visit) {
  const int n2 = g2.nodes - 2;
  std::vector<char> used(std::max(0, n2), 0);
  std::vector<std::pair<int, int>> pairs;

  auto rec = [&](auto&& self, int v) -> void {
    if (v == g1.nodes) {
      visit(analyze_matching(g1, g2, pairs));
      return;
    }
    self(self, v + 1);  // v stays unmatched
    for (int w = 0; w < n2; ++w) {
      if (used[w]) continue;
      used[w] = 1;
      pairs.emplace_back(v, w + 2);
      self(self, v + 1);
      pairs.pop_back();
      used[w] = 0;
    }
  };
  rec(rec, 2);
}

int edit_distance(const Template& g1, const Template& g2) {
  int best = 1 << 30;
  for_each_matching(g1, g2, [&](const MatchingInfo& m) {
    best = std::min(best, static_cast<int>(m.symmetric_edges.size()));
  });
  return best;
}

}  // namespace sbmclique
