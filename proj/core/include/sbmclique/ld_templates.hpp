#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace sbmclique {

// Anchored template: a small graph on vertices {0..nodes-1} where vertices 0
// and 1 are the anchors (mapped to the observed pair).  Non-anchor vertices
// carry at least one edge; anchors may be isolated.  Templates are kept in
// canonical form: the vertex order of the non-anchors minimizes the
// adjacency bitstring, so equality of `code` (plus `nodes`) is equality of
// the anchored isomorphism class.
struct Template {
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, lexicographically sorted
  std::uint64_t code = 0;
  int aut = 1;  // automorphisms fixing both anchors

  int edge_count() const { return static_cast<int>(edges.size()); }
  bool anchor_isolated(int a) const;
  // Vertices remaining after pruning isolated anchors.
  int pruned_nodes() const;
  // Connected components with at least one edge, as vertex lists.
  std::vector<std::vector<int>> edge_components() const;
  // Number of connected components of the pruned graph.
  int pruned_component_count() const;
  // True when the whole template (anchors included) is one component.
  bool connected_with_anchors() const;
  std::string key() const;  // stable id, e.g. "v3-x0000000000000003"

  bool operator==(const Template& o) const {
    return nodes == o.nodes && code == o.code;
  }
};

// Canonicalizes an arbitrary edge list on {0..nodes-1}; validates that no
// non-anchor vertex is isolated.
Template make_template(int nodes, std::vector<std::pair<int, int>> edges);

inline constexpr int kMaxTemplateEdges = 4;

// All anchored templates with 1..D edges, one canonical representative per
// class, sorted by (nodes, code).  D <= 4.
std::vector<Template> enumerate_templates(int D);

// A matching between two templates: the anchor pairs (0,0) and (1,1) are
// always present and implicit; `pairs` lists matched non-anchor vertices.
// Derived fields describe the merged labeled graphs for any compatible pair
// of labelings.
struct MatchingInfo {
  std::vector<std::pair<int, int>> pairs;

  // Merged vertex labels: 0 and 1 are the anchors, matched non-anchor pair t
  // gets label 2 + t, then unmatched vertices of each side.
  int num_labels = 0;
  std::vector<std::pair<int, int>> edges1;  // labeled edges of each side
  std::vector<std::pair<int, int>> edges2;
  std::vector<std::pair<int, int>> shared_edges;     // appear on both sides
  std::vector<std::pair<int, int>> symmetric_edges;  // appear on one side

  int matched() const { return static_cast<int>(pairs.size()) + 2; }  // |M|
  int unmatched1 = 0;  // non-anchor vertices of side 1 left unmatched
  int unmatched2 = 0;
  int semi_matched = 0;     // matched vertices incident to an unshared edge
  int perfectly_matched = 0;
  int v_delta = 0;          // labels incident to symmetric-difference edges
  int cc_delta = 0;         // components of the symmetric-difference graph
  bool in_m_star = false;   // every edge component meets the pruned matching
};

MatchingInfo analyze_matching(const Template& g1, const Template& g2,
                              const std::vector<std::pair<int, int>>& pairs);

// Enumerates every matching (deterministic order) and calls the visitor.
void for_each_matching(const Template& g1, const Template& g2,
                       const std::function<void(const MatchingInfo&)>& visit);

// min over matchings of the symmetric-difference edge count; zero iff the
// canonical forms coincide.
int edit_distance(const Template& g1, const Template& g2);

}  // namespace sbmclique
