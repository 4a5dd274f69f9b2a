#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "ffinc/linalg.hpp"

namespace ffinc {

using Bitset = boost::dynamic_bitset<>;

/// Bipartite graph on A = {0..a_size-1}, B = {0..b_size-1} with both
/// adjacency directions kept as bitsets.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::size_t a_size, std::size_t b_size);
  static BipartiteGraph from_edges(std::size_t a_size, std::size_t b_size,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t a_size() const { return adj_a_.size(); }
  std::size_t b_size() const { return adj_b_.size(); }

  void add_edge(std::size_t a, std::size_t b);
  bool has_edge(std::size_t a, std::size_t b) const { return adj_a_[a].test(b); }

  const Bitset& neighbors_a(std::size_t a) const { return adj_a_[a]; }
  const Bitset& neighbors_b(std::size_t b) const { return adj_b_[b]; }

  std::size_t edge_count() const;
  std::size_t max_degree() const;
  /// Edges sorted lexicographically.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  BipartiteGraph transposed() const;

  /// Common neighborhood in B of a set of A-vertices (all of B when empty).
  Bitset common_neighbors_a(const std::vector<std::size_t>& as) const;

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  std::vector<Bitset> adj_a_;
  std::vector<Bitset> adj_b_;
};

/// Points against hyperplanes: point i ~ hyperplane j iff the point lies on it.
BipartiteGraph incidence_graph(const PrimeField& field, const std::vector<Vector>& points,
                               const std::vector<Hyperplane>& hyperplanes);

std::size_t incidence_count(const BipartiteGraph& g);

enum class Label : unsigned char { Any, Zero, One };

/// Edge labeling of K_{a,b}; indices are 0-based.
struct Pattern {
  std::size_t a_size = 0;
  std::size_t b_size = 0;
  std::vector<Label> labels;  // row-major, a_size * b_size

  Label at(std::size_t i, std::size_t j) const { return labels[i * b_size + j]; }
};

/// The forbidden pattern: with 1-based indices, a_i b_j is 1 when i >= j - 1,
/// a_i b_{i+2} is 0, everything else is free.
Pattern make_pi_d(std::size_t d);

/// a_map[i] is the image of pattern vertex a_i; b_map likewise. When swapped,
/// pattern a-vertices sit in the graph's B side and b-vertices in A.
struct PatternWitness {
  std::vector<std::size_t> a_map;
  std::vector<std::size_t> b_map;
  bool swapped = false;
};

/// Injective search for an assignment realizing every 0/1 label, trying
/// both orientations. Pattern sides <= 6 and graph sides <= 64.
std::optional<PatternWitness> find_pattern(const BipartiteGraph& g, const Pattern& pattern);

/// True when the witness realizes every 0/1 label injectively.
bool check_witness(const BipartiteGraph& g, const Pattern& pattern, const PatternWitness& w);

struct Biclique {
  std::vector<std::size_t> a_side;
  std::vector<std::size_t> b_side;
};

/// A K_{s,s} subgraph, or nullopt.
std::optional<Biclique> contains_kss(const BipartiteGraph& g, std::size_t s);

/// max |S|·|T| over complete bipartite subgraphs, exact for a smaller side <= 20.
std::size_t rs(const BipartiteGraph& g);

/// An ordered tuple (v_1..v_t) of distinct A-vertices with strictly shrinking
/// common neighborhoods N(v_1,v_2) ⊋ ... ⊋ N(v_1..v_t) of final size >= 2.
std::optional<std::vector<std::size_t>> find_good_tuple(const BipartiteGraph& g, std::size_t t);

struct LayeredGraph {
  BipartiteGraph graph;
  /// Index sequence of each B-vertex; the two root vertices carry the empty sequence.
  std::vector<std::vector<std::size_t>> b_sequences;
  std::size_t k = 0;
};

/// The layered graph H_{d,Δ} with k = 2^(Δ^d) + 1. Total vertices <= 10^5.
LayeredGraph generate_h_d_delta(std::size_t d, std::size_t delta);

}  // namespace ffinc
