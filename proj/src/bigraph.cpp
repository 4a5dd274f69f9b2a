#include "ffinc/bigraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace ffinc {

BipartiteGraph::BipartiteGraph(std::size_t a_size, std::size_t b_size)
    : adj_a_(a_size, Bitset(b_size)), adj_b_(b_size, Bitset(a_size)) {}

BipartiteGraph BipartiteGraph::from_edges(
    std::size_t a_size, std::size_t b_size,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  BipartiteGraph g(a_size, b_size);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

void BipartiteGraph::add_edge(std::size_t a, std::size_t b) {
  if (a >= a_size() || b >= b_size()) {
    throw PreconditionError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") outside a " + std::to_string(a_size()) + "+" +
                            std::to_string(b_size()) + " graph");
  }
  adj_a_[a].set(b);
  adj_b_[b].set(a);
}

std::size_t BipartiteGraph::edge_count() const {
  std::size_t e = 0;
  for (const auto& n : adj_a_) e += n.count();
  return e;
}

std::size_t BipartiteGraph::max_degree() const {
  std::size_t m = 0;
  for (const auto& n : adj_a_) m = std::max(m, n.count());
  for (const auto& n : adj_b_) m = std::max(m, n.count());
  return m;
}

std::vector<std::pair<std::size_t, std::size_t>> BipartiteGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < a_size(); ++a) {
    for (auto b = adj_a_[a].find_first(); b != Bitset::npos; b = adj_a_[a].find_next(b)) {
      out.emplace_back(a, b);
    }
  }
  return out;
}

BipartiteGraph BipartiteGraph::transposed() const {
  BipartiteGraph t;
  t.adj_a_ = adj_b_;
  t.adj_b_ = adj_a_;
  return t;
}

Bitset BipartiteGraph::common_neighbors_a(const std::vector<std::size_t>& as) const {
  Bitset n(b_size());
  n.set();
  for (auto a : as) n &= adj_a_[a];
  return n;
}

BipartiteGraph incidence_graph(const PrimeField& field, const std::vector<Vector>& points,
                               const std::vector<Hyperplane>& hyperplanes) {
  BipartiteGraph g(points.size(), hyperplanes.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < hyperplanes.size(); ++j) {
      if (hyperplanes[j].contains(field, points[i])) g.add_edge(i, j);
    }
  }
  return g;
}

std::size_t incidence_count(const BipartiteGraph& g) { return g.edge_count(); }

Pattern make_pi_d(std::size_t d) {
  if (d < 3) throw PreconditionError("pattern requires d >= 3, got " + std::to_string(d));
  Pattern p{d, d, std::vector<Label>(d * d, Label::Any)};
  for (std::size_t i = 1; i <= d; ++i) {
    for (std::size_t j = 1; j <= d; ++j) {
      Label& l = p.labels[(i - 1) * d + (j - 1)];
      if (i + 1 >= j) {
        l = Label::One;
      } else if (j == i + 2) {
        l = Label::Zero;
      }
    }
  }
  return p;
}

namespace {

class PatternSearch {
 public:
  PatternSearch(const BipartiteGraph& g, const Pattern& p) : g_(g), p_(p) {
    order_.resize(p.a_size);
    std::iota(order_.begin(), order_.end(), 0);
    // Most constrained pattern rows first.
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t x, std::size_t y) {
      return constraints(x) > constraints(y);
    });
    a_map_.assign(p.a_size, 0);
    b_map_.assign(p.b_size, 0);
  }

  std::optional<PatternWitness> run() {
    Bitset all(g_.b_size());
    all.set();
    std::vector<Bitset> cand(p_.b_size, all);
    Bitset used_a(g_.a_size());
    if (!assign_a(0, cand, used_a)) return std::nullopt;
    return PatternWitness{a_map_, b_map_, false};
  }

 private:
  std::size_t constraints(std::size_t i) const {
    std::size_t c = 0;
    for (std::size_t j = 0; j < p_.b_size; ++j) c += p_.at(i, j) != Label::Any;
    return c;
  }

  bool assign_a(std::size_t depth, const std::vector<Bitset>& cand, Bitset& used_a) {
    if (depth == order_.size()) {
      Bitset used_b(g_.b_size());
      return assign_b(cand, used_b, std::vector<bool>(p_.b_size, false), 0);
    }
    const std::size_t i = order_[depth];
    for (std::size_t v = 0; v < g_.a_size(); ++v) {
      if (used_a.test(v)) continue;
      std::vector<Bitset> next = cand;
      bool ok = true;
      Bitset reach(g_.b_size());
      for (std::size_t j = 0; j < p_.b_size && ok; ++j) {
        if (p_.at(i, j) == Label::One) next[j] &= g_.neighbors_a(v);
        if (p_.at(i, j) == Label::Zero) next[j] -= g_.neighbors_a(v);
        ok = next[j].any();
        reach |= next[j];
      }
      if (!ok || reach.count() < p_.b_size) continue;
      a_map_[i] = v;
      used_a.set(v);
      if (assign_a(depth + 1, next, used_a)) return true;
      used_a.reset(v);
    }
    return false;
  }

  bool assign_b(const std::vector<Bitset>& cand, Bitset& used_b, std::vector<bool> done,
                std::size_t count) {
    if (count == p_.b_size) return true;
    // Pick the unassigned b-vertex with the fewest remaining candidates.
    std::size_t best = p_.b_size;
    std::size_t best_n = SIZE_MAX;
    for (std::size_t j = 0; j < p_.b_size; ++j) {
      if (done[j]) continue;
      const std::size_t n = (cand[j] - used_b).count();
      if (n < best_n) {
        best = j;
        best_n = n;
      }
    }
    if (best_n == 0) return false;
    const Bitset opts = cand[best] - used_b;
    done[best] = true;
    for (auto w = opts.find_first(); w != Bitset::npos; w = opts.find_next(w)) {
      b_map_[best] = w;
      used_b.set(w);
      if (assign_b(cand, used_b, done, count + 1)) return true;
      used_b.reset(w);
    }
    return false;
  }

  const BipartiteGraph& g_;
  const Pattern& p_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> a_map_;
  std::vector<std::size_t> b_map_;
};

}  // namespace

std::optional<PatternWitness> find_pattern(const BipartiteGraph& g, const Pattern& pattern) {
  if (pattern.a_size > 6 || pattern.b_size > 6) {
    throw ScaleGuardError("find_pattern: pattern sides must be <= 6");
  }
  if (g.a_size() > 64 || g.b_size() > 64) {
    throw ScaleGuardError("find_pattern: graph sides must be <= 64, got " +
                          std::to_string(g.a_size()) + "+" + std::to_string(g.b_size()));
  }
  if (auto w = PatternSearch(g, pattern).run()) return w;
  const BipartiteGraph t = g.transposed();
  if (auto w = PatternSearch(t, pattern).run()) {
    w->swapped = true;
    return w;
  }
  return std::nullopt;
}

bool check_witness(const BipartiteGraph& g, const Pattern& pattern, const PatternWitness& w) {
  if (w.a_map.size() != pattern.a_size || w.b_map.size() != pattern.b_size) return false;
  auto distinct = [](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!distinct(w.a_map) || !distinct(w.b_map)) return false;
  const std::size_t a_lim = w.swapped ? g.b_size() : g.a_size();
  const std::size_t b_lim = w.swapped ? g.a_size() : g.b_size();
  for (auto v : w.a_map) {
    if (v >= a_lim) return false;
  }
  for (auto v : w.b_map) {
    if (v >= b_lim) return false;
  }
  for (std::size_t i = 0; i < pattern.a_size; ++i) {
    for (std::size_t j = 0; j < pattern.b_size; ++j) {
      const Label l = pattern.at(i, j);
      if (l == Label::Any) continue;
      const bool e = w.swapped ? g.has_edge(w.b_map[j], w.a_map[i])
                               : g.has_edge(w.a_map[i], w.b_map[j]);
      if (e != (l == Label::One)) return false;
    }
  }
  return true;
}

namespace {

bool kss_search(const BipartiteGraph& g, std::size_t s, std::size_t start, const Bitset& common,
                std::vector<std::size_t>& chosen) {
  if (chosen.size() == s) return true;
  const std::size_t need = s - chosen.size();
  for (std::size_t v = start; v + need <= g.a_size(); ++v) {
    if (g.neighbors_a(v).count() < s) continue;
    Bitset next = common & g.neighbors_a(v);
    if (next.count() < s) continue;
    chosen.push_back(v);
    if (kss_search(g, s, v + 1, next, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::optional<Biclique> contains_kss(const BipartiteGraph& g, std::size_t s) {
  if (s == 0) throw PreconditionError("contains_kss requires s >= 1");
  const bool flip = g.a_size() > g.b_size();
  BipartiteGraph holder;
  const BipartiteGraph* hp = &g;
  if (flip) {
    holder = g.transposed();
    hp = &holder;
  }
  Bitset all(hp->b_size());
  all.set();
  std::vector<std::size_t> chosen;
  if (!kss_search(*hp, s, 0, all, chosen)) return std::nullopt;
  const Bitset common = hp->common_neighbors_a(chosen);
  std::vector<std::size_t> other;
  for (auto b = common.find_first(); b != Bitset::npos && other.size() < s;
       b = common.find_next(b)) {
    other.push_back(b);
  }
  if (flip) return Biclique{other, chosen};
  return Biclique{chosen, other};
}

namespace {

void rs_search(const BipartiteGraph& g, std::size_t start, std::size_t size, const Bitset& common,
               std::size_t& best) {
  for (std::size_t v = start; v < g.a_size(); ++v) {
    Bitset next = common & g.neighbors_a(v);
    const std::size_t n = next.count();
    if (n == 0) continue;
    best = std::max(best, (size + 1) * n);
    // Even taking every remaining vertex cannot beat best.
    if ((size + 1 + (g.a_size() - v - 1)) * n <= best) continue;
    rs_search(g, v + 1, size + 1, next, best);
  }
}

}  // namespace

std::size_t rs(const BipartiteGraph& g) {
  const BipartiteGraph h = g.a_size() > g.b_size() ? g.transposed() : g;
  if (h.a_size() > 20) {
    throw ScaleGuardError("rs: smaller side has " + std::to_string(h.a_size()) +
                          " vertices; exact enumeration is limited to 20");
  }
  Bitset all(h.b_size());
  all.set();
  std::size_t best = 0;
  rs_search(h, 0, 0, all, best);
  return best;
}

namespace {

bool good_tuple_search(const BipartiteGraph& g, std::size_t t, std::vector<std::size_t>& tuple,
                       Bitset& used, const Bitset& common) {
  if (tuple.size() == t) return true;
  const std::size_t n = common.count();
  for (std::size_t v = 0; v < g.a_size(); ++v) {
    if (used.test(v)) continue;
    Bitset next = common & g.neighbors_a(v);
    const std::size_t m = next.count();
    if (tuple.size() >= 2 && m >= n) continue;  // chain must shrink strictly
    // Each later step removes at least one vertex and the tail keeps two.
    // The first vertex only bounds N(v_1, v_2) from above.
    if (m < 2 + (t - std::max<std::size_t>(tuple.size(), 1) - 1)) continue;
    tuple.push_back(v);
    used.set(v);
    if (good_tuple_search(g, t, tuple, used, next)) return true;
    used.reset(v);
    tuple.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::vector<std::size_t>> find_good_tuple(const BipartiteGraph& g, std::size_t t) {
  if (t < 2) throw PreconditionError("find_good_tuple requires t >= 2");
  if (g.a_size() > 64) throw ScaleGuardError("find_good_tuple: |A| must be <= 64");
  Bitset all(g.b_size());
  all.set();
  Bitset used(g.a_size());
  std::vector<std::size_t> tuple;
  if (!good_tuple_search(g, t, tuple, used, all)) return std::nullopt;
  return tuple;
}

LayeredGraph generate_h_d_delta(std::size_t d, std::size_t delta) {
  if (d < 2 || delta < 1) throw PreconditionError("H_{d,Delta} requires d >= 2 and Delta >= 1");
  const std::uint64_t e = checked_pow(delta, d);
  if (e > 40) throw ScaleGuardError("H_{d,Delta}: 2^(Delta^d) is too large");
  const std::uint64_t k = (std::uint64_t{1} << e) + 1;

  std::uint64_t total = 2;
  for (std::size_t l = 3; l <= d + 1; ++l) {
    total += checked_pow(k, l - 2) + checked_pow(k, l - 1);
    if (total > 100'000) {
      throw ScaleGuardError("H_{d,Delta}: more than 10^5 vertices for d=" + std::to_string(d) +
                            ", Delta=" + std::to_string(delta));
    }
  }

  LayeredGraph out;
  out.k = k;
  out.b_sequences = {{}, {}};
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t l = 3; l <= d + 1; ++l) {
    std::vector<std::size_t> seq(l - 2, 0);
    while (true) {
      index[seq] = out.b_sequences.size();
      out.b_sequences.push_back(seq);
      std::size_t i = seq.size();
      while (i > 0 && ++seq[i - 1] == k) seq[--i] = 0;
      if (i == 0) break;
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t a = 0;
  for (std::size_t b = 2; b < out.b_sequences.size(); ++b) {
    const auto& seq = out.b_sequences[b];
    std::vector<std::size_t> nbrs = {0, 1};
    for (std::size_t len = 1; len <= seq.size(); ++len) {
      nbrs.push_back(index.at(std::vector<std::size_t>(seq.begin(), seq.begin() + len)));
    }
    for (std::uint64_t c = 0; c < k; ++c, ++a) {
      for (auto n : nbrs) edges.emplace_back(a, n);
    }
  }
  out.graph = BipartiteGraph::from_edges(a, out.b_sequences.size(), edges);
  return out;
}

}  // namespace ffinc
