#include <doctest.h>

#include "ffinc/bigraph.hpp"
#include "ffinc/rng.hpp"

using namespace ffinc;

namespace {

BipartiteGraph complete(std::size_t a, std::size_t b) {
  BipartiteGraph g(a, b);
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) g.add_edge(i, j);
  }
  return g;
}

BipartiteGraph matching(std::size_t n) {
  BipartiteGraph g(n, n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, i);
  return g;
}

/// Points vs all lines of F_p^2.
BipartiteGraph plane(std::uint64_t p) {
  const PrimeField f(p);
  std::vector<Hyperplane> lines;
  for (const auto& fl : enumerate_flats(f, 2, 1)) {
    const auto& dir = fl.basis()[0];
    const Vector normal = {f.neg(dir[1]), dir[0]};
    lines.push_back(Hyperplane::make(f, normal, dot(f, normal, fl.base())));
  }
  return incidence_graph(f, all_points(f, 2), lines);
}

std::size_t count(const Pattern& p, Label l) {
  return static_cast<std::size_t>(std::count(p.labels.begin(), p.labels.end(), l));
}

}  // namespace

TEST_CASE("graph basics") {
  BipartiteGraph g(3, 2);
  g.add_edge(0, 1);
  g.add_edge(2, 0);
  g.add_edge(2, 1);
  CHECK(g.edge_count() == 3);
  CHECK(g.max_degree() == 2);
  CHECK(g.neighbors_b(1).count() == 2);
  CHECK(g.transposed().transposed() == g);
  CHECK(g.edges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 0}, {2, 1}});
  CHECK_THROWS(g.add_edge(3, 0));
  CHECK(incidence_count(BipartiteGraph(4, 4)) == 0);
}

TEST_CASE("incidence counts of full planes") {
  CHECK(incidence_count(plane(2)) == 12);
  CHECK(incidence_count(plane(3)) == 36);
}

TEST_CASE("Pi_d labels") {
  const auto p3 = make_pi_d(3);
  CHECK(count(p3, Label::Zero) == 1);
  CHECK(p3.at(0, 2) == Label::Zero);
  const auto p5 = make_pi_d(5);
  CHECK(count(p5, Label::Zero) == 3);
  CHECK(p5.at(0, 2) == Label::Zero);
  CHECK(p5.at(1, 3) == Label::Zero);
  CHECK(p5.at(2, 4) == Label::Zero);
  CHECK(count(make_pi_d(4), Label::One) == 13);
  CHECK_THROWS_AS(make_pi_d(2), PreconditionError);
}

TEST_CASE("pattern search") {
  auto g = complete(3, 3);
  CHECK_FALSE(find_pattern(g, make_pi_d(3)).has_value());
  BipartiteGraph h(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (!(i == 0 && j == 2)) h.add_edge(i, j);
    }
  }
  const auto w = find_pattern(h, make_pi_d(3));
  REQUIRE(w.has_value());
  CHECK(check_witness(h, make_pi_d(3), *w));
  CHECK_THROWS_AS(find_pattern(complete(65, 2), make_pi_d(3)), ScaleGuardError);
}

TEST_CASE("pattern search is orientation complete") {
  Rng rng(11);
  const auto pi = make_pi_d(3);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t a = 3 + rng.below(6), b = 3 + rng.below(6);
    BipartiteGraph g(a, b);
    for (std::size_t i = 0; i < a; ++i) {
      for (std::size_t j = 0; j < b; ++j) {
        if (rng.below(3) != 0) g.add_edge(i, j);
      }
    }
    const auto w = find_pattern(g, pi);
    CHECK(w.has_value() == find_pattern(g.transposed(), pi).has_value());
    if (w) CHECK(check_witness(g, pi, *w));
  }
}

TEST_CASE("K_{s,s} detection") {
  CHECK(contains_kss(complete(2, 3), 2).has_value());
  CHECK_FALSE(contains_kss(matching(4), 2).has_value());
  CHECK_FALSE(contains_kss(plane(3), 2).has_value());
  CHECK(contains_kss(plane(3), 1).has_value());
  CHECK_FALSE(contains_kss(BipartiteGraph(0, 0), 1).has_value());
  const auto b = contains_kss(complete(4, 5), 3);
  REQUIRE(b.has_value());
  CHECK(b->a_side.size() == 3);
  CHECK(b->b_side.size() == 3);
}

TEST_CASE("rs") {
  CHECK(rs(complete(2, 3)) == 6);
  CHECK(rs(matching(3)) == 1);
  CHECK(rs(plane(2)) == 3);  // a point and its three lines
  CHECK(rs(complete(5, 7)) == 35);
  CHECK(rs(BipartiteGraph(3, 3)) == 0);
  CHECK_THROWS_AS(rs(complete(21, 21)), ScaleGuardError);
}

TEST_CASE("good tuples") {
  const auto t = find_good_tuple(complete(2, 2), 2);
  REQUIRE(t.has_value());
  CHECK(t->size() == 2);
  CHECK_FALSE(find_good_tuple(matching(5), 2).has_value());
  CHECK_THROWS(find_good_tuple(complete(2, 2), 1));
}

TEST_CASE("H_{d,Delta}") {
  const auto h = generate_h_d_delta(2, 2);
  CHECK(h.k == 17);
  CHECK(h.graph.b_size() == 19);
  CHECK(h.graph.a_size() == 289);
  for (std::size_t a = 0; a < h.graph.a_size(); ++a) CHECK(h.graph.neighbors_a(a).count() == 3);
  const auto small = generate_h_d_delta(2, 1);
  CHECK(small.graph.b_size() == 5);
  CHECK(small.graph.a_size() == 9);
  const auto deep = generate_h_d_delta(3, 1);
  for (std::size_t u = 2; u < deep.graph.b_size(); ++u) {
    for (std::size_t v = u + 1; v < deep.graph.b_size(); ++v) {
      const auto& su = deep.b_sequences[u];
      const auto& sv = deep.b_sequences[v];
      const auto n = std::min(su.size(), sv.size());
      const bool prefix = std::equal(su.begin(), su.begin() + n, sv.begin());
      CHECK(prefix == (deep.graph.neighbors_b(u) & deep.graph.neighbors_b(v)).any());
    }
  }
  CHECK_THROWS_AS(generate_h_d_delta(3, 2), ScaleGuardError);
  CHECK_THROWS_AS(generate_h_d_delta(1, 1), PreconditionError);
}
