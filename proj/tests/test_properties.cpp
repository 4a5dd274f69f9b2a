#include <doctest.h>

#include <algorithm>
#include <set>

#include "ffinc/bigraph.hpp"
#include "ffinc/constructions.hpp"
#include "ffinc/evasive.hpp"
#include "ffinc/exponent.hpp"
#include "ffinc/rng.hpp"

using namespace ffinc;

namespace {

BipartiteGraph from_mask(std::size_t a, std::size_t b, std::uint64_t mask) {
  BipartiteGraph g(a, b);
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      if (mask >> (i * b + j) & 1) g.add_edge(i, j);
    }
  }
  return g;
}

// Every A-subset with its full common neighborhood.
std::size_t rs_oracle(const BipartiteGraph& g) {
  std::size_t best = 0;
  for (std::uint32_t s = 1; s < (1u << g.a_size()); ++s) {
    std::size_t common = 0;
    for (std::size_t j = 0; j < g.b_size(); ++j) {
      bool all = true;
      for (std::size_t i = 0; i < g.a_size(); ++i) {
        if ((s >> i & 1) && !g.has_edge(i, j)) all = false;
      }
      common += all;
    }
    best = std::max(best, static_cast<std::size_t>(std::popcount(s)) * common);
  }
  return best;
}

bool kss_oracle(const BipartiteGraph& g, std::size_t s) {
  for (std::uint32_t m = 0; m < (1u << g.a_size()); ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) != s) continue;
    std::size_t common = 0;
    for (std::size_t j = 0; j < g.b_size(); ++j) {
      bool all = true;
      for (std::size_t i = 0; i < g.a_size(); ++i) {
        if ((m >> i & 1) && !g.has_edge(i, j)) all = false;
      }
      common += all;
    }
    if (common >= s) return true;
  }
  return false;
}

Vector random_vector(Rng& rng, const PrimeField& f, std::size_t d) {
  Vector v(d);
  for (auto& x : v) x = static_cast<Residue>(rng.below(f.p()));
  return v;
}

Configuration random_configuration(const PrimeField& f, std::size_t d, std::size_t m, std::size_t n,
                                   Rng& rng) {
  std::set<Vector> pts;
  while (pts.size() < m) pts.insert(random_vector(rng, f, d));
  const std::vector<Vector> pv(pts.begin(), pts.end());
  std::set<Hyperplane> hs;
  while (hs.size() < n) {
    Vector w = random_vector(rng, f, d);
    if (is_zero(w)) continue;
    // Most hyperplanes pass through a chosen point so the graph is not empty.
    const auto& x = pv[rng.below(pv.size())];
    const Residue b = rng.below(4) == 0 ? static_cast<Residue>(rng.below(f.p())) : dot(f, w, x);
    hs.insert(Hyperplane::make(f, w, b));
  }
  return Configuration(f, d, pv, {hs.begin(), hs.end()});
}

}  // namespace

TEST_CASE("rs and K_{s,s} agree with brute force on every small graph") {
  for (std::size_t a = 1; a <= 4; ++a) {
    for (std::size_t b = 1; b <= 4; ++b) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (a * b)); ++mask) {
        const auto g = from_mask(a, b, mask);
        const auto r = rs(g);
        REQUIRE(r == rs_oracle(g));
        for (std::size_t s = 1; s <= std::min(a, b); ++s) {
          const bool has = contains_kss(g, s).has_value();
          REQUIRE(has == kss_oracle(g, s));
          if (has) REQUIRE(r >= s * s);
        }
      }
    }
  }
}

TEST_CASE("found bicliques are real") {
  Rng rng(11);
  for (int it = 0; it < 300; ++it) {
    const auto g = from_mask(6, 6, rng.next() & ((std::uint64_t{1} << 36) - 1));
    for (std::size_t s = 2; s <= 3; ++s) {
      if (const auto b = contains_kss(g, s)) {
        REQUIRE(b->a_side.size() == s);
        REQUIRE(b->b_side.size() == s);
        for (auto i : b->a_side) {
          for (auto j : b->b_side) REQUIRE(g.has_edge(i, j));
        }
      }
    }
  }
}

TEST_CASE("point-hyperplane graphs avoid Pi_d") {
  Rng rng(2024);
  for (std::uint64_t p : {2, 3, 5}) {
    const PrimeField f(p);
    for (std::size_t d : {3, 4}) {
      const auto pi = make_pi_d(d);
      for (int it = 0; it < 15; ++it) {
        const auto total = checked_pow(p, d);
        const std::size_t m = std::min<std::uint64_t>(total, 6 + rng.below(7));
        const auto c = random_configuration(f, d, m, 6 + rng.below(7), rng);
        INFO("p=", p, " d=", d, " it=", it);
        CHECK_FALSE(find_pattern(c.graph(), pi).has_value());
      }
    }
  }
}

TEST_CASE("any returned pattern witness checks out") {
  Rng rng(8);
  const auto pi = make_pi_d(3);
  std::size_t found = 0;
  for (int it = 0; it < 200; ++it) {
    const auto g = from_mask(5, 5, rng.next() & ((std::uint64_t{1} << 25) - 1));
    if (const auto w = find_pattern(g, pi)) {
      ++found;
      REQUIRE(check_witness(g, pi, *w));
    }
  }
  CHECK(found > 0);
}

TEST_CASE("hyperplane canonical form ignores scaling") {
  Rng rng(3);
  const PrimeField f(7);
  for (int it = 0; it < 500; ++it) {
    Vector w = random_vector(rng, f, 3);
    if (is_zero(w)) continue;
    const Residue b = static_cast<Residue>(rng.below(7));
    const Residue c = static_cast<Residue>(1 + rng.below(6));
    const auto h = Hyperplane::make(f, w, b);
    REQUIRE(h == Hyperplane::make(f, vec_scale(f, c, w), f.mul(c, b)));
    const auto x = random_vector(rng, f, 3);
    REQUIRE(h.contains(f, x) == (dot(f, w, x) == b));
  }
}

TEST_CASE("blow-ups multiply incidences by k*l") {
  Rng rng(19);
  const PrimeField f(3);
  for (int it = 0; it < 30; ++it) {
    const auto c = random_configuration(f, 2, 3 + rng.below(4), 3 + rng.below(4), rng);
    const auto mode = static_cast<BlowupMode>(it % 3);
    const std::size_t k = mode == BlowupMode::Hyperplanes ? 1 : 1 + rng.below(3);
    const std::size_t l = mode == BlowupMode::Points ? 1 : 1 + rng.below(3);
    const auto big = blowup(c, mode, k, l, 3);
    REQUIRE(big.points().size() == k * c.points().size());
    REQUIRE(big.hyperplanes().size() == l * c.hyperplanes().size());
    REQUIRE(big.incidences() == k * l * c.incidences());
  }
}

TEST_CASE("translates of an evasive set stay within the union bound") {
  const PrimeField f(5);
  const auto base = evasive_search_best(f, 3, 1, 3, 25, 4, 7, false).points;
  REQUIRE(verify_subspace_evasive(f, 3, base, 1, 3).verified);
  for (std::size_t count = 1; count <= 3; ++count) {
    const auto u = union_random_translates(f, 3, base, count, 100 + count, std::nullopt, nullptr);
    CHECK(u.size() <= count * base.size());
    CHECK(verify_subspace_evasive(f, 3, u, 1, 3 * count).verified);
  }
}

TEST_CASE("derived seeds are distinct and stable") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, "instance", i));
  CHECK(seen.size() == 1000);
  CHECK(derive_seed(42, "a") != derive_seed(42, "b"));
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) REQUIRE(a.below(97) == b.below(97));
}

TEST_CASE("combined exponent stays in [d/(d+1), 1)") {
  for (std::int64_t d = 2; d <= 6; ++d) {
    for (std::int64_t i = 1; i <= 400; ++i) {
      const auto c = predicted_exponent(d, Rational(i, 40)).combined();
      CHECK((c >= Rational(d, d + 1)));
      CHECK((c < 1));
    }
  }
}
