#include "ffinc/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "ffinc/rng.hpp"

namespace ffinc {

Configuration::Configuration(const PrimeField& field, std::size_t d, std::vector<Vector> points,
                             std::vector<Hyperplane> hyperplanes)
    : field_(field), d_(d), points_(std::move(points)), hyperplanes_(std::move(hyperplanes)) {
  for (const auto& x : points_) {
    if (x.size() != d_) throw PreconditionError("configuration point of wrong dimension");
  }
  for (const auto& h : hyperplanes_) {
    if (h.ambient_dim() != d_) throw PreconditionError("configuration hyperplane of wrong dimension");
  }
  if (std::set<Vector>(points_.begin(), points_.end()).size() != points_.size()) {
    throw PreconditionError("configuration points are not distinct");
  }
  if (std::set<Hyperplane>(hyperplanes_.begin(), hyperplanes_.end()).size() !=
      hyperplanes_.size()) {
    throw PreconditionError("configuration hyperplanes are not distinct");
  }
  graph_ = incidence_graph(field_, points_, hyperplanes_);
}

bool ConstructionReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& kv) { return kv.second; });
}

std::vector<Hyperplane> hyperplanes_from_normals(const PrimeField& field,
                                                 const std::vector<Vector>& normals) {
  std::vector<Hyperplane> out;
  out.reserve(normals.size() * field.p());
  for (const auto& w : normals) {
    for (Residue b = 0; b < field.p(); ++b) out.push_back(Hyperplane::make(field, w, b));
  }
  return out;
}

std::pair<Configuration, ConstructionReport> build_construction1(
    const PrimeField& field, std::size_t d, std::size_t t, std::size_t s,
    const std::vector<Vector>& evasive_P, const std::vector<Vector>& evasive_N0) {
  if (t < 2 || t > d) throw PreconditionError("construction 1 requires 2 <= t <= d");
  for (const auto& w : evasive_N0) {
    if (w.size() == d && is_zero(w)) throw PreconditionError("normal set contains the zero vector");
  }
  const auto cert_p = verify_subspace_evasive(field, d, evasive_P, d - t, s);
  if (!cert_p.verified) {
    throw PreconditionError("point set is not (" + std::to_string(d - t) + ", " +
                            std::to_string(s) + ")-evasive: a flat holds " +
                            std::to_string(cert_p.max_intersection) + " points");
  }
  const auto cert_n = verify_subspace_evasive(field, d, evasive_N0, t - 1, s);
  if (!cert_n.verified) {
    throw PreconditionError("normal set is not (" + std::to_string(t - 1) + ", " +
                            std::to_string(s) + ")-evasive: a flat holds " +
                            std::to_string(cert_n.max_intersection) + " points");
  }

  const auto normals = dedup_lines_through_origin(field, evasive_N0);
  Configuration config(field, d, evasive_P, hyperplanes_from_normals(field, normals));

  ConstructionReport r;
  r.parameters = {{"p", field.p()}, {"d", static_cast<std::int64_t>(d)},
                  {"t", static_cast<std::int64_t>(t)}, {"s", static_cast<std::int64_t>(s)}};
  const auto m = static_cast<std::int64_t>(config.points().size());
  const auto n = static_cast<std::int64_t>(config.hyperplanes().size());
  const auto I = static_cast<std::int64_t>(config.incidences());
  r.measured = {{"m", m},
                {"n", n},
                {"N0", static_cast<std::int64_t>(evasive_N0.size())},
                {"N", static_cast<std::int64_t>(normals.size())},
                {"incidences", I},
                {"target_incidences", m * n / field.p()}};
  r.verdicts["exact_incidence_law"] = I * field.p() == m * n;
  r.verdicts["kss_free"] = !contains_kss(config.graph(), s).has_value();
  return {std::move(config), std::move(r)};
}

Construction1Ingredients search_construction1_ingredients(const PrimeField& field, std::size_t d,
                                                          std::size_t t, std::size_t s,
                                                          std::size_t attempts,
                                                          std::uint64_t seed) {
  if (t < 2 || t > d) throw PreconditionError("construction 1 requires 2 <= t <= d");
  Construction1Ingredients in;
  in.points_target = checked_pow(field.p(), t);
  in.normals_target = checked_pow(field.p(), d - t + 1);
  in.points = evasive_search_best(field, d, d - t, s, in.points_target, attempts,
                                  derive_seed(seed, "construction1/P"))
                  .points;
  in.normals = evasive_search_best(field, d, t - 1, s, in.normals_target, attempts,
                                   derive_seed(seed, "construction1/N0"), true)
                   .points;
  return in;
}

Configuration subsample(const Configuration& config, std::size_t m, std::size_t n,
                        std::size_t trials, std::uint64_t seed) {
  const std::size_t M = config.points().size();
  const std::size_t N = config.hyperplanes().size();
  if (m > M || n > N) {
    throw PreconditionError("cannot subsample " + std::to_string(m) + "+" + std::to_string(n) +
                            " from " + std::to_string(M) + "+" + std::to_string(N));
  }
  if (trials == 0) throw PreconditionError("subsample needs at least one trial");
  Rng rng(seed);
  std::vector<std::size_t> best_p, best_h;
  std::size_t best = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    auto ps = rng.sample_indices(M, m);
    auto hs = rng.sample_indices(N, n);
    Bitset mask(N);
    for (auto h : hs) mask.set(h);
    std::size_t inc = 0;
    for (auto p : ps) inc += (config.graph().neighbors_a(p) & mask).count();
    if (i == 0 || inc > best) {
      best = inc;
      best_p = std::move(ps);
      best_h = std::move(hs);
    }
  }
  std::sort(best_p.begin(), best_p.end());
  std::sort(best_h.begin(), best_h.end());
  std::vector<Vector> pts;
  std::vector<Hyperplane> hps;
  for (auto i : best_p) pts.push_back(config.points()[i]);
  for (auto j : best_h) hps.push_back(config.hyperplanes()[j]);
  return Configuration(config.field(), config.dim(), std::move(pts), std::move(hps));
}

namespace {

AffineFlat last_coordinate_zero(const PrimeField& field, std::size_t d) {
  std::vector<Vector> dirs;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    Vector e(d, 0);
    e[i] = 1;
    dirs.push_back(std::move(e));
  }
  return AffineFlat::from_directions(field, Vector(d, 0), dirs);
}

}  // namespace

std::pair<Configuration, ConstructionReport> build_construction2(
    const PrimeField& field, std::size_t d, std::size_t t, std::size_t k, std::size_t l,
    std::size_t s, std::uint64_t seed, std::size_t attempts) {
  if (t < 1 || t + 1 > d) throw PreconditionError("construction 2 requires 1 <= t <= d-1");
  const std::uint64_t cap = checked_pow(field.p(), d - t);
  if (k < 1 || l < 1 || k > cap || l > cap) {
    throw PreconditionError("construction 2 requires 1 <= k, l <= p^(d-t)");
  }
  const Residue p = field.p();
  ConstructionReport r;
  r.parameters = {{"p", p},
                  {"d", static_cast<std::int64_t>(d)},
                  {"t", static_cast<std::int64_t>(t)},
                  {"k", static_cast<std::int64_t>(k)},
                  {"l", static_cast<std::int64_t>(l)},
                  {"s", static_cast<std::int64_t>(s)}};

  // Point side.
  const auto p0 = evasive_search_best(field, d, d - t, s, checked_pow(p, t), attempts,
                                      derive_seed(seed, "construction2/P0"));
  if (!p0.reached_target) r.notes.push_back("P0 below nominal size p^t");
  std::vector<Vector> P;
  std::size_t tries = 0;
  for (; tries < 64; ++tries) {
    P = union_random_translates(field, d, p0.points, k, derive_seed(seed, "construction2/P", tries));
    if (2 * P.size() >= k * p0.points.size()) break;
  }
  if (tries == 64) throw RetryExhaustedError("construction 2: translates of P0 overlap too much");

  // Normal side.
  const auto q0 = evasive_search_best(field, d, d - t + 1, s, checked_pow(p, t - 1), attempts,
                                      derive_seed(seed, "construction2/Q0"));
  if (!q0.reached_target) r.notes.push_back("Q0 below nominal size p^(t-1)");
  std::vector<Vector> Q0;
  Rng shift_rng(derive_seed(seed, "construction2/Q0-shift"));
  for (tries = 0; tries < 256; ++tries) {
    Vector z(d);
    for (auto& c : z) c = static_cast<Residue>(shift_rng.below(p));
    Q0.clear();
    std::size_t in_u = 0;
    for (const auto& q : q0.points) {
      Q0.push_back(vec_add(field, q, z));
      in_u += Q0.back().back() == 0;
    }
    if (in_u * p <= Q0.size()) break;
  }
  if (tries == 256) throw RetryExhaustedError("construction 2: no translate of Q0 avoids x_d = 0");
  std::vector<Vector> Q1;
  for (const auto& q : Q0) {
    if (q.back() != 0) Q1.push_back(q);
  }
  const auto Q2 = union_random_translates(field, d, Q1, s * l, derive_seed(seed, "construction2/Q2"),
                                          last_coordinate_zero(field, d));
  const auto Q = dedup_lines_through_origin(field, Q2);

  Configuration config(field, d, P, hyperplanes_from_normals(field, Q));
  const auto m = static_cast<std::int64_t>(config.points().size());
  const auto n = static_cast<std::int64_t>(config.hyperplanes().size());
  const auto I = static_cast<std::int64_t>(config.incidences());
  r.measured = {{"P0", static_cast<std::int64_t>(p0.points.size())},
                {"Q0", static_cast<std::int64_t>(Q0.size())},
                {"Q1", static_cast<std::int64_t>(Q1.size())},
                {"Q2", static_cast<std::int64_t>(Q2.size())},
                {"Q", static_cast<std::int64_t>(Q.size())},
                {"m", m},
                {"n", n},
                {"incidences", I},
                {"target_incidences", m * n / p}};

  // (i): every point on exactly |H|/p hyperplanes.
  bool regular = true;
  for (std::size_t i = 0; i < config.points().size(); ++i) {
    regular = regular && config.graph().neighbors_a(i).count() * p == config.hyperplanes().size();
  }
  r.verdicts["exact_incidence_law"] = I * p == m * n;
  r.verdicts["regularity"] = regular;
  r.verdicts["point_count_range"] =
      2 * P.size() >= k * p0.points.size() && P.size() <= k * p0.points.size();
  r.verdicts["hyperplane_count_upper"] =
      static_cast<std::size_t>(n) <= s * l * p * q0.points.size();

  // (ii): every (d-t+a)-flat holds fewer than s·k·p^a points.
  bool prop2 = true;
  for (std::size_t a = 1; a + 1 <= t; ++a) {
    const auto bound = s * k * checked_pow(p, a);
    const auto cert = verify_subspace_evasive(field, d, P, d - t + a, bound);
    r.measured["property_ii_max_a" + std::to_string(a)] =
        static_cast<std::int64_t>(cert.max_intersection);
    prop2 = prop2 && cert.verified;
  }
  r.verdicts["property_ii"] = prop2;

  // (iii): every (t-1-b)-flat lies in fewer than s^2·l·p^b hyperplanes.
  bool prop3 = true;
  for (std::size_t b = 1; b + 2 <= t; ++b) {
    const auto bound = s * s * l * checked_pow(p, b);
    std::size_t worst = 0;
    for_each_flat(field, d, t - 1 - b, [&](const AffineFlat& f) {
      std::size_t c = 0;
      for (const auto& h : config.hyperplanes()) c += h.contains_flat(field, f);
      worst = std::max(worst, c);
    });
    r.measured["property_iii_max_b" + std::to_string(b)] = static_cast<std::int64_t>(worst);
    prop3 = prop3 && worst < bound;
  }
  r.verdicts["property_iii"] = prop3;
  return {std::move(config), std::move(r)};
}

Configuration blowup(const Configuration& config, BlowupMode mode, std::size_t k, std::size_t l,
                     std::uint64_t q) {
  const PrimeField& field = config.field();
  if (q != field.p()) {
    throw PreconditionError("invalid q: only q = p is supported (got q = " + std::to_string(q) +
                            ", p = " + std::to_string(field.p()) + ")");
  }
  if (k < 1 || l < 1 || k > q || l > q) throw PreconditionError("blow-up requires 1 <= k, l <= q");
  if (mode == BlowupMode::Hyperplanes && k != 1) {
    throw PreconditionError("hyperplane blow-up keeps one copy of each point (k = 1)");
  }
  if (mode == BlowupMode::Points && l != 1) {
    throw PreconditionError("point blow-up keeps one copy of each hyperplane (l = 1)");
  }
  const std::size_t extra = mode == BlowupMode::Both ? 2 : 1;
  const std::size_t d = config.dim() + extra;

  std::vector<Vector> pts;
  for (const auto& x : config.points()) {
    for (std::size_t i = 0; i < k; ++i) {
      Vector y = x;
      y.push_back(mode == BlowupMode::Hyperplanes ? 0 : static_cast<Residue>(i));
      if (extra == 2) y.push_back(0);
      pts.push_back(std::move(y));
    }
  }
  std::vector<Hyperplane> hps;
  for (const auto& h : config.hyperplanes()) {
    for (std::size_t j = 0; j < l; ++j) {
      Vector a = h.normal();
      if (mode == BlowupMode::Both) {
        a.push_back(0);
        a.push_back(static_cast<Residue>(j));
      } else {
        a.push_back(mode == BlowupMode::Hyperplanes ? static_cast<Residue>(j) : 0);
      }
      hps.push_back(Hyperplane::make(field, std::move(a), h.offset()));
    }
  }
  return Configuration(field, d, std::move(pts), std::move(hps));
}

std::size_t shifted_unit_distances(const PrimeField& field, const std::vector<Vector>& U,
                                   const Vector& x, const BilinearForm& form) {
  const std::size_t d = form.dim();
  check_grid(field.p(), d, "shifted_unit_distances");
  std::vector<bool> member(checked_pow(field.p(), d), false);
  std::vector<Vector> pts;
  for (const auto& u : U) {
    for (const auto& y : {u, vec_add(field, u, x)}) {
      const auto c = encode(field, y);
      if (!member[c]) {
        member[c] = true;
        pts.push_back(y);
      }
    }
  }
  const UnitSphere unit{Vector(d, 0), form};
  const auto offsets = sphere_points(field, unit);
  std::size_t twice = 0;
  for (const auto& u : pts) {
    for (const auto& e : offsets) twice += member[encode(field, vec_add(field, u, e))];
  }
  return twice / 2;
}

namespace {

std::uint64_t integer_root_ceil(std::uint64_t n, unsigned e) {
  std::uint64_t r = 1;
  while (checked_pow(r, e) < n) ++r;
  return r;
}

}  // namespace

UnitDistanceBuild build_unit_distance_pointset(std::size_t n, std::size_t d,
                                               std::size_t shift_trials, std::uint64_t seed) {
  if (d < 2) throw PreconditionError("unit-distance construction requires d >= 2");
  if (n < 1) throw PreconditionError("unit-distance construction requires n >= 1");
  if (shift_trials < 1) throw PreconditionError("at least one shift trial is required");
  const unsigned e = static_cast<unsigned>((d + 1) / 2 + 1);
  UnitDistanceBuild out;
  out.d = d;
  out.p = next_prime_3mod4(std::max<std::uint64_t>(2, integer_root_ceil(n, e)));
  const PrimeField field(out.p);
  check_grid(field.p(), d, "build_unit_distance_pointset");
  const BilinearForm form = BilinearForm::for_dimension(d);
  const std::size_t k = d / 2;
  const std::uint64_t target = checked_pow(out.p, d - k + 1);

  // Raise s until a (k-1, s)-evasive set of the target size turns up.
  for (std::size_t s = 2; s <= 16; ++s) {
    auto r = evasive_search_best(field, d, k - 1, s, target, 4,
                                 derive_seed(seed, "unit-distance/U", s));
    out.U = std::move(r.points);
    out.s_evasive = s;
    if (r.reached_target) break;
  }
  out.s_report = 4 * out.s_evasive;

  for (std::size_t i = 0; i < shift_trials; ++i) {
    Rng rng(derive_seed(seed, "unit-distance/shift", i));
    Vector x(d);
    for (auto& c : x) c = static_cast<Residue>(rng.below(out.p));
    const std::size_t c = shifted_unit_distances(field, out.U, x, form);
    if (i == 0 || c > out.shifted_unit_distances) {
      out.shifted_unit_distances = c;
      out.shift = x;
    }
  }
  std::vector<Vector> P = out.U;
  for (const auto& u : out.U) P.push_back(vec_add(field, u, out.shift));
  P = sorted_unique(std::move(P));
  out.shifted_size = P.size();

  if (P.size() > n) {
    Rng rng(derive_seed(seed, "unit-distance/subsample"));
    auto idx = rng.sample_indices(P.size(), n);
    std::sort(idx.begin(), idx.end());
    std::vector<Vector> sub;
    for (auto i : idx) sub.push_back(P[i]);
    P = std::move(sub);
  }
  out.points = std::move(P);
  const auto g = unit_distance_graph(field, out.points, form);
  out.unit_distances = g.unit_distances;
  out.kss_free = !contains_kss(g.double_cover(), out.s_report).has_value();

  if (d % 4 == 1) {
    const QuadraticExtensionField ext(out.p);
    for (const auto& x : out.points) out.mapped.push_back(phi_map(ext, x));
    out.mapped_unit_distances = ext_unit_distance_count(ext, out.mapped);
    for (std::size_t i = 0; i < out.points.size() && out.phi_preserves; ++i) {
      for (std::size_t j = i + 1; j < out.points.size(); ++j) {
        const bool unit_form =
            form.norm2(field, vec_sub(field, out.points[i], out.points[j])) == 1;
        ExtVector diff(d);
        for (std::size_t c = 0; c < d; ++c) diff[c] = ext.sub(out.mapped[i][c], out.mapped[j][c]);
        if (unit_form != (ext_norm2(ext, diff) == ExtElement{1, 0})) {
          out.phi_preserves = false;
          break;
        }
      }
    }
  }
  return out;
}

AlgebraicGraphBuild build_algebraic_graph(std::size_t d1, std::size_t d2, std::size_t s,
                                          std::uint64_t p, std::size_t max_retries,
                                          std::uint64_t seed, bool check_preconditions) {
  if (d1 < 1 || d2 < 1) throw PreconditionError("algebraic graph requires d1, d2 >= 1");
  if (s < 1) throw PreconditionError("algebraic graph requires s >= 1");
  const PrimeField field(p);
  const std::size_t D = d1 + d2;
  const std::size_t delta = D * D;
  if (check_preconditions && (s * s > delta || s * s * s * s > p)) {
    throw PreconditionError("algebraic graph requires s^2 <= min(Delta, sqrt(p)); got s = " +
                            std::to_string(s) + ", Delta = " + std::to_string(delta) +
                            ", p = " + std::to_string(p));
  }
  check_grid(p, D, "build_algebraic_graph");
  const std::uint64_t rows = checked_pow(p, d1);
  const std::uint64_t cols = checked_pow(p, d2);
  const std::uint64_t floor2 = checked_pow(p, D - 1);  // edges * 2 must reach this

  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    auto f = random_polynomial(field, D, delta, derive_seed(seed, "algebraic/f", attempt));
    const auto values = evaluate_grid(f);
    BipartiteGraph g(rows, cols);
    for (std::uint64_t c = 0; c < values.size(); ++c) {
      if (values[c] == 0) g.add_edge(c / cols, c % cols);
    }
    if (2 * g.edge_count() < floor2) continue;
    if (contains_kss(g, s)) continue;
    return AlgebraicGraphBuild{std::move(f), std::move(g), attempt + 1, floor2};
  }
  throw RetryExhaustedError("no K_{" + std::to_string(s) + "," + std::to_string(s) +
                            "}-free algebraic graph with enough edges after " +
                            std::to_string(max_retries) + " attempts");
}

PointVarietyBuild build_point_variety_config(std::size_t D, double alpha, std::size_t m,
                                             std::uint64_t p, std::size_t max_retries,
                                             std::uint64_t seed, std::size_t trials) {
  if (D < 1 || !(alpha > 0)) throw PreconditionError("point-variety config requires D >= 1, alpha > 0");
  const auto d2 = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(D) - 1e-9));
  const std::size_t s = D + d2;
  PointVarietyBuild out{build_algebraic_graph(D, d2, s, p, max_retries,
                                              derive_seed(seed, "point-variety/graph"), false)};
  out.d1 = D;
  out.d2 = d2;
  const PrimeField field(p);
  const BipartiteGraph& g = out.base.graph;
  const auto n = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(m), alpha) + 1e-9));
  if (m > g.a_size() || n > g.b_size()) {
    throw PreconditionError("point-variety config: m or m^alpha exceeds the grid");
  }

  Rng rng(derive_seed(seed, "point-variety/sample"));
  std::vector<std::size_t> best_p, best_q;
  std::size_t best = 0;
  for (std::size_t i = 0; i < std::max<std::size_t>(trials, 1); ++i) {
    auto ps = rng.sample_indices(g.a_size(), m);
    auto qs = rng.sample_indices(g.b_size(), n);
    Bitset mask(g.b_size());
    for (auto q : qs) mask.set(q);
    std::size_t e = 0;
    for (auto x : ps) e += (g.neighbors_a(x) & mask).count();
    if (i == 0 || e > best) {
      best = e;
      best_p = std::move(ps);
      best_q = std::move(qs);
    }
  }
  std::sort(best_p.begin(), best_p.end());
  std::sort(best_q.begin(), best_q.end());

  for (auto x : best_p) out.points.push_back(decode(field, x, D));
  BipartiteGraph sub(best_p.size(), best_q.size());
  for (std::size_t j = 0; j < best_q.size(); ++j) {
    out.parameters.push_back(decode(field, best_q[j], d2));
    // Full zero set V(f_q) over F_p^D.
    std::vector<Vector> zero_set;
    for (auto x = g.neighbors_b(best_q[j]).find_first(); x != Bitset::npos;
         x = g.neighbors_b(best_q[j]).find_next(x)) {
      zero_set.push_back(decode(field, x, D));
    }
    out.varieties.push_back(std::move(zero_set));
  }
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    for (std::size_t j = 0; j < out.varieties.size(); ++j) {
      const auto& V = out.varieties[j];
      if (std::binary_search(V.begin(), V.end(), out.points[i])) {
        ++out.incidences;
        sub.add_edge(i, j);
      }
      if (g.has_edge(best_p[i], best_q[j])) ++out.subgraph_edges;
    }
  }
  out.kss_free = !contains_kss(sub, s).has_value();
  return out;
}

}  // namespace ffinc
