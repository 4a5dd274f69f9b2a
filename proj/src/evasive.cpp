#include "ffinc/evasive.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_map>

#include "ffinc/rng.hpp"

namespace ffinc {

namespace {

void check_points(const std::vector<Vector>& points, std::size_t d) {
  for (const auto& x : points) {
    if (x.size() != d) throw PreconditionError("point of wrong dimension in point set");
  }
}

std::vector<Echelon> all_subspaces(const PrimeField& field, std::size_t d, std::size_t k) {
  std::vector<Echelon> out;
  for_each_subspace(field, d, k, [&](const Echelon& e) { out.push_back(e); });
  return out;
}

}  // namespace

std::vector<Vector> sorted_unique(std::vector<Vector> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

EvasiveCertificate verify_subspace_evasive(const PrimeField& field, std::size_t d,
                                           const std::vector<Vector>& points, std::size_t k,
                                           std::size_t s) {
  if (k > d) throw PreconditionError("flat dimension exceeds ambient dimension");
  if (s == 0) throw PreconditionError("evasiveness threshold s must be >= 1");
  check_points(points, d);
  if (sorted_unique(points).size() != points.size()) {
    throw PreconditionError("point set contains duplicates");
  }
  check_grid(field.p(), d, "verify_subspace_evasive");

  EvasiveCertificate cert{k, s, true, 0, std::nullopt};
  if (points.empty()) return cert;

  for_each_subspace(field, d, k, [&](const Echelon& e) {
    std::unordered_map<std::uint64_t, std::size_t> buckets;
    for (const auto& x : points) {
      const std::size_t c = ++buckets[encode(field, e.reduce(field, x))];
      if (c > cert.max_intersection) {
        cert.max_intersection = c;
        cert.worst_flat = AffineFlat::from_directions(field, x, e.rows);
      }
    }
  });
  cert.verified = cert.max_intersection < s;
  return cert;
}

EvasiveSearchResult evasive_search_best(const PrimeField& field, std::size_t d, std::size_t k,
                                        std::size_t s, std::size_t target_size,
                                        std::size_t max_attempts, std::uint64_t seed,
                                        bool exclude_origin) {
  if (k > d) throw PreconditionError("flat dimension exceeds ambient dimension");
  if (s == 0) throw PreconditionError("evasiveness threshold s must be >= 1");
  check_grid(field.p(), d, "random_evasive_search");

  const auto subspaces = all_subspaces(field, d, k);
  const std::uint64_t grid = checked_pow(field.p(), d);
  Rng rng(seed);
  EvasiveSearchResult best;

  std::vector<std::uint64_t> order(grid);
  std::vector<std::uint64_t> keys(subspaces.size());
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    for (std::uint64_t c = 0; c < grid; ++c) order[c] = c;
    rng.shuffle(order);

    std::vector<std::unordered_map<std::uint64_t, std::size_t>> counts(subspaces.size());
    std::vector<Vector> chosen;
    for (std::uint64_t code : order) {
      if (chosen.size() >= target_size) break;
      if (exclude_origin && code == 0) continue;
      const Vector x = decode(field, code, d);
      bool ok = true;
      for (std::size_t i = 0; i < subspaces.size() && ok; ++i) {
        keys[i] = encode(field, subspaces[i].reduce(field, x));
        auto it = counts[i].find(keys[i]);
        ok = (it == counts[i].end() ? 0 : it->second) + 1 < s;
      }
      if (!ok) continue;
      for (std::size_t i = 0; i < subspaces.size(); ++i) ++counts[i][keys[i]];
      chosen.push_back(x);
    }
    best.attempts = attempt + 1;
    if (chosen.size() > best.points.size() || attempt == 0) best.points = std::move(chosen);
    if (best.points.size() >= target_size) {
      best.reached_target = true;
      break;
    }
  }
  best.points = sorted_unique(std::move(best.points));
  return best;
}

std::optional<std::vector<Vector>> random_evasive_search(const PrimeField& field, std::size_t d,
                                                         std::size_t k, std::size_t s,
                                                         std::size_t target_size,
                                                         std::size_t max_attempts,
                                                         std::uint64_t seed) {
  auto r = evasive_search_best(field, d, k, s, target_size, max_attempts, seed);
  if (!r.reached_target) return std::nullopt;
  return std::move(r.points);
}

Vector projective_normalize(const PrimeField& field, Vector v) {
  auto lead = std::find_if(v.begin(), v.end(), [](Residue c) { return c != 0; });
  if (lead == v.end()) throw PreconditionError("the zero vector has no direction");
  const Residue inv = field.inv(*lead);
  for (auto& c : v) c = field.mul(c, inv);
  return v;
}

std::vector<Vector> dedup_lines_through_origin(const PrimeField& field,
                                               const std::vector<Vector>& points) {
  std::set<Vector> seen;
  std::vector<Vector> out;
  for (const auto& x : points) {
    if (seen.insert(projective_normalize(field, x)).second) out.push_back(x);
  }
  return out;
}

std::vector<Vector> union_random_translates(const PrimeField& field, std::size_t d,
                                            const std::vector<Vector>& base, std::size_t count,
                                            std::uint64_t seed,
                                            const std::optional<AffineFlat>& shift_space,
                                            std::vector<Vector>* shifts_out) {
  check_points(base, d);
  check_grid(field.p(), d, "union_random_translates");
  if (shift_space && shift_space->ambient_dim() != d) {
    throw PreconditionError("shift space has the wrong ambient dimension");
  }
  Rng rng(seed);
  std::vector<Vector> shifts;
  for (std::size_t i = 0; i < count; ++i) {
    Vector u(d);
    if (shift_space) {
      u = shift_space->base();
      for (const auto& b : shift_space->basis()) {
        const Residue c = static_cast<Residue>(rng.below(field.p()));
        u = vec_add(field, u, vec_scale(field, c, b));
      }
    } else {
      for (auto& c : u) c = static_cast<Residue>(rng.below(field.p()));
    }
    shifts.push_back(std::move(u));
  }
  std::vector<Vector> out;
  out.reserve(base.size() * count);
  for (const auto& u : shifts) {
    for (const auto& x : base) out.push_back(vec_add(field, x, u));
  }
  if (shifts_out) *shifts_out = std::move(shifts);
  return sorted_unique(std::move(out));
}

}  // namespace ffinc
