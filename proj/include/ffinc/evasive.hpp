#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ffinc/linalg.hpp"

namespace ffinc {

struct EvasiveCertificate {
  std::size_t k = 0;
  std::size_t s = 0;
  bool verified = false;
  /// Largest |S ∩ F| over k-flats F; 0 for the empty set.
  std::size_t max_intersection = 0;
  std::optional<AffineFlat> worst_flat;
};

/// Exact check that every k-flat of F_p^d meets S in fewer than s points.
/// Each point is bucketed by its coset of every k-dimensional direction space.
EvasiveCertificate verify_subspace_evasive(const PrimeField& field, std::size_t d,
                                           const std::vector<Vector>& points, std::size_t k,
                                           std::size_t s);

struct EvasiveSearchResult {
  std::vector<Vector> points;  // largest verified set seen, sorted
  std::size_t attempts = 0;
  bool reached_target = false;
};

/// Greedy random insertion in a fresh random order per attempt, keeping the
/// best attempt. Stops once target_size points are placed.
EvasiveSearchResult evasive_search_best(const PrimeField& field, std::size_t d, std::size_t k,
                                        std::size_t s, std::size_t target_size,
                                        std::size_t max_attempts, std::uint64_t seed,
                                        bool exclude_origin = false);

/// A (k, s)-evasive set of exactly target_size points, or nullopt.
std::optional<std::vector<Vector>> random_evasive_search(const PrimeField& field, std::size_t d,
                                                         std::size_t k, std::size_t s,
                                                         std::size_t target_size,
                                                         std::size_t max_attempts,
                                                         std::uint64_t seed);

/// Keeps the first point (in input order) on each line through the origin.
std::vector<Vector> dedup_lines_through_origin(const PrimeField& field,
                                               const std::vector<Vector>& points);

/// Scales v so its first nonzero coordinate is 1.
Vector projective_normalize(const PrimeField& field, Vector v);

/// Union of `count` translates S0 + u_i, sorted. Shifts are uniform over F_p^d,
/// or over the points of `shift_space` when given. The drawn shifts are
/// written to `shifts_out` when non-null.
std::vector<Vector> union_random_translates(const PrimeField& field, std::size_t d,
                                            const std::vector<Vector>& base, std::size_t count,
                                            std::uint64_t seed,
                                            const std::optional<AffineFlat>& shift_space = {},
                                            std::vector<Vector>* shifts_out = nullptr);

/// Sorted copy without duplicates.
std::vector<Vector> sorted_unique(std::vector<Vector> points);

}  // namespace ffinc
