#include "ffinc/linalg.hpp"

#include <algorithm>
#include <string>

namespace ffinc {

namespace {

void check_same_length(std::span<const Residue> a, std::span<const Residue> b) {
  if (a.size() != b.size()) {
    throw PreconditionError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
}

// Odometer over all assignments of `slots` coordinates in F_p.
bool advance(std::vector<Residue>& digits, Residue p) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < p) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

std::uint64_t encode(const PrimeField& field, std::span<const Residue> v) {
  std::uint64_t code = 0;
  for (Residue c : v) code = code * field.p() + c;
  return code;
}

Vector decode(const PrimeField& field, std::uint64_t code, std::size_t d) {
  Vector v(d);
  for (std::size_t i = d; i-- > 0;) {
    v[i] = static_cast<Residue>(code % field.p());
    code /= field.p();
  }
  return v;
}

Vector vec_add(const PrimeField& field, std::span<const Residue> a, std::span<const Residue> b) {
  check_same_length(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = field.add(a[i], b[i]);
  return r;
}

Vector vec_sub(const PrimeField& field, std::span<const Residue> a, std::span<const Residue> b) {
  check_same_length(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = field.sub(a[i], b[i]);
  return r;
}

Vector vec_scale(const PrimeField& field, Residue c, std::span<const Residue> a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = field.mul(c, a[i]);
  return r;
}

Residue dot(const PrimeField& field, std::span<const Residue> a, std::span<const Residue> b) {
  check_same_length(a, b);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc = (acc + std::uint64_t{a[i]} * b[i]) % field.p();
  }
  return static_cast<Residue>(acc);
}

bool is_zero(std::span<const Residue> v) {
  return std::all_of(v.begin(), v.end(), [](Residue c) { return c == 0; });
}

Vector Echelon::reduce(const PrimeField& field, Vector v) const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Residue c = v[pivots[r]];
    if (c == 0) continue;
    for (std::size_t j = pivots[r]; j < width; ++j) {
      v[j] = field.sub(v[j], field.mul(c, rows[r][j]));
    }
  }
  return v;
}

bool Echelon::spans(const PrimeField& field, std::span<const Residue> v) const {
  return is_zero(reduce(field, Vector(v.begin(), v.end())));
}

Echelon row_reduce(const PrimeField& field, std::span<const Vector> rows, std::size_t width) {
  std::vector<Vector> m(rows.begin(), rows.end());
  for (const auto& r : m) {
    if (r.size() != width) throw PreconditionError("row_reduce: ragged rows");
  }
  Echelon e;
  e.width = width;
  std::size_t top = 0;
  for (std::size_t col = 0; col < width && top < m.size(); ++col) {
    std::size_t sel = top;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[top], m[sel]);
    const Residue inv = field.inv(m[top][col]);
    for (auto& c : m[top]) c = field.mul(c, inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == top || m[r][col] == 0) continue;
      const Residue f = m[r][col];
      for (std::size_t j = col; j < width; ++j) {
        m[r][j] = field.sub(m[r][j], field.mul(f, m[top][j]));
      }
    }
    e.pivots.push_back(col);
    ++top;
  }
  m.resize(top);
  e.rows = std::move(m);
  return e;
}

std::size_t rank(const PrimeField& field, std::span<const Vector> rows) {
  if (rows.empty()) return 0;
  return row_reduce(field, rows, rows.front().size()).rank();
}

AffineFlat AffineFlat::from_directions(const PrimeField& field, Vector base,
                                       std::span<const Vector> directions) {
  AffineFlat f;
  f.dirs_ = row_reduce(field, directions, base.size());
  f.base_ = f.dirs_.reduce(field, std::move(base));
  return f;
}

AffineFlat AffineFlat::whole_space(std::size_t d) {
  AffineFlat f;
  f.base_.assign(d, 0);
  f.dirs_.width = d;
  for (std::size_t i = 0; i < d; ++i) {
    Vector e(d, 0);
    e[i] = 1;
    f.dirs_.rows.push_back(std::move(e));
    f.dirs_.pivots.push_back(i);
  }
  return f;
}

AffineFlat AffineFlat::point(Vector p) {
  AffineFlat f;
  f.dirs_.width = p.size();
  f.base_ = std::move(p);
  return f;
}

bool AffineFlat::contains(const PrimeField& field, std::span<const Residue> x) const {
  if (x.size() != base_.size()) throw PreconditionError("AffineFlat::contains: dimension mismatch");
  return dirs_.reduce(field, Vector(x.begin(), x.end())) == base_;
}

std::vector<Vector> AffineFlat::points(const PrimeField& field) const {
  std::vector<Vector> out;
  std::vector<Residue> coef(dim(), 0);
  do {
    Vector x = base_;
    for (std::size_t r = 0; r < coef.size(); ++r) {
      if (coef[r] == 0) continue;
      for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = field.add(x[j], field.mul(coef[r], dirs_.rows[r][j]));
      }
    }
    out.push_back(std::move(x));
  } while (advance(coef, field.p()));
  return out;
}

AffineFlat affine_hull(const PrimeField& field, std::span<const Vector> points) {
  if (points.empty()) throw PreconditionError("affine_hull: empty point list");
  std::vector<Vector> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    diffs.push_back(vec_sub(field, points[i], points[0]));
  }
  return AffineFlat::from_directions(field, points[0], diffs);
}

std::optional<AffineFlat> solve_affine(const PrimeField& field, std::span<const Vector> normals,
                                       std::span<const Residue> rhs, std::size_t d) {
  if (normals.size() != rhs.size()) throw PreconditionError("solve_affine: row/rhs mismatch");
  std::vector<Vector> aug;
  aug.reserve(normals.size());
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (normals[i].size() != d) throw PreconditionError("solve_affine: dimension mismatch");
    Vector row = normals[i];
    row.push_back(rhs[i]);
    aug.push_back(std::move(row));
  }
  const Echelon e = row_reduce(field, aug, d + 1);
  if (!e.pivots.empty() && e.pivots.back() == d) return std::nullopt;

  Vector particular(d, 0);
  std::vector<bool> is_pivot(d, false);
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    particular[e.pivots[r]] = e.rows[r][d];
    is_pivot[e.pivots[r]] = true;
  }
  std::vector<Vector> kernel;
  for (std::size_t f = 0; f < d; ++f) {
    if (is_pivot[f]) continue;
    Vector v(d, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = field.neg(e.rows[r][f]);
    kernel.push_back(std::move(v));
  }
  return AffineFlat::from_directions(field, std::move(particular), kernel);
}

Hyperplane Hyperplane::make(const PrimeField& field, Vector normal, Residue offset) {
  auto lead = std::find_if(normal.begin(), normal.end(), [](Residue c) { return c != 0; });
  if (lead == normal.end()) throw PreconditionError("hyperplane normal must be nonzero");
  const Residue inv = field.inv(*lead);
  Hyperplane h;
  for (auto& c : normal) c = field.mul(c, inv);
  h.normal_ = std::move(normal);
  h.offset_ = field.mul(field.reduce(offset), inv);
  return h;
}

bool Hyperplane::contains_flat(const PrimeField& field, const AffineFlat& flat) const {
  if (!contains(field, flat.base())) return false;
  for (const auto& b : flat.basis()) {
    if (dot(field, normal_, b) != 0) return false;
  }
  return true;
}

AffineFlat Hyperplane::as_flat(const PrimeField& field) const {
  const Vector rows[] = {normal_};
  const Residue rhs[] = {offset_};
  return *solve_affine(field, rows, rhs, normal_.size());
}

BilinearForm BilinearForm::for_dimension(std::size_t d) {
  std::vector<int> s(d, 1);
  if (d % 4 == 1) s.back() = -1;
  return BilinearForm(std::move(s));
}

BilinearForm BilinearForm::standard(std::size_t d) { return BilinearForm(std::vector<int>(d, 1)); }

Residue BilinearForm::inner(const PrimeField& field, std::span<const Residue> u,
                            std::span<const Residue> v) const {
  if (u.size() != dim() || v.size() != dim()) {
    throw PreconditionError("bilinear form of dimension " + std::to_string(dim()) +
                            " applied to vectors of length " + std::to_string(u.size()) +
                            " and " + std::to_string(v.size()));
  }
  Residue acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Residue t = field.mul(u[i], v[i]);
    acc = signs_[i] > 0 ? field.add(acc, t) : field.sub(acc, t);
  }
  return acc;
}

Vector BilinearForm::as_dot_normal(const PrimeField& field, std::span<const Residue> v) const {
  Vector w(v.begin(), v.end());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (signs_[i] < 0) w[i] = field.neg(w[i]);
  }
  return w;
}

Residue form_inner(const PrimeField& field, const BilinearForm& form, std::span<const Residue> u,
                   std::span<const Residue> v) {
  return form.inner(field, u, v);
}

bool flats_orthogonal(const PrimeField& field, const AffineFlat& u, const AffineFlat& v,
                      const BilinearForm& form) {
  for (const auto& a : u.basis()) {
    for (const auto& b : v.basis()) {
      if (form.inner(field, a, b) != 0) return false;
    }
  }
  return true;
}

std::uint64_t gaussian_binomial(std::size_t d, std::size_t k, std::uint64_t p) {
  if (k > d) return 0;
  // prod_{i<k} (p^{d-i} - 1) / (p^{i+1} - 1), kept exact by dividing stepwise.
  unsigned __int128 num = 1, den = 1;
  for (std::size_t i = 0; i < k; ++i) {
    num *= checked_pow(p, d - i) - 1;
    den *= checked_pow(p, i + 1) - 1;
  }
  return static_cast<std::uint64_t>(num / den);
}

void for_each_subspace(const PrimeField& field, std::size_t d, std::size_t k,
                       const std::function<void(const Echelon&)>& visit) {
  if (k > d) throw PreconditionError("subspace dimension exceeds ambient dimension");
  check_grid(field.p(), d, "for_each_subspace");
  const Residue p = field.p();

  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    // Free cells: row r, columns after its pivot that are not pivot columns.
    std::vector<bool> is_pivot(d, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = piv[r] + 1; c < d; ++c) {
        if (!is_pivot[c]) cells.emplace_back(r, c);
      }
    }
    Echelon e;
    e.width = d;
    e.pivots = piv;
    e.rows.assign(k, Vector(d, 0));
    for (std::size_t r = 0; r < k; ++r) e.rows[r][piv[r]] = 1;
    std::vector<Residue> digits(cells.size(), 0);
    do {
      for (std::size_t i = 0; i < cells.size(); ++i) e.rows[cells[i].first][cells[i].second] = digits[i];
      visit(e);
    } while (advance(digits, p));

    // Next k-combination of pivot columns.
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == d - k + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
}

void for_each_flat(const PrimeField& field, std::size_t d, std::size_t k,
                   const std::function<void(const AffineFlat&)>& visit) {
  for_each_subspace(field, d, k, [&](const Echelon& e) {
    std::vector<bool> is_pivot(d, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < d; ++c) {
      if (!is_pivot[c]) free_cols.push_back(c);
    }
    std::vector<Residue> digits(free_cols.size(), 0);
    do {
      Vector base(d, 0);
      for (std::size_t i = 0; i < free_cols.size(); ++i) base[free_cols[i]] = digits[i];
      visit(AffineFlat::from_directions(field, std::move(base), e.rows));
    } while (advance(digits, field.p()));
  });
}

std::vector<AffineFlat> enumerate_flats(const PrimeField& field, std::size_t d, std::size_t k) {
  std::vector<AffineFlat> out;
  for_each_flat(field, d, k, [&](const AffineFlat& f) { out.push_back(f); });
  return out;
}

std::vector<Vector> all_points(const PrimeField& field, std::size_t d) {
  check_grid(field.p(), d, "all_points");
  const std::uint64_t n = checked_pow(field.p(), d);
  std::vector<Vector> out;
  out.reserve(n);
  for (std::uint64_t c = 0; c < n; ++c) out.push_back(decode(field, c, d));
  return out;
}

}  // namespace ffinc
