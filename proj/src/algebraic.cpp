#include "ffinc/algebraic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <string>

#include "ffinc/rng.hpp"

namespace ffinc {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) throw OverflowError("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

void build_basis(std::size_t D, std::size_t remaining, Exponent& cur,
                 std::vector<Exponent>& out) {
  if (cur.size() == D) {
    out.push_back(cur);
    return;
  }
  for (unsigned e = 0; e <= remaining; ++e) {
    cur.push_back(e);
    build_basis(D, remaining - e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::shared_ptr<const std::vector<Exponent>> monomial_basis(std::size_t D, std::size_t delta) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const std::vector<Exponent>>>
      cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{D, delta}];
  if (!slot) {
    if (binomial(delta + D, D) > 1'000'000) {
      throw ScaleGuardError("monomial basis with more than 10^6 terms");
    }
    auto v = std::make_shared<std::vector<Exponent>>();
    Exponent cur;
    build_basis(D, delta, cur, *v);
    slot = std::move(v);
  }
  return slot;
}

MultivariatePolynomial::MultivariatePolynomial(const PrimeField& field, std::size_t D,
                                               std::size_t delta)
    : field_(field), D_(D), delta_(delta), basis_(monomial_basis(D, delta)),
      coeffs_(basis_->size(), 0) {}

std::size_t MultivariatePolynomial::index_of(const Exponent& e) const {
  if (e.size() != D_) throw PreconditionError("exponent has the wrong number of variables");
  unsigned total = 0;
  for (auto x : e) total += x;
  if (total > delta_) {
    throw PreconditionError("monomial of degree " + std::to_string(total) +
                            " exceeds the bound " + std::to_string(delta_));
  }
  return static_cast<std::size_t>(std::lower_bound(basis_->begin(), basis_->end(), e) -
                                  basis_->begin());
}

Residue MultivariatePolynomial::coeff(const Exponent& e) const { return coeffs_[index_of(e)]; }

void MultivariatePolynomial::set(const Exponent& e, std::int64_t c) {
  coeffs_[index_of(e)] = field_.reduce(c);
}

void MultivariatePolynomial::set_coefficients(std::vector<Residue> c) {
  if (c.size() != coeffs_.size()) throw PreconditionError("coefficient vector has wrong length");
  for (auto& x : c) x = field_.reduce(x);
  coeffs_ = std::move(c);
}

Residue MultivariatePolynomial::evaluate(std::span<const Residue> x) const {
  if (x.size() != D_) throw PreconditionError("evaluation point has the wrong dimension");
  std::vector<std::vector<Residue>> pw(D_, std::vector<Residue>(delta_ + 1, 1 % field_.p()));
  for (std::size_t v = 0; v < D_; ++v) {
    for (std::size_t e = 1; e <= delta_; ++e) pw[v][e] = field_.mul(pw[v][e - 1], x[v]);
  }
  Residue acc = 0;
  for (std::size_t m = 0; m < coeffs_.size(); ++m) {
    if (coeffs_[m] == 0) continue;
    Residue t = coeffs_[m];
    const auto& e = (*basis_)[m];
    for (std::size_t v = 0; v < D_; ++v) t = field_.mul(t, pw[v][e[v]]);
    acc = field_.add(acc, t);
  }
  return acc;
}

MultivariatePolynomial MultivariatePolynomial::substitute_first(Residue a) const {
  if (D_ == 0) throw PreconditionError("no variable left to substitute");
  MultivariatePolynomial out(field_, D_ - 1, delta_);
  std::vector<Residue> pw(delta_ + 1, 1 % field_.p());
  for (std::size_t e = 1; e <= delta_; ++e) pw[e] = field_.mul(pw[e - 1], a);
  for (std::size_t m = 0; m < coeffs_.size(); ++m) {
    if (coeffs_[m] == 0) continue;
    const auto& e = (*basis_)[m];
    const Exponent rest(e.begin() + 1, e.end());
    const std::size_t j = out.index_of(rest);
    out.coeffs_[j] = field_.add(out.coeffs_[j], field_.mul(coeffs_[m], pw[e[0]]));
  }
  return out;
}

MultivariatePolynomial random_polynomial(const PrimeField& field, std::size_t D,
                                         std::size_t delta, std::uint64_t seed) {
  MultivariatePolynomial f(field, D, delta);
  Rng rng(seed);
  std::vector<Residue> c(f.coefficients().size());
  for (auto& x : c) x = static_cast<Residue>(rng.below(field.p()));
  f.set_coefficients(std::move(c));
  return f;
}

namespace {

void grid_rec(const MultivariatePolynomial& f, std::vector<Residue>& out) {
  if (f.num_vars() == 0) {
    out.push_back(f.coefficients().front());
    return;
  }
  for (Residue a = 0; a < f.field().p(); ++a) grid_rec(f.substitute_first(a), out);
}

}  // namespace

std::vector<Residue> evaluate_grid(const MultivariatePolynomial& f) {
  check_grid(f.field().p(), f.num_vars(), "evaluate_grid");
  std::vector<Residue> out;
  out.reserve(checked_pow(f.field().p(), f.num_vars()));
  grid_rec(f, out);
  return out;
}

std::size_t count_zeros(const MultivariatePolynomial& f) {
  const auto values = evaluate_grid(f);
  return static_cast<std::size_t>(std::count(values.begin(), values.end(), Residue{0}));
}

namespace {

PatternSet collect(const std::vector<std::uint64_t>& masks) {
  std::set<std::uint64_t> s(masks.begin(), masks.end());
  return PatternSet{s.size(), std::vector<std::uint64_t>(s.begin(), s.end())};
}

}  // namespace

PatternSet zero_patterns(const PrimeField& field, std::size_t D,
                         const std::vector<MultivariatePolynomial>& fs) {
  if (fs.size() > 64) throw PreconditionError("zero_patterns supports at most 64 polynomials");
  check_grid(field.p(), D, "zero_patterns");
  const std::uint64_t n = checked_pow(field.p(), D);
  std::vector<std::uint64_t> masks(n, 0);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].num_vars() != D || !(fs[i].field() == field)) {
      throw PreconditionError("polynomial does not live on F_p^D");
    }
    const auto values = evaluate_grid(fs[i]);
    for (std::uint64_t c = 0; c < n; ++c) {
      if (values[c] == 0) masks[c] |= std::uint64_t{1} << i;
    }
  }
  return collect(masks);
}

PatternSet containment_patterns(const PrimeField& field, std::size_t d,
                                const std::vector<std::vector<Vector>>& varieties) {
  if (varieties.size() > 64) throw PreconditionError("containment_patterns supports at most 64 sets");
  check_grid(field.p(), d, "containment_patterns");
  const std::uint64_t n = checked_pow(field.p(), d);
  std::vector<std::uint64_t> masks(n, 0);
  for (std::size_t i = 0; i < varieties.size(); ++i) {
    for (const auto& x : varieties[i]) {
      if (x.size() != d) throw PreconditionError("variety point has the wrong dimension");
      masks[encode(field, x)] |= std::uint64_t{1} << i;
    }
  }
  return collect(masks);
}

BooleanFormula BooleanFormula::atom(std::size_t i) {
  BooleanFormula f;
  f.index_ = i;
  return f;
}

BooleanFormula BooleanFormula::negation(BooleanFormula a) {
  BooleanFormula f;
  f.kind_ = Kind::Not;
  f.children_ = {std::move(a)};
  return f;
}

BooleanFormula BooleanFormula::conjunction(BooleanFormula a, BooleanFormula b) {
  BooleanFormula f;
  f.kind_ = Kind::And;
  f.children_ = {std::move(a), std::move(b)};
  return f;
}

BooleanFormula BooleanFormula::disjunction(BooleanFormula a, BooleanFormula b) {
  BooleanFormula f;
  f.kind_ = Kind::Or;
  f.children_ = {std::move(a), std::move(b)};
  return f;
}

bool BooleanFormula::evaluate(const std::vector<bool>& atoms) const {
  switch (kind_) {
    case Kind::Atom:
      if (index_ >= atoms.size()) throw PreconditionError("formula atom index out of range");
      return atoms[index_];
    case Kind::Not:
      return !children_[0].evaluate(atoms);
    case Kind::And:
      return children_[0].evaluate(atoms) && children_[1].evaluate(atoms);
    case Kind::Or:
      return children_[0].evaluate(atoms) || children_[1].evaluate(atoms);
  }
  return false;
}

std::size_t BooleanFormula::max_atom() const {
  if (kind_ == Kind::Atom) return index_;
  std::size_t m = 0;
  for (const auto& c : children_) m = std::max(m, c.max_atom());
  return m;
}

BipartiteGraph algebraic_adjacency(const std::vector<MultivariatePolynomial>& fs,
                                   const BooleanFormula& phi, const std::vector<Vector>& P,
                                   const std::vector<Vector>& Q) {
  if (fs.empty()) throw PreconditionError("algebraic_adjacency needs at least one polynomial");
  if (phi.max_atom() >= fs.size()) throw PreconditionError("formula uses an undefined atom");
  const std::size_t nv = fs.front().num_vars();
  for (const auto& f : fs) {
    if (f.num_vars() != nv) throw PreconditionError("polynomials disagree on variable count");
  }
  if (P.size() * Q.size() > max_grid()) {
    throw ScaleGuardError("algebraic_adjacency: |P|·|Q| exceeds the grid limit");
  }
  BipartiteGraph g(P.size(), Q.size());
  Vector xy;
  std::vector<bool> atoms(fs.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    for (std::size_t j = 0; j < Q.size(); ++j) {
      xy = P[i];
      xy.insert(xy.end(), Q[j].begin(), Q[j].end());
      if (xy.size() != nv) throw PreconditionError("d1 + d2 does not match the variable count");
      for (std::size_t a = 0; a < fs.size(); ++a) atoms[a] = fs[a].evaluate(xy) == 0;
      if (phi.evaluate(atoms)) g.add_edge(i, j);
    }
  }
  return g;
}

namespace {

std::size_t trace_count(const std::vector<Bitset>& family, const Bitset& a) {
  std::set<Bitset> traces;
  for (const auto& b : family) traces.insert(b & a);
  return traces.size();
}

}  // namespace

ShatterResult shatter_function(const std::vector<Bitset>& family, std::size_t ground_size,
                               std::size_t k, std::uint64_t seed, std::size_t samples) {
  for (const auto& b : family) {
    if (b.size() != ground_size) throw PreconditionError("set not over the ground set");
  }
  if (k > ground_size) throw PreconditionError("k exceeds the ground set size");
  ShatterResult r;
  if (ground_size <= 20) {
    // Every k-subset via the next-combination bit trick.
    if (k == 0) {
      r.value = family.empty() ? 0 : 1;
      return r;
    }
    std::uint32_t m = (1u << k) - 1;
    const std::uint32_t limit = 1u << ground_size;
    while (m < limit) {
      Bitset a(ground_size, m);
      r.value = std::max(r.value, trace_count(family, a));
      const std::uint32_t c = m & -m;
      const std::uint32_t up = m + c;
      m = (((up ^ m) >> 2) / c) | up;
    }
    return r;
  }
  r.exact = false;
  Rng rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    Bitset a(ground_size);
    for (auto i : rng.sample_indices(ground_size, k)) a.set(i);
    r.value = std::max(r.value, trace_count(family, a));
  }
  return r;
}

}  // namespace ffinc
