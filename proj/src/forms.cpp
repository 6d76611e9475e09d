#include "olsig/forms.hpp"

#include <algorithm>
#include <functional>

#include "olsig/error.hpp"

namespace olsig {

Vec normalize_point(const GaloisField& F, Vec v) {
  std::size_t i = 0;
  while (i < v.size() && !v[i]) ++i;
  if (i == v.size()) throw Error(ErrorCode::InvalidArgument, "zero vector is not a point");
  const Code inv = F.inv(v[i]);
  for (auto& x : v) x = F.mul(x, inv);
  return v;
}

std::uint64_t vec_key(const Vec& v, std::uint64_t q) {
  std::uint64_t k = 0;
  for (Code x : v) k = k * q + x;
  return k;
}

Vec vec_from_key(std::uint64_t key, std::uint64_t q, int n) {
  Vec v(n);
  for (int i = n - 1; i >= 0; --i) {
    v[i] = static_cast<Code>(key % q);
    key /= q;
  }
  return v;
}

Code smallest_nonsquare(const GaloisField& F) {
  for (Code c = 1; c < F.size(); ++c)
    if (!F.is_square(c)) return c;
  throw Error(ErrorCode::InvalidArgument, "field has no nonsquare");
}

namespace {

int witt_index_for(Kind kind, int n) {
  switch (kind) {
    case Kind::Minus: return n / 2 - 1;
    case Kind::Plus: return n / 2;
    case Kind::Odd: return (n - 1) / 2;
  }
  return 0;
}

// Lexicographic scan (coordinate 0 most significant) over nonzero vectors of F_q^n.
void scan_vectors(std::uint64_t q, int n, const std::function<bool(const Vec&)>& visit) {
  const std::uint64_t total = ipow(q, static_cast<unsigned>(n));
  for (std::uint64_t k = 1; k < total; ++k)
    if (visit(vec_from_key(k, q, n))) return;
}

Code bilinear(const GaloisField& F, const Matrix& G, const Vec& u, const Vec& v) {
  Code acc = 0;
  const int n = G.n();
  for (int i = 0; i < n; ++i) {
    if (!u[i]) continue;
    Code row = 0;
    for (int j = 0; j < n; ++j)
      if (v[j] && G(i, j)) row = F.add(row, F.mul(G(i, j), v[j]));
    acc = F.add(acc, F.mul(u[i], row));
  }
  return acc;
}

}  // namespace

void QuadraticSpace::finish_canonical() {
  const GaloisField& F = *field_;
  half_ = F.inv(2 % F.p());
  nu_ = smallest_nonsquare(F);
  r_ = witt_index_for(kind_, n_);
  gram_ = Matrix(field_, n_);
  for (int i = 0; i < r_; ++i) {
    gram_.at(e_index(i), f_index(i)) = 1;
    gram_.at(f_index(i), e_index(i)) = 1;
  }
  const Code two = 2 % F.p();
  if (kind_ == Kind::Minus) {
    gram_.at(aniso_index(0), aniso_index(0)) = two;
    gram_.at(aniso_index(1), aniso_index(1)) = F.neg(F.mul(two, nu_));
  } else if (kind_ == Kind::Odd) {
    gram_.at(aniso_index(0), aniso_index(0)) = two;
  }
}

QuadraticSpace QuadraticSpace::canonical(Kind kind, FieldPtr field, int n) {
  if (field->p() == 2) throw Error(ErrorCode::InvalidArgument, "characteristic must be odd");
  if ((kind == Kind::Odd) != (n % 2 == 1) || n < 1 || (kind == Kind::Minus && n < 2))
    throw Error(ErrorCode::InvalidArgument, "dimension does not fit the kind");
  QuadraticSpace s;
  s.kind_ = kind;
  s.field_ = std::move(field);
  s.n_ = n;
  s.finish_canonical();
  return s;
}

QuadraticSpace QuadraticSpace::from_tower(Kind kind, const FieldTower& tower) {
  if (kind == Kind::Odd) return canonical(kind, tower.base(), 2 * static_cast<int>(tower.m()) + 1);
  QuadraticSpace s = canonical(kind, tower.base(), 2 * static_cast<int>(tower.m()));
  const GaloisField& F = *s.field_;
  const GaloisField& E = *tower.top();
  const ExtensionBasis basis = tower_basis(tower);
  const int n = s.n_;
  const std::uint64_t q = tower.q();

  std::function<Code(Code, Code)> form;
  Code beta = 0, denom = 0;
  if (kind == Kind::Minus) {
    form = [&](Code x, Code y) {
      const Code t = E.add(E.mul(x, tower.bar(y)), E.mul(tower.bar(x), y));
      return tower.restrict(Level::Base, tower.trace_mid_to_base(t));
    };
  } else {
    beta = E.pow(tower.alpha(), ipow(q, tower.m()) - 1);
    denom = E.inv(E.sub(beta, tower.bar(beta)));
    auto split = [&](Code x) {
      const Code x2 = E.mul(E.sub(x, tower.bar(x)), denom);
      return std::pair<Code, Code>{E.sub(x, E.mul(x2, beta)), x2};
    };
    form = [&, split](Code x, Code y) {
      const auto [x1, x2] = split(x);
      const auto [y1, y2] = split(y);
      const Code t = E.add(E.mul(x1, y2), E.mul(x2, y1));
      return tower.restrict(Level::Base, tower.trace_mid_to_base(t));
    };
  }
  Matrix G(s.field_, n);
  std::vector<Code> pw(n);
  for (int i = 0; i < n; ++i) {
    Vec c(n, 0);
    c[i] = 1;
    pw[i] = basis.element(c);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G.at(i, j) = form(pw[i], pw[j]);
  if (G.det() == 0) throw Error(ErrorCode::Singular, "trace form is degenerate");

  auto fm = [&](const Vec& u, const Vec& v) { return bilinear(F, G, u, v); };
  auto Qm = [&](const Vec& v) { return F.mul(fm(v, v), s.half_); };

  // Greedy Witt decomposition in the power basis.
  std::vector<Vec> es, fs;
  auto in_complement = [&](const Vec& v) {
    for (std::size_t i = 0; i < es.size(); ++i)
      if (fm(v, es[i]) || fm(v, fs[i])) return false;
    return true;
  };
  for (int i = 0; i < s.r_; ++i) {
    Vec e;
    scan_vectors(q, n, [&](const Vec& v) {
      if (Qm(v) || !in_complement(v)) return false;
      e = v;
      return true;
    });
    Vec g;
    scan_vectors(q, n, [&](const Vec& v) {
      if (!fm(e, v) || !in_complement(v)) return false;
      g = v;
      return true;
    });
    const Code inv = F.inv(fm(e, g));
    for (auto& x : g) x = F.mul(x, inv);
    const Code qg = Qm(g);
    for (int k = 0; k < n; ++k) g[k] = F.sub(g[k], F.mul(qg, e[k]));
    es.push_back(e);
    fs.push_back(g);
  }
  std::vector<Vec> cols = es;
  cols.insert(cols.end(), fs.begin(), fs.end());
  if (kind == Kind::Minus) {
    Vec a, b;
    scan_vectors(q, n, [&](const Vec& v) {
      if (Qm(v) != 1 || !in_complement(v)) return false;
      a = v;
      return true;
    });
    const Code target = F.neg(s.nu_);
    scan_vectors(q, n, [&](const Vec& v) {
      if (Qm(v) != target || fm(v, a) || !in_complement(v)) return false;
      b = v;
      return true;
    });
    if (a.empty() || b.empty()) throw Error(ErrorCode::ConstructionMismatch, "anisotropic part not found");
    cols.push_back(a);
    cols.push_back(b);
  }
  s.to_model_ = Matrix::from_columns(s.field_, cols);
  if (s.to_model_.transpose() * G * s.to_model_ != s.gram_)
    throw Error(ErrorCode::ConstructionMismatch, "Witt basis does not give the standard Gram matrix");
  s.from_model_ = s.to_model_.inverse();
  s.model_gram_ = G;
  s.has_model_ = true;
  return s;
}

Vec QuadraticSpace::basis_vector(int i) const {
  Vec v(n_, 0);
  v.at(i) = 1;
  return v;
}

Matrix QuadraticSpace::from_model(const Matrix& g) const {
  if (!has_model_) throw Error(ErrorCode::Unsupported, "space has no field model");
  return from_model_ * g * to_model_;
}

Vec QuadraticSpace::vector_from_model(const Vec& v) const {
  if (!has_model_) throw Error(ErrorCode::Unsupported, "space has no field model");
  return from_model_ * v;
}

Code QuadraticSpace::f(const Vec& u, const Vec& v) const {
  if (static_cast<int>(u.size()) != n_ || static_cast<int>(v.size()) != n_)
    throw Error(ErrorCode::DimensionMismatch, "vector length");
  return bilinear(*field_, gram_, u, v);
}

Code QuadraticSpace::Q(const Vec& v) const { return field_->mul(f(v, v), half_); }

PointClass QuadraticSpace::classify(const Vec& v) const {
  if (std::all_of(v.begin(), v.end(), [](Code x) { return x == 0; }))
    throw Error(ErrorCode::InvalidArgument, "zero vector is not a point");
  const Code fv = f(v, v);
  return {fv == 0, fv == 0};
}

std::vector<Vec> QuadraticSpace::singular_points() const {
  const std::uint64_t q = this->q();
  const std::uint64_t budget = 100'000'000;
  if (ipow(q, static_cast<unsigned>(n_)) > budget) throw Error(ErrorCode::BudgetExceeded, "too many points");
  std::vector<std::uint64_t> keys;
  for (int lead = 0; lead < n_; ++lead) {
    const std::uint64_t tail = ipow(q, static_cast<unsigned>(n_ - 1 - lead));
    for (std::uint64_t t = 0; t < tail; ++t) {
      Vec v(n_, 0);
      v[lead] = 1;
      std::uint64_t x = t;
      for (int i = n_ - 1; i > lead; --i) {
        v[i] = static_cast<Code>(x % q);
        x /= q;
      }
      if (Q(v) == 0) keys.push_back(vec_key(v, q));
    }
  }
  std::sort(keys.begin(), keys.end());
  std::vector<Vec> pts;
  pts.reserve(keys.size());
  for (auto k : keys) pts.push_back(vec_from_key(k, q, n_));
  return pts;
}

std::uint64_t QuadraticSpace::singular_point_count_formula() const {
  const std::uint64_t q = this->q();
  const unsigned m = static_cast<unsigned>(kind_ == Kind::Odd ? (n_ - 1) / 2 : n_ / 2);
  switch (kind_) {
    case Kind::Minus: return (ipow(q, m) + 1) * (ipow(q, m - 1) - 1) / (q - 1);
    case Kind::Plus: return (ipow(q, m) - 1) * (ipow(q, m - 1) + 1) / (q - 1);
    case Kind::Odd: return (ipow(q, m) - 1) * (ipow(q, m) + 1) / (q - 1);
  }
  return 0;
}

bool QuadraticSpace::is_isometry(const Matrix& g) const {
  if (g.n() != n_) return false;
  return g.transpose() * gram_ * g == gram_;
}

bool QuadraticSpace::spinor_norm_square(const Matrix& g) const {
  const GaloisField& F = *field_;
  Matrix m = Matrix::identity(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.at(i, j) = F.sub(m(i, j), g(i, j));
  const auto img = column_space(m);
  const int k = static_cast<int>(img.size());
  if (k == 0) return true;
  std::vector<Vec> pre;
  for (const auto& b : img) {
    auto x = solve_any(m, b);
    if (!x) throw Error(ErrorCode::Singular, "image vector without preimage");
    pre.push_back(*x);
  }
  Matrix chi(field_, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) chi.at(i, j) = f(img[i], pre[j]);
  const Code d = chi.det();
  if (d == 0) throw Error(ErrorCode::Singular, "degenerate spinor form");
  return F.is_square(d);
}

bool QuadraticSpace::even_rank_criterion(const Matrix& g) const {
  Matrix m = g;
  for (int i = 0; i < n_; ++i) m.at(i, i) = field_->add(m(i, i), 1);
  return m.rank() % 2 == 0;
}

bool QuadraticSpace::in_family(const Matrix& g, Family family) const {
  switch (family) {
    case Family::GL: return g.n() == n_ && g.det() != 0;
    case Family::O: return is_isometry(g);
    case Family::SO: return is_isometry(g) && g.det() == 1;
    case Family::Omega: return is_isometry(g) && g.det() == 1 && spinor_norm_square(g);
    case Family::PSO: return in_family(g, Family::SO) || in_family(-g, Family::SO);
    case Family::POmega: return in_family(g, Family::Omega) || in_family(-g, Family::Omega);
    case Family::Parabolic: break;
  }
  throw Error(ErrorCode::Unsupported, "parabolic membership needs k");
}

Matrix QuadraticSpace::reflection(const Vec& v) const {
  const GaloisField& F = *field_;
  const Code qv = Q(v);
  if (qv == 0) throw Error(ErrorCode::DivisionByZero, "reflection needs f(v,v) != 0; v is singular");
  const Code inv = F.inv(qv);
  std::vector<Vec> cols(n_);
  for (int j = 0; j < n_; ++j) {
    Vec x = basis_vector(j);
    const Code c = F.mul(f(x, v), inv);
    for (int i = 0; i < n_; ++i) x[i] = F.sub(x[i], F.mul(c, v[i]));
    cols[j] = x;
  }
  return Matrix::from_columns(field_, cols);
}

Matrix QuadraticSpace::siegel(const Vec& u, int t) const {
  const GaloisField& F = *field_;
  if (t < 0 || t >= r_) throw Error(ErrorCode::InvalidArgument, "no such hyperbolic pair");
  const Vec e = basis_vector(e_index(t)), fv = basis_vector(f_index(t));
  if (f(u, e) || f(u, fv)) throw Error(ErrorCode::InvalidArgument, "u is not orthogonal to the hyperbolic pair");
  const Code qu = Q(u);
  std::vector<Vec> cols(n_);
  for (int j = 0; j < n_; ++j) {
    Vec x = basis_vector(j);
    const Code fe = f(x, e), fu = f(x, u);
    for (int i = 0; i < n_; ++i) x[i] = F.add(x[i], F.mul(fe, u[i]));
    const Code ce = F.add(fu, F.mul(qu, fe));
    x[e_index(t)] = F.sub(x[e_index(t)], ce);
    cols[j] = x;
  }
  return Matrix::from_columns(field_, cols);
}

QuadraticSpace QuadraticSpace::complement() const {
  if (r_ < 1) throw Error(ErrorCode::InvalidArgument, "no hyperbolic pair to split off");
  return canonical(kind_, field_, n_ - 2);
}

std::vector<int> QuadraticSpace::complement_coords() const {
  std::vector<int> c;
  for (int i = 0; i < n_; ++i)
    if (i != e_index(0) && i != f_index(0)) c.push_back(i);
  return c;
}

Matrix QuadraticSpace::embed_complement(const Matrix& g) const {
  const auto c = complement_coords();
  if (g.n() != static_cast<int>(c.size())) throw Error(ErrorCode::DimensionMismatch, "complement dimension");
  Matrix r = Matrix::identity(field_, n_);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) r.at(c[i], c[j]) = g(static_cast<int>(i), static_cast<int>(j));
  return r;
}

Matrix QuadraticSpace::restrict_complement(const Matrix& g) const {
  const auto c = complement_coords();
  Matrix r(field_, static_cast<int>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) r.at(static_cast<int>(i), static_cast<int>(j)) = g(c[i], c[j]);
  return r;
}

nlohmann::json QuadraticSpace::to_json() const {
  nlohmann::json j = {{"kind", olsig::to_string(kind_)},
                      {"p", field_->p()},
                      {"e", field_->degree()},
                      {"n", n_},
                      {"witt_index", r_},
                      {"gram", olsig::to_json(gram_)}};
  if (has_model_) {
    j["model_gram"] = olsig::to_json(model_gram_);
    j["witt_to_model"] = olsig::to_json(to_model_);
  }
  return j;
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a && b > UINT64_MAX / a) throw Error(ErrorCode::CapExceeded, "group order overflows 64 bits");
  return a * b;
}

std::uint64_t orthogonal_order(Kind kind, std::uint64_t q, int n) {
  if (n == 0) return 1;
  std::uint64_t o = 2;
  if (kind == Kind::Odd) {
    const unsigned m = static_cast<unsigned>((n - 1) / 2);
    o = checked_mul(o, ipow(q, m * m));
    for (unsigned i = 1; i <= m; ++i) o = checked_mul(o, ipow(q, 2 * i) - 1);
  } else {
    const unsigned m = static_cast<unsigned>(n / 2);
    o = checked_mul(o, ipow(q, m * (m - 1)));
    o = checked_mul(o, kind == Kind::Minus ? ipow(q, m) + 1 : ipow(q, m) - 1);
    for (unsigned i = 1; i < m; ++i) o = checked_mul(o, ipow(q, 2 * i) - 1);
  }
  return o;
}

std::uint64_t gl_order(std::uint64_t q, int k) {
  std::uint64_t o = 1;
  const std::uint64_t qk = ipow(q, static_cast<unsigned>(k));
  for (int i = 0; i < k; ++i) o = checked_mul(o, qk - ipow(q, static_cast<unsigned>(i)));
  return o;
}

}  // namespace

bool minus_identity_in(const GroupDescriptor& d) {
  switch (d.lift_family()) {
    case Family::O:
    case Family::GL:
    case Family::Parabolic: return true;
    case Family::SO: return d.n % 2 == 0;
    case Family::Omega: {
      if (d.n % 2) return false;
      const auto pf = prime_factors(d.q);
      unsigned e = 0;
      for (std::uint64_t t = d.q; t > 1; t /= pf[0]) ++e;
      const auto sp = QuadraticSpace::canonical(d.kind, standard_field(static_cast<Code>(pf[0]), e), d.n);
      return sp.spinor_norm_square(-Matrix::identity(sp.field(), d.n));
    }
    default: break;
  }
  return false;
}

std::uint64_t group_order(const GroupDescriptor& d) {
  validate(d);
  switch (d.family) {
    case Family::GL: return gl_order(d.q, d.n);
    case Family::O: return orthogonal_order(d.kind, d.q, d.n);
    case Family::SO: return d.n == 1 ? 1 : orthogonal_order(d.kind, d.q, d.n) / 2;
    case Family::Omega: return d.n == 1 ? 1 : orthogonal_order(d.kind, d.q, d.n) / 4;
    case Family::PSO:
    case Family::POmega: {
      GroupDescriptor l = d;
      l.family = d.lift_family();
      return group_order(l) / (minus_identity_in(d) ? 2 : 1);
    }
    case Family::Parabolic: {
      const int k = d.k, n = d.n;
      std::uint64_t o = ipow(d.q, static_cast<unsigned>(k * (k - 1) / 2 + k * (n - 2 * k)));
      o = checked_mul(o, gl_order(d.q, k));
      return checked_mul(o, orthogonal_order(d.kind, d.q, n - 2 * k));
    }
  }
  return 0;
}

}  // namespace olsig
