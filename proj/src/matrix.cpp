#include "olsig/matrix.hpp"

#include <algorithm>

#include "olsig/error.hpp"

namespace olsig {

Matrix::Matrix(FieldPtr field, int n)
    : field_(std::move(field)), n_(n), e_(static_cast<std::size_t>(n) * n, 0) {}

Matrix Matrix::identity(FieldPtr field, int n) { return scalar(std::move(field), n, 1); }

Matrix Matrix::scalar(FieldPtr field, int n, Code c) {
  Matrix m(std::move(field), n);
  for (int i = 0; i < n; ++i) m.at(i, i) = c;
  return m;
}

Matrix Matrix::from_columns(FieldPtr field, const std::vector<Vec>& cols) {
  const int n = static_cast<int>(cols.size());
  Matrix m(std::move(field), n);
  for (int j = 0; j < n; ++j) {
    if (static_cast<int>(cols[j].size()) != n) throw Error(ErrorCode::DimensionMismatch, "column length");
    for (int i = 0; i < n; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

Matrix Matrix::direct_sum(const Matrix& a, const Matrix& b) {
  const FieldPtr& f = a.field_ ? a.field_ : b.field_;
  Matrix m(f, a.n_ + b.n_);
  for (int i = 0; i < a.n_; ++i)
    for (int j = 0; j < a.n_; ++j) m.at(i, j) = a(i, j);
  for (int i = 0; i < b.n_; ++i)
    for (int j = 0; j < b.n_; ++j) m.at(a.n_ + i, a.n_ + j) = b(i, j);
  return m;
}

Vec Matrix::column(int j) const {
  Vec v(n_);
  for (int i = 0; i < n_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<Vec> Matrix::entries_as_rows() const {
  std::vector<Vec> rows(n_, Vec(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) rows[i][j] = (*this)(i, j);
  return rows;
}

Matrix Matrix::operator*(const Matrix& b) const {
  if (n_ != b.n_) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  const GaloisField& F = *field_;
  Matrix r(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const Code a = (*this)(i, k);
      if (!a) continue;
      for (int j = 0; j < n_; ++j) {
        const Code c = b(k, j);
        if (c) r.at(i, j) = F.add(r(i, j), F.mul(a, c));
      }
    }
  return r;
}

Vec Matrix::operator*(const Vec& v) const {
  if (static_cast<int>(v.size()) != n_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  const GaloisField& F = *field_;
  Vec r(n_, 0);
  for (int i = 0; i < n_; ++i) {
    Code acc = 0;
    for (int k = 0; k < n_; ++k)
      if (v[k] && (*this)(i, k)) acc = F.add(acc, F.mul((*this)(i, k), v[k]));
    r[i] = acc;
  }
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r(*this);
  for (auto& x : r.e_) x = field_->neg(x);
  return r;
}

bool Matrix::is_identity() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(j, i) = (*this)(i, j);
  return r;
}

Matrix Matrix::inverse() const {
  const GaloisField& F = *field_;
  std::vector<Vec> a(n_, Vec(2 * n_, 0));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) a[i][j] = (*this)(i, j);
    a[i][n_ + i] = 1;
  }
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int r = c; r < n_; ++r)
      if (a[r][c]) { piv = r; break; }
    if (piv < 0) throw Error(ErrorCode::Singular, "matrix is not invertible");
    std::swap(a[c], a[piv]);
    const Code inv = F.inv(a[c][c]);
    for (auto& x : a[c]) x = F.mul(x, inv);
    for (int r = 0; r < n_; ++r) {
      if (r == c || !a[r][c]) continue;
      const Code f = a[r][c];
      for (int j = 0; j < 2 * n_; ++j)
        if (a[c][j]) a[r][j] = F.sub(a[r][j], F.mul(f, a[c][j]));
    }
  }
  Matrix r(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(i, j) = a[i][n_ + j];
  return r;
}

Matrix Matrix::transpose_inverse() const { return inverse().transpose(); }

Code Matrix::det() const {
  const GaloisField& F = *field_;
  std::vector<Vec> a(n_, Vec(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) a[i][j] = (*this)(i, j);
  Code d = 1;
  for (int c = 0; c < n_; ++c) {
    int piv = -1;
    for (int r = c; r < n_; ++r)
      if (a[r][c]) { piv = r; break; }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(a[c], a[piv]);
      d = F.neg(d);
    }
    d = F.mul(d, a[c][c]);
    const Code inv = F.inv(a[c][c]);
    for (int r = c + 1; r < n_; ++r) {
      if (!a[r][c]) continue;
      const Code f = F.mul(a[r][c], inv);
      for (int j = c; j < n_; ++j) a[r][j] = F.sub(a[r][j], F.mul(f, a[c][j]));
    }
  }
  return d;
}

int Matrix::rank() const {
  std::vector<Vec> rows(n_, Vec(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) rows[i][j] = (*this)(i, j);
  return rank_of_rows(*field_, std::move(rows));
}

Matrix Matrix::pow(std::int64_t k) const {
  Matrix base = k < 0 ? inverse() : *this;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  Matrix r = identity(field_, n_);
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Matrix Matrix::block(int r0, int c0, int size) const {
  Matrix r(field_, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) r.at(i, j) = (*this)(r0 + i, c0 + j);
  return r;
}

std::size_t Matrix::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (Code x : e_) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

std::string Matrix::key() const {
  std::string s;
  s.reserve(e_.size() * 2);
  for (Code x : e_) {
    s.push_back(static_cast<char>(x & 0xff));
    if (field_ && field_->size() > 256) s.push_back(static_cast<char>((x >> 8) & 0xff));
  }
  return s;
}

int rank_of_rows(const GaloisField& F, std::vector<Vec> rows) { return static_cast<int>(rref(F, std::move(rows)).size()); }

std::vector<Vec> rref(const GaloisField& F, std::vector<Vec> a) {
  if (a.empty()) return {};
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && !a[piv][c]) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    const Code inv = F.inv(a[r][c]);
    for (auto& x : a[r]) x = F.mul(x, inv);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || !a[i][c]) continue;
      const Code f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (a[r][j]) a[i][j] = F.sub(a[i][j], F.mul(f, a[r][j]));
    }
    ++r;
  }
  a.resize(r);
  return a;
}

Vec solve(const Matrix& a, const Vec& b) { return a.inverse() * b; }

std::optional<Vec> solve_any(const Matrix& a, const Vec& b) {
  const GaloisField& F = *a.field();
  const int n = a.n();
  std::vector<Vec> rows(n, Vec(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rows[i][j] = a(i, j);
    rows[i][n] = b.at(i);
  }
  const auto r = rref(F, std::move(rows));
  Vec x(n, 0);
  for (const auto& row : r) {
    int lead = 0;
    while (lead <= n && !row[lead]) ++lead;
    if (lead == n) return std::nullopt;
    x[lead] = row[n];
  }
  return x;
}

std::vector<Vec> column_space(const Matrix& a) { return rref(*a.field(), a.transpose().entries_as_rows()); }

ExtensionBasis::ExtensionBasis(FieldPtr base, FieldPtr ext, std::vector<Code> base_embed, Code gamma,
                               unsigned k)
    : base_(std::move(base)), ext_(std::move(ext)), base_embed_(std::move(base_embed)), gamma_(gamma), k_(k) {
  const GaloisField& E = *ext_;
  const std::uint64_t q = base_->size();
  if (ipow(q, k) != E.size()) throw Error(ErrorCode::DimensionMismatch, "extension degree");
  basis_.resize(k);
  basis_[0] = 1;
  for (unsigned i = 1; i < k; ++i) basis_[i] = E.mul(basis_[i - 1], gamma_);
  coord_index_.assign(E.size(), 0xffffffffu);
  // Enumerate every F_q-combination of the basis once.
  for (std::uint32_t packed = 0; packed < E.size(); ++packed) {
    std::uint32_t t = packed;
    Code acc = 0;
    for (unsigned i = 0; i < k; ++i) {
      const Code c = t % q;
      t /= static_cast<std::uint32_t>(q);
      if (c) acc = E.add(acc, E.mul(base_embed_[c], basis_[i]));
    }
    if (coord_index_[acc] != 0xffffffffu) throw Error(ErrorCode::InvalidArgument, "gamma does not generate a basis");
    coord_index_[acc] = packed;
  }
}

Vec ExtensionBasis::coords(Code x) const {
  std::uint32_t t = coord_index_.at(x);
  const auto q = base_->size();
  Vec c(k_);
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = t % q;
    t /= q;
  }
  return c;
}

Code ExtensionBasis::element(const Vec& c) const {
  const GaloisField& E = *ext_;
  Code acc = 0;
  for (unsigned i = 0; i < k_; ++i)
    if (c[i]) acc = E.add(acc, E.mul(base_embed_[c[i]], basis_[i]));
  return acc;
}

Matrix ExtensionBasis::mult_matrix(Code s) const {
  if (s == 0) throw Error(ErrorCode::InvalidArgument, "T_0 is not invertible");
  std::vector<Vec> cols(k_);
  for (unsigned j = 0; j < k_; ++j) cols[j] = coords(ext_->mul(s, basis_[j]));
  return Matrix::from_columns(base_, cols);
}

ExtensionBasis tower_basis(const FieldTower& tower) {
  std::vector<Code> emb(tower.base()->size());
  for (Code c = 0; c < emb.size(); ++c) emb[c] = tower.embed(Level::Base, c);
  return ExtensionBasis(tower.base(), tower.top(), emb, tower.alpha(), 2 * tower.m());
}

Matrix mult_matrix(Code s, const FieldTower& tower) { return tower_basis(tower).mult_matrix(s); }

Matrix singer_generator(unsigned k, const FieldPtr& base) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  const unsigned e = base->degree();
  FieldPtr ext = standard_field(base->p(), e * k);
  // Embed F_q through the smallest root of its modulus.
  Code root = 0;
  bool found = false;
  for (Code r = 0; r < ext->size() && !found; ++r) {
    const Code x = ext->from_lex_rank(r);
    Code acc = 0;
    const Poly& f = base->modulus();
    for (std::size_t i = f.size(); i-- > 0;) acc = ext->add(ext->mul(acc, x), f[i]);
    if (acc == 0) { root = x; found = true; }
  }
  std::vector<Code> emb(base->size());
  for (Code c = 0; c < base->size(); ++c) {
    const auto cf = base->coeffs(c);
    Code acc = 0, rp = 1;
    for (unsigned i = 0; i < e; ++i) {
      acc = ext->add(acc, ext->scale(rp, cf[i]));
      rp = ext->mul(rp, root);
    }
    emb[c] = acc;
  }
  return ExtensionBasis(base, ext, emb, ext->primitive(), k).mult_matrix(ext->primitive());
}

std::optional<std::uint64_t> element_order(const Matrix& g, std::uint64_t cap) {
  if (g.det() == 0) throw Error(ErrorCode::Singular, "order of a singular matrix");
  constexpr std::uint64_t kIterLimit = 4'000'000;
  if (cap > kIterLimit) {
    if (g.pow(static_cast<std::int64_t>(cap)).is_identity()) {
      std::uint64_t ord = cap;
      for (auto l : prime_factors(cap))
        while (ord % l == 0 && g.pow(static_cast<std::int64_t>(ord / l)).is_identity()) ord /= l;
      return ord;
    }
    cap = kIterLimit;
  }
  Matrix cur = g;
  for (std::uint64_t t = 1; t <= cap; ++t) {
    if (cur.is_identity()) return t;
    cur = cur * g;
  }
  return std::nullopt;
}

nlohmann::json to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.n(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.n(); ++j) row.push_back(m.field()->coeffs(m(i, j)));
    rows.push_back(row);
  }
  return {{"n", m.n()}, {"entries", rows}};
}

Matrix matrix_from_json(const nlohmann::json& j, const FieldPtr& field) {
  const int n = j.at("n").get<int>();
  const auto& rows = j.at("entries");
  if (n <= 0 || static_cast<int>(rows.size()) != n) throw Error(ErrorCode::Format, "matrix shape");
  Matrix m(field, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw Error(ErrorCode::Format, "matrix row length");
    for (int k = 0; k < n; ++k) {
      const auto c = rows[i][k].get<std::vector<Code>>();
      if (c.size() != field->degree()) throw Error(ErrorCode::Format, "entry degree");
      for (Code x : c)
        if (x >= field->p()) throw Error(ErrorCode::Format, "entry coefficient out of range");
      m.at(i, k) = field->from_coeffs(c);
    }
  }
  return m;
}

}  // namespace olsig
