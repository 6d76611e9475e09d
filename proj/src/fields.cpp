#include "olsig/fields.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "olsig/error.hpp"

namespace olsig {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::LevelMismatch: return "LEVEL_MISMATCH";
    case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
    case ErrorCode::Singular: return "SINGULAR";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::NotFound: return "NOT_FOUND";
    case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::BudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::ConstructionMismatch: return "CONSTRUCTION_MISMATCH";
    case ErrorCode::NotAPartialSpread: return "NOT_A_PARTIAL_SPREAD";
    case ErrorCode::InjectivityFail: return "INJECTIVITY_FAIL";
    case ErrorCode::NotInGroup: return "NOT_IN_GROUP";
    case ErrorCode::Unsupported: return "UNSUPPORTED";
    case ErrorCode::Format: return "FORMAT";
  }
  return "UNKNOWN";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

namespace poly {

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

namespace {

Poly mod_reduce(Poly r, const Poly& mod, Code p) {
  r = trim(std::move(r));
  const std::size_t d = mod.size() - 1;
  const Code lead_inv = [&] {
    Code l = mod.back();
    for (Code x = 1; x < p; ++x)
      if ((l * x) % p == 1) return x;
    return Code{0};
  }();
  while (r.size() > d) {
    const std::size_t k = r.size() - 1;
    const Code c = (r.back() * lead_inv) % p;
    for (std::size_t i = 0; i <= d; ++i)
      r[k - d + i] = (r[k - d + i] + (p - (c * mod[i]) % p)) % p;
    r = trim(std::move(r));
  }
  return r;
}

}  // namespace

Poly mulmod(const Poly& a, const Poly& b, const Poly& mod, Code p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return mod_reduce(std::move(r), mod, p);
}

Poly powmod(Poly a, std::uint64_t e, const Poly& mod, Code p) {
  Poly r{1};
  a = mod_reduce(std::move(a), mod, p);
  while (e) {
    if (e & 1) r = mulmod(r, a, mod, p);
    a = mulmod(a, a, mod, p);
    e >>= 1;
  }
  return r;
}

Poly gcd(Poly a, Poly b, Code p) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    Poly r = mod_reduce(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_irreducible(const Poly& f, Code p) {
  const Poly g = trim(f);
  if (g.size() < 2) return false;
  const unsigned d = static_cast<unsigned>(g.size() - 1);
  if (d == 1) return true;
  const Poly x{0, 1};
  auto frob = [&](unsigned k) {  // x^{p^k} mod f
    Poly r = x;
    for (unsigned i = 0; i < k; ++i) r = powmod(r, p, g, p);
    return r;
  };
  auto minus_x = [&](Poly r) {
    r.resize(std::max<std::size_t>(r.size(), 2), 0);
    r[1] = (r[1] + p - 1) % p;
    return trim(std::move(r));
  };
  if (!minus_x(frob(d)).empty()) return false;
  for (std::uint64_t l : prime_factors(d)) {
    const Poly h = minus_x(frob(d / static_cast<unsigned>(l)));
    if (gcd(g, h, p).size() != 1) return false;
  }
  return true;
}

Poly smallest_irreducible(Code p, unsigned d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "degree must be positive");
  // Enumerate (c_0, ..., c_{d-1}) with c_0 most significant.
  const std::uint64_t total = ipow(p, d);
  for (std::uint64_t r = 0; r < total; ++r) {
    Poly f(d + 1, 0);
    std::uint64_t t = r;
    for (unsigned i = d; i-- > 0;) {
      f[i] = static_cast<Code>(t % p);
      t /= p;
    }
    f[d] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw Error(ErrorCode::NotFound, "no irreducible polynomial");
}

}  // namespace poly

GaloisField::GaloisField(Code p, Poly modulus) : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "characteristic must be prime");
  if (modulus_.size() < 2 || modulus_.back() != 1)
    throw Error(ErrorCode::InvalidArgument, "modulus must be monic of positive degree");
  degree_ = static_cast<unsigned>(modulus_.size() - 1);
  const std::uint64_t sz = ipow(p, degree_);
  if (sz > (1u << 24)) throw Error(ErrorCode::BudgetExceeded, "field too large for tables");
  size_ = static_cast<Code>(sz);
  pw_.resize(degree_ + 1);
  pw_[0] = 1;
  for (unsigned i = 1; i <= degree_; ++i) pw_[i] = pw_[i - 1] * p;

  auto slow_mul = [&](Code a, Code b) {
    return from_coeffs(poly::mulmod(coeffs(a), coeffs(b), modulus_, p_));
  };
  auto slow_pow = [&](Code a, std::uint64_t e) {
    Code r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };
  const std::uint64_t n = size_ - 1;
  const auto qs = prime_factors(n);
  bool found = false;
  for (Code r = 0; r < size_ && !found; ++r) {
    const Code a = from_lex_rank(r);
    if (a == 0) continue;
    bool prim = true;
    for (auto l : qs)
      if (slow_pow(a, n / l) == 1) { prim = false; break; }
    if (prim) { primitive_ = a; found = true; }
  }
  if (!found) throw Error(ErrorCode::InvalidArgument, "modulus is not irreducible");
  exp_.resize(n);
  log_.assign(size_, 0);
  Code cur = 1;
  for (std::uint64_t k = 0; k < n; ++k) {
    exp_[k] = cur;
    log_[cur] = static_cast<std::uint32_t>(k);
    cur = slow_mul(cur, primitive_);
  }
  if (cur != 1) throw Error(ErrorCode::InvalidArgument, "modulus is not irreducible");
  if (size_ <= 256) {
    add_table_.resize(size_ * size_);
    mul_table_.resize(size_ * size_);
    for (Code a = 0; a < size_; ++a)
      for (Code b = 0; b < size_; ++b) {
        std::vector<Code> ca = coeffs(a), cb = coeffs(b);
        for (unsigned i = 0; i < degree_; ++i) ca[i] = (ca[i] + cb[i]) % p_;
        add_table_[a * size_ + b] = static_cast<std::uint16_t>(from_coeffs(ca));
        mul_table_[a * size_ + b] = static_cast<std::uint16_t>(
            (a == 0 || b == 0) ? 0 : exp_[(std::uint64_t{log_[a]} + log_[b]) % n]);
      }
  }
}

Code GaloisField::add(Code a, Code b) const {
  if (!add_table_.empty()) return add_table_[a * size_ + b];
  Code r = 0;
  for (unsigned i = 0; i < degree_; ++i) {
    const Code da = (a / pw_[i]) % p_, db = (b / pw_[i]) % p_;
    r += ((da + db) % p_) * pw_[i];
  }
  return r;
}

Code GaloisField::neg(Code a) const {
  Code r = 0;
  for (unsigned i = 0; i < degree_; ++i) {
    const Code da = (a / pw_[i]) % p_;
    r += ((p_ - da) % p_) * pw_[i];
  }
  return r;
}

Code GaloisField::sub(Code a, Code b) const { return add(a, neg(b)); }

Code GaloisField::mul(Code a, Code b) const {
  if (!mul_table_.empty()) return mul_table_[a * size_ + b];
  if (a == 0 || b == 0) return 0;
  return exp_[(std::uint64_t{log_[a]} + log_[b]) % (size_ - 1)];
}

Code GaloisField::inv(Code a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : (size_ - 1) - l];
}

Code GaloisField::pow(Code a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(log_[a] * (e % (size_ - 1))) % (size_ - 1)];
}

Code GaloisField::scale(Code a, Code c) const {
  Code r = 0;
  for (unsigned i = 0; i < degree_; ++i) {
    const Code da = (a / pw_[i]) % p_;
    r += ((da * c) % p_) * pw_[i];
  }
  return r;
}

std::uint64_t GaloisField::order(Code a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "order of zero");
  const std::uint64_t n = size_ - 1;
  std::uint64_t l = log_[a];
  auto g = [](std::uint64_t x, std::uint64_t y) {
    while (y) { auto t = x % y; x = y; y = t; }
    return x;
  };
  return n / g(n, l);
}

std::uint32_t GaloisField::log(Code a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "log of zero");
  return log_[a];
}

Code GaloisField::exp(std::uint64_t k) const { return exp_[k % (size_ - 1)]; }

bool GaloisField::is_square(Code a) const { return a == 0 || log_[a] % 2 == 0; }

std::vector<Code> GaloisField::coeffs(Code a) const {
  std::vector<Code> c(degree_);
  for (unsigned i = 0; i < degree_; ++i) c[i] = (a / pw_[i]) % p_;
  return c;
}

Code GaloisField::from_coeffs(const std::vector<Code>& c) const {
  Code r = 0;
  for (unsigned i = 0; i < degree_ && i < c.size(); ++i) r += (c[i] % p_) * pw_[i];
  return r;
}

Code GaloisField::lex_rank(Code a) const {
  Code r = 0;
  for (unsigned i = 0; i < degree_; ++i) r = r * p_ + (a / pw_[i]) % p_;
  return r;
}

Code GaloisField::from_lex_rank(Code r) const {
  Code a = 0;
  for (unsigned i = degree_; i-- > 0;) {
    a += (r % p_) * pw_[i];
    r /= p_;
  }
  return a;
}

FieldPtr standard_field(Code p, unsigned d) {
  static std::mutex mu;
  static std::map<std::pair<Code, unsigned>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, d}];
  if (!slot) slot = std::make_shared<GaloisField>(p, poly::smallest_irreducible(p, d));
  return slot;
}

namespace {

// Smallest root (by lex order) of f in the field F.
Code smallest_root(const GaloisField& F, const Poly& f) {
  for (Code r = 0; r < F.size(); ++r) {
    const Code x = F.from_lex_rank(r);
    Code acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
    if (acc == 0) return x;
  }
  throw Error(ErrorCode::NotFound, "modulus has no root in the top field");
}

}  // namespace

FieldTower::FieldTower(Code p, unsigned e, unsigned m) : p_(p), e_(e), m_(m) {
  if (p % 2 == 0 || !is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p must be an odd prime");
  if (e == 0 || m == 0) throw Error(ErrorCode::InvalidArgument, "e and m must be positive");
  base_ = standard_field(p, e);
  mid_ = standard_field(p, e * m);
  top_ = standard_field(p, 2 * e * m);
  alpha_ = top_->primitive();

  auto build = [&](const GaloisField& sub, std::vector<Code>& emb, std::vector<std::int64_t>& res) {
    const Code root = smallest_root(*top_, sub.modulus());
    emb.assign(sub.size(), 0);
    res.assign(top_->size(), -1);
    std::vector<Code> rp(sub.degree());
    rp[0] = 1;
    for (unsigned i = 1; i < sub.degree(); ++i) rp[i] = top_->mul(rp[i - 1], root);
    for (Code c = 0; c < sub.size(); ++c) {
      const auto cf = sub.coeffs(c);
      Code acc = 0;
      for (unsigned i = 0; i < sub.degree(); ++i) acc = top_->add(acc, top_->scale(rp[i], cf[i]));
      emb[c] = acc;
      res[acc] = c;
    }
  };
  build(*base_, base_embed_, base_restrict_);
  build(*mid_, mid_embed_, mid_restrict_);

  // The embeddings must be ring homomorphisms and nest F_q inside F_{q^m}.
  for (Code a = 0; a < base_->size(); ++a) {
    for (Code b = 0; b < std::min<Code>(base_->size(), 8); ++b) {
      if (embed(Level::Base, base_->mul(a, b)) != top_->mul(embed(Level::Base, a), embed(Level::Base, b)) ||
          embed(Level::Base, base_->add(a, b)) != top_->add(embed(Level::Base, a), embed(Level::Base, b)))
        throw Error(ErrorCode::InvalidArgument, "base embedding is not a homomorphism");
    }
    if (!in_subfield(Level::Mid, embed(Level::Base, a)))
      throw Error(ErrorCode::InvalidArgument, "F_q is not inside F_{q^m}");
  }
  for (Code a = 0; a < std::min<Code>(mid_->size(), 64); ++a) {
    const Code b = mid_->from_lex_rank((a * 7 + 3) % mid_->size());
    if (embed(Level::Mid, mid_->mul(a, b)) != top_->mul(embed(Level::Mid, a), embed(Level::Mid, b)))
      throw Error(ErrorCode::InvalidArgument, "mid embedding is not a homomorphism");
  }
}

const FieldPtr& FieldTower::field(Level level) const {
  switch (level) {
    case Level::Base: return base_;
    case Level::Mid: return mid_;
    default: return top_;
  }
}

Code FieldTower::embed(Level level, Code x) const {
  switch (level) {
    case Level::Base: return base_embed_.at(x);
    case Level::Mid: return mid_embed_.at(x);
    default: return x;
  }
}

bool FieldTower::in_subfield(Level level, Code x) const {
  switch (level) {
    case Level::Base: return base_restrict_.at(x) >= 0;
    case Level::Mid: return mid_restrict_.at(x) >= 0;
    default: return true;
  }
}

Code FieldTower::restrict(Level level, Code x) const {
  if (!in_subfield(level, x)) throw Error(ErrorCode::LevelMismatch, "element is not in the subfield");
  switch (level) {
    case Level::Base: return static_cast<Code>(base_restrict_[x]);
    case Level::Mid: return static_cast<Code>(mid_restrict_[x]);
    default: return x;
  }
}

Code FieldTower::bar(Code x) const { return top_->pow(x, ipow(q(), m_)); }

Code FieldTower::trace_mid_to_base(Code x) const {
  if (!in_subfield(Level::Mid, x)) throw Error(ErrorCode::LevelMismatch, "trace argument not in F_{q^m}");
  Code acc = 0, cur = x;
  for (unsigned i = 0; i < m_; ++i) {
    acc = top_->add(acc, cur);
    cur = top_->pow(cur, q());
  }
  if (!in_subfield(Level::Base, acc)) throw Error(ErrorCode::LevelMismatch, "trace left F_q");
  return acc;
}

FieldElement FieldTower::element(Level level, Code c) const {
  return FieldElement{level, field(level)->coeffs(c)};
}

void FieldTower::check_level(const FieldElement& x) const {
  const auto& F = field(x.level);
  if (x.coeffs.size() != F->degree()) throw Error(ErrorCode::LevelMismatch, "coefficient length");
  for (Code c : x.coeffs)
    if (c >= p_) throw Error(ErrorCode::InvalidArgument, "coefficient out of range");
}

Code FieldTower::code(const FieldElement& x) const {
  check_level(x);
  return field(x.level)->from_coeffs(x.coeffs);
}

FieldElement FieldTower::add(const FieldElement& x, const FieldElement& y) const {
  if (x.level != y.level) throw Error(ErrorCode::LevelMismatch, "add across levels");
  return element(x.level, field(x.level)->add(code(x), code(y)));
}

FieldElement FieldTower::mul(const FieldElement& x, const FieldElement& y) const {
  if (x.level != y.level) throw Error(ErrorCode::LevelMismatch, "mul across levels");
  return element(x.level, field(x.level)->mul(code(x), code(y)));
}

FieldElement FieldTower::inv(const FieldElement& x) const {
  return element(x.level, field(x.level)->inv(code(x)));
}

FieldElement FieldTower::pow(const FieldElement& x, std::uint64_t k) const {
  return element(x.level, field(x.level)->pow(code(x), k));
}

FieldElement FieldTower::trace_to_base(const FieldElement& x) const {
  if (x.level == Level::Base) throw Error(ErrorCode::LevelMismatch, "trace of a base element");
  Code t = embed(x.level, code(x));
  if (x.level == Level::Top) {
    // F_{q^{2m}} -> F_{q^m} first, then down to F_q.
    t = top_->add(t, bar(t));
  }
  return element(Level::Base, restrict(Level::Base, trace_mid_to_base(t)));
}

FieldElement FieldTower::bar(const FieldElement& x) const {
  if (x.level != Level::Top) throw Error(ErrorCode::LevelMismatch, "bar is defined on the top field");
  return element(Level::Top, bar(code(x)));
}

nlohmann::json FieldTower::to_json() const {
  return {{"p", p_},
          {"e", e_},
          {"m", m_},
          {"moduli", {base_->modulus(), mid_->modulus(), top_->modulus()}},
          {"alpha", top_->coeffs(alpha_)}};
}

FieldTower make_tower(Code p, unsigned e, unsigned m) { return FieldTower(p, e, m); }

nlohmann::json to_json(const FieldElement& x) {
  return {{"level", static_cast<int>(x.level)}, {"coeffs", x.coeffs}};
}

FieldElement field_element_from_json(const nlohmann::json& j) {
  FieldElement x;
  const int lv = j.at("level").get<int>();
  if (lv < 0 || lv > 2) throw Error(ErrorCode::Format, "bad level");
  x.level = static_cast<Level>(lv);
  x.coeffs = j.at("coeffs").get<std::vector<Code>>();
  return x;
}

}  // namespace olsig
