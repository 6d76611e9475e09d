#include <random>

#include "doctest.h"
#include "olsig/error.hpp"
#include "olsig/fields.hpp"

using namespace olsig;

namespace {

// Naive polynomial arithmetic mod (f, p), used as an oracle for the table code.
Poly naive_mul(const Poly& a, const Poly& b, const Poly& f, Code p) {
  std::vector<long> r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += static_cast<long>(a[i]) * b[j];
  const std::size_t d = f.size() - 1;
  for (std::size_t k = r.size(); k-- > d;) {
    const long c = r[k] % p;
    if (!c) continue;
    for (std::size_t i = 0; i <= d; ++i) r[k - d + i] -= c * f[i];
  }
  Poly out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = static_cast<Code>(((r[i] % p) + p) % p);
  return out;
}

}  // namespace

TEST_CASE("make_tower(3,1,1) picks x^2+1 and alpha = x+1") {
  FieldTower t = make_tower(3, 1, 1);
  CHECK(t.top()->modulus() == Poly{1, 0, 1});
  CHECK(t.top()->coeffs(t.alpha()) == std::vector<Code>{1, 1});
  CHECK(t.top()->order(t.alpha()) == 8);
  const Code a = t.alpha();
  CHECK(t.top()->coeffs(t.top()->pow(a, 2)) == std::vector<Code>{0, 2});
  CHECK(t.top()->coeffs(t.top()->pow(a, 4)) == std::vector<Code>{2, 0});
}

TEST_CASE("make_tower(3,1,2) has a primitive element of order 80") {
  FieldTower t = make_tower(3, 1, 2);
  CHECK(t.top()->size() == 81);
  CHECK(t.top()->order(t.alpha()) == 80);
  // alpha is the smallest element of maximal order in low-degree-first order
  for (Code r = 0; r < t.top()->lex_rank(t.alpha()); ++r) {
    const Code x = t.top()->from_lex_rank(r);
    if (x) CHECK(t.top()->order(x) < 80);
  }
}

TEST_CASE("tower rejects bad parameters") {
  CHECK_THROWS_AS(make_tower(2, 1, 1), Error);
  CHECK_THROWS_AS(make_tower(9, 1, 1), Error);
  CHECK_THROWS_AS(make_tower(3, 0, 1), Error);
  CHECK_THROWS_AS(make_tower(3, 1, 0), Error);
}

TEST_CASE("moduli are the smallest irreducibles") {
  for (Code p : {3u, 5u, 7u})
    for (unsigned d = 1; d <= 4; ++d) {
      const Poly f = poly::smallest_irreducible(p, d);
      REQUIRE(f.size() == d + 1);
      CHECK(poly::is_irreducible(f, p));
      // brute force: every smaller monic candidate of degree d has a factor
      if (p == 3 && d <= 3) {
        const std::uint64_t limit = ipow(p, d);
        for (std::uint64_t c = 0; c < limit; ++c) {
          Poly g(d + 1, 0);
          g[d] = 1;
          std::uint64_t t = c;
          // candidate order: coefficient 0 most significant
          for (unsigned i = 0; i < d; ++i) {
            g[d - 1 - i] = static_cast<Code>(t % p);
            t /= p;
          }
          if (g == f) break;
          CHECK_FALSE(poly::is_irreducible(g, p));
        }
      }
    }
}

TEST_CASE("field arithmetic examples") {
  FieldTower t = make_tower(3, 1, 1);
  const auto& F = *t.top();
  const Code x = F.from_coeffs({0, 1});
  CHECK(F.mul(x, x) == 2);
  CHECK(F.inv(1) == 1);
  FieldTower t5 = make_tower(5, 2, 1);
  const auto& Fq = *t5.base();
  for (Code a = 1; a < Fq.size(); ++a) CHECK(Fq.pow(a, Fq.size() - 1) == 1);
  CHECK_THROWS_AS(F.inv(0), Error);
}

TEST_CASE("FieldElement operations check levels") {
  FieldTower t = make_tower(3, 1, 2);
  FieldElement a = t.element(Level::Top, t.alpha());
  FieldElement b = t.element(Level::Base, 2);
  CHECK_THROWS_AS(t.add(a, b), Error);
  CHECK_THROWS_AS(t.inv(t.element(Level::Mid, 0)), Error);
  CHECK(t.mul(t.inv(a), a) == t.element(Level::Top, 1));
  FieldElement bad{Level::Base, {5}};
  CHECK_THROWS_AS(t.code(bad), Error);
}

TEST_CASE("table multiplication agrees with naive polynomial arithmetic") {
  std::mt19937_64 rng(7);
  for (auto [p, d] : std::vector<std::pair<Code, unsigned>>{{3, 4}, {5, 2}, {3, 6}, {7, 2}, {5, 4}}) {
    FieldPtr F = standard_field(p, d);
    std::uniform_int_distribution<Code> pick(0, F->size() - 1);
    for (int i = 0; i < 1000; ++i) {
      const Code a = pick(rng), b = pick(rng), c = pick(rng);
      CHECK(F->coeffs(F->mul(a, b)) == naive_mul(F->coeffs(a), F->coeffs(b), F->modulus(), p));
      CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
      CHECK(F->add(a, b) == F->add(b, a));
    }
  }
}

TEST_CASE("trace examples") {
  FieldTower t = make_tower(3, 1, 1);
  auto tr = [&](Code x) { return t.trace_to_base(t.element(Level::Top, x)); };
  CHECK(tr(0).coeffs == std::vector<Code>{0});
  CHECK(tr(1).coeffs == std::vector<Code>{2});
  CHECK(tr(t.top()->from_coeffs({0, 1})).coeffs == std::vector<Code>{0});
}

TEST_CASE("trace is F_q-linear and bar is an involutive automorphism") {
  for (auto [p, e, m] : std::vector<std::tuple<Code, unsigned, unsigned>>{{3, 1, 2}, {5, 1, 2}, {3, 2, 1}, {3, 1, 3}}) {
    FieldTower t = make_tower(p, e, m);
    const auto& E = *t.top();
    std::mt19937_64 rng(p * 100 + e * 10 + m);
    std::uniform_int_distribution<Code> pick(0, E.size() - 1), pickq(0, t.base()->size() - 1);
    for (int i = 0; i < 300; ++i) {
      const Code x = pick(rng), y = pick(rng);
      const Code lam = t.embed(Level::Base, pickq(rng));
      CHECK(t.bar(t.bar(x)) == x);
      CHECK(t.bar(E.mul(x, y)) == E.mul(t.bar(x), t.bar(y)));
      CHECK(t.bar(E.add(x, y)) == E.add(t.bar(x), t.bar(y)));
      const Code n = E.mul(x, t.bar(x));
      CHECK(t.in_subfield(Level::Mid, n));
      // tr(lam a + b) = lam tr(a) + tr(b) on F_{q^m}
      const Code a = E.add(x, t.bar(x)), b = E.add(y, t.bar(y));
      CHECK(t.trace_mid_to_base(E.add(E.mul(lam, a), b)) ==
            E.add(E.mul(lam, t.trace_mid_to_base(a)), t.trace_mid_to_base(b)));
    }
    for (Code c = 0; c < t.mid()->size(); ++c) {
      const Code x = t.embed(Level::Mid, c);
      CHECK(t.bar(x) == x);
    }
  }
}

TEST_CASE("bar(alpha) * alpha lies in F_{q^m}") {
  FieldTower t = make_tower(3, 1, 2);
  const Code n = t.top()->mul(t.bar(t.alpha()), t.alpha());
  CHECK(t.in_subfield(Level::Mid, n));
  CHECK_FALSE(t.in_subfield(Level::Mid, t.alpha()));
}

TEST_CASE("embeddings are ring homomorphisms") {
  FieldTower t = make_tower(3, 2, 2);
  const auto& M = *t.mid();
  for (Code a = 0; a < M.size(); ++a)
    for (Code b = 0; b < M.size(); b += 7) {
      CHECK(t.embed(Level::Mid, M.mul(a, b)) == t.top()->mul(t.embed(Level::Mid, a), t.embed(Level::Mid, b)));
      CHECK(t.embed(Level::Mid, M.add(a, b)) == t.top()->add(t.embed(Level::Mid, a), t.embed(Level::Mid, b)));
    }
}

TEST_CASE("field element json round trip") {
  FieldTower t = make_tower(5, 1, 2);
  FieldElement a = t.element(Level::Top, t.alpha());
  CHECK(field_element_from_json(to_json(a)) == a);
  CHECK(t.to_json()["alpha"].is_array());
}
