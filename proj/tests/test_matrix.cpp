#include <random>

#include "doctest.h"
#include "olsig/error.hpp"
#include "olsig/matrix.hpp"

using namespace olsig;

namespace {

Matrix random_matrix(const FieldPtr& F, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Code> pick(0, F->size() - 1);
  Matrix m(F, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = pick(rng);
  return m;
}

// Leibniz expansion over all permutations; oracle for det.
Code leibniz_det(const Matrix& a) {
  const auto& F = *a.field();
  std::vector<int> perm(a.n());
  for (int i = 0; i < a.n(); ++i) perm[i] = i;
  Code total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < a.n(); ++i)
      for (int j = i + 1; j < a.n(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    Code term = 1;
    for (int i = 0; i < a.n(); ++i) term = F.mul(term, a(i, perm[i]));
    total = inversions % 2 ? F.sub(total, term) : F.add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("basic matrix examples") {
  FieldPtr F3 = standard_field(3, 1);
  Matrix I = Matrix::identity(F3, 4);
  CHECK(I.inverse() == I);
  CHECK(Matrix(F3, 4).rank() == 0);
  Matrix a(F3, 2);
  a.at(0, 0) = 1;
  a.at(0, 1) = 1;
  a.at(1, 1) = 2;
  CHECK(a.det() == 2);
  CHECK_THROWS_AS(Matrix(F3, 3).inverse(), Error);
  CHECK_THROWS_AS(Matrix(F3, 3) * Matrix(F3, 2), Error);
}

TEST_CASE("det matches Leibniz and inverse round trips") {
  std::mt19937_64 rng(11);
  for (auto [p, d] : std::vector<std::pair<Code, unsigned>>{{3, 1}, {5, 1}, {3, 2}}) {
    FieldPtr F = standard_field(p, d);
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 1 + trial % 5;
      Matrix a = random_matrix(F, n, rng);
      CHECK(a.det() == leibniz_det(a));
      if (a.det() != 0) {
        CHECK((a * a.inverse()).is_identity());
        CHECK(a.transpose_inverse() == a.transpose().inverse());
        CHECK(a.rank() == n);
      } else {
        CHECK(a.rank() < n);
      }
    }
  }
}

TEST_CASE("singer generator orders") {
  FieldPtr F3 = standard_field(3, 1);
  Matrix s1 = singer_generator(1, F3);
  CHECK(s1(0, 0) == 2);
  CHECK(element_order(s1, 100) == 2);
  CHECK(element_order(singer_generator(2, F3), 100) == 8);
  CHECK(element_order(singer_generator(3, F3), 100) == 26);
  CHECK(element_order(singer_generator(2, standard_field(5, 1)), 100) == 24);
  CHECK(element_order(singer_generator(2, standard_field(3, 2)), 100) == 80);
  CHECK(singer_generator(3, F3).pow(26).is_identity());
}

TEST_CASE("element order examples") {
  FieldPtr F = standard_field(5, 1);
  CHECK(element_order(Matrix::identity(F, 3), 10) == 1);
  CHECK(element_order(-Matrix::identity(F, 3), 10) == 2);
  CHECK_FALSE(element_order(singer_generator(2, F), 5).has_value());
  CHECK_THROWS_AS(element_order(Matrix(F, 2), 5), Error);
  // large caps go through the factored path
  CHECK(element_order(singer_generator(2, F), 24ull * 1000003ull * 8) == 24);
}

TEST_CASE("mult_matrix is a homomorphism and det is the norm") {
  for (auto [p, e, m] : std::vector<std::tuple<Code, unsigned, unsigned>>{{3, 1, 2}, {5, 1, 1}, {3, 2, 1}}) {
    FieldTower t = make_tower(p, e, m);
    const auto& E = *t.top();
    const ExtensionBasis B = tower_basis(t);
    std::mt19937_64 rng(p + e + m);
    std::uniform_int_distribution<Code> pick(1, E.size() - 1);
    CHECK(B.mult_matrix(1).is_identity());
    CHECK_THROWS_AS(B.mult_matrix(0), Error);
    const std::uint64_t q = t.q();
    const std::uint64_t nexp = (E.size() - 1) / (q - 1);
    for (int i = 0; i < 200; ++i) {
      const Code s = pick(rng), u = pick(rng);
      const Matrix ms = B.mult_matrix(s);
      CHECK(ms * B.mult_matrix(u) == B.mult_matrix(E.mul(s, u)));
      CHECK((ms * B.mult_matrix(E.inv(s))).is_identity());
      if (i < 20) CHECK(t.embed(Level::Base, ms.det()) == E.pow(s, nexp));
    }
  }
}

TEST_CASE("extension coordinates round trip") {
  FieldTower t = make_tower(3, 1, 2);
  const ExtensionBasis B = tower_basis(t);
  for (Code x = 0; x < t.top()->size(); ++x) CHECK(B.element(B.coords(x)) == x);
}

TEST_CASE("solve_any and column space") {
  FieldPtr F = standard_field(3, 1);
  Matrix a(F, 3);
  a.at(0, 0) = 1;
  a.at(1, 1) = 1;
  CHECK(column_space(a).size() == 2);
  auto x = solve_any(a, Vec{2, 1, 0});
  REQUIRE(x);
  CHECK(a * *x == Vec{2, 1, 0});
  CHECK_FALSE(solve_any(a, Vec{0, 0, 1}));
}

TEST_CASE("matrix json round trip and validation") {
  FieldPtr F = standard_field(3, 2);
  std::mt19937_64 rng(3);
  Matrix a = random_matrix(F, 3, rng);
  CHECK(matrix_from_json(to_json(a), F) == a);
  auto j = to_json(a);
  j["entries"][0][0] = std::vector<int>{7, 0};
  CHECK_THROWS_AS(matrix_from_json(j, F), Error);
}
