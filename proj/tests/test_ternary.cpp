#include <numeric>
#include <random>

#include "doctest.h"
#include "tqf/classno.hpp"
#include "tqf/errors.hpp"
#include "tqf/ternary.hpp"

using namespace tqf;

namespace {

// Box search with |x_i| <= sqrt(n (G^-1)_ii).
RepResult brute_force(const TernaryForm& q, i64 n) {
  const Mat3& g = q.gram();
  const i64 adj[3] = {g[1][1] * g[2][2] - g[1][2] * g[1][2], g[0][0] * g[2][2] - g[0][2] * g[0][2],
                      g[0][0] * g[1][1] - g[0][1] * g[0][1]};
  i64 box[3];
  for (int i = 0; i < 3; ++i) box[i] = static_cast<i64>(std::sqrt(static_cast<double>(n * adj[i]) / q.det())) + 1;
  RepResult r;
  r.n = n;
  for (i64 x = -box[0]; x <= box[0]; ++x)
    for (i64 y = -box[1]; y <= box[1]; ++y)
      for (i64 z = -box[2]; z <= box[2]; ++z)
        if (q({x, y, z}) == n) {
          ++r.count_all;
          if (std::gcd(std::gcd(x, y), z) == 1) ++r.count_primitive;
        }
  return r;
}

Mat3 random_sl3(std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> e(-2, 2);
  for (;;) {
    Mat3 u;
    for (auto& row : u)
      for (auto& v : row) v = e(rng);
    if (det3(u) == 1) return u;
  }
}

i64 three_squares_oracle(i64 n) {
  const i64 r = n % 8;
  if (r == 0 || r == 4 || r == 7) return 0;
  const i64 d = r == 3 ? -n : -4 * n;
  const Discriminant disc(d);
  return (r == 3 ? 48 : 24) / unit_count(disc) * class_number(disc);
}

}  // namespace

TEST_CASE("rep_count examples") {
  CHECK(rep_count(forms::three_squares(), 5).count_primitive == 24);
  CHECK(24 / unit_count(Discriminant(-20)) * class_number(Discriminant(-20)) == 24);
  CHECK(rep_count(forms::ramanujan_ten(), 3).count_primitive == 0);
  auto r = representations(forms::ramanujan_ten_partner(), 3);
  CHECK(r.size() == 4);
  for (const Vec3& v : r) {
    CHECK(v[1] == 0);
    CHECK(v[2] != 0);
    CHECK((v[0] == 0 || v[0] == v[2]));
  }
  CHECK(rep_count(forms::ramanujan_ten_partner(), 3).count_primitive == 4);
  CHECK_THROWS_AS(rep_count(forms::three_squares(), 0), DomainError);
}

TEST_CASE("form construction") {
  CHECK(forms::ramanujan_ten().det() == 10);
  CHECK(forms::ramanujan_ten_partner().det() == 10);
  CHECK(forms::ramanujan_ten().det_even_matrix() == 80);
  CHECK(forms::ramanujan_ten_partner()({1, 0, 1}) == 3);
  CHECK_THROWS_AS(TernaryForm::from_coefficients(1, 1, 1, 1, 0, 0), DomainError);
  CHECK_THROWS_AS(TernaryForm::from_coefficients(1, 1, -1, 0, 0, 0), DomainError);
  CHECK_THROWS_AS(TernaryForm::from_gram(Mat3{{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}}), DomainError);
  CHECK_THROWS_AS(TernaryForm::from_coefficients(1, 1, 0, 0, 0, 2), DomainError);
}

TEST_CASE("rep_count agrees with a box search") {
  std::mt19937_64 rng(7);
  std::vector<TernaryForm> qs{forms::three_squares(), forms::ramanujan_ten(), forms::ramanujan_ten_partner(),
                              forms::spinor_first(), forms::spinor_second()};
  for (int i = 0; i < 10; ++i) qs.push_back(forms::ramanujan_ten_partner().transformed(random_sl3(rng)));
  qs.push_back(TernaryForm::from_coefficients(3, 5, 7, 2, -4, 2));
  for (const auto& q : qs)
    for (i64 n = 1; n <= 150; ++n) {
      const auto a = rep_count(q, n);
      const auto b = brute_force(q, n);
      CAPTURE(q.to_string());
      CAPTURE(n);
      REQUIRE(a.count_all == b.count_all);
      REQUIRE(a.count_primitive == b.count_primitive);
    }
}

TEST_CASE("primitive and full counts coincide for squarefree n") {
  for (i64 n = 1; n <= 2000; ++n) {
    if (!is_squarefree(static_cast<u64>(n))) continue;
    for (const auto& q : {forms::three_squares(), forms::ramanujan_ten(), forms::ramanujan_ten_partner()}) {
      const auto r = rep_count(q, n);
      REQUIRE(r.count_primitive == r.count_all);
    }
  }
  CHECK(rep_count(forms::three_squares(), 9).count_all == 30);
  CHECK(rep_count(forms::three_squares(), 9).count_primitive == 24);
}

TEST_CASE("three squares closed form for squarefree n") {
  for (i64 n = 1; n <= 10000; ++n) {
    if (!is_squarefree(static_cast<u64>(n))) continue;
    CAPTURE(n);
    REQUIRE(static_cast<i64>(rep_count(forms::three_squares(), n).count_primitive) == three_squares_oracle(n));
  }
}

TEST_CASE("Ramanujan pair mass identity") {
  for (i64 n = 1; n <= 1500; ++n) {
    if (std::gcd(n, i64{10}) != 1 || !is_squarefree(static_cast<u64>(n))) continue;
    const i64 a = static_cast<i64>(rep_count(forms::ramanujan_ten(), n).count_primitive);
    const i64 b = static_cast<i64>(rep_count(forms::ramanujan_ten_partner(), n).count_primitive);
    CAPTURE(n);
    REQUIRE(a + 2 * b == 2 * class_number(Discriminant(-40 * n)));
  }
  CHECK(rep_count(forms::ramanujan_ten(), 1).count_primitive == 4);
  CHECK(rep_count(forms::ramanujan_ten_partner(), 1).count_primitive == 0);
  CHECK(rep_count(forms::ramanujan_ten_partner(), 7).count_primitive == 4);
  CHECK(rep_count(forms::ramanujan_ten(), 7).count_primitive == 0);
}

TEST_CASE("spinor squares are represented by exactly one form") {
  for (i64 k = 1; k <= 50; ++k) {
    if (std::gcd(k, i64{6}) != 1) continue;
    const auto a = rep_count(forms::spinor_first(), k * k).count_primitive;
    const auto b = rep_count(forms::spinor_second(), k * k).count_primitive;
    CAPTURE(k);
    REQUIRE(((a > 0) != (b > 0)));
  }
}

TEST_CASE("automorph counts") {
  CHECK(automorph_count(forms::three_squares()) == 24);
  CHECK(automorph_count(forms::ramanujan_ten()) == 8);
  CHECK(automorph_count(forms::ramanujan_ten_partner()) == 4);
}

TEST_CASE("automorph count is invariant under SL3 changes of variable") {
  std::mt19937_64 rng(11);
  for (const auto& q : {forms::three_squares(), forms::ramanujan_ten(), forms::ramanujan_ten_partner()}) {
    const i64 base = automorph_count(q);
    for (int i = 0; i < 20; ++i) {
      const auto t = q.transformed(random_sl3(rng));
      CHECK(t.det() == q.det());
      CHECK(automorph_count(t) == base);
    }
  }
}

TEST_CASE("rep counts are invariant under SL3 changes of variable") {
  std::mt19937_64 rng(13);
  const auto q = forms::ramanujan_ten();
  for (int i = 0; i < 20; ++i) {
    const auto t = q.transformed(random_sl3(rng));
    for (i64 n = 1; n <= 60; ++n) REQUIRE(rep_count(t, n).count_all == rep_count(q, n).count_all);
  }
}

TEST_CASE("enumeration reports overflow") {
  const auto big = TernaryForm::from_coefficients(i64{1} << 20, i64{1} << 20, i64{1} << 20, 0, 0, 0);
  CHECK(rep_count(big, i64{1} << 20).count_all == 6);
  CHECK(rep_count(big, i64{3} << 40).count_all == 8);
  const auto wide = TernaryForm::from_coefficients(i64{1} << 31, i64{1} << 31, 1, 0, 0, 0);
  CHECK_THROWS_AS(rep_count(wide, i64{1} << 62), RangeError);
  CHECK_THROWS_AS(TernaryForm::from_coefficients(i64{1} << 40, i64{1} << 40, 1, 0, 0, 0), RangeError);
}
