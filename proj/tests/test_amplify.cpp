#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "tqf/amplify.hpp"
#include "tqf/errors.hpp"
#include "tqf/newform.hpp"

using namespace tqf;

namespace {

const NewformSeries& series() {
  static const NewformSeries f = newform20(20000);
  return f;
}

std::vector<i64> unit_poly(i64 m, i64 value) {
  std::vector<i64> v(static_cast<std::size_t>(m), 0);
  if (!v.empty()) v[0] = value;
  return v;
}

}  // namespace

TEST_CASE("sin and cos complete each other") {
  for (double x = -10; x <= 10; x += 0.37) {
    const double s = std::sin(x), c = std::cos(x);
    CHECK((s + c) * (s + c) + (s - c) * (s - c) == doctest::Approx(2.0));
  }
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<i64>{-1, 1});
  CHECK(cyclotomic_polynomial(2) == std::vector<i64>{1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<i64>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<i64>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<i64>{1, 0, -1, 0, 1});
  // Phi_105 is the first with a coefficient of absolute value 2
  const auto p105 = cyclotomic_polynomial(105);
  CHECK(p105.size() == 49);
  CHECK(std::count(p105.begin(), p105.end(), -2) == 2);
  CHECK_THROWS_AS(cyclotomic_polynomial(0), DomainError);
}

TEST_CASE("character table") {
  CharacterTable t(11);
  CHECK(t.order() == 10);
  CHECK(t.generator() == 2);
  CHECK(t.log(1) == 0);
  CHECK(t.log(0) == -1);
  CHECK(t.log(22) == -1);
  CHECK(t.exponent(3, 0) == -1);
  for (i64 j = 0; j < t.order(); ++j) {
    CHECK(std::abs(t.value(j, 1) - Complex(1)) < 1e-15);
    for (i64 a = 1; a < 11; ++a)
      for (i64 b = 1; b < 11; ++b) CHECK(std::abs(t.value(j, a * b) - t.value(j, a) * t.value(j, b)) < 1e-12);
  }
  CHECK_THROWS_AS(CharacterTable(12), DomainError);
  CHECK_THROWS_AS(CharacterTable(1), DomainError);
}

TEST_CASE("orthogonality is exact for every prime q <= 101") {
  for (u64 uq : primes_up_to(101)) {
    const i64 q = static_cast<i64>(uq);
    CharacterTable t(q);
    const i64 m = t.order();
    const i64 deg = static_cast<i64>(cyclotomic_polynomial(m).size()) - 1;
    for (i64 i = 0; i < m; ++i)
      for (i64 j = 0; j < m; ++j) {
        CAPTURE(q);
        REQUIRE(t.inner_product_exact(i, j) == unit_poly(deg, i == j ? m : 0));
      }
  }
}

TEST_CASE("smooth weight") {
  SmoothWeight w(10);
  CHECK(w(10) == 0);
  CHECK(w(40) == 0);
  CHECK(w(5) == 0);
  CHECK(w(45) == 0);
  CHECK(w(20) == 1);
  CHECK(w(25) == 1);
  CHECK(w(30) == 1);
  CHECK(w(15) == doctest::Approx(0.5));
  for (double r = 0; r < 50; r += 0.01) {
    REQUIRE(w(r) >= 0);
    REQUIRE(w(r) <= 1);
  }
  // C^3 joins: the first three derivatives vanish at the corners
  const double h = 1e-3;
  CHECK(std::fabs(w(20 - h) - 1) < 1e-9);
  CHECK(w(10 + h) < 1e-9);
  SmoothWeight zero(0);
  CHECK(zero(1) == 0);
  CHECK_THROWS_AS(SmoothWeight(-1), DomainError);
}

TEST_CASE("amplifier") {
  const auto a = make_amplifier(10, 11);
  CHECK(a.primes == std::vector<i64>{13, 17, 19});
  const auto b = make_amplifier(5.5, 7);
  CHECK(b.primes == std::vector<i64>{11});
  CHECK_THROWS_AS(make_amplifier(1, 7), DomainError);
}

TEST_CASE("L_xi examples") {
  const auto& f = series();
  CharacterTable t(11);
  // principal character: the sum over r prime to q
  SmoothWeight w(50);
  std::vector<Complex> principal(11, 1.0);
  principal[0] = 0;
  CHECK(std::abs(l_xi(f, t, 0, w) - l_weighted(f, w, principal)) < 1e-12);
  CHECK(std::abs(l_xi(f, t, 3, SmoothWeight(0))) == 0);
  // sum over all characters keeps only r = 1 (mod 11), times phi(11)
  Complex total = 0;
  for (i64 j = 0; j < t.order(); ++j) total += l_xi(f, t, j, w);
  double direct = 0, bound = 0;
  for (i64 r = 51; r < 200; ++r) {
    bound += std::fabs(static_cast<double>(f[r])) * w(static_cast<double>(r)) / static_cast<double>(r);
    if (r % 11 == 1) direct += static_cast<double>(f[r]) * w(static_cast<double>(r)) / static_cast<double>(r);
  }
  CHECK(std::abs(total - Complex(10 * direct)) < 1e-12);
  for (i64 j = 0; j < t.order(); ++j) CHECK(std::abs(l_xi(f, t, j, w)) <= bound + 1e-12);
  CHECK_THROWS_AS(l_xi(f, t, 1, SmoothWeight(6000)), RangeError);
}

TEST_CASE("amplified moment positivity") {
  const auto& f = series();
  CharacterTable t(11);
  SmoothWeight w(30);
  const auto single = amplified_moment(f, t, 0, AmplifierSpec{7, {13}}, w);
  CHECK(single.s >= single.lower - 1e-10 * single.s);
  CHECK(single.lower == doctest::Approx(std::norm(l_xi(f, t, 0, w))));
  for (i64 target = 0; target < t.order(); ++target) {
    const auto m = amplified_moment(f, t, target, make_amplifier(10, 11), w);
    CHECK(m.lower == doctest::Approx(9 * std::norm(l_xi(f, t, target, w))));
    CHECK(m.s >= m.lower - 1e-10 * m.s);
  }
  const auto empty = amplified_moment(f, t, 2, AmplifierSpec{}, w);
  CHECK(empty.s == 0);
  CHECK(empty.lower == 0);
  CHECK_THROWS_AS(amplified_moment(f, t, 10, make_amplifier(10, 11), w), DomainError);
}

TEST_CASE("random amplified moments") {
  const auto& f = series();
  std::mt19937_64 rng(17);
  const auto primes = primes_up_to(101);
  for (int i = 0; i < 20; ++i) {
    const i64 q = static_cast<i64>(primes[std::uniform_int_distribution<std::size_t>(1, primes.size() - 1)(rng)]);
    CharacterTable t(q);
    const i64 target = std::uniform_int_distribution<i64>(0, t.order() - 1)(rng);
    const double len = std::uniform_real_distribution<double>(2, 40)(rng);
    const auto m = amplified_moment(f, t, target, make_amplifier(len, q), SmoothWeight(static_cast<double>(q)));
    CHECK(m.s >= m.lower - 1e-10 * m.s);
  }
}

TEST_CASE("plancherel") {
  CharacterTable t5(5);
  std::vector<Complex> c(5, 0.0);
  c[3] = 1;
  auto a = plancherel_identity_check(t5, c);
  CHECK(a.spectral == doctest::Approx(4));
  CHECK(a.arithmetic == doctest::Approx(4));
  CharacterTable t7(7);
  std::vector<Complex> ones(7, 1.0);
  auto b = plancherel_identity_check(t7, ones);
  CHECK(b.spectral == doctest::Approx(36));
  CHECK(b.arithmetic == doctest::Approx(36));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  CharacterTable t13(13);
  std::vector<Complex> r(13);
  for (auto& v : r) v = {g(rng), g(rng)};
  auto p = plancherel_identity_check(t13, r);
  CHECK(p.residual <= 1e-10 * p.arithmetic);
  CHECK_THROWS_AS(plancherel_identity_check(t13, ones), DomainError);
}

TEST_CASE("shifted convolution") {
  const auto& f = series();
  CharacterTable t(11);
  const auto e = shifted_convolution_expand(f, t, 13, 17, SmoothWeight(30));
  CHECK(std::fabs(e.spectral_side - e.arithmetic_side) <= 1e-9 * std::fabs(e.arithmetic_side));
  const auto z = shifted_convolution_expand(f, t, 13, 17, SmoothWeight(0));
  CHECK(z.spectral_side == 0);
  CHECK(z.arithmetic_side == 0);
  // q beyond the support width: only the diagonal survives
  CharacterTable big(101);
  SmoothWeight w(20);
  const auto d = shifted_convolution_expand(f, big, 3, 3, w);
  double diag = 0;
  for (i64 r = 21; r < 80; ++r) {
    const double lam = static_cast<double>(f[r]) / std::sqrt(static_cast<double>(r));
    diag += lam * lam * w(static_cast<double>(r)) * w(static_cast<double>(r)) / static_cast<double>(r);
  }
  CHECK(d.arithmetic_side == doctest::Approx(diag).epsilon(1e-12));
  CHECK(d.spectral_side == doctest::Approx(diag).epsilon(1e-9));
  CHECK_THROWS_AS(shifted_convolution_expand(f, t, 22, 3, w), DomainError);
}

TEST_CASE("random shifted convolutions") {
  const auto& f = series();
  std::mt19937_64 rng(23);
  const auto primes = primes_up_to(101);
  for (int i = 0; i < 20; ++i) {
    const i64 q = static_cast<i64>(primes[std::uniform_int_distribution<std::size_t>(0, primes.size() - 1)(rng)]);
    CharacterTable t(q);
    std::uniform_int_distribution<i64> pick(1, 200);
    i64 l1 = pick(rng), l2 = pick(rng);
    while (l1 % q == 0) ++l1;
    while (l2 % q == 0) ++l2;
    const auto e = shifted_convolution_expand(f, t, l1, l2, SmoothWeight(std::uniform_real_distribution<double>(5, 200)(rng)));
    CHECK(std::fabs(e.spectral_side - e.arithmetic_side) <= 1e-9 * std::max(1e-300, std::fabs(e.arithmetic_side)) + 1e-15);
  }
}
