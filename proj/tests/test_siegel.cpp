#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "tqf/classno.hpp"
#include "tqf/errors.hpp"
#include "tqf/siegel.hpp"

using namespace tqf;

namespace {

const double pi = std::numbers::pi;

std::vector<i64> admissible_squarefree(const GenusData& g, i64 n_max) {
  std::vector<i64> out;
  for (i64 n = 1; n <= n_max; ++n)
    if (is_admissible(g, n) && is_squarefree(static_cast<u64>(n))) out.push_back(n);
  return out;
}

}  // namespace

TEST_CASE("genus data") {
  const auto g3 = make_genus(GenusLabel::three_squares);
  REQUIRE(g3.classes.size() == 1);
  CHECK(g3.classes[0].aut == 24);
  CHECK(g3.det() == 1);
  const auto gr = make_genus(GenusLabel::ramanujan_ten);
  REQUIRE(gr.classes.size() == 2);
  CHECK(gr.classes[0].aut == 8);
  CHECK(gr.classes[1].aut == 4);
  CHECK(gr.det() == 10);
  CHECK(gr.classes[1].form.det() == 10);
  CHECK(gr.mass() == Rational(3, 8));
  CHECK(parse_genus("three-squares") == GenusLabel::three_squares);
  CHECK(parse_genus(to_string(GenusLabel::ramanujan_ten)) == GenusLabel::ramanujan_ten);
  CHECK_THROWS_AS(parse_genus("ten"), DomainError);
}

TEST_CASE("beta_infinity") {
  const auto g3 = make_genus(GenusLabel::three_squares);
  const auto gr = make_genus(GenusLabel::ramanujan_ten);
  CHECK(beta_infinity(g3, 1) == doctest::Approx(2 * pi).epsilon(1e-15));
  CHECK(beta_infinity(gr, 1) == doctest::Approx(2 * pi / std::sqrt(10.0)).epsilon(1e-15));
  CHECK(beta_infinity(g3, 4) == doctest::Approx(4 * pi).epsilon(1e-15));
  CHECK(beta_infinity(gr, 7) == doctest::Approx(2 * pi * std::sqrt(7.0) / std::sqrt(10.0)).epsilon(1e-15));
}

TEST_CASE("beta_p_closed") {
  const auto g3 = make_genus(GenusLabel::three_squares);
  const auto gr = make_genus(GenusLabel::ramanujan_ten);
  CHECK(beta_p_closed(g3, 1, 2) == Rational(3, 2));
  CHECK(beta_p_closed(g3, 1, 3) == Rational(2, 3));
  for (i64 n : {1, 3, 7, 11, 13, 21, 1999}) {
    CHECK(beta_p_closed(gr, n, 5) == Rational(4, 5));
    CHECK(beta_p_closed(gr, n, 2) == Rational(1));
  }
  // n = 3 (mod 8): D = -n and (D/2) = +-1
  CHECK(beta_p_closed(g3, 3, 2) == Rational(3, 2) / (Rational(1) + Rational(1, 2)));
  CHECK(beta_p_closed(g3, 7 + 4, 2) == Rational(3, 2) / (Rational(1) + Rational(1, 2)));
  CHECK(beta_p_closed(g3, 15 + 4, 2) == Rational(3, 2) / (Rational(1) + Rational(1, 2)));
  CHECK_THROWS_AS(beta_p_closed(g3, 7, 3), DomainError);
  CHECK_THROWS_AS(beta_p_closed(g3, 4, 3), DomainError);
  CHECK_THROWS_AS(beta_p_closed(gr, 5, 3), DomainError);
  CHECK_THROWS_AS(beta_p_closed(gr, 3, 9), DomainError);
}

TEST_CASE("beta_p_counting examples") {
  CHECK(beta_p_counting(forms::three_squares(), 1, 3) == Rational(2, 3));
  CHECK(beta_p_counting(forms::ramanujan_ten(), 3, 5) == Rational(4, 5));
  CHECK(beta_p_counting(forms::three_squares(), 7, 2) == Rational(0));
  CHECK(beta_p_counting(forms::three_squares(), 1, 2) == Rational(3, 2));
  CHECK(beta_p_counting(forms::ramanujan_ten(), 1, 2) == Rational(1));
  CHECK(beta_p_counting(forms::ramanujan_ten_partner(), 1, 5) == Rational(4, 5));
  CHECK_THROWS_AS(beta_p_counting(forms::three_squares(), 1, 4), DomainError);
}

TEST_CASE("beta_p_counting stabilises for arbitrary n") {
  for (const auto& q : {forms::three_squares(), forms::ramanujan_ten(), forms::ramanujan_ten_partner()})
    for (i64 n = 1; n <= 120; ++n)
      for (i64 p : {2, 3, 5, 7}) CHECK_NOTHROW(beta_p_counting(q, n, p));
}

TEST_CASE("counting densities equal the closed forms") {
  const auto primes = primes_up_to(50);
  for (auto label : {GenusLabel::three_squares, GenusLabel::ramanujan_ten}) {
    const auto g = make_genus(label);
    for (i64 n : admissible_squarefree(g, 150))
      for (const auto& c : g.classes)
        for (u64 p : primes) {
          CAPTURE(n);
          CAPTURE(p);
          REQUIRE(beta_p_counting(c.form, n, static_cast<i64>(p)) == beta_p_closed(g, n, static_cast<i64>(p)));
        }
  }
}

TEST_CASE("imprimitive_L1_correction") {
  CHECK(imprimitive_L1_correction(-3, 2) == Rational(3, 2));
  CHECK(imprimitive_L1_correction(-4, 1) == Rational(1));
  CHECK(imprimitive_L1_correction(-7, 1) == Rational(1));
  CHECK(imprimitive_L1_correction(-4, 3) == Rational(4, 3));
  CHECK_THROWS_AS(imprimitive_L1_correction(-4, 0), DomainError);
}

TEST_CASE("imprimitive L(1) matches the class number formula of the order") {
  // L(1, chi_D) = 2 pi h(D) / (w(D) sqrt|D|) also holds for non-fundamental D
  for (i64 d = -3; d >= -3000; --d) {
    const i64 r = ((d % 4) + 4) % 4;
    if (r == 2 || r == 3) continue;
    const Discriminant disc(d);
    const double expected = 2 * pi * class_number(disc) / (unit_count(disc) * std::sqrt(static_cast<double>(-d)));
    CAPTURE(d);
    REQUIRE(dirichlet_L1_any(d) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("three squares from L(1)") {
  const auto g3 = make_genus(GenusLabel::three_squares);
  for (i64 n = 1; n <= 3000; ++n) {
    if (!is_admissible(g3, n)) continue;
    const i64 d = character_discriminant(g3, n);
    const double predicted = 24 / pi * std::sqrt(static_cast<double>(n)) * dirichlet_L1_any(d);
    const double actual = static_cast<double>(rep_count(forms::three_squares(), n).count_primitive);
    CAPTURE(n);
    REQUIRE(std::fabs(predicted - actual) <= 1e-6 * actual);
    REQUIRE(three_squares_class_number_count(n) == static_cast<i64>(actual));
  }
  CHECK(three_squares_class_number_count(7) == 0);
  CHECK(three_squares_class_number_count(12) == 0);
}

TEST_CASE("mass formula examples") {
  const auto g3 = make_genus(GenusLabel::three_squares);
  const auto gr = make_genus(GenusLabel::ramanujan_ten);
  const auto a = mass_formula_check(g3, 1);
  CHECK(a.lhs == Rational(6));
  CHECK(a.residual <= a.tail_bound);
  CHECK(a.tail_bound <= 1e-4);
  const auto b = mass_formula_check(gr, 3);
  CHECK(b.lhs == Rational(8, 3));
  CHECK(b.residual <= b.tail_bound);
  const double closed = 4 * std::sqrt(10.0) / (3 * pi) * std::sqrt(3.0) * dirichlet_L1_any(-120);
  CHECK(closed == doctest::Approx(8.0 / 3).epsilon(1e-12));
  const auto c = mass_formula_check(gr, 7);
  CHECK(c.lhs == Rational(8, 3));
  CHECK(2 * class_number(Discriminant(-280)) == 8);
  CHECK(c.residual <= c.tail_bound);
}

TEST_CASE("mass formula residual within the tail bound") {
  for (auto label : {GenusLabel::three_squares, GenusLabel::ramanujan_ten}) {
    const auto g = make_genus(label);
    for (i64 n : admissible_squarefree(g, 120)) {
      const auto m = mass_formula_check(g, n);
      CAPTURE(n);
      REQUIRE_FALSE(m.lhs_zero);
      REQUIRE(m.residual <= m.tail_bound);
    }
  }
}

TEST_CASE("density report") {
  const auto gr = make_genus(GenusLabel::ramanujan_ten);
  const auto rep = density_report(gr, 21);
  CHECK(rep.beta_p.at(2) == Rational(1));
  CHECK(rep.beta_p.at(5) == Rational(4, 5));
  for (const auto& [p, b] : rep.beta_p) {
    if (p == 2 || p == 5 || 21 % p == 0) continue;
    const Rational expected = (Rational(1) - Rational(1, p * p)) / (Rational(1) - Rational(kronecker(-840, p), p));
    CHECK(b == expected);
  }
  CHECK(rep.beta_p.rbegin()->first == 47);
  CHECK_THROWS_AS(density_report(gr, 10), DomainError);
  CHECK_THROWS_AS(density_report(gr, 3, 3), DomainError);
}

TEST_CASE("ramanujan_mass_identity rows") {
  const auto r1 = ramanujan_mass_identity(1);
  CHECK(r1.r_q == 4);
  CHECK(r1.r_q_partner == 0);
  CHECK(r1.two_h == 4);
  CHECK(r1.equal());
  const auto r3 = ramanujan_mass_identity(3);
  CHECK(r3.r_q + 2 * r3.r_q_partner == 8);
  CHECK(r3.two_h == 8);
  CHECK_THROWS_AS(ramanujan_mass_identity(15), DomainError);
}

TEST_CASE("identity with order class numbers at non-squarefree n") {
  int checked = 0;
  for (i64 n = 1; n <= 1500; ++n) {
    if (std::gcd(n, i64{10}) != 1 || is_squarefree(static_cast<u64>(n))) continue;
    const auto row = ramanujan_mass_identity(n);
    CHECK_MESSAGE(row.equal(), "n = " << n);
    ++checked;
  }
  CHECK(checked > 80);
  // 2h(-40 * 9) counts classes of the order of conductor 3
  CHECK(ramanujan_mass_identity(9).two_h == 16);
}
