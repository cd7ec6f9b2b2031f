#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tqf/arith.hpp"
#include "tqf/ternary.hpp"

namespace tqf {

enum class GenusLabel { three_squares, ramanujan_ten };

std::string to_string(GenusLabel label);
// Throws DomainError on an unknown label.
GenusLabel parse_genus(std::string_view text);

struct GenusClass {
  TernaryForm form;
  i64 aut = 0;
};

struct GenusData {
  GenusLabel label;
  std::vector<GenusClass> classes;

  i64 det() const { return classes.front().form.det(); }
  Rational mass() const;  // sum of 1/aut
};

// The two worked genera. Automorph counts are computed, not tabulated.
GenusData make_genus(GenusLabel label);

// Congruence conditions under which the closed-form densities are offered:
// n = 1,2,3,5,6 (mod 8) for three squares, gcd(n, 10) = 1 for the
// Ramanujan pair.
bool is_admissible(const GenusData& genus, i64 n);

// Discriminant of the quadratic character in the density product:
// -4n or -n (n = 3 mod 8) for three squares, -40n for the Ramanujan pair.
i64 character_discriminant(const GenusData& genus, i64 n);

// 2 pi sqrt(n / det G).
double beta_infinity(const GenusData& genus, i64 n);

// Closed-form primitive local density at a finite prime p. Throws
// DomainError when n is not admissible.
Rational beta_p_closed(const GenusData& genus, i64 n, i64 p);

// Level at which the primitive solution count mod p^k has stabilised:
// 1 + 2 ord_p(2 det G). Primitive solutions have ord_p(2 G x) <= ord_p(2 det G),
// so Hensel lifting is exact from there on.
int density_stable_level(const TernaryForm& q, i64 p);

// N*_k(p) / p^{2k} by counting primitive solutions of Q(x) = n (mod p^k).
// Checks that levels k and k+1 agree; throws IntegrityError otherwise.
Rational beta_p_counting(const TernaryForm& q, i64 n, i64 p);

// prod_{p | f} (1 - (D0/p)/p): L(1, (f^2 D0 / .)) / L(1, (D0 / .)).
Rational imprimitive_L1_correction(i64 fundamental_disc, i64 conductor);

// L(1, (D/.)) for any negative discriminant, via the primitive character sum
// and the Euler-factor correction.
double dirichlet_L1_any(i64 d);

struct DensityReport {
  i64 n = 0;
  double beta_inf = 0;
  std::map<i64, Rational> beta_p;  // listed primes (p <= 50)
  u64 truncation_prime = 0;
  double product = 0;
  double tail_bound = 0;
};

DensityReport density_report(const GenusData& genus, i64 n, u64 truncation_prime = 100000);

struct MassCheck {
  Rational lhs;
  double rhs = 0;
  double residual = 0;
  double tail_bound = 0;
  bool lhs_zero = false;  // residual is then the absolute value |rhs|
};

// Weighted average of r*(n, .) over the genus against beta_inf * prod beta_p.
MassCheck mass_formula_check(const GenusData& genus, i64 n, u64 truncation_prime = 100000);

// r*(n, x^2+y^2+z^2) predicted from class numbers: (24/w) h(-4n) or
// (48/w) h(-n); 0 for n = 0,4,7 (mod 8).
i64 three_squares_class_number_count(i64 n);

struct MassIdentityRow {
  i64 n = 0;
  i64 r_q = 0;
  i64 r_q_partner = 0;
  i64 two_h = 0;
  bool equal() const { return r_q + 2 * r_q_partner == two_h; }
};

// r*(n, Q) + 2 r*(n, Q') against 2 h(-40n), gcd(n, 10) = 1.
MassIdentityRow ramanujan_mass_identity(i64 n);

}  // namespace tqf
