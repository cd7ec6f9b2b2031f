#include "tqf/siegel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "tqf/classno.hpp"
#include "tqf/errors.hpp"

namespace tqf {

namespace {

i64 mod(i64 a, i64 m) {
  const i64 r = a % m;
  return r < 0 ? r + m : r;
}

// Q(x) mod p^{j+1} is determined by x mod p^j once j >= 1, up to the linear
// term 2 p^j t^T G x. Returns the number of t mod p lifting x.
i64 lift_count(const TernaryForm& q, const Vec3& x, i64 n, i64 p, i64 pj) {
  const i128 value = static_cast<i128>(q(x)) - n;
  const i64 c = static_cast<i64>(mod(static_cast<i64>((value / pj) % p), p));
  const Mat3& g = q.gram();
  bool gradient_zero = true;
  for (int i = 0; i < 3; ++i) {
    i128 s = 0;
    for (int j = 0; j < 3; ++j) s += static_cast<i128>(g[i][j]) * x[j];
    if (mod(static_cast<i64>((2 * s) % p), p) != 0) gradient_zero = false;
  }
  if (!gradient_zero) return p * p;
  return c == 0 ? p * p * p : 0;
}

}  // namespace

std::string to_string(GenusLabel label) {
  return label == GenusLabel::three_squares ? "three-squares" : "ramanujan-ten";
}

GenusLabel parse_genus(std::string_view text) {
  if (text == "three-squares") return GenusLabel::three_squares;
  if (text == "ramanujan-ten") return GenusLabel::ramanujan_ten;
  throw DomainError("unknown genus '" + std::string(text) + "' (expected three-squares or ramanujan-ten)");
}

Rational GenusData::mass() const {
  Rational m = 0;
  for (const auto& c : classes) m += Rational(1, c.aut);
  return m;
}

GenusData make_genus(GenusLabel label) {
  GenusData g{label, {}};
  auto add = [&](TernaryForm f) { g.classes.push_back({f, automorph_count(f)}); };
  if (label == GenusLabel::three_squares) {
    add(forms::three_squares());
  } else {
    add(forms::ramanujan_ten());
    add(forms::ramanujan_ten_partner());
  }
  return g;
}

bool is_admissible(const GenusData& genus, i64 n) {
  if (n < 1) return false;
  if (genus.label == GenusLabel::three_squares) {
    const i64 r = n % 8;
    return r == 1 || r == 2 || r == 3 || r == 5 || r == 6;
  }
  return std::gcd(n, i64{10}) == 1;
}

i64 character_discriminant(const GenusData& genus, i64 n) {
  if (genus.label == GenusLabel::three_squares) return n % 8 == 3 ? -n : checked_mul(-4, n);
  return checked_mul(-40, n);
}

double beta_infinity(const GenusData& genus, i64 n) {
  return 2.0 * std::numbers::pi * std::sqrt(static_cast<double>(n) / static_cast<double>(genus.det()));
}

Rational beta_p_closed(const GenusData& genus, i64 n, i64 p) {
  if (!is_admissible(genus, n))
    throw DomainError("beta_p_closed: n = " + std::to_string(n) + " is outside the admissible classes for " +
                      to_string(genus.label));
  if (!is_prime(static_cast<u64>(p))) throw DomainError("beta_p_closed: p must be prime");
  const i64 d = character_discriminant(genus, n);
  const int chi = kronecker(d, p);
  const Rational euler = Rational(1) - Rational(chi, p);
  if (genus.label == GenusLabel::three_squares) {
    if (p == 2) return Rational(3, 2) / euler;
  } else {
    if (p == 2) return Rational(1);
    if (p == 5) return Rational(4, 5);
  }
  return (Rational(1) - Rational(1, p * p)) / euler;
}

int density_stable_level(const TernaryForm& q, i64 p) { return 1 + 2 * valuation(2 * q.det(), p); }

Rational beta_p_counting(const TernaryForm& q, i64 n, i64 p) {
  if (!is_prime(static_cast<u64>(p))) throw DomainError("beta_p_counting: p must be prime");
  const int k = density_stable_level(q, p);

  // Level 1 by exhaustion.
  std::vector<Vec3> sols;
  for (i64 x = 0; x < p; ++x)
    for (i64 y = 0; y < p; ++y)
      for (i64 z = 0; z < p; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        const Vec3 v{x, y, z};
        if (mod(q(v) - n, p) == 0) sols.push_back(v);
      }

  // Explicit lifting up to level k.
  i64 pj = p;
  for (int j = 1; j < k; ++j) {
    const i64 pj1 = checked_mul(pj, p);
    std::vector<Vec3> next;
    for (const Vec3& x : sols)
      for (i64 a = 0; a < p; ++a)
        for (i64 b = 0; b < p; ++b)
          for (i64 c = 0; c < p; ++c) {
            const Vec3 v{x[0] + a * pj, x[1] + b * pj, x[2] + c * pj};
            if (mod(q(v) - n, pj1) == 0) next.push_back(v);
          }
    sols = std::move(next);
    pj = pj1;
  }

  const i64 count_k = static_cast<i64>(sols.size());
  i64 count_next = 0;
  for (const Vec3& x : sols) count_next = checked_add(count_next, lift_count(q, x, n, p, pj));

  const i64 scale_k = checked_mul(pj, pj);
  const Rational at_k(count_k, scale_k);
  const Rational at_next(count_next, checked_mul(scale_k, p * p));
  if (at_k != at_next)
    throw IntegrityError("beta_p_counting: density not stable at p = " + std::to_string(p) + ", k = " +
                         std::to_string(k) + " (" + to_string(at_k) + " vs " + to_string(at_next) + ")");
  return at_k;
}

Rational imprimitive_L1_correction(i64 fundamental_disc, i64 conductor) {
  if (conductor < 1) throw DomainError("imprimitive_L1_correction: conductor must be >= 1");
  Rational r = 1;
  if (conductor == 1) return r;
  for (const auto& pp : factorize(conductor).factors) {
    const i64 p = static_cast<i64>(pp.prime);
    r *= Rational(1) - Rational(kronecker(fundamental_disc, p), p);
  }
  return r;
}

double dirichlet_L1_any(i64 d) {
  const Discriminant disc(d);
  const Discriminant fund(disc.fundamental_part());
  const double primitive = dirichlet_L1(fund, L1Method::character_sum).value;
  return primitive * boost::rational_cast<double>(imprimitive_L1_correction(fund.value(), disc.conductor()));
}

DensityReport density_report(const GenusData& genus, i64 n, u64 truncation_prime) {
  if (!is_admissible(genus, n))
    throw DomainError("density_report: n = " + std::to_string(n) + " is not admissible for " + to_string(genus.label));
  if (truncation_prime < 5) throw DomainError("density_report: truncation prime too small");
  DensityReport rep;
  rep.n = n;
  rep.beta_inf = beta_infinity(genus, n);
  rep.truncation_prime = truncation_prime;

  const i64 d = character_discriminant(genus, n);
  long double finite = 1, euler_inverse = 1;
  for (u64 up : primes_up_to(truncation_prime)) {
    const i64 p = static_cast<i64>(up);
    const Rational b = beta_p_closed(genus, n, p);
    if (p <= 50) rep.beta_p.emplace(p, b);
    finite *= static_cast<long double>(b.numerator()) / b.denominator();
    euler_inverse *= 1.0L - static_cast<long double>(kronecker(d, p)) / p;
  }
  // prod_{p > P} (1 - (D/p)/p)^{-1} = L(1, (D/.)) prod_{p <= P} (1 - (D/p)/p).
  // prod_{p > P} (1 - p^{-2}) lies in [1 - 1/P, 1] and is taken as 1.
  const long double chi_tail = static_cast<long double>(dirichlet_L1_any(d)) * euler_inverse;
  rep.product = static_cast<double>(rep.beta_inf * finite * chi_tail);
  rep.tail_bound = 1.0 / static_cast<double>(truncation_prime) + 1e-9;
  return rep;
}

MassCheck mass_formula_check(const GenusData& genus, i64 n, u64 truncation_prime) {
  Rational weighted = 0;
  for (const auto& c : genus.classes)
    weighted += Rational(static_cast<i64>(rep_count(c.form, n).count_primitive), c.aut);
  MassCheck mc;
  mc.lhs = weighted / genus.mass();
  const DensityReport rep = density_report(genus, n, truncation_prime);
  mc.rhs = rep.product;
  mc.tail_bound = rep.tail_bound;
  const double lhs = boost::rational_cast<double>(mc.lhs);
  mc.lhs_zero = mc.lhs.numerator() == 0;
  mc.residual = mc.lhs_zero ? std::fabs(mc.rhs) : std::fabs(lhs - mc.rhs) / lhs;
  return mc;
}

i64 three_squares_class_number_count(i64 n) {
  if (n < 1) throw DomainError("three_squares_class_number_count: n must be positive");
  const i64 r = n % 8;
  if (r == 0 || r == 4 || r == 7) return 0;
  if (r == 3) {
    const Discriminant d(-n);
    return 48 / unit_count(d) * class_number(d);
  }
  const Discriminant d(checked_mul(-4, n));
  return 24 / unit_count(d) * class_number(d);
}

MassIdentityRow ramanujan_mass_identity(i64 n) {
  if (n < 1 || std::gcd(n, i64{10}) != 1) throw DomainError("ramanujan_mass_identity: need gcd(n, 10) = 1");
  MassIdentityRow row;
  row.n = n;
  row.r_q = static_cast<i64>(rep_count(forms::ramanujan_ten(), n).count_primitive);
  row.r_q_partner = static_cast<i64>(rep_count(forms::ramanujan_ten_partner(), n).count_primitive);
  row.two_h = 2 * class_number(Discriminant(checked_mul(-40, n)));
  return row;
}

}  // namespace tqf
