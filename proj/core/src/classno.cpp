#include "tqf/classno.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <boost/math/special_functions/digamma.hpp>

#include "tqf/errors.hpp"

namespace tqf {

bool BinaryForm::is_reduced() const {
  const i64 ab = b < 0 ? -b : b;
  if (!(ab <= a && a <= c)) return false;
  if ((ab == a || a == c) && b < 0) return false;
  return true;
}

bool BinaryForm::is_primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }

BinaryForm reduce(BinaryForm f) {
  if (f.a <= 0 || f.discriminant() >= 0) throw DomainError("reduce: form is not positive definite");
  for (;;) {
    // Translate b into (-a, a].
    const i64 two_a = 2 * f.a;
    i64 k = (f.a - f.b) / two_a;
    if (f.a - f.b < 0 && (f.a - f.b) % two_a != 0) --k;
    // x -> x + k y
    f.c = f.a * k * k + f.b * k + f.c;
    f.b = f.b + two_a * k;
    if (f.a > f.c) {
      // (x, y) -> (-y, x)
      std::swap(f.a, f.c);
      f.b = -f.b;
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    if (f.b == -f.a) f.b = f.a;
    return f;
  }
}

std::vector<BinaryForm> reduced_forms(const Discriminant& d) {
  const i64 D = d.value();
  const i64 absd = -D;
  std::vector<BinaryForm> out;
  // a <= sqrt(|D|/3)
  for (i64 a = 1; 3 * a * a <= absd; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      const i64 num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const i64 c = num / (4 * a);
      if (c < a) continue;
      const BinaryForm f{a, b, c};
      if (!f.is_reduced() || !f.is_primitive()) continue;
      out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

i64 class_number(const Discriminant& d) { return static_cast<i64>(reduced_forms(d).size()); }

int unit_count(const Discriminant& d) {
  if (d.value() == -3) return 6;
  if (d.value() == -4) return 4;
  return 2;
}

L1Value dirichlet_L1(const Discriminant& d, L1Method method) {
  if (!d.is_fundamental())
    throw DomainError("dirichlet_L1: discriminant " + std::to_string(d.value()) +
                      " is not fundamental; apply imprimitive_L1_correction to the fundamental part");
  const double k = static_cast<double>(d.abs());
  if (method == L1Method::class_number) {
    const double h = static_cast<double>(class_number(d));
    const double w = unit_count(d);
    const double v = 2.0 * std::numbers::pi * h / (w * std::sqrt(k));
    return {v, 4.0 * std::numeric_limits<double>::epsilon() * v};
  }
  // L(1, chi) = -(1/k) sum_{a=1}^{k} chi(a) psi(a/k) for a primitive character mod k.
  const i64 D = d.value();
  const i64 mod = static_cast<i64>(d.abs());
  long double acc = 0, mag = 0;
  for (i64 a = 1; a < mod; ++a) {
    const int chi = kronecker(D, a);
    if (chi == 0) continue;
    const long double psi = boost::math::digamma(static_cast<long double>(a) / mod);
    acc += chi * psi;
    mag += std::fabs(psi);
  }
  const double value = static_cast<double>(-acc / mod);
  const double err = static_cast<double>(64.0L * std::numeric_limits<long double>::epsilon() * mag / mod) +
                     4.0 * std::numeric_limits<double>::epsilon() * std::fabs(value);
  return {value, err};
}

}  // namespace tqf
