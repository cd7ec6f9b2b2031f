#pragma once

#include <optional>
#include <vector>

#include "tqf/arith.hpp"

namespace tqf {

// Coefficients a(1..N) of a weight-2 cusp form in arithmetic normalization.
class NewformSeries {
 public:
  // Takes a(0..N); a[0] is ignored.
  explicit NewformSeries(std::vector<i64> coefficients);

  i64 n_max() const { return static_cast<i64>(a_.size()) - 1; }
  // Throws RangeError for n outside [1, n_max].
  i64 operator[](i64 n) const;
  const std::vector<i64>& coefficients() const { return a_; }

 private:
  std::vector<i64> a_;
};

// q prod_{n>=1} (1 - q^{2n})^2 (1 - q^{10n})^2, coefficients 0..n_max.
std::vector<i64> eta_quotient_20(i64 n_max);

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct WeierstrassCurve {
  i64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

  i64 discriminant() const;
  i64 c4() const;
};

// p + 1 - #E(F_p), counting every projective point of the (possibly
// singular) reduction. At primes of bad reduction this gives 1, -1 or 0
// for split, non-split and additive reduction.
i64 trace_of_frobenius(const WeierstrassCurve& e, i64 p);

// Curves with small coefficients, bad reduction exactly at {2, 5},
// additive at 2 and multiplicative at 5 (the local shape of level 20).
std::vector<WeierstrassCurve> level20_curve_candidates(i64 coefficient_bound = 10);

struct CurveAgreement {
  WeierstrassCurve curve;
  i64 primes_checked = 0;
};

// Compares a(p) with point counts for all p <= p_max against every
// candidate curve. Returns the first curve agreeing at every prime; throws
// IntegrityError when none does.
CurveAgreement validate_against_curves(const NewformSeries& f, i64 p_max = 100);

// The weight-2 level-20 newform from the eta quotient, cross-checked
// against elliptic-curve point counts for p <= 100. n_max <= 10^7.
NewformSeries newform20(i64 n_max);

}  // namespace tqf
