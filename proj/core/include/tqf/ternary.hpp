#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "tqf/arith.hpp"

namespace tqf {

using Vec3 = std::array<i64, 3>;
using Mat3 = std::array<std::array<i64, 3>, 3>;

// Positive definite ternary form Q(x) = x^T G x with integer symmetric Gram
// matrix G. The classical "even diagonal" matrix of the same form is 2G, so
// its determinant is 8 det(G). Every determinant in this library is det(G)
// unless stated otherwise.
class TernaryForm {
 public:
  // Throws DomainError unless g is symmetric and positive definite.
  static TernaryForm from_gram(const Mat3& g);

  // a x^2 + b y^2 + c z^2 + yz_coef yz + xz_coef xz + xy_coef xy. Cross
  // coefficients must be even (integral Gram matrix).
  static TernaryForm from_coefficients(i64 a, i64 b, i64 c, i64 yz_coef, i64 xz_coef, i64 xy_coef);

  const Mat3& gram() const { return g_; }
  i64 det() const { return det_; }
  // Determinant of the even-diagonal matrix 2G.
  i64 det_even_matrix() const { return 8 * det_; }

  i64 operator()(const Vec3& v) const;
  i64 bilinear(const Vec3& u, const Vec3& v) const;

  // x^T G x with G replaced by U^T G U.
  TernaryForm transformed(const Mat3& u) const;

  std::string to_string() const;

  friend bool operator==(const TernaryForm& a, const TernaryForm& b) { return a.g_ == b.g_; }

 private:
  explicit TernaryForm(const Mat3& g, i64 det) : g_(g), det_(det) {}
  Mat3 g_;
  i64 det_;
};

i64 det3(const Mat3& m);

struct RepResult {
  i64 n = 0;
  u64 count_all = 0;
  u64 count_primitive = 0;
};

// Calls visit(v) for every v in Z^3 with Q(v) = n. Exact integer bounds per
// layer; throws RangeError when the search box leaves the 64-bit envelope.
void for_each_representation(const TernaryForm& q, i64 n, const std::function<void(const Vec3&)>& visit);

std::vector<Vec3> representations(const TernaryForm& q, i64 n);

// r(n, Q) and r*(n, Q). n >= 1.
RepResult rep_count(const TernaryForm& q, i64 n);

// Number of U in SL3(Z) with U^T G U = G.
i64 automorph_count(const TernaryForm& q);

namespace forms {
TernaryForm three_squares();         // x^2 + y^2 + z^2
TernaryForm ramanujan_ten();         // x^2 + y^2 + 10 z^2
TernaryForm ramanujan_ten_partner(); // 2x^2 + 2y^2 + 3z^2 - 2xz
TernaryForm spinor_first();          // x^2 + 3y^2 + 36z^2
TernaryForm spinor_second();         // 3x^2 + 4y^2 + 9z^2
}  // namespace forms

}  // namespace tqf
