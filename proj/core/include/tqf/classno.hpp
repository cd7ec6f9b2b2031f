#pragma once

#include <compare>
#include <vector>

#include "tqf/arith.hpp"

namespace tqf {

// Positive definite binary form a x^2 + b x y + c y^2.
struct BinaryForm {
  i64 a = 0, b = 0, c = 0;

  i64 discriminant() const { return b * b - 4 * a * c; }
  bool is_reduced() const;
  bool is_primitive() const;

  friend auto operator<=>(const BinaryForm&, const BinaryForm&) = default;
};

// Proper (SL2) Gauss reduction of a positive definite form.
BinaryForm reduce(BinaryForm f);

// One reduced primitive representative per proper class, sorted by (a, b, c).
std::vector<BinaryForm> reduced_forms(const Discriminant& d);

// h(D), counting primitive classes only (orders included).
i64 class_number(const Discriminant& d);

// Number of proper automorphs of a form of discriminant D.
int unit_count(const Discriminant& d);

enum class L1Method { class_number, character_sum };

struct L1Value {
  double value = 0;
  double error_bound = 0;
};

// L(1, (D/.)) for fundamental D. Throws DomainError for non-fundamental D;
// use imprimitive_L1_correction to pass to the imprimitive value.
L1Value dirichlet_L1(const Discriminant& d, L1Method method);

}  // namespace tqf
