#pragma once

#include <compare>
#include <vector>

#include "tqf/arith.hpp"
#include "tqf/ternary.hpp"

namespace tqf {

// a + b sqrt(m)
struct RingElement {
  i64 a = 0;
  i64 b = 0;
  friend auto operator<=>(const RingElement&, const RingElement&) = default;
};

// Z[sqrt(m)] for squarefree m >= 2, m = 2,3 (mod 4), i.e. the full ring of
// integers of Q(sqrt(m)). Signs of both real embeddings are decided exactly.
class RealQuadraticRing {
 public:
  // Throws DomainError for unsupported m.
  explicit RealQuadraticRing(i64 m);

  i64 m() const { return m_; }

  RingElement add(const RingElement& x, const RingElement& y) const;
  RingElement sub(const RingElement& x, const RingElement& y) const;
  RingElement mul(const RingElement& x, const RingElement& y) const;
  RingElement conjugate(const RingElement& x) const { return {x.a, -x.b}; }
  i64 norm(const RingElement& x) const;

  // Sign of the embedding a + b sqrt(m) (first) or a - b sqrt(m) (second).
  int sign_first(const RingElement& x) const;
  int sign_second(const RingElement& x) const { return sign_first(conjugate(x)); }
  bool is_totally_positive(const RingElement& x) const;
  bool is_totally_nonnegative(const RingElement& x) const;

  double embed_first(const RingElement& x) const;
  double embed_second(const RingElement& x) const { return embed_first(conjugate(x)); }

  // Index of the ideal generated by the given elements (1 iff it is the unit ideal).
  i64 ideal_index(const std::vector<RingElement>& gens) const;

  // Every x with sigma_i(x)^2 <= sigma_i(n) for both embeddings.
  std::vector<RingElement> elements_below(const RingElement& n) const;

 private:
  i64 m_;
};

// Representations of n as x^2 + y^2 + z^2 with x, y, z in the ring. Primitive
// means (x, y, z) generate the unit ideal. Throws DomainError unless n is
// totally positive.
RepResult rep_count_real_quadratic(const RealQuadraticRing& ring, const RingElement& n);

}  // namespace tqf
