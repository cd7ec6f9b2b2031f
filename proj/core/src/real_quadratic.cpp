#include "tqf/real_quadratic.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>

#include "tqf/errors.hpp"

namespace tqf {

RealQuadraticRing::RealQuadraticRing(i64 m) : m_(m) {
  if (m < 2 || !is_squarefree(static_cast<u64>(m)))
    throw DomainError("real quadratic ring: m must be squarefree and >= 2");
  if (m % 4 != 2 && m % 4 != 3) throw DomainError("real quadratic ring: only m = 2,3 (mod 4) is supported");
}

RingElement RealQuadraticRing::add(const RingElement& x, const RingElement& y) const {
  return {checked_add(x.a, y.a), checked_add(x.b, y.b)};
}

RingElement RealQuadraticRing::sub(const RingElement& x, const RingElement& y) const {
  return {checked_add(x.a, -y.a), checked_add(x.b, -y.b)};
}

RingElement RealQuadraticRing::mul(const RingElement& x, const RingElement& y) const {
  return {checked_add(checked_mul(x.a, y.a), checked_mul(m_, checked_mul(x.b, y.b))),
          checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a))};
}

i64 RealQuadraticRing::norm(const RingElement& x) const {
  return checked_add(checked_mul(x.a, x.a), -checked_mul(m_, checked_mul(x.b, x.b)));
}

int RealQuadraticRing::sign_first(const RingElement& x) const {
  if (x.a >= 0 && x.b >= 0) return (x.a == 0 && x.b == 0) ? 0 : 1;
  if (x.a <= 0 && x.b <= 0) return -1;
  // Mixed signs: compare a^2 with m b^2.
  const i128 lhs = static_cast<i128>(x.a) * x.a;
  const i128 rhs = static_cast<i128>(m_) * x.b * x.b;
  const int mag = lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
  return x.a > 0 ? mag : -mag;
}

bool RealQuadraticRing::is_totally_positive(const RingElement& x) const {
  return sign_first(x) > 0 && sign_second(x) > 0;
}

bool RealQuadraticRing::is_totally_nonnegative(const RingElement& x) const {
  return sign_first(x) >= 0 && sign_second(x) >= 0;
}

double RealQuadraticRing::embed_first(const RingElement& x) const {
  return static_cast<double>(x.a) + static_cast<double>(x.b) * std::sqrt(static_cast<double>(m_));
}

i64 RealQuadraticRing::ideal_index(const std::vector<RingElement>& gens) const {
  // The ideal is the Z-span of x and x sqrt(m) over the generators.
  std::vector<std::array<i64, 2>> vecs;
  for (const auto& x : gens) {
    vecs.push_back({x.a, x.b});
    vecs.push_back({checked_mul(m_, x.b), x.a});
  }
  i64 g = 0;
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = i + 1; j < vecs.size(); ++j) {
      const i64 minor = checked_add(checked_mul(vecs[i][0], vecs[j][1]), -checked_mul(vecs[i][1], vecs[j][0]));
      g = std::gcd(g, std::llabs(minor));
    }
  return g;
}

std::vector<RingElement> RealQuadraticRing::elements_below(const RingElement& n) const {
  std::vector<RingElement> out;
  if (!is_totally_nonnegative(n)) return out;
  const double r1 = std::sqrt(std::max(0.0, embed_first(n)));
  const double r2 = std::sqrt(std::max(0.0, embed_second(n)));
  const i64 amax = static_cast<i64>((r1 + r2) / 2) + 2;
  const i64 bmax = static_cast<i64>((r1 + r2) / (2 * std::sqrt(static_cast<double>(m_)))) + 2;
  for (i64 a = -amax; a <= amax; ++a)
    for (i64 b = -bmax; b <= bmax; ++b) {
      const RingElement x{a, b};
      if (is_totally_nonnegative(sub(n, mul(x, x)))) out.push_back(x);
    }
  return out;
}

RepResult rep_count_real_quadratic(const RealQuadraticRing& ring, const RingElement& n) {
  if (!ring.is_totally_positive(n)) throw DomainError("rep_count_real_quadratic: n must be totally positive");
  const auto cands = ring.elements_below(n);
  std::map<RingElement, std::vector<RingElement>> roots;
  std::vector<RingElement> squares;
  squares.reserve(cands.size());
  for (const auto& x : cands) {
    const RingElement sq = ring.mul(x, x);
    squares.push_back(sq);
    roots[sq].push_back(x);
  }
  RepResult r;
  r.n = n.b == 0 ? n.a : 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const RingElement rest = ring.sub(n, squares[i]);
    for (std::size_t j = 0; j < cands.size(); ++j) {
      const RingElement rem = ring.sub(rest, squares[j]);
      if (!ring.is_totally_nonnegative(rem)) continue;
      const auto it = roots.find(rem);
      if (it == roots.end()) continue;
      for (const auto& z : it->second) {
        ++r.count_all;
        if (ring.ideal_index({cands[i], cands[j], z}) == 1) ++r.count_primitive;
      }
    }
  }
  return r;
}

}  // namespace tqf
