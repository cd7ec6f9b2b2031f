#include "tqf/newform.hpp"

#include <cstdlib>
#include <string>
#include <utility>

#include "tqf/errors.hpp"

namespace tqf {

namespace {

// prod (1 - t^n) = sum_k (-1)^k t^{k(3k-1)/2}, k over all integers.
std::vector<std::pair<i64, int>> euler_product_terms(i64 limit, i64 stride) {
  std::vector<std::pair<i64, int>> out;
  out.emplace_back(0, 1);
  for (i64 k = 1;; ++k) {
    const i64 e1 = k * (3 * k - 1) / 2 * stride;
    const i64 e2 = k * (3 * k + 1) / 2 * stride;
    if (e1 > limit) break;
    const int sign = (k % 2) ? -1 : 1;
    out.emplace_back(e1, sign);
    if (e2 <= limit) out.emplace_back(e2, sign);
  }
  return out;
}

void multiply_sparse(std::vector<i64>& dense, const std::vector<std::pair<i64, int>>& sparse) {
  const std::vector<i64> old = dense;
  const std::size_t len = dense.size();
  // sparse[0] is the constant term 1.
  for (std::size_t s = 1; s < sparse.size(); ++s) {
    const std::size_t e = static_cast<std::size_t>(sparse[s].first);
    const i64 sign = sparse[s].second;
    i64* out = dense.data() + e;
    const i64* in = old.data();
    for (std::size_t i = 0; i + e < len; ++i) out[i] += sign * in[i];
  }
}

int legendre(i64 a, i64 p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  return kronecker(a, p);
}

i64 mod(i64 a, i64 m) {
  const i64 r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

NewformSeries::NewformSeries(std::vector<i64> coefficients) : a_(std::move(coefficients)) {
  if (a_.size() < 2) throw DomainError("NewformSeries needs at least a(1)");
}

i64 NewformSeries::operator[](i64 n) const {
  if (n < 1 || n > n_max())
    throw RangeError("coefficient index " + std::to_string(n) + " outside [1, " + std::to_string(n_max()) + "]");
  return a_[static_cast<std::size_t>(n)];
}

std::vector<i64> eta_quotient_20(i64 n_max) {
  if (n_max < 1) throw DomainError("eta_quotient_20: n_max must be positive");
  // f(q) = q F(q^2) with F(t) = prod (1 - t^n)^2 (1 - t^{5n})^2.
  const i64 m = (n_max - 1) / 2;
  std::vector<i64> series(static_cast<std::size_t>(m + 1), 0);
  series[0] = 1;
  const auto e1 = euler_product_terms(m, 1);
  const auto e5 = euler_product_terms(m, 5);
  multiply_sparse(series, e1);
  multiply_sparse(series, e1);
  multiply_sparse(series, e5);
  multiply_sparse(series, e5);
  std::vector<i64> a(static_cast<std::size_t>(n_max + 1), 0);
  for (i64 j = 0; j <= m; ++j) a[static_cast<std::size_t>(2 * j + 1)] = series[static_cast<std::size_t>(j)];
  return a;
}

i64 WeierstrassCurve::discriminant() const {
  const i128 b2 = static_cast<i128>(a1) * a1 + 4 * a2;
  const i128 b4 = 2 * static_cast<i128>(a4) + static_cast<i128>(a1) * a3;
  const i128 b6 = static_cast<i128>(a3) * a3 + 4 * static_cast<i128>(a6);
  const i128 b8 = static_cast<i128>(a1) * a1 * a6 + 4 * static_cast<i128>(a2) * a6 -
                  static_cast<i128>(a1) * a3 * a4 + static_cast<i128>(a2) * a3 * a3 - static_cast<i128>(a4) * a4;
  const i128 d = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  return static_cast<i64>(d);
}

i64 WeierstrassCurve::c4() const {
  const i64 b2 = a1 * a1 + 4 * a2;
  const i64 b4 = 2 * a4 + a1 * a3;
  return b2 * b2 - 24 * b4;
}

i64 trace_of_frobenius(const WeierstrassCurve& e, i64 p) {
  i64 points = 1;  // point at infinity
  for (i64 x = 0; x < p; ++x) {
    const i64 rhs = mod(mod(mod(x * x, p) * x, p) + mod(e.a2 * mod(x * x, p), p) + mod(e.a4 * x, p) + e.a6, p);
    const i64 lin = mod(e.a1 * x + e.a3, p);
    if (p == 2) {
      for (i64 y = 0; y < 2; ++y)
        if (mod(y * y + lin * y - rhs, 2) == 0) ++points;
    } else {
      // (2y + lin)^2 = 4 rhs + lin^2
      points += 1 + legendre(4 * rhs + lin * lin, p);
    }
  }
  return p + 1 - points;
}

std::vector<WeierstrassCurve> level20_curve_candidates(i64 bound) {
  std::vector<WeierstrassCurve> out;
  for (i64 a1 = 0; a1 <= 1; ++a1)
    for (i64 a3 = 0; a3 <= 1; ++a3)
      for (i64 a2 = -1; a2 <= 1; ++a2)
        for (i64 a4 = -bound; a4 <= bound; ++a4)
          for (i64 a6 = -bound; a6 <= bound; ++a6) {
            const WeierstrassCurve e{a1, a2, a3, a4, a6};
            i64 d = e.discriminant();
            if (d == 0) continue;
            d = std::llabs(d);
            bool has2 = false, has5 = false;
            while (d % 2 == 0) d /= 2, has2 = true;
            while (d % 5 == 0) d /= 5, has5 = true;
            if (d != 1 || !has2 || !has5) continue;
            if (e.c4() % 5 == 0) continue;  // multiplicative at 5
            if (trace_of_frobenius(e, 2) != 0) continue;
            const i64 t5 = trace_of_frobenius(e, 5);
            if (t5 != 1 && t5 != -1) continue;
            out.push_back(e);
          }
  return out;
}

CurveAgreement validate_against_curves(const NewformSeries& f, i64 p_max) {
  if (f.n_max() < p_max) throw RangeError("validate_against_curves: series shorter than p_max");
  const auto primes = primes_up_to(static_cast<u64>(p_max));
  for (const auto& e : level20_curve_candidates()) {
    bool agree = true;
    for (u64 p : primes) {
      if (trace_of_frobenius(e, static_cast<i64>(p)) != f[static_cast<i64>(p)]) {
        agree = false;
        break;
      }
    }
    if (agree) return {e, static_cast<i64>(primes.size())};
  }
  throw IntegrityError("newform coefficients disagree with every level-20 curve candidate for some p <= " +
                       std::to_string(p_max));
}

NewformSeries newform20(i64 n_max) {
  if (n_max < 100 || n_max > 10'000'000) throw RangeError("newform20: n_max must lie in [100, 10^7]");
  NewformSeries f(eta_quotient_20(n_max));
  validate_against_curves(f, 100);
  return f;
}

}  // namespace tqf
