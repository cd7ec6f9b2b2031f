#include "tqf/ternary.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "tqf/errors.hpp"

namespace tqf {

namespace {

i128 mul(i128 a, i128 b) {
  i128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw RangeError("enumeration bound exceeds the 128-bit envelope");
  return out;
}

i128 add(i128 a, i128 b) {
  i128 out;
  if (__builtin_add_overflow(a, b, &out)) throw RangeError("enumeration bound exceeds the 128-bit envelope");
  return out;
}

// floor(sqrt(v)) for 0 <= v < 2^126; -1 for v < 0.
i64 isqrt128(i128 v) {
  if (v < 0) return -1;
  if (v >= (static_cast<i128>(1) << 126)) throw RangeError("enumeration bound exceeds the 64-bit envelope");
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return static_cast<i64>(r);
}

i64 floor_div(i128 a, i128 b) {
  // b > 0
  i128 q = a / b;
  if (a % b != 0 && a < 0) --q;
  return static_cast<i64>(q);
}

}  // namespace

i64 det3(const Mat3& m) {
  const i128 d = static_cast<i128>(m[0][0]) * (static_cast<i128>(m[1][1]) * m[2][2] - static_cast<i128>(m[1][2]) * m[2][1]) -
                 static_cast<i128>(m[0][1]) * (static_cast<i128>(m[1][0]) * m[2][2] - static_cast<i128>(m[1][2]) * m[2][0]) +
                 static_cast<i128>(m[0][2]) * (static_cast<i128>(m[1][0]) * m[2][1] - static_cast<i128>(m[1][1]) * m[2][0]);
  if (d > std::numeric_limits<i64>::max() || d < std::numeric_limits<i64>::min())
    throw RangeError("determinant overflow");
  return static_cast<i64>(d);
}

TernaryForm TernaryForm::from_gram(const Mat3& g) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (g[i][j] != g[j][i]) throw DomainError("Gram matrix is not symmetric");
  const i64 m1 = g[0][0];
  const i64 m2 = checked_add(checked_mul(g[0][0], g[1][1]), -checked_mul(g[0][1], g[1][0]));
  const i64 m3 = det3(g);
  if (m1 <= 0 || m2 <= 0 || m3 <= 0) throw DomainError("ternary form is not positive definite");
  return TernaryForm(g, m3);
}

TernaryForm TernaryForm::from_coefficients(i64 a, i64 b, i64 c, i64 yz_coef, i64 xz_coef, i64 xy_coef) {
  if (yz_coef % 2 || xz_coef % 2 || xy_coef % 2)
    throw DomainError("cross coefficients must be even (half-integral Gram entries are not supported)");
  return from_gram(Mat3{{{a, xy_coef / 2, xz_coef / 2}, {xy_coef / 2, b, yz_coef / 2}, {xz_coef / 2, yz_coef / 2, c}}});
}

i64 TernaryForm::bilinear(const Vec3& u, const Vec3& v) const {
  i128 s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += static_cast<i128>(u[i]) * g_[i][j] * v[j];
  if (s > std::numeric_limits<i64>::max() || s < std::numeric_limits<i64>::min())
    throw RangeError("form value overflow");
  return static_cast<i64>(s);
}

i64 TernaryForm::operator()(const Vec3& v) const { return bilinear(v, v); }

TernaryForm TernaryForm::transformed(const Mat3& u) const {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Vec3 ui{u[0][i], u[1][i], u[2][i]};
      const Vec3 uj{u[0][j], u[1][j], u[2][j]};
      out[i][j] = bilinear(ui, uj);
    }
  return from_gram(out);
}

std::string TernaryForm::to_string() const {
  std::ostringstream os;
  os << "[[" << g_[0][0] << "," << g_[0][1] << "," << g_[0][2] << "],[" << g_[1][0] << "," << g_[1][1] << ","
     << g_[1][2] << "],[" << g_[2][0] << "," << g_[2][1] << "," << g_[2][2] << "]]";
  return os.str();
}

void for_each_representation(const TernaryForm& q, i64 n, const std::function<void(const Vec3&)>& visit) {
  if (n < 0) return;
  const Mat3& g = q.gram();
  const i128 g11 = g[0][0], g22 = g[1][1], g33 = g[2][2];
  const i128 g12 = g[0][1], g13 = g[0][2], g23 = g[1][2];
  const i128 det = q.det();
  const i128 adj33 = g11 * g22 - g12 * g12;  // > 0
  const i128 nn = n;

  // min over (x, y) of Q(x, y, z) is z^2 det / adj33.
  const i128 layer_bound = mul(nn, adj33);
  const i64 zmax = isqrt128(layer_bound / det) + 1;
  const i128 b_coef = mul(g12, g13) - mul(g11, g23);
  const i128 c_coef = mul(g13, g13) - mul(g11, g33);
  const i128 c_const = mul(g11, nn);
  for (i64 z = -zmax; z <= zmax; ++z) {
    const i128 zz = z;
    if (mul(zz * zz, det) > layer_bound) continue;
    // Quarter-discriminant of the quadratic in x, as a quadratic in y:
    // delta(y) = -adj33 y^2 + 2 B y + C.
    const i128 B = mul(zz, b_coef);
    const i128 C = add(mul(zz * zz, c_coef), c_const);
    const i128 disc = add(mul(B, B), mul(adj33, C));
    if (disc < 0) continue;
    const i64 s = isqrt128(disc);
    const i64 ylo = floor_div(B - s, adj33) - 1;
    const i64 yhi = floor_div(B + s, adj33) + 2;
    for (i64 y = ylo; y <= yhi; ++y) {
      const i128 yy = y;
      const i128 delta = add(add(-mul(adj33, mul(yy, yy)), mul(2 * B, yy)), C);
      if (delta < 0) continue;
      const i64 r = isqrt128(delta);
      if (static_cast<i128>(r) * r != delta) continue;
      const i128 lin = g12 * yy + g13 * zz;
      for (int sign : {-1, 1}) {
        if (sign == 1 && r == 0) break;
        const i128 num = -lin + sign * static_cast<i128>(r);
        if (num % g11 != 0) continue;
        const Vec3 v{static_cast<i64>(num / g11), y, z};
        visit(v);
      }
    }
  }
}

std::vector<Vec3> representations(const TernaryForm& q, i64 n) {
  std::vector<Vec3> out;
  for_each_representation(q, n, [&](const Vec3& v) { out.push_back(v); });
  return out;
}

RepResult rep_count(const TernaryForm& q, i64 n) {
  if (n < 1) throw DomainError("rep_count: n must be positive");
  RepResult r;
  r.n = n;
  for_each_representation(q, n, [&](const Vec3& v) {
    ++r.count_all;
    if (std::gcd(std::gcd(v[0], v[1]), v[2]) == 1) ++r.count_primitive;
  });
  return r;
}

i64 automorph_count(const TernaryForm& q) {
  const Mat3& g = q.gram();
  std::array<std::vector<Vec3>, 3> columns;
  for (int i = 0; i < 3; ++i) columns[i] = representations(q, g[i][i]);
  i64 count = 0;
  for (const Vec3& u : columns[0]) {
    for (const Vec3& v : columns[1]) {
      if (q.bilinear(u, v) != g[0][1]) continue;
      for (const Vec3& w : columns[2]) {
        if (q.bilinear(u, w) != g[0][2] || q.bilinear(v, w) != g[1][2]) continue;
        const Mat3 m{{{u[0], v[0], w[0]}, {u[1], v[1], w[1]}, {u[2], v[2], w[2]}}};
        if (det3(m) == 1) ++count;
      }
    }
  }
  return count;
}

namespace forms {
TernaryForm three_squares() { return TernaryForm::from_coefficients(1, 1, 1, 0, 0, 0); }
TernaryForm ramanujan_ten() { return TernaryForm::from_coefficients(1, 1, 10, 0, 0, 0); }
TernaryForm ramanujan_ten_partner() { return TernaryForm::from_coefficients(2, 2, 3, 0, -2, 0); }
TernaryForm spinor_first() { return TernaryForm::from_coefficients(1, 3, 36, 0, 0, 0); }
TernaryForm spinor_second() { return TernaryForm::from_coefficients(3, 4, 9, 0, 0, 0); }
}  // namespace forms

}  // namespace tqf
