#include "tqf/amplify.hpp"

#include <cmath>
#include <numbers>

#include "tqf/errors.hpp"

namespace tqf {

namespace {

std::vector<i64> poly_divide_exact(std::vector<i64> num, const std::vector<i64>& den) {
  // den monic, division exact
  const i64 dn = static_cast<i64>(den.size()) - 1;
  const i64 top = static_cast<i64>(num.size()) - 1;
  std::vector<i64> quot(static_cast<std::size_t>(top - dn + 1), 0);
  for (i64 i = top; i >= dn; --i) {
    const i64 c = num[static_cast<std::size_t>(i)];
    quot[static_cast<std::size_t>(i - dn)] = c;
    for (i64 k = 0; k <= dn; ++k) num[static_cast<std::size_t>(i - dn + k)] -= c * den[static_cast<std::size_t>(k)];
  }
  return quot;
}

std::vector<i64> poly_remainder(std::vector<i64> num, const std::vector<i64>& den) {
  const std::size_t dn = den.size() - 1;
  for (std::size_t i = num.size(); i-- > dn;) {
    const i64 c = num[i];
    if (c == 0) continue;
    for (std::size_t k = 0; k <= dn; ++k) num[i - dn + k] -= c * den[k];
  }
  num.resize(dn);
  return num;
}

i64 least_primitive_root(i64 q) {
  if (q == 2) return 1;
  const auto fac = factorize(q - 1);
  for (i64 g = 2; g < q; ++g) {
    bool ok = true;
    for (const auto& pp : fac.factors) {
      const i64 e = (q - 1) / static_cast<i64>(pp.prime);
      i64 r = 1, b = g, k = e;
      while (k) {
        if (k & 1) r = r * b % q;
        b = b * b % q;
        k >>= 1;
      }
      if (r == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw IntegrityError("no primitive root found");
}

double smoothstep7(double t) {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  return t * t * t * t * (35 - 84 * t + 70 * t * t - 20 * t * t * t);
}

// b[a] = sum_{r = a mod q} a(r) W(r) / r over the support.
std::vector<double> residue_buckets(const NewformSeries& f, i64 q, const SmoothWeight& w) {
  std::vector<double> b(static_cast<std::size_t>(q), 0.0);
  if (w.lower() <= 0) return b;
  const i64 hi = static_cast<i64>(std::floor(w.upper()));
  if (hi > f.n_max()) throw RangeError("weight support exceeds the coefficient range");
  for (i64 r = static_cast<i64>(std::ceil(w.lower())); r <= hi; ++r) {
    const double wr = w(static_cast<double>(r));
    if (wr == 0) continue;
    b[static_cast<std::size_t>(r % q)] += static_cast<double>(f[r]) * wr / static_cast<double>(r);
  }
  return b;
}

std::vector<Complex> all_l_xi(const NewformSeries& f, const CharacterTable& t, const SmoothWeight& w) {
  const auto b = residue_buckets(f, t.modulus(), w);
  std::vector<Complex> out(static_cast<std::size_t>(t.order()));
  for (i64 j = 0; j < t.order(); ++j) {
    Complex acc = 0;
    for (i64 a = 1; a < t.modulus(); ++a) acc += t.value(j, a) * b[static_cast<std::size_t>(a)];
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

}  // namespace

std::vector<i64> cyclotomic_polynomial(i64 m) {
  if (m < 1) throw DomainError("cyclotomic_polynomial: m must be positive");
  std::vector<i64> num(static_cast<std::size_t>(m + 1), 0);
  num[0] = -1;
  num[static_cast<std::size_t>(m)] = 1;
  for (i64 d = 1; d < m; ++d)
    if (m % d == 0) num = poly_divide_exact(num, cyclotomic_polynomial(d));
  return num;
}

CharacterTable::CharacterTable(i64 q) : q_(q) {
  if (q < 2 || !is_prime(static_cast<u64>(q))) throw DomainError("CharacterTable: modulus must be prime");
  g_ = least_primitive_root(q);
  log_.assign(static_cast<std::size_t>(q), -1);
  i64 x = 1;
  for (i64 k = 0; k < q - 1; ++k) {
    log_[static_cast<std::size_t>(x)] = k;
    x = x * g_ % q;
  }
  const i64 m = q - 1;
  roots_.resize(static_cast<std::size_t>(m));
  for (i64 e = 0; e < m; ++e)
    roots_[static_cast<std::size_t>(e)] = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(e) / m);
}

i64 CharacterTable::log(i64 a) const {
  a %= q_;
  if (a < 0) a += q_;
  return log_[static_cast<std::size_t>(a)];
}

i64 CharacterTable::exponent(i64 j, i64 a) const {
  const i64 l = log(a);
  if (l < 0) return -1;
  return (j % order()) * l % order();
}

Complex CharacterTable::value(i64 j, i64 a) const {
  const i64 e = exponent(j, a);
  return e < 0 ? Complex(0) : roots_[static_cast<std::size_t>(e)];
}

std::vector<i64> CharacterTable::inner_product_exact(i64 i, i64 j) const {
  const i64 m = order();
  std::vector<i64> counts(static_cast<std::size_t>(m), 0);
  for (i64 a = 1; a < q_; ++a) {
    // xi_i(a) conj(xi_j(a)) = zeta^{e_i - e_j}
    const i64 e = ((exponent(i, a) - exponent(j, a)) % m + m) % m;
    ++counts[static_cast<std::size_t>(e)];
  }
  return poly_remainder(counts, cyclotomic_polynomial(m));
}

SmoothWeight::SmoothWeight(double x) : x_(x) {
  if (x < 0) throw DomainError("SmoothWeight: x must be non-negative");
}

double SmoothWeight::operator()(double r) const {
  if (x_ <= 0 || r <= x_ || r >= 4 * x_) return 0;
  if (r < 2 * x_) return smoothstep7((r - x_) / x_);
  if (r <= 3 * x_) return 1;
  return smoothstep7((4 * x_ - r) / x_);
}

AmplifierSpec make_amplifier(double length, i64 q) {
  if (length <= 1) throw DomainError("make_amplifier: L must exceed 1");
  AmplifierSpec amp;
  amp.length = length;
  for (i64 l = static_cast<i64>(std::ceil(length)); l <= static_cast<i64>(std::floor(2 * length)); ++l)
    if (is_prime(static_cast<u64>(l)) && l % q != 0) amp.primes.push_back(l);
  return amp;
}

Complex l_xi(const NewformSeries& f, const CharacterTable& table, i64 j, const SmoothWeight& w) {
  std::vector<Complex> xi(static_cast<std::size_t>(table.modulus()));
  for (i64 a = 0; a < table.modulus(); ++a) xi[static_cast<std::size_t>(a)] = table.value(j, a);
  return l_weighted(f, w, xi);
}

Complex l_weighted(const NewformSeries& f, const SmoothWeight& w, const std::vector<Complex>& xi_by_residue) {
  const i64 q = static_cast<i64>(xi_by_residue.size());
  if (q < 1) throw DomainError("l_weighted: empty character");
  if (w.lower() <= 0) return 0;
  const i64 hi = static_cast<i64>(std::floor(w.upper()));
  if (hi > f.n_max()) throw RangeError("weight support exceeds the coefficient range");
  Complex acc = 0;
  for (i64 r = static_cast<i64>(std::ceil(w.lower())); r <= hi; ++r) {
    const double wr = w(static_cast<double>(r));
    if (wr == 0) continue;
    // lambda(r) / sqrt(r) = a(r) / r
    acc += xi_by_residue[static_cast<std::size_t>(r % q)] * (static_cast<double>(f[r]) * wr / static_cast<double>(r));
  }
  return acc;
}

AmplifiedMoment amplified_moment(const NewformSeries& f, const CharacterTable& table, i64 target,
                                 const AmplifierSpec& amp, const SmoothWeight& w) {
  if (target < 0 || target >= table.order()) throw DomainError("amplified_moment: target index out of range");
  const auto lx = all_l_xi(f, table, w);
  AmplifiedMoment out;
  for (i64 j = 0; j < table.order(); ++j) {
    Complex a = 0;
    for (i64 l : amp.primes) a += table.value(j, l) * std::conj(table.value(target, l));
    out.s += std::norm(a) * std::norm(lx[static_cast<std::size_t>(j)]);
  }
  const double k = static_cast<double>(amp.primes.size());
  out.lower = k * k * std::norm(lx[static_cast<std::size_t>(target)]);
  return out;
}

PlancherelCheck plancherel_identity_check(const CharacterTable& table, const std::vector<Complex>& c) {
  if (static_cast<i64>(c.size()) != table.modulus())
    throw DomainError("plancherel_identity_check: c must have one entry per residue");
  PlancherelCheck out;
  for (i64 j = 0; j < table.order(); ++j) {
    Complex acc = 0;
    for (i64 a = 1; a < table.modulus(); ++a) acc += table.value(j, a) * c[static_cast<std::size_t>(a)];
    out.spectral += std::norm(acc);
  }
  double mass = 0;
  for (i64 a = 1; a < table.modulus(); ++a) mass += std::norm(c[static_cast<std::size_t>(a)]);
  out.arithmetic = static_cast<double>(table.order()) * mass;
  out.residual = std::fabs(out.spectral - out.arithmetic);
  return out;
}

ShiftedConvolution shifted_convolution_expand(const NewformSeries& f, const CharacterTable& table, i64 l1, i64 l2,
                                              const SmoothWeight& w) {
  const i64 q = table.modulus();
  if (l1 % q == 0 || l2 % q == 0) throw DomainError("shifted_convolution_expand: l1, l2 must be coprime to q");
  ShiftedConvolution out;

  const auto lx = all_l_xi(f, table, w);
  Complex spectral = 0;
  for (i64 j = 0; j < table.order(); ++j)
    spectral += table.value(j, l1) * std::conj(table.value(j, l2)) * std::norm(lx[static_cast<std::size_t>(j)]);
  out.spectral_side = spectral.real() / static_cast<double>(table.order());

  if (w.lower() <= 0) return out;
  const i64 lo = static_cast<i64>(std::ceil(w.lower()));
  const i64 hi = static_cast<i64>(std::floor(w.upper()));
  if (hi > f.n_max()) throw RangeError("weight support exceeds the coefficient range");
  std::vector<double> term(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (i64 r = lo; r <= hi; ++r)
    if (r % q != 0) term[static_cast<std::size_t>(r - lo)] = static_cast<double>(f[r]) * w(static_cast<double>(r)) / static_cast<double>(r);
  double arith = 0;
  for (i64 r1 = lo; r1 <= hi; ++r1) {
    const double t1 = term[static_cast<std::size_t>(r1 - lo)];
    if (t1 == 0) continue;
    const i64 lhs = (l1 % q) * (r1 % q) % q;
    for (i64 r2 = lo; r2 <= hi; ++r2) {
      const double t2 = term[static_cast<std::size_t>(r2 - lo)];
      if (t2 == 0) continue;
      if ((l2 % q) * (r2 % q) % q == lhs) arith += t1 * t2;
    }
  }
  out.arithmetic_side = arith;
  return out;
}

}  // namespace tqf
