#include "tqf/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "tqf/errors.hpp"

namespace tqf {

namespace {

constexpr u64 kTrialLimit = 1'000'000;

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Brent's variant of Pollard rho. n is odd, composite, and has no factor
// below the trial-division limit.
u64 pollard_rho(u64 n) {
  std::mt19937_64 rng(n);
  for (;;) {
    const u64 c = rng() % (n - 1) + 1;
    u64 y = rng() % n;
    u64 m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_large(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_rho(n);
  factor_large(d, out);
  factor_large(n / d, out);
}

int jacobi(i64 a, i64 m) {
  // m odd positive
  a %= m;
  if (a < 0) a += m;
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const i64 r = m & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if ((a & 3) == 3 && (m & 3) == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

bool fundamental_check(i64 d) {
  // d < 0, d = 0,1 mod 4
  const u64 a = static_cast<u64>(-d);
  if (((d % 4) + 4) % 4 == 1) return is_squarefree(a);
  const u64 m = a / 4;
  const u64 mr = m % 4;  // -m mod 4 must be 2 or 3, i.e. m mod 4 is 2 or 1
  if (mr != 1 && mr != 2) return false;
  return is_squarefree(m);
}

}  // namespace

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

u64 Factorization::recompose() const {
  u64 v = 1;
  for (const auto& pp : factors)
    for (int e = 0; e < pp.exponent; ++e) v *= pp.prime;
  return v;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic below 3.3e24.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(i64 n) {
  if (n < 1) throw RangeError("factorize: argument must be >= 1, got " + std::to_string(n));
  Factorization f;
  f.n = static_cast<u64>(n);
  u64 m = f.n;
  auto take = [&](u64 p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) f.factors.push_back({p, e});
  };
  take(2);
  for (u64 p = 3; p <= kTrialLimit && p * p <= m; p += 2) take(p);
  if (m > 1) {
    if (m <= kTrialLimit * kTrialLimit || is_prime(m)) {
      f.factors.push_back({m, 1});
    } else {
      std::vector<u64> primes;
      factor_large(m, primes);
      std::sort(primes.begin(), primes.end());
      for (u64 p : primes) {
        if (!f.factors.empty() && f.factors.back().prime == p)
          ++f.factors.back().exponent;
        else
          f.factors.push_back({p, 1});
      }
    }
  }
  return f;
}

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (u64 p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (u64 q = p * p; q <= limit; q += p) composite[q] = true;
  }
  return out;
}

bool is_squarefree(u64 n) {
  if (n == 0) return false;
  const auto f = factorize(static_cast<i64>(n));
  return std::all_of(f.factors.begin(), f.factors.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

int valuation(i64 n, i64 p) {
  if (n == 0) throw DomainError("valuation of zero");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

i64 checked_mul(i64 a, i64 b) {
  i64 out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw RangeError("64-bit multiplication overflow");
  return out;
}

i64 checked_add(i64 a, i64 b) {
  i64 out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw RangeError("64-bit addition overflow");
  return out;
}

int kronecker(i64 d, i64 n) {
  if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    if (n == std::numeric_limits<i64>::min()) throw RangeError("kronecker: n out of range");
    n = -n;
    if (d < 0) result = -result;
  }
  if ((n & 1) == 0) {
    if ((d & 1) == 0) return 0;
    int twos = 0;
    while ((n & 1) == 0) {
      n >>= 1;
      ++twos;
    }
    const i64 r = ((d % 8) + 8) % 8;
    if ((twos & 1) && (r == 3 || r == 5)) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(d, n);
}

DiscriminantInfo classify_discriminant(i64 d) {
  if (d >= 0) throw DomainError("classify_discriminant: discriminant must be negative");
  DiscriminantInfo info;
  info.value = d;
  const i64 r = ((d % 4) + 4) % 4;
  if (r == 2 || r == 3) return info;
  if (fundamental_check(d)) {
    info.kind = DiscriminantKind::fundamental;
    info.fundamental = d;
    info.conductor = 1;
    return info;
  }
  // Largest f with d / f^2 still a discriminant; that quotient is fundamental.
  const auto fac = factorize(-d);
  i64 f = 1;
  for (const auto& pp : fac.factors) {
    for (int e = pp.exponent / 2; e > 0; --e) {
      i64 pe = 1;
      for (int k = 0; k < e; ++k) pe *= static_cast<i64>(pp.prime);
      const i64 q = d / (pe * pe);
      const i64 qr = ((q % 4) + 4) % 4;
      if (d % (pe * pe) == 0 && (qr == 0 || qr == 1)) {
        f *= pe;
        d /= pe * pe;
        break;
      }
    }
  }
  info.kind = DiscriminantKind::non_fundamental;
  info.fundamental = d;
  info.conductor = f;
  return info;
}

Discriminant::Discriminant(i64 d) : value_(d), info_(classify_discriminant(d)) {
  if (info_.kind == DiscriminantKind::not_a_discriminant)
    throw DomainError("not a discriminant: " + std::to_string(d) + " is 2 or 3 mod 4");
}

}  // namespace tqf
