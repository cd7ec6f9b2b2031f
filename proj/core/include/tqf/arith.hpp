#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace tqf {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

using Rational = boost::rational<i64>;

std::string to_string(const Rational& r);

struct PrimePower {
  u64 prime = 0;
  int exponent = 0;
  friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;  // primes strictly increasing

  u64 recompose() const;
};

// Canonical factorization of 1 <= n <= 2^63 - 1. Throws RangeError otherwise.
Factorization factorize(i64 n);

// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(u64 n);

std::vector<u64> primes_up_to(u64 limit);

bool is_squarefree(u64 n);

// floor(sqrt(n)), exact.
u64 isqrt(u64 n);

// Largest e with p^e | n, for n != 0 and p >= 2.
int valuation(i64 n, i64 p);

i64 gcd(i64 a, i64 b);

i64 checked_mul(i64 a, i64 b);
i64 checked_add(i64 a, i64 b);

// Kronecker symbol (d/n) with the full extension to even and non-positive n.
// kronecker(d, 0) is 1 for d = +-1 and 0 otherwise.
int kronecker(i64 d, i64 n);

enum class DiscriminantKind { not_a_discriminant, fundamental, non_fundamental };

struct DiscriminantInfo {
  DiscriminantKind kind = DiscriminantKind::not_a_discriminant;
  i64 value = 0;
  i64 fundamental = 0;  // D0 with value = conductor^2 * D0
  i64 conductor = 0;
};

// Throws DomainError for d >= 0.
DiscriminantInfo classify_discriminant(i64 d);

// A negative integer congruent to 0 or 1 mod 4.
class Discriminant {
 public:
  // Throws DomainError when d >= 0 or d = 2,3 (mod 4).
  explicit Discriminant(i64 d);

  i64 value() const { return value_; }
  u64 abs() const { return static_cast<u64>(-value_); }
  bool is_fundamental() const { return info_.kind == DiscriminantKind::fundamental; }
  i64 fundamental_part() const { return info_.fundamental; }
  i64 conductor() const { return info_.conductor; }

  friend bool operator==(const Discriminant& a, const Discriminant& b) { return a.value_ == b.value_; }

 private:
  i64 value_;
  DiscriminantInfo info_;
};

}  // namespace tqf
