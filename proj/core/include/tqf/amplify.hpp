#pragma once

#include <complex>
#include <vector>

#include "tqf/arith.hpp"
#include "tqf/newform.hpp"

namespace tqf {

using Complex = std::complex<double>;

// All Dirichlet characters mod a prime q, stored exactly as exponents:
// xi_j(g^k) = zeta^{j k}, zeta = exp(2 pi i / (q - 1)), g the least
// primitive root.
class CharacterTable {
 public:
  // Throws DomainError unless q is prime.
  explicit CharacterTable(i64 q);

  i64 modulus() const { return q_; }
  i64 order() const { return q_ - 1; }  // phi(q), also the number of characters
  i64 generator() const { return g_; }

  // Discrete log of a unit a mod q; -1 when q | a.
  i64 log(i64 a) const;
  // Exponent e with xi_j(a) = zeta^e, or -1 when q | a.
  i64 exponent(i64 j, i64 a) const;
  Complex value(i64 j, i64 a) const;

  // sum_a xi_i(a) conj(xi_j(a)) as an exact element of Z[zeta], reduced
  // modulo the cyclotomic polynomial Phi_{q-1}; coefficients of 1, zeta, ...
  std::vector<i64> inner_product_exact(i64 i, i64 j) const;

 private:
  i64 q_;
  i64 g_;
  std::vector<i64> log_;  // log_[a] for 1 <= a < q
  std::vector<Complex> roots_;
};

// Phi_m(x), coefficients from the constant term up.
std::vector<i64> cyclotomic_polynomial(i64 m);

// Compact bump on [x, 4x], equal to 1 on [2x, 3x], degree-7 smoothstep ramps.
class SmoothWeight {
 public:
  explicit SmoothWeight(double x);
  double operator()(double r) const;
  double lower() const { return x_; }
  double upper() const { return 4 * x_; }

 private:
  double x_;
};

struct AmplifierSpec {
  double length = 0;        // L
  std::vector<i64> primes;  // primes in [L, 2L] coprime to q
};

// Throws DomainError for L <= 1.
AmplifierSpec make_amplifier(double length, i64 q);

// sum_r lambda(r) xi_j(r) W(r) / sqrt(r) with lambda(r) = a(r)/sqrt(r).
// Throws RangeError when the weight support exceeds the coefficient range.
Complex l_xi(const NewformSeries& f, const CharacterTable& table, i64 j, const SmoothWeight& w);

// Same with an arbitrary function xi of r (used with the principal character
// and for direct-sum comparisons).
Complex l_weighted(const NewformSeries& f, const SmoothWeight& w, const std::vector<Complex>& xi_by_residue);

struct AmplifiedMoment {
  double s = 0;
  double lower = 0;  // (#primes)^2 |L_target|^2
};

AmplifiedMoment amplified_moment(const NewformSeries& f, const CharacterTable& table, i64 target,
                                 const AmplifierSpec& amp, const SmoothWeight& w);

struct PlancherelCheck {
  double spectral = 0;    // sum_xi |sum_a xi(a) c(a)|^2
  double arithmetic = 0;  // phi(q) sum_a |c(a)|^2
  double residual = 0;
};

// c indexed by a = 0..q-1 (c[0] ignored).
PlancherelCheck plancherel_identity_check(const CharacterTable& table, const std::vector<Complex>& c);

struct ShiftedConvolution {
  double spectral_side = 0;
  double arithmetic_side = 0;
};

// Arithmetic side: sum over r1, r2 in the support with l1 r1 = l2 r2 (mod q).
// Spectral side: (1/phi(q)) sum_xi xi(l1) conj(xi(l2)) |L_xi|^2.
ShiftedConvolution shifted_convolution_expand(const NewformSeries& f, const CharacterTable& table, i64 l1, i64 l2,
                                              const SmoothWeight& w);

}  // namespace tqf
