#pragma once

#include <vector>

#include "tqf/arith.hpp"
#include "tqf/newform.hpp"

namespace tqf {

// Cutoff kernel of the approximate functional equation for
// Lambda(s) = (sqrt(N)/2pi)^s Gamma(s + 1/2) L(s, f x chi_D):
//   exponential: test function G(s) = 1, kernel W(y) = exp(-y) in closed form;
//   gaussian:    G(s) = exp(s^2), kernel by contour quadrature on Re s = const.
enum class AfeKernel { exponential, gaussian };

struct AfeOptions {
  AfeKernel kernel = AfeKernel::exponential;
  double cutoff = 1.1;        // X; the system is solved with X and 2X
  double check_cutoff = 1.7;  // independent recomputation
};

struct CentralValue {
  i64 d = 0;
  i64 conductor = 0;
  double value = 0;           // L(1/2, f x chi_D), analytic normalization
  double imag = 0;            // imaginary part of the raw computation
  double root_number = 0;     // solved, not assumed
  double est_error = 0;
  double cutoff = 0;          // X of the primary solve
  double check_value = 0;     // value recomputed at check_cutoff
  i64 terms = 0;              // coefficients used
};

// Smoothed partial sum S(X) = sum_n a(n) chi_D(n) / n * W(2 pi n / (sqrt(N) X)),
// with |error| written to *error (tail plus rounding).
double afe_partial_sum(const NewformSeries& f, i64 d, i64 conductor, double x, AfeKernel kernel, double* error,
                       i64* terms = nullptr);

// W(y) for the chosen kernel.
double afe_kernel(AfeKernel kernel, double y);

// Central value at a given conductor. Throws IntegrityError when the solved
// root number misses |eps| = 1 by more than 10 est_error or the check
// cutoff disagrees by more than 10 est_error; RangeError when f is too short
// (n_max < 30 sqrt(N)).
CentralValue central_value_at(const NewformSeries& f, i64 d, i64 conductor, const AfeOptions& opts = {});

// Conductor of f x chi_D found by testing 2^a 5^b D'^2 (D' the part of |D|
// prime to 10, 0 <= a <= 8, 0 <= b <= 2) for functional-equation
// consistency. Throws IntegrityError when no candidate is consistent.
i64 detect_twist_conductor(const NewformSeries& f, i64 d);

// L(1/2, f x chi_D) for a fundamental discriminant D. For gcd(D, 20) = 1 the
// conductor is 20 D^2; otherwise it is detected.
CentralValue central_value(const NewformSeries& f, i64 d, const AfeOptions& opts = {});

struct WaldspurgerRow {
  i64 n = 0;
  i64 r_q = 0;
  i64 r_q_partner = 0;
  i64 lhs = 0;             // (r*(n,Q) - r*(n,Q'))^2
  double l_value = 0;      // L(1/2, f x chi_{-40n})
  double est_error = 0;
  double root_number = 0;
  double rhs_core = 0;     // sqrt(n) L(1/2, f x chi_{-40n})
  double ratio = 0;        // lhs / rhs_core when rhs_core > est_error
  bool flagged = false;    // rhs_core within est_error of zero
};

// Rows for squarefree n with gcd(n, 10) = 1, in the order given.
std::vector<WaldspurgerRow> waldspurger_study(const NewformSeries& f, const std::vector<i64>& ns);

}  // namespace tqf
