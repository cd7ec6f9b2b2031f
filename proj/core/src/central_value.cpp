#include "tqf/central_value.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>

#include "tqf/errors.hpp"
#include "tqf/siegel.hpp"
#include "tqf/ternary.hpp"

namespace tqf {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Lanczos approximation, g = 7, n = 9.
cplx complex_gamma(cplx z) {
  static constexpr std::array<double, 9> coef = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * complex_gamma(1.0 - z));
  z -= 1.0;
  cplx x = coef[0];
  for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
  const cplx t = z + 7.5;
  return std::sqrt(2 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

// Trapezoid nodes for (1/2 pi) int Gamma(1+s) e^{s^2} y^{-s} ds/s on Re s = c.
struct GaussianContour {
  double c = 0;
  double h = 0.05;
  std::vector<cplx> s;
  std::vector<cplx> w;  // includes h / pi and the half weight at t = 0
};

GaussianContour make_contour(double c) {
  GaussianContour g;
  g.c = c;
  const double tmax = std::sqrt(c * c + 45.0) + 1.0;
  for (int k = 0; k * g.h <= tmax; ++k) {
    const cplx s(c, k * g.h);
    const double weight = (k == 0 ? 0.5 : 1.0) * g.h / kPi;
    g.s.push_back(s);
    g.w.push_back(weight * complex_gamma(1.0 + s) * std::exp(s * s) / s);
  }
  return g;
}

const GaussianContour& contour_for(int index) {
  // index 0: Re s = -1/2 (y < 1); index k >= 1: Re s = k.
  static std::once_flag once;
  static std::array<GaussianContour, 7> table;
  std::call_once(once, [] {
    table[0] = make_contour(-0.5);
    for (int k = 1; k < 7; ++k) table[k] = make_contour(static_cast<double>(k));
  });
  return table[static_cast<std::size_t>(index)];
}

double gaussian_kernel(double y) {
  const double ly = std::log(y);
  int index = 0;
  double base = 1.0;  // residue at s = 0 when the contour is left of 0
  if (y >= 1.0) {
    index = std::clamp(static_cast<int>(std::lround(ly / 2.0)), 1, 6);
    base = 0.0;
  }
  const auto& g = contour_for(index);
  double acc = 0;
  for (std::size_t k = 0; k < g.s.size(); ++k) acc += (g.w[k] * std::exp(-g.s[k] * ly)).real();
  return base + acc;
}

// Upper bound for |W| beyond y under the gaussian kernel.
double gaussian_kernel_bound(double y) {
  double best = std::numeric_limits<double>::infinity();
  for (double c = 0.5; c <= 12.0; c += 0.25)
    best = std::min(best, std::exp(std::lgamma(1.0 + c) + c * c - c * std::log(y)) / c);
  return best;
}

double kernel_cutoff(AfeKernel kernel) {
  if (kernel == AfeKernel::exponential) return 40.0;
  return 2.0e4;
}

double tail_bound(AfeKernel kernel, double ax) {
  // |a(n) chi(n) / n| <= d(n)/sqrt(n) <= 2.
  const double ymax = kernel_cutoff(kernel);
  if (kernel == AfeKernel::exponential) return 2.0 * (ax + 1.0) * std::exp(-ymax);
  return 2.0 * ax * ymax * gaussian_kernel_bound(ymax);
}

struct TwistedCoefficients {
  i64 d = 0;
  std::vector<double> c;  // c[n] = a(n) chi_D(n) / n
};

TwistedCoefficients twisted_coefficients(const NewformSeries& f, i64 d, i64 count) {
  if (count > f.n_max())
    throw RangeError("newform series too short: need " + std::to_string(count) + " coefficients, have " +
                     std::to_string(f.n_max()));
  TwistedCoefficients t;
  t.d = d;
  t.c.assign(static_cast<std::size_t>(count + 1), 0.0);
  for (i64 n = 1; n <= count; ++n) {
    const i64 a = f[n];
    if (a == 0) continue;
    const int chi = kronecker(d, n);
    if (chi == 0) continue;
    t.c[static_cast<std::size_t>(n)] = static_cast<double>(a * chi) / static_cast<double>(n);
  }
  return t;
}

i64 terms_needed(AfeKernel kernel, i64 conductor, double x) {
  const double a = std::sqrt(static_cast<double>(conductor)) / (2 * kPi);
  return static_cast<i64>(std::ceil(kernel_cutoff(kernel) * a * x)) + 1;
}

struct PartialSum {
  double value = 0;
  double error = 0;
  i64 terms = 0;
};

PartialSum partial_sum(const TwistedCoefficients& t, i64 conductor, double x, AfeKernel kernel) {
  const double a = std::sqrt(static_cast<double>(conductor)) / (2 * kPi);
  const double ax = a * x;
  const i64 m = terms_needed(kernel, conductor, x);
  if (m >= static_cast<i64>(t.c.size())) throw RangeError("partial_sum: coefficient table too short");
  long double acc = 0, mag = 0;
  for (i64 n = 1; n <= m; ++n) {
    const double cn = t.c[static_cast<std::size_t>(n)];
    if (cn == 0) continue;
    const double y = static_cast<double>(n) / ax;
    const double w = kernel == AfeKernel::exponential ? std::exp(-y) : gaussian_kernel(y);
    acc += static_cast<long double>(cn) * w;
    mag += std::fabs(cn * w);
  }
  PartialSum ps;
  ps.value = static_cast<double>(acc);
  const double kernel_err = kernel == AfeKernel::exponential ? 4 * kEps : 1e-12;
  ps.error = tail_bound(kernel, ax) + static_cast<double>(mag) * kernel_err +
             static_cast<double>(mag) * static_cast<double>(m) * std::numeric_limits<long double>::epsilon() +
             kEps * std::fabs(ps.value);
  ps.terms = m;
  return ps;
}

struct Solved {
  double value = 0, root = 0, err = 0, check = 0, check_err = 0;
  i64 terms = 0;
};

Solved solve_functional_equation(const TwistedCoefficients& t, i64 conductor, const AfeOptions& o) {
  const double x1 = o.cutoff, x2 = 2 * o.cutoff, x3 = o.check_cutoff;
  const PartialSum s1 = partial_sum(t, conductor, x1, o.kernel);
  const PartialSum s2 = partial_sum(t, conductor, x2, o.kernel);
  const PartialSum r1 = partial_sum(t, conductor, 1 / x1, o.kernel);
  const PartialSum r2 = partial_sum(t, conductor, 1 / x2, o.kernel);
  const PartialSum s3 = partial_sum(t, conductor, x3, o.kernel);
  const PartialSum r3 = partial_sum(t, conductor, 1 / x3, o.kernel);
  // L = S(X) + eps S(1/X) for every X > 0.
  const double den = r2.value - r1.value;
  Solved out;
  out.root = (s1.value - s2.value) / den;
  out.value = s1.value + out.root * r1.value;
  const double delta = std::max({s1.error, s2.error, r1.error, r2.error});
  const double root_err = (2 * delta + std::fabs(out.root) * 2 * delta) / std::fabs(den);
  const double value_err = delta + std::fabs(out.root) * delta + std::fabs(r1.value) * root_err;
  out.err = std::max(root_err, value_err) + kEps * (1 + std::fabs(out.value));
  out.check = s3.value + out.root * r3.value;
  out.check_err = s3.error + std::fabs(out.root) * r3.error + std::fabs(r3.value) * root_err;
  out.terms = s2.terms;
  return out;
}

i64 strip_2_5(i64 v) {
  v = v < 0 ? -v : v;
  while (v % 2 == 0) v /= 2;
  while (v % 5 == 0) v /= 5;
  return v;
}

void require_length(const NewformSeries& f, i64 conductor) {
  const double need = 30.0 * std::sqrt(static_cast<double>(conductor));
  if (static_cast<double>(f.n_max()) < need)
    throw RangeError("central value needs n_max >= 30 sqrt(N) = " + std::to_string(static_cast<i64>(need)));
}

double score(const Solved& s) { return std::fabs(std::fabs(s.root) - 1.0) + std::fabs(s.check - s.value); }

bool consistent(const Solved& s) {
  return std::fabs(std::fabs(s.root) - 1.0) <= 10 * s.err && std::fabs(s.check - s.value) <= 10 * (s.err + s.check_err);
}

}  // namespace

double afe_kernel(AfeKernel kernel, double y) {
  if (y <= 0) throw DomainError("afe_kernel: y must be positive");
  return kernel == AfeKernel::exponential ? std::exp(-y) : gaussian_kernel(y);
}

double afe_partial_sum(const NewformSeries& f, i64 d, i64 conductor, double x, AfeKernel kernel, double* error,
                       i64* terms) {
  const auto t = twisted_coefficients(f, d, terms_needed(kernel, conductor, x));
  const auto ps = partial_sum(t, conductor, x, kernel);
  if (error) *error = ps.error;
  if (terms) *terms = ps.terms;
  return ps.value;
}

CentralValue central_value_at(const NewformSeries& f, i64 d, i64 conductor, const AfeOptions& opts) {
  if (conductor < 1) throw DomainError("central_value_at: conductor must be positive");
  if (opts.cutoff <= 0 || opts.check_cutoff <= 0 || std::fabs(opts.cutoff - 1.0) < 1e-3)
    throw DomainError("central_value_at: cutoffs must be positive and X != 1");
  require_length(f, conductor);
  const double xmax = std::max({2 * opts.cutoff, opts.check_cutoff, 1 / opts.cutoff, 1 / opts.check_cutoff});
  const auto t = twisted_coefficients(f, d, terms_needed(opts.kernel, conductor, xmax));
  const Solved s = solve_functional_equation(t, conductor, opts);
  CentralValue cv;
  cv.d = d;
  cv.conductor = conductor;
  cv.value = s.value;
  cv.imag = 0.0;  // real coefficients: every partial sum is real
  cv.root_number = s.root;
  cv.est_error = s.err;
  cv.cutoff = opts.cutoff;
  cv.check_value = s.check;
  cv.terms = s.terms;
  if (std::fabs(std::fabs(s.root) - 1.0) > 10 * s.err)
    throw IntegrityError("central value at D = " + std::to_string(d) + ": solved root number " +
                         std::to_string(s.root) + " is not of modulus 1");
  if (std::fabs(s.check - s.value) > 10 * (s.err + s.check_err))
    throw IntegrityError("central value at D = " + std::to_string(d) + ": check cutoff disagrees");
  return cv;
}

i64 detect_twist_conductor(const NewformSeries& f, i64 d) {
  const i64 core = strip_2_5(d);
  const i128 core_sq = static_cast<i128>(core) * core;
  const AfeOptions opts;
  i64 best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  bool best_ok = false;
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 2; ++b) {
      i128 n = core_sq;
      for (int i = 0; i < a; ++i) n *= 2;
      for (int i = 0; i < b; ++i) n *= 5;
      const i64 conductor = static_cast<i64>(n);
      if (30.0 * std::sqrt(static_cast<double>(conductor)) > static_cast<double>(f.n_max())) continue;
      const double xmax = std::max(2 * opts.cutoff, opts.check_cutoff);
      const auto t = twisted_coefficients(f, d, terms_needed(opts.kernel, conductor, xmax));
      const Solved s = solve_functional_equation(t, conductor, opts);
      const double sc = score(s);
      if (sc < best_score) {
        best_score = sc;
        best = conductor;
        best_ok = consistent(s);
      }
    }
  if (!best_ok)
    throw IntegrityError("no conductor 2^a 5^b D'^2 satisfies the functional equation for D = " + std::to_string(d));
  return best;
}

CentralValue central_value(const NewformSeries& f, i64 d, const AfeOptions& opts) {
  const Discriminant disc(d);
  if (!disc.is_fundamental()) throw DomainError("central_value: D must be fundamental");
  if (std::gcd(d, i64{20}) == 1) return central_value_at(f, d, checked_mul(20, checked_mul(d, d)), opts);
  return central_value_at(f, d, detect_twist_conductor(f, d), opts);
}

std::vector<WaldspurgerRow> waldspurger_study(const NewformSeries& f, const std::vector<i64>& ns) {
  std::vector<WaldspurgerRow> rows;
  // Conductor = 2^a 5^b n^2 with (a, b) fixed by the local twist at 2 and 5;
  // found once, re-verified at every n by the functional-equation checks.
  i64 local_part = 0;
  for (i64 n : ns) {
    if (n < 1 || std::gcd(n, i64{10}) != 1 || !is_squarefree(static_cast<u64>(n)))
      throw DomainError("waldspurger_study: n must be squarefree and coprime to 10");
    WaldspurgerRow row;
    row.n = n;
    row.r_q = static_cast<i64>(rep_count(forms::ramanujan_ten(), n).count_primitive);
    row.r_q_partner = static_cast<i64>(rep_count(forms::ramanujan_ten_partner(), n).count_primitive);
    const i64 diff = row.r_q - row.r_q_partner;
    row.lhs = diff * diff;
    const i64 d = checked_mul(-40, n);
    CentralValue cv;
    bool done = false;
    if (local_part != 0) {
      try {
        cv = central_value_at(f, d, checked_mul(local_part, checked_mul(n, n)));
        done = true;
      } catch (const IntegrityError&) {
      }
    }
    if (!done) {
      const i64 conductor = detect_twist_conductor(f, d);
      local_part = conductor / (n * n);
      cv = central_value_at(f, d, conductor);
    }
    row.l_value = cv.value;
    row.est_error = cv.est_error;
    row.root_number = cv.root_number;
    row.rhs_core = std::sqrt(static_cast<double>(n)) * cv.value;
    const double rhs_err = std::sqrt(static_cast<double>(n)) * cv.est_error;
    if (row.rhs_core > rhs_err) {
      row.ratio = static_cast<double>(row.lhs) / row.rhs_core;
    } else {
      row.flagged = true;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tqf
