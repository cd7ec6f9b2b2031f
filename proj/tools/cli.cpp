#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "tqf/amplify.hpp"
#include "tqf/central_value.hpp"
#include "tqf/classno.hpp"
#include "tqf/errors.hpp"
#include "tqf/newform.hpp"
#include "tqf/real_quadratic.hpp"
#include "tqf/siegel.hpp"
#include "tqf/ternary.hpp"

namespace tqf::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string num(i64 v) { return std::to_string(v); }
std::string num(u64 v) { return std::to_string(v); }
std::string yes_no(bool b) { return b ? "yes" : "no"; }

using Row = std::vector<std::string>;

struct Table {
  Row header;
  std::vector<Row> rows;

  void write(std::ostream& os) const {
    auto line = [&](const Row& r) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "\t" : "") << r[i];
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
  }
};

struct Settings {
  std::string output;
  int threads = 1;
  std::string config;

  i64 nmin = 1, nmax = 100;
  i64 dmin = -200, dmax = -3;
  bool squarefree = false;
  std::string genus = "ramanujan-ten";
  std::string form;
  std::string coeffs;
  i64 pmax = 50;
  i64 truncation = 100000;
  bool product = false;

  i64 m = 35;
  i64 b = 0;

  i64 coefficients = 0;
  std::string kernel = "exponential";
  double cutoff = 1.1;
  i64 inject = 0;

  i64 q = 11;
  double x = 0;
  double length = 10;
  i64 target = 0;
  i64 l1 = 13, l2 = 17;
};

// Runs f(0..count-1) on a pool; results keep index order. When several items
// throw, the lowest index wins, so failures are as deterministic as output.
template <class F>
auto parallel_map(std::size_t count, int threads, F f) {
  using R = decltype(f(std::size_t{0}));
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::size_t>(count, 1))));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<i64> n_range(const Settings& s, const std::function<bool(i64)>& keep) {
  if (s.nmin < 1 || s.nmin > s.nmax) throw UsageError("need 1 <= nmin <= nmax");
  std::vector<i64> out;
  for (i64 n = s.nmin; n <= s.nmax; ++n) {
    if (s.squarefree && !is_squarefree(static_cast<u64>(n))) continue;
    if (keep(n)) out.push_back(n);
  }
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::map<std::string, std::function<TernaryForm()>>& named_forms() {
  static const std::map<std::string, std::function<TernaryForm()>> m{
      {"three-squares", forms::three_squares},
      {"ramanujan-ten", forms::ramanujan_ten},
      {"ramanujan-ten-partner", forms::ramanujan_ten_partner},
      {"spinor-first", forms::spinor_first},
      {"spinor-second", forms::spinor_second},
  };
  return m;
}

TernaryForm select_form(const Settings& s) {
  if (!s.coeffs.empty()) {
    const auto parts = split(s.coeffs, ',');
    if (parts.size() != 6) throw UsageError("--coeffs expects a,b,c,yz,xz,xy");
    i64 v[6];
    for (int i = 0; i < 6; ++i) {
      try {
        std::size_t used = 0;
        v[i] = std::stoll(trim(parts[static_cast<std::size_t>(i)]), &used);
        if (used != trim(parts[static_cast<std::size_t>(i)]).size()) throw std::invalid_argument("trailing");
      } catch (const std::logic_error&) {
        throw UsageError("--coeffs: '" + parts[static_cast<std::size_t>(i)] + "' is not an integer");
      }
    }
    return TernaryForm::from_coefficients(v[0], v[1], v[2], v[3], v[4], v[5]);
  }
  const std::string name = s.form.empty() ? "three-squares" : s.form;
  const auto it = named_forms().find(name);
  if (it == named_forms().end()) throw UsageError("unknown form '" + name + "'");
  return it->second();
}

AfeKernel parse_kernel(const std::string& k) {
  if (k == "exponential") return AfeKernel::exponential;
  if (k == "gaussian") return AfeKernel::gaussian;
  throw UsageError("unknown kernel '" + k + "' (expected exponential or gaussian)");
}

NewformSeries load_newform(i64 n_max, i64 inject) {
  if (n_max > 10'000'000) throw RangeError("needs " + std::to_string(n_max) + " coefficients, above the 10^7 cap");
  n_max = std::max<i64>(n_max, 100);
  if (inject == 0) return newform20(n_max);
  if (inject < 1 || inject > n_max) throw UsageError("--inject-bad-coefficient out of range");
  auto a = eta_quotient_20(n_max);
  a[static_cast<std::size_t>(inject)] += 1;
  NewformSeries f(std::move(a));
  validate_against_curves(f, 100);
  return f;
}

i64 part_prime_to_10(i64 v) {
  v = v < 0 ? -v : v;
  while (v % 2 == 0) v /= 2;
  while (v % 5 == 0) v /= 5;
  return v;
}

// Upper bound for sqrt(conductor) of f twisted by D.
double sqrt_conductor_bound(i64 d) {
  if (std::gcd(d, i64{20}) == 1) return std::sqrt(20.0) * std::fabs(static_cast<double>(d));
  return 80.0 * static_cast<double>(part_prime_to_10(d));
}

i64 coefficients_for(i64 d, const AfeOptions& opts) {
  const double reach = opts.kernel == AfeKernel::exponential ? 40.0 : 2.0e4;
  const double per_root = std::max(30.0, reach / (2 * std::numbers::pi) * std::max(opts.cutoff, opts.check_cutoff));
  return static_cast<i64>(std::ceil(per_root * sqrt_conductor_bound(d))) + 2;
}

// --- subcommands -----------------------------------------------------------

Table cmd_classno(const Settings& s) {
  if (s.dmin > s.dmax || s.dmax > -3) throw UsageError("need dmin <= dmax <= -3");
  std::vector<i64> ds;
  for (i64 d = s.dmax; d >= s.dmin; --d) {
    const i64 r = ((d % 4) + 4) % 4;
    if (r == 0 || r == 1) ds.push_back(d);
  }
  Table t{{"D", "h", "w", "L1_classno", "L1_charsum", "diff", "fundamental"}, {}};
  const auto rows = parallel_map(ds.size(), s.threads, [&](std::size_t i) {
    const Discriminant disc(ds[i]);
    const i64 h = class_number(disc);
    const int w = unit_count(disc);
    const double by_h = 2 * std::numbers::pi * static_cast<double>(h) / (w * std::sqrt(static_cast<double>(disc.abs())));
    const double by_sum = disc.is_fundamental() ? dirichlet_L1(disc, L1Method::character_sum).value
                                                : dirichlet_L1_any(disc.value());
    return Row{num(disc.value()), num(h), num(static_cast<i64>(w)), num(by_h), num(by_sum), num(std::fabs(by_h - by_sum)),
               yes_no(disc.is_fundamental())};
  });
  t.rows = rows;
  return t;
}

Table cmd_rep(const Settings& s) {
  const TernaryForm q = select_form(s);
  const auto ns = n_range(s, [](i64) { return true; });
  Table t{{"n", "r", "r_primitive"}, {}};
  t.rows = parallel_map(ns.size(), s.threads, [&](std::size_t i) {
    const auto r = rep_count(q, ns[i]);
    return Row{num(r.n), num(r.count_all), num(r.count_primitive)};
  });
  return t;
}

Table cmd_automorphs(const Settings& s) {
  std::vector<std::pair<std::string, TernaryForm>> qs;
  if (s.form.empty() && s.coeffs.empty()) {
    for (const auto& [name, make] : named_forms()) qs.emplace_back(name, make());
  } else {
    qs.emplace_back(s.coeffs.empty() ? s.form : s.coeffs, select_form(s));
  }
  Table t{{"form", "gram", "det", "automorphs"}, {}};
  t.rows = parallel_map(qs.size(), s.threads, [&](std::size_t i) {
    const auto& [name, q] = qs[i];
    return Row{name, q.to_string(), num(q.det()), num(automorph_count(q))};
  });
  return t;
}

Table cmd_densities(const Settings& s) {
  const auto genus = make_genus(parse_genus(s.genus));
  if (s.pmax < 2 || s.pmax > 1000) throw UsageError("need 2 <= pmax <= 1000");
  const auto ns = n_range(s, [](i64) { return true; });
  const auto primes = primes_up_to(static_cast<u64>(s.pmax));
  Table t{{"n", "p", "form", "closed", "counted", "equal"}, {}};
  const auto blocks = parallel_map(ns.size(), s.threads, [&](std::size_t i) {
    const i64 n = ns[i];
    const bool admissible = is_admissible(genus, n);
    std::vector<Row> rows;
    for (u64 up : primes) {
      const i64 p = static_cast<i64>(up);
      std::optional<Rational> closed;
      if (admissible) closed = beta_p_closed(genus, n, p);
      for (std::size_t c = 0; c < genus.classes.size(); ++c) {
        const Rational counted = beta_p_counting(genus.classes[c].form, n, p);
        rows.push_back({num(n), num(p), num(static_cast<i64>(c)), closed ? to_string(*closed) : "",
                        to_string(counted), closed ? yes_no(*closed == counted) : ""});
      }
    }
    return rows;
  });
  for (const auto& b : blocks) t.rows.insert(t.rows.end(), b.begin(), b.end());
  return t;
}

Table cmd_mass(const Settings& s) {
  const auto label = parse_genus(s.genus);
  const auto genus = make_genus(label);
  if (s.truncation < 5 || s.truncation > 100'000'000) throw UsageError("need 5 <= truncation <= 10^8");
  const auto ns = n_range(s, [&](i64 n) { return is_admissible(genus, n); });
  Table t;
  if (label == GenusLabel::ramanujan_ten)
    t.header = {"n", "rQ", "rQprime", "lhs", "2h(-40n)", "equal"};
  else
    t.header = {"n", "r", "class_number_count", "equal"};
  if (s.product) t.header.insert(t.header.end(), {"genus_average", "product", "residual", "tail_bound", "within"});
  t.rows = parallel_map(ns.size(), s.threads, [&](std::size_t i) {
    const i64 n = ns[i];
    Row r;
    if (label == GenusLabel::ramanujan_ten) {
      const auto row = ramanujan_mass_identity(n);
      r = {num(n), num(row.r_q), num(row.r_q_partner), num(row.r_q + 2 * row.r_q_partner), num(row.two_h),
           yes_no(row.equal())};
    } else {
      const i64 count = static_cast<i64>(rep_count(forms::three_squares(), n).count_primitive);
      const i64 predicted = three_squares_class_number_count(n);
      r = {num(n), num(count), num(predicted), yes_no(count == predicted)};
    }
    if (s.product) {
      const auto m = mass_formula_check(genus, n, static_cast<u64>(s.truncation));
      r.insert(r.end(), {to_string(m.lhs), num(m.rhs), num(m.residual), num(m.tail_bound),
                         yes_no(!m.lhs_zero && m.residual <= m.tail_bound)});
    }
    return r;
  });
  return t;
}

Table cmd_real_quadratic(const Settings& s) {
  const RealQuadraticRing ring(s.m);
  Table t{{"m", "n", "n_sqrt_part", "r", "r_primitive"}, {}};
  std::vector<RingElement> targets;
  if (s.b != 0) {
    if (s.nmin != s.nmax) throw UsageError("--b needs a single rational part (--n)");
    targets.push_back({s.nmin, s.b});
  } else {
    for (i64 n : n_range(s, [](i64) { return true; })) targets.push_back({n, 0});
  }
  t.rows = parallel_map(targets.size(), s.threads, [&](std::size_t i) {
    const auto r = rep_count_real_quadratic(ring, targets[i]);
    return Row{num(s.m), num(targets[i].a), num(targets[i].b), num(r.count_all), num(r.count_primitive)};
  });
  return t;
}

Table cmd_lvalue(const Settings& s) {
  if (s.dmin > s.dmax || s.dmax > -3) throw UsageError("need dmin <= dmax <= -3");
  AfeOptions opts;
  opts.kernel = parse_kernel(s.kernel);
  opts.cutoff = s.cutoff;
  std::vector<i64> ds;
  for (i64 d = s.dmax; d >= s.dmin; --d) {
    const i64 r = ((d % 4) + 4) % 4;
    if ((r == 0 || r == 1) && classify_discriminant(d).kind == DiscriminantKind::fundamental) ds.push_back(d);
  }
  i64 need = 100;
  for (i64 d : ds) need = std::max(need, coefficients_for(d, opts));
  const NewformSeries f = load_newform(s.coefficients > 0 ? s.coefficients : need, s.inject);
  Table t{{"D", "conductor", "value", "root_number", "est_error", "check_value", "terms"}, {}};
  t.rows = parallel_map(ds.size(), s.threads, [&](std::size_t i) {
    const auto c = central_value(f, ds[i], opts);
    return Row{num(c.d), num(c.conductor), num(c.value), num(c.root_number), num(c.est_error), num(c.check_value),
               num(c.terms)};
  });
  return t;
}

Table cmd_waldspurger(const Settings& s) {
  const auto ns = n_range(s, [](i64 n) { return std::gcd(n, i64{10}) == 1 && is_squarefree(static_cast<u64>(n)); });
  const i64 need = s.coefficients > 0 ? s.coefficients : checked_mul(1200, s.nmax) + 1;
  const NewformSeries f = load_newform(need, s.inject);
  // contiguous chunks so that each worker detects the conductor shape once
  const std::size_t chunks = std::min<std::size_t>(ns.size(), static_cast<std::size_t>(std::max(1, s.threads)) * 4);
  const auto parts = parallel_map(chunks, s.threads, [&](std::size_t c) {
    const std::size_t lo = c * ns.size() / chunks, hi = (c + 1) * ns.size() / chunks;
    return waldspurger_study(f, std::vector<i64>(ns.begin() + static_cast<std::ptrdiff_t>(lo),
                                                 ns.begin() + static_cast<std::ptrdiff_t>(hi)));
  });
  Table t{{"n", "rQ", "rQprime", "lhs", "L_half", "est_error", "root_number", "rhs_core", "ratio", "flagged"}, {}};
  for (const auto& part : parts)
    for (const auto& r : part)
      t.rows.push_back({num(r.n), num(r.r_q), num(r.r_q_partner), num(r.lhs), num(r.l_value), num(r.est_error),
                        num(r.root_number), num(r.rhs_core), r.flagged ? "" : num(r.ratio), yes_no(r.flagged)});
  return t;
}

Table cmd_amplify(const Settings& s) {
  const CharacterTable table(s.q);
  if (s.target < 0 || s.target >= table.order()) throw UsageError("--target must index a character mod q");
  const double x = s.x > 0 ? s.x : static_cast<double>(s.q);
  const SmoothWeight w(x);
  const NewformSeries f = load_newform(static_cast<i64>(std::ceil(w.upper())) + 1, s.inject);
  const auto amp = make_amplifier(s.length, s.q);

  const auto moment = amplified_moment(f, table, s.target, amp, w);
  bool orthogonal = true;
  const std::size_t deg = cyclotomic_polynomial(table.order()).size() - 1;
  for (i64 i = 0; i < table.order(); ++i)
    for (i64 j = 0; j < table.order(); ++j) {
      std::vector<i64> expected(deg, 0);
      expected[0] = i == j ? table.order() : 0;
      if (table.inner_product_exact(i, j) != expected) orthogonal = false;
    }
  std::vector<Complex> c(static_cast<std::size_t>(s.q));
  for (i64 a = 1; a < s.q; ++a)
    c[static_cast<std::size_t>(a)] = Complex(std::cos(static_cast<double>(a)), std::sin(static_cast<double>(a * a)));
  const auto planch = plancherel_identity_check(table, c);
  const auto conv = shifted_convolution_expand(f, table, s.l1, s.l2, w);
  const double rel = conv.arithmetic_side == 0 ? std::fabs(conv.spectral_side)
                                               : std::fabs(conv.spectral_side - conv.arithmetic_side) / std::fabs(conv.arithmetic_side);

  Table t{{"quantity", "value"}, {}};
  std::string primes;
  for (i64 l : amp.primes) primes += (primes.empty() ? "" : ",") + std::to_string(l);
  t.rows = {
      {"q", num(s.q)},
      {"generator", num(table.generator())},
      {"orthogonality_exact", yes_no(orthogonal)},
      {"support", num(w.lower()) + ".." + num(w.upper())},
      {"amplifier_primes", primes},
      {"target", num(s.target)},
      {"L_target_abs", num(std::abs(l_xi(f, table, s.target, w)))},
      {"S", num(moment.s)},
      {"lower", num(moment.lower)},
      {"positivity", yes_no(moment.s >= moment.lower - 1e-10 * moment.s)},
      {"plancherel_spectral", num(planch.spectral)},
      {"plancherel_arithmetic", num(planch.arithmetic)},
      {"plancherel_residual", num(planch.residual)},
      {"shift_l1", num(s.l1)},
      {"shift_l2", num(s.l2)},
      {"shifted_spectral", num(conv.spectral_side)},
      {"shifted_arithmetic", num(conv.arithmetic_side)},
      {"shifted_rel_diff", num(rel)},
  };
  return t;
}

Table cmd_survey_error(const Settings& s) {
  const auto label = parse_genus(s.genus);
  const auto genus = make_genus(label);
  const auto ns = n_range(s, [&](i64 n) { return is_admissible(genus, n); });
  Table t{{"n", "r", "main_term", "error", "error_over_n_quarter"}, {}};
  t.rows = parallel_map(ns.size(), s.threads, [&](std::size_t i) {
    const i64 n = ns[i];
    i64 r = 0;
    double main = 0;
    if (label == GenusLabel::ramanujan_ten) {
      // genus average (r_Q/8 + r_Q'/4) / (3/8) = 2 h(-40n) / 3
      const auto row = ramanujan_mass_identity(n);
      r = row.r_q;
      main = static_cast<double>(row.two_h) / 3.0;
    } else {
      r = static_cast<i64>(rep_count(forms::three_squares(), n).count_primitive);
      main = static_cast<double>(three_squares_class_number_count(n));
    }
    const double err = static_cast<double>(r) - main;
    return Row{num(n), num(r), num(main), num(err), num(err / std::pow(static_cast<double>(n), 0.25))};
  });
  return t;
}

// --- option plumbing -------------------------------------------------------

struct ConfigEntry {
  int line = 0;
  std::string key;
  std::string value;
};

std::vector<ConfigEntry> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::vector<ConfigEntry> out;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto hash = text.find('#');
    if (hash != std::string::npos) text.resize(hash);
    text = trim(text);
    if (text.empty() || text.front() == '[') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(line) + ": expected key = value");
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw UsageError(path + ":" + std::to_string(line) + ": empty key");
    std::replace(key.begin(), key.end(), '_', '-');
    out.push_back({line, key, value});
  }
  return out;
}

void apply_config(CLI::App& app, CLI::App& sub, const std::string& path) {
  for (const auto& e : read_config(path)) {
    const std::string where = path + ":" + std::to_string(e.line) + ": ";
    CLI::Option* opt = sub.get_option_no_throw("--" + e.key);
    if (!opt) opt = app.get_option_no_throw("--" + e.key);
    if (!opt || e.key == "config") throw UsageError(where + "unknown key '" + e.key + "' for " + sub.get_name());
    if (opt->count() > 0) continue;  // the command line wins
    try {
      opt->add_result(e.value);
      opt->run_callback();
    } catch (const CLI::Error& err) {
      throw UsageError(where + "bad value for '" + e.key + "': " + err.what());
    }
  }
}

int threads_from_env() {
  const char* env = std::getenv("TERNARY_MASS_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) throw UsageError("TERNARY_MASS_THREADS must be an integer in [1, 1024]");
  return static_cast<int>(v);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Ternary forms, class numbers, Siegel densities and twisted L-values"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--output,-o", s.output, "write the table to PATH instead of stdout");
  app.add_option("--threads,-j", s.threads, "worker threads (default $TERNARY_MASS_THREADS or 1)");
  app.add_option("--config", s.config, "key = value file; command-line flags take precedence");

  auto range_n = [&](CLI::App* c) {
    c->add_option("--nmin", s.nmin, "smallest n")->capture_default_str();
    c->add_option("--nmax", s.nmax, "largest n")->capture_default_str();
    c->add_option_function<i64>("--n", [&](const i64& n) { s.nmin = s.nmax = n; }, "a single n");
    c->add_flag("--squarefree", s.squarefree, "keep squarefree n only");
  };
  auto range_d = [&](CLI::App* c) {
    c->add_option("--dmin", s.dmin, "most negative discriminant")->capture_default_str();
    c->add_option("--dmax", s.dmax, "least negative discriminant")->capture_default_str();
    c->add_option_function<i64>("--d", [&](const i64& d) { s.dmin = s.dmax = d; }, "a single discriminant");
  };
  auto form_opts = [&](CLI::App* c) {
    c->add_option("--form", s.form, "three-squares, ramanujan-ten, ramanujan-ten-partner, spinor-first, spinor-second");
    c->add_option("--coeffs", s.coeffs, "a,b,c,yz,xz,xy of a x^2 + b y^2 + c z^2 + yz + xz + xy (cross terms even)");
  };
  auto genus_opt = [&](CLI::App* c) {
    c->add_option("--genus", s.genus, "three-squares or ramanujan-ten")->capture_default_str();
  };
  auto newform_opts = [&](CLI::App* c) {
    c->add_option("--coefficients", s.coefficients, "number of newform coefficients (default: as needed)");
    c->add_option("--inject-bad-coefficient", s.inject, "corrupt a(n) before validation")->group("");
  };

  std::map<std::string, std::function<Table(const Settings&)>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, std::function<Table(const Settings&)> fn) {
    handlers[name] = std::move(fn);
    return app.add_subcommand(name, help);
  };

  auto* classno = sub("classno", "class numbers and L(1) by two methods", cmd_classno);
  range_d(classno);

  auto* rep = sub("rep", "representation numbers r(n) and r*(n)", cmd_rep);
  range_n(rep);
  form_opts(rep);

  auto* aut = sub("automorphs", "proper automorph counts", cmd_automorphs);
  form_opts(aut);

  auto* dens = sub("densities", "local densities, closed form against counting", cmd_densities);
  genus_opt(dens);
  range_n(dens);
  dens->add_option("--pmax", s.pmax, "largest prime")->capture_default_str();

  auto* mass = sub("mass", "mass identity and Siegel product", cmd_mass);
  genus_opt(mass);
  range_n(mass);
  mass->add_flag("--product", s.product, "add the truncated Euler product columns");
  mass->add_option("--truncation", s.truncation, "Euler product truncation P")->capture_default_str();

  auto* rq = sub("real-quadratic", "sums of three squares in Z[sqrt m]", cmd_real_quadratic);
  range_n(rq);
  rq->add_option("--m", s.m, "squarefree m = 2, 3 mod 4")->capture_default_str();
  rq->add_option("--b", s.b, "sqrt(m) part of the target")->capture_default_str();

  auto* lv = sub("lvalue", "central values L(1/2, f x chi_D)", cmd_lvalue);
  range_d(lv);
  newform_opts(lv);
  lv->add_option("--kernel", s.kernel, "exponential or gaussian")->capture_default_str();
  lv->add_option("--cutoff", s.cutoff, "cutoff X of the approximate functional equation")->capture_default_str();

  auto* wald = sub("waldspurger", "(r*(n,Q) - r*(n,Q'))^2 against sqrt(n) L(1/2)", cmd_waldspurger);
  range_n(wald);
  newform_opts(wald);

  auto* ampl = sub("amplify-demo", "character sums, amplified moment and shifted convolution", cmd_amplify);
  ampl->add_option("--q", s.q, "prime modulus")->capture_default_str();
  ampl->add_option("--x", s.x, "weight support [x, 4x] (default q)");
  ampl->add_option("--length", s.length, "amplifier length L")->capture_default_str();
  ampl->add_option("--target", s.target, "target character index")->capture_default_str();
  ampl->add_option("--l1", s.l1, "first shift")->capture_default_str();
  ampl->add_option("--l2", s.l2, "second shift")->capture_default_str();
  newform_opts(ampl);

  auto* surv = sub("survey-error", "r*(n,Q) against the genus average", cmd_survey_error);
  genus_opt(surv);
  range_n(surv);

  try {
    s.threads = threads_from_env();
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    CLI::App* chosen = app.get_subcommands().front();
    if (!s.config.empty()) apply_config(app, *chosen, s.config);
    if (s.threads < 1 || s.threads > 1024) throw UsageError("--threads must lie in [1, 1024]");

    const Table table = handlers.at(chosen->get_name())(s);
    if (s.output.empty()) {
      table.write(out);
      out.flush();
    } else {
      std::ofstream file(s.output, std::ios::binary);
      if (!file) throw UsageError("cannot open '" + s.output + "' for writing");
      table.write(file);
      if (!file.flush()) throw UsageError("write to '" + s.output + "' failed");
    }
    return ok;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return ok;
    }
    err << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return usage;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << "\n";
    return integrity;
  } catch (const RangeError& e) {
    err << "range error: " << e.what() << "\n";
    return range;
  } catch (const std::out_of_range& e) {
    err << "range error: " << e.what() << "\n";
    return range;
  } catch (const std::overflow_error& e) {
    err << "range error: " << e.what() << "\n";
    return range;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return integrity;
  }
}

}  // namespace tqf::cli
