#ifndef BOSONIC_EXPERIMENTS_HPP
#define BOSONIC_EXPERIMENTS_HPP

// Reproducible sweeps and audits: beam-splitter entanglement generation,
// the N_A* solution curves, random-state bound audits and the non-Gaussian
// counterexample. Results come back as plain structs and as CSV tables.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "bosonic/bounds.hpp"
#include "bosonic/errors.hpp"
#include "bosonic/fock.hpp"
#include "bosonic/gaussian.hpp"
#include "bosonic/symplectic.hpp"
#include "bosonic/thermal_entropy.hpp"
#include "bosonic/tolerances.hpp"

namespace bosonic {

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<double, std::int64_t, std::string>;

/// Column-labelled table; floats are written with 17 significant digits.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw DimensionMismatch("table row has the wrong number of cells");
    rows.push_back(std::move(row));
  }

  double number(std::size_t row, const std::string& column) const {
    const auto it = std::find(columns.begin(), columns.end(), column);
    if (it == columns.end()) throw DomainError("no column '" + column + "'");
    const Cell& c = rows.at(row)[static_cast<std::size_t>(it - columns.begin())];
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    throw DomainError("column '" + column + "' is not numeric");
  }
};

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << '\n';
  }
}

namespace detail {

/// Run body(i) for i in [0, count) on up to `jobs` threads. Results must be
/// written to per-index slots; the first exception is rethrown.
template <class Body>
void parallel_for(std::size_t count, unsigned jobs, Body body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Seed of instance `index` in stream `stream` derived from a base seed.
inline std::uint64_t instance_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  return detail::splitmix64(detail::splitmix64(detail::splitmix64(base) ^ stream) ^ index);
}

// ---------------------------------------------------------------------------
// Beam-splitter entanglement generation

enum class InputFamily { fock_N0, fock_NN, squeezed_2s_vac, squeezed_sym, tmsv_direct };

inline std::string to_string(InputFamily f) {
  switch (f) {
    case InputFamily::fock_N0: return "fock_N0";
    case InputFamily::fock_NN: return "fock_NN";
    case InputFamily::squeezed_2s_vac: return "squeezed_2s_vac";
    case InputFamily::squeezed_sym: return "squeezed_sym";
    case InputFamily::tmsv_direct: return "tmsv_direct";
  }
  return "unknown";
}

inline InputFamily parse_input_family(const std::string& s) {
  for (auto f : {InputFamily::fock_N0, InputFamily::fock_NN, InputFamily::squeezed_2s_vac,
                 InputFamily::squeezed_sym, InputFamily::tmsv_direct}) {
    if (to_string(f) == s) return f;
  }
  throw DomainError("unknown input family '" + s + "'");
}

/// Single-mode squeezing s of |2s,0>|0> whose M_TN matches cosh(2 s*).
inline double linked_squeezing(double s_star) {
  return 0.25 * std::acosh(2.0 * std::cosh(2.0 * s_star) - 1.0);
}

struct SweepSpec {
  InputFamily family = InputFamily::fock_N0;
  /// Photon number N for the Fock families, s* for the squeezed families.
  std::vector<double> parameters;
  /// Truncation tolerance for the squeezed inputs.
  double max_tail = tol::kTruncation;
};

struct SweepRow {
  InputFamily family = InputFamily::fock_N0;
  double parameter = 0.0;
  double mtn_in = 0.0;
  double g_in = 0.0;
  double e_f = 0.0;
  double ratio = 0.0;
  std::size_t cutoff = 0;
  double tail_mass = 0.0;
};

struct BeamSplitterResult {
  FockPureState input;
  FockPureState output;
  double mtn_in = 0.0;
  double e_f = 0.0;
};

/// Pad both modes so that every total photon number of `in` fits after the
/// beam splitter, apply it and compute the output entanglement entropy.
inline BeamSplitterResult beam_splitter_entanglement(const FockPureState& in, double max_tail = tol::kTruncation) {
  if (in.modes() != 2) throw DomainError("beam-splitter sweep needs a two-mode input");
  const std::size_t top = in.max_level(0) + in.max_level(1) + 1;
  const std::size_t d = std::max({top, in.cutoffs()[0], in.cutoffs()[1]});
  FockPureState padded = with_cutoffs(in, {d, d});
  BeamSplitterResult r{padded, apply_beam_splitter_fock(padded, 0, 1), 0.0, 0.0};
  r.mtn_in = mtn_pure(r.input, max_tail);
  r.e_f = entanglement_entropy(r.output, Bipartition::split(1, 1), max_tail);
  return r;
}

inline SweepRow run_sweep_point(InputFamily family, double parameter, double max_tail = tol::kTruncation) {
  SweepRow row;
  row.family = family;
  row.parameter = parameter;
  const double half_tail = 0.5 * max_tail;
  auto fill_from = [&](const FockPureState& in) {
    const auto r = beam_splitter_entanglement(in, max_tail);
    row.mtn_in = r.mtn_in;
    row.e_f = r.e_f;
    row.cutoff = r.output.cutoffs()[0];
    row.tail_mass = r.output.tail_mass();
  };
  switch (family) {
    case InputFamily::fock_N0:
    case InputFamily::fock_NN: {
      if (!(parameter >= 0.0) || parameter != std::floor(parameter) || parameter > 5000.0) {
        throw DomainError("Fock families need an integer photon number in [0, 5000]");
      }
      const auto n = static_cast<std::size_t>(parameter);
      fill_from(fock_basis_state(family == InputFamily::fock_N0 ? Occupation{n, 0} : Occupation{n, n}));
      break;
    }
    case InputFamily::squeezed_2s_vac:
      fill_from(tensor(make_fock_squeezed(2.0 * linked_squeezing(parameter), 0.0, std::nullopt, half_tail),
                       fock_basis_state({0})));
      break;
    case InputFamily::squeezed_sym:
      fill_from(tensor(make_fock_squeezed(parameter, 0.0, std::nullopt, half_tail),
                       make_fock_squeezed(parameter, std::numbers::pi / 2.0, std::nullopt, half_tail)));
      break;
    case InputFamily::tmsv_direct: {
      const FockPureState tmsv = make_fock_tmsv(parameter, std::nullopt, max_tail);
      row.mtn_in = mtn_pure(tmsv, max_tail);
      row.e_f = entanglement_entropy(tmsv, Bipartition::split(1, 1), max_tail);
      row.cutoff = tmsv.cutoffs()[0];
      row.tail_mass = tmsv.tail_mass();
      break;
    }
  }
  row.g_in = g(std::max(0.0, 0.5 * (row.mtn_in - 1.0)));
  row.ratio = row.g_in > 0.0 ? row.e_f / row.g_in : 0.0;
  return row;
}

/// Default parameter grid of a family, spanning g_in up to about 6 for the
/// Fock families and as far as the squeezed truncation stays cheap.
inline std::vector<double> default_sweep_grid(InputFamily family) {
  std::vector<double> out;
  switch (family) {
    case InputFamily::fock_N0:
      for (double n : {0, 1, 2, 3, 4, 6, 8, 10, 15, 20, 30, 40, 60, 80, 120, 160, 240, 300}) out.push_back(n);
      break;
    case InputFamily::fock_NN:
      for (double n : {0, 1, 2, 3, 4, 5, 6, 8, 10, 15, 20, 30, 40, 60, 80, 100, 150}) out.push_back(n);
      break;
    case InputFamily::squeezed_2s_vac:
    case InputFamily::squeezed_sym:
      for (int i = 0; i <= 12; ++i) out.push_back(0.1 * i);
      break;
    case InputFamily::tmsv_direct:
      for (int i = 0; i <= 20; ++i) out.push_back(0.1 * i);
      break;
  }
  return out;
}

inline std::vector<SweepRow> run_fig1_right(const SweepSpec& spec, unsigned jobs = 1) {
  const auto grid = spec.parameters.empty() ? default_sweep_grid(spec.family) : spec.parameters;
  std::vector<SweepRow> rows(grid.size());
  detail::parallel_for(grid.size(), jobs,
                       [&](std::size_t i) { rows[i] = run_sweep_point(spec.family, grid[i], spec.max_tail); });
  return rows;
}

inline Table sweep_table(const std::vector<SweepRow>& rows) {
  Table t;
  t.columns = {"family", "parameter", "mtn_in", "g_in_nats", "e_f_nats", "ratio", "cutoff", "tail_mass"};
  for (const auto& r : rows) {
    t.add({to_string(r.family), r.parameter, r.mtn_in, r.g_in, r.e_f, r.ratio,
           static_cast<std::int64_t>(r.cutoff), r.tail_mass});
  }
  return t;
}

// ---------------------------------------------------------------------------
// N_A* curves

/// nu = N/n_A grid, log-spaced from 1 to 100.
inline std::vector<double> default_nu_grid(std::size_t points = 25) {
  std::vector<double> nu(points);
  for (std::size_t i = 0; i < points; ++i) {
    nu[i] = points == 1 ? 1.0 : std::pow(100.0, static_cast<double>(i) / static_cast<double>(points - 1));
  }
  return nu;
}

inline std::vector<double> default_mu_grid() { return {1.0, 2.0 / 3.0, 0.5, 1.0 / 3.0, 0.2, 0.1}; }

struct CurveSpec {
  double n_a = 3.0;
  std::vector<double> mu = default_mu_grid();
  std::vector<double> nu = default_nu_grid();
};

/// Per (mu, nu): F(N)/n_A from bisection, from the leading-order asymptotic
/// split, the large-M_TN logarithmic form, and the pure Gaussian bound g(nu/2).
inline Table run_fig1_left(const CurveSpec& spec) {
  Table t;
  t.columns = {"mu", "nu", "N", "n_A", "n_B", "F_bisection_per_nA", "F_eq8_per_nA", "F_log_asymptotic_per_nA",
               "gaussian_bound_per_nA"};
  for (double mu : spec.mu) {
    const double n_b = spec.n_a / mu;
    for (double nu : spec.nu) {
      const double N = nu * spec.n_a;
      const auto exact = solve_na_star(N, spec.n_a, n_b);
      const auto asym = na_star_asymptotic(N, spec.n_a, n_b, NAStarMethod::eq8);
      const double delta = na_star_delta(nu, mu, NAStarMethod::eq8);
      t.add({mu, nu, N, spec.n_a, n_b, exact.value() / spec.n_a, asym.value() / spec.n_a,
             std::log((1.0 - delta) * nu) + 1.0, g(0.5 * nu)});
    }
  }
  return t;
}

/// Per (mu, nu): nu* = N_A*/n_A for bisection and both asymptotic forms.
inline Table run_fig2(const CurveSpec& spec) {
  Table t;
  t.columns = {"mu", "nu", "nu_star_bisection", "nu_star_eq8", "nu_star_appB", "residual_bisection",
               "rel_err_eq8", "rel_err_appB"};
  for (double mu : spec.mu) {
    const double n_b = spec.n_a / mu;
    for (double nu : spec.nu) {
      const double N = nu * spec.n_a;
      const auto exact = solve_na_star(N, spec.n_a, n_b);
      const auto e8 = na_star_asymptotic(N, spec.n_a, n_b, NAStarMethod::eq8);
      const auto ab = na_star_asymptotic(N, spec.n_a, n_b, NAStarMethod::appb);
      const double x = exact.na_star / spec.n_a;
      const double y8 = e8.na_star / spec.n_a, yb = ab.na_star / spec.n_a;
      t.add({mu, nu, x, y8, yb, exact.residual, std::abs(y8 - x) / x, std::abs(yb - x) / x});
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Random-state audit

struct AuditSpec {
  std::uint64_t seed = 1;
  std::size_t gaussian_states = 10000;
  std::vector<std::size_t> gaussian_modes = {2, 3, 4};
  std::size_t fock_states = 1000;
  std::vector<std::size_t> fock_modes = {2, 3};
  /// Per-mode cutoff of random Fock states; 0 picks 12 for two modes and 6 otherwise.
  std::size_t fock_cutoff = 0;
  std::size_t classical_states = 1000;
  unsigned jobs = 1;
  double check_tolerance = tol::kCheck;
  std::size_t histogram_bins = 10;
};

struct AuditViolation {
  std::string check;
  std::uint64_t seed = 0;
  std::size_t index = 0;
  std::size_t modes = 0;
  std::size_t n_a = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct AuditCheckSummary {
  std::string check;
  std::size_t evaluated = 0;
  std::size_t violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  double max_margin = -std::numeric_limits<double>::infinity();
  /// Instance with the smallest margin.
  std::uint64_t tightest_seed = 0;
  std::size_t tightest_modes = 0;
  std::size_t tightest_n_a = 0;
  /// Equal-width bins on [min_margin, max_margin].
  std::vector<std::size_t> histogram;
};

struct AuditReport {
  std::uint64_t seed = 0;
  std::vector<AuditCheckSummary> checks;
  std::vector<AuditViolation> violations;
  bool passed() const { return violations.empty(); }
};

namespace detail {

struct AuditSample {
  std::string check;
  std::uint64_t seed;
  std::size_t modes;
  std::size_t n_a;
  BoundCheck result;
};

/// Random pure state on `modes` modes with cutoff d: complex Gaussian
/// amplitudes with a random exponential envelope in the total photon number.
template <class Rng>
FockPureState random_fock_state(std::size_t modes, std::size_t d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.5);
  const double decay = unif(rng);
  FockShape shape(std::vector<std::size_t>(modes, d));
  CVector amps(static_cast<Eigen::Index>(shape.size()));
  for (std::size_t f = 0; f < shape.size(); ++f) {
    std::size_t total = 0;
    for (std::size_t m = 0; m < modes; ++m) total += shape.level(f, m);
    const double env = std::exp(-0.5 * decay * static_cast<double>(total));
    const double re = normal(rng), im = normal(rng);
    amps(static_cast<Eigen::Index>(f)) = Complex(re, im) * env;
  }
  amps /= amps.norm();
  return FockPureState(std::move(shape), std::move(amps));
}

inline void gaussian_instance(std::size_t n, std::uint64_t seed, double ctol, std::vector<AuditSample>& out) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  PurityProfile profile;
  profile.pure = unif(rng) < 0.25;
  profile.rate = 0.3 + 3.0 * unif(rng);
  profile.max_squeezing = 2.0 * unif(rng);
  const GaussianState st = random_gaussian_state(n, rng, profile);
  const double c2 = qcs2_gaussian(st);
  for (std::size_t na = 1; na < n; ++na) {
    const auto bp = Bipartition::split(na, n - na);
    const auto en = log_negativity_gaussian(st, bp);
    out.push_back({en.n_minus ? "theorem2" : "theorem2_no_negativity", seed, n, na,
                   theorem2_bound(en.value, c2, n, en.n_minus, ctol)});
    const auto c2r = corollary2_checks(c2, en.value, n, ctol);
    if (c2r.strong_entanglement_applies) out.push_back({"corollary2_strong", seed, n, na, c2r.strong_entanglement});
    if (c2r.small_qcs_applies) out.push_back({"corollary2_small_qcs", seed, n, na, c2r.small_qcs});
    if (n == 2 && en.value > 0.0) {
      out.push_back({"twomode_refined", seed, n, na,
                     theorem2_twomode_refined(c2, en.value, st.cov().determinant(), ctol)});
    }
    if (profile.pure) {
      // For pure states M_TN = Tr V / (2n) and E_F is the reduced entropy.
      const double mtn = st.cov().trace() / (2.0 * static_cast<double>(n));
      const double ef = entanglement_entropy_gaussian(st, bp);
      out.push_back({"gaussian_pure_bound", seed, n, na,
                     make_check(ef, gaussian_pure_bound(mtn, na, n - na), "E_F <= Gaussian pure bound", ctol)});
      out.push_back({"theorem1prime_gaussian", seed, n, na,
                     make_check(ef, theorem1prime_bound(mtn, na, n - na), "E_F <= n_A g(N_A*/n_A)", ctol)});
    }
  }
}

inline void classical_instance(std::size_t n, std::uint64_t seed, double ctol, std::vector<AuditSample>& out) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.1, 2.0);
  const GaussianState st = random_classical_gaussian_state(n, rng, unif(rng));
  out.push_back({"classical_qcs2_le_1", seed, n, 0, make_check(qcs2_gaussian(st), 1.0, "C^2 <= 1", ctol)});
  for (std::size_t na = 1; na < n; ++na) {
    const auto en = log_negativity_gaussian(st, Bipartition::split(na, n - na));
    out.push_back({"classical_separable", seed, n, na, make_check(en.value, 0.0, "E_N = 0", ctol)});
  }
}

inline void fock_instance(std::size_t n, std::size_t d, std::uint64_t seed, double ctol,
                          std::vector<AuditSample>& out) {
  std::mt19937_64 rng(seed);
  const FockPureState psi = random_fock_state(n, d, rng);
  const double mtn = mtn_pure(psi);
  for (std::size_t na = 1; na < n; ++na) {
    const double ef = entanglement_entropy(psi, Bipartition::split(na, n - na));
    if (2 * na == n) {
      out.push_back({"theorem1", seed, n, na, make_check(ef, theorem1_bound(mtn, n), "E_F <= (n/2) g((M_TN-1)/2)", ctol)});
    }
    out.push_back({"theorem1prime", seed, n, na,
                   make_check(ef, theorem1prime_bound(mtn, na, n - na), "E_F <= n_A g(N_A*/n_A)", ctol)});
    if (const auto lower = corollary1_lower_mtn(ef, n)) {
      out.push_back({"corollary1", seed, n, na, make_check(*lower, mtn, "M_TN >= 1 + 2 e^{(2/n)E_F - 2}", ctol)});
    }
  }
}

}  // namespace detail

/// Sample random Gaussian, classical-control and pure Fock states and check
/// every applicable bound. Each instance has its own seed derived from
/// (spec.seed, stream, index), so results do not depend on `jobs`.
inline AuditReport run_random_audit(const AuditSpec& spec) {
  struct Task {
    int kind;  // 0 Gaussian, 1 classical, 2 Fock
    std::size_t n;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t n : spec.gaussian_modes) {
    if (n < 2 || n > 6) throw DomainError("Gaussian audit supports 2..6 modes");
    for (std::size_t i = 0; i < spec.gaussian_states; ++i) tasks.push_back({0, n, instance_seed(spec.seed, 100 + n, i)});
    for (std::size_t i = 0; i < spec.classical_states; ++i) tasks.push_back({1, n, instance_seed(spec.seed, 200 + n, i)});
  }
  for (std::size_t n : spec.fock_modes) {
    if (n < 2 || n > 4) throw DomainError("Fock audit supports 2..4 modes");
    for (std::size_t i = 0; i < spec.fock_states; ++i) tasks.push_back({2, n, instance_seed(spec.seed, 300 + n, i)});
  }
  std::vector<std::vector<detail::AuditSample>> samples(tasks.size());
  detail::parallel_for(tasks.size(), spec.jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    switch (t.kind) {
      case 0: detail::gaussian_instance(t.n, t.seed, spec.check_tolerance, samples[i]); break;
      case 1: detail::classical_instance(t.n, t.seed, spec.check_tolerance, samples[i]); break;
      default: {
        const std::size_t d = spec.fock_cutoff ? spec.fock_cutoff : (t.n == 2 ? 12 : 6);
        detail::fock_instance(t.n, d, t.seed, spec.check_tolerance, samples[i]);
      }
    }
  });

  AuditReport report;
  report.seed = spec.seed;
  std::map<std::string, std::size_t> slot;
  std::vector<std::vector<double>> margins;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    for (const auto& s : samples[i]) {
      auto [it, fresh] = slot.try_emplace(s.check, report.checks.size());
      if (fresh) {
        report.checks.push_back({});
        report.checks.back().check = s.check;
        margins.emplace_back();
      }
      AuditCheckSummary& c = report.checks[it->second];
      ++c.evaluated;
      margins[it->second].push_back(s.result.margin);
      c.max_margin = std::max(c.max_margin, s.result.margin);
      if (s.result.margin < c.min_margin) {
        c.min_margin = s.result.margin;
        c.tightest_seed = s.seed;
        c.tightest_modes = s.modes;
        c.tightest_n_a = s.n_a;
      }
      if (!s.result.holds) {
        ++c.violations;
        report.violations.push_back({s.check, s.seed, i, s.modes, s.n_a, s.result.lhs, s.result.rhs});
      }
    }
  }
  const std::size_t bins = std::max<std::size_t>(spec.histogram_bins, 1);
  for (std::size_t k = 0; k < report.checks.size(); ++k) {
    AuditCheckSummary& c = report.checks[k];
    c.histogram.assign(bins, 0);
    const double width = (c.max_margin - c.min_margin) / static_cast<double>(bins);
    for (double m : margins[k]) {
      std::size_t b = width > 0.0 ? static_cast<std::size_t>((m - c.min_margin) / width) : 0;
      c.histogram[std::min(b, bins - 1)]++;
    }
  }
  return report;
}

inline Table audit_table(const AuditReport& r) {
  Table t;
  t.columns = {"check", "evaluated", "violations", "min_margin", "max_margin", "tightest_seed", "tightest_modes",
               "tightest_n_A"};
  for (const auto& c : r.checks) {
    t.add({c.check, static_cast<std::int64_t>(c.evaluated), static_cast<std::int64_t>(c.violations), c.min_margin,
           c.max_margin, std::to_string(c.tightest_seed), static_cast<std::int64_t>(c.tightest_modes),
           static_cast<std::int64_t>(c.tightest_n_a)});
  }
  return t;
}

// ---------------------------------------------------------------------------
// Non-Gaussian counterexample

struct AppendixCReport {
  double q = 0.0;
  std::size_t k = 0;
  double mean_photons_q = 0.0;
  double mtn_q = 0.0;
  double mtn_prime = 0.0;
  /// M_TN(psi') - M_TN(psi_q) measured, and (2/3)(1-q) q^k (1-k) predicted.
  double mtn_shift = 0.0;
  double mtn_shift_predicted = 0.0;
  double e_f = 0.0;
  double gaussian_bound = 0.0;
  double theorem1prime_bound = 0.0;
  bool gaussian_bound_violated = false;
  bool theorem1prime_holds = false;
  double tail_mass = 0.0;
};

inline AppendixCReport run_appendix_c_demo(double q, std::size_t k, double max_tail = tol::kTruncation) {
  const auto st = appendix_c_state(q, k, std::nullopt, max_tail);
  AppendixCReport r;
  r.q = q;
  r.k = k;
  r.mean_photons_q = mean_photon_number(st.psi_q);
  r.mtn_q = mtn_pure(st.psi_q, max_tail);
  r.mtn_prime = mtn_pure(st.psi_prime, max_tail);
  r.mtn_shift = r.mtn_prime - r.mtn_q;
  r.mtn_shift_predicted = (2.0 / 3.0) * (1.0 - q) * std::pow(q, static_cast<double>(k)) * (1.0 - static_cast<double>(k));
  r.e_f = entanglement_entropy(st.psi_prime, Bipartition::split(1, 2), max_tail);
  r.gaussian_bound = gaussian_pure_bound(r.mtn_prime, 1, 2);
  r.theorem1prime_bound = bosonic::theorem1prime_bound(r.mtn_prime, 1, 2);
  r.gaussian_bound_violated = r.e_f > r.gaussian_bound;
  r.theorem1prime_holds = r.e_f <= r.theorem1prime_bound + tol::kCheck;
  r.tail_mass = st.psi_prime.tail_mass();
  return r;
}

}  // namespace bosonic

#endif  // BOSONIC_EXPERIMENTS_HPP
