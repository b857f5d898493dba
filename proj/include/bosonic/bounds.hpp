#ifndef BOSONIC_BOUNDS_HPP
#define BOSONIC_BOUNDS_HPP

// Entanglement bounds in terms of optical nonclassicality: the symmetric and
// asymmetric entanglement-of-formation bounds, the implicit equation for the
// optimal photon split N_A*, and the Gaussian negativity bounds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "bosonic/errors.hpp"
#include "bosonic/gaussian.hpp"
#include "bosonic/symplectic.hpp"
#include "bosonic/thermal_entropy.hpp"
#include "bosonic/tolerances.hpp"

namespace bosonic {

/// One side-by-side comparison lhs <= rhs.
struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool holds = true;
  bool saturated = false;
  std::string provenance;
};

inline BoundCheck make_check(double lhs, double rhs, std::string provenance, double check_tol = tol::kCheck,
                             double saturation_tol = tol::kSaturation) {
  BoundCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = rhs - lhs;
  c.holds = c.margin >= -check_tol;
  c.saturated = c.holds && std::abs(c.margin) <= saturation_tol;
  c.provenance = std::move(provenance);
  return c;
}

// ---------------------------------------------------------------------------
// Entanglement of formation vs. monotone of total noise

/// (n/2) g((mtn - 1)/2), the bound for n_A = n_B = n/2.
inline double theorem1_bound(double mtn, std::size_t n) {
  if (n == 0 || n % 2 != 0) throw DomainError("symmetric bound needs an even, positive mode count");
  if (!(mtn >= 1.0 - tol::kCheck)) throw DomainError("M_TN must be >= 1");
  return 0.5 * static_cast<double>(n) * g(std::max(0.0, 0.5 * (mtn - 1.0)));
}

/// Lower bound on M_TN implied by a large entanglement of formation:
/// 1 + 2 exp((2/n) E_F - 2), asserted only when E_F >= (3/2)(n/2).
inline std::optional<double> corollary1_lower_mtn(double e_f, std::size_t n) {
  if (n == 0) throw DomainError("mode count must be positive");
  const double half = 0.5 * static_cast<double>(n);
  if (!(e_f >= 1.5 * half)) return std::nullopt;
  return 1.0 + 2.0 * std::exp(e_f / half - 2.0);
}

enum class NAStarMethod { bisection, eq8, appb };

inline std::string_view to_string(NAStarMethod m) {
  switch (m) {
    case NAStarMethod::bisection: return "bisection";
    case NAStarMethod::eq8: return "asymptotic-eq8";
    case NAStarMethod::appb: return "asymptotic-appB";
  }
  return "unknown";
}

inline NAStarMethod parse_na_star_method(std::string_view s) {
  if (s == "bisection") return NAStarMethod::bisection;
  if (s == "eq8" || s == "asymptotic-eq8") return NAStarMethod::eq8;
  if (s == "appB" || s == "appb" || s == "asymptotic-appB") return NAStarMethod::appb;
  throw DomainError("unknown N_A* method '" + std::string(s) + "'");
}

/// Optimal split N = N_A* + N_B* of the photon budget between the parties.
struct NAStarSolution {
  double N = 0.0;
  double n_a = 0.0;
  double n_b = 0.0;
  double na_star = 0.0;
  /// |n_A g(N_A*/n_A) - n_B g((N - N_A*)/n_B)|.
  double residual = 0.0;
  NAStarMethod method = NAStarMethod::bisection;
  int iterations = 0;
  /// Set for the asymptotic forms when nu = N/n_A < 10.
  bool low_nu_warning = false;

  double nb_star() const { return N - na_star; }
  /// F(N) = n_A g(N_A*/n_A), with N_A* clamped to [0, N].
  double value() const { return n_a * g(std::clamp(na_star, 0.0, N) / n_a); }
};

namespace detail {

inline void check_na_star_args(double N, double n_a, double n_b) {
  if (!(N >= 0.0) || !std::isfinite(N)) throw DomainError("photon number N must be finite and >= 0");
  if (!(n_a > 0.0) || !(n_b > 0.0)) throw DomainError("mode counts must be positive");
  if (n_a > n_b) throw DomainError("need n_A <= n_B");
}

inline double na_star_residual(double N, double n_a, double n_b, double na) {
  return std::abs(n_a * g(na / n_a) - n_b * g(std::max(0.0, N - na) / n_b));
}

}  // namespace detail

/// Solve n_A g(N_A/n_A) = n_B g((N - N_A)/n_B) for N_A in [0, N] by bisection.
/// The left side increases and the right side decreases in N_A, so the root
/// is unique. Mode counts may be non-integer (rescaled problems).
inline NAStarSolution solve_na_star(double N, double n_a, double n_b) {
  detail::check_na_star_args(N, n_a, n_b);
  NAStarSolution sol;
  sol.N = N;
  sol.n_a = n_a;
  sol.n_b = n_b;
  sol.method = NAStarMethod::bisection;
  if (N == 0.0) return sol;
  if (n_a == n_b) {
    sol.na_star = 0.5 * N;
    return sol;
  }
  auto h = [&](double x) { return n_a * g(x / n_a) - n_b * g(std::max(0.0, N - x) / n_b); };
  double lo = 0.0, hi = N;
  if (!(h(lo) <= 0.0 && h(hi) >= 0.0)) throw Error("N_A* bracket failure");
  int it = 0;
  for (; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (h(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  sol.na_star = std::abs(h(lo)) <= std::abs(h(hi)) ? lo : hi;
  sol.iterations = it;
  sol.residual = detail::na_star_residual(N, n_a, n_b, sol.na_star);
  return sol;
}

/// Fraction delta in N_A* ~= (1 - delta) N for large nu = N / n_A, mu = n_A / n_B.
inline double na_star_delta(double nu, double mu, NAStarMethod variant) {
  if (!(nu > 0.0) || !(mu > 0.0 && mu <= 1.0)) throw DomainError("need nu > 0 and 0 < mu <= 1");
  if (mu == 1.0) return 0.5;
  switch (variant) {
    case NAStarMethod::eq8: {
      const double q = std::pow(std::numbers::e * nu, mu - 1.0);
      return q / (mu * (1.0 + q));
    }
    case NAStarMethod::appb: {
      const double corr = 1.0 - std::exp(1.0 - mu) / (2.0 * std::pow(nu, mu));
      return corr / (mu * (std::pow(std::numbers::e * nu, 1.0 - mu) + 1.0));
    }
    case NAStarMethod::bisection: break;
  }
  throw DomainError("delta is defined for the asymptotic variants only");
}

/// Closed-form large-N approximation of N_A*.
inline NAStarSolution na_star_asymptotic(double N, double n_a, double n_b, NAStarMethod variant) {
  detail::check_na_star_args(N, n_a, n_b);
  if (variant == NAStarMethod::bisection) return solve_na_star(N, n_a, n_b);
  NAStarSolution sol;
  sol.N = N;
  sol.n_a = n_a;
  sol.n_b = n_b;
  sol.method = variant;
  const double nu = N / n_a;
  sol.low_nu_warning = nu < 10.0;
  if (N == 0.0) return sol;
  const double delta = na_star_delta(nu, n_a / n_b, variant);
  // Raw closed form; it leaves [0, N] when delta > 1 (small nu and mu).
  sol.na_star = (1.0 - delta) * N;
  sol.residual = detail::na_star_residual(N, n_a, n_b, std::clamp(sol.na_star, 0.0, N));
  return sol;
}

/// F(N) = n_A g(N_A*(N)/n_A), the asymmetric bound at photon budget N.
inline double eof_of_photon_budget(double N, double n_a, double n_b) {
  return solve_na_star(N, n_a, n_b).value();
}

/// n_A g(N_A*(N)/n_A) with N = (n/2)(mtn - 1).
inline double theorem1prime_bound(double mtn, std::size_t n_a, std::size_t n_b) {
  if (n_a == 0 || n_b == 0) throw DomainError("mode counts must be positive");
  if (!(mtn >= 1.0 - tol::kCheck)) throw DomainError("M_TN must be >= 1");
  const std::size_t lo = std::min(n_a, n_b), hi = std::max(n_a, n_b);
  const double N = 0.5 * static_cast<double>(n_a + n_b) * std::max(0.0, mtn - 1.0);
  return eof_of_photon_budget(N, static_cast<double>(lo), static_cast<double>(hi));
}

struct AsymptoticBound {
  double value = 0.0;
  bool low_nu_warning = false;
};

/// Large-M_TN form n_A ln((1 - delta) N / n_A) + n_A with delta from the
/// leading-order asymptotics of N_A*.
inline AsymptoticBound eofvsmtn_asymptotic(double mtn, std::size_t n_a, std::size_t n_b) {
  if (n_a == 0 || n_b == 0) throw DomainError("mode counts must be positive");
  if (!(mtn > 1.0)) throw DomainError("asymptotic bound diverges for M_TN <= 1");
  const double lo = static_cast<double>(std::min(n_a, n_b));
  const double hi = static_cast<double>(std::max(n_a, n_b));
  const double N = 0.5 * (lo + hi) * (mtn - 1.0);
  const double nu = N / lo;
  const double delta = na_star_delta(nu, lo / hi, NAStarMethod::eq8);
  return {lo * std::log((1.0 - delta) * nu) + lo, nu < 10.0};
}

/// Bound for pure Gaussian states, n_A g((n / (4 n_A)) (mtn - 1)).
inline double gaussian_pure_bound(double mtn, std::size_t n_a, std::size_t n_b) {
  if (n_a == 0 || n_b == 0) throw DomainError("mode counts must be positive");
  if (!(mtn >= 1.0 - tol::kCheck)) throw DomainError("M_TN must be >= 1");
  const double lo = static_cast<double>(std::min(n_a, n_b));
  const double n = static_cast<double>(n_a + n_b);
  return lo * g(std::max(0.0, n / (4.0 * lo) * (mtn - 1.0)));
}

// ---------------------------------------------------------------------------
// Logarithmic negativity vs. quadrature coherence scale (Gaussian states)

/// E_N <= n_-(ln C^2 + ln(n / n_-)). With n_- = 0 the check is E_N <= 0.
inline BoundCheck theorem2_bound(double e_n, double qcs2, std::size_t n, std::size_t n_minus,
                                 double check_tol = tol::kCheck) {
  if (n == 0) throw DomainError("mode count must be positive");
  if (n_minus == 0) return make_check(e_n, 0.0, "E_N <= n_-(ln C^2 + ln(n/n_-)), n_- = 0", check_tol);
  if (!(qcs2 > 0.0)) throw DomainError("C^2 must be positive");
  const double nm = static_cast<double>(n_minus);
  return make_check(e_n, nm * (std::log(qcs2) + std::log(static_cast<double>(n) / nm)),
                    "E_N <= n_-(ln C^2 + ln(n/n_-))", check_tol);
}

/// Two-mode refinement C^2 >= (e^{E_N} + e^{-E_N} / sqrt(det V)) / 2, reported
/// as lhs = right-hand side value, rhs = C^2.
inline BoundCheck theorem2_twomode_refined(double qcs2, double e_n, double det_v,
                                           double check_tol = tol::kCheck) {
  if (!(e_n > 0.0)) throw DomainError("two-mode refined bound applies only to entangled states (E_N > 0)");
  if (!(det_v > 0.0)) throw DomainError("det V must be positive");
  const double lower = 0.5 * (std::exp(e_n) + std::exp(-e_n) / std::sqrt(det_v));
  return make_check(lower, qcs2, "C^2 >= (e^{E_N} + e^{-E_N}/sqrt(det V))/2", check_tol);
}

struct RefinedTwoModeCheck {
  BoundCheck check;
  /// Tr V~^{-1} and Str V~^{-1}; the bound is tight when they coincide.
  double trace_inverse_pt = 0.0;
  double strace_inverse_pt = 0.0;
  bool trace_equals_strace = false;
};

inline RefinedTwoModeCheck theorem2_twomode_refined(const GaussianState& st, double check_tol = tol::kCheck) {
  if (st.modes() != 2) throw DomainError("two-mode refined bound needs a two-mode state");
  const auto bp = Bipartition::split(1, 1);
  const auto en = log_negativity_gaussian(st, bp);
  RefinedTwoModeCheck out;
  out.check = theorem2_twomode_refined(qcs2_gaussian(st), en.value, st.cov().determinant(), check_tol);
  const CovarianceMatrix pt = partial_transpose(st.cov(), bp);
  const Matrix inv = pt.matrix().inverse();
  out.trace_inverse_pt = inv.trace();
  double s = 0.0;
  for (double nu : symplectic_eigenvalues(pt)) s += 2.0 / nu;
  out.strace_inverse_pt = s;
  out.trace_equals_strace = std::abs(out.trace_inverse_pt - out.strace_inverse_pt) <= tol::kSaturation;
  return out;
}

struct Corollary2Report {
  /// E_N > n/e implies ln C^2 >= E_N / n - 1/e.
  bool strong_entanglement_applies = false;
  BoundCheck strong_entanglement;
  /// C^2 < e^{-n/e} implies E_N = 0.
  bool small_qcs_applies = false;
  BoundCheck small_qcs;
  bool holds() const { return strong_entanglement.holds && small_qcs.holds; }
};

inline Corollary2Report corollary2_checks(double qcs2, double e_n, std::size_t n, double check_tol = tol::kCheck) {
  if (n == 0) throw DomainError("mode count must be positive");
  if (!(qcs2 > 0.0)) throw DomainError("C^2 must be positive");
  const double dn = static_cast<double>(n);
  Corollary2Report r;
  r.strong_entanglement_applies = e_n > dn / std::numbers::e;
  if (r.strong_entanglement_applies) {
    r.strong_entanglement = make_check(e_n / dn - 1.0 / std::numbers::e, std::log(qcs2),
                                       "ln C^2 >= E_N/n - 1/e when E_N > n/e", check_tol);
  } else {
    r.strong_entanglement = make_check(0.0, 0.0, "ln C^2 >= E_N/n - 1/e (not applicable)", check_tol);
    r.strong_entanglement.saturated = false;
  }
  r.small_qcs_applies = qcs2 < std::exp(-dn / std::numbers::e);
  if (r.small_qcs_applies) {
    r.small_qcs = make_check(e_n, 0.0, "C^2 < e^{-n/e} implies E_N = 0", check_tol);
  } else {
    r.small_qcs = make_check(0.0, 0.0, "C^2 < e^{-n/e} implies E_N = 0 (not applicable)", check_tol);
    r.small_qcs.saturated = false;
  }
  return r;
}

}  // namespace bosonic

#endif  // BOSONIC_BOUNDS_HPP
