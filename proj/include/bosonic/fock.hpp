#ifndef BOSONIC_FOCK_HPP
#define BOSONIC_FOCK_HPP

// Truncated multimode Fock space.
//
// A state on n modes with cutoffs (d_1, ..., d_n) stores amplitudes for the
// occupations 0 <= k_i < d_i, flattened row-major (mode 0 most significant).
// Truncated states are not renormalised; the missing probability is kept as
// `tail_mass` and every measure normalises by the stored norm.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <Eigen/Sparse>

#include "bosonic/errors.hpp"
#include "bosonic/symplectic.hpp"
#include "bosonic/tolerances.hpp"

namespace bosonic {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Occupation = std::vector<std::size_t>;

/// Per-mode cutoffs and the row-major index map they induce.
class FockShape {
 public:
  FockShape() = default;

  explicit FockShape(std::vector<std::size_t> cutoffs) : cutoffs_(std::move(cutoffs)) {
    if (cutoffs_.empty()) throw DomainError("Fock space needs at least one mode");
    strides_.assign(cutoffs_.size(), 1);
    size_ = 1;
    for (std::size_t m = cutoffs_.size(); m-- > 0;) {
      if (cutoffs_[m] == 0) throw DomainError("Fock cutoffs must be >= 1");
      strides_[m] = size_;
      size_ *= cutoffs_[m];
    }
  }

  std::size_t modes() const noexcept { return cutoffs_.size(); }
  std::size_t size() const noexcept { return size_; }
  std::size_t cutoff(std::size_t mode) const { return cutoffs_.at(mode); }
  std::size_t stride(std::size_t mode) const { return strides_.at(mode); }
  const std::vector<std::size_t>& cutoffs() const noexcept { return cutoffs_; }

  std::size_t level(std::size_t flat, std::size_t mode) const {
    return (flat / strides_[mode]) % cutoffs_[mode];
  }

  std::size_t index(std::span<const std::size_t> occ) const {
    if (occ.size() != cutoffs_.size()) throw DimensionMismatch("occupation has wrong length");
    std::size_t f = 0;
    for (std::size_t m = 0; m < occ.size(); ++m) {
      if (occ[m] >= cutoffs_[m]) {
        throw CutoffOverflow("occupation " + std::to_string(occ[m]) + " on mode " +
                             std::to_string(m) + " exceeds cutoff " + std::to_string(cutoffs_[m]));
      }
      f += occ[m] * strides_[m];
    }
    return f;
  }

  Occupation occupation(std::size_t flat) const {
    Occupation occ(cutoffs_.size());
    for (std::size_t m = 0; m < cutoffs_.size(); ++m) occ[m] = level(flat, m);
    return occ;
  }

  friend bool operator==(const FockShape& a, const FockShape& b) { return a.cutoffs_ == b.cutoffs_; }

 private:
  std::vector<std::size_t> cutoffs_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

/// Pure state on a truncated multimode Fock space.
class FockPureState {
 public:
  /// Roundoff allowance on the squared norm of a computed state.
  static constexpr double kNormSlack = 1e-10;

  FockPureState(FockShape shape, CVector amps) : shape_(std::move(shape)), amps_(std::move(amps)) {
    if (static_cast<std::size_t>(amps_.size()) != shape_.size()) {
      throw DimensionMismatch("amplitude vector has " + std::to_string(amps_.size()) +
                              " entries, shape needs " + std::to_string(shape_.size()));
    }
    if (!amps_.allFinite()) throw DomainError("amplitudes must be finite");
    const double norm2 = amps_.squaredNorm();
    if (norm2 > 1.0 + kNormSlack) {
      throw DomainError("amplitudes have squared norm " + std::to_string(norm2) + " > 1");
    }
    if (norm2 == 0.0) throw DomainError("amplitudes are all zero");
    tail_mass_ = std::max(0.0, 1.0 - norm2);
  }

  FockPureState(std::vector<std::size_t> cutoffs, CVector amps)
      : FockPureState(FockShape(std::move(cutoffs)), std::move(amps)) {}

  const FockShape& shape() const noexcept { return shape_; }
  std::size_t modes() const noexcept { return shape_.modes(); }
  const std::vector<std::size_t>& cutoffs() const noexcept { return shape_.cutoffs(); }
  const CVector& amps() const noexcept { return amps_; }
  double norm2() const { return amps_.squaredNorm(); }
  /// Probability missing from the truncated amplitudes, 1 - ||amps||^2.
  double tail_mass() const noexcept { return tail_mass_; }

  Complex amplitude(std::span<const std::size_t> occ) const { return amps_(static_cast<Eigen::Index>(shape_.index(occ))); }

  /// Highest occupied level of `mode` (amplitude exactly nonzero).
  std::size_t max_level(std::size_t mode) const {
    std::size_t top = 0;
    for (std::size_t f = 0; f < shape_.size(); ++f) {
      if (amps_(static_cast<Eigen::Index>(f)) != Complex(0.0)) top = std::max(top, shape_.level(f, mode));
    }
    return top;
  }

 private:
  FockShape shape_;
  CVector amps_;
  double tail_mass_ = 0.0;
};

namespace detail {

inline void require_tail(const FockPureState& psi, double max_tail) {
  if (psi.tail_mass() > max_tail) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "truncated state misses probability %.3e > tolerance %.3e", psi.tail_mass(),
                  max_tail);
    throw TruncationError(buf);
  }
}

/// Smallest K such that sum_{k >= K} p_k <= tol, from suffix sums.
inline std::size_t cutoff_from_probabilities(const std::vector<double>& p, double tol) {
  double suffix = 0.0;
  std::size_t k = p.size();
  while (k > 0 && suffix + p[k - 1] <= tol) {
    suffix += p[k - 1];
    --k;
  }
  return std::max<std::size_t>(k, 1);
}

inline void check_requested_cutoff(std::optional<std::size_t> requested, std::size_t required,
                                   const char* what) {
  if (requested && *requested < required) {
    throw TruncationError(std::string(what) + ": cutoff " + std::to_string(*requested) +
                              " leaves too much tail probability; need at least " +
                              std::to_string(required),
                          required);
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// State builders

/// |k_1, ..., k_n> on the given cutoffs (default: k_i + 1).
inline FockPureState fock_basis_state(const Occupation& occ, std::vector<std::size_t> cutoffs = {}) {
  if (cutoffs.empty()) {
    cutoffs.resize(occ.size());
    std::transform(occ.begin(), occ.end(), cutoffs.begin(), [](std::size_t k) { return k + 1; });
  }
  FockShape shape(std::move(cutoffs));
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(shape.size()));
  amps(static_cast<Eigen::Index>(shape.index(occ))) = 1.0;
  return FockPureState(std::move(shape), std::move(amps));
}

/// Single-mode squeezed vacuum with the squeezed quadrature at phase-space angle
/// `phi` (phi = 0 squeezes X, phi = pi/2 squeezes P). Supported on even levels:
/// c_{2m} = (-e^{2i phi} tanh s)^m sqrt((2m)!) / (2^m m! sqrt(cosh s)).
inline FockPureState make_fock_squeezed(double s, double phi = 0.0,
                                        std::optional<std::size_t> cutoff = std::nullopt,
                                        double max_tail = tol::kTruncation) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("squeezing s must be finite and >= 0");
  const double t = std::tanh(s);
  const Complex ratio = -std::polar(t, 2.0 * phi);
  std::vector<Complex> c{Complex(1.0 / std::sqrt(std::cosh(s)))};
  std::vector<double> p{std::norm(c[0])};
  // Even-level terms decay like t^{2m}; stop far below the tolerance.
  for (std::size_t m = 1; p.back() > max_tail * 1e-8 && m < 100000; ++m) {
    const double dm = static_cast<double>(m);
    c.push_back(c.back() * ratio * std::sqrt((2.0 * dm - 1.0) / (2.0 * dm)));
    p.push_back(std::norm(c.back()));
  }
  const std::size_t pairs = detail::cutoff_from_probabilities(p, max_tail);
  const std::size_t required = 2 * pairs - 1;
  detail::check_requested_cutoff(cutoff, required, "squeezed state");
  const std::size_t d = cutoff.value_or(required);
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t m = 0; 2 * m < d && m < c.size(); ++m) amps(static_cast<Eigen::Index>(2 * m)) = c[m];
  return FockPureState(std::vector<std::size_t>{d}, std::move(amps));
}

/// Two-mode squeezed vacuum, sum_k tanh(r)^k / cosh(r) |k, k>.
inline FockPureState make_fock_tmsv(double r, std::optional<std::size_t> cutoff = std::nullopt,
                                    double max_tail = tol::kTruncation) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("squeezing r must be finite and >= 0");
  const double t = std::tanh(r);
  // Tail after K terms is exactly t^{2K}.
  std::size_t required = 1;
  if (t > 0.0) {
    required = static_cast<std::size_t>(std::ceil(std::log(max_tail) / (2.0 * std::log(t))));
    while (required > 1 && std::pow(t, 2.0 * static_cast<double>(required - 1)) <= max_tail) --required;
    while (std::pow(t, 2.0 * static_cast<double>(required)) > max_tail) ++required;
    required = std::max<std::size_t>(required, 1);
  }
  detail::check_requested_cutoff(cutoff, required, "two-mode squeezed state");
  const std::size_t d = cutoff.value_or(required);
  FockShape shape({d, d});
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(shape.size()));
  double ck = 1.0 / std::cosh(r);
  for (std::size_t k = 0; k < d; ++k, ck *= t) {
    amps(static_cast<Eigen::Index>(k * d + k)) = ck;
  }
  return FockPureState(std::move(shape), std::move(amps));
}

/// Coherent state D(alpha)|0>.
inline FockPureState make_fock_coherent(Complex alpha, std::optional<std::size_t> cutoff = std::nullopt,
                                        double max_tail = tol::kTruncation) {
  const double mean = std::norm(alpha);
  std::vector<Complex> c{Complex(std::exp(-0.5 * mean))};
  std::vector<double> p{std::norm(c[0])};
  for (std::size_t n = 1; n < 100000; ++n) {
    c.push_back(c.back() * alpha / std::sqrt(static_cast<double>(n)));
    p.push_back(std::norm(c.back()));
    if (static_cast<double>(n) > mean && p.back() < max_tail * 1e-8) break;
  }
  const std::size_t required = detail::cutoff_from_probabilities(p, max_tail);
  detail::check_requested_cutoff(cutoff, required, "coherent state");
  const std::size_t d = cutoff.value_or(required);
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(d));
  for (std::size_t n = 0; n < d && n < c.size(); ++n) amps(static_cast<Eigen::Index>(n)) = c[n];
  return FockPureState(std::vector<std::size_t>{d}, std::move(amps));
}

/// |a> (x) |b>, modes of `a` first.
inline FockPureState tensor(const FockPureState& a, const FockPureState& b) {
  std::vector<std::size_t> cut = a.cutoffs();
  cut.insert(cut.end(), b.cutoffs().begin(), b.cutoffs().end());
  CVector amps(static_cast<Eigen::Index>(a.shape().size() * b.shape().size()));
  const auto nb = static_cast<Eigen::Index>(b.shape().size());
  for (Eigen::Index i = 0; i < a.amps().size(); ++i) amps.segment(i * nb, nb) = a.amps()(i) * b.amps();
  return FockPureState(std::move(cut), std::move(amps));
}

/// Re-embed a state in larger cutoffs (zero padding). Shrinking is allowed
/// only when the dropped levels are empty.
inline FockPureState with_cutoffs(const FockPureState& psi, std::vector<std::size_t> cutoffs) {
  if (cutoffs.size() != psi.modes()) throw DimensionMismatch("cutoff list has wrong length");
  FockShape shape(std::move(cutoffs));
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(shape.size()));
  for (std::size_t f = 0; f < psi.shape().size(); ++f) {
    const Complex a = psi.amps()(static_cast<Eigen::Index>(f));
    if (a == Complex(0.0)) continue;
    amps(static_cast<Eigen::Index>(shape.index(psi.shape().occupation(f)))) = a;
  }
  return FockPureState(std::move(shape), std::move(amps));
}

// ---------------------------------------------------------------------------
// Quadrature operators

/// Single-mode ladder and quadrature matrices on levels 0..cutoff-1, with
/// a = (X + iP)/sqrt2. [X, P] = i holds except on the top level.
struct QuadratureOps {
  explicit QuadratureOps(std::size_t cutoff) {
    if (cutoff == 0) throw DomainError("cutoff must be >= 1");
    const auto d = static_cast<Eigen::Index>(cutoff);
    a = CMatrix::Zero(d, d);
    for (Eigen::Index k = 1; k < d; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    adag = a.adjoint();
    x = (a + adag) / std::numbers::sqrt2;
    p = (a - adag) / Complex(0.0, std::numbers::sqrt2);
    n = adag * a;
  }

  CMatrix a, adag, x, p, n;
};

/// a_mode |psi> as a raw vector on the same shape.
inline CVector annihilate(const FockShape& shape, const CVector& amps, std::size_t mode) {
  CVector out = CVector::Zero(amps.size());
  const std::size_t stride = shape.stride(mode);
  for (std::size_t f = 0; f < shape.size(); ++f) {
    const std::size_t k = shape.level(f, mode);
    if (k == 0) continue;
    out(static_cast<Eigen::Index>(f - stride)) = std::sqrt(static_cast<double>(k)) * amps(static_cast<Eigen::Index>(f));
  }
  return out;
}

/// Mean vector and covariance matrix V_ij = <{R_i, R_j}> - 2 <R_i><R_j> of a
/// pure Fock state. Moments are exact for the stored (untruncated-algebra)
/// amplitudes, normalised by their norm.
inline std::pair<Vector, Matrix> quadrature_moments(const FockPureState& psi) {
  const std::size_t n = psi.modes();
  const double norm2 = psi.norm2();
  const CVector& v = psi.amps();
  std::vector<CVector> av(n);
  for (std::size_t i = 0; i < n; ++i) av[i] = annihilate(psi.shape(), v, i);

  const auto ni = static_cast<Eigen::Index>(n);
  CVector mean_a(ni);
  CMatrix aa(ni, ni);    // <a_i a_j>
  CMatrix adga(ni, ni);  // <a_i^dag a_j>
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    mean_a(ii) = v.dot(av[i]) / norm2;
    for (std::size_t j = 0; j < n; ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      adga(ii, jj) = av[i].dot(av[j]) / norm2;
      aa(ii, jj) = v.dot(annihilate(psi.shape(), av[j], i)) / norm2;
    }
  }
  // R_{2i} = (a_i + a_i^dag)/sqrt2, R_{2i+1} = -i (a_i - a_i^dag)/sqrt2:
  // R_k = u_k a + conj(u_k) a^dag with u supported on one mode.
  const double h = 1.0 / std::numbers::sqrt2;
  auto coeff = [&](std::size_t k) { return (k % 2 == 0) ? Complex(h, 0.0) : Complex(0.0, -h); };
  Vector mean(2 * ni);
  Matrix cov(2 * ni, 2 * ni);
  for (std::size_t k = 0; k < 2 * n; ++k) {
    const std::size_t i = k / 2;
    const Complex uk = coeff(k);
    mean(static_cast<Eigen::Index>(k)) = 2.0 * (uk * mean_a(static_cast<Eigen::Index>(i))).real();
  }
  for (std::size_t k = 0; k < 2 * n; ++k) {
    for (std::size_t l = 0; l < 2 * n; ++l) {
      const auto i = static_cast<Eigen::Index>(k / 2), j = static_cast<Eigen::Index>(l / 2);
      const Complex uk = coeff(k), ul = coeff(l);
      const Complex a_adg = adga(j, i) + (i == j ? 1.0 : 0.0);  // <a_i a_j^dag>
      const Complex rr = uk * ul * aa(i, j) + uk * std::conj(ul) * a_adg +
                         std::conj(uk) * ul * adga(i, j) + std::conj(uk) * std::conj(ul) * std::conj(aa(j, i));
      cov(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
          2.0 * rr.real() - 2.0 * mean(static_cast<Eigen::Index>(k)) * mean(static_cast<Eigen::Index>(l));
    }
  }
  cov = 0.5 * (cov + cov.transpose()).eval();
  return {mean, cov};
}

inline double mean_photon_number(const FockPureState& psi) {
  double total = 0.0;
  for (std::size_t f = 0; f < psi.shape().size(); ++f) {
    const double p = std::norm(psi.amps()(static_cast<Eigen::Index>(f)));
    if (p == 0.0) continue;
    std::size_t k = 0;
    for (std::size_t m = 0; m < psi.modes(); ++m) k += psi.shape().level(f, m);
    total += p * static_cast<double>(k);
  }
  return total / psi.norm2();
}

/// Sum of the variances of all 2n quadratures.
inline double total_noise(const FockPureState& psi, double max_tail = tol::kTruncation) {
  detail::require_tail(psi, max_tail);
  const double norm2 = psi.norm2();
  double noise = 0.0;
  for (std::size_t i = 0; i < psi.modes(); ++i) {
    const CVector av = annihilate(psi.shape(), psi.amps(), i);
    const Complex mean_a = psi.amps().dot(av) / norm2;
    // Delta X^2 + Delta P^2 = 2<a^dag a> + 1 - 2|<a>|^2.
    noise += 2.0 * av.squaredNorm() / norm2 + 1.0 - 2.0 * std::norm(mean_a);
  }
  return noise;
}

/// Monotone of total noise of a pure state, N_tot / n (first moments removed).
inline double mtn_pure(const FockPureState& psi, double max_tail = tol::kTruncation) {
  return total_noise(psi, max_tail) / static_cast<double>(psi.modes());
}

// ---------------------------------------------------------------------------
// Bipartite entanglement of pure states

/// Normalised Schmidt coefficients across the bipartition, descending,
/// with values below the singular floor dropped.
inline std::vector<double> schmidt_coefficients(const FockPureState& psi, const Bipartition& bp,
                                                double max_tail = tol::kTruncation) {
  detail::require_tail(psi, max_tail);
  if (bp.modes() != psi.modes()) throw DimensionMismatch("bipartition does not match state");
  const FockShape& shape = psi.shape();
  std::size_t da = 1, db = 1;
  for (std::size_t m : bp.a_modes()) da *= shape.cutoff(m);
  for (std::size_t m : bp.b_modes()) db *= shape.cutoff(m);
  CMatrix c = CMatrix::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(db));
  for (std::size_t f = 0; f < shape.size(); ++f) {
    const Complex amp = psi.amps()(static_cast<Eigen::Index>(f));
    if (amp == Complex(0.0)) continue;
    std::size_t ia = 0, ib = 0;
    for (std::size_t m : bp.a_modes()) ia = ia * shape.cutoff(m) + shape.level(f, m);
    for (std::size_t m : bp.b_modes()) ib = ib * shape.cutoff(m) + shape.level(f, m);
    c(static_cast<Eigen::Index>(ia), static_cast<Eigen::Index>(ib)) = amp;
  }
  Eigen::BDCSVD<CMatrix> svd(c);
  const Vector& s = svd.singularValues();
  const double norm = std::sqrt(psi.norm2());
  std::vector<double> out;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    const double sk = s(k) / norm;
    if (sk >= tol::kSingularFloor) out.push_back(sk);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// -sum_k sigma_k^2 ln sigma_k^2 in nats, with 0 ln 0 = 0.
inline double entanglement_entropy(const FockPureState& psi, const Bipartition& bp,
                                   double max_tail = tol::kTruncation) {
  const auto sigma = schmidt_coefficients(psi, bp, max_tail);
  double total = 0.0;
  for (double s : sigma) total += s * s;
  double h = 0.0;
  for (double s : sigma) {
    const double p = s * s / total;
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

/// Pure-state logarithmic negativity, 2 ln sum_k sigma_k.
inline double log_negativity_pure(const FockPureState& psi, const Bipartition& bp,
                                  double max_tail = tol::kTruncation) {
  const auto sigma = schmidt_coefficients(psi, bp, max_tail);
  double total = 0.0, sum = 0.0;
  for (double s : sigma) {
    total += s * s;
    sum += s;
  }
  return 2.0 * std::log(sum / std::sqrt(total));
}

// ---------------------------------------------------------------------------
// Beam splitter

namespace detail {

/// Matrix of B = exp(pi/4 G), G = a1^dag a2 - a1 a2^dag, on the M-photon block:
/// U(m, n1) = <m, M-m| B |n1, M-n1>.
///
/// With D = diag(i^{n1}), D^dag G D = -i S where S is real symmetric
/// tridiagonal, S(n+1, n) = sqrt((n+1)(M-n)), with spectrum {-M, -M+2, ..., M}.
/// Hence U = D Q exp(-i pi/4 Lambda) Q^T D^dag from one tridiagonal eigensolve;
/// the eigenvalues are snapped to their exact integer values.
inline Matrix compute_beam_splitter_block(std::size_t total) {
  const auto size = static_cast<Eigen::Index>(total + 1);
  if (size == 1) return Matrix::Ones(1, 1);
  Vector diag = Vector::Zero(size);
  Vector sub(size - 1);
  for (Eigen::Index n = 0; n + 1 < size; ++n) {
    sub(n) = std::sqrt(static_cast<double>(n + 1) * static_cast<double>(static_cast<Eigen::Index>(total) - n));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw Error("beam splitter eigensolve failed");
  const CMatrix q = es.eigenvectors().cast<Complex>();
  CVector phase(size);
  for (Eigen::Index k = 0; k < size; ++k) {
    phase(k) = std::polar(1.0, -std::numbers::pi * std::round(es.eigenvalues()(k)) / 4.0);
  }
  const CMatrix w = q * phase.asDiagonal() * q.transpose();
  // U(m, n) = i^{m - n} W(m, n); the imaginary parts cancel.
  static const Complex kPowI[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  Matrix u(size, size);
  for (Eigen::Index n = 0; n < size; ++n) {
    for (Eigen::Index m = 0; m < size; ++m) u(m, n) = (kPowI[((m - n) % 4 + 4) % 4] * w(m, n)).real();
  }
  return u;
}

/// Blocks up to this photon number are kept once computed.
inline constexpr std::size_t kBeamSplitterCacheLimit = 256;

inline std::shared_ptr<const Matrix> beam_splitter_block(std::size_t total) {
  if (total > kBeamSplitterCacheLimit) return std::make_shared<const Matrix>(compute_beam_splitter_block(total));
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const Matrix>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (const auto it = cache.find(total); it != cache.end()) return it->second;
  }
  auto block = std::make_shared<const Matrix>(compute_beam_splitter_block(total));
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(total, std::move(block)).first->second;
}

}  // namespace detail

/// Balanced beam splitter on modes (i, j), applied exactly block by block in
/// total photon number. Throws CutoffOverflow when an occupied block does not
/// fit into both cutoffs.
inline FockPureState apply_beam_splitter_fock(const FockPureState& psi, std::size_t i, std::size_t j) {
  if (i == j || i >= psi.modes() || j >= psi.modes()) {
    throw DomainError("beam splitter needs two distinct valid modes");
  }
  const FockShape& shape = psi.shape();
  const std::size_t di = shape.cutoff(i), dj = shape.cutoff(j);
  const std::size_t si = shape.stride(i), sj = shape.stride(j);
  std::vector<std::vector<std::size_t>> by_total(di + dj - 1);
  for (std::size_t f = 0; f < shape.size(); ++f) {
    if (psi.amps()(static_cast<Eigen::Index>(f)) == Complex(0.0)) continue;
    const std::size_t total = shape.level(f, i) + shape.level(f, j);
    if (total >= di || total >= dj) {
      throw CutoffOverflow("beam splitter output needs " + std::to_string(total + 1) +
                           " levels on modes " + std::to_string(i) + "," + std::to_string(j) +
                           " but cutoffs are " + std::to_string(di) + "," + std::to_string(dj));
    }
    by_total[total].push_back(f);
  }
  CVector out = CVector::Zero(psi.amps().size());
  for (std::size_t total = 0; total < by_total.size(); ++total) {
    if (by_total[total].empty()) continue;
    const auto block = detail::beam_splitter_block(total);
    const Matrix& u = *block;
    for (std::size_t f : by_total[total]) {
      const std::size_t ni = shape.level(f, i);
      const std::size_t base = f - ni * si - (total - ni) * sj;
      const Complex amp = psi.amps()(static_cast<Eigen::Index>(f));
      for (std::size_t m = 0; m <= total; ++m) {
        out(static_cast<Eigen::Index>(base + m * si + (total - m) * sj)) +=
            u(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(ni)) * amp;
      }
    }
  }
  return FockPureState(shape, std::move(out));
}

// ---------------------------------------------------------------------------
// Local basis permutations

/// Apply a permutation of the Fock basis of the sub-system `modes`:
/// |k> -> |map(k)> for listed k, identity elsewhere. The map must be a
/// bijection on its own key set and stay inside the cutoffs.
inline FockPureState apply_local_permutation(const FockPureState& psi, const std::vector<std::size_t>& modes,
                                             const std::map<Occupation, Occupation>& map) {
  std::set<Occupation> keys, values;
  for (const auto& [from, to] : map) {
    if (from.size() != modes.size() || to.size() != modes.size()) {
      throw DimensionMismatch("permutation entries must list one level per sub-system mode");
    }
    keys.insert(from);
    values.insert(to);
  }
  if (keys != values) throw DomainError("local map is not a permutation of its key set");
  const FockShape& shape = psi.shape();
  for (std::size_t m : modes) {
    if (m >= psi.modes()) throw DomainError("mode index out of range");
  }
  CVector out = CVector::Zero(psi.amps().size());
  Occupation local(modes.size());
  for (std::size_t f = 0; f < shape.size(); ++f) {
    const Complex amp = psi.amps()(static_cast<Eigen::Index>(f));
    if (amp == Complex(0.0)) continue;
    for (std::size_t q = 0; q < modes.size(); ++q) local[q] = shape.level(f, modes[q]);
    const auto it = map.find(local);
    std::size_t g = f;
    if (it != map.end()) {
      for (std::size_t q = 0; q < modes.size(); ++q) {
        if (it->second[q] >= shape.cutoff(modes[q])) {
          throw CutoffOverflow("local permutation target exceeds cutoff on mode " + std::to_string(modes[q]));
        }
        g = g - local[q] * shape.stride(modes[q]) + it->second[q] * shape.stride(modes[q]);
      }
    }
    out(static_cast<Eigen::Index>(g)) += amp;
  }
  return FockPureState(shape, std::move(out));
}

// ---------------------------------------------------------------------------
// Density operators

/// Operator on a truncated Fock space (not renormalised).
class FockDensityOperator {
 public:
  FockDensityOperator(FockShape shape, CMatrix rho) : shape_(std::move(shape)), rho_(std::move(rho)) {
    const auto d = static_cast<Eigen::Index>(shape_.size());
    if (rho_.rows() != d || rho_.cols() != d) throw DimensionMismatch("density matrix has wrong size");
    const double scale = std::max(1.0, rho_.cwiseAbs().maxCoeff());
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol::kSymmetry * scale) {
      throw AsymmetricInput("density operator is not Hermitian");
    }
    const double tr = rho_.trace().real();
    if (tr > 1.0 + FockPureState::kNormSlack || tr <= 0.0) throw DomainError("density operator trace must be in (0, 1]");
  }

  static FockDensityOperator from_pure(const FockPureState& psi) {
    return FockDensityOperator(psi.shape(), psi.amps() * psi.amps().adjoint());
  }

  /// sum_k w_k |psi_k><psi_k| over states sharing one shape.
  static FockDensityOperator from_ensemble(std::span<const double> weights, std::span<const FockPureState> states) {
    if (weights.size() != states.size() || states.empty()) throw DimensionMismatch("ensemble size mismatch");
    const FockShape& shape = states.front().shape();
    const auto d = static_cast<Eigen::Index>(shape.size());
    CMatrix rho = CMatrix::Zero(d, d);
    for (std::size_t k = 0; k < states.size(); ++k) {
      if (!(states[k].shape() == shape)) throw DimensionMismatch("ensemble states differ in shape");
      if (!(weights[k] >= 0.0)) throw DomainError("ensemble weights must be >= 0");
      rho.noalias() += weights[k] * states[k].amps() * states[k].amps().adjoint();
    }
    return FockDensityOperator(shape, std::move(rho));
  }

  const FockShape& shape() const noexcept { return shape_; }
  std::size_t modes() const noexcept { return shape_.modes(); }
  const CMatrix& matrix() const noexcept { return rho_; }
  double trace() const { return rho_.trace().real(); }
  double purity() const { return rho_.squaredNorm() / (trace() * trace()); }

 private:
  FockShape shape_;
  CMatrix rho_;
};

/// Thermal state with mean photon number nbar; `padding` empty levels are
/// appended above the retained support.
inline FockDensityOperator make_fock_thermal(double nbar, std::size_t padding = 2,
                                             double max_tail = tol::kTruncation) {
  if (!(nbar >= 0.0)) throw DomainError("thermal photon number must be >= 0");
  const double ratio = nbar / (1.0 + nbar);
  std::size_t support = 1;
  while (std::pow(ratio, static_cast<double>(support)) > max_tail) ++support;
  const std::size_t d = support + padding;
  CMatrix rho = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < support; ++k) {
    rho(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) =
        std::pow(ratio, static_cast<double>(k)) / (1.0 + nbar);
  }
  return FockDensityOperator(FockShape({d}), std::move(rho));
}

inline FockDensityOperator tensor(const FockDensityOperator& a, const FockDensityOperator& b) {
  std::vector<std::size_t> cut = a.shape().cutoffs();
  cut.insert(cut.end(), b.shape().cutoffs().begin(), b.shape().cutoffs().end());
  const Eigen::Index da = a.matrix().rows(), db = b.matrix().rows();
  CMatrix rho(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j) rho.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  return FockDensityOperator(FockShape(std::move(cut)), std::move(rho));
}

/// Sparse matrix of a single-mode operator embedded on `mode`.
inline Eigen::SparseMatrix<Complex> embed_mode_operator(const FockShape& shape, std::size_t mode,
                                                        const CMatrix& op) {
  const std::size_t stride = shape.stride(mode);
  std::vector<Eigen::Triplet<Complex>> trip;
  for (std::size_t f = 0; f < shape.size(); ++f) {
    const std::size_t k = shape.level(f, mode);
    const std::size_t base = f - k * stride;
    for (Eigen::Index l = 0; l < op.rows(); ++l) {
      const Complex v = op(l, static_cast<Eigen::Index>(k));
      if (v != Complex(0.0)) {
        trip.emplace_back(static_cast<Eigen::Index>(base + static_cast<std::size_t>(l) * stride), static_cast<Eigen::Index>(f), v);
      }
    }
  }
  const auto d = static_cast<Eigen::Index>(shape.size());
  Eigen::SparseMatrix<Complex> m(d, d);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

/// Quadrature coherence scale squared from its commutator definition,
/// C^2 = (1 / (2 n P)) sum_j Tr [rho, R_j][R_j, rho], P = Tr rho^2
/// (normalised by Tr rho).
///
/// With A = rho R_j, Tr [rho,R][R,rho] = 2 ||A||_F^2 - 2 Re Tr A^2; this is
/// exact when no mode populates its top level.
inline double qcs2_fock(const FockDensityOperator& rho) {
  const FockShape& shape = rho.shape();
  const CMatrix& m = rho.matrix();
  const double tr = rho.trace();
  for (std::size_t f = 0; f < shape.size(); ++f) {
    for (std::size_t mode = 0; mode < shape.modes(); ++mode) {
      if (shape.level(f, mode) + 1 == shape.cutoff(mode) &&
          std::abs(m(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(f))) > 1e-14 * tr) {
        throw TruncationError("density operator populates the top level of mode " + std::to_string(mode) +
                                  "; pad the cutoff by at least one level",
                              shape.cutoff(mode) + 1);
      }
    }
  }
  double sum = 0.0;
  for (std::size_t mode = 0; mode < shape.modes(); ++mode) {
    const QuadratureOps ops(shape.cutoff(mode));
    for (const CMatrix* q : {&ops.x, &ops.p}) {
      const Eigen::SparseMatrix<Complex> r = embed_mode_operator(shape, mode, *q);
      const CMatrix a = m * r;
      const double frob = a.squaredNorm();
      const double tr_a2 = a.cwiseProduct(a.transpose()).sum().real();
      sum += 2.0 * frob - 2.0 * tr_a2;
    }
  }
  const double purity = m.squaredNorm();
  return sum / (2.0 * static_cast<double>(shape.modes()) * purity);
}

// ---------------------------------------------------------------------------
// Bound-saturating states

/// Local unitary of phase-times-permutation form acting on n_A modes:
/// U|k> = e^{i phase(k)} |permutation(k)>, identity permutation where unlisted.
/// Number preserving iff every listed permutation entry keeps |k|_1.
struct ShellUnitary {
  std::map<Occupation, Occupation> permutation;
  std::function<double(const Occupation&)> phase;

  Occupation apply(const Occupation& k) const {
    const auto it = permutation.find(k);
    return it == permutation.end() ? k : it->second;
  }

  double phase_of(const Occupation& k) const { return phase ? phase(k) : 0.0; }

  void validate(std::size_t modes) const {
    std::set<Occupation> keys, values;
    for (const auto& [from, to] : permutation) {
      if (from.size() != modes || to.size() != modes) {
        throw DimensionMismatch("shell permutation entries must have one level per mode");
      }
      const auto sum = [](const Occupation& o) { return std::accumulate(o.begin(), o.end(), std::size_t{0}); };
      if (sum(from) != sum(to)) {
        throw DomainError("local unitary does not preserve photon number");
      }
      keys.insert(from);
      values.insert(to);
    }
    if (keys != values) throw DomainError("shell map is not a permutation");
  }
};

/// State with C = U_A D^{1/2} U_B saturating the symmetric bound:
/// Z^{-1/2} sum_k tanh(r)^{|k|_1} U_A|k> (x) U_B|k>, on n = 2 n_A modes.
/// The sum runs over all k with |k|_1 <= L, L chosen so the dropped
/// probability is at most max_tail; every mode gets cutoff L + 1.
inline FockPureState saturating_family(std::size_t n, double r, const ShellUnitary& ua = {},
                                       const ShellUnitary& ub = {}, double max_tail = tol::kTruncation) {
  if (n == 0 || n % 2 != 0) throw DomainError("saturating family needs an even mode count");
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("squeezing r must be finite and >= 0");
  const std::size_t na = n / 2;
  ua.validate(na);
  ub.validate(na);
  const double t2 = std::tanh(r) * std::tanh(r);
  // Shell m carries probability C(m + na - 1, na - 1) t^{2m} (1 - t^2)^na.
  std::size_t shells = 0;
  {
    double kept = 0.0, mult = 1.0, tpow = 1.0;
    const double norm = std::pow(1.0 - t2, static_cast<double>(na));
    for (std::size_t m = 0;; ++m) {
      if (m > 0) mult *= static_cast<double>(m + na - 1) / static_cast<double>(m);
      kept += mult * tpow * norm;
      tpow *= t2;
      if (1.0 - kept <= max_tail || m > 100000) {
        shells = m;
        break;
      }
    }
  }
  const std::size_t d = shells + 1;
  FockShape shape(std::vector<std::size_t>(n, d));
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(shape.size()));
  const double z = std::pow(std::cosh(r), -static_cast<double>(na));
  const double t = std::tanh(r);
  FockShape local(std::vector<std::size_t>(na, d));
  Occupation full(n);
  for (std::size_t f = 0; f < local.size(); ++f) {
    const Occupation k = local.occupation(f);
    const std::size_t weight = std::accumulate(k.begin(), k.end(), std::size_t{0});
    if (weight > shells) continue;
    const Occupation ka = ua.apply(k), kb = ub.apply(k);
    for (std::size_t q = 0; q < na; ++q) {
      full[q] = ka[q];
      full[na + q] = kb[q];
    }
    const double mag = z * std::pow(t, static_cast<double>(weight));
    amps(static_cast<Eigen::Index>(shape.index(full))) += std::polar(mag, ua.phase_of(k) + ub.phase_of(k));
  }
  return FockPureState(std::move(shape), std::move(amps));
}

/// Non-Gaussian counterexample on one A mode and two B modes:
/// psi_q = sqrt(1-q) sum_n q^{n/2} |n; n, 0>, and psi' = U_B psi_q with U_B the
/// basis swap |k, 0> <-> |0, 1> on B.
struct AppendixCStates {
  FockPureState psi_q;
  FockPureState psi_prime;
};

inline AppendixCStates appendix_c_state(double q, std::size_t k, std::optional<std::size_t> cutoff = std::nullopt,
                                        double max_tail = tol::kTruncation) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("appendix C state needs 0 < q < 1");
  if (k <= 1) throw DomainError("appendix C permutation needs k > 1");
  // Tail after K terms is q^K.
  std::size_t required = 1;
  while (std::pow(q, static_cast<double>(required)) > max_tail) ++required;
  detail::check_requested_cutoff(cutoff, required, "appendix C state");
  const std::size_t d = cutoff.value_or(required);
  FockShape shape({d, std::max(d, k + 1), 2});
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(shape.size()));
  for (std::size_t n = 0; n < d; ++n) {
    const Occupation occ{n, n, 0};
    amps(static_cast<Eigen::Index>(shape.index(occ))) = std::sqrt(1.0 - q) * std::pow(q, 0.5 * static_cast<double>(n));
  }
  FockPureState psi_q(std::move(shape), std::move(amps));
  std::map<Occupation, Occupation> swap{{{k, 0}, {0, 1}}, {{0, 1}, {k, 0}}};
  FockPureState psi_prime = apply_local_permutation(psi_q, {1, 2}, swap);
  return {std::move(psi_q), std::move(psi_prime)};
}

}  // namespace bosonic

#endif  // BOSONIC_FOCK_HPP
