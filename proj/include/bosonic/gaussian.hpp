#ifndef BOSONIC_GAUSSIAN_HPP
#define BOSONIC_GAUSSIAN_HPP

// Gaussian states: construction, Gaussian unitaries, and closed-form
// nonclassicality / entanglement measures.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/QR>

#include "bosonic/errors.hpp"
#include "bosonic/symplectic.hpp"
#include "bosonic/thermal_entropy.hpp"
#include "bosonic/tolerances.hpp"

namespace bosonic {

/// Mean vector plus covariance matrix of a physical Gaussian state.
class GaussianState {
 public:
  GaussianState(Vector mean, CovarianceMatrix cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (mean_.size() != cov_.dim()) {
      throw DimensionMismatch("mean vector has length " + std::to_string(mean_.size()) +
                              " but covariance matrix is " + std::to_string(cov_.dim()) + "x" +
                              std::to_string(cov_.dim()));
    }
    if (!mean_.allFinite()) throw DomainError("mean vector has non-finite entries");
    const auto report = check_physicality(cov_);
    if (!report.is_physical) {
      throw UnphysicalState(
          report.positive_definite
              ? "covariance matrix violates the uncertainty principle (min symplectic eigenvalue " +
                    std::to_string(report.min_symplectic_eigenvalue) + ")"
              : "covariance matrix is not positive definite",
          report.min_symplectic_eigenvalue);
    }
  }

  explicit GaussianState(const CovarianceMatrix& cov) : GaussianState(Vector::Zero(cov.dim()), cov) {}

  std::size_t modes() const noexcept { return cov_.modes(); }
  const Vector& mean() const noexcept { return mean_; }
  const CovarianceMatrix& cov() const noexcept { return cov_; }

  /// 1 / sqrt(det V).
  double purity() const { return 1.0 / std::sqrt(cov_.determinant()); }

 private:
  Vector mean_;
  CovarianceMatrix cov_;
};

// ---------------------------------------------------------------------------
// Constructors

inline GaussianState make_vacuum(std::size_t modes) {
  if (modes == 0) throw DomainError("mode count must be positive");
  return GaussianState(CovarianceMatrix::identity(modes));
}

/// Product of thermal states, V = (+)_k (2 nbar_k + 1) 1.
inline GaussianState make_thermal(std::span<const double> mean_photons) {
  if (mean_photons.empty()) throw DomainError("mode count must be positive");
  const auto d = static_cast<Eigen::Index>(2 * mean_photons.size());
  Vector diag(d);
  for (std::size_t k = 0; k < mean_photons.size(); ++k) {
    if (!(mean_photons[k] >= 0.0)) throw DomainError("thermal photon number must be >= 0");
    diag(static_cast<Eigen::Index>(2 * k)) = 2.0 * mean_photons[k] + 1.0;
    diag(static_cast<Eigen::Index>(2 * k + 1)) = 2.0 * mean_photons[k] + 1.0;
  }
  return GaussianState(CovarianceMatrix(Matrix(diag.asDiagonal())));
}

inline GaussianState make_thermal(double mean_photons) {
  const double nbar[] = {mean_photons};
  return make_thermal(std::span<const double>(nbar));
}

/// Single-mode squeezed vacuum.
///
/// `phi` is the phase-space orientation of the squeezed quadrature:
/// phi = 0 gives V = diag(e^{-2s}, e^{2s}) and phi = pi/2 gives
/// V = diag(e^{2s}, e^{-2s}).
inline GaussianState make_squeezed(double s, double phi = 0.0) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("squeezing s must be finite and >= 0");
  if (!std::isfinite(phi)) throw DomainError("squeezing angle must be finite");
  const double c = std::cos(phi), sn = std::sin(phi);
  Eigen::Matrix2d rot;
  rot << c, -sn, sn, c;
  const Eigen::Matrix2d d = Eigen::Vector2d(std::exp(-2.0 * s), std::exp(2.0 * s)).asDiagonal();
  return GaussianState(CovarianceMatrix(Matrix(rot * d * rot.transpose())));
}

/// Two-mode squeezed vacuum: V_A = V_B = cosh(2r) 1, C = sinh(2r) sigma_z.
inline GaussianState make_tmsv(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("squeezing r must be finite and >= 0");
  const double ch = std::cosh(2.0 * r), sh = std::sinh(2.0 * r);
  Matrix v = Matrix::Zero(4, 4);
  v.diagonal().setConstant(ch);
  v(0, 2) = v(2, 0) = sh;
  v(1, 3) = v(3, 1) = -sh;
  return GaussianState(CovarianceMatrix(std::move(v)));
}

/// n_A two-mode squeezed pairs (A_i, B_i) plus n_B - n_A vacuum modes on B.
/// Modes are ordered A_1..A_{nA}, B_1..B_{nB}.
inline GaussianState make_paired_tmsv(std::span<const double> r, std::size_t n_b) {
  const std::size_t n_a = r.size();
  if (n_a == 0 || n_b < n_a) throw DomainError("need 1 <= n_A <= n_B");
  const std::size_t n = n_a + n_b;
  Matrix v = Matrix::Identity(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * n));
  for (std::size_t i = 0; i < n_a; ++i) {
    if (!(r[i] >= 0.0)) throw DomainError("squeezing r must be >= 0");
    const double ch = std::cosh(2.0 * r[i]), sh = std::sinh(2.0 * r[i]);
    const auto a = static_cast<Eigen::Index>(2 * i);
    const auto b = static_cast<Eigen::Index>(2 * (n_a + i));
    v(a, a) = v(a + 1, a + 1) = v(b, b) = v(b + 1, b + 1) = ch;
    v(a, b) = v(b, a) = sh;
    v(a + 1, b + 1) = v(b + 1, a + 1) = -sh;
  }
  return GaussianState(CovarianceMatrix(std::move(v)));
}

inline GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const Eigen::Index da = a.cov().dim(), db = b.cov().dim();
  Matrix v = Matrix::Zero(da + db, da + db);
  v.topLeftCorner(da, da) = a.cov().matrix();
  v.bottomRightCorner(db, db) = b.cov().matrix();
  Vector mean(da + db);
  mean << a.mean(), b.mean();
  return GaussianState(std::move(mean), CovarianceMatrix(std::move(v)));
}

/// Phase-space translation of the mean.
inline GaussianState displaced(const GaussianState& st, const Vector& shift) {
  if (shift.size() != st.mean().size()) throw DimensionMismatch("displacement has wrong length");
  return GaussianState(st.mean() + shift, st.cov());
}

/// Apply the Gaussian unitary with symplectic matrix S: V -> S V S^T, mean -> S mean.
inline GaussianState transform(const GaussianState& st, const Matrix& s) {
  if (s.rows() != st.cov().dim() || s.cols() != st.cov().dim()) {
    throw DimensionMismatch("symplectic matrix has wrong size");
  }
  return GaussianState(s * st.mean(), CovarianceMatrix(s * st.cov().matrix() * s.transpose()));
}

/// Symplectic matrix of the balanced beam splitter exp(pi/4 (a_i^dag a_j - a_i a_j^dag))
/// acting on modes (i, j): R_i -> (R_i + R_j)/sqrt2, R_j -> (R_j - R_i)/sqrt2.
inline Matrix beam_splitter_symplectic(std::size_t modes, std::size_t i, std::size_t j) {
  if (i == j || i >= modes || j >= modes) {
    throw DomainError("beam splitter needs two distinct valid modes");
  }
  const auto d = static_cast<Eigen::Index>(2 * modes);
  Matrix s = Matrix::Identity(d, d);
  const double h = std::numbers::sqrt2 / 2.0;
  for (Eigen::Index q = 0; q < 2; ++q) {
    const auto ri = static_cast<Eigen::Index>(2 * i) + q;
    const auto rj = static_cast<Eigen::Index>(2 * j) + q;
    s(ri, ri) = h;
    s(ri, rj) = h;
    s(rj, ri) = -h;
    s(rj, rj) = h;
  }
  return s;
}

inline GaussianState apply_beam_splitter(const GaussianState& st, std::size_t i, std::size_t j) {
  return transform(st, beam_splitter_symplectic(st.modes(), i, j));
}

// ---------------------------------------------------------------------------
// Measures

/// Quadrature coherence scale squared, C^2 = Tr V^{-1} / (2n).
/// Equals the total quantum Fisher information on Gaussian states.
inline double qcs2_gaussian(const GaussianState& st) {
  Eigen::LLT<Matrix> llt(st.cov().matrix());
  if (llt.info() != Eigen::Success) {
    throw NonPositiveDefinite("covariance matrix is not positive definite");
  }
  const Matrix inv = llt.solve(Matrix::Identity(st.cov().dim(), st.cov().dim()));
  return inv.trace() / (2.0 * static_cast<double>(st.modes()));
}

inline double ftot_gaussian(const GaussianState& st) { return qcs2_gaussian(st); }

/// C^2 through the characteristic function: |chi|^2 is a Gaussian with
/// covariance Sigma = (1/2) Omega V^{-1} Omega^T, and C^2 = Tr Sigma / n.
/// Uses an eigen-decomposition of Omega V Omega^T rather than Cholesky of V.
inline double qcs2_gaussian_char_oracle(const GaussianState& st) {
  const Matrix omega = symplectic_form(st.modes());
  const Matrix m = omega * st.cov().matrix() * omega.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= tol::kPositiveDefinite) {
    throw NonPositiveDefinite("covariance matrix is not positive definite");
  }
  const Matrix sigma = 0.5 * es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() *
                       es.eigenvectors().transpose();
  return sigma.trace() / static_cast<double>(st.modes());
}

struct LogNegativity {
  double value = 0.0;
  std::size_t n_minus = 0;
};

/// E_N = sum over partially transposed symplectic eigenvalues below 1 of ln(1/nu).
inline LogNegativity log_negativity_gaussian(const GaussianState& st, const Bipartition& bp) {
  const auto nu = symplectic_eigenvalues(partial_transpose(st.cov(), bp));
  LogNegativity out;
  for (double x : nu) {
    if (x < 1.0 - tol::kPhysical) {
      ++out.n_minus;
      out.value -= std::log(x);
    }
  }
  return out;
}

/// Von Neumann entropy (nats) of a Gaussian state with covariance V:
/// sum_k g((nu_k - 1)/2).
inline double gaussian_entropy(const CovarianceMatrix& v) {
  double s = 0.0;
  for (double nu : symplectic_eigenvalues(v)) {
    s += g(std::max(0.0, 0.5 * (nu - 1.0)));
  }
  return s;
}

/// Entanglement entropy of a pure Gaussian state across the bipartition.
inline double entanglement_entropy_gaussian(const GaussianState& st, const Bipartition& bp) {
  if (bp.modes() != st.modes()) throw DimensionMismatch("bipartition does not match state");
  return gaussian_entropy(reduced_covariance(st.cov(), bp.a_modes()));
}

/// Total noise sum_j Delta R_j^2 = Tr V / 2, and M_TN = Tr V / (2n) for pure states.
inline double total_noise_gaussian(const GaussianState& st) { return 0.5 * st.cov().trace(); }

inline bool is_pure(const GaussianState& st, double tolerance = 1e-8) {
  for (double nu : symplectic_eigenvalues(st.cov())) {
    if (std::abs(nu - 1.0) > tolerance) return false;
  }
  return true;
}

struct MeasureReport {
  double qcs2 = 0.0;
  double ftot = 0.0;
  double log_negativity = 0.0;
  std::size_t n_minus = 0;
  std::vector<double> spectrum;
  std::vector<double> pt_spectrum;
};

inline MeasureReport measure(const GaussianState& st, const Bipartition& bp) {
  MeasureReport r;
  r.qcs2 = qcs2_gaussian(st);
  r.ftot = r.qcs2;
  const auto en = log_negativity_gaussian(st, bp);
  r.log_negativity = en.value;
  r.n_minus = en.n_minus;
  r.spectrum = symplectic_eigenvalues(st.cov());
  r.pt_spectrum = symplectic_eigenvalues(partial_transpose(st.cov(), bp));
  return r;
}

// ---------------------------------------------------------------------------
// Random states

/// How symplectic eigenvalues of random states are drawn:
/// nu_k = 1 + Exponential(rate), or nu_k = 1 when `pure`.
struct PurityProfile {
  bool pure = false;
  double rate = 1.0;
  /// Single-mode squeezing parameters are Uniform[0, max_squeezing].
  double max_squeezing = 1.0;

  static PurityProfile pure_states(double max_squeezing = 1.0) {
    return PurityProfile{true, 1.0, max_squeezing};
  }
};

namespace detail {

/// Haar unitary via QR of a complex Ginibre matrix with the phase fix.
template <class Rng>
Eigen::MatrixXcd haar_unitary(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd z(m, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    for (Eigen::Index r = 0; r < m; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = {re, im};
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < m; ++k) {
    const double a = std::abs(rr(k, k));
    if (a > 0.0) q.col(k) *= rr(k, k) / a;
  }
  return q;
}

/// Passive (orthogonal symplectic) matrix for the mode transformation a -> U a.
inline Matrix passive_symplectic(const Eigen::MatrixXcd& u) {
  const Eigen::Index n = u.rows();
  Matrix s(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double a = u(j, k).real(), b = u(j, k).imag();
      s(2 * j, 2 * k) = a;
      s(2 * j, 2 * k + 1) = -b;
      s(2 * j + 1, 2 * k) = b;
      s(2 * j + 1, 2 * k + 1) = a;
    }
  }
  return s;
}

}  // namespace detail

/// Random orthogonal symplectic matrix (Haar passive transformation).
template <class Rng>
Matrix random_passive_symplectic(std::size_t modes, Rng& rng) {
  return detail::passive_symplectic(detail::haar_unitary(modes, rng));
}

/// V = S diag(nu_1 1, ..., nu_n 1) S^T with S = O1 Z O2 (passive, squeezers, passive).
template <class Rng>
GaussianState random_gaussian_state(std::size_t modes, Rng& rng, const PurityProfile& profile = {}) {
  if (modes == 0) throw DomainError("mode count must be positive");
  if (!profile.pure && !(profile.rate > 0.0)) throw DomainError("purity rate must be > 0");
  if (!(profile.max_squeezing >= 0.0)) throw DomainError("max_squeezing must be >= 0");
  const auto d = static_cast<Eigen::Index>(2 * modes);
  std::exponential_distribution<double> expo(profile.pure ? 1.0 : profile.rate);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  Vector thermal(d);
  for (std::size_t k = 0; k < modes; ++k) {
    const double nu = profile.pure ? 1.0 : 1.0 + expo(rng);
    thermal(static_cast<Eigen::Index>(2 * k)) = nu;
    thermal(static_cast<Eigen::Index>(2 * k + 1)) = nu;
  }
  const Matrix o2 = random_passive_symplectic(modes, rng);
  Vector squeeze(d);
  for (std::size_t k = 0; k < modes; ++k) {
    const double r = profile.max_squeezing * unif(rng);
    squeeze(static_cast<Eigen::Index>(2 * k)) = std::exp(-r);
    squeeze(static_cast<Eigen::Index>(2 * k + 1)) = std::exp(r);
  }
  const Matrix o1 = random_passive_symplectic(modes, rng);
  const Matrix s = o1 * squeeze.asDiagonal() * o2;
  return GaussianState(CovarianceMatrix(s * thermal.asDiagonal() * s.transpose()));
}

inline GaussianState random_gaussian_state(std::size_t modes, std::uint64_t seed,
                                           const PurityProfile& profile = {}) {
  std::mt19937_64 rng(seed);
  return random_gaussian_state(modes, rng, profile);
}

/// Classical control state: V = 1 + W W^T with W random (positive P-function).
template <class Rng>
GaussianState random_classical_gaussian_state(std::size_t modes, Rng& rng, double noise_scale = 1.0) {
  const auto d = static_cast<Eigen::Index>(2 * modes);
  std::normal_distribution<double> normal(0.0, noise_scale);
  Matrix w(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r) w(r, c) = normal(rng);
  Vector mean(d);
  for (Eigen::Index k = 0; k < d; ++k) mean(k) = normal(rng);
  return GaussianState(mean, CovarianceMatrix(Matrix::Identity(d, d) + w * w.transpose() / static_cast<double>(d)));
}

}  // namespace bosonic

#endif  // BOSONIC_GAUSSIAN_HPP
