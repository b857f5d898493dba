#ifndef BOSONIC_SYMPLECTIC_HPP
#define BOSONIC_SYMPLECTIC_HPP

// Real symplectic linear algebra on covariance matrices.
//
// Quadratures are interleaved, R = (X1, P1, ..., Xn, Pn), and the vacuum
// covariance matrix is the identity (vacuum variance 1/2).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bosonic/errors.hpp"
#include "bosonic/tolerances.hpp"

namespace bosonic {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Symmetric 2n x 2n covariance matrix in interleaved ordering.
///
/// Construction checks shape and symmetry (relative to the largest entry) and
/// stores the exactly symmetrised matrix. Positive definiteness and
/// physicality are checked by the functions that need them.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Matrix m) {
    if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
      throw DimensionMismatch("covariance matrix must be square with even, nonzero size; got " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (!m.allFinite()) {
      throw DomainError("covariance matrix has non-finite entries");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol::kSymmetry * scale) {
      throw AsymmetricInput("covariance matrix is not symmetric (max |V - V^T| = " +
                            std::to_string(asym) + ")");
    }
    m_ = 0.5 * (m + m.transpose());
  }

  static CovarianceMatrix identity(std::size_t modes) {
    const auto d = static_cast<Eigen::Index>(2 * modes);
    return CovarianceMatrix(Matrix::Identity(d, d));
  }

  std::size_t modes() const noexcept { return static_cast<std::size_t>(m_.rows() / 2); }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  double trace() const { return m_.trace(); }
  double determinant() const { return m_.determinant(); }

  friend bool operator==(const CovarianceMatrix& a, const CovarianceMatrix& b) {
    return a.m_ == b.m_;
  }

 private:
  Matrix m_;
};

/// Split of the modes into parties A and B.
///
/// Mode lists are kept in the given order; `split(na, nb)` puts A first.
class Bipartition {
 public:
  Bipartition(std::vector<std::size_t> a_modes, std::vector<std::size_t> b_modes)
      : a_(std::move(a_modes)), b_(std::move(b_modes)) {
    if (a_.empty() || b_.empty()) {
      throw DomainError("bipartition needs at least one mode on each side");
    }
    std::vector<std::size_t> all(a_);
    all.insert(all.end(), b_.begin(), b_.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (all[i] != i) {
        throw DomainError("bipartition must assign each of the modes 0..n-1 exactly once");
      }
    }
  }

  static Bipartition split(std::size_t n_a, std::size_t n_b) {
    std::vector<std::size_t> a(n_a), b(n_b);
    std::iota(a.begin(), a.end(), std::size_t{0});
    std::iota(b.begin(), b.end(), n_a);
    return Bipartition(std::move(a), std::move(b));
  }

  std::size_t n_a() const noexcept { return a_.size(); }
  std::size_t n_b() const noexcept { return b_.size(); }
  std::size_t modes() const noexcept { return a_.size() + b_.size(); }
  const std::vector<std::size_t>& a_modes() const noexcept { return a_; }
  const std::vector<std::size_t>& b_modes() const noexcept { return b_; }

  Bipartition swapped() const { return Bipartition(b_, a_); }

 private:
  std::vector<std::size_t> a_;
  std::vector<std::size_t> b_;
};

/// Omega = (+)_k [[0, 1], [-1, 0]].
inline Matrix symplectic_form(std::size_t modes) {
  const auto d = static_cast<Eigen::Index>(2 * modes);
  Matrix omega = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; k += 2) {
    omega(k, k + 1) = 1.0;
    omega(k + 1, k) = -1.0;
  }
  return omega;
}

inline bool is_symplectic(const Matrix& s, double tolerance = 1e-10) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) return false;
  const Matrix omega = symplectic_form(static_cast<std::size_t>(s.rows() / 2));
  return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff() <= tolerance;
}

namespace detail {

inline Eigen::SelfAdjointEigenSolver<Matrix> positive_definite_eigen(const CovarianceMatrix& v) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(v.matrix());
  if (es.info() != Eigen::Success) {
    throw NonPositiveDefinite("eigen-decomposition of covariance matrix failed");
  }
  if (es.eigenvalues().minCoeff() <= tol::kPositiveDefinite) {
    throw NonPositiveDefinite("covariance matrix is not positive definite (min eigenvalue " +
                              std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
  return es;
}

}  // namespace detail

/// Symplectic eigenvalues of V, ascending.
///
/// The spectrum of i*Omega*V equals that of the Hermitian matrix
/// i * V^{1/2} Omega V^{1/2}, which is +-nu_k; the positive half is returned.
inline std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v) {
  const auto es = detail::positive_definite_eigen(v);
  const Matrix sqrt_v = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
                        es.eigenvectors().transpose();
  const Matrix a = sqrt_v * symplectic_form(v.modes()) * sqrt_v;
  const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(h, Eigen::EigenvaluesOnly);
  const auto& ev = hs.eigenvalues();  // ascending
  const std::size_t n = v.modes();
  std::vector<double> nu(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Pair +nu with -nu to cancel rounding in the symmetric spectrum.
    const double plus = ev(static_cast<Eigen::Index>(n + k));
    const double minus = ev(static_cast<Eigen::Index>(n - 1 - k));
    nu[k] = 0.5 * (plus - minus);
  }
  std::sort(nu.begin(), nu.end());
  return nu;
}

/// Str V = 2 * sum of symplectic eigenvalues.
inline double symplectic_trace(const CovarianceMatrix& v) {
  const auto nu = symplectic_eigenvalues(v);
  return 2.0 * std::accumulate(nu.begin(), nu.end(), 0.0);
}

/// Principal submatrix of V on the listed modes, in the listed order.
inline CovarianceMatrix reduced_covariance(const CovarianceMatrix& v,
                                           std::span<const std::size_t> modes) {
  const auto m = static_cast<Eigen::Index>(modes.size());
  Matrix out(2 * m, 2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto mi = static_cast<Eigen::Index>(modes[static_cast<std::size_t>(i)]);
      const auto mj = static_cast<Eigen::Index>(modes[static_cast<std::size_t>(j)]);
      if (mi >= static_cast<Eigen::Index>(v.modes()) || mj >= static_cast<Eigen::Index>(v.modes())) {
        throw DimensionMismatch("mode index out of range in reduced_covariance");
      }
      out.block<2, 2>(2 * i, 2 * j) = v.matrix().block<2, 2>(2 * mi, 2 * mj);
    }
  }
  return CovarianceMatrix(std::move(out));
}

/// T_B V T_B with T_B flipping the sign of P on every B mode.
inline CovarianceMatrix partial_transpose(const CovarianceMatrix& v, const Bipartition& bp) {
  if (bp.modes() != v.modes()) {
    throw DimensionMismatch("bipartition covers " + std::to_string(bp.modes()) +
                            " modes but covariance matrix has " + std::to_string(v.modes()));
  }
  Vector signs = Vector::Ones(v.dim());
  for (std::size_t b : bp.b_modes()) signs(static_cast<Eigen::Index>(2 * b + 1)) = -1.0;
  return CovarianceMatrix(signs.asDiagonal() * v.matrix() * signs.asDiagonal());
}

struct PhysicalityReport {
  bool is_physical = false;
  bool positive_definite = false;
  /// Zero when V is not positive definite.
  double min_symplectic_eigenvalue = 0.0;
};

inline PhysicalityReport check_physicality(const CovarianceMatrix& v) {
  PhysicalityReport report;
  try {
    const auto nu = symplectic_eigenvalues(v);
    report.positive_definite = true;
    report.min_symplectic_eigenvalue = nu.front();
    report.is_physical = nu.front() >= 1.0 - tol::kPhysical;
  } catch (const NonPositiveDefinite&) {
    report = PhysicalityReport{};
  }
  return report;
}

}  // namespace bosonic

#endif  // BOSONIC_SYMPLECTIC_HPP
