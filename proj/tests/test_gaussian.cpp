#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "bosonic/fock.hpp"
#include "bosonic/gaussian.hpp"
#include "oracles.hpp"

using namespace bosonic;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Gaussian, Constructors) {
  EXPECT_EQ(make_thermal(0.0).cov(), make_vacuum(1).cov());
  const auto sq = make_squeezed(0.3, 0.0);
  EXPECT_NEAR(sq.cov()(0, 0), std::exp(-0.6), 1e-15);
  EXPECT_NEAR(sq.cov()(1, 1), std::exp(0.6), 1e-15);
  const auto sq2 = make_squeezed(0.3, kPi / 2);
  EXPECT_NEAR(sq2.cov()(0, 0), std::exp(0.6), 1e-14);
  EXPECT_NEAR(sq2.cov()(1, 1), std::exp(-0.6), 1e-14);
  EXPECT_NEAR(sq2.cov()(0, 1), 0.0, 1e-14);

  const auto t = make_tmsv(0.4);
  EXPECT_NEAR(t.cov()(0, 0), std::cosh(0.8), 1e-15);
  EXPECT_NEAR(t.cov()(3, 3), std::cosh(0.8), 1e-15);
  EXPECT_NEAR(t.cov()(0, 2), std::sinh(0.8), 1e-15);
  EXPECT_NEAR(t.cov()(1, 3), -std::sinh(0.8), 1e-15);
  EXPECT_NEAR(t.purity(), 1.0, 1e-12);

  EXPECT_THROW(make_squeezed(-0.1), DomainError);
  EXPECT_THROW(make_tmsv(-1.0), DomainError);
  EXPECT_THROW(make_thermal(-0.5), DomainError);
  EXPECT_THROW(make_vacuum(0), DomainError);
}

TEST(Gaussian, UnphysicalStateRejected) {
  try {
    GaussianState st(CovarianceMatrix(0.5 * Matrix::Identity(2, 2)));
    FAIL() << "expected UnphysicalState";
  } catch (const UnphysicalState& e) {
    EXPECT_NEAR(e.min_symplectic_eigenvalue(), 0.5, 1e-12);
  }
}

TEST(Gaussian, SqueezedVarianceMatchesFockOracle) {
  // The phase-space angle convention is shared by both representations.
  for (double phi : {0.0, kPi / 2, 0.3}) {
    const auto [mean, v] = quadrature_moments(make_fock_squeezed(0.4, phi));
    const Matrix expected = make_squeezed(0.4, phi).cov().matrix();
    EXPECT_LT((v - expected).cwiseAbs().maxCoeff(), 1e-8) << "phi=" << phi;
  }
}

TEST(Gaussian, OrthogonalSqueezersThroughBeamSplitterGiveTmsv) {
  for (double s : {0.2, 0.7, 1.3}) {
    const auto out = apply_beam_splitter(tensor(make_squeezed(s, 0.0), make_squeezed(s, kPi / 2)), 0, 1);
    EXPECT_LT((out.cov().matrix() - make_tmsv(s).cov().matrix()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Gaussian, BeamSplitterPreservesVacuumTraceAndSpectrum) {
  EXPECT_LT((apply_beam_splitter(make_vacuum(2), 0, 1).cov().matrix() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(),
            1e-15);
  EXPECT_TRUE(is_symplectic(beam_splitter_symplectic(3, 0, 2)));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 3);
    const auto st = random_gaussian_state(n, rng);
    const auto out = apply_beam_splitter(st, 0, n - 1);
    EXPECT_NEAR(out.cov().trace(), st.cov().trace(), 1e-10 * st.cov().trace());
    if (i % 10 == 0) {
      const auto a = symplectic_eigenvalues(st.cov()), b = symplectic_eigenvalues(out.cov());
      for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(a[k], b[k], 1e-9 * a[k]);
    }
  }
  EXPECT_THROW(beam_splitter_symplectic(2, 1, 1), DomainError);
  EXPECT_THROW(beam_splitter_symplectic(2, 0, 2), DomainError);
}

TEST(Gaussian, Qcs2Examples) {
  EXPECT_NEAR(qcs2_gaussian(make_vacuum(3)), 1.0, 1e-15);
  EXPECT_NEAR(qcs2_gaussian(make_squeezed(0.6)), std::cosh(1.2), 1e-13);
  EXPECT_NEAR(qcs2_gaussian(make_thermal(1.5)), 1.0 / 4.0, 1e-15);
  EXPECT_NEAR(qcs2_gaussian(make_tmsv(0.7)), std::cosh(1.4), 1e-12);
  EXPECT_NEAR(qcs2_gaussian_char_oracle(make_tmsv(0.7)), std::cosh(1.4), 1e-12);
  EXPECT_NEAR(qcs2_gaussian_char_oracle(make_vacuum(2)), 1.0, 1e-15);
}

TEST(Gaussian, Qcs2MatchesCharacteristicFunctionQuadrature) {
  // Direct numerical integration of |xi|^2 |chi(xi)|^2 for single modes.
  EXPECT_NEAR(oracle::qcs2_single_mode_quadrature(Eigen::Matrix2d::Identity()), 1.0, 1e-8);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5; ++i) {
    const auto st = random_gaussian_state(1, rng);
    const Eigen::Matrix2d v = st.cov().matrix();
    EXPECT_NEAR(qcs2_gaussian(st), oracle::qcs2_single_mode_quadrature(v), 1e-7 * qcs2_gaussian(st));
  }
}

TEST(Gaussian, Qcs2TwoFormulasAgreeOnRandomStates) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 5);
    const auto st = random_gaussian_state(n, rng);
    EXPECT_NEAR(qcs2_gaussian(st), qcs2_gaussian_char_oracle(st), 1e-10 * std::max(1.0, qcs2_gaussian(st)));
  }
}

TEST(Gaussian, LogNegativityExamples) {
  const auto bp = Bipartition::split(1, 1);
  const auto vac = log_negativity_gaussian(make_vacuum(2), bp);
  EXPECT_EQ(vac.n_minus, 0u);
  EXPECT_EQ(vac.value, 0.0);
  const auto t = log_negativity_gaussian(make_tmsv(0.5), bp);
  EXPECT_EQ(t.n_minus, 1u);
  EXPECT_NEAR(t.value, 1.0, 1e-12);
  // Cross-check with the Schmidt coefficients of the Fock representation. The
  // sum of Schmidt coefficients converges like the square root of the tail.
  EXPECT_NEAR(log_negativity_pure(make_fock_tmsv(0.5, std::nullopt, 1e-15), bp), 1.0, 1e-7);
  const auto th = log_negativity_gaussian(tensor(make_thermal(0.3), make_thermal(2.0)), bp);
  EXPECT_EQ(th.n_minus, 0u);
  EXPECT_EQ(th.value, 0.0);
}

TEST(Gaussian, TranslationInvariance) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    const auto st = random_gaussian_state(2, rng);
    Vector shift(4);
    shift << 1.5, -2.0, 0.3, 7.0;
    const auto moved = displaced(st, shift);
    EXPECT_EQ(qcs2_gaussian(moved), qcs2_gaussian(st));
    EXPECT_EQ(log_negativity_gaussian(moved, Bipartition::split(1, 1)).value,
              log_negativity_gaussian(st, Bipartition::split(1, 1)).value);
  }
}

TEST(Gaussian, TmsvHasOneNegativeEigenvalue) {
  for (double r : {0.01, 0.3, 1.0, 2.0}) {
    const auto m = measure(make_tmsv(r), Bipartition::split(1, 1));
    EXPECT_EQ(m.n_minus, 1u);
    EXPECT_NEAR(m.log_negativity, 2 * r, 1e-10);
    EXPECT_DOUBLE_EQ(m.qcs2, m.ftot);
  }
}

TEST(Gaussian, EntanglementEntropyOfTmsv) {
  for (double r : {0.2, 0.8, 1.5}) {
    EXPECT_NEAR(entanglement_entropy_gaussian(make_tmsv(r), Bipartition::split(1, 1)),
                oracle::g_direct(std::sinh(r) * std::sinh(r)), 1e-10);
  }
}

TEST(Gaussian, RandomStatesAreDeterministicAndPhysical) {
  const auto a = random_gaussian_state(4, std::uint64_t{42});
  const auto b = random_gaussian_state(4, std::uint64_t{42});
  EXPECT_EQ(a.cov(), b.cov());
  EXPECT_TRUE(check_physicality(a.cov()).is_physical);
  const auto pure = random_gaussian_state(3, std::uint64_t{5}, PurityProfile::pure_states());
  EXPECT_TRUE(is_pure(pure));
  EXPECT_NEAR(pure.purity(), 1.0, 1e-9);
  // Passive rotation of the vacuum stays the vacuum.
  PurityProfile none = PurityProfile::pure_states(0.0);
  EXPECT_NEAR(qcs2_gaussian(random_gaussian_state(3, std::uint64_t{6}, none)), 1.0, 1e-12);
}

TEST(Gaussian, ClassicalControlStates) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto st = random_classical_gaussian_state(3, rng);
    EXPECT_LE(qcs2_gaussian(st), 1.0 + 1e-12);
    EXPECT_EQ(log_negativity_gaussian(st, Bipartition::split(1, 2)).n_minus, 0u);
  }
}

TEST(Gaussian, PureTripleIdentityAgainstFock) {
  // For pure Gaussian states C^2 = F_tot = M_TN = N_tot / n.
  const auto in = tensor(make_squeezed(0.35, 0.0), make_squeezed(0.2, 1.1));
  const auto out = apply_beam_splitter(in, 0, 1);
  const auto fock_in = tensor(make_fock_squeezed(0.35, 0.0, std::nullopt, 1e-14),
                              make_fock_squeezed(0.2, 1.1, std::nullopt, 1e-14));
  EXPECT_NEAR(qcs2_gaussian(out), mtn_pure(fock_in, 1e-13), 1e-9);
  EXPECT_NEAR(qcs2_gaussian(out), total_noise_gaussian(out) / 2.0, 1e-12);
}
