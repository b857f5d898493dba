#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "bosonic/experiments.hpp"
#include "bosonic/fock.hpp"
#include "bosonic/gaussian.hpp"
#include "oracles.hpp"

using namespace bosonic;

namespace {
constexpr double kPi = std::numbers::pi;
const Bipartition kOneOne = Bipartition::split(1, 1);
}  // namespace

TEST(FockShape, IndexRoundTrip) {
  const FockShape shape({3, 4, 2});
  EXPECT_EQ(shape.size(), 24u);
  for (std::size_t f = 0; f < shape.size(); ++f) EXPECT_EQ(shape.index(shape.occupation(f)), f);
  const Occupation occ{2, 1, 1};
  EXPECT_EQ(shape.index(occ), 2u * 8 + 1u * 2 + 1u);
  EXPECT_THROW(shape.index(Occupation{3, 0, 0}), CutoffOverflow);
}

TEST(FockState, TotalNoiseExamples) {
  EXPECT_NEAR(total_noise(fock_basis_state({0})), 1.0, 1e-15);
  const auto five = fock_basis_state({5, 0});
  EXPECT_NEAR(total_noise(five), 12.0, 1e-13);
  EXPECT_NEAR(mtn_pure(five), 6.0, 1e-13);
  EXPECT_NEAR(total_noise(make_fock_squeezed(0.5, 0.0, std::nullopt, 1e-14), 1e-13), std::cosh(1.0), 1e-11);
  // First moments are removed: coherent states have M_TN = 1.
  EXPECT_NEAR(mtn_pure(make_fock_coherent({1.2, -0.4}, std::nullopt, 1e-14), 1e-13), 1.0, 1e-10);
}

TEST(FockState, TruncationIsEnforced) {
  const auto sq = make_fock_squeezed(1.0);
  EXPECT_LE(sq.tail_mass(), 1e-10);
  const FockPureState cut(std::vector<std::size_t>{5}, sq.amps().head(5));
  EXPECT_GT(cut.tail_mass(), 1e-3);
  EXPECT_THROW(total_noise(cut), TruncationError);
  EXPECT_THROW(with_cutoffs(sq, {5}), CutoffOverflow);
  const auto tmsv = make_fock_tmsv(1.0);
  CVector amps = CVector::Zero(16);
  for (Eigen::Index k = 0; k < 4; ++k) amps(5 * k) = tmsv.amplitude(Occupation{static_cast<std::size_t>(k), static_cast<std::size_t>(k)});
  EXPECT_THROW(entanglement_entropy(FockPureState(std::vector<std::size_t>{4, 4}, amps), kOneOne), TruncationError);
  try {
    make_fock_tmsv(1.0, std::size_t{4});
    FAIL() << "expected TruncationError";
  } catch (const TruncationError& e) {
    EXPECT_GT(e.required_cutoff(), 4u);
  }
}

TEST(FockState, QuadratureOpsCommutator) {
  const QuadratureOps ops(8);
  const CMatrix comm = ops.x * ops.p - ops.p * ops.x;
  for (Eigen::Index k = 0; k < 7; ++k) EXPECT_NEAR(std::abs(comm(k, k) - Complex(0.0, 1.0)), 0.0, 1e-14);
  EXPECT_LT((ops.n - ops.adag * ops.a).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(BeamSplitter, MatchesBinomialExpansionForSmallBlocks) {
  for (int total = 0; total <= 12; ++total) {
    const std::size_t d = static_cast<std::size_t>(total) + 1;
    for (int n1 = 0; n1 <= total; ++n1) {
      const auto out = apply_beam_splitter_fock(
          fock_basis_state({static_cast<std::size_t>(n1), static_cast<std::size_t>(total - n1)}, {d, d}), 0, 1);
      for (int m = 0; m <= total; ++m) {
        const Complex amp = out.amplitude(Occupation{static_cast<std::size_t>(m), static_cast<std::size_t>(total - m)});
        EXPECT_NEAR(amp.real(), oracle::beam_splitter_element(m, n1, total), 1e-12)
            << "total=" << total << " n1=" << n1 << " m=" << m;
        EXPECT_EQ(amp.imag(), 0.0);
      }
    }
  }
}

TEST(BeamSplitter, HeisenbergConventionOnOnePhoton) {
  // B a1^dag B^dag = (a1^dag - a2^dag)/sqrt2: |1,0> -> (|1,0> - |0,1>)/sqrt2.
  const auto out = apply_beam_splitter_fock(fock_basis_state({1, 0}, {2, 2}), 0, 1);
  EXPECT_NEAR(out.amplitude(Occupation{1, 0}).real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(out.amplitude(Occupation{0, 1}).real(), -std::sqrt(0.5), 1e-15);
}

TEST(BeamSplitter, UnitaryAndOverflowChecked) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  FockShape shape({9, 9});
  CVector amps = CVector::Zero(81);
  for (std::size_t f = 0; f < 81; ++f) {
    const auto o = shape.occupation(f);
    if (o[0] + o[1] < 9) amps(static_cast<Eigen::Index>(f)) = Complex(normal(rng), normal(rng));
  }
  amps.normalize();
  const FockPureState psi(shape, amps);
  const auto out = apply_beam_splitter_fock(psi, 0, 1);
  EXPECT_NEAR(out.norm2(), 1.0, 1e-13);
  EXPECT_THROW(apply_beam_splitter_fock(fock_basis_state({3, 2}), 0, 1), CutoffOverflow);
}

TEST(BeamSplitter, BinomialEntropyOfSinglePortFockInput) {
  // Exact value for N = 10 from direct summation, not the large-N formula.
  EXPECT_NEAR(oracle::binomial_entropy(10), 1.8759536052468004, 1e-13);
  for (std::size_t n : {1u, 10u, 20u, 40u}) {
    const auto r = beam_splitter_entanglement(fock_basis_state({n, 0}));
    EXPECT_NEAR(r.e_f, oracle::binomial_entropy(static_cast<int>(n)), 1e-10) << "N=" << n;
    EXPECT_NEAR(r.mtn_in, static_cast<double>(n) + 1.0, 1e-10);
  }
}

TEST(BeamSplitter, TwinFockInput) {
  for (std::size_t n : {1u, 5u, 10u, 20u}) {
    const auto r = beam_splitter_entanglement(fock_basis_state({n, n}));
    EXPECT_NEAR(r.e_f, oracle::twin_fock_entropy(static_cast<int>(n)), 1e-10) << "N=" << n;
    EXPECT_NEAR(r.mtn_in, 2.0 * n + 1.0, 1e-10);
    // Only even occupations appear in the output.
    for (std::size_t m = 1; m < 2 * n; m += 2) {
      EXPECT_NEAR(std::abs(r.output.amplitude(Occupation{m, 2 * n - m})), 0.0, 1e-11);
    }
  }
}

TEST(BeamSplitter, OrthogonalSqueezedInputsGiveTmsvCovariance) {
  const double s = 0.5;
  const auto in = tensor(make_fock_squeezed(s, 0.0, std::nullopt, 1e-14), make_fock_squeezed(s, kPi / 2, std::nullopt, 1e-14));
  const auto r = beam_splitter_entanglement(in, 1e-13);
  const auto [mean, v] = quadrature_moments(r.output);
  EXPECT_LT((v - make_tmsv(s).cov().matrix()).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT(mean.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Entanglement, TmsvSchmidtSpectrum) {
  for (double r : {0.2, 0.5, 0.8, 1.1}) {
    const auto psi = make_fock_tmsv(r, std::nullopt, 1e-14);
    const auto sigma = schmidt_coefficients(psi, kOneOne, 1e-14);
    EXPECT_NEAR(sigma[0], 1.0 / std::cosh(r), 1e-12);
    EXPECT_NEAR(sigma[1], std::tanh(r) / std::cosh(r), 1e-12);
    EXPECT_NEAR(entanglement_entropy(psi, kOneOne, 1e-14), oracle::g_direct(std::sinh(r) * std::sinh(r)), 1e-10);
    EXPECT_NEAR(mtn_pure(psi, 1e-14), std::cosh(2 * r), 1e-10);
  }
}

TEST(Entanglement, ProductStateHasNoEntanglement) {
  const auto psi = tensor(make_fock_coherent({0.5, 0.2}), make_fock_squeezed(0.3));
  EXPECT_NEAR(entanglement_entropy(psi, Bipartition::split(1, 1), 2e-10), 0.0, 1e-12);
}

TEST(DensityOperator, Qcs2Examples) {
  for (double nbar : {0.0, 0.5, 2.0}) {
    EXPECT_NEAR(qcs2_fock(make_fock_thermal(nbar)), 1.0 / (2 * nbar + 1), 1e-8) << "nbar=" << nbar;
  }
  const auto sq = make_fock_squeezed(0.4, 0.0, std::nullopt, 1e-14);
  const auto rho = FockDensityOperator::from_pure(with_cutoffs(sq, {sq.cutoffs()[0] + 2}));
  EXPECT_NEAR(qcs2_fock(rho), std::cosh(0.8), 1e-10);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
}

TEST(DensityOperator, TopLevelPopulationRejected) {
  const auto rho = FockDensityOperator::from_pure(fock_basis_state({2}));
  EXPECT_THROW(qcs2_fock(rho), TruncationError);
}

TEST(DensityOperator, MixtureOfCoherentStatesIsClassical) {
  const FockPureState a = with_cutoffs(make_fock_coherent({0.8, 0.0}), {30});
  const FockPureState b = with_cutoffs(make_fock_coherent({-0.3, 0.6}), {30});
  const double w[] = {0.3, 0.7};
  const FockPureState s[] = {a, b};
  const auto rho = FockDensityOperator::from_ensemble(w, s);
  EXPECT_LE(qcs2_fock(rho), 1.0 + 1e-9);
  EXPECT_LT(rho.purity(), 1.0);
}

TEST(DensityOperator, Validation) {
  CMatrix m = CMatrix::Identity(2, 2) * 0.5;
  m(0, 1) = Complex(0.1, 0.0);
  EXPECT_THROW(FockDensityOperator(FockShape({2}), m), Error);
  EXPECT_THROW(FockDensityOperator(FockShape({3}), CMatrix::Identity(2, 2) * 0.5), Error);
}

TEST(SaturatingFamily, TwoModesIsTmsv) {
  const auto psi = saturating_family(2, 0.6, {}, {}, 1e-14);
  EXPECT_NEAR(entanglement_entropy(psi, kOneOne, 1e-14), oracle::g_direct(std::sinh(0.6) * std::sinh(0.6)), 1e-11);
  EXPECT_NEAR(mtn_pure(psi, 1e-14), std::cosh(1.2), 1e-11);
}

TEST(SaturatingFamily, LocalShellUnitariesKeepSaturation) {
  ShellUnitary ua;
  ua.permutation = {{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}, {{2, 1}, {0, 3}}, {{0, 3}, {2, 1}}};
  ua.phase = [](const Occupation& k) { return 0.3 * static_cast<double>(k[0]) - 0.7 * static_cast<double>(k[1]); };
  ShellUnitary ub;
  ub.phase = [](const Occupation& k) { return 1.1 * static_cast<double>(k[0] * k[1]); };
  const double r = 0.4;
  const auto psi = saturating_family(4, r, ua, ub);
  const double ef = entanglement_entropy(psi, Bipartition::split(2, 2));
  const double mtn = mtn_pure(psi);
  EXPECT_NEAR(ef, 2.0 * oracle::g_direct(std::sinh(r) * std::sinh(r)), 1e-8);
  EXPECT_NEAR(mtn, std::cosh(2 * r), 1e-8);

  ShellUnitary bad;
  bad.permutation = {{{1, 0}, {0, 2}}, {{0, 2}, {1, 0}}};
  EXPECT_THROW(saturating_family(4, r, bad), DomainError);
}

TEST(AppendixC, StatesAndPhotonNumbers) {
  const auto st = appendix_c_state(0.5, 2, std::nullopt, 1e-15);
  EXPECT_NEAR(mean_photon_number(st.psi_q), 2.0, 1e-12);
  EXPECT_NEAR(mtn_pure(st.psi_q, 1e-15), 7.0 / 3.0, 1e-12);
  EXPECT_NEAR(mtn_pure(st.psi_prime, 1e-15), 2.25, 1e-12);
  // U_B is local, so the entanglement is that of the geometric distribution.
  EXPECT_NEAR(entanglement_entropy(st.psi_prime, Bipartition::split(1, 2), 1e-15), 2 * std::log(2.0), 1e-12);
  EXPECT_THROW(appendix_c_state(1.2, 2), DomainError);
  EXPECT_THROW(appendix_c_state(0.5, 1), DomainError);
}
