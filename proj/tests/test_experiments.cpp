#include <cmath>
#include <numbers>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "bosonic/experiments.hpp"
#include "oracles.hpp"

using namespace bosonic;

namespace {

std::string csv(const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

}  // namespace

TEST(Experiments, FamilyNamesRoundTrip) {
  for (auto f : {InputFamily::fock_N0, InputFamily::fock_NN, InputFamily::squeezed_2s_vac, InputFamily::squeezed_sym,
                 InputFamily::tmsv_direct}) {
    EXPECT_EQ(parse_input_family(to_string(f)), f);
  }
  EXPECT_THROW(parse_input_family("cat"), DomainError);
}

TEST(Experiments, SeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 4; ++s)
    for (std::uint64_t i = 0; i < 500; ++i) seen.insert(instance_seed(7, s, i));
  EXPECT_EQ(seen.size(), 2000u);
  EXPECT_EQ(instance_seed(7, 1, 2), instance_seed(7, 1, 2));
}

TEST(Sweep, LinkedSqueezingMatchesNoise) {
  // M_TN of |2s, 0> is (cosh 4s + 1)/2, which must equal cosh 2s*.
  for (double s_star : {0.1, 0.5, 1.0, 1.2}) {
    const double s = linked_squeezing(s_star);
    EXPECT_NEAR(0.5 * (std::cosh(4 * s) + 1.0), std::cosh(2 * s_star), 1e-12 * std::cosh(2 * s_star));
    const auto a = run_sweep_point(InputFamily::squeezed_2s_vac, s_star);
    const auto b = run_sweep_point(InputFamily::squeezed_sym, s_star);
    EXPECT_NEAR(a.mtn_in, b.mtn_in, 1e-8);
    EXPECT_LE(a.e_f, b.e_f + 1e-9);
  }
}

TEST(Sweep, SqueezedFamiliesSaturateOrRespectBound) {
  for (auto family : {InputFamily::squeezed_sym, InputFamily::tmsv_direct}) {
    for (double p : default_sweep_grid(family)) {
      if (p == 0.0) continue;
      const auto row = run_sweep_point(family, p);
      EXPECT_NEAR(row.e_f, row.g_in, 1e-6) << to_string(family) << " p=" << p;
      EXPECT_LE(row.tail_mass, 1e-10);
    }
  }
  for (double p : default_sweep_grid(InputFamily::squeezed_2s_vac)) {
    const auto row = run_sweep_point(InputFamily::squeezed_2s_vac, p);
    EXPECT_LE(row.e_f, row.g_in + tol::kCheck);
  }
}

TEST(Sweep, FockFamiliesAgainstOracle) {
  for (int n : {1, 10, 20, 40}) {
    const auto a = run_sweep_point(InputFamily::fock_N0, n);
    EXPECT_NEAR(a.e_f, oracle::binomial_entropy(n), 1e-10);
    EXPECT_NEAR(a.ratio, oracle::binomial_entropy(n) / oracle::g_direct(0.5 * n), 1e-10);
    const auto b = run_sweep_point(InputFamily::fock_NN, n);
    EXPECT_NEAR(b.e_f, oracle::twin_fock_entropy(n), 1e-10);
    EXPECT_LE(b.e_f, b.g_in);
  }
  EXPECT_THROW(run_sweep_point(InputFamily::fock_N0, 2.5), DomainError);
}

TEST(Sweep, FockFamilyAsymptotics) {
  // The binomial entropy approaches (1/2) ln(pi e N / 2). Its distance to
  // (1/2) ln(2 pi e N) also shrinks, but towards ln 2 rather than zero.
  const double pi = std::numbers::pi, e = std::numbers::e;
  double prev_n0 = 1e9, prev_wrong = 1e9, prev_nn = 1e9;
  for (int n : {10, 20, 40, 80}) {
    const double ef0 = run_sweep_point(InputFamily::fock_N0, n).e_f;
    const double gap0 = std::abs(ef0 - 0.5 * std::log(pi * e * n / 2.0));
    const double wrong = std::abs(ef0 - 0.5 * std::log(2.0 * pi * e * n));
    EXPECT_LT(gap0, prev_n0);
    EXPECT_LT(wrong, prev_wrong);
    EXPECT_GT(wrong, std::log(2.0));
    const double gapn = std::abs(run_sweep_point(InputFamily::fock_NN, n).e_f - (std::log(pi / 4.0) + std::log(n)));
    EXPECT_LT(gapn, prev_nn);
    prev_n0 = gap0;
    prev_wrong = wrong;
    prev_nn = gapn;
  }
}

TEST(Sweep, OutputIndependentOfJobs) {
  SweepSpec spec;
  spec.family = InputFamily::fock_N0;
  spec.parameters = {0, 1, 5, 12, 30};
  const auto one = csv(sweep_table(run_fig1_right(spec, 1)));
  const auto three = csv(sweep_table(run_fig1_right(spec, 3)));
  EXPECT_EQ(one, three);
  EXPECT_EQ(one.substr(0, one.find('\n')), "family,parameter,mtn_in,g_in_nats,e_f_nats,ratio,cutoff,tail_mass");
}

TEST(Curves, Fig2ReproducesFrozenEnvelope) {
  std::ifstream in(std::string(BOSONIC_TEST_DATA) + "/nastar_envelope.csv");
  ASSERT_TRUE(in);
  std::stringstream frozen;
  frozen << in.rdbuf();
  CurveSpec spec;
  spec.mu = {0.1, 0.2, 0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75, 0.9};
  spec.nu = default_nu_grid(25);
  EXPECT_EQ(csv(run_fig2(spec)), frozen.str());
}

TEST(Curves, Fig1LeftOrdering) {
  const auto t = run_fig1_left(CurveSpec{});
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double mu = t.number(i, "mu"), nu = t.number(i, "nu");
    const double f = t.number(i, "F_bisection_per_nA");
    EXPECT_LE(t.number(i, "gaussian_bound_per_nA"), f + 1e-12);
    if (mu == 1.0) EXPECT_NEAR(f, g(0.5 * nu), 1e-12);
  }
}

TEST(Audit, SmallRunPassesAndIsDeterministic) {
  AuditSpec spec;
  spec.seed = 12345;
  spec.gaussian_states = 300;
  spec.fock_states = 60;
  spec.classical_states = 60;
  spec.jobs = 1;
  const auto a = run_random_audit(spec);
  spec.jobs = 2;
  const auto b = run_random_audit(spec);
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(csv(audit_table(a)), csv(audit_table(b)));
  std::set<std::string> names;
  for (const auto& c : a.checks) {
    names.insert(c.check);
    EXPECT_GT(c.evaluated, 0u) << c.check;
    EXPECT_EQ(c.violations, 0u) << c.check;
  }
  for (const char* n : {"theorem2", "theorem1", "theorem1prime", "gaussian_pure_bound", "classical_qcs2_le_1"}) {
    EXPECT_TRUE(names.count(n)) << n;
  }
}

TEST(AppendixC, DemoReport) {
  const auto r = run_appendix_c_demo(0.5, 2, 1e-15);
  EXPECT_NEAR(r.mean_photons_q, 2.0, 1e-12);
  EXPECT_NEAR(r.mtn_q, 7.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.mtn_prime, 2.25, 1e-12);
  EXPECT_NEAR(r.mtn_shift, r.mtn_shift_predicted, 1e-12);
  EXPECT_NEAR(r.e_f, 2.0 * std::log(2.0), 1e-12);
  EXPECT_TRUE(r.gaussian_bound_violated);
  EXPECT_TRUE(r.theorem1prime_holds);
  EXPECT_GT(r.theorem1prime_bound - r.e_f, 1e-3);
  for (double q : {0.2, 0.7}) {
    for (std::size_t k : {2u, 3u, 5u}) {
      const auto s = run_appendix_c_demo(q, k, 1e-14);
      EXPECT_NEAR(s.mtn_shift, s.mtn_shift_predicted, 1e-10) << "q=" << q << " k=" << k;
    }
  }
}
