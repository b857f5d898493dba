#include <cmath>

#include <gtest/gtest.h>

#include "bosonic/io.hpp"

using namespace bosonic;

namespace {

std::string schema_message(const Json& j, bool fock) {
  try {
    if (fock) {
      fock_from_json(j);
    } else {
      gaussian_from_json(j);
    }
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, GaussianRoundTrip) {
  Vector shift(4);
  shift << 0.5, -1.0, 0.0, 2.0;
  const auto st = displaced(make_tmsv(0.3), shift);
  const auto back = gaussian_from_json(Json::parse(to_json(st).dump()));
  EXPECT_EQ(back.cov(), st.cov());
  EXPECT_EQ(back.mean(), st.mean());
}

TEST(Io, GaussianMeanOptional) {
  const auto j = Json::parse(R"({"n": 1, "cov": [[2, 0], [0, 2]]})");
  const auto st = gaussian_from_json(j);
  EXPECT_TRUE(st.mean().isZero());
}

TEST(Io, SampleFileLoads) {
  const auto st = gaussian_from_json(read_json_file(std::string(BOSONIC_SAMPLE_DATA) + "/vac2.json"));
  EXPECT_EQ(st.modes(), 2u);
  EXPECT_NEAR(qcs2_gaussian(st), 1.0, 1e-15);
}

TEST(Io, TmsvAndNoonSamplesLoad) {
  const std::string dir = BOSONIC_SAMPLE_DATA;
  const auto st = gaussian_from_json(read_json_file(dir + "/tmsv_r05.json"));
  EXPECT_LT((st.cov().matrix() - make_tmsv(0.5).cov().matrix()).cwiseAbs().maxCoeff(), 1e-15);
  const auto psi = fock_from_json(read_json_file(dir + "/noon2.json"));
  EXPECT_NEAR(entanglement_entropy(psi, Bipartition::split(1, 1)), std::log(2.0), 1e-14);
  EXPECT_NEAR(total_noise(psi), 6.0, 1e-14);
}

TEST(Io, FockRoundTrip) {
  const auto psi = make_fock_tmsv(0.4);
  const auto back = fock_from_json(Json::parse(to_json(psi).dump()));
  EXPECT_EQ(back.shape(), psi.shape());
  EXPECT_LT((back.amps() - psi.amps()).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(Io, SchemaErrorsNameTheField) {
  EXPECT_NE(schema_message(Json::parse(R"({"cov": [[1,0],[0,1]]})"), false).find("'n'"), std::string::npos);
  EXPECT_NE(schema_message(Json::parse(R"({"n": 1})"), false).find("'cov'"), std::string::npos);
  EXPECT_NE(schema_message(Json::parse(R"({"n": 1, "cov": [[1,0],[0,"x"]]})"), false).find("cov[1][1]"),
            std::string::npos);
  EXPECT_NE(schema_message(Json::parse(R"({"n": 1, "cov": [[1,0],[0,1]], "mean": [0]})"), false).find("'mean'"),
            std::string::npos);
  EXPECT_NE(schema_message(Json::parse(R"({"n": 1, "cutoffs": [2], "amps": [[[3], 1, 0]]})"), true).find("amps[0]"),
            std::string::npos);
  EXPECT_NE(schema_message(Json::parse(R"({"n": 2, "cutoffs": [2], "amps": []})"), true).find("'cutoffs'"),
            std::string::npos);
  EXPECT_NE(schema_message(Json::parse("[1, 2]"), false).find("object"), std::string::npos);
  EXPECT_THROW(read_json_file("/nonexistent/state.json"), SchemaError);
}

TEST(Io, PhysicalityStillChecked) {
  EXPECT_THROW(gaussian_from_json(Json::parse(R"({"n": 1, "cov": [[0.5,0],[0,0.5]]})")), UnphysicalState);
}

TEST(Io, ReportsSerialize) {
  const auto j = to_json(solve_na_star(300.0, 3.0, 9.0));
  EXPECT_EQ(j["method"], "bisection");
  EXPECT_NEAR(j["N_A_star"].get<double>() + j["N_B_star"].get<double>(), 300.0, 1e-12);
  const auto c = to_json(make_check(1.0, 2.0, "demo"));
  EXPECT_EQ(c["provenance"], "demo");
  EXPECT_TRUE(c["holds"].get<bool>());
}
