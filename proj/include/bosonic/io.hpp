#ifndef BOSONIC_IO_HPP
#define BOSONIC_IO_HPP

// JSON serialisation of states, measures and bound checks.
//
// Gaussian state: {"n": 2, "mean": [2n floats], "cov": [[2n floats] x 2n]}
// Fock state:     {"n": 2, "cutoffs": [d1, d2], "amps": [[[k1, k2], re, im], ...]}
// Unlisted Fock amplitudes are zero. Matrices are row-major, quadratures
// interleaved (X1, P1, X2, P2, ...).

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bosonic/bounds.hpp"
#include "bosonic/errors.hpp"
#include "bosonic/experiments.hpp"
#include "bosonic/fock.hpp"
#include "bosonic/gaussian.hpp"
#include "bosonic/symplectic.hpp"

namespace bosonic {

using Json = nlohmann::json;

namespace detail {

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw SchemaError("state must be a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + name + "'");
  return *it;
}

inline double number_at(const Json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError("field '" + where + "' must be a number");
  return j.get<double>();
}

inline std::size_t count_at(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw SchemaError("field '" + where + "' must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

inline std::size_t mode_count(const Json& j) {
  const std::size_t n = count_at(field(j, "n"), "n");
  if (n == 0) throw SchemaError("field 'n' must be positive");
  return n;
}

}  // namespace detail

inline Json to_json(const GaussianState& st) {
  const auto d = st.cov().dim();
  Json cov = Json::array();
  for (Eigen::Index i = 0; i < d; ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < d; ++k) row.push_back(st.cov()(i, k));
    cov.push_back(std::move(row));
  }
  Json mean = Json::array();
  for (Eigen::Index i = 0; i < d; ++i) mean.push_back(st.mean()(i));
  return Json{{"n", st.modes()}, {"mean", std::move(mean)}, {"cov", std::move(cov)}};
}

/// Parse and validate a Gaussian state; "mean" may be omitted (centered state).
inline GaussianState gaussian_from_json(const Json& j) {
  const std::size_t n = detail::mode_count(j);
  const auto d = static_cast<Eigen::Index>(2 * n);
  const Json& cov = detail::field(j, "cov");
  if (!cov.is_array() || cov.size() != static_cast<std::size_t>(d)) {
    throw SchemaError("field 'cov' must be an array of " + std::to_string(d) + " rows");
  }
  Matrix v(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Json& row = cov[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) {
      throw SchemaError("field 'cov[" + std::to_string(i) + "]' must have " + std::to_string(d) + " entries");
    }
    for (Eigen::Index k = 0; k < d; ++k) {
      v(i, k) = detail::number_at(row[static_cast<std::size_t>(k)],
                                  "cov[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  Vector mean = Vector::Zero(d);
  if (j.contains("mean")) {
    const Json& m = j["mean"];
    if (!m.is_array() || m.size() != static_cast<std::size_t>(d)) {
      throw SchemaError("field 'mean' must be an array of " + std::to_string(d) + " numbers");
    }
    for (Eigen::Index i = 0; i < d; ++i) {
      mean(i) = detail::number_at(m[static_cast<std::size_t>(i)], "mean[" + std::to_string(i) + "]");
    }
  }
  return GaussianState(std::move(mean), CovarianceMatrix(std::move(v)));
}

inline Json to_json(const FockPureState& psi) {
  Json amps = Json::array();
  for (std::size_t f = 0; f < psi.shape().size(); ++f) {
    const Complex a = psi.amps()(static_cast<Eigen::Index>(f));
    if (a == Complex(0.0)) continue;
    amps.push_back(Json::array({psi.shape().occupation(f), a.real(), a.imag()}));
  }
  return Json{{"n", psi.modes()}, {"cutoffs", psi.cutoffs()}, {"amps", std::move(amps)}};
}

inline FockPureState fock_from_json(const Json& j) {
  const std::size_t n = detail::mode_count(j);
  const Json& cj = detail::field(j, "cutoffs");
  if (!cj.is_array() || cj.size() != n) throw SchemaError("field 'cutoffs' must list one cutoff per mode");
  std::vector<std::size_t> cutoffs;
  for (std::size_t m = 0; m < n; ++m) {
    cutoffs.push_back(detail::count_at(cj[m], "cutoffs[" + std::to_string(m) + "]"));
    if (cutoffs.back() == 0) throw SchemaError("field 'cutoffs[" + std::to_string(m) + "]' must be positive");
  }
  FockShape shape(cutoffs);
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(shape.size()));
  const Json& aj = detail::field(j, "amps");
  if (!aj.is_array()) throw SchemaError("field 'amps' must be an array");
  for (std::size_t e = 0; e < aj.size(); ++e) {
    const std::string where = "amps[" + std::to_string(e) + "]";
    const Json& entry = aj[e];
    if (!entry.is_array() || entry.size() != 3 || !entry[0].is_array() || entry[0].size() != n) {
      throw SchemaError("field '" + where + "' must be [[k_1..k_n], re, im]");
    }
    Occupation occ;
    for (std::size_t m = 0; m < n; ++m) occ.push_back(detail::count_at(entry[0][m], where + "[0]"));
    std::size_t flat = 0;
    try {
      flat = shape.index(occ);
    } catch (const CutoffOverflow&) {
      throw SchemaError("field '" + where + "' lies outside the cutoffs");
    }
    amps(static_cast<Eigen::Index>(flat)) +=
        Complex(detail::number_at(entry[1], where + "[1]"), detail::number_at(entry[2], where + "[2]"));
  }
  return FockPureState(std::move(shape), std::move(amps));
}

inline Json to_json(const BoundCheck& c) {
  return Json{{"lhs", c.lhs},         {"rhs", c.rhs},           {"margin", c.margin},
              {"holds", c.holds},     {"saturated", c.saturated}, {"provenance", c.provenance}};
}

inline Json to_json(const NAStarSolution& s) {
  return Json{{"method", std::string(to_string(s.method))},
              {"N", s.N},
              {"n_A", s.n_a},
              {"n_B", s.n_b},
              {"N_A_star", s.na_star},
              {"N_B_star", s.nb_star()},
              {"nu_star", s.na_star / s.n_a},
              {"F", s.value()},
              {"residual", s.residual},
              {"iterations", s.iterations},
              {"low_nu_warning", s.low_nu_warning}};
}

inline Json to_json(const Table& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row = Json::object();
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::visit([&](const auto& v) { row[t.columns[i]] = v; }, r[i]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const AuditReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"check", c.check},
                      {"evaluated", c.evaluated},
                      {"violations", c.violations},
                      {"min_margin", c.min_margin},
                      {"max_margin", c.max_margin},
                      {"tightest", {{"seed", c.tightest_seed}, {"modes", c.tightest_modes}, {"n_A", c.tightest_n_a}}},
                      {"histogram", c.histogram}});
  }
  Json viol = Json::array();
  for (const auto& v : r.violations) {
    viol.push_back({{"check", v.check}, {"seed", v.seed}, {"modes", v.modes}, {"n_A", v.n_a}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  return Json{{"seed", r.seed}, {"passed", r.passed()}, {"checks", std::move(checks)}, {"violations", std::move(viol)}};
}

inline Json to_json(const AppendixCReport& r) {
  return Json{{"q", r.q},
              {"k", r.k},
              {"mean_photons_psi_q", r.mean_photons_q},
              {"mtn_psi_q", r.mtn_q},
              {"mtn_psi_prime", r.mtn_prime},
              {"mtn_shift", r.mtn_shift},
              {"mtn_shift_predicted", r.mtn_shift_predicted},
              {"e_f", r.e_f},
              {"gaussian_pure_bound", r.gaussian_bound},
              {"theorem1prime_bound", r.theorem1prime_bound},
              {"gaussian_bound_violated", r.gaussian_bound_violated},
              {"theorem1prime_holds", r.theorem1prime_holds},
              {"tail_mass", r.tail_mass}};
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace bosonic

#endif  // BOSONIC_IO_HPP
