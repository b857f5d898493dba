// bosonic-bounds: measures, bound checks, N_A* solver, beam-splitter sweeps
// and audits from the command line.
//
// Exit codes: 0 success, 2 invalid input, 3 bound violations found.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bosonic/bosonic.hpp"

namespace {

using bosonic::Json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitViolation = 3;

struct Options {
  std::string out;
  std::string format = "json";
  bool ebits = false;
  bosonic::Tolerances tol;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;

  std::string gaussian_file;
  std::string fock_file;
  std::string bipartition;

  double N = 0.0;
  double n_a = 1.0;
  double n_b = 1.0;
  std::string method = "all";

  std::optional<double> mtn;
  std::string fock_spec;

  std::string figure;
  std::vector<std::string> families;
  std::size_t nu_points = 25;
  std::vector<double> mu;

  std::size_t gaussian_states = 10000;
  std::size_t classical_states = 1000;
  std::size_t fock_states = 1000;
  std::vector<std::size_t> gaussian_modes{2, 3, 4};
  std::vector<std::size_t> fock_modes{2, 3};
  std::size_t fock_cutoff = 0;

  double q = 0.5;
  std::size_t k = 2;
};

double entropy_unit(const Options& o) { return o.ebits ? 1.0 / std::numbers::ln2 : 1.0; }
std::string unit_name(const Options& o) { return o.ebits ? "ebits" : "nats"; }

Json config_json(const std::string& command, const Options& o) {
  Json c{{"command", command},
         {"format", o.format},
         {"entropy_unit", unit_name(o)},
         {"tolerances", {{"check", o.tol.check}, {"saturation", o.tol.saturation}, {"truncation", o.tol.truncation}}},
         {"version", BOSONIC_VERSION}};
  if (o.seed) c["seed"] = *o.seed;
  return c;
}

bosonic::Bipartition parse_bipartition(const std::string& s, std::size_t n) {
  if (s.empty()) {
    if (n < 2) throw bosonic::DomainError("a bipartition needs at least two modes");
    return bosonic::Bipartition::split(n / 2, n - n / 2);
  }
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw bosonic::DomainError("bipartition must look like nA:nB");
  std::size_t na = 0, nb = 0;
  try {
    na = std::stoul(s.substr(0, colon));
    nb = std::stoul(s.substr(colon + 1));
  } catch (const std::exception&) {
    throw bosonic::DomainError("bipartition must look like nA:nB");
  }
  if (na + nb != n) {
    throw bosonic::DimensionMismatch("bipartition " + s + " does not cover the " + std::to_string(n) + " modes");
  }
  return bosonic::Bipartition::split(na, nb);
}

/// "N=10,0" or "10,0" -> occupation list.
bosonic::Occupation parse_occupation(std::string s) {
  if (const auto eq = s.find('='); eq != std::string::npos) s = s.substr(eq + 1);
  bosonic::Occupation occ;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const long v = std::stol(item, &pos);
      if (pos != item.size() || v < 0) throw std::invalid_argument(item);
      occ.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw bosonic::DomainError("Fock occupation '" + item + "' is not a non-negative integer");
    }
  }
  if (occ.empty()) throw bosonic::DomainError("empty Fock occupation list");
  return occ;
}

/// Flat JSON object -> one-row table (nested values are dumped as JSON text).
bosonic::Table flat_table(const Json& j) {
  bosonic::Table t;
  std::vector<bosonic::Cell> row;
  for (const auto& [key, value] : j.items()) {
    t.columns.push_back(key);
    if (value.is_number_integer()) {
      row.emplace_back(value.get<std::int64_t>());
    } else if (value.is_number()) {
      row.emplace_back(value.get<double>());
    } else if (value.is_string()) {
      row.emplace_back(value.get<std::string>());
    } else {
      row.emplace_back(value.dump());
    }
  }
  t.add(std::move(row));
  return t;
}

void emit(const Options& o, const Json& config, const Json& result, const bosonic::Table* table = nullptr) {
  std::ostringstream body;
  if (o.format == "csv") {
    bosonic::write_csv(body, table ? *table : flat_table(result));
  } else {
    body << Json{{"config", config}, {"result", result}}.dump(2) << '\n';
  }
  if (o.out.empty()) {
    std::cout << body.str();
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw bosonic::DomainError("cannot write '" + o.out + "'");
  f << body.str();
  if (o.format == "csv") {
    std::ofstream m(o.out + ".manifest.json");
    m << Json{{"config", config}, {"data", o.out}}.dump(2) << '\n';
  }
}

// ---------------------------------------------------------------------------

int cmd_measure(const Options& o) {
  const double u = entropy_unit(o);
  Json r;
  if (!o.gaussian_file.empty()) {
    const auto st = bosonic::gaussian_from_json(bosonic::read_json_file(o.gaussian_file));
    const auto bp = parse_bipartition(o.bipartition, st.modes());
    const auto m = bosonic::measure(st, bp);
    r = {{"representation", "gaussian"},
         {"n", st.modes()},
         {"n_A", bp.n_a()},
         {"n_B", bp.n_b()},
         {"qcs2", m.qcs2},
         {"ftot", m.ftot},
         {"log_negativity", m.log_negativity * u},
         {"n_minus", m.n_minus},
         {"purity", st.purity()},
         {"total_noise", bosonic::total_noise_gaussian(st)},
         {"symplectic_spectrum", m.spectrum},
         {"pt_symplectic_spectrum", m.pt_spectrum}};
    if (bosonic::is_pure(st)) {
      r["mtn"] = st.cov().trace() / (2.0 * static_cast<double>(st.modes()));
      r["e_f"] = bosonic::entanglement_entropy_gaussian(st, bp) * u;
    }
  } else if (!o.fock_file.empty()) {
    const auto psi = bosonic::fock_from_json(bosonic::read_json_file(o.fock_file));
    const auto bp = parse_bipartition(o.bipartition, psi.modes());
    r = {{"representation", "fock"},
         {"n", psi.modes()},
         {"n_A", bp.n_a()},
         {"n_B", bp.n_b()},
         {"cutoffs", psi.cutoffs()},
         {"tail_mass", psi.tail_mass()},
         {"mean_photons", bosonic::mean_photon_number(psi)},
         {"total_noise", bosonic::total_noise(psi, o.tol.truncation)},
         {"mtn", bosonic::mtn_pure(psi, o.tol.truncation)},
         {"e_f", bosonic::entanglement_entropy(psi, bp, o.tol.truncation) * u},
         {"log_negativity", bosonic::log_negativity_pure(psi, bp, o.tol.truncation) * u}};
  } else {
    throw bosonic::DomainError("measure needs --gaussian FILE or --fock FILE");
  }
  emit(o, config_json("measure", o), r);
  return kExitOk;
}

int cmd_bound_check(const Options& o) {
  const double u = entropy_unit(o);
  Json checks = Json::array();
  bool violated = false;
  auto add = [&](const std::string& name, const bosonic::BoundCheck& c, bool guaranteed) {
    Json j = bosonic::to_json(c);
    j["name"] = name;
    j["guaranteed"] = guaranteed;
    checks.push_back(j);
    if (guaranteed && !c.holds) violated = true;
  };
  Json summary;
  if (!o.gaussian_file.empty()) {
    const auto st = bosonic::gaussian_from_json(bosonic::read_json_file(o.gaussian_file));
    const auto bp = parse_bipartition(o.bipartition, st.modes());
    const std::size_t n = st.modes();
    const auto en = bosonic::log_negativity_gaussian(st, bp);
    const double c2 = bosonic::qcs2_gaussian(st);
    summary = {{"qcs2", c2}, {"log_negativity", en.value * u}, {"n_minus", en.n_minus}};
    add("theorem2", bosonic::theorem2_bound(en.value, c2, n, en.n_minus, o.tol.check), true);
    const auto c2r = bosonic::corollary2_checks(c2, en.value, n, o.tol.check);
    if (c2r.strong_entanglement_applies) add("corollary2_strong", c2r.strong_entanglement, true);
    if (c2r.small_qcs_applies) add("corollary2_small_qcs", c2r.small_qcs, true);
    if (n == 2 && en.value > 0.0) {
      const auto ref = bosonic::theorem2_twomode_refined(st, o.tol.check);
      add("twomode_refined", ref.check, true);
      summary["trace_inverse_pt"] = ref.trace_inverse_pt;
      summary["strace_inverse_pt"] = ref.strace_inverse_pt;
    }
    if (bosonic::is_pure(st)) {
      const double mtn = st.cov().trace() / (2.0 * static_cast<double>(n));
      const double ef = bosonic::entanglement_entropy_gaussian(st, bp);
      summary["mtn"] = mtn;
      summary["e_f"] = ef * u;
      add("gaussian_pure_bound",
          bosonic::make_check(ef, bosonic::gaussian_pure_bound(mtn, bp.n_a(), bp.n_b()), "E_F <= Gaussian pure bound",
                              o.tol.check, o.tol.saturation),
          true);
      add("theorem1prime",
          bosonic::make_check(ef, bosonic::theorem1prime_bound(mtn, bp.n_a(), bp.n_b()), "E_F <= n_A g(N_A*/n_A)",
                              o.tol.check, o.tol.saturation),
          true);
    }
  } else if (!o.fock_file.empty()) {
    const auto psi = bosonic::fock_from_json(bosonic::read_json_file(o.fock_file));
    const auto bp = parse_bipartition(o.bipartition, psi.modes());
    const double mtn = bosonic::mtn_pure(psi, o.tol.truncation);
    const double ef = bosonic::entanglement_entropy(psi, bp, o.tol.truncation);
    summary = {{"mtn", mtn}, {"e_f", ef * u}};
    if (bp.n_a() == bp.n_b()) {
      add("theorem1",
          bosonic::make_check(ef, bosonic::theorem1_bound(mtn, psi.modes()), "E_F <= (n/2) g((M_TN-1)/2)", o.tol.check,
                              o.tol.saturation),
          true);
    }
    add("theorem1prime",
        bosonic::make_check(ef, bosonic::theorem1prime_bound(mtn, bp.n_a(), bp.n_b()), "E_F <= n_A g(N_A*/n_A)",
                            o.tol.check, o.tol.saturation),
        true);
    // Holds for pure Gaussian states only; reported, never an error.
    add("gaussian_pure_bound",
        bosonic::make_check(ef, bosonic::gaussian_pure_bound(mtn, bp.n_a(), bp.n_b()), "E_F <= Gaussian pure bound",
                            o.tol.check, o.tol.saturation),
        false);
    if (const auto lower = bosonic::corollary1_lower_mtn(ef, psi.modes())) {
      add("corollary1", bosonic::make_check(*lower, mtn, "M_TN >= 1 + 2 e^{(2/n)E_F - 2}", o.tol.check), true);
    }
  } else if (o.mtn) {
    const std::size_t na = static_cast<std::size_t>(o.n_a), nb = static_cast<std::size_t>(o.n_b);
    summary = {{"mtn", *o.mtn}, {"n_A", na}, {"n_B", nb}};
    summary["theorem1prime_bound"] = bosonic::theorem1prime_bound(*o.mtn, na, nb) * u;
    summary["gaussian_pure_bound"] = bosonic::gaussian_pure_bound(*o.mtn, na, nb) * u;
    if (na == nb) summary["theorem1_bound"] = bosonic::theorem1_bound(*o.mtn, na + nb) * u;
    if (*o.mtn > 1.0) summary["asymptotic_bound"] = bosonic::eofvsmtn_asymptotic(*o.mtn, na, nb).value * u;
  } else {
    throw bosonic::DomainError("bound-check needs --gaussian FILE, --fock FILE or --mtn VALUE");
  }
  Json r{{"summary", summary}, {"checks", checks}, {"violations_found", violated}};
  emit(o, config_json("bound-check", o), r);
  return violated ? kExitViolation : kExitOk;
}

int cmd_nastar(const Options& o) {
  std::vector<bosonic::NAStarMethod> methods;
  if (o.method == "all") {
    methods = {bosonic::NAStarMethod::bisection, bosonic::NAStarMethod::eq8, bosonic::NAStarMethod::appb};
  } else {
    methods = {bosonic::parse_na_star_method(o.method)};
  }
  Json r = Json::array();
  bosonic::Table t;
  t.columns = {"method", "N", "n_A", "n_B", "N_A_star", "N_B_star", "nu_star", "F_nats", "residual"};
  for (auto m : methods) {
    const auto s = bosonic::na_star_asymptotic(o.N, o.n_a, o.n_b, m);
    if (s.low_nu_warning) std::cerr << "warning: nu = N/n_A < 10, asymptotic form may be inaccurate\n";
    r.push_back(bosonic::to_json(s));
    t.add({std::string(bosonic::to_string(m)), s.N, s.n_a, s.n_b, s.na_star, s.nb_star(), s.na_star / s.n_a, s.value(),
           s.residual});
  }
  emit(o, config_json("nastar", o), r, &t);
  return kExitOk;
}

int cmd_beamsplitter(const Options& o) {
  bosonic::FockPureState in = !o.fock_file.empty()
                                  ? bosonic::fock_from_json(bosonic::read_json_file(o.fock_file))
                                  : bosonic::fock_basis_state(parse_occupation(o.fock_spec.empty() ? "0,0" : o.fock_spec));
  if (in.modes() != 2) throw bosonic::DimensionMismatch("beamsplitter takes a two-mode input");
  parse_bipartition(o.bipartition.empty() ? "1:1" : o.bipartition, 2);
  const auto res = bosonic::beam_splitter_entanglement(in, o.tol.truncation);
  const double g_in = bosonic::g(std::max(0.0, 0.5 * (res.mtn_in - 1.0)));
  const double u = entropy_unit(o);
  Json r{{"mtn_in", res.mtn_in},
         {"g_in", g_in * u},
         {"e_f", res.e_f * u},
         {"ratio", g_in > 0.0 ? res.e_f / g_in : 0.0},
         {"cutoffs", res.output.cutoffs()},
         {"log_negativity_out", bosonic::log_negativity_pure(res.output, bosonic::Bipartition::split(1, 1)) * u}};
  emit(o, config_json("beamsplitter", o), r);
  return kExitOk;
}

int cmd_figure(const Options& o) {
  Json config = config_json("figure", o);
  config["name"] = o.figure;
  config["jobs"] = o.jobs;
  std::vector<std::pair<std::string, bosonic::Table>> tables;
  if (o.figure == "fig1-left" || o.figure == "fig2") {
    bosonic::CurveSpec spec;
    spec.nu = bosonic::default_nu_grid(o.nu_points);
    if (!o.mu.empty()) spec.mu = o.mu;
    config["n_A"] = spec.n_a;
    config["mu"] = spec.mu;
    config["nu"] = spec.nu;
    tables.emplace_back(o.figure, o.figure == "fig2" ? bosonic::run_fig2(spec) : bosonic::run_fig1_left(spec));
  } else if (o.figure == "fig1-right") {
    std::vector<std::string> fams = o.families;
    if (fams.empty()) fams = {"fock_N0", "fock_NN", "squeezed_2s_vac", "squeezed_sym", "tmsv_direct"};
    config["families"] = fams;
    for (const auto& f : fams) {
      bosonic::SweepSpec spec;
      spec.family = bosonic::parse_input_family(f);
      spec.max_tail = o.tol.truncation;
      tables.emplace_back("fig1-right-" + f, bosonic::sweep_table(bosonic::run_fig1_right(spec, o.jobs)));
    }
  } else {
    throw bosonic::DomainError("unknown figure '" + o.figure + "' (fig1-left, fig1-right, fig2)");
  }
  if (o.out.empty()) {
    for (const auto& [name, t] : tables) {
      if (o.format == "csv") {
        bosonic::write_csv(std::cout, t);
      } else {
        std::cout << Json{{"config", config}, {"name", name}, {"rows", bosonic::to_json(t)}}.dump(2) << '\n';
      }
    }
    return kExitOk;
  }
  std::filesystem::create_directories(o.out);
  Json files = Json::array();
  for (const auto& [name, t] : tables) {
    const auto path = std::filesystem::path(o.out) / (name + ".csv");
    std::ofstream f(path);
    if (!f) throw bosonic::DomainError("cannot write '" + path.string() + "'");
    bosonic::write_csv(f, t);
    files.push_back(path.filename().string());
  }
  std::ofstream m(std::filesystem::path(o.out) / (o.figure + ".manifest.json"));
  m << Json{{"config", config}, {"files", files}}.dump(2) << '\n';
  std::cout << Json{{"written", files}, {"directory", o.out}}.dump() << '\n';
  return kExitOk;
}

int cmd_audit(const Options& o) {
  bosonic::AuditSpec spec;
  spec.seed = o.seed.value_or(1);
  spec.gaussian_states = o.gaussian_states;
  spec.classical_states = o.classical_states;
  spec.fock_states = o.fock_states;
  spec.gaussian_modes = o.gaussian_modes;
  spec.fock_modes = o.fock_modes;
  spec.fock_cutoff = o.fock_cutoff;
  spec.jobs = o.jobs;
  spec.check_tolerance = o.tol.check;
  const auto report = bosonic::run_random_audit(spec);
  Json config = config_json("audit", o);
  config["seed"] = spec.seed;
  config["gaussian_states"] = spec.gaussian_states;
  config["classical_states"] = spec.classical_states;
  config["fock_states"] = spec.fock_states;
  config["gaussian_modes"] = spec.gaussian_modes;
  config["fock_modes"] = spec.fock_modes;
  config["jobs"] = spec.jobs;
  const auto table = bosonic::audit_table(report);
  emit(o, config, bosonic::to_json(report), &table);
  for (const auto& v : report.violations) {
    std::cerr << "violation: " << v.check << " seed=" << v.seed << " modes=" << v.modes << " n_A=" << v.n_a
              << " lhs=" << v.lhs << " rhs=" << v.rhs << '\n';
  }
  return report.passed() ? kExitOk : kExitViolation;
}

int cmd_appendix_c(const Options& o) {
  const auto r = bosonic::run_appendix_c_demo(o.q, o.k, o.tol.truncation);
  Json j = bosonic::to_json(r);
  const double u = entropy_unit(o);
  for (const char* key : {"e_f", "gaussian_pure_bound", "theorem1prime_bound"}) j[key] = j[key].get<double>() * u;
  emit(o, config_json("appendix-c", o), j);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement and optical nonclassicality of bosonic states"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--out", o.out, "Output file (figure: directory); stdout when omitted");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--ebits", o.ebits, "Report entropies in ebits instead of nats");
  app.add_option("--check-tol", o.tol.check, "Violation tolerance for bound checks")->check(CLI::NonNegativeNumber);
  app.add_option("--saturation-tol", o.tol.saturation, "Tolerance for saturation claims")->check(CLI::NonNegativeNumber);
  app.add_option("--truncation-tol", o.tol.truncation, "Maximum dropped Fock probability")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Random seed (falls back to BOSONIC_BOUNDS_SEED)");
  app.add_option("--jobs", o.jobs, "Worker threads for figure and audit")->check(CLI::PositiveNumber);

  auto* measure = app.add_subcommand("measure", "QCS^2, F_tot, E_N (and E_F, M_TN for pure states)");
  auto* bound = app.add_subcommand("bound-check", "Evaluate every applicable bound");
  auto* nastar = app.add_subcommand("nastar", "Solve for the optimal photon split N_A*");
  auto* bs = app.add_subcommand("beamsplitter", "Entanglement produced by a balanced beam splitter");
  auto* figure = app.add_subcommand("figure", "Write data for the beam-splitter and N_A* figures");
  auto* audit = app.add_subcommand("audit", "Random-state audit of all bounds");
  auto* appc = app.add_subcommand("appendix-c", "Non-Gaussian state beating the Gaussian bound");

  for (auto* sc : {measure, bound}) {
    auto* gopt = sc->add_option("--gaussian", o.gaussian_file, "Gaussian state JSON file");
    auto* fopt = sc->add_option("--fock", o.fock_file, "Fock state JSON file");
    gopt->excludes(fopt);
    sc->add_option("--bipartition", o.bipartition, "Mode split nA:nB (A modes first)");
  }
  bound->add_option("--mtn", o.mtn, "Evaluate the bounds at this M_TN value");
  bound->add_option("--nA", o.n_a, "Modes of party A (with --mtn)");
  bound->add_option("--nB", o.n_b, "Modes of party B (with --mtn)");

  nastar->add_option("--N", o.N, "Photon budget N")->required()->check(CLI::NonNegativeNumber);
  nastar->add_option("--nA", o.n_a, "Modes of party A")->required()->check(CLI::PositiveNumber);
  nastar->add_option("--nB", o.n_b, "Modes of party B")->required()->check(CLI::PositiveNumber);
  nastar->add_option("--method", o.method, "bisection, eq8, appB or all")
      ->check(CLI::IsMember({"bisection", "eq8", "appB", "all"}));

  auto* spec_opt = bs->add_option("--fock", o.fock_spec, "Input occupations, e.g. \"N=10,0\"");
  bs->add_option("--fock-file", o.fock_file, "Two-mode Fock state JSON file")->excludes(spec_opt);
  bs->add_option("--bipartition", o.bipartition, "Must be 1:1");

  figure->add_option("--name", o.figure, "fig1-left, fig1-right or fig2")->required();
  figure->add_option("--family", o.families, "Input families for fig1-right");
  figure->add_option("--nu-points", o.nu_points, "Number of log-spaced nu values")->check(CLI::PositiveNumber);
  figure->add_option("--mu", o.mu, "Values of mu = n_A/n_B in (0, 1]")->check(CLI::Range(1e-6, 1.0));

  audit->add_option("--gaussian-states", o.gaussian_states, "Random Gaussian states per mode count");
  audit->add_option("--classical-states", o.classical_states, "Classical control states per mode count");
  audit->add_option("--fock-states", o.fock_states, "Random pure Fock states per mode count");
  audit->add_option("--gaussian-modes", o.gaussian_modes, "Mode counts of the Gaussian audit");
  audit->add_option("--fock-modes", o.fock_modes, "Mode counts of the Fock audit");
  audit->add_option("--fock-cutoff", o.fock_cutoff, "Per-mode cutoff of random Fock states");

  appc->add_option("--q", o.q, "Geometric ratio 0 < q < 1");
  appc->add_option("--k", o.k, "Permuted level k > 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  if (!o.seed) {
    if (const char* env = std::getenv("BOSONIC_BOUNDS_SEED")) {
      try {
        o.seed = std::stoull(env);
      } catch (const std::exception&) {
        std::cerr << "error: BOSONIC_BOUNDS_SEED is not an integer\n";
        return kExitInvalid;
      }
    }
  }

  try {
    if (*measure) return cmd_measure(o);
    if (*bound) return cmd_bound_check(o);
    if (*nastar) return cmd_nastar(o);
    if (*bs) return cmd_beamsplitter(o);
    if (*figure) return cmd_figure(o);
    if (*audit) return cmd_audit(o);
    if (*appc) return cmd_appendix_c(o);
  } catch (const bosonic::UnphysicalState& e) {
    std::cerr << "error: unphysical state: " << e.what() << '\n'
              << Json{{"is_physical", false}, {"min_symplectic_eigenvalue", e.min_symplectic_eigenvalue()}}.dump()
              << '\n';
    return kExitInvalid;
  } catch (const bosonic::SchemaError& e) {
    std::cerr << "error: schema: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const bosonic::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
