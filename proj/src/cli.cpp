#include "ssb/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ssb/group_catalog.hpp"
#include "ssb/measurement.hpp"
#include "ssb/sectors.hpp"

namespace ssb {

namespace {

json complex_to_json(cd z) { return json::array({z.real(), z.imag()}); }

std::string irrep_name(const RepresentationData& data, int i) {
  const std::string& l = data.irreps[i].label;
  return l.empty() ? "irrep" + std::to_string(i) : l;
}

json check_entry(const std::string& name, bool passed, double residual, const std::string& detail) {
  return json{{"name", name}, {"passed", passed}, {"residual", residual}, {"detail", detail}};
}

UnitaryRep field_rep(const std::string& choice, const GroupPtr& g, const RepresentationData& data) {
  if (choice == "regular") return regular_rep(g);
  std::vector<UnitaryRep> parts;
  std::stringstream ss(choice);
  std::string item;
  while (std::getline(ss, item, '+')) {
    int found = -1;
    for (int i = 0; i < data.size(); ++i)
      if (irrep_name(data, i) == item) found = i;
    if (found < 0) throw InputError("--rep: group " + g->name() + " has no irrep named '" + item + "'");
    parts.push_back(data.irreps[found]);
  }
  if (parts.empty()) throw InputError("--rep must be 'regular' or irrep labels joined by '+'");
  return direct_sum(parts, choice);
}

json status_json(const SymmetryStatus& st, const std::vector<int>& point_cosets) {
  json perms = json::array();
  for (std::size_t i = 0; i < st.acting.size(); ++i)
    perms.push_back(json{{"element", st.acting[i]}, {"points", st.permutations[i]}});
  json orbits = json::array();
  for (const auto& orbit : st.orbits) {
    json cosets = json::array();
    for (int p : orbit) cosets.push_back(point_cosets[p]);
    orbits.push_back(json{{"points", orbit}, {"cosets", cosets}});
  }
  return json{{"status", st.broken ? "Broken" : "Unbroken"},
              {"centre_dim", st.centre_dim},
              {"acting", st.acting},
              {"permutations", perms},
              {"orbits", orbits}};
}

}  // namespace

RunResult run_sector_analysis(const RunConfig& config) {
  if (config.tolerance <= 0.0) throw InputError("tolerance must be positive");
  const GroupSpec spec = load_group_file(config.input);
  const Subgroup h = spec.subgroup(config.subgroup);
  RepresentationData g_data = spec.representations(config.seed);
  RepresentationData h_data = RepresentationData::compute(h.as_group(), config.seed);
  const UnitaryRep v = field_rep(config.rep, spec.group, g_data);
  const FieldSystem fs = build_field_system(h, std::move(g_data), std::move(h_data), &v, config.seed);
  const HatAlgebra hat = build_hat_algebra(fs);
  const Centre hat_centre = centre(hat.algebra, config.seed);
  const InducedRep ind = induced_rep(fs);
  const SectorSpectrum s = sector_spectrum(fs);
  const Subgroup whole = Subgroup::whole(fs.g);

  json r;
  r["group"] = json{{"name", fs.g->name()}, {"order", fs.g->order()}};
  r["subgroup"] = json{{"label", h.label()},
                       {"order", h.order()},
                       {"members", h.members()},
                       {"normal", h.is_normal()}};
  r["representation"] = json{{"label", v.label}, {"dim", v.dim()}, {"faithful", fs.faithful}};
  r["seed"] = config.seed;
  r["tolerance"] = config.tolerance;

  r["dimensions"] = json{{"F", fs.f.dim()},
                         {"A", fs.a.dim()},
                         {"A_d", fs.a_d.dim()},
                         {"F_hat", hat.algebra.dim()},
                         {"H_hat", ind.dim()}};
  r["centre_dimensions"] = json{{"A", centre(fs.a, config.seed).algebra.dim()},
                                {"A_d", centre(fs.a_d, config.seed).algebra.dim()},
                                {"F_hat", hat_centre.algebra.dim()}};

  {
    const BranchingTable bt = branching_table(h, fs.h_data.table, fs.g_data.table);
    json eta_labels = json::array(), gamma_labels = json::array();
    for (int i = 0; i < fs.h_data.size(); ++i) eta_labels.push_back(irrep_name(fs.h_data, i));
    for (int i = 0; i < fs.g_data.size(); ++i) gamma_labels.push_back(irrep_name(fs.g_data, i));
    r["branching"] = json{{"eta", eta_labels}, {"gamma", gamma_labels}, {"multiplicities", bt.multiplicities}};
  }

  {
    json cosets = json::array();
    for (int c = 0; c < s.cosets; ++c) {
      std::vector<int> members;
      for (int x = 0; x < fs.g->order(); ++x)
        if (fs.right_cosets.coset_of[x] == c) members.push_back(x);
      cosets.push_back(json{{"index", c}, {"representative", s.coset_representatives[c]}, {"members", members}});
    }
    json fibers = json::array();
    for (std::size_t f = 0; f < s.fiber.size(); ++f)
      fibers.push_back(json{{"index", f},
                            {"eta", irrep_name(fs.h_data, s.fiber[f].eta)},
                            {"gamma", irrep_name(fs.g_data, s.fiber[f].gamma)},
                            {"multiplicity", s.fiber[f].multiplicity},
                            {"rank", std::lround(s.fiber[f].projection.trace().real())}});
    json gluing = json::array();
    for (std::size_t i = 0; i < s.gluing.size(); ++i)
      gluing.push_back(json{{"gamma", irrep_name(fs.g_data, s.gluing_gamma[i])}, {"fibers", s.gluing[i]}});
    r["sector_spectrum"] = json{{"cosets", cosets},
                                {"fiber_pairs", fibers},
                                {"points", s.points.size()},
                                {"gluing_groups", gluing},
                                {"fibered_centre_dim", s.fibered_centre_dim},
                                {"expected_fibered_centre_dim", s.expected_fibered_centre_dim},
                                {"warnings", s.warnings}};
  }

  const std::vector<int> point_cosets = centre_point_cosets(hat, hat_centre.projections);
  const SymmetryStatus g_status = symmetry_status(hat_centre, hat.translation, whole, config.tolerance);
  const SymmetryStatus h_status = symmetry_status(hat_centre, hat.translation, h, config.tolerance);
  r["symmetry"] = json{{"centre_point_cosets", point_cosets},
                       {"G_translation", status_json(g_status, point_cosets)},
                       {"H_translation", status_json(h_status, point_cosets)}};
  {
    json phases = json::array();
    for (const auto& comp : phase_diagram(g_status))
      phases.push_back(json{{"points", comp.points}, {"unbroken", comp.unbroken}});
    r["phase_diagram"] = phases;
  }

  json checks = json::array();
  bool all = true;
  auto add = [&](const std::string& name, bool passed, double residual, const std::string& detail) {
    checks.push_back(check_entry(name, passed, residual, detail));
    all = all && passed;
  };
  for (const auto& c : verify_relations(fs, hat, hat_centre, s)) add(c.name, c.passed, c.residual, c.detail);

  {
    const UnitaryRep vh = [&] {
      UnitaryRep out{h.as_group(), {}, v.label + "|H"};
      for (int m : h.members()) out.matrices.push_back(v.matrices[m]);
      return out;
    }();
    const std::vector<int> present = decompose(vh, fs.h_data.table);
    bool ok = true;
    std::string detail;
    for (int eta = 0; eta < fs.h_data.size(); ++eta) {
      if (present[eta] == 0) continue;
      const SectorFiber sf = sector_fiber(fs, eta);
      ok = ok && sf.agree_on_realized();
      detail += (detail.empty() ? "" : ", ") + irrep_name(fs.h_data, eta) + ": " +
                std::to_string(sf.operator_algebraic.size()) + " of " +
                std::to_string(sf.representation_theoretic.size());
    }
    add("sector_fibers_agree", ok, 0.0, detail);
  }
  add("fibered_centre_dimension", s.fibered_centre_dim == s.expected_fibered_centre_dim,
      double(std::abs(s.fibered_centre_dim - s.expected_fibered_centre_dim)),
      std::to_string(s.fibered_centre_dim) + " vs " + std::to_string(s.expected_fibered_centre_dim));

  {
    Rng rng(config.seed + 7);
    double compat = 0.0, cov = 0.0;
    for (int t = 0; t < 3; ++t) {
      const Matrix f = rng.random_matrix(fs.n(), fs.n());
      const Vector psi = rng.random_matrix(ind.dim(), 1).col(0);
      compat = std::max(compat, ind.bar_compatibility_residual(f, psi));
      compat = std::max(compat, ind.compatibility_residual(hat, hat.algebra.random_element(rng), psi));
      for (int g = 0; g < fs.g->order(); ++g) cov = std::max(cov, ind.covariance_residual(f, g));
    }
    add("induced_compatibility", compat < 1e-12 * std::max(1, fs.n()), compat,
        "pi^ and pi-bar preserve H-equivariance");
    add("induced_covariance", cov < 1e-10, cov, "pi-bar(tau_g F) = U^(g) pi-bar(F) U^(g)*");
  }

  {
    const auto rows = psi_sensitivity(fs, s);
    json table = json::array();
    double worst = 0.0;
    for (const auto& row : rows) {
      worst = std::max(worst, row.invariant_spread);
      table.push_back(json{{"fiber", row.fiber},
                           {"invariant_spread", row.invariant_spread},
                           {"dual_spread", row.dual_spread},
                           {"witness", row.dual_spread > config.tolerance ? row.witness : -1},
                           {"sensitive", row.dual_spread > config.tolerance}});
    }
    r["psi_sensitivity"] = table;
    add("psi_coset_independent_on_A", worst <= config.tolerance, worst,
        "max spread of Psi over cosets on a basis of A");
  }

  r["verification"] = json{{"checks", checks}, {"passed", all}};
  std::vector<std::string> warnings = fs.warnings;
  r["warnings"] = warnings;
  return RunResult{std::move(r), all};
}

namespace {

Matrix square_from_json(const json& doc, const char* key, int n) {
  if (!doc.contains(key)) throw InputError(std::string("scenario is missing '") + key + "'");
  Matrix m = matrix_from_json(doc.at(key), key);
  if (n > 0 && (m.rows() != n || m.cols() != n))
    throw InputError(std::string("'") + key + "' has the wrong dimension");
  return m;
}

StateFunctional state_from_json(const json& j, const std::string& what, int n) {
  Matrix rho = matrix_from_json(j, what);
  if (rho.rows() != n || rho.cols() != n) throw InputError(what + " has the wrong dimension");
  try {
    return StateFunctional(std::move(rho));
  } catch (const InputError& e) {
    throw InputError(what + ": " + e.what());
  }
}

CouplingDynamics coupling_from_json(const json& j, const Observable& a) {
  const int n = a.dim(), m = a.outcomes();
  if (j.is_string()) {
    const std::string kind = j.get<std::string>();
    if (kind == "canonical") return CouplingDynamics::canonical(a);
    if (kind == "identity") return CouplingDynamics::identity(n, m);
    throw InputError("unknown coupling '" + kind + "'");
  }
  if (j.is_object() && j.contains("unitary"))
    return CouplingDynamics::from_unitary(matrix_from_json(j.at("unitary"), "coupling.unitary"), n, m);
  if (j.is_object() && j.contains("cp_kraus")) {
    if (!j.at("cp_kraus").is_array()) throw InputError("coupling.cp_kraus must be an array of matrices");
    std::vector<Matrix> kraus;
    for (const auto& k : j.at("cp_kraus")) kraus.push_back(matrix_from_json(k, "coupling.cp_kraus"));
    return CouplingDynamics::from_kraus(std::move(kraus), n, m);
  }
  throw InputError("coupling must be \"canonical\", \"identity\", {\"unitary\": ...} or {\"cp_kraus\": [...]}");
}

StateFamily family_from_json(const json& j, const Observable& a) {
  StateFamily family;
  if (j.is_string()) {
    const std::string kind = j.get<std::string>();
    for (int i = 0; i < a.outcomes(); ++i) {
      if (kind == "eigenstates")
        family.emplace_back(a.projections[i] / a.projections[i].trace().real());
      else if (kind == "maximally_mixed")
        family.emplace_back(Matrix::Identity(a.dim(), a.dim()) / double(a.dim()));
      else
        throw InputError("unknown state family '" + kind + "'");
    }
    return family;
  }
  if (!j.is_array()) throw InputError("family must be a name or an array of density matrices");
  for (const auto& rho : j) family.push_back(state_from_json(rho, "family state", a.dim()));
  return family;
}

std::vector<int> outcome_set(const json& j, const Observable& a) {
  if (!j.is_array()) throw InputError("outcomes must be an array of spectral values");
  std::vector<int> delta;
  for (const auto& x : j) {
    if (!x.is_number()) throw InputError("outcomes must be numbers");
    delta.push_back(a.index_of(x.get<double>()));
  }
  std::sort(delta.begin(), delta.end());
  delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
  return delta;
}

json distribution_json(const Observable& a, const std::vector<double>& p) {
  json out = json::array();
  for (int i = 0; i < a.outcomes(); ++i) out.push_back(json{{"outcome", a.spectrum[i]}, {"probability", p[i]}});
  return out;
}

}  // namespace

RunResult run_measurement_scenario(const RunConfig& config) {
  const json doc = read_json_file(config.input);
  if (!doc.is_object()) throw InputError("scenario must be a JSON object");
  const Observable a = Observable::from_matrix(square_from_json(doc, "observable", 0), 1e-9);
  const int n = a.dim(), m = a.outcomes();
  if (!doc.contains("initial_state")) throw InputError("scenario is missing 'initial_state'");
  const StateFunctional omega = state_from_json(doc.at("initial_state"), "initial_state", n);
  const CouplingDynamics dyn = coupling_from_json(doc.value("coupling", json("canonical")), a);

  std::vector<double> mu0(m, 0.0);
  mu0[0] = 1.0;
  if (doc.contains("pointer_measure")) {
    if (!doc.at("pointer_measure").is_array()) throw InputError("pointer_measure must be an array");
    mu0 = doc.at("pointer_measure").get<std::vector<double>>();
  }
  const Instrument instrument(a, dyn, mu0);

  json r;
  r["system_dim"] = n;
  r["spectrum"] = a.spectrum;
  r["pointer_measure"] = mu0;
  const auto choi = dyn.choi_min_eigenvalue();
  r["coupling"] = json{{"kind", dyn.kind},
                       {"unitality_residual", dyn.unitality_residual()},
                       {"choi_min_eigenvalue", choi ? json(*choi) : json(nullptr)}};
  r["distribution"] = distribution_json(a, outcome_distribution(a, omega));

  const SchemeCheck sc = measurement_scheme_check(instrument, config.tolerance);
  r["scheme_check"] = json{{"passed", sc.passed}, {"residual", sc.residual}};
  bool all = sc.passed;
  std::vector<std::string> failures;
  if (!sc.passed) failures.push_back("scheme_check");

  json results = json::array();
  const json queries = doc.value("queries", json::array());
  if (!queries.is_array()) throw InputError("queries must be an array");
  for (const auto& q : queries) {
    if (!q.is_object() || !q.contains("type")) throw InputError("each query needs a 'type'");
    const std::string type = q.at("type").get<std::string>();
    json out{{"type", type}};
    if (type == "distribution") {
      const StateFunctional w =
          q.contains("state") ? state_from_json(q.at("state"), "query state", n) : omega;
      out["distribution"] = distribution_json(a, outcome_distribution(a, w));
    } else if (type == "instrument") {
      const std::vector<int> delta = outcome_set(q.value("outcomes", json::array()), a);
      const Matrix b = q.contains("operator") ? matrix_from_json(q.at("operator"), "operator")
                                              : Matrix(Matrix::Identity(n, n));
      if (b.rows() != n || b.cols() != n) throw InputError("instrument operator has the wrong dimension");
      Matrix e_delta = Matrix::Zero(n, n);
      for (int k : delta) e_delta += a.projections[k];
      std::vector<double> values;
      for (int k : delta) values.push_back(a.spectrum[k]);
      out["outcomes"] = values;
      out["value"] = complex_to_json(instrument.j(delta, omega, b));
      out["probability"] = instrument.density(delta, omega).trace().real();
      out["p_observable"] = omega(e_delta).real();
      out["density"] = matrix_to_json(instrument.density(delta, omega));
    } else if (type == "posterior") {
      if (!q.contains("outcome") || !q.at("outcome").is_number())
        throw InputError("posterior query needs a numeric 'outcome'");
      const int k = a.index_of(q.at("outcome").get<double>());
      const StateFunctional post = posterior_state(instrument, omega, k);
      out["outcome"] = a.spectrum[k];
      out["probability"] = instrument.density({k}, omega).trace().real();
      out["posterior"] = matrix_to_json(post.density());
      out["repeat_probability"] = instrument.density({k}, post).trace().real();
    } else if (type == "reachability") {
      if (!q.contains("target")) throw InputError("reachability query needs a 'target'");
      const StateFunctional target = state_from_json(q.at("target"), "target", n);
      std::vector<CouplingDynamics> steps;
      if (q.contains("dynamics")) {
        for (const auto& d : q.at("dynamics")) steps.push_back(coupling_from_json(d, a));
      } else {
        const int count = q.value("steps", 1);
        if (count < 0) throw InputError("steps must be non-negative");
        steps.assign(count, dyn);
      }
      const CqChannel channel(a, family_from_json(q.value("family", json("eigenstates")), a));
      const double tolerance = q.value("tolerance", 1e-8);
      const Reachability reach = reachability_check(target, omega, mu0, steps, channel, tolerance);
      json traj = json::array();
      for (const auto& step : reach.trajectory)
        traj.push_back(json{{"t", step.t}, {"mu", step.mu}, {"distance", step.distance}});
      out["trajectory"] = traj;
      out["final_distance"] = reach.trajectory.back().distance;
      out["tolerance"] = tolerance;
      out["reached"] = reach.reached;
    } else if (type == "repeatable_family") {
      const StateFamily family = family_from_json(q.value("family", json("eigenstates")), a);
      const RepeatableCheck rc = repeatable_family_check(a, family);
      const CqChannel channel(a, family);
      std::vector<bool> per = rc.passed;
      out["per_outcome"] = per;
      out["passed"] = std::all_of(per.begin(), per.end(), [](bool b) { return b; });
      out["max_deviation"] = rc.max_deviation;
      out["qc_discrepancy"] = qc_channel_compare(a, channel);
    } else {
      throw InputError("unknown query type '" + type + "'");
    }
    results.push_back(std::move(out));
  }
  r["queries"] = results;
  r["verification"] = json{{"passed", all}, {"failures", failures}};
  return RunResult{std::move(r), all};
}

namespace {

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw InputError("failed writing " + path);
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Sector analysis of broken finite symmetries and finite quantum measurement schemes"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "json";
  std::string catalog_name;

  CLI::App* analyze = app.add_subcommand("analyze", "sector analysis of a group / subgroup pair");
  analyze->add_option("--group", cfg.input, "group spec JSON")->required();
  analyze->add_option("--subgroup", cfg.subgroup, "subgroup label")->required();
  analyze->add_option("--rep", cfg.rep, "'regular' or irrep labels joined by '+'");

  CLI::App* measure = app.add_subcommand("measure", "run a measurement scenario");
  measure->add_option("--scenario", cfg.input, "scenario JSON")->required();

  for (CLI::App* sub : {analyze, measure}) {
    sub->add_option("--tolerance", cfg.tolerance, "verification tolerance");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  }

  CLI::App* catalog = app.add_subcommand("catalog", "write a built-in group spec as JSON");
  catalog->add_option("name", catalog_name, "group name (S3, S4, A4, D4, Q8, Zn, trivial)")->required();
  catalog->add_option("--out", cfg.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (catalog->parsed()) {
      write_output(emit_json(group_to_json(catalog_group(catalog_name))), cfg.out);
      return 0;
    }
    cfg.format = parse_format(format);
    const RunResult result = analyze->parsed() ? run_sector_analysis(cfg) : run_measurement_scenario(cfg);
    write_output(emit_report(result.report, cfg.format), cfg.out);
    if (!result.verified) {
      std::cerr << "verification failed:\n";
      const json& v = result.report.at("verification");
      if (v.contains("checks")) {
        for (const auto& c : v.at("checks"))
          if (!c.at("passed").get<bool>())
            std::cerr << "  " << c.at("name").get<std::string>() << " residual "
                      << format_double(c.at("residual").get<double>()) << "\n";
      } else {
        for (const auto& f : v.at("failures"))
          std::cerr << "  " << f.get<std::string>() << " residual "
                    << format_double(result.report.at(f.get<std::string>()).at("residual").get<double>())
                    << "\n";
      }
      return 2;
    }
    return 0;
  } catch (const ConsistencyError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ssb
