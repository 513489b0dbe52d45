// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "ssb/cli.hpp"
#include "ssb/group_catalog.hpp"
#include "ssb/measurement.hpp"
#include "ssb/sectors.hpp"

using namespace ssb;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string pair_name(const CatalogPair& p) { return p.group + "/" + p.subgroup; }

struct Model {
  FieldSystem fs;
  HatAlgebra hat;
  Centre hat_centre;
  InducedRep ind;
  SectorSpectrum s;
};

Model build(const CatalogPair& pair) {
  const GroupSpec spec = catalog_group(pair.group);
  FieldSystem fs = build_field_system(spec, pair.subgroup);
  HatAlgebra hat = build_hat_algebra(fs);
  Centre hc = centre(hat.algebra);
  InducedRep ind = induced_rep(fs);
  SectorSpectrum s = sector_spectrum(fs);
  return {std::move(fs), std::move(hat), std::move(hc), std::move(ind), std::move(s)};
}

std::vector<oracle::Rep> matrices_of(const std::vector<UnitaryRep>& reps) {
  std::vector<oracle::Rep> out;
  for (const auto& r : reps) out.push_back(r.matrices);
  return out;
}

Verdict frobenius() {
  Verdict v;
  int checked = 0;
  double library_seconds = 0.0;
  for (const auto& pair : catalog_pairs()) {
    const GroupSpec spec = catalog_group(pair.group);
    const Subgroup h = spec.subgroup(pair.subgroup);
    const RepresentationData g_data = spec.representations();
    const RepresentationData h_data = RepresentationData::compute(h.as_group());
    const auto local = oracle::local_elements(h.members());
    const auto all = oracle::all_elements(spec.group->order());
    for (int e = 0; e < h_data.size(); ++e)
      for (int c = 0; c < g_data.size(); ++c) {
        const auto t0 = std::chrono::steady_clock::now();
        const FrobeniusPair fp = frobenius_check(h, h_data.irreps[e], g_data.irreps[c]);
        library_seconds += seconds_since(t0);
        const int by_restriction = oracle::hom_dim(
            h_data.irreps[e].matrices, oracle::restrict_rep(g_data.irreps[c].matrices, h.members()), local);
        const int by_induction = oracle::hom_dim(
            oracle::induce_rep(spec.group->table(), h.members(), h_data.irreps[e].matrices),
            g_data.irreps[c].matrices, all);
        const std::string where = pair_name(pair) + " (" + std::to_string(e) + "," + std::to_string(c) + ")";
        v.require(fp.via_restriction == fp.via_induction, where + " restriction != induction");
        v.require(fp.via_restriction == by_restriction && fp.via_induction == by_induction,
                  where + " disagrees with intertwiner oracle");
        ++checked;
      }
  }
  v.require(library_seconds < 5.0, "took " + sci(library_seconds) + " s");
  if (v.pass) v.detail = std::to_string(checked) + " (eta, gamma) pairs equal and oracle-confirmed, " + sci(library_seconds) + " s";
  return v;
}

Verdict representation_engine() {
  Verdict v;
  double worst_orth = 0.0;
  int extensions = 0;
  for (const auto& name : catalog_names()) {
    const GroupSpec spec = catalog_group(name);
    const RepresentationData data = spec.representations();
    const int order = spec.group->order();
    int dim_sq = 0;
    for (int i = 0; i < data.size(); ++i) {
      dim_sq += data.table.dims[i] * data.table.dims[i];
      for (int j = 0; j < data.size(); ++j) {
        cd sum = 0.0;
        for (int g = 0; g < order; ++g) sum += data.table.value(i, g) * std::conj(data.table.value(j, g));
        worst_orth = std::max(worst_orth, std::abs(sum / double(order) - cd(i == j ? 1.0 : 0.0)));
      }
    }
    v.require(dim_sq == order, name + " sum of squared dimensions " + std::to_string(dim_sq));
    v.require(data.size() == oracle::num_classes(spec.group->table()), name + " irrep count");

    const auto g_irreps = matrices_of(data.irreps);
    for (const auto& [label, members] : spec.subgroups) {
      const Subgroup h = spec.subgroup(label);
      const RepresentationData h_data = RepresentationData::compute(h.as_group());
      const auto h_irreps = matrices_of(h_data.irreps);
      std::vector<UnitaryRep> etas(h_data.irreps.begin(), h_data.irreps.end());
      if (h_data.size() >= 2) etas.push_back(direct_sum({h_data.irreps[0], h_data.irreps[1]}, "e0+e1"));
      for (const auto& eta : etas) {
        const MinimalExtension got = extend_rep_minimal(eta, h, data, h_data);
        const oracle::Extension want = oracle::minimal_extension(eta.matrices, h.members(), g_irreps, h_irreps, h.index());
        v.require(got.multiplicities == want.multiplicities && got.complement_dim == want.complement_dim,
                  "extension mismatch " + name + "/" + label + "/" + eta.label);
        ++extensions;
      }
    }
  }
  v.require(worst_orth < 1e-9, "orthogonality residual " + sci(worst_orth));

  int adjoint_checks = 0;
  for (const auto& pair : catalog_pairs()) {
    const GroupSpec spec = catalog_group(pair.group);
    const Subgroup h = spec.subgroup(pair.subgroup);
    const RepresentationData g_data = spec.representations();
    const RepresentationData h_data = RepresentationData::compute(h.as_group());
    for (int e = 0; e < h_data.size(); ++e) {
      const UnitaryRep ind = induce(h_data.irreps[e], h);
      for (int c = 0; c < g_data.size(); ++c) {
        const cd lhs = character_inner(ind.element_characters(), g_data.table.element_values(c));
        std::vector<cd> gamma_on_h;
        for (int m : h.members()) gamma_on_h.push_back(g_data.table.value(c, m));
        const cd rhs = character_inner(h_data.table.element_values(e), gamma_on_h);
        v.require(round_multiplicity(lhs) == round_multiplicity(rhs), "adjointness " + pair_name(pair));
        ++adjoint_checks;
      }
    }
  }
  if (v.pass)
    v.detail = "orthogonality " + sci(worst_orth) + ", " + std::to_string(adjoint_checks) +
               " adjointness checks, " + std::to_string(extensions) + " extensions match brute force";
  return v;
}

Verdict toy_model_relations(const std::vector<Model>& models, const std::vector<CatalogPair>& pairs) {
  Verdict v;
  double worst = 0.0;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const Model& m = models[i];
    const std::string name = pair_name(pairs[i]);
    const MatrixStarAlgebra fixed =
        fixed_point_algebra(m.hat.algebra, m.hat.translation, Subgroup::whole(m.fs.g));
    const int a_d = oracle::fixed_point_dim(oracle::regular(m.fs.g->table()), m.fs.h.members());
    v.require(fixed.dim() == a_d && m.fs.a_d.dim() == a_d, name + " dim F^G " + std::to_string(fixed.dim()) +
                                                               " vs A_d " + std::to_string(a_d));
    Rng rng(31);
    for (int t = 0; t < 3; ++t) {
      const Matrix x = fixed.random_element(rng), y = fixed.random_element(rng);
      const Matrix ex = m.hat.value(x, 0), ey = m.hat.value(y, 0);
      const double scale = std::max(1.0, max_abs(ex) * max_abs(ey));
      worst = std::max(worst, max_abs(m.hat.value(x * y, 0) - ex * ey) / scale);
      worst = std::max(worst, max_abs(m.hat.value(x.adjoint(), 0) - ex.adjoint()) / std::max(1.0, max_abs(ex)));
      worst = std::max(worst, m.fs.a_d.span_residual(ex));
    }
    const int cosets = oracle::right_coset_count(m.fs.g->table(), m.fs.h.members());
    v.require(m.hat_centre.algebra.dim() == cosets,
              name + " dim Z(F^) " + std::to_string(m.hat_centre.algebra.dim()) + " vs " + std::to_string(cosets));
  }
  v.require(worst < 1e-10, "evaluation homomorphism residual " + sci(worst));
  if (v.pass) v.detail = "all pairs, evaluation residual " + sci(worst);
  return v;
}

Verdict crossed_product(const std::vector<Model>& models, const std::vector<CatalogPair>& pairs) {
  Verdict v;
  double compat = 0.0, cov = 0.0;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const Model& m = models[i];
    Rng rng(1000 + i);
    for (int t = 0; t < 100; ++t) {
      const Matrix f = rng.random_matrix(m.fs.n(), m.fs.n());
      const Vector psi = rng.random_matrix(m.ind.dim(), 1).col(0);
      compat = std::max(compat, m.ind.bar_compatibility_residual(f, psi));
      if (t < 10) compat = std::max(compat, m.ind.compatibility_residual(m.hat, m.hat.algebra.random_element(rng), psi));
      for (int g = 0; g < m.fs.g->order(); ++g) cov = std::max(cov, m.ind.covariance_residual(f, g));
    }
    (void)pairs;
  }
  v.require(compat < 1e-12, "compatibility residual " + sci(compat));
  v.require(cov < 1e-10, "covariance residual " + sci(cov));
  if (v.pass) v.detail = "100 random F per pair, compatibility " + sci(compat) + ", covariance " + sci(cov);
  return v;
}

Verdict sector_structure(const std::vector<Model>& models, const std::vector<CatalogPair>& pairs) {
  Verdict v;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const Model& m = models[i];
    const std::string name = pair_name(pairs[i]);
    const auto local = oracle::local_elements(m.fs.h.members());
    int total = 0;
    for (int eta = 0; eta < m.fs.h_data.size(); ++eta) {
      std::vector<int> expected;
      for (int gamma = 0; gamma < m.fs.g_data.size(); ++gamma)
        if (oracle::hom_dim(m.fs.h_data.irreps[eta].matrices,
                            oracle::restrict_rep(m.fs.g_data.irreps[gamma].matrices, m.fs.h.members()), local) > 0)
          expected.push_back(gamma);
      const SectorFiber sf = sector_fiber(m.fs, eta);
      v.require(sf.representation_theoretic == expected && sf.operator_algebraic == expected,
                name + " fiber of eta " + std::to_string(eta));
      total += static_cast<int>(expected.size());
    }
    const int cosets = oracle::right_coset_count(m.fs.g->table(), m.fs.h.members());
    v.require(m.s.fibered_centre_dim == cosets * total,
              name + " fibered centre " + std::to_string(m.s.fibered_centre_dim) + " vs " + std::to_string(cosets * total));
    if (pairs[i].group == "S3" && pairs[i].subgroup == "Z3")
      v.require(m.s.points.size() == 8, "S3/Z3 has " + std::to_string(m.s.points.size()) + " points");
  }
  if (v.pass) v.detail = "fibers equal on every eta, fibered centre = |H\\G| * sum |fiber|, S3/Z3 has 8 points";
  return v;
}

Verdict ssb_detection(const std::vector<Model>& models, const std::vector<CatalogPair>& pairs) {
  Verdict v;
  std::string h_literal;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const Model& m = models[i];
    const std::string name = pair_name(pairs[i]);
    const SymmetryStatus g = symmetry_status(m.hat_centre, m.hat.translation, Subgroup::whole(m.fs.g));
    const std::vector<int> where = centre_point_cosets(m.hat, m.hat_centre.projections);
    std::set<int> covered;
    if (g.orbits.size() == 1)
      for (int p : g.orbits[0]) covered.insert(where[p]);
    v.require(g.broken && g.orbits.size() == 1 && static_cast<int>(covered.size()) == m.s.cosets,
              name + " G-translation orbit is not H\\G");
    const auto phases = phase_diagram(g);
    v.require(phases.size() == 1, name + " has " + std::to_string(phases.size()) + " ergodic components");

    // H acting on the vacuum representation: F = M(V) is a factor, and the
    // vacuum coset point of F^ is fixed by H
    const SymmetryStatus on_vacuum = symmetry_status(centre(m.fs.f), m.fs.action, m.fs.h);
    const SymmetryStatus hs = symmetry_status(m.hat_centre, m.hat.translation, m.fs.h);
    const int vacuum = static_cast<int>(std::find(where.begin(), where.end(), 0) - where.begin());
    bool fixes_vacuum = true;
    for (const auto& perm : hs.permutations) fixes_vacuum = fixes_vacuum && perm[vacuum] == vacuum;
    v.require(!on_vacuum.broken && fixes_vacuum, name + " H moves the vacuum sector");
    v.require(hs.broken == !m.fs.h.is_normal(), name + " H-translation status on F^");
    if (hs.broken) h_literal += (h_literal.empty() ? "" : ", ") + name;
  }
  if (v.pass)
    v.detail = "G broken with one orbit H\\G on every pair; H unbroken on the vacuum" +
               (h_literal.empty() ? std::string() : "; H moves non-vacuum cosets of F^ for non-normal " + h_literal);
  return v;
}

Verdict psi_channel_checks(const std::vector<Model>& models, const std::vector<CatalogPair>& pairs) {
  Verdict v;
  double independence = 0.0, round_trip = 0.0;
  std::vector<std::string> blind;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const Model& m = models[i];
    for (Eigen::Index k = 0; k < m.fs.a.dim(); ++k) {
      const std::vector<cd> values = psi_channel(m.fs, m.s, m.fs.a.element(k));
      for (int c = 1; c < m.s.cosets; ++c)
        for (std::size_t f = 0; f < m.s.fiber.size(); ++f)
          independence = std::max(independence, std::abs(values[m.s.point_index(c, f)] - values[m.s.point_index(0, f)]));
    }
    if (m.s.cosets == 1) continue;

    bool witnessed = false;
    Rng rng(77);
    for (const auto& row : psi_sensitivity(m.fs, m.s)) {
      if (row.dual_spread <= 1e-9) continue;
      witnessed = witnessed || !m.fs.a.contains(m.fs.a_d.element(row.witness));
      std::vector<int> support;
      std::vector<double> mu(m.s.points.size(), 0.0);
      double total = 0.0;
      for (int c = 0; c < m.s.cosets; ++c) {
        const int p = m.s.point_index(c, row.fiber);
        support.push_back(p);
        total += (mu[p] = rng.uniform() + 0.1);
      }
      for (auto& w : mu) w /= total;
      const Readout r = order_parameter_readout(m.fs, m.s, psi_dual(m.fs, m.s, mu).state, support);
      v.require(r.double_coset_marginal_determined, pair_name(pairs[i]) + " readout undetermined");
      for (std::size_t d = 0; d < r.double_cosets.size(); ++d) {
        double expected = 0.0;
        for (int c : r.double_cosets[d]) expected += mu[m.s.point_index(c, row.fiber)];
        round_trip = std::max(round_trip, std::abs(r.double_coset_marginal[d] - expected));
      }
    }
    if (!witnessed) blind.push_back(pair_name(pairs[i]));
  }
  v.require(independence < 1e-12, "spread on A " + sci(independence));
  std::string blind_list;
  for (const auto& b : blind) blind_list += (blind_list.empty() ? "" : ", ") + b;
  v.require(blind.empty(), "no coset-sensitive element of A_d for " + blind_list +
                               " (every isotypic projection of an abelian G commutes with U(g))");
  v.require(round_trip < 1e-8, "round trip " + sci(round_trip));
  if (v.pass) v.detail = "spread on A " + sci(independence) + ", round trip " + sci(round_trip);
  else v.detail += "; spread on A " + sci(independence) + ", round trip " + sci(round_trip);
  return v;
}

Matrix with_spectrum(Rng& rng, const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  Eigen::HouseholderQR<Matrix> qr(rng.random_matrix(n, n));
  const Matrix q = qr.householderQ();
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = values[i];
  return q * d * q.adjoint();
}

Matrix random_density(Rng& rng, int n) {
  const Matrix x = rng.random_matrix(n, n);
  const Matrix rho = x * x.adjoint();
  return rho / rho.trace().real();
}

Instrument canonical_instrument(const Observable& obs) {
  std::vector<double> mu0(obs.outcomes(), 0.0);
  mu0[0] = 1.0;
  return Instrument(obs, CouplingDynamics::canonical(obs), mu0);
}

Verdict measurement_scheme() {
  Verdict v;
  Rng rng(401);
  double worst = 0.0, oracle_gap = 0.0;
  for (int n = 2; n <= 8; ++n) {
    std::vector<double> spectrum;
    for (int i = 0; i < n; ++i) spectrum.push_back(i % 3 == 2 ? i - 1.0 : double(i));
    const Matrix a = with_spectrum(rng, spectrum);
    const Observable obs = Observable::from_matrix(a);
    const Instrument inst = canonical_instrument(obs);
    worst = std::max(worst, measurement_scheme_check(inst, 1e-12).residual);
    const auto e = oracle::spectral_projections(a);
    std::vector<Matrix> ops;
    for (int k = 0; k < obs.outcomes(); ++k) ops.push_back(inst.operation(Matrix::Identity(n, n), {k}));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Matrix unit = Matrix::Zero(n, n);
        unit(i, j) = 1.0;
        const auto readout = oracle::pointer_readout(e, unit);
        for (int k = 0; k < obs.outcomes(); ++k) {
          oracle_gap = std::max(oracle_gap, std::abs((unit * ops[k]).trace() - readout[k]));
          oracle_gap = std::max(oracle_gap, std::abs((unit * e[k]).trace() - readout[k]));
        }
      }
  }
  v.require(worst < 1e-12, "canonical residual " + sci(worst));
  v.require(oracle_gap < 1e-12, "oracle gap " + sci(oracle_gap));
  const Observable obs = Observable::from_matrix(with_spectrum(rng, {0.0, 1.0, 2.0}));
  const SchemeCheck ident =
      measurement_scheme_check(Instrument(obs, CouplingDynamics::identity(3, 3), {1.0, 0.0, 0.0}), 1e-12);
  v.require(!ident.passed, "identity coupling passes the scheme check");
  if (v.pass)
    v.detail = "dims 2-8 residual " + sci(worst) + ", oracle gap " + sci(oracle_gap) +
               ", identity coupling residual " + sci(ident.residual);
  return v;
}

Verdict instrument_semantics() {
  Verdict v;
  Rng rng(402);
  double weight = 0.0, repeat = 0.0;
  for (int n = 2; n <= 6; ++n) {
    std::vector<double> spectrum;
    for (int i = 0; i < n; ++i) spectrum.push_back(0.5 * i - 1.0);
    const Matrix a = with_spectrum(rng, spectrum);
    const Observable obs = Observable::from_matrix(a);
    const Instrument inst = canonical_instrument(obs);
    const auto e = oracle::spectral_projections(a);
    for (int t = 0; t < 5; ++t) {
      const Matrix rho = random_density(rng, n);
      const StateFunctional omega(rho);
      for (int k = 0; k < n; ++k) {
        const double p = (rho * e[k]).trace().real();
        weight = std::max(weight, std::abs(inst.j({k}, omega, Matrix::Identity(n, n)) - cd(p)));
        const StateFunctional post = posterior_state(inst, omega, k);
        repeat = std::max(repeat, std::abs(inst.density({k}, post).trace().real() - 1.0));
        repeat = std::max(repeat, max_abs(post.density() - e[k] * rho * e[k] / p));
      }
    }
  }
  v.require(weight < 1e-12, "J(1) vs p " + sci(weight));
  v.require(repeat < 1e-10, "repeatability " + sci(repeat));
  if (v.pass) v.detail = "J(1) vs p " + sci(weight) + ", posterior repeatability " + sci(repeat);
  return v;
}

Verdict preparation() {
  Verdict v;
  RunConfig cfg;
  cfg.input = std::string(SSB_DATA_DIR) + "/decoherence.json";
  const RunResult r = run_measurement_scenario(cfg);
  const json& q = r.report.at("queries");
  const double reached_distance = q.at(0).at("final_distance").get<double>();
  v.require(q.at(0).at("reached").get<bool>() && q.at(0).at("trajectory").size() == 2,
            "maximally mixed target not reached in one step");
  v.require(reached_distance < 1e-10, "final distance " + sci(reached_distance));
  v.require(!q.at(1).at("reached").get<bool>(), "y-eigenstate reported reached");

  // independent replay: one canonical step on |+><+| and the eigenstate readout
  Matrix sz = Matrix::Zero(2, 2);
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  const auto e = oracle::spectral_projections(sz);
  const auto mu = oracle::pointer_readout(e, Matrix::Constant(2, 2, 0.5));
  Matrix prepared = Matrix::Zero(2, 2);
  for (std::size_t k = 0; k < e.size(); ++k) prepared += mu[k].real() * e[k];
  const double replay = oracle::trace_norm(prepared - Matrix::Identity(2, 2) / 2.0);
  v.require(std::abs(replay - reached_distance) < 1e-12, "oracle replay distance " + sci(replay));
  if (v.pass)
    v.detail = "I/2 reached at distance " + sci(reached_distance) + ", y-eigenstate stays at " +
               sci(q.at(1).at("final_distance").get<double>());
  return v;
}

Verdict repeatable_families() {
  Verdict v;
  Rng rng(403);
  double good_dev = 0.0, good_qc = 0.0, bad_dev = 1e300, bad_qc = 1e300;
  for (const std::vector<double>& spectrum :
       {std::vector<double>{-1.0, 1.0}, {0.0, 1.0, 1.0, 3.0}, {0.0, 0.5, 1.0, 1.5, 2.0}}) {
    const Observable obs = Observable::from_matrix(with_spectrum(rng, spectrum));
    const int n = obs.dim();
    StateFamily eigen, mixed;
    for (const Matrix& p : obs.projections) {
      eigen.emplace_back(p / p.trace().real());
      mixed.emplace_back(Matrix::Identity(n, n) / double(n));
    }
    const RepeatableCheck good = repeatable_family_check(obs, eigen);
    for (bool b : good.passed) v.require(b, "eigenstate family rejected");
    good_dev = std::max(good_dev, good.max_deviation);
    good_qc = std::max(good_qc, qc_channel_compare(obs, CqChannel(obs, eigen)));
    const RepeatableCheck bad = repeatable_family_check(obs, mixed);
    bool any_failed = false;
    for (bool b : bad.passed) any_failed = any_failed || !b;
    v.require(any_failed, "mixed family accepted");
    bad_dev = std::min(bad_dev, bad.max_deviation);
    bad_qc = std::min(bad_qc, qc_channel_compare(obs, CqChannel(obs, mixed)));
  }
  v.require(good_dev < 1e-10, "eigenstate deviation " + sci(good_dev));
  v.require(good_qc < 1e-10, "eigenstate q->c discrepancy " + sci(good_qc));
  v.require(bad_qc > 1e-3, "mixed family q->c discrepancy " + sci(bad_qc));
  if (v.pass)
    v.detail = "eigenstates deviation " + sci(good_dev) + " discrepancy " + sci(good_qc) +
               "; mixed deviation >= " + sci(bad_dev) + " discrepancy >= " + sci(bad_qc);
  return v;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict determinism() {
  Verdict v;
  const auto dir = std::filesystem::temp_directory_path() / "ssb_acceptance";
  std::filesystem::create_directories(dir);
  const std::string cli = SSB_CLI_PATH;
  const std::string data = SSB_DATA_DIR;
  const std::vector<std::string> runs = {
      "analyze --group " + data + "/S3.json --subgroup Z2 --seed 4242",
      "analyze --group " + data + "/A4.json --subgroup V4 --seed 4242 --format text",
      "measure --scenario " + data + "/qubit_canonical.json --seed 4242",
  };
  std::size_t bytes = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
      const auto out = dir / ("run" + std::to_string(i) + "_" + std::to_string(rep));
      const std::string cmd = "\"" + cli + "\" " + runs[i] + " --out \"" + out.string() + "\"";
      const int status = std::system(cmd.c_str());
      v.require(status == 0, "exit status " + std::to_string(status) + " for " + runs[i]);
      const std::string text = slurp(out);
      if (rep == 0)
        first = text;
      else
        v.require(!text.empty() && text == first, "reports differ for " + runs[i]);
      bytes += text.size();
    }
  }
  if (v.pass) v.detail = std::to_string(runs.size()) + " configurations, " + std::to_string(bytes) + " bytes compared";
  return v;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<CatalogPair> pairs = catalog_pairs();
  std::vector<Model> models;

  int failures = 0;
  auto emit = [&](int id, const std::string& title, const Verdict& v) {
    std::printf("%s [%d] %s: %s\n", v.pass ? "PASS" : "FAIL", id, title.c_str(), v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failures;
  };
  auto guarded = [&](int id, const std::string& title, auto&& fn) {
    try {
      emit(id, title, fn());
    } catch (const std::exception& e) {
      emit(id, title, Verdict{false, std::string("exception: ") + e.what()});
    }
  };

  guarded(1, "Frobenius reciprocity", frobenius);
  guarded(2, "Representation engine", representation_engine);
  try {
    for (const auto& p : pairs) models.push_back(build(p));
  } catch (const std::exception& e) {
    std::printf("model construction failed: %s\n", e.what());
  }
  const bool have_models = models.size() == pairs.size();
  auto with_models = [&](auto fn) {
    return [&, fn]() { return have_models ? fn(models, pairs) : Verdict{false, "models unavailable"}; };
  };
  guarded(3, "Fixed points of F^ and centre dimension", with_models(toy_model_relations));
  guarded(4, "Crossed-product representation", with_models(crossed_product));
  guarded(5, "Sector structure", with_models(sector_structure));
  guarded(6, "SSB detection", with_models(ssb_detection));
  guarded(7, "Channel Psi", with_models(psi_channel_checks));
  guarded(8, "Measurement scheme", measurement_scheme);
  guarded(9, "Instrument semantics", instrument_semantics);
  guarded(10, "Preparation", preparation);
  guarded(11, "Repeatable families", repeatable_families);
  guarded(12, "Determinism", determinism);

  std::printf("%d of 12 criteria passed in %.1f s\n", 12 - failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
