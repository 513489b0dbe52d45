#include "ssb/sectors.hpp"

#include <algorithm>
#include <map>

namespace ssb {

namespace {

UnitaryRep restricted_to_h(const FieldSystem& fs) {
  UnitaryRep vh{fs.h.as_group(), {}, fs.v().label + "|H"};
  for (int m : fs.h.members()) vh.matrices.push_back(fs.v().matrices[m]);
  return vh;
}

bool is_regular(const UnitaryRep& v) {
  const int order = v.group->order();
  if (v.dim() != order) return false;
  for (int g = 0; g < order; ++g)
    if (std::abs(v.character(g) - cd(g == 0 ? order : 0)) > tol::rounding) return false;
  return true;
}

}  // namespace

SectorSpectrum sector_spectrum(const FieldSystem& fs) {
  SectorSpectrum s;
  s.cosets = fs.right_cosets.size();
  s.coset_representatives = fs.right_cosets.representatives;
  const auto iso_h = isotypic_decomposition(restricted_to_h(fs), fs.h_data.table);
  const auto iso_g = isotypic_decomposition(fs.v(), fs.g_data.table);
  const BranchingTable bt = branching_table(fs.h, fs.h_data.table, fs.g_data.table);

  for (int eta = 0; eta < fs.h_data.size(); ++eta)
    for (int gamma = 0; gamma < fs.g_data.size(); ++gamma) {
      const int m = bt.multiplicities[eta][gamma];
      if (m == 0) continue;
      Matrix p = iso_h[eta].projection * iso_g[gamma].projection;
      if (p.trace().real() < 0.5) {
        s.warnings.push_back("fiber pair (" + std::to_string(eta) + "," + std::to_string(gamma) +
                             ") does not occur in V");
        continue;
      }
      s.fiber.push_back({eta, gamma, m, std::move(p)});
    }

  for (int c = 0; c < s.cosets; ++c) {
    const Matrix& u = fs.v().matrices[s.coset_representatives[c]];
    for (int f = 0; f < static_cast<int>(s.fiber.size()); ++f) {
      s.points.push_back({c, f});
      const Matrix& p = s.fiber[f].projection;
      s.densities.push_back(u.adjoint() * p * u / p.trace().real());
    }
  }

  std::map<int, std::vector<int>> groups;
  for (int f = 0; f < static_cast<int>(s.fiber.size()); ++f) groups[s.fiber[f].gamma].push_back(f);
  for (auto& [gamma, members] : groups) {
    s.gluing_gamma.push_back(gamma);
    s.gluing.push_back(members);
  }

  // fibered model: functions H\G -> (sum over eta of A compressed to the
  // eta-isotypic subspace), realized block diagonally
  const int n = fs.n();
  std::vector<Matrix> compressed;
  for (const auto& comp : iso_h) {
    if (comp.multiplicity == 0) continue;
    for (Eigen::Index i = 0; i < fs.a.dim(); ++i)
      compressed.push_back(comp.projection * fs.a.element(i) * comp.projection);
  }
  const MatrixStarAlgebra b = MatrixStarAlgebra::from_span(compressed, n);
  const Eigen::Index big = static_cast<Eigen::Index>(s.cosets) * n;
  Matrix columns(big * big, s.cosets * b.dim());
  Eigen::Index col = 0;
  for (int c = 0; c < s.cosets; ++c) {
    Matrix unit = Matrix::Zero(s.cosets, s.cosets);
    unit(c, c) = 1.0;
    for (Eigen::Index i = 0; i < b.dim(); ++i) columns.col(col++) = vec(kron(unit, b.element(i)));
  }
  MatrixStarAlgebra fibered = MatrixStarAlgebra::from_orthonormal(std::move(columns), big);
  s.fibered_centre_dim = static_cast<int>(centre(fibered, fs.seed).algebra.dim());
  s.expected_fibered_centre_dim = s.cosets * static_cast<int>(s.fiber.size());
  return s;
}

SectorFiber sector_fiber(const FieldSystem& fs, int eta) {
  SectorFiber out{eta, {}, {}, {}};
  const BranchingTable bt = branching_table(fs.h, fs.h_data.table, fs.g_data.table);
  const auto iso_h = isotypic_decomposition(restricted_to_h(fs), fs.h_data.table);
  const auto iso_g = isotypic_decomposition(fs.v(), fs.g_data.table);
  for (int gamma = 0; gamma < fs.g_data.size(); ++gamma) {
    if (bt.multiplicities[eta][gamma] < 1) continue;
    out.representation_theoretic.push_back(gamma);
    if (iso_g[gamma].multiplicity > 0) out.realized.push_back(gamma);
  }

  if (iso_h[eta].multiplicity == 0)
    throw InputError("irrep " + std::to_string(eta) + " of H does not occur in V restricted to H");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(iso_h[eta].projection));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) ++rank;
  const Matrix q = es.eigenvectors().rightCols(rank);

  const Centre z = centre(compress(fs.a, q), fs.seed);
  for (const auto& p : z.projections) {
    const double size = p.trace().real();
    int label = -1;
    for (int gamma = 0; gamma < fs.g_data.size(); ++gamma) {
      const double w = (q.adjoint() * iso_g[gamma].projection * q * p).trace().real();
      if (std::abs(w - size) < 1e-6) label = gamma;
      else if (std::abs(w) > 1e-6)
        throw ConsistencyError("central projection straddles isotypic components", std::abs(w));
    }
    if (label < 0) throw ConsistencyError("central projection carries no G-isotypic label", size);
    out.operator_algebraic.push_back(label);
  }
  std::sort(out.operator_algebraic.begin(), out.operator_algebraic.end());
  return out;
}

std::vector<cd> psi_channel(const FieldSystem& fs, const SectorSpectrum& s, const Matrix& b) {
  if (b.rows() != fs.n() || b.cols() != fs.n()) throw InputError("Psi argument has the wrong size");
  if (!fs.a_d.contains(b)) throw InputError("Psi argument is not in A_d (residual " +
                                            std::to_string(fs.a_d.span_residual(b)) + ")");
  std::vector<cd> out;
  for (const auto& rho : s.densities) out.push_back((rho * b).trace());
  return out;
}

DualState psi_dual(const FieldSystem& fs, const SectorSpectrum& s, const std::vector<double>& mu,
                   GluingPolicy policy) {
  if (mu.size() != s.points.size())
    throw InputError("weights have " + std::to_string(mu.size()) + " entries for " +
                     std::to_string(s.points.size()) + " spectrum points");
  double total = 0.0;
  for (double w : mu) {
    if (w < -tol::state) throw InputError("weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > tol::state) throw InputError("weights must sum to 1");

  std::vector<int> unglued;
  for (std::size_t grp = 0; grp < s.gluing.size(); ++grp) {
    if (s.gluing[grp].size() < 2) continue;
    bool uniform = true;
    for (int c = 0; c < s.cosets && uniform; ++c) {
      const double first = mu[s.point_index(c, s.gluing[grp].front())];
      for (int f : s.gluing[grp])
        if (std::abs(mu[s.point_index(c, f)] - first) > tol::state) uniform = false;
    }
    if (uniform) continue;
    if (policy == GluingPolicy::Enforce)
      throw GluingError("weights differ inside the gluing group of G-irrep " +
                            std::to_string(s.gluing_gamma[grp]),
                        s.gluing_gamma[grp]);
    unglued.push_back(s.gluing_gamma[grp]);
  }

  Matrix rho = Matrix::Zero(fs.n(), fs.n());
  for (std::size_t p = 0; p < mu.size(); ++p) rho += mu[p] * s.densities[p];
  return {StateFunctional(rho, 1e-9), unglued};
}

Readout order_parameter_readout(const FieldSystem& fs, const SectorSpectrum& s,
                                const StateFunctional& omega, std::vector<int> support) {
  Readout r;
  if (support.empty())
    for (int p = 0; p < static_cast<int>(s.points.size()); ++p) support.push_back(p);
  r.support = support;
  const Eigen::Index k = static_cast<Eigen::Index>(support.size());
  const Eigen::Index rows = 2 * fs.a_d.dim() + 1;
  Eigen::MatrixXd m(rows, k);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < fs.a_d.dim(); ++i) {
    const Matrix b = fs.a_d.element(i);
    const cd target = omega(b);
    rhs(2 * i) = target.real();
    rhs(2 * i + 1) = target.imag();
    for (Eigen::Index j = 0; j < k; ++j) {
      const cd v = (s.densities[support[j]] * b).trace();
      m(2 * i, j) = v.real();
      m(2 * i + 1, j) = v.imag();
    }
  }
  m.row(rows - 1).setOnes();
  rhs(rows - 1) = 1.0;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double threshold = 1e-10 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(k);
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > threshold) {
      x += svd.matrixV().col(i) * (svd.matrixU().col(i).dot(rhs) / sv(i));
      ++r.rank;
    }
  r.full_rank = r.rank == k;
  r.residual = (m * x - rhs).norm();
  r.weights.assign(x.data(), x.data() + k);
  r.marginal.assign(s.cosets, 0.0);
  for (Eigen::Index j = 0; j < k; ++j) r.marginal[s.points[support[j]].coset] += x(j);

  const Eigen::MatrixXd kernel = svd.matrixV().rightCols(k - r.rank);
  auto determined = [&](const std::vector<int>& cosets) {
    Eigen::VectorXd indicator = Eigen::VectorXd::Zero(k);
    for (Eigen::Index j = 0; j < k; ++j)
      if (std::find(cosets.begin(), cosets.end(), s.points[support[j]].coset) != cosets.end()) indicator(j) = 1.0;
    return kernel.cols() == 0 || (kernel.transpose() * indicator).norm() <= 1e-8;
  };
  r.marginal_determined = true;
  for (int c = 0; c < s.cosets; ++c) r.marginal_determined = r.marginal_determined && determined({c});

  std::vector<int> orbit_of(s.cosets, -1);
  for (int c = 0; c < s.cosets; ++c) {
    if (orbit_of[c] >= 0) continue;
    std::vector<int> orbit;
    for (int h : fs.h.members()) {
      const int d = fs.right_cosets.translation_action[h][c];
      if (orbit_of[d] < 0) {
        orbit_of[d] = static_cast<int>(r.double_cosets.size());
        orbit.push_back(d);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    r.double_cosets.push_back(std::move(orbit));
  }
  r.double_coset_marginal.assign(r.double_cosets.size(), 0.0);
  for (int c = 0; c < s.cosets; ++c) r.double_coset_marginal[orbit_of[c]] += r.marginal[c];
  r.double_coset_marginal_determined = true;
  for (const auto& orbit : r.double_cosets)
    r.double_coset_marginal_determined = r.double_coset_marginal_determined && determined(orbit);
  return r;
}

std::vector<SensitivityRow> psi_sensitivity(const FieldSystem& fs, const SectorSpectrum& s) {
  const int nf = static_cast<int>(s.fiber.size());
  auto spread = [&](const Matrix& b, int f) {
    double worst = 0.0;
    for (int c1 = 0; c1 < s.cosets; ++c1)
      for (int c2 = c1 + 1; c2 < s.cosets; ++c2)
        worst = std::max(worst, std::abs((s.densities[s.point_index(c1, f)] * b).trace() -
                                         (s.densities[s.point_index(c2, f)] * b).trace()));
    return worst;
  };
  std::vector<SensitivityRow> rows;
  for (int f = 0; f < nf; ++f) {
    SensitivityRow row{f, 0.0, 0.0, -1};
    for (Eigen::Index i = 0; i < fs.a.dim(); ++i)
      row.invariant_spread = std::max(row.invariant_spread, spread(fs.a.element(i), f));
    for (Eigen::Index i = 0; i < fs.a_d.dim(); ++i) {
      const double d = spread(fs.a_d.element(i), f);
      if (d > row.dual_spread) {
        row.dual_spread = d;
        row.witness = static_cast<int>(i);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<RelationCheck> verify_relations(const FieldSystem& fs, const HatAlgebra& hat,
                                            const Centre& hat_centre, const SectorSpectrum& s) {
  std::vector<RelationCheck> out;
  const Subgroup whole = Subgroup::whole(fs.g);

  {
    const MatrixStarAlgebra fixed = fixed_point_algebra(hat.algebra, hat.translation, whole, fs.seed);
    std::vector<Matrix> images;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < fixed.dim(); ++i) {
      images.push_back(hat.block(fixed.element(i), 0));
      worst = std::max(worst, fs.a_d.span_residual(images.back()));
    }
    Matrix stacked(static_cast<Eigen::Index>(fs.n()) * fs.n(), static_cast<Eigen::Index>(images.size()));
    for (std::size_t i = 0; i < images.size(); ++i) stacked.col(static_cast<Eigen::Index>(i)) = vec(images[i]);
    const Eigen::Index rank = numerical_rank(stacked);
    Rng rng(fs.seed);
    for (int t = 0; t < 3; ++t) {
      const Matrix x = fixed.random_element(rng);
      const Matrix y = fixed.random_element(rng);
      worst = std::max(worst, max_abs(hat.block(x * y, 0) - hat.block(x, 0) * hat.block(y, 0)) /
                                  std::max(1.0, max_abs(x) * max_abs(y)));
      worst = std::max(worst, max_abs(hat.block(x.adjoint(), 0) - hat.block(x, 0).adjoint()));
    }
    const bool ok = fixed.dim() == fs.a_d.dim() && rank == fixed.dim() && worst < 1e-10;
    out.push_back({"hat_fixed_points_equal_dual", ok, worst,
                   "dim F^G = " + std::to_string(fixed.dim()) + ", dim A_d = " +
                       std::to_string(fs.a_d.dim()) + ", evaluation rank " + std::to_string(rank)});
  }

  {
    const int dz = static_cast<int>(hat_centre.algebra.dim());
    out.push_back({"hat_centre_dimension", dz == s.cosets, double(std::abs(dz - s.cosets)),
                   "dim Z(F^) = " + std::to_string(dz) + ", |H\\G| = " + std::to_string(s.cosets)});
  }

  {
    const GaloisResult gal = galois_stabilizer(fs.action, fs.a_d);
    const NormalizerQuotient nq = normalizer_quotient(fs.h);
    const bool regular = is_regular(fs.v());
    bool ok;
    if (regular) {
      ok = gal.fixing.members() == fs.h.members() && gal.stabilizing.members() == nq.normalizer.members();
    } else {
      auto contains_all = [](const std::vector<int>& big, const std::vector<int>& small) {
        return std::includes(big.begin(), big.end(), small.begin(), small.end());
      };
      ok = contains_all(gal.fixing.members(), fs.h.members()) &&
           contains_all(gal.stabilizing.members(), nq.normalizer.members());
    }
    out.push_back({"galois_fixing_and_stabilizer", ok, 0.0,
                   "|fixing| = " + std::to_string(gal.fixing.order()) + ", |H| = " +
                       std::to_string(fs.h.order()) + ", |stabilizing| = " +
                       std::to_string(gal.stabilizing.order()) + ", |N(H)| = " +
                       std::to_string(nq.normalizer.order()) + (regular ? "" : " (V not regular)")});
  }

  {
    bool ok = true;
    double worst = 0.0;
    for (const auto& pair : s.fiber) {
      const FrobeniusPair fp =
          frobenius_check(fs.h, fs.h_data.irreps[pair.eta], fs.g_data.irreps[pair.gamma]);
      worst = std::max(worst, double(std::abs(fp.via_restriction - fp.via_induction)));
      ok = ok && fp.via_restriction == fp.via_induction && fp.via_restriction == pair.multiplicity;
    }
    out.push_back({"frobenius_on_fiber_pairs", ok, worst,
                   std::to_string(s.fiber.size()) + " fiber pairs"});
  }

  out.push_back({"conditional_expectations_compose", fs.expectation_residual < 1e-10,
                 fs.expectation_residual, "m_G = m_{G/H} o m_H on random F"});
  return out;
}

}  // namespace ssb
