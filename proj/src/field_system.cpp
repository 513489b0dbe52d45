#include "ssb/field_system.hpp"

#include <algorithm>
#include <numeric>

namespace ssb {

Matrix FieldSystem::quotient_expectation(const Matrix& x) const {
  Matrix sum = Matrix::Zero(x.rows(), x.cols());
  for (int r : left_cosets.representatives) sum += action.apply(r, x);
  return sum / double(left_cosets.size());
}

FieldSystem build_field_system(const Subgroup& h, RepresentationData g_data,
                               RepresentationData h_data, const UnitaryRep* v,
                               std::uint64_t seed) {
  const GroupPtr& g = h.parent();
  if (g_data.group != g) throw InputError("representation data does not belong to the group of H");
  if (h_data.group != h.as_group())
    throw InputError("representation data for H must be computed on the subgroup itself");
  UnitaryRep rep = v ? *v : regular_rep(g);
  if (rep.group != g) throw InputError("field representation V is not a representation of G");
  rep.validate();

  Subgroup whole = Subgroup::whole(g);
  FieldSystem fs{g,
                 h,
                 std::move(g_data),
                 std::move(h_data),
                 GroupAction{rep},
                 MatrixStarAlgebra::full(rep.dim()),
                 MatrixStarAlgebra::scalars(rep.dim()),
                 MatrixStarAlgebra::scalars(rep.dim()),
                 coset_space(h, CosetSide::Right),
                 coset_space(h, CosetSide::Left),
                 true,
                 0.0,
                 {},
                 seed};
  const Matrix id = Matrix::Identity(rep.dim(), rep.dim());
  for (int x = 1; x < g->order(); ++x)
    if (max_abs(rep.matrices[x] - id) <= tol::rep) fs.faithful = false;
  if (!fs.faithful)
    fs.warnings.push_back("V is not faithful; symmetry breaking detection may be incomplete");

  fs.a = fixed_point_algebra(fs.f, fs.action, whole, seed);
  fs.a_d = fixed_point_algebra(fs.f, fs.action, h, seed + 1);

  Rng rng(seed);
  for (int t = 0; t < 3; ++t) {
    const Matrix x = rng.random_matrix(rep.dim(), rep.dim());
    const Matrix direct = conditional_expectation(x, fs.action, whole);
    const Matrix staged = fs.quotient_expectation(conditional_expectation(x, fs.action, h));
    fs.expectation_residual = std::max(fs.expectation_residual, max_abs(direct - staged));
  }
  return fs;
}

FieldSystem build_field_system(const GroupSpec& spec, const std::string& subgroup_label,
                               const UnitaryRep* v, std::uint64_t seed) {
  const Subgroup h = spec.subgroup(subgroup_label);
  RepresentationData g_data = spec.representations(seed);
  RepresentationData h_data = RepresentationData::compute(h.as_group(), seed);
  return build_field_system(h, std::move(g_data), std::move(h_data), v, seed);
}

Matrix HatAlgebra::embed(const std::vector<Matrix>& values_at_reps) const {
  if (static_cast<int>(values_at_reps.size()) != cosets())
    throw InputError("hat algebra element needs one value per coset");
  return direct_sum(values_at_reps);
}

Matrix HatAlgebra::block(const Matrix& x, int coset) const {
  return x.block(coset * n(), coset * n(), n(), n());
}

Matrix HatAlgebra::value(const Matrix& x, int g) const {
  int hx = 0;
  const int c = right_cosets.decompose(g, hx);
  return field_action.apply(hx, block(x, c));
}

double HatAlgebra::equivariance_residual(const Matrix& x) const {
  const GroupPtr& g = right_cosets.group;
  double worst = 0.0;
  for (int hm : h.members())
    for (int y = 0; y < g->order(); ++y)
      worst = std::max(worst, max_abs(value(x, g->mul(hm, y)) - field_action.apply(hm, value(x, y))));
  return worst;
}

HatAlgebra build_hat_algebra(const FieldSystem& fs) {
  const int m = fs.right_cosets.size();
  const int n = fs.n();
  const Eigen::Index big = static_cast<Eigen::Index>(m) * n;
  Matrix basis = Matrix::Zero(big * big, static_cast<Eigen::Index>(m) * n * n);
  Eigen::Index col = 0;
  for (int c = 0; c < m; ++c)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) basis((c * n + i) + (c * n + j) * big, col++) = 1.0;

  UnitaryRep w{fs.g, {}, "right translation"};
  for (int x = 0; x < fs.g->order(); ++x) {
    Matrix mat = Matrix::Zero(big, big);
    for (int c = 0; c < m; ++c) {
      int hx = 0;
      const int target = fs.right_cosets.decompose(fs.g->mul(fs.right_cosets.representatives[c], x), hx);
      mat.block(c * n, target * n, n, n) = fs.v().matrices[hx];
    }
    w.matrices.push_back(std::move(mat));
  }
  return {fs.right_cosets, fs.h, fs.action, MatrixStarAlgebra::from_orthonormal(std::move(basis), big),
          GroupAction{std::move(w)}};
}

InducedRep induced_rep(const FieldSystem& fs) {
  const int m = fs.left_cosets.size();
  const int n = fs.n();
  const GroupPtr& g = fs.g;
  UnitaryRep u{g, {}, "induced translation"};
  for (int x = 0; x < g->order(); ++x) {
    Matrix mat = Matrix::Zero(static_cast<Eigen::Index>(m) * n, static_cast<Eigen::Index>(m) * n);
    for (int c = 0; c < m; ++c) {
      // (U^(x) psi)(l_c) = psi(x^-1 l_c) = psi(l_c' h) = U(h^-1) psi(l_c')
      int hx = 0;
      const int source = fs.left_cosets.decompose(g->mul(g->inv(x), fs.left_cosets.representatives[c]), hx);
      mat.block(c * n, source * n, n, n) = fs.v().matrices[g->inv(hx)];
    }
    u.matrices.push_back(std::move(mat));
  }
  return {fs.left_cosets, fs.h, fs.action, std::move(u)};
}

Matrix InducedRep::pi_hat(const HatAlgebra& hat, const Matrix& x) const {
  const GroupPtr& g = left_cosets.group;
  std::vector<Matrix> blocks;
  for (int r : left_cosets.representatives) blocks.push_back(hat.value(x, g->inv(r)));
  return direct_sum(blocks);
}

Matrix InducedRep::pi_bar(const Matrix& f) const {
  const GroupPtr& g = left_cosets.group;
  std::vector<Matrix> blocks;
  for (int r : left_cosets.representatives) blocks.push_back(field_action.apply(g->inv(r), f));
  return direct_sum(blocks);
}

std::vector<Vector> InducedRep::to_function(const Vector& psi) const {
  const GroupPtr& g = left_cosets.group;
  std::vector<Vector> out;
  for (int x = 0; x < g->order(); ++x) {
    int hx = 0;
    const int c = left_cosets.decompose(x, hx);
    out.push_back(field_action.rep.matrices[g->inv(hx)] * psi.segment(c * n(), n()));
  }
  return out;
}

namespace {

// max over g in G, h in H of |phi(gh) - U(h^-1) phi(g)|
double equivariance_defect(const std::vector<Vector>& phi, const Subgroup& h, const UnitaryRep& v,
                           int* worst_element = nullptr) {
  const GroupPtr& g = h.parent();
  double worst = 0.0;
  for (int x = 0; x < g->order(); ++x)
    for (int hm : h.members()) {
      const double d = (phi[g->mul(x, hm)] - v.matrices[g->inv(hm)] * phi[x]).norm();
      if (d > worst) {
        worst = d;
        if (worst_element) *worst_element = x;
      }
    }
  return worst;
}

}  // namespace

Vector InducedRep::from_function(const std::vector<Vector>& psi, double tolerance) const {
  const GroupPtr& g = left_cosets.group;
  if (static_cast<int>(psi.size()) != g->order())
    throw InputError("induced-space vector needs one value per group element");
  for (const auto& p : psi)
    if (p.size() != n()) throw InputError("induced-space values must have the dimension of V");
  double scale = 1.0;
  for (const auto& p : psi) scale = std::max(scale, p.norm());
  int bad = 0;
  const double defect = equivariance_defect(psi, h, field_action.rep, &bad);
  if (defect > tolerance * scale)
    throw EquivarianceError("psi(gh) != U(h^-1) psi(g) on coset " +
                                std::to_string(left_cosets.coset_of[bad]) + " (representative " +
                                std::to_string(left_cosets.representatives[left_cosets.coset_of[bad]]) +
                                ", defect " + std::to_string(defect) + ")",
                            left_cosets.coset_of[bad]);
  Vector out(static_cast<Eigen::Index>(left_cosets.size()) * n());
  for (int c = 0; c < left_cosets.size(); ++c)
    out.segment(c * n(), n()) = psi[left_cosets.representatives[c]];
  return out;
}

double InducedRep::compatibility_residual(const HatAlgebra& hat, const Matrix& x,
                                          const Vector& psi) const {
  const GroupPtr& g = left_cosets.group;
  const auto full = to_function(psi);
  std::vector<Vector> phi;
  for (int y = 0; y < g->order(); ++y) phi.push_back(hat.value(x, g->inv(y)) * full[y]);
  double worst = equivariance_defect(phi, h, field_action.rep);
  const Vector realized = pi_hat(hat, x) * psi;
  for (int c = 0; c < left_cosets.size(); ++c)
    worst = std::max(worst, (realized.segment(c * n(), n()) - phi[left_cosets.representatives[c]]).norm());
  return worst;
}

double InducedRep::bar_compatibility_residual(const Matrix& f, const Vector& psi) const {
  const GroupPtr& g = left_cosets.group;
  const auto full = to_function(psi);
  std::vector<Vector> phi;
  for (int y = 0; y < g->order(); ++y) phi.push_back(field_action.apply(g->inv(y), f) * full[y]);
  double worst = equivariance_defect(phi, h, field_action.rep);
  const Vector realized = pi_bar(f) * psi;
  for (int c = 0; c < left_cosets.size(); ++c)
    worst = std::max(worst, (realized.segment(c * n(), n()) - phi[left_cosets.representatives[c]]).norm());
  return worst;
}

double InducedRep::covariance_residual(const Matrix& f, int g) const {
  const Matrix& u = u_hat.matrices[g];
  return max_abs(pi_bar(field_action.apply(g, f)) - u * pi_bar(f) * u.adjoint());
}

SymmetryStatus symmetry_status(const Centre& c, const GroupAction& act, const Subgroup& k,
                               double tolerance) {
  SymmetryStatus s;
  const auto& p = c.projections;
  const int count = static_cast<int>(p.size());
  s.centre_dim = count;
  s.acting = k.members();
  for (int x : k.members()) {
    std::vector<int> perm(count, -1);
    for (int i = 0; i < count; ++i) {
      const Matrix image = act.apply(x, p[i]);
      for (int j = 0; j < count && perm[i] < 0; ++j)
        if (max_abs(image - p[j]) <= tolerance) perm[i] = j;
      if (perm[i] < 0)
        throw ConsistencyError("element " + std::to_string(x) +
                                   " does not map central projections to central projections",
                               max_abs(image - p[i]));
      if (perm[i] != i) s.broken = true;
    }
    s.permutations.push_back(std::move(perm));
  }
  std::vector<int> seen(count, -1);
  for (int i = 0; i < count; ++i) {
    if (seen[i] >= 0) continue;
    std::vector<int> orbit{i};
    seen[i] = static_cast<int>(s.orbits.size());
    for (std::size_t q = 0; q < orbit.size(); ++q)
      for (const auto& perm : s.permutations) {
        const int j = perm[orbit[q]];
        if (seen[j] < 0) {
          seen[j] = seen[i];
          orbit.push_back(j);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    s.orbits.push_back(std::move(orbit));
  }
  return s;
}

SymmetryStatus symmetry_status(const MatrixStarAlgebra& a, const GroupAction& act,
                               const Subgroup& k, std::uint64_t seed) {
  return symmetry_status(centre(a, seed), act, k);
}

std::vector<PhaseComponent> phase_diagram(const SymmetryStatus& status) {
  std::vector<PhaseComponent> out;
  for (const auto& orbit : status.orbits) out.push_back({orbit, orbit.size() == 1});
  return out;
}

std::vector<int> centre_point_cosets(const HatAlgebra& hat, const std::vector<Matrix>& projections) {
  std::vector<int> out;
  const int n = hat.n();
  for (const auto& p : projections) {
    int found = -1;
    for (int c = 0; c < hat.cosets(); ++c) {
      const double weight = p.block(c * n, c * n, n, n).trace().real();
      if (weight > 0.5) found = found < 0 ? c : -2;
    }
    out.push_back(found < 0 ? -1 : found);
  }
  return out;
}

}  // namespace ssb
