#include "ssb/star_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ssb {

namespace {

// Columns of `candidates` orthogonalized against `q` and orthonormalized;
// only directions outside span(q) survive.
Matrix extend_basis(const Matrix& q, Matrix candidates) {
  double largest = 0.0;
  for (Eigen::Index j = 0; j < candidates.cols(); ++j)
    largest = std::max(largest, candidates.col(j).norm());
  for (Eigen::Index j = 0; j < candidates.cols(); ++j) {
    const double norm = candidates.col(j).norm();
    // rounding noise must not be promoted to a unit direction
    if (norm > 1e-10 * largest)
      candidates.col(j) /= norm;
    else
      candidates.col(j).setZero();
  }
  if (q.cols() > 0)
    for (int pass = 0; pass < 2; ++pass) candidates -= q * (q.adjoint() * candidates);
  Matrix fresh = orthonormal_columns(candidates);
  if (q.cols() > 0 && fresh.cols() > 0) fresh -= q * (q.adjoint() * fresh);
  return orthonormal_columns(fresh);
}

Matrix append_columns(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() == 0 ? b.rows() : a.rows(), a.cols() + b.cols());
  if (a.cols()) out.leftCols(a.cols()) = a;
  if (b.cols()) out.rightCols(b.cols()) = b;
  return out;
}

Matrix stack_vecs(const std::vector<Matrix>& ms, Eigen::Index n) {
  Matrix out(n * n, static_cast<Eigen::Index>(ms.size()));
  for (std::size_t j = 0; j < ms.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = vec(ms[j]);
  return out;
}

double relative(double residual, double scale) { return residual / std::max(1.0, scale); }

}  // namespace

MatrixStarAlgebra MatrixStarAlgebra::generated_by(const std::vector<Matrix>& generators) {
  if (generators.empty()) throw InputError("build_algebra needs at least one generator");
  const Eigen::Index n = generators.front().rows();
  std::vector<Matrix> gens;
  for (const auto& g : generators) {
    if (g.rows() != n || g.cols() != n)
      throw InputError("generators must be square matrices of equal size");
    gens.push_back(g);
    gens.push_back(g.adjoint());
  }
  Matrix q(n * n, 0);
  Matrix frontier = extend_basis(q, stack_vecs(gens, n));
  while (frontier.cols() > 0) {
    q = append_columns(q, frontier);
    std::vector<Matrix> products;
    for (Eigen::Index j = 0; j < frontier.cols(); ++j) {
      const Matrix w = unvec(frontier.col(j), n);
      for (const auto& g : gens) products.push_back(w * g);
    }
    frontier = extend_basis(q, stack_vecs(products, n));
  }
  MatrixStarAlgebra a;
  a.n_ = n;
  a.basis_ = std::move(q);
  const Matrix id = Matrix::Identity(n, n);
  if (!a.contains(id)) {
    a.basis_ = append_columns(a.basis_, extend_basis(a.basis_, vec(id)));
    a.unitized_ = true;
  }
  a.certify();
  return a;
}

MatrixStarAlgebra MatrixStarAlgebra::from_span(const std::vector<Matrix>& spanning, Eigen::Index n) {
  MatrixStarAlgebra a;
  a.n_ = n;
  a.basis_ = spanning.empty() ? Matrix(n * n, 0) : extend_basis(Matrix(n * n, 0), stack_vecs(spanning, n));
  a.certify();
  return a;
}

MatrixStarAlgebra MatrixStarAlgebra::from_orthonormal(Matrix columns, Eigen::Index n) {
  MatrixStarAlgebra a;
  a.n_ = n;
  a.basis_ = std::move(columns);
  return a;
}

MatrixStarAlgebra MatrixStarAlgebra::full(Eigen::Index n) {
  return from_orthonormal(Matrix::Identity(n * n, n * n), n);
}

MatrixStarAlgebra MatrixStarAlgebra::scalars(Eigen::Index n) {
  return from_orthonormal(vec(Matrix::Identity(n, n)) / std::sqrt(double(n)), n);
}

std::vector<Matrix> MatrixStarAlgebra::basis() const {
  std::vector<Matrix> out;
  for (Eigen::Index i = 0; i < dim(); ++i) out.push_back(element(i));
  return out;
}

double MatrixStarAlgebra::span_residual(const Matrix& x) const {
  const Vector v = vec(x);
  return relative((v - basis_ * (basis_.adjoint() * v)).norm(), v.norm());
}

bool MatrixStarAlgebra::same_span(const MatrixStarAlgebra& other, double tolerance) const {
  if (other.n_ != n_ || other.dim() != dim()) return false;
  Rng rng(kDefaultSeed);
  for (int i = 0; i < 2; ++i)
    if (!contains(other.random_element(rng), tolerance)) return false;
  return true;
}

Matrix MatrixStarAlgebra::random_element(Rng& rng) const {
  Vector c(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) c(i) = rng.complex_normal();
  return unvec(basis_ * c, n_);
}

void MatrixStarAlgebra::certify(std::uint64_t seed) {
  double worst = span_residual(Matrix::Identity(n_, n_));
  const double k = static_cast<double>(dim());
  const double cost = k * k * double(n_) * n_ * n_;
  if (cost <= 5e7) {
    for (Eigen::Index i = 0; i < dim(); ++i) {
      const Matrix bi = element(i);
      worst = std::max(worst, span_residual(bi.adjoint()));
      for (Eigen::Index j = 0; j < dim(); ++j) worst = std::max(worst, span_residual(bi * element(j)));
    }
  } else {
    // a product identity that fails somewhere fails for generic pairs
    Rng rng(seed);
    for (int t = 0; t < 3; ++t) {
      const Matrix x = random_element(rng);
      const Matrix y = random_element(rng);
      worst = std::max({worst, span_residual(x.adjoint()), span_residual(x * y)});
    }
  }
  closure_residual_ = worst;
}

MatrixStarAlgebra commutant(const MatrixStarAlgebra& a, std::uint64_t seed) {
  const Eigen::Index n = a.ambient_dim();
  if (a.dim() == 1 && a.contains(Matrix::Identity(n, n))) return MatrixStarAlgebra::full(n);
  if (a.dim() == n * n) return MatrixStarAlgebra::scalars(n);

  Rng rng(seed);
  for (int attempt = 0; attempt < 4; ++attempt) {
    // x commuting with a generic self-adjoint s is block diagonal in s's eigenbasis
    const Matrix s = a.random_self_adjoint(rng);
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    const RealVector& values = es.eigenvalues();
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    const auto clusters = cluster_sorted(values, 1e-8 * scale);
    const Matrix& q = es.eigenvectors();

    std::vector<Eigen::Index> offset;
    Eigen::Index unknowns = 0;
    for (auto [b, e] : clusters) {
      offset.push_back(unknowns);
      unknowns += (e - b) * (e - b);
    }

    std::vector<Matrix> constraints;
    for (int t = 0; t < 3; ++t) {
      const Matrix tt = q.adjoint() * a.random_self_adjoint(rng) * q;
      const double tscale = std::max(1.0, max_abs(tt));
      for (std::size_t i = 0; i < clusters.size(); ++i)
        for (std::size_t j = 0; j < clusters.size(); ++j) {
          const auto [bi, ei] = clusters[i];
          const auto [bj, ej] = clusters[j];
          const Eigen::Index di = ei - bi, dj = ej - bj;
          const Matrix block = tt.block(bi, bj, di, dj);
          if (max_abs(block) < 1e-14 * tscale) continue;
          // block X_j - X_i block = 0
          Matrix rows = Matrix::Zero(di * dj, unknowns);
          rows.middleCols(offset[j], dj * dj) += kron(Matrix::Identity(dj, dj), block);
          rows.middleCols(offset[i], di * di) -= kron(block.transpose(), Matrix::Identity(di, di));
          constraints.push_back(std::move(rows));
        }
    }
    Eigen::Index total_rows = 0;
    for (const auto& c : constraints) total_rows += c.rows();
    Matrix system(total_rows, unknowns);
    Eigen::Index row = 0;
    for (const auto& c : constraints) {
      system.middleRows(row, c.rows()) = c;
      row += c.rows();
    }
    const Matrix kernel = null_space(system);

    std::vector<Matrix> elements;
    for (Eigen::Index col = 0; col < kernel.cols(); ++col) {
      Matrix x = Matrix::Zero(n, n);
      for (std::size_t i = 0; i < clusters.size(); ++i) {
        const auto [b, e] = clusters[i];
        const Eigen::Index d = e - b;
        const Matrix xi = Eigen::Map<const Matrix>(kernel.col(col).data() + offset[i], d, d);
        x += q.middleCols(b, d) * xi * q.middleCols(b, d).adjoint();
      }
      elements.push_back(std::move(x));
    }

    double worst = 0.0;
    const bool exhaustive = double(a.dim()) * elements.size() * n * n * n <= 1e8;
    std::vector<Matrix> probes;
    if (exhaustive) {
      probes = a.basis();
    } else {
      for (int t = 0; t < 3; ++t) probes.push_back(a.random_element(rng));
    }
    for (const auto& x : elements)
      for (const auto& p : probes)
        worst = std::max(worst, relative(max_abs(p * x - x * p), max_abs(p) * max_abs(x)));
    if (worst <= tol::algebra) return MatrixStarAlgebra::from_span(elements, n);
  }
  throw ConsistencyError("commutant computation did not converge", 1.0);
}

MatrixStarAlgebra compress(const MatrixStarAlgebra& a, const Matrix& isometry) {
  std::vector<Matrix> images;
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    images.push_back(isometry.adjoint() * a.element(i) * isometry);
  return MatrixStarAlgebra::from_span(images, isometry.cols());
}

std::vector<Matrix> minimal_central_projections(const MatrixStarAlgebra& z, std::uint64_t seed) {
  const Eigen::Index n = z.ambient_dim();
  if (z.dim() == 1) return {Matrix::Identity(n, n)};
  Rng rng(seed);
  std::size_t last_count = 0;
  for (int attempt = 0; attempt < 4; ++attempt) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(z.random_self_adjoint(rng));
    const RealVector& values = es.eigenvalues();
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    const auto clusters = cluster_sorted(values, 1e-7 * scale);
    if (static_cast<Eigen::Index>(clusters.size()) != z.dim()) {
      last_count = clusters.size();
      continue;
    }
    std::vector<Matrix> projections;
    for (auto [b, e] : clusters) {
      const Matrix v = es.eigenvectors().middleCols(b, e - b);
      projections.push_back(v * v.adjoint());
    }
    auto key = [](const Matrix& p) {
      std::vector<long long> k;
      for (Eigen::Index i = 0; i < p.rows(); ++i) k.push_back(std::llround(p(i, i).real() * 1e6));
      for (Eigen::Index j = 0; j < p.cols(); ++j)
        for (Eigen::Index i = 0; i < p.rows(); ++i) {
          k.push_back(std::llround(p(i, j).real() * 1e6));
          k.push_back(std::llround(p(i, j).imag() * 1e6));
        }
      return k;
    };
    std::sort(projections.begin(), projections.end(),
              [&](const Matrix& x, const Matrix& y) { return key(x) > key(y); });
    return projections;
  }
  throw ConsistencyError("central element spectrum has " + std::to_string(last_count) +
                             " clusters for a centre of dimension " + std::to_string(z.dim()),
                         1.0);
}

Centre centre(const MatrixStarAlgebra& a, std::uint64_t seed) {
  const Eigen::Index n = a.ambient_dim();
  const MatrixStarAlgebra ap = commutant(a, seed);
  // Z = A n A'; parametrize by the smaller of the two
  const MatrixStarAlgebra& small = a.dim() <= ap.dim() ? a : ap;
  const MatrixStarAlgebra& large = a.dim() <= ap.dim() ? ap : a;
  const Matrix& bs = small.basis_columns();
  const Matrix& bl = large.basis_columns();
  const Matrix outside = bs - bl * (bl.adjoint() * bs);
  const Matrix kernel = null_space(outside);
  std::vector<Matrix> elements;
  for (Eigen::Index j = 0; j < kernel.cols(); ++j) elements.push_back(unvec(bs * kernel.col(j), n));
  MatrixStarAlgebra z = MatrixStarAlgebra::from_span(elements, n);
  auto projections = minimal_central_projections(z, seed);
  return {std::move(z), std::move(projections)};
}

Matrix conditional_expectation(const Matrix& a, const GroupAction& act, const Subgroup& k) {
  Matrix sum = Matrix::Zero(a.rows(), a.cols());
  for (int g : k.members()) sum += act.apply(g, a);
  return sum / double(k.order());
}

std::vector<int> generating_set(const Subgroup& k) {
  std::vector<int> gens;
  std::set<int> reached{0};
  for (int x : k.members()) {
    if (reached.count(x)) continue;
    gens.push_back(x);
    const auto members = Subgroup::generated_by(k.parent(), gens).members();
    reached = {members.begin(), members.end()};
  }
  return gens;
}

MatrixStarAlgebra fixed_point_algebra(const MatrixStarAlgebra& a, const GroupAction& act,
                                      const Subgroup& k, std::uint64_t seed) {
  if (k.order() == 1) return a;
  const Eigen::Index n = a.ambient_dim();
  Rng rng(seed);
  Matrix range;
  for (Eigen::Index batch = 16;; batch *= 2) {
    std::vector<Matrix> images;
    if (batch >= a.dim()) {
      for (Eigen::Index i = 0; i < a.dim(); ++i)
        images.push_back(conditional_expectation(a.element(i), act, k));
      range = extend_basis(Matrix(n * n, 0), stack_vecs(images, n));
      break;
    }
    for (Eigen::Index i = 0; i < batch; ++i)
      images.push_back(conditional_expectation(a.random_element(rng), act, k));
    range = extend_basis(Matrix(n * n, 0), stack_vecs(images, n));
    if (range.cols() < batch) break;
  }
  MatrixStarAlgebra out = MatrixStarAlgebra::from_orthonormal(std::move(range), n);
  out.certify(seed);
  double worst = 0.0;
  const auto gens = generating_set(k);
  for (Eigen::Index i = 0; i < out.dim(); ++i) {
    const Matrix x = out.element(i);
    for (int g : gens) worst = std::max(worst, max_abs(act.apply(g, x) - x));
  }
  if (worst > tol::algebra) throw ConsistencyError("fixed-point basis is not invariant", worst);
  return out;
}

std::vector<IsotypicComponent> isotypic_decomposition(const UnitaryRep& u,
                                                      const CharacterTable& table) {
  if (u.group != table.group) throw InputError("representation and character table disagree on the group");
  const int order = u.group->order();
  std::vector<IsotypicComponent> out;
  for (int i = 0; i < table.size(); ++i) {
    Matrix p = Matrix::Zero(u.dim(), u.dim());
    for (int g = 0; g < order; ++g) p += std::conj(table.value(i, g)) * u.matrices[g];
    p *= double(table.dims[i]) / order;
    const int mult = round_multiplicity(p.trace() / double(table.dims[i]));
    out.push_back({i, std::move(p), mult});
  }
  return out;
}

StateFunctional::StateFunctional(Matrix density, double tolerance) : density_(std::move(density)) {
  if (density_.rows() != density_.cols()) throw InputError("density matrix must be square");
  if (!is_hermitian(density_, tolerance)) throw InputError("density matrix is not self-adjoint");
  if (const double t = std::abs(density_.trace() - cd(1.0)); t > tolerance)
    throw InputError("density matrix has trace " + std::to_string(density_.trace().real()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(density_), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tolerance)
    throw InputError("density matrix has negative eigenvalue " +
                     std::to_string(es.eigenvalues().minCoeff()));
}

CentralDecomposition central_decompose_state(const StateFunctional& omega,
                                             const std::vector<Matrix>& projections) {
  CentralDecomposition d;
  d.projections = projections;
  const Matrix& rho = omega.density();
  for (const auto& z : projections) {
    const double w = std::max(0.0, omega(z).real());
    d.weights.push_back(w);
    if (w > tol::state)
      d.components.emplace_back(StateFunctional(z * rho * z / w, 1e-8));
    else
      d.components.emplace_back(std::nullopt);
  }
  return d;
}

CentralDecomposition central_decompose_state(const StateFunctional& omega,
                                             const MatrixStarAlgebra& a, std::uint64_t seed) {
  CentralDecomposition d = central_decompose_state(omega, centre(a, seed).projections);
  Rng rng(seed);
  std::vector<Matrix> probes;
  if (a.dim() <= 64) probes = a.basis();
  else
    for (int i = 0; i < 8; ++i) probes.push_back(a.random_element(rng));
  for (const auto& x : probes) {
    cd sum = 0.0;
    for (std::size_t i = 0; i < d.weights.size(); ++i)
      if (d.components[i]) sum += d.weights[i] * (*d.components[i])(x);
    d.reconstruction_residual = std::max(d.reconstruction_residual, std::abs(sum - omega(x)));
  }
  return d;
}

GaloisResult galois_stabilizer(const GroupAction& act, const MatrixStarAlgebra& b, double tolerance) {
  const GroupPtr& g = act.group();
  std::vector<int> fixing, stabilizing;
  for (int x = 0; x < g->order(); ++x) {
    bool fixes = true, stabilizes = true;
    for (Eigen::Index i = 0; i < b.dim() && stabilizes; ++i) {
      const Matrix e = b.element(i);
      const Matrix image = act.apply(x, e);
      if (fixes && max_abs(image - e) > tolerance) fixes = false;
      if (!b.contains(image, tolerance)) stabilizes = false;
    }
    if (fixes && stabilizes) fixing.push_back(x);
    if (stabilizes) stabilizing.push_back(x);
  }
  return {Subgroup(g, fixing, "fixing"), Subgroup(g, stabilizing, "stabilizing")};
}

}  // namespace ssb
