#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssb/representation.hpp"

namespace ssb {

/// Unital *-subalgebra of M_n given by a trace-orthonormal basis. The basis
/// is stored as the columns of an n^2 x k matrix of column-major vecs.
class MatrixStarAlgebra {
 public:
  /// Smallest unital *-closed span containing the generators. Non-unital
  /// inputs are unitized; `unitized()` reports it.
  static MatrixStarAlgebra generated_by(const std::vector<Matrix>& generators);
  /// Span of `spanning`, assumed closed; the closure certificate records
  /// whether that assumption checks out.
  static MatrixStarAlgebra from_span(const std::vector<Matrix>& spanning, Eigen::Index n);
  /// Trusted orthonormal basis columns (n^2 x k).
  static MatrixStarAlgebra from_orthonormal(Matrix columns, Eigen::Index n);
  static MatrixStarAlgebra full(Eigen::Index n);
  static MatrixStarAlgebra scalars(Eigen::Index n);

  Eigen::Index ambient_dim() const { return n_; }
  Eigen::Index dim() const { return basis_.cols(); }
  Matrix element(Eigen::Index i) const { return unvec(basis_.col(i), n_); }
  std::vector<Matrix> basis() const;
  const Matrix& basis_columns() const { return basis_; }

  Vector coordinates(const Matrix& x) const { return basis_.adjoint() * vec(x); }
  Matrix project(const Matrix& x) const { return unvec(basis_ * coordinates(x), n_); }
  /// Frobenius distance from x to the span, relative to max(1, |x|).
  double span_residual(const Matrix& x) const;
  bool contains(const Matrix& x, double tolerance = tol::algebra) const {
    return span_residual(x) <= tolerance;
  }
  bool same_span(const MatrixStarAlgebra& other, double tolerance = tol::algebra) const;

  Matrix random_element(Rng& rng) const;
  Matrix random_self_adjoint(Rng& rng) const { return hermitian_part(random_element(rng)); }

  bool closure_certified() const { return closure_residual_ <= tol::algebra; }
  double closure_residual() const { return closure_residual_; }
  bool unitized() const { return unitized_; }

  /// Recomputes the closure certificate: identity, adjoints and products
  /// (exhaustive over basis pairs when cheap, otherwise seeded random pairs).
  void certify(std::uint64_t seed = kDefaultSeed);

 private:
  Eigen::Index n_ = 0;
  Matrix basis_;
  double closure_residual_ = 0.0;
  bool unitized_ = false;
};

MatrixStarAlgebra commutant(const MatrixStarAlgebra& a, std::uint64_t seed = kDefaultSeed);

/// Q* A Q for an isometry Q whose range reduces A.
MatrixStarAlgebra compress(const MatrixStarAlgebra& a, const Matrix& isometry);

struct Centre {
  MatrixStarAlgebra algebra;
  std::vector<Matrix> projections;  // minimal central projections, canonical order
};

/// Z = A n A'. Projections come from clustering the spectrum of a random
/// self-adjoint central element (retried with fresh draws when degenerate).
Centre centre(const MatrixStarAlgebra& a, std::uint64_t seed = kDefaultSeed);

std::vector<Matrix> minimal_central_projections(const MatrixStarAlgebra& z,
                                                std::uint64_t seed = kDefaultSeed);

/// tau_g(x) = U(g) x U(g)*.
struct GroupAction {
  UnitaryRep rep;

  const GroupPtr& group() const { return rep.group; }
  Matrix apply(int g, const Matrix& x) const {
    return rep.matrices[g] * x * rep.matrices[g].adjoint();
  }
};

/// (1/|K|) sum_k tau_k(a).
Matrix conditional_expectation(const Matrix& a, const GroupAction& act, const Subgroup& k);

/// {a in A : tau_k(a) = a for all k in K}, as the range of the conditional
/// expectation on A (randomized range finder; the rank test stops once a
/// batch of images is rank deficient).
MatrixStarAlgebra fixed_point_algebra(const MatrixStarAlgebra& a, const GroupAction& act,
                                      const Subgroup& k, std::uint64_t seed = kDefaultSeed);

/// A small generating set of the subgroup, as parent indices.
std::vector<int> generating_set(const Subgroup& k);

struct IsotypicComponent {
  int irrep;
  Matrix projection;
  int multiplicity;
};

/// One entry per row of `table` (zero projections included). `u` is a
/// representation of the group `table` belongs to.
std::vector<IsotypicComponent> isotypic_decomposition(const UnitaryRep& u,
                                                      const CharacterTable& table);

/// Positive unit-trace density on C^n; omega(a) = Tr(density a).
class StateFunctional {
 public:
  explicit StateFunctional(Matrix density, double tolerance = tol::state);
  const Matrix& density() const { return density_; }
  cd operator()(const Matrix& a) const { return (density_ * a).trace(); }

 private:
  Matrix density_;
};

struct CentralDecomposition {
  std::vector<Matrix> projections;
  std::vector<double> weights;
  std::vector<std::optional<StateFunctional>> components;  // empty where weight is 0
  double reconstruction_residual = 0.0;
};

/// Weights w_i = omega(z_i), components z_i rho z_i / w_i.
CentralDecomposition central_decompose_state(const StateFunctional& omega,
                                             const std::vector<Matrix>& projections);
CentralDecomposition central_decompose_state(const StateFunctional& omega,
                                             const MatrixStarAlgebra& a,
                                             std::uint64_t seed = kDefaultSeed);

struct GaloisResult {
  Subgroup fixing;       // {g : tau_g(b) = b for all b in B}
  Subgroup stabilizing;  // {g : tau_g(B) = B}
};

GaloisResult galois_stabilizer(const GroupAction& act, const MatrixStarAlgebra& b,
                               double tolerance = tol::algebra);

}  // namespace ssb
