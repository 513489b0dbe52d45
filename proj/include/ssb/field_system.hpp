#pragma once

#include <string>
#include <vector>

#include "ssb/group_io.hpp"
#include "ssb/star_algebra.hpp"

namespace ssb {

/// F = M(V) with G acting through V, A = F^G and A_d = F^H.
struct FieldSystem {
  GroupPtr g;
  Subgroup h;
  RepresentationData g_data;
  RepresentationData h_data;  // over h.as_group()
  GroupAction action;         // tau_g = Ad U(g) on M(V)
  MatrixStarAlgebra f;
  MatrixStarAlgebra a;
  MatrixStarAlgebra a_d;
  CosetSpace right_cosets;  // H\G
  CosetSpace left_cosets;   // G/H
  bool faithful = true;
  double expectation_residual = 0.0;  // |m_G - m_{G/H} o m_H| on random F
  std::vector<std::string> warnings;
  std::uint64_t seed = kDefaultSeed;

  const UnitaryRep& v() const { return action.rep; }
  int n() const { return action.rep.dim(); }
  /// m_{G/H}: average over left coset representatives, for H-invariant input.
  Matrix quotient_expectation(const Matrix& x) const;
};

/// `v` defaults to the left regular representation.
FieldSystem build_field_system(const Subgroup& h, RepresentationData g_data,
                               RepresentationData h_data, const UnitaryRep* v = nullptr,
                               std::uint64_t seed = kDefaultSeed);
FieldSystem build_field_system(const GroupSpec& spec, const std::string& subgroup_label,
                               const UnitaryRep* v = nullptr, std::uint64_t seed = kDefaultSeed);

/// H-equivariant functions G -> F, F^(hg) = tau_h(F^(g)), stored by their
/// values at right coset representatives as block-diagonal matrices on
/// C^m (x) V. G acts by right translation (g.F^)(x) = F^(xg), implemented by
/// the block-monomial unitaries `translation`.
struct HatAlgebra {
  CosetSpace right_cosets;
  Subgroup h;
  GroupAction field_action;  // tau on F
  MatrixStarAlgebra algebra;
  GroupAction translation;

  int cosets() const { return right_cosets.size(); }
  int n() const { return field_action.rep.dim(); }
  Matrix embed(const std::vector<Matrix>& values_at_reps) const;
  Matrix block(const Matrix& x, int coset) const;
  /// F^(g) for an arbitrary group element.
  Matrix value(const Matrix& x, int g) const;
  /// max over h, g of |F^(hg) - tau_h(F^(g))|.
  double equivariance_residual(const Matrix& x) const;
};

HatAlgebra build_hat_algebra(const FieldSystem& fs);

class EquivarianceError : public InputError {
 public:
  EquivarianceError(const std::string& what, int coset) : InputError(what), coset(coset) {}
  int coset;
};

/// Induced space of H-equivariant psi: G -> V, psi(gh) = U(h^-1) psi(g),
/// stored by values at left coset representatives. Carries pi^ of F^, the
/// translation representation U^ and pi-bar of F.
struct InducedRep {
  CosetSpace left_cosets;
  Subgroup h;
  GroupAction field_action;
  UnitaryRep u_hat;

  int n() const { return field_action.rep.dim(); }
  int dim() const { return u_hat.dim(); }
  /// (pi^(F^) psi)(g) = F^(g^-1) psi(g).
  Matrix pi_hat(const HatAlgebra& hat, const Matrix& x) const;
  /// (pi-bar(F) psi)(g) = tau_{g^-1}(F) psi(g).
  Matrix pi_bar(const Matrix& f) const;
  /// Validates equivariance of a full function (one vector per element).
  Vector from_function(const std::vector<Vector>& psi, double tolerance = 1e-12) const;
  std::vector<Vector> to_function(const Vector& psi) const;
  /// Evaluates pi^(x) psi pointwise on all of G, checks the result is again
  /// equivariant and agrees with the coset realization.
  double compatibility_residual(const HatAlgebra& hat, const Matrix& x, const Vector& psi) const;
  /// Same for pi-bar.
  double bar_compatibility_residual(const Matrix& f, const Vector& psi) const;
  /// |pi-bar(tau_g F) - U^(g) pi-bar(F) U^(g)*|.
  double covariance_residual(const Matrix& f, int g) const;
};

InducedRep induced_rep(const FieldSystem& fs);

struct SymmetryStatus {
  bool broken = false;
  int centre_dim = 0;
  std::vector<int> acting;                      // members of K, parent indices
  std::vector<std::vector<int>> permutations;   // per acting element: point -> point
  std::vector<std::vector<int>> orbits;
};

/// Minimal central projections of A (= A'' here) and how each k in K permutes
/// them. Throws ConsistencyError when tau_k does not map central projections
/// to central projections.
SymmetryStatus symmetry_status(const Centre& c, const GroupAction& act, const Subgroup& k,
                               double tolerance = tol::algebra);
SymmetryStatus symmetry_status(const MatrixStarAlgebra& a, const GroupAction& act,
                               const Subgroup& k, std::uint64_t seed = kDefaultSeed);

struct PhaseComponent {
  std::vector<int> points;
  bool unbroken;  // a single fixed point
};

std::vector<PhaseComponent> phase_diagram(const SymmetryStatus& status);

/// Coset index carried by each centre projection of the hat algebra
/// (the block it is supported on), -1 if it straddles blocks.
std::vector<int> centre_point_cosets(const HatAlgebra& hat, const std::vector<Matrix>& projections);

}  // namespace ssb
