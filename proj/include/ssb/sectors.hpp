#pragma once

#include <string>
#include <vector>

#include "ssb/field_system.hpp"

namespace ssb {

struct FiberPair {
  int eta;
  int gamma;
  int multiplicity;  // dim Hom_H(eta, gamma|H)
  Matrix projection;  // joint (eta under H) and (gamma under G) isotypic projection on V
};

struct SectorPoint {
  int coset;  // right coset index in H\G
  int fiber;  // index into SectorSpectrum::fiber
};

/// (H\G) x {(eta, gamma) : gamma|H contains eta}, coset-major.
struct SectorSpectrum {
  int cosets = 0;
  std::vector<int> coset_representatives;
  std::vector<FiberPair> fiber;
  std::vector<SectorPoint> points;
  std::vector<Matrix> densities;              // per point: U(r)* P U(r) / Tr P
  std::vector<int> gluing_gamma;              // gamma of each gluing group
  std::vector<std::vector<int>> gluing;       // fiber indices sharing that gamma
  int fibered_centre_dim = 0;
  int expected_fibered_centre_dim = 0;
  std::vector<std::string> warnings;

  int point_index(int coset, int fiber_index) const {
    return coset * static_cast<int>(fiber.size()) + fiber_index;
  }
};

SectorSpectrum sector_spectrum(const FieldSystem& fs);

struct SectorFiber {
  int eta;
  std::vector<int> representation_theoretic;  // {gamma : m(eta, gamma) >= 1}
  std::vector<int> operator_algebraic;        // centre labels of A on the eta-isotypic subspace
  std::vector<int> realized;                  // representation_theoretic restricted to gamma in V
  bool agree() const { return representation_theoretic == operator_algebraic; }
  bool agree_on_realized() const { return realized == operator_algebraic; }
};

/// Throws InputError when eta does not occur in V restricted to H.
SectorFiber sector_fiber(const FieldSystem& fs, int eta);

/// Psi(B) at every spectrum point: normalized trace of tau_r(B) compressed to
/// the joint (eta, gamma) subspace. Throws InputError unless B lies in A_d.
std::vector<cd> psi_channel(const FieldSystem& fs, const SectorSpectrum& s, const Matrix& b);

class GluingError : public InputError {
 public:
  GluingError(const std::string& what, int gamma) : InputError(what), gamma(gamma) {}
  int gamma;
};

enum class GluingPolicy { Record, Enforce };

struct DualState {
  StateFunctional state;
  std::vector<int> unglued_gammas;  // gamma groups whose components differ
};

/// Psi*(mu) = sum_p mu(p) omega_p. Under GluingPolicy::Enforce, weights that
/// differ within a gamma group (at the same coset) raise GluingError.
DualState psi_dual(const FieldSystem& fs, const SectorSpectrum& s, const std::vector<double>& mu,
                   GluingPolicy policy = GluingPolicy::Record);

struct Readout {
  std::vector<int> support;
  std::vector<double> weights;   // minimum-norm solution on the support
  std::vector<double> marginal;  // per coset
  int rank = 0;
  bool full_rank = false;
  bool marginal_determined = false;  // coset marginal is the same for every solution
  double residual = 0.0;
  // A_d is H-invariant, so cosets in one H-orbit (a double coset HxH) carry
  // identical Psi values; this coarser marginal is what A_d can resolve.
  std::vector<std::vector<int>> double_cosets;
  std::vector<double> double_coset_marginal;
  bool double_coset_marginal_determined = false;
};

/// Solves Psi*(mu) = omega on a spanning set of A_d for mu supported on
/// `support` (all points when empty) and returns the H\G marginal.
Readout order_parameter_readout(const FieldSystem& fs, const SectorSpectrum& s,
                                const StateFunctional& omega, std::vector<int> support = {});

struct SensitivityRow {
  int fiber;
  double invariant_spread;  // max over a basis of A and coset pairs
  double dual_spread;       // max over a basis of A_d and coset pairs
  int witness;              // A_d basis index attaining dual_spread, -1 if none
};

std::vector<SensitivityRow> psi_sensitivity(const FieldSystem& fs, const SectorSpectrum& s);

struct RelationCheck {
  std::string name;
  bool passed;
  double residual;
  std::string detail;
};

/// Evaluation at the identity coset identifies F^'s right-translation fixed
/// points with A_d; dim Z(F^) = |H\G|; fixing/stabilizing groups of A_d are H
/// and N_G(H); Frobenius equality on every fiber pair.
std::vector<RelationCheck> verify_relations(const FieldSystem& fs, const HatAlgebra& hat,
                                            const Centre& hat_centre, const SectorSpectrum& s);

}  // namespace ssb
