#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ssb/star_algebra.hpp"

namespace ssb {

/// Self-adjoint matrix with its spectral resolution. Spectral points are
/// ascending; eigenvalues closer than rel_tol * max(1, |A|) are merged.
struct Observable {
  Matrix matrix;
  std::vector<double> spectrum;
  std::vector<Matrix> projections;

  static Observable from_matrix(const Matrix& a, double rel_tol = tol::spectrum);
  int outcomes() const { return static_cast<int>(spectrum.size()); }
  int dim() const { return static_cast<int>(matrix.rows()); }
  /// Spectral point within rel_tol of `value`; throws InputError otherwise.
  int index_of(double value, double rel_tol = 1e-9) const;
  double reconstruction_residual() const;
};

Matrix functional_calculus(const Observable& a, const std::vector<cd>& values);
Matrix functional_calculus(const Observable& a, const std::function<cd(double)>& f);

/// p(a) = omega(E_a).
std::vector<double> outcome_distribution(const Observable& a, const StateFunctional& omega);

/// Positive operators summing to the identity.
struct Pom {
  std::vector<Matrix> effects;
  static Pom from_effects(std::vector<Matrix> effects, double tolerance = tol::state);
  static Pom from_observable(const Observable& a) { return from_effects(a.projections); }
  std::vector<double> distribution(const StateFunctional& omega) const;
};

/// Element of A (x) C(Spec A): one system operator per pointer value.
using CompositeElement = std::vector<Matrix>;
/// State on the composite algebra: one unnormalized density per pointer value.
using CompositeState = std::vector<Matrix>;

CompositeElement tensor_indicator(const Matrix& b, const std::vector<int>& delta, int m);
cd evaluate(const CompositeState& state, const CompositeElement& x);
CompositeState product_state(const StateFunctional& omega, const std::vector<double>& mu);

/// Unital CP map on the composite algebra in Heisenberg form:
/// tau(B^) = pinch(sum_j K_j* B^ K_j), with Kraus operators on C^m (x) C^n
/// (pointer index major) and pinching onto the pointer-diagonal blocks.
struct CouplingDynamics {
  int system_dim = 0;
  int pointer_dim = 0;
  std::vector<Matrix> kraus;
  std::string kind;

  static CouplingDynamics identity(int n, int m);
  /// U^ = sum_a S^{idx(a)} (x) E_a with S the cyclic pointer shift.
  static CouplingDynamics canonical(const Observable& a);
  static CouplingDynamics from_unitary(const Matrix& u, int n, int m);
  static CouplingDynamics from_kraus(std::vector<Matrix> kraus, int n, int m);

  CompositeElement heisenberg(const CompositeElement& x) const;
  CompositeState schrodinger(const CompositeState& s) const;
  /// |sum K* K - 1|.
  double unitality_residual() const;
  /// Smallest eigenvalue of the Choi matrix of the map restricted to the
  /// composite algebra, or nullopt when the matrix would be too large.
  std::optional<double> choi_min_eigenvalue() const;
};

struct Instrument {
  Observable observable;
  CouplingDynamics dynamics;
  std::vector<double> mu0;

  Instrument(Observable a, CouplingDynamics d, std::vector<double> mu0);
  /// I(B^) = sum_a mu0(a) tau(B^)(a).
  Matrix reduce(const CompositeElement& x) const;
  /// I(B (x) chi_Delta); Delta holds spectral indices.
  Matrix operation(const Matrix& b, const std::vector<int>& delta) const;
  /// Unnormalized density of J(Delta|omega).
  Matrix density(const std::vector<int>& delta, const StateFunctional& omega) const;
  cd j(const std::vector<int>& delta, const StateFunctional& omega, const Matrix& b) const;
};

struct SchemeCheck {
  bool passed;
  double residual;
};

/// max over single-point Delta of |E_Delta - I(1 (x) chi_Delta)|, i.e. the
/// scheme identity evaluated on every matrix-unit functional.
SchemeCheck measurement_scheme_check(const Instrument& instrument, double tolerance = 1e-10);

StateFunctional posterior_state(const Instrument& instrument, const StateFunctional& omega, int a);

struct CompositeDecomposition {
  std::vector<double> mu;
  std::vector<std::optional<StateFunctional>> family;
  double reconstruction_residual = 0.0;
};

CompositeDecomposition central_decompose_composite(const CompositeState& state);

using StateFamily = std::vector<StateFunctional>;

/// C(B^)(a) = omega_a(B^(a)) and C*(rho) = sum_a rho(a) omega_a (x) delta_a.
struct CqChannel {
  StateFamily family;

  CqChannel(const Observable& a, StateFamily family);
  std::vector<cd> apply(const CompositeElement& x) const;
  CompositeState dual(const std::vector<double>& rho) const;
  /// iota* o C*: the system marginal of C*(rho).
  Matrix system_density(const std::vector<double>& rho) const;
};

struct ReachabilityStep {
  int t;
  std::vector<double> mu;
  double distance;
};

struct Reachability {
  std::vector<ReachabilityStep> trajectory;
  bool reached;
};

/// Runs (omega_in (x) mu0) through the cumulative dynamics and compares
/// (iota* o C*)(mu_t) with the target in trace norm.
Reachability reachability_check(const StateFunctional& target, const StateFunctional& initial,
                                const std::vector<double>& mu0,
                                const std::vector<CouplingDynamics>& steps, const CqChannel& channel,
                                double tolerance = 1e-8);

struct RepeatableCheck {
  std::vector<bool> passed;  // per outcome
  double max_deviation;      // max |omega_a(E_b) - delta_ab|
};

RepeatableCheck repeatable_family_check(const Observable& a, const StateFamily& family,
                                        double tolerance = 1e-10);

/// max over outcome pairs of the difference between (iota o A^)* and the
/// inverse of C* on the image of C*.
double qc_channel_compare(const Observable& a, const CqChannel& channel);

}  // namespace ssb
