#include "ssb/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ssb {

namespace {

void check_square(const Matrix& m, const std::string& what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw InputError(what + " must be a non-empty square matrix");
}

// Block-diagonal operator on C^m (x) C^n from its pointer blocks.
Matrix assemble(const std::vector<Matrix>& blocks) { return direct_sum(blocks); }

std::vector<Matrix> pinch(const Matrix& x, int n, int m) {
  std::vector<Matrix> out;
  out.reserve(m);
  for (int a = 0; a < m; ++a) out.push_back(x.block(a * n, a * n, n, n));
  return out;
}

double block_scale(const Matrix& x) { return std::max(1.0, x.cwiseAbs().maxCoeff()); }

}  // namespace

Observable Observable::from_matrix(const Matrix& a, double rel_tol) {
  check_square(a, "observable");
  double scale = block_scale(a);
  if (!is_hermitian(a, tol::algebra * scale)) throw InputError("observable is not self-adjoint");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a));
  if (es.info() != Eigen::Success) throw ConsistencyError("eigen-decomposition failed", 0.0);
  const RealVector& ev = es.eigenvalues();
  const Matrix& vecs = es.eigenvectors();

  Observable o;
  o.matrix = a;
  for (auto [begin, end] : cluster_sorted(ev, rel_tol * scale)) {
    Matrix cols = vecs.middleCols(begin, end - begin);
    o.spectrum.push_back(ev.segment(begin, end - begin).mean());
    o.projections.push_back(cols * cols.adjoint());
  }
  double r = o.reconstruction_residual();
  if (r > tol::state * scale) throw ConsistencyError("spectral reconstruction failed", r);
  return o;
}

int Observable::index_of(double value, double rel_tol) const {
  double scale = std::max(1.0, std::abs(value));
  for (int i = 0; i < outcomes(); ++i)
    if (std::abs(spectrum[i] - value) <= rel_tol * scale) return i;
  std::ostringstream os;
  os << "value " << value << " is not in the spectrum";
  throw InputError(os.str());
}

double Observable::reconstruction_residual() const {
  Matrix sum = Matrix::Zero(matrix.rows(), matrix.cols());
  Matrix unit = Matrix::Zero(matrix.rows(), matrix.cols());
  for (int i = 0; i < outcomes(); ++i) {
    sum += spectrum[i] * projections[i];
    unit += projections[i];
  }
  return std::max(max_abs(sum - matrix), max_abs(unit - Matrix::Identity(dim(), dim())));
}

Matrix functional_calculus(const Observable& a, const std::vector<cd>& values) {
  if (static_cast<int>(values.size()) != a.outcomes())
    throw InputError("functional calculus needs one value per spectral point");
  Matrix out = Matrix::Zero(a.dim(), a.dim());
  for (int i = 0; i < a.outcomes(); ++i) out += values[i] * a.projections[i];
  return out;
}

Matrix functional_calculus(const Observable& a, const std::function<cd(double)>& f) {
  std::vector<cd> values;
  for (double x : a.spectrum) values.push_back(f(x));
  return functional_calculus(a, values);
}

std::vector<double> outcome_distribution(const Observable& a, const StateFunctional& omega) {
  if (omega.density().rows() != a.dim()) throw InputError("state and observable dimensions differ");
  std::vector<double> p;
  for (const Matrix& e : a.projections) p.push_back(omega(e).real());
  return p;
}

Pom Pom::from_effects(std::vector<Matrix> effects, double tolerance) {
  if (effects.empty()) throw InputError("POM needs at least one effect");
  Eigen::Index n = effects.front().rows();
  Matrix sum = Matrix::Zero(n, n);
  for (const Matrix& e : effects) {
    if (e.rows() != n || e.cols() != n) throw InputError("POM effects have mismatched dimensions");
    if (!is_hermitian(e, tolerance)) throw InputError("POM effect is not self-adjoint");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(e), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tolerance) throw InputError("POM effect is not positive");
    sum += e;
  }
  if (max_abs(sum - Matrix::Identity(n, n)) > tolerance)
    throw InputError("POM effects do not sum to the identity");
  return Pom{std::move(effects)};
}

std::vector<double> Pom::distribution(const StateFunctional& omega) const {
  std::vector<double> p;
  for (const Matrix& e : effects) p.push_back(omega(e).real());
  return p;
}

CompositeElement tensor_indicator(const Matrix& b, const std::vector<int>& delta, int m) {
  CompositeElement x(m, Matrix::Zero(b.rows(), b.cols()));
  for (int k : delta) {
    if (k < 0 || k >= m) throw InputError("outcome index out of range");
    x[k] = b;
  }
  return x;
}

cd evaluate(const CompositeState& state, const CompositeElement& x) {
  if (state.size() != x.size()) throw InputError("composite state and element sizes differ");
  cd sum = 0.0;
  for (std::size_t a = 0; a < state.size(); ++a) sum += (state[a] * x[a]).trace();
  return sum;
}

CompositeState product_state(const StateFunctional& omega, const std::vector<double>& mu) {
  double total = 0.0;
  for (double w : mu) {
    if (w < -tol::state) throw InputError("pointer measure has a negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > tol::state) throw InputError("pointer measure does not sum to 1");
  CompositeState s;
  for (double w : mu) s.push_back(w * omega.density());
  return s;
}

CouplingDynamics CouplingDynamics::identity(int n, int m) {
  return CouplingDynamics{n, m, {Matrix::Identity(n * m, n * m)}, "identity"};
}

CouplingDynamics CouplingDynamics::canonical(const Observable& a) {
  int n = a.dim(), m = a.outcomes();
  Matrix u = Matrix::Zero(n * m, n * m);
  // S^i maps pointer j to j + i; the block (j + i, j) of U^ is E_a with idx(a) = i.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) u.block(((j + i) % m) * n, j * n, n, n) += a.projections[i];
  return CouplingDynamics{n, m, {u}, "canonical"};
}

CouplingDynamics CouplingDynamics::from_unitary(const Matrix& u, int n, int m) {
  if (u.rows() != n * m || u.cols() != n * m)
    throw InputError("coupling unitary must act on pointer (x) system");
  Matrix id = Matrix::Identity(n * m, n * m);
  if (max_abs(u.adjoint() * u - id) > tol::state)
    throw InputError("coupling matrix is not unitary");
  return CouplingDynamics{n, m, {u}, "unitary"};
}

CouplingDynamics CouplingDynamics::from_kraus(std::vector<Matrix> kraus, int n, int m) {
  if (kraus.empty()) throw InputError("coupling needs at least one Kraus operator");
  for (const Matrix& k : kraus)
    if (k.rows() != n * m || k.cols() != n * m)
      throw InputError("Kraus operators must act on pointer (x) system");
  CouplingDynamics d{n, m, std::move(kraus), "cp_kraus"};
  double r = d.unitality_residual();
  if (r > tol::state) throw InputError("Kraus operators do not define a unital map");
  return d;
}

CompositeElement CouplingDynamics::heisenberg(const CompositeElement& x) const {
  if (static_cast<int>(x.size()) != pointer_dim) throw InputError("composite element has wrong size");
  Matrix full = assemble(x);
  Matrix out = Matrix::Zero(full.rows(), full.cols());
  for (const Matrix& k : kraus) out += k.adjoint() * full * k;
  return pinch(out, system_dim, pointer_dim);
}

CompositeState CouplingDynamics::schrodinger(const CompositeState& s) const {
  if (static_cast<int>(s.size()) != pointer_dim) throw InputError("composite state has wrong size");
  Matrix full = assemble(s);
  Matrix out = Matrix::Zero(full.rows(), full.cols());
  for (const Matrix& k : kraus) out += k * full * k.adjoint();
  return pinch(out, system_dim, pointer_dim);
}

double CouplingDynamics::unitality_residual() const {
  int d = system_dim * pointer_dim;
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& k : kraus) sum += k.adjoint() * k;
  return max_abs(sum - Matrix::Identity(d, d));
}

std::optional<double> CouplingDynamics::choi_min_eigenvalue() const {
  int n = system_dim, m = pointer_dim;
  // Domain: block-diagonal matrix units e_a (x) E_ij; image: pinched blocks.
  long dom = static_cast<long>(m) * n;
  long size = dom * dom;
  if (size > 1024) return std::nullopt;
  // Choi = sum_{a,i,j} |a i><a j| (x) tau(e_a (x) E_ij), indexed (a,i) x (image).
  Matrix choi = Matrix::Zero(size, size);
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        CompositeElement x(m, Matrix::Zero(n, n));
        x[a](i, j) = 1.0;
        Matrix image = assemble(heisenberg(x));
        choi.block((a * n + i) * dom, (a * n + j) * dom, dom, dom) = image;
      }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(choi), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Instrument::Instrument(Observable a, CouplingDynamics d, std::vector<double> mu)
    : observable(std::move(a)), dynamics(std::move(d)), mu0(std::move(mu)) {
  if (dynamics.system_dim != observable.dim())
    throw InputError("coupling and observable act on different systems");
  if (static_cast<int>(mu0.size()) != dynamics.pointer_dim)
    throw InputError("pointer measure size does not match the pointer");
  double total = 0.0;
  for (double w : mu0) {
    if (w < -tol::state) throw InputError("pointer measure has a negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > tol::state) throw InputError("pointer measure does not sum to 1");
}

Matrix Instrument::reduce(const CompositeElement& x) const {
  CompositeElement t = dynamics.heisenberg(x);
  Matrix out = Matrix::Zero(observable.dim(), observable.dim());
  for (std::size_t a = 0; a < t.size(); ++a) out += mu0[a] * t[a];
  return out;
}

Matrix Instrument::operation(const Matrix& b, const std::vector<int>& delta) const {
  return reduce(tensor_indicator(b, delta, dynamics.pointer_dim));
}

Matrix Instrument::density(const std::vector<int>& delta, const StateFunctional& omega) const {
  CompositeState out = dynamics.schrodinger(product_state(omega, mu0));
  Matrix rho = Matrix::Zero(observable.dim(), observable.dim());
  for (int k : delta) {
    if (k < 0 || k >= dynamics.pointer_dim) throw InputError("outcome index out of range");
    rho += out[k];
  }
  return rho;
}

cd Instrument::j(const std::vector<int>& delta, const StateFunctional& omega, const Matrix& b) const {
  return omega(operation(b, delta));
}

SchemeCheck measurement_scheme_check(const Instrument& instrument, double tolerance) {
  const Observable& a = instrument.observable;
  if (instrument.dynamics.pointer_dim != a.outcomes())
    throw InputError("pointer must carry one value per spectral point");
  Matrix id = Matrix::Identity(a.dim(), a.dim());
  double residual = 0.0;
  for (int k = 0; k < a.outcomes(); ++k)
    residual = std::max(residual, max_abs(a.projections[k] - instrument.operation(id, {k})));
  return SchemeCheck{residual <= tolerance, residual};
}

StateFunctional posterior_state(const Instrument& instrument, const StateFunctional& omega, int a) {
  Matrix rho = instrument.density({a}, omega);
  double p = rho.trace().real();
  if (p <= tol::state) throw InputError("outcome has zero probability; posterior undefined");
  return StateFunctional(rho / p, 1e-8);
}

CompositeDecomposition central_decompose_composite(const CompositeState& state) {
  CompositeDecomposition d;
  double total = 0.0;
  for (const Matrix& rho : state) {
    double w = rho.trace().real();
    d.mu.push_back(w);
    total += w;
    if (w > tol::state)
      d.family.emplace_back(StateFunctional(rho / w, 1e-8));
    else
      d.family.emplace_back(std::nullopt);
  }
  if (std::abs(total - 1.0) > 1e-8) throw InputError("composite state is not normalized");
  for (std::size_t a = 0; a < state.size(); ++a) {
    Matrix back = d.family[a] ? Matrix(d.mu[a] * d.family[a]->density())
                              : Matrix(Matrix::Zero(state[a].rows(), state[a].cols()));
    d.reconstruction_residual = std::max(d.reconstruction_residual, max_abs(back - state[a]));
  }
  return d;
}

CqChannel::CqChannel(const Observable& a, StateFamily f) : family(std::move(f)) {
  if (static_cast<int>(family.size()) != a.outcomes())
    throw InputError("state family needs one state per spectral point");
  for (const StateFunctional& s : family)
    if (s.density().rows() != a.dim()) throw InputError("state family dimension mismatch");
}

std::vector<cd> CqChannel::apply(const CompositeElement& x) const {
  if (x.size() != family.size()) throw InputError("composite element has wrong size");
  std::vector<cd> out;
  for (std::size_t a = 0; a < family.size(); ++a) out.push_back(family[a](x[a]));
  return out;
}

CompositeState CqChannel::dual(const std::vector<double>& rho) const {
  if (rho.size() != family.size()) throw InputError("distribution has wrong size");
  CompositeState s;
  for (std::size_t a = 0; a < family.size(); ++a) s.push_back(rho[a] * family[a].density());
  return s;
}

Matrix CqChannel::system_density(const std::vector<double>& rho) const {
  CompositeState s = dual(rho);
  Matrix sum = Matrix::Zero(s.front().rows(), s.front().cols());
  for (const Matrix& b : s) sum += b;
  return sum;
}

Reachability reachability_check(const StateFunctional& target, const StateFunctional& initial,
                                const std::vector<double>& mu0,
                                const std::vector<CouplingDynamics>& steps, const CqChannel& channel,
                                double tolerance) {
  if (target.density().rows() != initial.density().rows())
    throw InputError("target and initial state dimensions differ");
  Reachability r;
  CompositeState state = product_state(initial, mu0);
  for (std::size_t t = 0;; ++t) {
    CompositeDecomposition d = central_decompose_composite(state);
    double dist = trace_norm_hermitian(channel.system_density(d.mu) - target.density());
    r.trajectory.push_back(ReachabilityStep{static_cast<int>(t), d.mu, dist});
    if (t == steps.size()) break;
    if (steps[t].pointer_dim != static_cast<int>(state.size()))
      throw InputError("dynamics step has wrong pointer size");
    state = steps[t].schrodinger(state);
  }
  r.reached = r.trajectory.back().distance < tolerance;
  return r;
}

RepeatableCheck repeatable_family_check(const Observable& a, const StateFamily& family,
                                        double tolerance) {
  if (static_cast<int>(family.size()) != a.outcomes())
    throw InputError("state family needs one state per spectral point");
  RepeatableCheck c{std::vector<bool>(family.size(), true), 0.0};
  for (int i = 0; i < a.outcomes(); ++i)
    for (int j = 0; j < a.outcomes(); ++j) {
      double dev = std::abs(family[i](a.projections[j]) - cd(i == j ? 1.0 : 0.0));
      c.max_deviation = std::max(c.max_deviation, dev);
      if (dev > tolerance) c.passed[i] = false;
    }
  return c;
}

double qc_channel_compare(const Observable& a, const CqChannel& channel) {
  int m = a.outcomes();
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    std::vector<double> rho(m, 0.0);
    rho[i] = 1.0;
    CompositeState image = channel.dual(rho);
    std::vector<double> recovered = central_decompose_composite(image).mu;
    for (int b = 0; b < m; ++b) {
      // (iota o A^)*(image) evaluated on delta_b is image(E_b (x) 1).
      cd via_observable = evaluate(image, CompositeElement(m, a.projections[b]));
      worst = std::max(worst, std::abs(via_observable - cd(recovered[b])));
    }
  }
  return worst;
}

}  // namespace ssb
