#include "ssb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ssb {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  for (auto& s : state_) s = splitmix64(seed);
}

// xoshiro256**
std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cd Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

Matrix Rng::random_matrix(Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  return m;
}

Matrix Rng::random_hermitian(Eigen::Index n) {
  const Matrix m = random_matrix(n, n);
  return (m + m.adjoint()) * 0.5;
}

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, Eigen::Index n) {
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

Matrix orthonormal_columns(const Matrix& columns, double cutoff) {
  if (columns.cols() == 0) return Matrix(columns.rows(), 0);
  Eigen::ColPivHouseholderQR<Matrix> qr(columns);
  const double pivot = qr.maxPivot();
  if (pivot == 0.0) return Matrix(columns.rows(), 0);
  qr.setThreshold(std::min(1.0, cutoff * std::max(1.0, pivot) / pivot));
  const Eigen::Index rank = qr.rank();
  Matrix q = qr.householderQ() * Matrix::Identity(columns.rows(), rank);
  return q;
}

Matrix null_space(const Matrix& m, double cutoff) {
  if (m.rows() == 0 || max_abs(m) == 0.0) return Matrix::Identity(m.cols(), m.cols());
  // BDCSVD in Eigen 3.4.0 can return a non-orthonormal V on structured
  // sparse systems; Jacobi on the square QR factor is reliable.
  Matrix reduced = m;
  if (m.rows() > m.cols()) {
    Eigen::HouseholderQR<Matrix> qr(m);
    reduced = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
  }
  Eigen::JacobiSVD<Matrix> svd(reduced, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double threshold = cutoff * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > threshold) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

Eigen::Index numerical_rank(const Matrix& m, double cutoff) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const RealVector& s = svd.singularValues();
  const double threshold = cutoff * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > threshold) ++rank;
  return rank;
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> cluster_sorted(const RealVector& values,
                                                                  double gap) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;
  Eigen::Index begin = 0;
  for (Eigen::Index i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values(i) - values(i - 1) > gap) {
      clusters.emplace_back(begin, i);
      begin = i;
    }
  }
  return clusters;
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

Matrix antihermitian_part(const Matrix& m) { return (m - m.adjoint()) * cd(0.0, -0.5); }

bool is_hermitian(const Matrix& m, double tolerance) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tolerance;
}

double trace_norm_hermitian(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix direct_sum(const std::vector<Matrix>& blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out = Matrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

}  // namespace ssb
