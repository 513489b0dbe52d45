#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ssb {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Numerical tolerances shared across modules.
namespace tol {
inline constexpr double rep = 1e-9;        // homomorphism / unitarity residuals
inline constexpr double rounding = 1e-6;   // integer rounding of multiplicities
inline constexpr double algebra = 1e-9;    // span membership, kernel cutoff
inline constexpr double state = 1e-10;     // positivity / normalization of states
inline constexpr double spectrum = 1e-9;   // relative eigenvalue clustering
}  // namespace tol

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an internal numerical consistency check fails (non-integer
// multiplicity, clustering failure, ...).
struct ConsistencyError : Error {
  ConsistencyError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual(residual) {}
  double residual;
};

struct InputError : Error {
  using Error::Error;
};

// Deterministic generator. Uniform and normal draws are computed from the raw
// 64-bit stream so results do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();  // [0, 1)
  double normal();
  cd complex_normal();
  Matrix random_hermitian(Eigen::Index n);
  Matrix random_matrix(Eigen::Index rows, Eigen::Index cols);
  std::uint64_t next();

 private:
  std::uint64_t state_[4];
};

Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Eigen::Index n);

// Orthonormal basis of the column span, rank decided by relative cutoff.
Matrix orthonormal_columns(const Matrix& columns, double cutoff = tol::algebra);

// Orthonormal basis of ker(m): singular values <= cutoff * max(1, sigma_max).
Matrix null_space(const Matrix& m, double cutoff = tol::algebra);

Eigen::Index numerical_rank(const Matrix& m, double cutoff = tol::algebra);

// Groups sorted eigenvalues into clusters separated by more than `gap`.
// Returns index ranges [begin, end) into the sorted order.
std::vector<std::pair<Eigen::Index, Eigen::Index>> cluster_sorted(const RealVector& sorted_values,
                                                                  double gap);

double max_abs(const Matrix& m);
Matrix hermitian_part(const Matrix& m);
Matrix antihermitian_part(const Matrix& m);  // (m - m*)/(2i), itself Hermitian
bool is_hermitian(const Matrix& m, double tolerance);
double trace_norm_hermitian(const Matrix& m);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix direct_sum(const std::vector<Matrix>& blocks);

}  // namespace ssb
