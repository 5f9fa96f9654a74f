#pragma once

// Small dense linear algebra for the spin-chain code.
//
// Everything physical in this library is real in the sigma^z product basis,
// so the kernel is real-valued. The one exception is the quantum-group block
// Hamiltonian at pure-phase q, which carries imaginary boundary fields; it
// gets the minimal ComplexMatrix below (construction and mat-vec only).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace xxzqrg {

/// Largest matrix dimension accepted by eigh_symmetric and kron.
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 12;

/// Jacobi stops once the off-diagonal Frobenius norm drops below this times
/// the Frobenius norm of the input.
inline constexpr double kJacobiRelativeTolerance = 1e-14;
inline constexpr int kJacobiMaxSweeps = 100;

/// Two eigenvalues are "the same level" when they differ by at most this
/// times max(1, |lambda|).
inline constexpr double kDegeneracyTolerance = 1e-9;

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> entries);
  /// Columns given as equally sized vectors.
  static Matrix from_columns(const std::vector<std::vector<double>>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  std::vector<double> column(std::size_t j) const;

  Matrix transpose() const;
  double trace() const;
  double max_abs() const;
  double frobenius_norm() const;
  /// Maximum absolute row sum.
  double inf_norm() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double factor);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(Matrix lhs, double factor);
Matrix operator*(double factor, Matrix rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);

std::vector<double> operator*(const Matrix& m, std::span<const double> v);

/// Largest entrywise |a - b|. Shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// |A[i,j] - A[j,i]| <= tolerance * max(1, max|A|) for all i, j.
bool is_symmetric(const Matrix& a, double tolerance = 1e-12);

/// a * b^T.
Matrix outer(std::span<const double> a, std::span<const double> b);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // column k pairs with eigenvalues[k]
};

/// Cyclic Jacobi diagonalization of a real symmetric matrix.
///
/// Throws InvalidArgument for non-square, asymmetric or oversized input and
/// NotConverged (carrying the remaining off-diagonal norm) if the sweep cap
/// is reached.
EigenDecomposition eigh_symmetric(const Matrix& a);

/// Tensor product with `a` as the most significant factor. Each resulting
/// dimension must stay within kMaxDimension.
Matrix kron(const Matrix& a, const Matrix& b);

/// Symmetric square root of a PSD matrix.
///
/// Eigenvalues in [-1e-10, 0) are clamped to zero; anything more negative
/// raises NotPositiveSemidefinite. Eigenvalues at or below `floor` are also
/// treated as exact zeros, which keeps roundoff-level eigenvalues of
/// rank-deficient input from leaking sqrt(eps)-sized noise into the result.
Matrix sqrt_psd(const Matrix& a, double floor = 0.0);

/// Single-site operators in the (up, down) basis.
namespace pauli {
Matrix identity();
Matrix x();
Matrix z();
/// i*sigma^y = [[0, 1], [-1, 0]], the real stand-in for sigma^y.
Matrix iy();
/// sigma^y (x) sigma^y, which is real: -(i sigma^y) (x) (i sigma^y).
Matrix yy();
}  // namespace pauli

/// Embeds a single-site operator at `site` (1-based, site 1 leftmost) in an
/// n-site product space.
Matrix embed_site_operator(const Matrix& op, int site, int n_sites);

/// Dense row-major complex matrix; only what the quantum-group block needs.
class ComplexMatrix {
 public:
  using value_type = std::complex<double>;

  ComplexMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  value_type operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<value_type> apply(std::span<const value_type> v) const;

  double max_abs_imag() const;
  /// Real part; throws InvalidArgument if any imaginary part exceeds
  /// `tolerance`.
  Matrix real_part(double tolerance = 1e-14) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<value_type> data_;
};

}  // namespace xxzqrg
