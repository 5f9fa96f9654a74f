#include "xxzqrg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "xxzqrg/error.hpp"

namespace xxzqrg {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << what << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows()
        << "x" << b.cols();
    throw InvalidArgument(msg.str());
  }
}

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (rows == 0 || cols == 0) throw InvalidArgument("Matrix: dimensions must be >= 1");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  if (rows_ == 0 || cols_ == 0) throw InvalidArgument("Matrix: dimensions must be >= 1");
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidArgument("Matrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::from_columns(const std::vector<std::vector<double>>& columns) {
  if (columns.empty() || columns.front().empty()) {
    throw InvalidArgument("Matrix::from_columns: empty input");
  }
  Matrix m(columns.front().size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != m.rows()) {
      throw InvalidArgument("Matrix::from_columns: columns differ in length");
    }
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = columns[j][i];
  }
  return m;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

double Matrix::trace() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) sum += (*this)(i, i);
  return sum;
}

double Matrix::max_abs() const {
  double best = 0.0;
  for (double v : data_) best = std::max(best, std::abs(v));
  return best;
}

double Matrix::frobenius_norm() const {
  double sum = 0.0;
  for (double v : data_) sum += v * v;
  return std::sqrt(sum);
}

double Matrix::inf_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) row += std::abs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double factor) {
  for (double& v : data_) v *= factor;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(Matrix lhs, double factor) { return lhs *= factor; }
Matrix operator*(double factor, Matrix rhs) { return rhs *= factor; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw InvalidArgument("matrix product: inner dimensions differ");
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

std::vector<double> operator*(const Matrix& m, std::span<const double> v) {
  if (m.cols() != v.size()) throw InvalidArgument("matrix-vector product: dimension mismatch");
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) sum += m(i, j) * v[j];
    out[i] = sum;
  }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double best = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    best = std::max(best, std::abs(a.data()[k] - b.data()[k]));
  }
  return best;
}

bool is_symmetric(const Matrix& a, double tolerance) {
  if (!a.is_square()) return false;
  const double scale = tolerance * std::max(1.0, a.max_abs());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - a(j, i)) > scale) return false;
    }
  }
  return true;
}

Matrix outer(std::span<const double> a, std::span<const double> b) {
  Matrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
  }
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("dot: length mismatch");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

EigenDecomposition eigh_symmetric(const Matrix& input) {
  if (!input.is_square()) {
    std::ostringstream msg;
    msg << "eigh_symmetric: matrix is " << input.rows() << "x" << input.cols()
        << ", expected square";
    throw InvalidArgument(msg.str());
  }
  if (input.rows() > kMaxDimension) {
    throw InvalidArgument("eigh_symmetric: dimension exceeds 4096");
  }
  if (!is_symmetric(input)) throw InvalidArgument("eigh_symmetric: matrix is not symmetric");

  const std::size_t n = input.rows();
  Matrix a = input;
  // Symmetrize exactly so both triangles evolve identically.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double mean = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = mean;
      a(j, i) = mean;
    }
  }
  Matrix v = Matrix::identity(n);
  const double threshold = kJacobiRelativeTolerance * a.frobenius_norm();

  double off = off_diagonal_norm(a);
  int sweep = 0;
  while (off > threshold) {
    if (sweep == kJacobiMaxSweeps) {
      std::ostringstream msg;
      msg << "eigh_symmetric: no convergence after " << kJacobiMaxSweeps
          << " sweeps, off-diagonal norm " << off;
      throw NotConverged(msg.str(), off);
    }
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Rotation angle chosen so the (p, q) entry vanishes; the smaller root
        // keeps |t| <= 1.
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    off = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenDecomposition result{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    result.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) result.eigenvectors(i, k) = v(i, order[k]);
  }
  return result;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kMaxDimension || cols > kMaxDimension) {
    std::ostringstream msg;
    msg << "kron: result " << rows << "x" << cols << " exceeds the 4096 dimension cap";
    throw InvalidArgument(msg.str());
  }
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

Matrix sqrt_psd(const Matrix& a, double floor) {
  auto eig = eigh_symmetric(a);
  const double min_eigenvalue = eig.eigenvalues.front();
  if (min_eigenvalue < -1e-10) {
    std::ostringstream msg;
    msg << "sqrt_psd: eigenvalue " << min_eigenvalue << " is below -1e-10";
    throw NotPositiveSemidefinite(msg.str(), min_eigenvalue);
  }
  const std::size_t n = a.rows();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues[k];
    if (lambda <= floor || lambda <= 0.0) continue;
    const double root = std::sqrt(lambda);
    for (std::size_t i = 0; i < n; ++i) {
      const double vik = eig.eigenvectors(i, k) * root;
      if (vik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * eig.eigenvectors(j, k);
    }
  }
  // Restore exact symmetry.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double mean = 0.5 * (out(i, j) + out(j, i));
      out(i, j) = mean;
      out(j, i) = mean;
    }
  }
  return out;
}

namespace pauli {
Matrix identity() { return Matrix::identity(2); }
Matrix x() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }
Matrix z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }
Matrix iy() { return Matrix{{0.0, 1.0}, {-1.0, 0.0}}; }
Matrix yy() { return -1.0 * kron(iy(), iy()); }
}  // namespace pauli

Matrix embed_site_operator(const Matrix& op, int site, int n_sites) {
  if (op.rows() != 2 || op.cols() != 2) {
    throw InvalidArgument("embed_site_operator: operator must be 2x2");
  }
  if (n_sites < 1 || site < 1 || site > n_sites) {
    throw InvalidArgument("embed_site_operator: site out of range");
  }
  Matrix out = site == 1 ? op : pauli::identity();
  for (int s = 2; s <= n_sites; ++s) out = kron(out, s == site ? op : pauli::identity());
  return out;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw InvalidArgument("ComplexMatrix: dimensions must be >= 1");
}

std::vector<ComplexMatrix::value_type> ComplexMatrix::apply(std::span<const value_type> v) const {
  if (v.size() != cols_) throw InvalidArgument("ComplexMatrix::apply: dimension mismatch");
  std::vector<value_type> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    value_type sum{};
    for (std::size_t j = 0; j < cols_; ++j) sum += (*this)(i, j) * v[j];
    out[i] = sum;
  }
  return out;
}

double ComplexMatrix::max_abs_imag() const {
  double best = 0.0;
  for (const auto& z : data_) best = std::max(best, std::abs(z.imag()));
  return best;
}

Matrix ComplexMatrix::real_part(double tolerance) const {
  if (max_abs_imag() > tolerance) {
    throw InvalidArgument("ComplexMatrix::real_part: matrix has non-negligible imaginary part");
  }
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j).real();
  }
  return out;
}

}  // namespace xxzqrg
