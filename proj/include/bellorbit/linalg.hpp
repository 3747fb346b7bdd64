#pragma once

// Small dense complex linear algebra: vectors, matrices, Kronecker products
// and a cyclic Jacobi eigensolver for Hermitian matrices.
//
// Tensor index convention used everywhere in the library: the two-party
// basis state |j>|k> (Alice j, Bob k) of C^d (x) C^d sits at flat index
// j*d + k. kron() realizes exactly this convention.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace bellorbit {

using Complex = std::complex<double>;

inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kStateNormTol = 1e-12;

class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim) : entries_(dim) {}
  explicit CVector(std::vector<Complex> entries) : entries_(std::move(entries)) {}
  CVector(std::initializer_list<Complex> entries) : entries_(entries) {}

  /// Unit vector e_index of dimension dim.
  static CVector basis(std::size_t dim, std::size_t index);

  /// Normalized copy; throws std::invalid_argument on a zero vector.
  static CVector normalized(const CVector& v);

  /// Validates a quantum state: ||v||^2 = 1 within kStateNormTol.
  static CVector state(std::vector<Complex> entries);

  std::size_t dim() const { return entries_.size(); }
  Complex& operator[](std::size_t i) { return entries_[i]; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Complex> entries() const { return entries_; }

  double norm_squared() const;
  double norm() const;

  CVector& operator+=(const CVector& other);
  CVector& operator-=(const CVector& other);
  CVector& operator*=(Complex s);

 private:
  std::vector<Complex> entries_;
};

CVector operator+(CVector a, const CVector& b);
CVector operator-(CVector a, const CVector& b);
CVector operator*(Complex s, CVector v);

/// <a|b>, conjugate-linear in a.
Complex inner(const CVector& a, const CVector& b);

/// Max-norm of a - b.
double max_abs_diff(const CVector& a, const CVector& b);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const CVector& a, const CVector& b);

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  /// Row-major initializer; every row must have the same length.
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const Complex> diag);
  /// |a><b|
  static CMatrix outer(const CVector& a, const CVector& b);
  /// Matrix whose columns are the given vectors (all of equal dimension).
  static CMatrix from_columns(std::span<const CVector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  CVector column(std::size_t c) const;
  Complex trace() const;
  CMatrix adjoint() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex s, CMatrix m);
CVector operator*(const CMatrix& m, const CVector& v);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// ||M^dagger M - I||_max
double unitarity_residual(const CMatrix& m);

/// ||M - M^dagger||_max
double hermiticity_residual(const CMatrix& m);

bool is_unitary(const CMatrix& m, double tol = kUnitaryTol);
bool is_hermitian(const CMatrix& m, double tol = kHermitianTol);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

/// m^k by repeated squaring; m^0 = I.
CMatrix mat_power(const CMatrix& m, unsigned k);

struct EigenResult {
  double value;
  CVector vector;
};

class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct JacobiOptions {
  double off_diagonal_tol = 1e-12;
  int max_sweeps = 100;
};

/// Full spectral decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Eigenvalues are sorted in descending order; eigenvectors are
/// orthonormal.
std::vector<EigenResult> hermitian_eigs(const CMatrix& h, JacobiOptions options = {});

inline constexpr std::size_t kMaxEigenDim = 256;

}  // namespace bellorbit
