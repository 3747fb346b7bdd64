#include "bellorbit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bellorbit {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// CVector

CVector CVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::out_of_range("CVector::basis: index out of range");
  CVector v(dim);
  v[index] = 1.0;
  return v;
}

CVector CVector::normalized(const CVector& v) {
  const double n = v.norm();
  if (n == 0.0) throw std::invalid_argument("CVector::normalized: zero vector");
  CVector out = v;
  out *= 1.0 / n;
  return out;
}

CVector CVector::state(std::vector<Complex> entries) {
  CVector v(std::move(entries));
  if (v.dim() == 0) throw std::invalid_argument("state vector must have positive dimension");
  if (std::abs(v.norm_squared() - 1.0) > kStateNormTol) {
    std::ostringstream msg;
    msg << "state vector is not normalized: |v|^2 = " << v.norm_squared();
    throw std::invalid_argument(msg.str());
  }
  return v;
}

double CVector::norm_squared() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return s;
}

double CVector::norm() const { return std::sqrt(norm_squared()); }

CVector& CVector::operator+=(const CVector& other) {
  require_same_dim(dim(), other.dim(), "CVector::operator+=");
  for (std::size_t i = 0; i < dim(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

CVector& CVector::operator-=(const CVector& other) {
  require_same_dim(dim(), other.dim(), "CVector::operator-=");
  for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

CVector& CVector::operator*=(Complex s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

CVector operator+(CVector a, const CVector& b) { return a += b; }
CVector operator-(CVector a, const CVector& b) { return a -= b; }
CVector operator*(Complex s, CVector v) { return v *= s; }

Complex inner(const CVector& a, const CVector& b) {
  require_same_dim(a.dim(), b.dim(), "inner");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double max_abs_diff(const CVector& a, const CVector& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double fidelity(const CVector& a, const CVector& b) {
  return std::norm(inner(a, b)) / (a.norm_squared() * b.norm_squared());
}

// ---------------------------------------------------------------------------
// CMatrix

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("CMatrix: ragged initializer");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::outer(const CVector& a, const CVector& b) {
  CMatrix m(a.dim(), b.dim());
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < b.dim(); ++c) m(r, c) = a[r] * std::conj(b[c]);
  return m;
}

CMatrix CMatrix::from_columns(std::span<const CVector> columns) {
  if (columns.empty()) throw std::invalid_argument("CMatrix::from_columns: no columns");
  const std::size_t rows = columns.front().dim();
  CMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    require_same_dim(rows, columns[c].dim(), "CMatrix::from_columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

CVector CMatrix::column(std::size_t c) const {
  if (c >= cols_) throw std::out_of_range("CMatrix::column: index out of range");
  CVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Complex CMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  require_same_dim(rows_, other.rows_, "CMatrix::operator+= (rows)");
  require_same_dim(cols_, other.cols_, "CMatrix::operator+= (cols)");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  require_same_dim(rows_, other.rows_, "CMatrix::operator-= (rows)");
  require_same_dim(cols_, other.cols_, "CMatrix::operator-= (cols)");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(Complex s, CMatrix m) { return m *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a.cols(), b.rows(), "matrix product");
  CMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

CVector operator*(const CMatrix& m, const CVector& v) {
  require_same_dim(m.cols(), v.dim(), "matrix-vector product");
  CVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Complex s = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a.rows(), b.rows(), "max_abs_diff (rows)");
  require_same_dim(a.cols(), b.cols(), "max_abs_diff (cols)");
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

double unitarity_residual(const CMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("unitarity_residual: matrix is not square");
  return max_abs_diff(m.adjoint() * m, CMatrix::identity(m.rows()));
}

double hermiticity_residual(const CMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermiticity_residual: matrix is not square");
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
  return worst;
}

bool is_unitary(const CMatrix& m, double tol) {
  return m.is_square() && unitarity_residual(m) <= tol;
}

bool is_hermitian(const CMatrix& m, double tol) {
  return m.is_square() && hermiticity_residual(m) <= tol;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.dim() * b.dim());
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t k = 0; k < b.dim(); ++k) out[j * b.dim() + k] = a[j] * b[k];
  return out;
}

CMatrix mat_power(const CMatrix& m, unsigned k) {
  if (!m.is_square()) throw std::invalid_argument("mat_power: matrix is not square");
  CMatrix result = CMatrix::identity(m.rows());
  CMatrix base = m;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// One unitary rotation G in the (p, q) plane, applied as A <- G^dagger A G
// and V <- V G. The phase of a_pq is first absorbed into column q so the 2x2
// block becomes real symmetric, then a real Jacobi rotation annihilates it.
void rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase_conj = std::conj(apq / mag);

  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex gpp = c;
  const Complex gpq = s;
  const Complex gqp = -s * phase_conj;
  const Complex gqq = c * phase_conj;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * gpp + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * gqq;
  }
}

}  // namespace

std::vector<EigenResult> hermitian_eigs(const CMatrix& h, JacobiOptions options) {
  if (!h.is_square() || h.rows() == 0)
    throw std::invalid_argument("hermitian_eigs: matrix must be square and non-empty");
  if (h.rows() > kMaxEigenDim) {
    std::ostringstream msg;
    msg << "hermitian_eigs: dimension " << h.rows() << " exceeds supported maximum " << kMaxEigenDim;
    throw std::invalid_argument(msg.str());
  }
  const double asym = hermiticity_residual(h);
  if (asym > kHermitianTol) {
    std::ostringstream msg;
    msg << "hermitian_eigs: matrix is not Hermitian (max |h - h^dagger| = " << asym << ")";
    throw NotHermitianError(msg.str());
  }

  const std::size_t n = h.rows();
  CMatrix a = h;
  CMatrix v = CMatrix::identity(n);

  bool converged = false;
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= options.off_diagonal_tol) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }
  if (!converged && off_diagonal_norm(a) > options.off_diagonal_tol) {
    throw std::runtime_error("hermitian_eigs: Jacobi iteration did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  std::vector<EigenResult> out;
  out.reserve(n);
  for (std::size_t i : order) out.push_back({a(i, i).real(), v.column(i)});
  return out;
}

}  // namespace bellorbit
