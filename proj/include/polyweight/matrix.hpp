#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

#include "polyweight/errors.hpp"

namespace polyweight {

using complex = std::complex<double>;

// Largest total Hilbert-space dimension the dense routines accept.
inline constexpr std::size_t kDimensionCap = 256;

// Dense row-major complex matrix. Small (dim <= 256), value semantics.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) {
      throw dimension_error("matrix dimensions must be positive");
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  const std::vector<complex>& entries() const { return entries_; }
  std::vector<complex>& entries() { return entries_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = std::conj(entries_[k]);
    return m;
  }

  complex trace() const {
    if (rows_ != cols_) throw dimension_error("trace of non-square matrix");
    complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const complex& z : entries_) s += std::norm(z);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const complex& z : entries_) m = std::max(m, std::abs(z));
    return m;
  }

  bool is_hermitian(double tol = 1e-10) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
  }

  ComplexMatrix operator+(const ComplexMatrix& o) const {
    require_same_shape(o);
    ComplexMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = entries_[k] + o.entries_[k];
    return m;
  }

  ComplexMatrix operator-(const ComplexMatrix& o) const {
    require_same_shape(o);
    ComplexMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = entries_[k] - o.entries_[k];
    return m;
  }

  ComplexMatrix operator*(const ComplexMatrix& o) const {
    if (cols_ != o.rows_) throw dimension_error("matrix product shape mismatch");
    ComplexMatrix m(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const complex a = (*this)(i, k);
        if (a == complex(0.0)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) m(i, j) += a * o(k, j);
      }
    }
    return m;
  }

  ComplexMatrix operator*(complex s) const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = entries_[k] * s;
    return m;
  }

 private:
  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_error("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex> entries_;
};

inline ComplexMatrix operator*(complex s, const ComplexMatrix& m) { return m * s; }

// Ordered local dimensions of the subsystems a vector/matrix is defined over.
struct SubsystemDims {
  std::vector<std::size_t> dims;

  std::size_t total() const {
    std::size_t t = 1;
    for (std::size_t d : dims) {
      if (d == 0) throw dimension_error("subsystem dimension must be positive");
      t *= d;
    }
    return t;
  }

  std::size_t size() const { return dims.size(); }
};

inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kDimensionCap || cols > kDimensionCap) {
    throw dimension_error("tensor product exceeds dimension cap");
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const complex z = a(ia, ja);
      if (z == complex(0.0)) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          m(ia * b.rows() + ib, ja * b.cols() + jb) = z * b(ib, jb);
    }
  return m;
}

namespace detail {

// Row-major strides: stride of subsystem i is the product of the dimensions to its right.
inline std::vector<std::size_t> strides(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

}  // namespace detail

// Trace out every subsystem not listed in `keep`; kept subsystems stay in their
// original order.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemDims& dims,
                                   const std::vector<std::size_t>& keep) {
  if (rho.rows() != rho.cols()) throw dimension_error("partial trace needs a square matrix");
  if (dims.total() != rho.rows()) throw dimension_error("subsystem dims inconsistent with matrix");
  if (keep.empty()) throw contract_error("keep set must be nonempty");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw dimension_error("keep index out of range");
    if (kept[k]) throw contract_error("duplicate keep index");
    kept[k] = true;
  }

  std::vector<std::size_t> keep_idx, trace_idx;
  for (std::size_t i = 0; i < dims.size(); ++i) (kept[i] ? keep_idx : trace_idx).push_back(i);

  const auto stride = detail::strides(dims.dims);
  std::size_t dim_keep = 1, dim_trace = 1;
  for (std::size_t i : keep_idx) dim_keep *= dims.dims[i];
  for (std::size_t i : trace_idx) dim_trace *= dims.dims[i];

  // Full-space offset of a flat index over the listed subsystems.
  auto offset = [&](const std::vector<std::size_t>& subs, std::size_t flat) {
    std::size_t off = 0;
    for (std::size_t i = subs.size(); i-- > 0;) {
      const std::size_t d = dims.dims[subs[i]];
      off += (flat % d) * stride[subs[i]];
      flat /= d;
    }
    return off;
  };

  ComplexMatrix out(dim_keep, dim_keep);
  for (std::size_t r = 0; r < dim_keep; ++r) {
    const std::size_t ro = offset(keep_idx, r);
    for (std::size_t c = 0; c < dim_keep; ++c) {
      const std::size_t co = offset(keep_idx, c);
      complex sum = 0.0;
      for (std::size_t t = 0; t < dim_trace; ++t) {
        const std::size_t to = offset(trace_idx, t);
        sum += rho(ro + to, co + to);
      }
      out(r, c) = sum;
    }
  }
  return out;
}

struct EigenSystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

// Cyclic Jacobi diagonalization of a Hermitian matrix. Off-diagonal Frobenius
// norm below 1e-14 (relative to the matrix scale) terminates; 100 sweeps cap.
inline EigenSystem hermitian_eigensystem(const ComplexMatrix& h) {
  if (!h.is_hermitian(1e-10)) throw contract_error("matrix is not Hermitian within 1e-10");
  const std::size_t n = h.rows();
  ComplexMatrix a = h;
  // Symmetrize away the sub-tolerance asymmetry so the rotations stay exact.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = complex(a(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const complex m = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = m;
      a(j, i) = std::conj(m);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, a.frobenius_norm());

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  bool converged = n < 2;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    if (off_norm() < 1e-14 * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex apq = a(p, q);
        const double abs_apq = std::abs(apq);
        if (abs_apq < 1e-300) continue;
        const complex phase = apq / abs_apq;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * abs_apq);
        const double sgn = tau >= 0.0 ? 1.0 : -1.0;
        const double t = sgn / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Unitary J with J(p,p)=c*phase, J(p,q)=s*phase, J(q,p)=-s, J(q,q)=c,
        // chosen so (J^dag A J)(p,q) = 0.
        const complex jpp = c * phase, jpq = s * phase;
        for (std::size_t k = 0; k < n; ++k) {  // A <- A J, V <- V J
          const complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp - akq * s;
          a(k, q) = akp * jpq + akq * c;
          const complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp - vkq * s;
          v(k, q) = vkp * jpq + vkq * c;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- J^dag A
          const complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk - s * aqk;
          a(q, k) = std::conj(jpq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = complex(a(p, p).real(), 0.0);
        a(q, q) = complex(a(q, q).real(), 0.0);
      }
    }
  }
  if (!converged && off_norm() >= 1e-14 * scale) {
    throw numerical_error("Jacobi eigensolver failed to converge in 100 sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  EigenSystem es;
  es.values.resize(n);
  es.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
  }
  return es;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  return hermitian_eigensystem(h).values;
}

// Hermitian PSD square root via eigendecomposition. Eigenvalues in
// [-1e-10, 0) are clamped to zero; anything lower is a contract violation.
inline ComplexMatrix hermitian_sqrt(const ComplexMatrix& h) {
  EigenSystem es = hermitian_eigensystem(h);
  const std::size_t n = h.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double lam = es.values[k];
    if (lam < -1e-10) throw contract_error("matrix is not PSD: eigenvalue below -1e-10");
    lam = std::max(lam, 0.0);
    const double r = std::sqrt(lam);
    if (r == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const complex vi = es.vectors(i, k) * r;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * std::conj(es.vectors(j, k));
    }
  }
  return out;
}

// Two-qubit spin flip: rho_tilde = (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y).
inline ComplexMatrix spin_flip(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw dimension_error("spin flip needs a 4x4 matrix");
  ComplexMatrix yy(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy * rho.conjugate() * yy;
}

}  // namespace polyweight
