#include "qspa/complex_matrix.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "qspa/error.hpp"

namespace qspa {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << "shape mismatch in " << op << ": " << a.rows() << "x" << a.cols()
        << " vs " << b.rows() << "x" << b.cols();
    throw DimensionError(msg.str());
  }
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& other) const {
  require_same_shape(*this, other, "operator+");
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] = entries_[i] + other.entries_[i];
  return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
  require_same_shape(*this, other, "operator-");
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] = entries_[i] - other.entries_[i];
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& other) const {
  if (cols_ != other.rows_) {
    std::ostringstream msg;
    msg << "shape mismatch in operator*: " << rows_ << "x" << cols_ << " times "
        << other.rows_ << "x" << other.cols_;
    throw DimensionError(msg.str());
  }
  ComplexMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        out(i, j) += aik * other(k, j);
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::scaled(Complex factor) const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] = factor * entries_[i];
  return out;
}

ComplexMatrix operator*(Complex factor, const ComplexMatrix& m) {
  return m.scaled(factor);
}

ComplexMatrix ComplexMatrix::dagger() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transposed() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conjugated() const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] = std::conj(entries_[i]);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace of a non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
  if (!is_square()) throw DimensionError("hermiticity of a non-square matrix");
  double s = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      s += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  for (const Complex& z : entries_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexMatrix ComplexMatrix::traceless_part() const {
  if (!is_square()) throw DimensionError("traceless part of a non-square matrix");
  ComplexMatrix out = *this;
  const Complex shift = trace() / static_cast<double>(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out(i, i) -= shift;
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Complex aij = a(ia, ja);
      if (aij == 0.0) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          out(ia * b.rows() + ib, ja * b.cols() + jb) = aij * b(ib, jb);
    }
  return out;
}

ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors) {
  if (factors.empty()) return ComplexMatrix::identity(1);
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

ComplexMatrix kron_power(const ComplexMatrix& a, std::size_t n) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (std::size_t i = 0; i < n; ++i) out = kron(out, a);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
  if (!m.is_square()) throw DimensionError("partial trace of a non-square matrix");
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  if (total != m.rows()) {
    std::ostringstream msg;
    msg << "partial_trace dimension mismatch: subsystem dims multiply to "
        << total << " but matrix is " << m.rows() << "x" << m.cols();
    throw DimensionError(msg.str());
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) {
      std::ostringstream msg;
      msg << "partial_trace keep index " << k << " out of range (have "
          << dims.size() << " subsystems)";
      throw DimensionError(msg.str());
    }
    kept[k] = true;
  }

  // Strides of each subsystem in the composite index (subsystem 0 slowest).
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t s = dims.size(); s-- > 1;)
    stride[s - 1] = stride[s] * dims[s];

  std::vector<std::size_t> keep_idx, trace_idx;
  for (std::size_t s = 0; s < dims.size(); ++s)
    (kept[s] ? keep_idx : trace_idx).push_back(s);

  std::size_t dim_keep = 1, dim_trace = 1;
  for (std::size_t s : keep_idx) dim_keep *= dims[s];
  for (std::size_t s : trace_idx) dim_trace *= dims[s];

  auto compose = [&](std::size_t packed, const std::vector<std::size_t>& subs) {
    std::size_t offset = 0;
    for (std::size_t t = subs.size(); t-- > 0;) {
      const std::size_t s = subs[t];
      offset += (packed % dims[s]) * stride[s];
      packed /= dims[s];
    }
    return offset;
  };

  ComplexMatrix out(dim_keep, dim_keep);
  for (std::size_t r = 0; r < dim_keep; ++r) {
    const std::size_t row_base = compose(r, keep_idx);
    for (std::size_t c = 0; c < dim_keep; ++c) {
      const std::size_t col_base = compose(c, keep_idx);
      Complex acc = 0.0;
      for (std::size_t t = 0; t < dim_trace; ++t) {
        const std::size_t off = compose(t, trace_idx);
        acc += m(row_base + off, col_base + off);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

}  // namespace qspa
