#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qspa {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Tensor-product convention throughout
/// the repo: the leftmost factor is subsystem 0 and owns the
/// slowest-varying basis index.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  const std::vector<Complex>& entries() const { return entries_; }
  std::vector<Complex>& entries() { return entries_; }

  ComplexMatrix operator+(const ComplexMatrix& other) const;
  ComplexMatrix operator-(const ComplexMatrix& other) const;
  ComplexMatrix operator*(const ComplexMatrix& other) const;
  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);

  ComplexMatrix scaled(Complex factor) const;
  ComplexMatrix dagger() const;
  ComplexMatrix transposed() const;
  ComplexMatrix conjugated() const;

  Complex trace() const;
  double frobenius_norm() const;
  /// ||m - m^dagger||_F; zero for exactly hermitian matrices.
  double hermiticity_defect() const;
  bool all_finite() const;

  /// X - (Tr X / n) I, the generalized-Bloch-vector part.
  ComplexMatrix traceless_part() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Complex> entries_;
};

ComplexMatrix operator*(Complex factor, const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors);
/// n-fold tensor power of a.
ComplexMatrix kron_power(const ComplexMatrix& a, std::size_t n);

/// Partial trace over the subsystems NOT listed in `keep`. `dims` are the
/// per-subsystem dimensions (product must equal the matrix dimension);
/// kept subsystems stay in their original relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

}  // namespace qspa
