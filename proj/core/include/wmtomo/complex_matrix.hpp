#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "wmtomo/errors.hpp"

namespace wmtomo::linalg {

// Dense square complex matrix, row-major storage. Immutable value semantics:
// operations return new matrices. Entries are dimensionless amplitudes.
class ComplexMatrix {
 public:
  using value_type = std::complex<double>;

  ComplexMatrix() : dim_(0) {}
  explicit ComplexMatrix(std::size_t dim)
      : dim_(dim), entries_(dim * dim, value_type(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t dim);
  // Throws Error on ragged or empty rows or nonfinite entries.
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<value_type>> rows);

  std::size_t dim() const { return dim_; }

  value_type& operator()(std::size_t r, std::size_t c) {
    return entries_[r * dim_ + c];
  }
  const value_type& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * dim_ + c];
  }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(value_type scalar);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  value_type trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;

 private:
  std::size_t dim_;
  std::vector<value_type> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, ComplexMatrix::value_type s);
ComplexMatrix operator*(ComplexMatrix::value_type s, ComplexMatrix a);

// Kronecker product; the left factor is the slow index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// (M + M') / 2 with M' the adjoint. Applied explicitly by callers, never
// silently inside other operations.
ComplexMatrix hermitize(const ComplexMatrix& m);

// Frobenius norm of a - b. Throws DimensionMismatch.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// min over a global phase e^{i t} of ||e^{i t} a - b||_F. Evaluated by
// subtracting at the optimal phase; the norm-identity closed form loses all
// precision when the distance is tiny.
double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace wmtomo::linalg
