#pragma once

#include "ncperm/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace ncperm {

/// Dense rectangular matrix of rationals. Arithmetic between matrices of
/// incompatible shapes throws std::invalid_argument; nothing broadcasts.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RatMatrix identity(std::size_t n);
  static RatMatrix zero(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;

  const Rational& at(std::size_t r, std::size_t c) const;
  Rational& at(std::size_t r, std::size_t c);
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  RatMatrix& operator+=(const RatMatrix& other);
  RatMatrix& operator-=(const RatMatrix& other);
  RatMatrix& operator*=(const Rational& c);

  friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
  friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
  friend RatMatrix operator*(RatMatrix a, const Rational& c) { return a *= c; }
  friend RatMatrix operator*(const Rational& c, RatMatrix a) { return a *= c; }
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Exact rank over Q. Each row is scaled to integers, then reduced with
/// fraction-free (Bareiss) elimination.
std::size_t mat_rank(const RatMatrix& m);

/// Kronecker product: block (i, j) of the result is a(i, j) * b.
RatMatrix tensor(const RatMatrix& a, const RatMatrix& b);

/// Inverse of a square non-singular matrix (Gauss-Jordan over Q).
/// Throws std::domain_error when the matrix is singular.
RatMatrix inverse(const RatMatrix& m);

RatMatrix power(const RatMatrix& m, unsigned e);

}  // namespace ncperm
