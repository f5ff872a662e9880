#pragma once

#include <string>
#include <vector>

#include "dqw/scalar.hpp"

namespace dqw {

/// Small dense row-major matrix over Q. Sized for Poisson bivectors and
/// linear changes of variables, not for numerical work.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RatMatrix identity(int n);
  static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  /// 2x2 block sum of [[0,1],[-1,0]] of size 2n.
  static RatMatrix standard_symplectic(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[r * cols_ + c]; }

  RatMatrix transpose() const;
  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;
  bool is_antisymmetric() const;
  bool is_integral() const;
  Rational determinant() const;
  /// Throws std::domain_error when singular.
  RatMatrix inverse() const;

  RatMatrix& operator+=(const RatMatrix& o);
  friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator*(const Rational& s, RatMatrix a);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<std::vector<Rational>> to_rows() const;
  /// `[[0,1],[-1,0]]`
  std::string str() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace dqw
