#include "dqw/matrix.hpp"

#include <stdexcept>

namespace dqw {

RatMatrix RatMatrix::identity(int n) {
  RatMatrix m(n, n);
  for (int j = 0; j < n; ++j) m(j, j) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return {};
  RatMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int r = 0; r < m.rows_; ++r) {
    if (static_cast<int>(rows[r].size()) != m.cols_)
      throw std::invalid_argument("ragged matrix rows");
    for (int c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RatMatrix RatMatrix::standard_symplectic(int n) {
  RatMatrix m(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    m(2 * j, 2 * j + 1) = 1;
    m(2 * j + 1, 2 * j) = -1;
  }
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool RatMatrix::is_zero() const {
  for (const auto& q : data_)
    if (sgn(q) != 0) return false;
  return true;
}

bool RatMatrix::is_antisymmetric() const {
  if (!is_square()) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if ((*this)(r, c) != -(*this)(c, r)) return false;
  return true;
}

bool RatMatrix::is_integral() const {
  for (const auto& q : data_)
    if (q.get_den() != 1) return false;
  return true;
}

Rational RatMatrix::determinant() const {
  if (!is_square()) throw std::invalid_argument("determinant of non-square matrix");
  RatMatrix a = *this;
  Rational det = 1;
  const int n = rows_;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (sgn(a(r, col)) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (int r = col + 1; r < n; ++r) {
      Rational f = a(r, col) / a(col, col);
      if (sgn(f) == 0) continue;
      for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

RatMatrix RatMatrix::inverse() const {
  if (!is_square()) throw std::domain_error("inverse of non-square matrix");
  const int n = rows_;
  RatMatrix a = *this;
  RatMatrix inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (sgn(a(r, col)) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw std::domain_error("singular matrix");
    for (int c = 0; c < n; ++c) {
      std::swap(a(pivot, c), a(col, c));
      std::swap(inv(pivot, c), inv(col, c));
    }
    Rational p = a(col, col);
    for (int c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || sgn(a(r, col)) == 0) continue;
      Rational f = a(r, col);
      for (int c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
  for (std::size_t j = 0; j < data_.size(); ++j) data_[j] += o.data_[j];
  return *this;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  return a + Rational(-1) * b;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("shape mismatch");
  RatMatrix out(a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r)
    for (int k = 0; k < a.cols_; ++k) {
      if (sgn(a(r, k)) == 0) continue;
      for (int c = 0; c < b.cols_; ++c) out(r, c) += a(r, k) * b(k, c);
    }
  return out;
}

RatMatrix operator*(const Rational& s, RatMatrix a) {
  for (auto& q : a.data_) q *= s;
  return a;
}

std::vector<std::vector<Rational>> RatMatrix::to_rows() const {
  std::vector<std::vector<Rational>> rows(rows_, std::vector<Rational>(cols_));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) rows[r][c] = (*this)(r, c);
  return rows;
}

std::string RatMatrix::str() const {
  std::string out = "[";
  for (int r = 0; r < rows_; ++r) {
    out += r ? ",[" : "[";
    for (int c = 0; c < cols_; ++c) out += (c ? "," : "") + to_string((*this)(r, c));
    out += "]";
  }
  return out + "]";
}

}  // namespace dqw
