#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace dqw {

using Rational = mpq_class;
using Integer = mpz_class;

/// Builds num/den in lowest terms.
Rational make_rational(long num, long den = 1);

std::string to_string(const Rational& q);

/// An element re + im*i of the Gaussian rationals Q(i).
///
/// GMP keeps both parts in lowest terms with a positive denominator, so
/// equality is structural.
class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(long n) : re_(n) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re) : re_(std::move(re)) {}  // NOLINT
  Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Gaussian i() { return {Rational(0), Rational(1)}; }
  /// i^k for any integer k.
  static Gaussian i_pow(long k);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Gaussian conj() const { return {re_, -im_}; }
  /// Throws std::domain_error for zero.
  Gaussian inverse() const;

  Gaussian operator-() const { return {-re_, -im_}; }
  Gaussian& operator+=(const Gaussian& o);
  Gaussian& operator-=(const Gaussian& o);
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }
  /// Arbitrary but total order, used for canonical sorting only.
  friend bool operator<(const Gaussian& a, const Gaussian& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  /// Parseable text form: `3/4`, `-i`, `2/5*i`, `(1/2+1/2*i)`.
  std::string str() const;
  /// True when str() needs no parentheses as a left factor of a product.
  bool is_atomic() const { return sgn(re_) == 0 || sgn(im_) == 0; }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// 1/k! as a rational.
Rational inverse_factorial(int k);

}  // namespace dqw
