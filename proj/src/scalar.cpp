#include "dqw/scalar.hpp"

#include <stdexcept>

namespace dqw {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Gaussian Gaussian::i_pow(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1};
    case 1: return i();
    case 2: return {-1};
    default: return -i();
  }
}

Gaussian Gaussian::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Rational norm = re_ * re_ + im_ * im_;
  return {re_ / norm, -im_ / norm};
}

Gaussian& Gaussian::operator+=(const Gaussian& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Gaussian& Gaussian::operator/=(const Gaussian& o) { return *this *= o.inverse(); }

namespace {

// `q*i` with unit magnitudes collapsed: i, -i, 2*i, 2/5*i.
std::string imaginary_str(const Rational& q) {
  if (q == 1) return "i";
  if (q == -1) return "-i";
  return to_string(q) + "*i";
}

}  // namespace

std::string Gaussian::str() const {
  if (sgn(im_) == 0) return to_string(re_);
  if (sgn(re_) == 0) return imaginary_str(im_);
  std::string out = "(" + to_string(re_);
  if (sgn(im_) > 0) out += "+";
  return out + imaginary_str(im_) + ")";
}

Rational inverse_factorial(int k) {
  Integer f = 1;
  for (int j = 2; j <= k; ++j) f *= j;
  return Rational(Integer(1), f);
}

}  // namespace dqw
