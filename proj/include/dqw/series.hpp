#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "dqw/element.hpp"
#include "dqw/generic.hpp"

namespace dqw {

/// Truncated power series a_0 + a_1 L + ... + a_N L^N in the formal parameter.
template <class E>
class Series {
 public:
  Series() = default;
  Series(Model model, int order) : model_(model), coeffs_(order + 1, E(model)) {}
  /// a placed at L^0.
  static Series constant(const E& a, int order) {
    Series s(a.model(), order);
    s.coeffs_[0] = a;
    return s;
  }
  /// a placed at L^power.
  static Series monomial(const E& a, int power, int order) {
    Series s(a.model(), order);
    if (power <= order) s.coeffs_[power] = a;
    return s;
  }

  const Model& model() const { return model_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<E>& coeffs() const { return coeffs_; }
  E& operator[](int r) { return coeffs_.at(r); }
  const E& operator[](int r) const { return coeffs_.at(r); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }
  /// Lowest order with a nonzero coefficient, or -1.
  int valuation() const {
    for (int r = 0; r <= order(); ++r)
      if (!coeffs_[r].is_zero()) return r;
    return -1;
  }

  /// Same coefficients cut or zero-padded to a new order.
  Series resized(int order) const {
    Series s(model_, order);
    for (int r = 0; r <= std::min(order, this->order()); ++r) s.coeffs_[r] = coeffs_[r];
    return s;
  }
  /// Multiplication by L^k, k may be negative when the low orders vanish.
  Series shifted(int k) const {
    Series s(model_, order());
    for (int r = 0; r <= order(); ++r) {
      const int t = r + k;
      if (t >= 0 && t <= order()) s.coeffs_[t] = coeffs_[r];
    }
    return s;
  }

  Series operator-() const {
    Series s = *this;
    for (auto& c : s.coeffs_) c = -c;
    return s;
  }
  Series& operator+=(const Series& o) {
    check(o);
    for (int r = 0; r <= order(); ++r) coeffs_[r] += o.coeffs_[r];
    return *this;
  }
  Series& operator-=(const Series& o) {
    check(o);
    for (int r = 0; r <= order(); ++r) coeffs_[r] -= o.coeffs_[r];
    return *this;
  }
  Series& operator*=(const Gaussian& c) {
    for (auto& a : coeffs_) a *= c;
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(Series a, const Gaussian& c) { return a *= c; }
  friend Series operator*(const Gaussian& c, Series a) { return a *= c; }
  friend bool operator==(const Series& a, const Series& b) {
    return a.model_ == b.model_ && a.coeffs_ == b.coeffs_;
  }

  /// `E[1,0] + (i/2)*L + ...`, parseable by the expression grammar.
  std::string str() const {
    std::string out;
    for (int r = 0; r <= order(); ++r) {
      if (coeffs_[r].is_zero()) continue;
      if (!out.empty()) out += " + ";
      std::string c = coeffs_[r].str();
      if (r == 0) {
        out += c;
        continue;
      }
      out += "(" + c + ")*L";
      if (r > 1) out += "^" + std::to_string(r);
    }
    return out.empty() ? "0" : out;
  }

 private:
  void check(const Series& o) const {
    require_same_model(model_, o.model_);
    if (order() != o.order())
      throw DimensionMismatch("series orders " + std::to_string(order()) + " and " +
                              std::to_string(o.order()));
  }

  Model model_;
  std::vector<E> coeffs_;
};

using FormalSeries = Series<Element>;
using GenericSeries = Series<Generic>;

/// Embeds a concrete series into generic arithmetic.
GenericSeries lift(const FormalSeries& s);

}  // namespace dqw
