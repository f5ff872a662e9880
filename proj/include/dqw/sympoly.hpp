#pragma once

#include <map>
#include <string>
#include <vector>

#include "dqw/scalar.hpp"

namespace dqw {

using Monomial = std::vector<int>;

/// Sparse commutative polynomial over Q(i) in a fixed number of variables.
///
/// Used for symbols of differential operators and as the coefficient ring
/// of generic (symbolic-exponent) elements.
class SymPoly {
 public:
  using Terms = std::map<Monomial, Gaussian>;

  SymPoly() = default;
  explicit SymPoly(int nvars) : nvars_(nvars) {}
  static SymPoly constant(int nvars, const Gaussian& c);
  static SymPoly variable(int nvars, int j, const Gaussian& c = 1);

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  void add_term(const Monomial& m, const Gaussian& c);
  Gaussian coefficient(const Monomial& m) const;
  Gaussian evaluate(const std::vector<Gaussian>& point) const;

  SymPoly& operator+=(const SymPoly& o);
  SymPoly& operator-=(const SymPoly& o);
  SymPoly& operator*=(const Gaussian& c);
  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
  friend SymPoly operator*(SymPoly a, const Gaussian& c) { return a *= c; }
  friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.terms_ == b.terms_; }

  SymPoly pow(int k) const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  int nvars_ = 0;
  Terms terms_;
};

}  // namespace dqw
