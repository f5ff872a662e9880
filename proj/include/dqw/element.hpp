#pragma once

#include <map>
#include <string>
#include <vector>

#include "dqw/errors.hpp"
#include "dqw/matrix.hpp"
#include "dqw/scalar.hpp"

namespace dqw {

/// Exponent of a monomial: x^a on the plane, E[k] = exp(i k.theta) on the torus.
using Exponent = std::vector<int>;
/// Multi-index alpha of a partial derivative d^alpha.
using MultiIndex = std::vector<int>;

int degree(const MultiIndex& a);
MultiIndex unit_index(int dim, int j);

enum class ModelKind { Plane, Torus };

/// Coefficient algebra descriptor. Plane(n): polynomials on R^n.
/// Torus(m): trigonometric polynomials on T^m.
struct Model {
  ModelKind kind = ModelKind::Torus;
  int dim = 0;

  static Model plane(int n) { return {ModelKind::Plane, n}; }
  static Model torus(int m) { return {ModelKind::Torus, m}; }
  bool is_torus() const { return kind == ModelKind::Torus; }
  bool is_plane() const { return kind == ModelKind::Plane; }
  std::string str() const;
  friend bool operator==(const Model&, const Model&) = default;
};

void require_same_model(const Model& a, const Model& b);

/// A polynomial or trigonometric polynomial with Q(i) coefficients.
class Element {
 public:
  using Terms = std::map<Exponent, Gaussian>;

  Element() = default;
  explicit Element(Model model) : model_(model) {}
  static Element constant(const Model& model, const Gaussian& c);
  static Element monomial(const Model& model, const Exponent& key, const Gaussian& c = 1);
  /// x_j on the plane (j is 0-based).
  static Element variable(const Model& model, int j);
  /// Identity; lets templated code treat concrete and generic elements alike.
  static const Element& lift(const Element& e) { return e; }

  const Model& model() const { return model_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Gaussian coefficient(const Exponent& key) const;
  Gaussian constant_part() const;

  void add_term(const Exponent& key, const Gaussian& c);

  /// d/dx_j or d/dtheta_j, j 0-based.
  Element derive(int j) const;
  Element derive(const MultiIndex& alpha) const;
  /// Multiplicative inverse; throws NotAUnit.
  Element inverse() const;
  bool is_unit() const;

  Element operator-() const;
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Gaussian& c);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator*(Element a, const Gaussian& c) { return a *= c; }
  friend Element operator*(const Gaussian& c, Element a) { return a *= c; }
  friend bool operator==(const Element& a, const Element& b) {
    return a.model_ == b.model_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

  /// Expression-grammar text, e.g. `2*E[1,-1] - i` or `x1^2*x2 - 3/4`.
  std::string str() const;

 private:
  Model model_;
  Terms terms_;
};

std::string monomial_str(const Model& model, const Exponent& key);

/// Constant Poisson bivector pi^{ij}; {f,g} = pi^{ij} d_i f d_j g.
class PoissonStructure {
 public:
  PoissonStructure() = default;
  /// Throws DimensionMismatch unless square and antisymmetric.
  explicit PoissonStructure(RatMatrix matrix);
  static PoissonStructure standard(int dim) {
    return PoissonStructure(RatMatrix::standard_symplectic(dim / 2));
  }

  const RatMatrix& matrix() const { return matrix_; }
  int dim() const { return matrix_.rows(); }
  const Rational& operator()(int i, int j) const { return matrix_(i, j); }
  bool is_symplectic() const;
  friend bool operator==(const PoissonStructure&, const PoissonStructure&) = default;

 private:
  RatMatrix matrix_;
};

/// {a,b} = pi^{ij} d_i a d_j b, for concrete and generic elements.
template <class E>
E poisson_bracket(const E& a, const E& b, const PoissonStructure& pi) {
  require_same_model(a.model(), b.model());
  if (pi.dim() != a.model().dim)
    throw DimensionMismatch("Poisson structure of size " + std::to_string(pi.dim()) +
                            " on model " + a.model().str());
  E out(a.model());
  for (int i = 0; i < pi.dim(); ++i) {
    E da = a.derive(i);
    if (da.is_zero()) continue;
    for (int j = 0; j < pi.dim(); ++j) {
      if (sgn(pi(i, j)) == 0) continue;
      out += (da * b.derive(j)) * Gaussian(pi(i, j));
    }
  }
  return out;
}

}  // namespace dqw
