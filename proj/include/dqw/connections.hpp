#pragma once

#include <optional>
#include <vector>

#include "dqw/algebra.hpp"

namespace dqw {

/// D_a(x) = {a,x} + alpha(a) x on the trivial line bundle.
struct ContravariantConnection {
  DiffOperator alpha;

  explicit ContravariantConnection(DiffOperator a) : alpha(std::move(a)) {}
  /// The canonical connection d_a(b) = {a,b}.
  static ContravariantConnection canonical(const Model& model) {
    return ContravariantConnection(DiffOperator(model));
  }
  const Model& model() const { return alpha.model(); }

  template <class E>
  E operator()(const E& a, const E& x, const PoissonStructure& pi) const {
    return poisson_bracket(a, x, pi) + alpha(a) * x;
  }
};

/// D(ab,x) = D(a,x)b + D(b,x)a and D(a,xb) = D(a,x)b + x{a,b}.
std::vector<CheckReport> check_connection_axioms(const ContravariantConnection& d,
                                                 const PoissonStructure& pi);

/// curv(a,b) = {a,alpha(b)} - {b,alpha(a)} - alpha({a,b}), cross-checked
/// against D_a D_b - D_b D_a - D_{a,b}.
BidiffCochain curvature(const ContravariantConnection& d, const PoissonStructure& pi);

CheckReport is_poisson_derivation(const DiffOperator& alpha, const PoissonStructure& pi);

/// u = c E[k] with u^{-1}{u,.} = alpha, or nothing. Throws NotPoisson.
std::optional<Element> integral_witness(const DiffOperator& alpha, const PoissonStructure& pi);

/// f -> u^{-1}{u,f}.
DiffOperator logarithmic_derivation(const Element& u, const PoissonStructure& pi);

struct ConnectionClass {
  /// i * (fractional part of (pi^T)^{-1}(c/i)), c the constant vector of alpha.
  std::vector<Gaussian> coset;
  bool integral = false;
  std::optional<Element> witness;
};

/// Symplectic torus only (UnsupportedModel); alpha must be Poisson (NotPoisson).
ConnectionClass connection_class(const ContravariantConnection& d, const PoissonStructure& pi);

/// A unit u with u^{-1} D u = D', when one exists.
std::optional<Element> isomorphism_witness(const ContravariantConnection& d,
                                           const ContravariantConnection& d2,
                                           const PoissonStructure& pi);

}  // namespace dqw
