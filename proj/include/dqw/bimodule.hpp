#pragma once

#include <vector>

#include "dqw/connections.hpp"
#include "dqw/derivations.hpp"

namespace dqw {

/// A[[L]] as a (*', *)-bimodule: a .' x = ax + sum L^r R'_r(a,x) and
/// x . a = xa + sum L^r R_r(x,a).
struct BimoduleDeformation {
  StarProduct left_product;
  StarProduct right_product;
  /// R'_1 .. R'_N, arguments (a, x).
  std::vector<BidiffCochain> left;
  /// R_1 .. R_N, arguments (x, a).
  std::vector<BidiffCochain> right;

  const Model& model() const { return right_product.model(); }
  int order() const;

  template <class E>
  Series<E> act_left(const Series<E>& a, const Series<E>& x) const {
    return deformed_product(left, a, x);
  }
  template <class E>
  Series<E> act_right(const Series<E>& x, const Series<E>& a) const {
    return deformed_product(right, x, a);
  }
};

/// * acting on itself from both sides.
BimoduleDeformation regular_bimodule(const StarProduct& s);

/// Left module, right module and compatibility relations on generic inputs.
std::vector<CheckReport> check_bimodule_relations(const BimoduleDeformation& b);

/// D(a,x) = (1/i)(R'_1(a,x) - R_1(x,a)); the regular bimodule gives d.
/// Throws FirstOrderMismatch and NotAConnection.
ContravariantConnection semiclassical_limit(const BimoduleDeformation& b);

/// a .' x = a * x, x . a = x * e^{-iL rho_1(alpha)}(a). Throws NotQuantizable.
BimoduleDeformation deform_in_direction(const StarProduct& s, const ContravariantConnection& d);

/// Left action through T^{-1}: a .^ x = T^{-1}(a) .' x. T must be a
/// self-equivalence of the left product (NotAnEquivalence).
BimoduleDeformation twist_bimodule(const BimoduleDeformation& b, const Equivalence& t);

/// The same left action pulled to the product T(T^{-1}a *' T^{-1}b).
BimoduleDeformation transport_bimodule(const BimoduleDeformation& b, const Equivalence& t);

struct ModuliDescriptor {
  /// dim H^1 at each order 0..N.
  std::vector<int> dimensions;
  int order = 0;
  std::string str() const;
};

/// Symplectic torus or plane; other brackets on the torus throw UnsupportedModel.
ModuliDescriptor moduli_descriptor(const StarProduct& s, const ContravariantConnection& d);

}  // namespace dqw
