#include "dqw/algebra.hpp"

#include <type_traits>

namespace dqw {

CheckReport is_poisson_vector_field(const DiffOperator& x, const PoissonStructure& pi) {
  if (!x.kills_constants() || !x.is_first_order_field())
    throw NotADerivation(x.str() + " is not a first-order vector field");
  if (pi.dim() != x.model().dim)
    throw DimensionMismatch("Poisson structure of size " + std::to_string(pi.dim()) + " on " +
                            x.model().str());
  return verify_identity("Poisson vector field", x.model(), 2, [&](const auto& in) {
    using E = typename std::decay_t<decltype(in)>::value_type;
    const E lhs = x(poisson_bracket(in[0], in[1], pi));
    const E rhs = poisson_bracket(x(in[0]), in[1], pi) + poisson_bracket(in[0], x(in[1]), pi);
    return Series<E>::constant(lhs - rhs, 0);
  });
}

DiffOperator hamiltonian_field(const Element& h, const PoissonStructure& pi) {
  const Model& model = h.model();
  std::vector<Element> v(model.dim, Element(model));
  for (int i = 0; i < model.dim; ++i)
    for (int j = 0; j < model.dim; ++j)
      if (sgn(pi(i, j)) != 0) v[i] += h.derive(j) * Gaussian(pi(i, j));
  return DiffOperator::field(model, v);
}

}  // namespace dqw
