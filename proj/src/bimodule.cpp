#include "dqw/bimodule.hpp"

#include <type_traits>

namespace dqw {

namespace {

// Cochains of the left action a .^ x = T^{-1}(a) .' x.
std::vector<BidiffCochain> left_through(const BimoduleDeformation& b, const Equivalence& t) {
  const Model& model = b.model();
  const int n = static_cast<int>(b.left.size());
  const Equivalence inv = t.inverse();
  const auto a = GenericSeries::constant(Generic::generator(model, 0), n);
  const auto x = GenericSeries::constant(Generic::generator(model, 1), n);
  const GenericSeries act = b.act_left(inv.apply(a), x);
  std::vector<BidiffCochain> out;
  for (int r = 1; r <= act.order(); ++r) out.push_back(extract_cochain(act[r], 0, 1));
  return out;
}

BidiffCochain bracket_cochain(const Model& model, const PoissonStructure& pi) {
  BidiffCochain out(model);
  for (int i = 0; i < model.dim; ++i)
    for (int j = 0; j < model.dim; ++j)
      if (sgn(pi(i, j)) != 0)
        out.add_term(unit_index(model.dim, i), unit_index(model.dim, j),
                     Element::constant(model, Gaussian(pi(i, j))));
  return out;
}

}  // namespace

int BimoduleDeformation::order() const {
  return static_cast<int>(std::min({left.size(), right.size(),
                                    static_cast<std::size_t>(left_product.order()),
                                    static_cast<std::size_t>(right_product.order())}));
}

BimoduleDeformation regular_bimodule(const StarProduct& s) {
  return BimoduleDeformation{s, s, s.cochains(), s.cochains()};
}

std::vector<CheckReport> check_bimodule_relations(const BimoduleDeformation& b) {
  const int n = b.order();
  std::vector<CheckReport> out;
  out.push_back(verify_identity("left module", b.model(), 3, [&](const auto& in) {
    using E = typename std::decay_t<decltype(in)>::value_type;
    const auto a1 = Series<E>::constant(in[0], n);
    const auto a2 = Series<E>::constant(in[1], n);
    const auto x = Series<E>::constant(in[2], n);
    return b.act_left(star_multiply(b.left_product, a1, a2), x) -
           b.act_left(a1, b.act_left(a2, x));
  }));
  out.push_back(verify_identity("right module", b.model(), 3, [&](const auto& in) {
    using E = typename std::decay_t<decltype(in)>::value_type;
    const auto x = Series<E>::constant(in[0], n);
    const auto a1 = Series<E>::constant(in[1], n);
    const auto a2 = Series<E>::constant(in[2], n);
    return b.act_right(x, star_multiply(b.right_product, a1, a2)) -
           b.act_right(b.act_right(x, a1), a2);
  }));
  out.push_back(verify_identity("bimodule compatibility", b.model(), 3, [&](const auto& in) {
    using E = typename std::decay_t<decltype(in)>::value_type;
    const auto a = Series<E>::constant(in[0], n);
    const auto x = Series<E>::constant(in[1], n);
    const auto c = Series<E>::constant(in[2], n);
    return b.act_right(b.act_left(a, x), c) - b.act_left(a, b.act_right(x, c));
  }));
  return out;
}

ContravariantConnection semiclassical_limit(const BimoduleDeformation& b) {
  const Model& model = b.model();
  require_same_model(model, b.left_product.model());
  if (b.left.empty() || b.right.empty() || b.left_product.order() < 1 ||
      b.right_product.order() < 1)
    throw DimensionMismatch("semiclassical limit needs first-order data");
  if (!(b.left_product.cochain(1) == b.right_product.cochain(1)))
    throw FirstOrderMismatch("the two products differ at first order");
  const PoissonStructure pi = extract_poisson(b.right_product);
  BidiffCochain d = (b.left[0] - b.right[0].swapped()) * -Gaussian::i();
  DiffOperator alpha(model);
  for (const auto& [key, c] : d.terms())
    if (degree(key.second) == 0) alpha.add_term(key.first, c);
  BidiffCochain expected = bracket_cochain(model, pi);
  for (const auto& [idx, c] : alpha.terms()) expected.add_term(idx, MultiIndex(model.dim, 0), c);
  if (!(d == expected))
    throw NotAConnection("D = " + d.str() + " is not {a,x} + alpha(a)x");
  if (!alpha.kills_constants())
    throw NotAConnection("alpha = " + alpha.str() + " is not a derivation");
  return ContravariantConnection(alpha);
}

BimoduleDeformation deform_in_direction(const StarProduct& s, const ContravariantConnection& d) {
  const Model& model = s.model();
  require_same_model(model, d.model());
  const int n = s.order();
  FormalDerivation rho;
  try {
    rho = rho_one(s, d.alpha);
  } catch (const NotPoisson& e) {
    throw NotQuantizable(e.what());
  } catch (const NotDecomposable& e) {
    throw NotQuantizable(e.what());
  }
  const Equivalence phi = exp_derivation((rho.shifted(1) * -Gaussian::i()).resized(n));
  const auto x = GenericSeries::constant(Generic::generator(model, 0), n);
  const auto a = GenericSeries::constant(Generic::generator(model, 1), n);
  const GenericSeries act = star_multiply(s, x, phi.apply(a));
  std::vector<BidiffCochain> right;
  for (int r = 1; r <= n; ++r) right.push_back(extract_cochain(act[r], 0, 1));
  return BimoduleDeformation{s, s, s.cochains(), std::move(right)};
}

BimoduleDeformation twist_bimodule(const BimoduleDeformation& b, const Equivalence& t) {
  require_same_model(b.model(), t.model());
  const StarProduct twisted = twist_by_equivalence(b.left_product, t);
  if (!same_product(twisted, b.left_product))
    throw NotAnEquivalence("T is not a self-equivalence of the left product");
  BimoduleDeformation out = b;
  out.left = left_through(b, t);
  return out;
}

BimoduleDeformation transport_bimodule(const BimoduleDeformation& b, const Equivalence& t) {
  require_same_model(b.model(), t.model());
  BimoduleDeformation out = b;
  out.left_product = twist_by_equivalence(b.left_product, t);
  out.left = left_through(b, t);
  return out;
}

std::string ModuliDescriptor::str() const {
  std::string out = "dim H^1 per order:";
  for (int d : dimensions) out += " " + std::to_string(d);
  return out;
}

ModuliDescriptor moduli_descriptor(const StarProduct& s, const ContravariantConnection& d) {
  const Model& model = s.model();
  require_same_model(model, d.model());
  const PoissonStructure pi = extract_poisson(s);
  int dim = 0;
  if (model.is_torus()) {
    if (!pi.is_symplectic())
      throw UnsupportedModel("moduli are computed for symplectic brackets, got " +
                             pi.matrix().str());
    dim = model.dim;
  }
  ModuliDescriptor out;
  out.order = s.order();
  out.dimensions.assign(s.order() + 1, dim);
  return out;
}

}  // namespace dqw
