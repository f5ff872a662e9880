#include "dqw/formal.hpp"

#include <type_traits>

#include "dqw/sympoly.hpp"

namespace dqw {

namespace {

template <class V>
using ElementOf = typename std::decay_t<V>::value_type;

// Bidifferential operator read off a polynomial in (xi, eta): xi^a eta^b is d^a (x) d^b.
BidiffCochain cochain_from_symbol(const Model& model, const SymPoly& p) {
  const int dim = model.dim;
  BidiffCochain c(model);
  for (const auto& [mono, coeff] : p.terms()) {
    MultiIndex left(mono.begin(), mono.begin() + dim);
    MultiIndex right(mono.begin() + dim, mono.end());
    c.add_term(left, right, Element::constant(model, coeff));
  }
  return c;
}

SymPoly bivector_symbol(const RatMatrix& pi) {
  const int dim = pi.rows();
  SymPoly p(2 * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if (sgn(pi(i, j)) == 0) continue;
      Monomial m(2 * dim, 0);
      m[i] = 1;
      m[dim + j] = 1;
      p.add_term(m, Gaussian(pi(i, j)));
    }
  return p;
}

// (sum_i M_ij xi_i)^alpha_j expanded; coefficient of xi^gamma is the weight of d^gamma.
SymPoly transformed_derivative(const RatMatrix& m, const MultiIndex& alpha) {
  const int dim = m.rows();
  SymPoly out = SymPoly::constant(dim, 1);
  for (int j = 0; j < dim; ++j) {
    if (alpha[j] == 0) continue;
    SymPoly d(dim);
    for (int i = 0; i < dim; ++i)
      if (sgn(m(i, j)) != 0) d.add_term(unit_index(dim, i), Gaussian(m(i, j)));
    out = out * d.pow(alpha[j]);
  }
  return out;
}

void require_order_at_least(const StarProduct& s, int order) {
  if (s.order() < order)
    throw DimensionMismatch("product of order " + std::to_string(s.order()) + " needs order " +
                            std::to_string(order));
}

}  // namespace

StarProduct::StarProduct(Model model, PoissonStructure pi, std::vector<BidiffCochain> cochains)
    : model_(model), pi_(std::move(pi)), cochains_(std::move(cochains)) {
  if (pi_.dim() != model_.dim)
    throw DimensionMismatch("Poisson structure of size " + std::to_string(pi_.dim()) + " on " +
                            model_.str());
  for (const auto& c : cochains_)
    if (!c.is_zero()) require_same_model(model_, c.model());
  for (auto& c : cochains_)
    if (c.is_zero()) c = BidiffCochain(model_);
}

const BidiffCochain& StarProduct::cochain(int r) const {
  if (r < 1 || r > order())
    throw IndexOutOfRange("cochain C_" + std::to_string(r) + " of a product of order " +
                          std::to_string(order()));
  return cochains_[r - 1];
}

void StarProduct::set_cochain(int r, BidiffCochain c) {
  if (r < 1 || r > order()) throw IndexOutOfRange("cochain C_" + std::to_string(r));
  cochains_[r - 1] = std::move(c);
  bivectors_.reset();
}

bool StarProduct::is_unital() const {
  for (const auto& c : cochains_)
    if (!c.kills_constants()) return false;
  return true;
}

StarProduct StarProduct::with_order(int order) const {
  if (bivectors_) return moyal_formal(model_, *bivectors_, order);
  if (order > this->order())
    throw DimensionMismatch("product of order " + std::to_string(this->order()) +
                            " cannot be extended without a bivector series");
  StarProduct out(model_, pi_, std::vector<BidiffCochain>(cochains_.begin(),
                                                          cochains_.begin() + order));
  return out;
}

StarProduct moyal(const Model& model, const PoissonStructure& pi, int order) {
  return moyal_formal(model, {pi.matrix()}, order);
}

StarProduct moyal_formal(const Model& model, const std::vector<RatMatrix>& pis, int order) {
  if (pis.empty()) throw DimensionMismatch("empty bivector series");
  const PoissonStructure pi0(pis.front());
  std::vector<SymPoly> bivector(order + 1, SymPoly(2 * model.dim));
  for (std::size_t k = 0; k < pis.size() && static_cast<int>(k) <= order; ++k) {
    PoissonStructure check(pis[k]);
    if (check.dim() != model.dim) throw DimensionMismatch("bivector series of mixed sizes");
    bivector[k] = bivector_symbol(pis[k]);
  }
  // power[k] = coefficient of L^k in (sum_k L^k P_k)^n.
  std::vector<SymPoly> power(order + 1, SymPoly(2 * model.dim));
  power[0] = SymPoly::constant(2 * model.dim, 1);
  std::vector<SymPoly> total(order + 1, SymPoly(2 * model.dim));
  const Gaussian half_i(Rational(0), make_rational(1, 2));
  Gaussian factor = 1;
  for (int n = 1; n <= order; ++n) {
    std::vector<SymPoly> next(order + 1, SymPoly(2 * model.dim));
    for (int a = 0; a <= order - n; ++a)
      for (int b = 0; a + b <= order - n; ++b)
        if (!power[a].is_zero() && !bivector[b].is_zero()) next[a + b] += power[a] * bivector[b];
    power = std::move(next);
    factor *= half_i * Gaussian(make_rational(1, n));
    for (int k = 0; n + k <= order; ++k) total[n + k] += power[k] * factor;
  }
  std::vector<BidiffCochain> cochains;
  for (int r = 1; r <= order; ++r) cochains.push_back(cochain_from_symbol(model, total[r]));
  StarProduct s(model, pi0, std::move(cochains));
  s.set_bivector_series(pis);
  return s;
}

CheckReport check_associativity(const StarProduct& s) {
  const int n = s.order();
  return verify_identity("associativity", s.model(), 3, [&](const auto& in) {
    using E = ElementOf<decltype(in)>;
    const auto a = Series<E>::constant(in[0], n);
    const auto b = Series<E>::constant(in[1], n);
    const auto c = Series<E>::constant(in[2], n);
    return star_multiply(s, star_multiply(s, a, b), c) - star_multiply(s, a, star_multiply(s, b, c));
  });
}

CheckReport check_unitality(const StarProduct& s) {
  const int n = s.order();
  auto side = [&](bool left) {
    return verify_identity(left ? "left unit" : "right unit", s.model(), 1, [&](const auto& in) {
      using E = ElementOf<decltype(in)>;
      const auto f = Series<E>::constant(in[0], n);
      const auto one = Series<E>::constant(E::lift(Element::constant(s.model(), 1)), n);
      return (left ? star_multiply(s, one, f) : star_multiply(s, f, one)) - f;
    });
  };
  CheckReport rep = side(true);
  if (rep.pass) rep = side(false);
  rep.name = "unitality";
  return rep;
}

PoissonStructure extract_poisson(const StarProduct& s) {
  const Model& model = s.model();
  RatMatrix pi(model.dim, model.dim);
  if (s.order() == 0) return PoissonStructure(pi);
  const BidiffCochain b = s.cochain(1).antisymmetrized() * (-Gaussian::i());
  for (const auto& [key, c] : b.terms()) {
    if (degree(key.first) != 1 || degree(key.second) != 1)
      throw NonConstantBracket("bracket has a term of order " + index_str(key.first) + "|" +
                               index_str(key.second));
    if (!c.is_constant() || !c.constant_part().is_real())
      throw NonConstantBracket("bracket coefficient " + c.str() + " is not a real constant");
    int j = 0, k = 0;
    while (key.first[j] == 0) ++j;
    while (key.second[k] == 0) ++k;
    pi(j, k) = c.constant_part().re();
  }
  return PoissonStructure(pi);
}

BidiffCochain compute_tau(const StarProduct& left, const StarProduct& right) {
  require_same_model(left.model(), right.model());
  require_order_at_least(left, 2);
  require_order_at_least(right, 2);
  if (!(left.cochain(1) == right.cochain(1)))
    throw FirstOrderMismatch("C_1 differs: " + left.cochain(1).str() + " vs " +
                             right.cochain(1).str());
  BidiffCochain tau = (right.cochain(2) - left.cochain(2)).antisymmetrized();
  if (!(tau == tau_from_commutators(left, right)))
    throw InternalError("tau formulas disagree");
  return tau;
}

BidiffCochain tau_from_commutators(const StarProduct& left, const StarProduct& right) {
  require_same_model(left.model(), right.model());
  const Model& model = left.model();
  const auto a = GenericSeries::constant(Generic::generator(model, 0), 2);
  const auto b = GenericSeries::constant(Generic::generator(model, 1), 2);
  const GenericSeries diff =
      star_commutator(right.with_order(2), a, b) - star_commutator(left.with_order(2), a, b);
  return extract_cochain(diff[2], 0, 1);
}

Equivalence::Equivalence(Model model, std::vector<DiffOperator> stages)
    : model_(model), stages_(std::move(stages)) {
  for (std::size_t r = 0; r < stages_.size(); ++r) {
    if (stages_[r].is_zero()) {
      stages_[r] = DiffOperator(model_);
      continue;
    }
    require_same_model(model_, stages_[r].model());
    if (!stages_[r].kills_constants())
      throw NotAnEquivalence("stage T_" + std::to_string(r + 1) + " = " + stages_[r].str() +
                             " does not kill constants");
  }
}

Equivalence Equivalence::identity(const Model& model, int order) {
  return Equivalence(model, std::vector<DiffOperator>(order, DiffOperator(model)));
}

DiffOperator Equivalence::stage(int r) const {
  if (r == 0) return DiffOperator::identity(model_);
  if (r < 0 || r > order()) throw IndexOutOfRange("stage T_" + std::to_string(r));
  return stages_[r - 1];
}

Equivalence Equivalence::inverse() const {
  std::vector<DiffOperator> inv(order(), DiffOperator(model_));
  for (int r = 1; r <= order(); ++r) {
    DiffOperator acc = stages_[r - 1];
    for (int k = 1; k < r; ++k) acc += stages_[k - 1].compose(inv[r - k - 1]);
    inv[r - 1] = -acc;
  }
  return Equivalence(model_, std::move(inv));
}

Equivalence Equivalence::compose(const Equivalence& other) const {
  require_same_model(model_, other.model_);
  const int n = std::min(order(), other.order());
  std::vector<DiffOperator> out(n, DiffOperator(model_));
  for (int r = 1; r <= n; ++r) {
    DiffOperator acc = stages_[r - 1] + other.stages_[r - 1];
    for (int k = 1; k < r; ++k) acc += stages_[k - 1].compose(other.stages_[r - k - 1]);
    out[r - 1] = acc;
  }
  return Equivalence(model_, std::move(out));
}

StarProduct twist_by_equivalence(const StarProduct& s, const Equivalence& t) {
  require_same_model(s.model(), t.model());
  const int n = std::min(s.order(), t.order());
  const Equivalence tinv = t.inverse();
  const auto a = GenericSeries::constant(Generic::generator(s.model(), 0), n);
  const auto b = GenericSeries::constant(Generic::generator(s.model(), 1), n);
  const GenericSeries prod = t.apply(star_multiply(s, tinv.apply(a), tinv.apply(b)));
  std::vector<BidiffCochain> cochains;
  for (int r = 1; r <= n; ++r) cochains.push_back(extract_cochain(prod[r], 0, 1));
  return StarProduct(s.model(), s.poisson(), std::move(cochains));
}

DiffOperator equivalence_first_order(const Equivalence& t) {
  return t.order() >= 1 ? t.stage(1) : DiffOperator(t.model());
}

DiffOperator star_first_order(const Equivalence& t) {
  return equivalence_first_order(t) * (-Gaussian::i());
}

AutomorphismSeed::AutomorphismSeed(const Model& model, RatMatrix m)
    : model_(model), m_(std::move(m)) {
  if (m_.rows() != model_.dim || !m_.is_square())
    throw DimensionMismatch("automorphism matrix " + m_.str() + " on " + model_.str());
  const Rational det = m_.determinant();
  if (model_.is_torus()) {
    if (!m_.is_integral() || (det != 1 && det != -1))
      throw NotAnAutomorphism("torus automorphisms need an integer matrix with det +-1, got " +
                              m_.str());
  } else if (sgn(det) == 0) {
    throw NotAnAutomorphism("singular matrix " + m_.str());
  }
}

AutomorphismSeed AutomorphismSeed::identity(const Model& model) {
  return AutomorphismSeed(model, RatMatrix::identity(model.dim));
}

AutomorphismSeed AutomorphismSeed::inverse() const { return AutomorphismSeed(model_, m_.inverse()); }

AutomorphismSeed AutomorphismSeed::compose(const AutomorphismSeed& other) const {
  require_same_model(model_, other.model_);
  return AutomorphismSeed(model_, other.m_ * m_);
}

Element apply_automorphism(const AutomorphismSeed& psi, const Element& f) {
  require_same_model(psi.model(), f.model());
  const Model& model = f.model();
  const RatMatrix& m = psi.matrix();
  Element out(model);
  if (model.is_torus()) {
    for (const auto& [k, c] : f.terms()) {
      Exponent image(model.dim, 0);
      for (int j = 0; j < model.dim; ++j) {
        Rational v = 0;
        for (int i = 0; i < model.dim; ++i) v += m(i, j) * k[i];
        image[j] = static_cast<int>(v.get_num().get_si());
      }
      out.add_term(image, c);
    }
    return out;
  }
  std::vector<Element> linear;
  for (int j = 0; j < model.dim; ++j) {
    Element l(model);
    for (int k = 0; k < model.dim; ++k)
      if (sgn(m(j, k)) != 0) l.add_term(unit_index(model.dim, k), Gaussian(m(j, k)));
    linear.push_back(l);
  }
  for (const auto& [a, c] : f.terms()) {
    Element term = Element::constant(model, c);
    for (int j = 0; j < model.dim; ++j)
      for (int e = 0; e < a[j]; ++e) term = term * linear[j];
    out += term;
  }
  return out;
}

StarProduct pullback_by_automorphism(const StarProduct& s, const AutomorphismSeed& psi) {
  require_same_model(s.model(), psi.model());
  const Model& model = s.model();
  const RatMatrix& m = psi.matrix();
  const AutomorphismSeed inv = psi.inverse();
  std::vector<BidiffCochain> cochains;
  for (const auto& c : s.cochains()) {
    BidiffCochain out(model);
    for (const auto& [key, coeff] : c.terms()) {
      const Element pulled = apply_automorphism(inv, coeff);
      const SymPoly left = transformed_derivative(m, key.first);
      const SymPoly right = transformed_derivative(m, key.second);
      for (const auto& [g, cg] : left.terms())
        for (const auto& [h, ch] : right.terms()) out.add_term(g, h, pulled * (cg * ch));
    }
    cochains.push_back(out);
  }
  const RatMatrix pi = m * s.poisson().matrix() * m.transpose();
  StarProduct out(model, PoissonStructure(pi), std::move(cochains));
  if (s.bivector_series()) {
    std::vector<RatMatrix> series;
    for (const auto& p : *s.bivector_series()) series.push_back(m * p * m.transpose());
    out.set_bivector_series(std::move(series));
  }
  return out;
}

FormalSeries series_star_invert(const StarProduct& s, const FormalSeries& u) {
  const Element u0_inv = u[0].inverse();
  FormalSeries v = FormalSeries::constant(u0_inv, u.order());
  for (int r = 1; r <= u.order(); ++r) {
    const FormalSeries w = star_multiply(s, u, v);
    v[r] = -(u0_inv * w[r]);
  }
  return v;
}

bool same_product(const StarProduct& a, const StarProduct& b) {
  return a.model() == b.model() && a.order() == b.order() && a.cochains() == b.cochains();
}

}  // namespace dqw
