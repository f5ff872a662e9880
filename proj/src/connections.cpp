#include "dqw/connections.hpp"

#include <type_traits>

namespace dqw {

namespace {

void require_poisson(const DiffOperator& alpha, const PoissonStructure& pi) {
  CheckReport rep;
  try {
    rep = is_poisson_vector_field(alpha, pi);
  } catch (const NotADerivation& e) {
    throw NotPoisson(e.what());
  }
  if (!rep.pass) throw NotPoisson(alpha.str() + " is not a Poisson derivation");
}

std::optional<std::vector<Gaussian>> constant_vector(const DiffOperator& alpha) {
  std::vector<Gaussian> v(alpha.model().dim);
  for (int j = 0; j < alpha.model().dim; ++j) {
    const Element c = alpha.component(j);
    if (!c.is_zero() && !c.is_constant()) return std::nullopt;
    v[j] = c.constant_part();
  }
  return v;
}

// (pi^T)^{-1}(v/i), the lattice coordinates of a constant field.
std::vector<Gaussian> lattice_coordinates(const std::vector<Gaussian>& v, const RatMatrix& lower) {
  std::vector<Gaussian> w(v.size());
  for (int i = 0; i < lower.rows(); ++i)
    for (int j = 0; j < lower.cols(); ++j) w[i] += v[j] * Gaussian(lower(i, j));
  for (auto& c : w) c *= -Gaussian::i();
  return w;
}

Rational fractional(const Rational& q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - Rational(fl);
}

bool is_integral(const std::vector<Gaussian>& w) {
  for (const auto& c : w)
    if (sgn(c.im()) != 0 || c.re().get_den() != 1) return false;
  return true;
}

}  // namespace

std::vector<CheckReport> check_connection_axioms(const ContravariantConnection& d,
                                                 const PoissonStructure& pi) {
  std::vector<CheckReport> out;
  out.push_back(verify_identity("connection axiom (i)", d.model(), 3, [&](const auto& in) {
    using E = typename std::decay_t<decltype(in)>::value_type;
    const E& a = in[0];
    const E& b = in[1];
    const E& x = in[2];
    return Series<E>::constant(d(a * b, x, pi) - d(a, x, pi) * b - d(b, x, pi) * a, 0);
  }));
  out.push_back(verify_identity("connection axiom (ii)", d.model(), 3, [&](const auto& in) {
    using E = typename std::decay_t<decltype(in)>::value_type;
    const E& a = in[0];
    const E& x = in[1];
    const E& b = in[2];
    return Series<E>::constant(
        d(a, x * b, pi) - d(a, x, pi) * b - x * poisson_bracket(a, b, pi), 0);
  }));
  return out;
}

BidiffCochain curvature(const ContravariantConnection& d, const PoissonStructure& pi) {
  const Model& model = d.model();
  const Generic a = Generic::generator(model, 0);
  const Generic b = Generic::generator(model, 1);
  const Generic x = Generic::generator(model, 2);
  const DiffOperator& alpha = d.alpha;
  const Generic curv = poisson_bracket(a, alpha(b), pi) - poisson_bracket(b, alpha(a), pi) -
                       alpha(poisson_bracket(a, b, pi));
  const Generic full = d(a, d(b, x, pi), pi) - d(b, d(a, x, pi), pi) -
                       d(poisson_bracket(a, b, pi), x, pi);
  if (!(full == curv * x))
    throw InternalError("curvature disagrees with D_a D_b - D_b D_a - D_{a,b}");
  return extract_cochain(curv, 0, 1);
}

CheckReport is_poisson_derivation(const DiffOperator& alpha, const PoissonStructure& pi) {
  CheckReport rep = is_poisson_vector_field(alpha, pi);
  rep.name = "Poisson derivation";
  return rep;
}

DiffOperator logarithmic_derivation(const Element& u, const PoissonStructure& pi) {
  const Model& model = u.model();
  const Element inv = u.inverse();
  std::vector<Element> v(model.dim, Element(model));
  for (int i = 0; i < model.dim; ++i) {
    const Element du = u.derive(i);
    if (du.is_zero()) continue;
    for (int j = 0; j < model.dim; ++j)
      if (sgn(pi(i, j)) != 0) v[j] += inv * du * Gaussian(pi(i, j));
  }
  return DiffOperator::field(model, v);
}

std::optional<Element> integral_witness(const DiffOperator& alpha, const PoissonStructure& pi) {
  const Model& model = alpha.model();
  require_poisson(alpha, pi);
  if (alpha.is_zero()) return Element::constant(model, 1);
  if (!model.is_torus()) return std::nullopt;
  const auto v = constant_vector(alpha);
  if (!v) return std::nullopt;
  std::optional<Element> u;
  if (pi.is_symplectic()) {
    const std::vector<Gaussian> w = lattice_coordinates(*v, pi.matrix().transpose().inverse());
    if (!is_integral(w)) return std::nullopt;
    Exponent k(model.dim);
    for (int j = 0; j < model.dim; ++j) k[j] = static_cast<int>(w[j].re().get_num().get_si());
    u = Element::monomial(model, k);
  } else {
    constexpr int kBox = 8;
    Exponent k(model.dim, -kBox);
    while (!u) {
      const Element cand = Element::monomial(model, k);
      if (logarithmic_derivation(cand, pi) == alpha) u = cand;
      int j = 0;
      while (j < model.dim && k[j] == kBox) k[j++] = -kBox;
      if (j == model.dim) break;
      ++k[j];
    }
    if (!u) return std::nullopt;
  }
  if (!(logarithmic_derivation(*u, pi) == alpha))
    throw InternalError("witness " + u->str() + " does not reproduce " + alpha.str());
  return u;
}

ConnectionClass connection_class(const ContravariantConnection& d, const PoissonStructure& pi) {
  const Model& model = d.model();
  if (!model.is_torus() || !pi.is_symplectic())
    throw UnsupportedModel("connection classes need a symplectic torus, got " + model.str());
  require_poisson(d.alpha, pi);
  std::vector<Gaussian> v(model.dim);
  for (int j = 0; j < model.dim; ++j) v[j] = d.alpha.component(j).constant_part();
  const std::vector<Gaussian> w = lattice_coordinates(v, pi.matrix().transpose().inverse());
  ConnectionClass out;
  out.integral = is_integral(w);
  for (const auto& c : w) out.coset.push_back(Gaussian::i() * Gaussian(fractional(c.re()), c.im()));
  out.witness = integral_witness(d.alpha, pi);
  return out;
}

std::optional<Element> isomorphism_witness(const ContravariantConnection& d,
                                           const ContravariantConnection& d2,
                                           const PoissonStructure& pi) {
  require_same_model(d.model(), d2.model());
  return integral_witness(d.alpha - d2.alpha, pi);
}

}  // namespace dqw
