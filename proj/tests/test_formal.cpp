#include <doctest.h>

#include <random>

#include "dqw/derivations.hpp"
#include "oracles.hpp"

using namespace dqw;

namespace {

const Model T2 = Model::torus(2);
const Model R2 = Model::plane(2);
const PoissonStructure PI = PoissonStructure::standard(2);

Element E(int a, int b, const Gaussian& c = 1) { return Element::monomial(T2, {a, b}, c); }
Element X(int a, int b, const Gaussian& c = 1) { return Element::monomial(R2, {a, b}, c); }
Gaussian q(long n, long d = 1) { return Gaussian(make_rational(n, d)); }
Gaussian qi(long n, long d = 1) { return Gaussian(Rational(0), make_rational(n, d)); }
FormalSeries cs(const Element& e, int n) { return FormalSeries::constant(e, n); }

Element random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> k(0, 3), c(-2, 2);
  Element e(R2);
  for (int t = 0; t < 3; ++t) e += X(k(rng), k(rng), Gaussian(Rational(c(rng)), Rational(c(rng))));
  return e;
}

Element random_trig(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> k(-2, 2), c(-2, 2);
  Element e(T2);
  for (int t = 0; t < 3; ++t) e += E(k(rng), k(rng), Gaussian(Rational(c(rng)), Rational(c(rng))));
  return e;
}

RatMatrix rat(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Rational>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (long v : row) r.back().push_back(Rational(v));
  }
  return RatMatrix::from_rows(r);
}

}  // namespace

TEST_CASE("Moyal product of coordinates on the plane") {
  const StarProduct s = moyal(R2, PI, 3);
  const FormalSeries xy = star_multiply(s, cs(X(1, 0), 3), cs(X(0, 1), 3));
  CHECK(xy[0] == X(1, 1));
  CHECK(xy[1] == Element::constant(R2, qi(1, 2)));
  CHECK(xy[2].is_zero());
  CHECK(star_commutator(s, cs(X(1, 0), 3), cs(X(0, 1), 3))[1] == Element::constant(R2, qi(1)));
}

TEST_CASE("second Moyal cochain on the plane") {
  const StarProduct s = moyal(R2, PI, 2);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 8; ++t) {
    const Element f = random_poly(rng), g = random_poly(rng);
    const auto d = [](const Element& e, int a, int b) { return e.derive(MultiIndex{a, b}); };
    const Element expected = (d(f, 2, 0) * d(g, 0, 2) - q(2) * (d(f, 1, 1) * d(g, 1, 1)) +
                              d(f, 0, 2) * d(g, 2, 0)) *
                             q(-1, 8);
    CHECK(s.cochain(2)(f, g) == expected);
  }
}

TEST_CASE("star products agree with brute-force references") {
  std::mt19937_64 rng(3);
  const StarProduct sp = moyal(R2, PI, 4);
  const StarProduct st = moyal(T2, PI, 4);
  for (int t = 0; t < 6; ++t) {
    const Element f = random_poly(rng), g = random_poly(rng);
    CHECK(star_multiply(sp, cs(f, 4), cs(g, 4)) == oracle::moyal_by_strings(f, g, PI.matrix(), 4));
    const Element a = random_trig(rng), b = random_trig(rng);
    CHECK(star_multiply(st, cs(a, 4), cs(b, 4)) == oracle::torus_moyal(a, b, PI.matrix(), 4));
  }
}

TEST_CASE("associativity and unitality") {
  CHECK(check_associativity(moyal(T2, PI, 3)).pass);
  CHECK(check_associativity(moyal(R2, PI, 3)).pass);
  CHECK(check_unitality(moyal(T2, PI, 3)).pass);

  const StarProduct trivial = moyal(R2, PoissonStructure(RatMatrix(2, 2)), 3);
  for (const auto& c : trivial.cochains()) CHECK(c.is_zero());
  CHECK(check_associativity(trivial).pass);

  StarProduct broken = moyal(R2, PI, 3);
  BidiffCochain c2(R2);
  bool dropped = false;
  for (const auto& [key, c] : broken.cochain(2).terms()) {
    if (!dropped) {
      dropped = true;
      continue;
    }
    c2.add_term(key.first, key.second, c);
  }
  broken.set_cochain(2, c2);
  const CheckReport rep = check_associativity(broken);
  CHECK_FALSE(rep.pass);
  CHECK(rep.order == 2);
  CHECK(rep.witness.size() == 3);
}

TEST_CASE("Poisson bracket of a product") {
  CHECK(extract_poisson(moyal(T2, PI, 2)) == PI);
  const Equivalence t = exp_derivation(
      FormalDerivation(T2, {DiffOperator(T2), DiffOperator::partial(T2, 0).compose(DiffOperator::partial(T2, 1))}));
  CHECK(extract_poisson(twist_by_equivalence(moyal(T2, PI, 3), t)) == PI);

  BidiffCochain c1(T2);
  c1.add_term({1, 0}, {0, 1}, E(1, 0, qi(1, 2)));
  c1.add_term({0, 1}, {1, 0}, E(1, 0, qi(-1, 2)));
  CHECK_THROWS_AS(extract_poisson(StarProduct(T2, PI, {c1})), NonConstantBracket);
}

TEST_CASE("tau between two products with the same bracket") {
  std::vector<std::vector<Rational>> b{{0, 1}, {-1, 0}};
  const StarProduct left = moyal(R2, PI, 2);
  const StarProduct right = moyal_formal(R2, {PI.matrix(), RatMatrix::from_rows(b)}, 2);
  const BidiffCochain tau = compute_tau(right, left);
  CHECK(tau(X(1, 0), X(0, 1)) == Element::constant(R2, qi(-1)));
  CHECK(tau(X(0, 1), X(1, 0)) == Element::constant(R2, qi(1)));
  CHECK(tau == tau_from_commutators(right, left));
  CHECK(compute_tau(left, right) == -tau);
  CHECK(compute_tau(left, left).is_zero());
  CHECK_THROWS_AS(compute_tau(left, moyal(R2, PoissonStructure(RatMatrix(2, 2)), 2)),
                  FirstOrderMismatch);
}

TEST_CASE("twisting by an equivalence") {
  const StarProduct s = moyal(T2, PI, 3);
  const Equivalence t = exp_derivation(FormalDerivation(
      T2, {DiffOperator(T2), DiffOperator::field(T2, {E(0, 1), Element(T2)}),
           DiffOperator::partial(T2, 1).compose(DiffOperator::partial(T2, 1)), DiffOperator(T2)}));
  REQUIRE(t.order() == 3);
  const StarProduct twisted = twist_by_equivalence(s, t);
  CHECK(check_associativity(twisted).pass);
  CHECK(same_product(twist_by_equivalence(twisted, t.inverse()), s));
  CHECK(t.compose(t.inverse()) == Equivalence::identity(T2, t.order()));

  std::mt19937_64 rng(5);
  for (int k = 0; k < 3; ++k) {
    const Element a = random_trig(rng), b = random_trig(rng);
    const FormalSeries lhs = star_multiply(twisted, t.apply(cs(a, 3)), t.apply(cs(b, 3)));
    CHECK(lhs == t.apply(star_multiply(s, cs(a, 3), cs(b, 3))));
  }
  CHECK_THROWS_AS(Equivalence(T2, {DiffOperator::identity(T2)}), NotAnEquivalence);
}

TEST_CASE("pullback by a linear automorphism") {
  const StarProduct s = moyal(R2, PI, 2);
  const AutomorphismSeed swap(R2, rat({{0, 1}, {1, 0}}));
  const StarProduct p = pullback_by_automorphism(s, swap);
  CHECK(extract_poisson(p)(0, 1) == Rational(-1));
  CHECK(check_associativity(p).pass);
  CHECK(apply_automorphism(swap, X(2, 1)) == X(1, 2));
  CHECK_THROWS_AS(AutomorphismSeed(T2, rat({{2, 0}, {0, 1}})), NotAnAutomorphism);
  const AutomorphismSeed shear(T2, rat({{1, 1}, {0, 1}}));
  CHECK(shear.compose(shear.inverse()).matrix() == RatMatrix::identity(2));
}

TEST_CASE("star inverses") {
  const StarProduct st = moyal(T2, PI, 4);
  CHECK(series_star_invert(st, cs(E(1, 0), 4)) == cs(E(-1, 0), 4));

  const StarProduct sp = moyal(R2, PI, 4);
  FormalSeries u = cs(Element::constant(R2, 1), 4);
  u[1] = X(1, 0);
  const FormalSeries v = series_star_invert(sp, u);
  for (int r = 0; r <= 4; ++r) CHECK(v[r] == X(r, 0, r % 2 ? q(-1) : q(1)));
  CHECK(star_multiply(sp, u, v) == cs(Element::constant(R2, 1), 4));
  CHECK_THROWS_AS(series_star_invert(sp, cs(X(1, 0), 4)), NotAUnit);
}

TEST_CASE("first-order part of an equivalence") {
  const StarProduct s = moyal(T2, PI, 3);
  const Equivalence ad = adjoint_equivalence(s, cs(E(1, 0), 3));
  CHECK(equivalence_first_order(ad) == DiffOperator::partial(T2, 1, q(-1)));
  CHECK(star_first_order(ad) == DiffOperator::partial(T2, 1, qi(1)));
  // u^{-1}{u, .} computed directly.
  CHECK(star_first_order(ad)(E(0, 1)) == E(-1, 0) * poisson_bracket(E(1, 0), E(0, 1), PI));

  const Equivalence shift =
      exp_derivation(FormalDerivation(T2, {DiffOperator(T2), DiffOperator::partial(T2, 1)}));
  CHECK(equivalence_first_order(shift) == DiffOperator::partial(T2, 1));
}
