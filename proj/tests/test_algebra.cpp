#include <doctest.h>

#include <random>

#include "dqw/algebra.hpp"
#include "oracles.hpp"

using namespace dqw;

namespace {

const Model T2 = Model::torus(2);
const Model R2 = Model::plane(2);
const PoissonStructure PI = PoissonStructure::standard(2);

Element E(int a, int b, const Gaussian& c = 1) { return Element::monomial(T2, {a, b}, c); }
Element x(int j) { return Element::variable(R2, j - 1); }
Gaussian q(long n, long d = 1) { return Gaussian(make_rational(n, d)); }
Gaussian qi(long n, long d = 1) { return Gaussian(Rational(0), make_rational(n, d)); }

Element random_trig(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> k(-2, 2), c(-3, 3);
  Element e(T2);
  for (int t = 0; t < 3; ++t) e += E(k(rng), k(rng), Gaussian(Rational(c(rng)), Rational(c(rng))));
  return e;
}

Element random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> k(0, 2), c(-3, 3);
  Element e(R2);
  for (int t = 0; t < 3; ++t)
    e += Element::monomial(R2, {k(rng), k(rng)}, Gaussian(Rational(c(rng)), Rational(c(rng))));
  return e;
}

}  // namespace

TEST_CASE("Gaussian rationals stay reduced") {
  const Gaussian a(make_rational(2, 4), make_rational(-3, 9));
  CHECK(a.re().get_den() == 2);
  CHECK(a.im() == make_rational(-1, 3));
  CHECK((q(1, 2) + qi(1, 2)) * (q(1) - qi(1)) == q(1));
  CHECK(qi(1) * qi(1) == q(-1));
  CHECK(Gaussian(q(3, 4)).str() == "3/4");
  CHECK(qi(2, 5).str() == "2/5*i");
  CHECK_THROWS_AS(Gaussian(0).inverse(), std::domain_error);
}

TEST_CASE("products of elements") {
  CHECK(E(1, 0) * E(0, 1) == E(1, 1));
  CHECK((x(1) + x(2)) * (x(1) - x(2)) == x(1) * x(1) - x(2) * x(2));
  CHECK(E(2, -1, q(1, 2) + qi(1, 2)) * E(-2, 1, q(1) - qi(1)) == Element::constant(T2, 1));
  CHECK((E(1, 0) - E(1, 0)).is_zero());
  CHECK_THROWS_AS(E(1, 0) * x(1), ModelMismatch);
}

TEST_CASE("derivatives") {
  CHECK(E(3, 2).derive(0) == E(3, 2, qi(3)));
  CHECK((x(1) * x(1)).derive(1).is_zero());
  const Element sq = E(1, 0) * E(1, 0);
  CHECK(sq.derive(0) == E(2, 0, qi(2)));
  CHECK(sq.derive(0) == E(1, 0).derive(0) * E(1, 0) + E(1, 0) * E(1, 0).derive(0));
  CHECK_THROWS_AS(E(1, 0).derive(2), IndexOutOfRange);
}

TEST_CASE("units") {
  CHECK(E(1, -1, qi(2)).inverse() == E(-1, 1, qi(-1, 2)));
  CHECK(Element::constant(T2, 1).inverse() == Element::constant(T2, 1));
  CHECK_THROWS_AS((Element::constant(T2, 1) + E(1, 0)).inverse(), NotAUnit);
  CHECK_THROWS_AS(x(1).inverse(), NotAUnit);
  CHECK(Element::constant(R2, q(2)).inverse() == Element::constant(R2, q(1, 2)));
}

TEST_CASE("constant part") {
  CHECK((Element::constant(T2, q(5, 3)) + E(1, 1, 2)).constant_part() == q(5, 3));
  CHECK(E(2, 0).constant_part() == Gaussian(0));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) CHECK(random_trig(rng).derive(1).constant_part() == Gaussian(0));
}

TEST_CASE("Poisson brackets") {
  CHECK(poisson_bracket(E(1, 0), E(0, 1), PI) == E(1, 1, -1));
  CHECK(poisson_bracket(E(1, 0), E(0, 1), PI) == oracle::torus_bracket(E(1, 0), E(0, 1), PI.matrix()));
  CHECK(poisson_bracket(E(3, 1), Element::constant(T2, 1), PI).is_zero());
  CHECK(poisson_bracket(x(1), x(2), PI) == Element::constant(R2, 1));
  CHECK_THROWS_AS(poisson_bracket(E(1, 0), E(0, 1), PoissonStructure::standard(4)), DimensionMismatch);
}

TEST_CASE("bracket identities on random samples") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    const Element a = random_trig(rng), b = random_trig(rng), c = random_trig(rng);
    const Element jac = poisson_bracket(a, poisson_bracket(b, c, PI), PI) +
                        poisson_bracket(b, poisson_bracket(c, a, PI), PI) +
                        poisson_bracket(c, poisson_bracket(a, b, PI), PI);
    CHECK(jac.is_zero());
    CHECK(poisson_bracket(a, b * c, PI) ==
          b * poisson_bracket(a, c, PI) + c * poisson_bracket(a, b, PI));
    CHECK(poisson_bracket(a, b, PI) == oracle::torus_bracket(a, b, PI.matrix()));
    CHECK(poisson_bracket(a, b, PI).constant_part() == Gaussian(0));
    CHECK(a.derive(0).derive(1) == a.derive(1).derive(0));
    if (a.is_unit()) CHECK(a.inverse() * a == Element::constant(T2, 1));
  }
  for (int t = 0; t < 5; ++t) {
    const Element a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    const Element jac = poisson_bracket(a, poisson_bracket(b, c, PI), PI) +
                        poisson_bracket(b, poisson_bracket(c, a, PI), PI) +
                        poisson_bracket(c, poisson_bracket(a, b, PI), PI);
    CHECK(jac.is_zero());
  }
}

TEST_CASE("Poisson vector fields") {
  CHECK(is_poisson_vector_field(DiffOperator::partial(T2, 1), PI).pass);
  const DiffOperator ham = DiffOperator::field(T2, {E(0, 1), Element(T2)});
  CHECK(is_poisson_vector_field(ham, PI).pass);
  CHECK(ham == hamiltonian_field(E(0, 1, qi(-1)), PI));
  const CheckReport bad = is_poisson_vector_field(DiffOperator::field(T2, {E(1, 0), Element(T2)}), PI);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.witness.size() == 2);
  // The reported pair must break the identity when evaluated by hand.
  const DiffOperator x10 = DiffOperator::field(T2, {E(1, 0), Element(T2)});
  const Element a = E(1, 0), b = E(0, 1);
  CHECK_FALSE((x10(poisson_bracket(a, b, PI)) - poisson_bracket(x10(a), b, PI) -
               poisson_bracket(a, x10(b), PI))
                  .is_zero());
  CHECK_THROWS_AS(is_poisson_vector_field(DiffOperator::identity(T2), PI), NotADerivation);
}
