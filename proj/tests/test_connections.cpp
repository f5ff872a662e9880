#include <doctest.h>

#include "dqw/connections.hpp"

using namespace dqw;

namespace {

const Model T2 = Model::torus(2);
const PoissonStructure PI = PoissonStructure::standard(2);

Element E(int a, int b, const Gaussian& c = 1) { return Element::monomial(T2, {a, b}, c); }
Gaussian q(long n, long d = 1) { return Gaussian(make_rational(n, d)); }
Gaussian qi(long n, long d = 1) { return Gaussian(Rational(0), make_rational(n, d)); }
DiffOperator d1(const Gaussian& c = 1) { return DiffOperator::partial(T2, 0, c); }
DiffOperator d2(const Gaussian& c = 1) { return DiffOperator::partial(T2, 1, c); }

bool all_pass(const std::vector<CheckReport>& reps) {
  for (const auto& r : reps)
    if (!r.pass) return false;
  return true;
}

// {a,alpha(b)} - {b,alpha(a)} - alpha({a,b}) evaluated directly.
Element curvature_by_hand(const DiffOperator& alpha, const Element& a, const Element& b) {
  return poisson_bracket(a, alpha(b), PI) - poisson_bracket(b, alpha(a), PI) -
         alpha(poisson_bracket(a, b, PI));
}

}  // namespace

TEST_CASE("connection axioms") {
  CHECK(all_pass(check_connection_axioms(ContravariantConnection::canonical(T2), PI)));
  CHECK(all_pass(check_connection_axioms(ContravariantConnection(d2()), PI)));
  DiffOperator bad = d2();
  bad.add_term({0, 0}, Element::constant(T2, 3));
  const auto reps = check_connection_axioms(ContravariantConnection(bad), PI);
  REQUIRE(reps.size() == 2);
  CHECK_FALSE(reps[0].pass);
  CHECK(reps[1].pass);
}

TEST_CASE("curvature") {
  CHECK(curvature(ContravariantConnection::canonical(T2), PI).is_zero());
  CHECK(curvature(ContravariantConnection(d2(q(5, 2))), PI).is_zero());

  const DiffOperator alpha = DiffOperator::field(T2, {E(1, 0), Element(T2)});
  const BidiffCochain c = curvature(ContravariantConnection(alpha), PI);
  CHECK(c(E(1, 0), E(0, 1)) == E(2, 1, qi(-1)));
  CHECK(c(E(1, 0), E(0, 1)) == curvature_by_hand(alpha, E(1, 0), E(0, 1)));
  for (const auto& [a, b] : {std::pair{E(1, 1), E(-1, 2)}, std::pair{E(2, 0), E(0, -1)}}) {
    CHECK(c(a, b) == curvature_by_hand(alpha, a, b));
    CHECK((c(a, b) + c(b, a)).is_zero());
  }
}

TEST_CASE("Poisson derivations and flatness") {
  CHECK(is_poisson_derivation(d1(), PI).pass);
  CHECK_FALSE(is_poisson_derivation(DiffOperator::field(T2, {E(1, 0), Element(T2)}), PI).pass);
  const DiffOperator log = logarithmic_derivation(E(2, 1), PI);
  CHECK(is_poisson_derivation(log, PI).pass);
  for (const DiffOperator& alpha :
       {d1(), log, DiffOperator::field(T2, {E(1, 0), Element(T2)}),
        DiffOperator::field(T2, {E(0, 1), E(1, 0)})}) {
    const bool flat = curvature(ContravariantConnection(alpha), PI).is_zero();
    CHECK(flat == is_poisson_derivation(alpha, PI).pass);
  }
}

TEST_CASE("integral witnesses") {
  const auto one = integral_witness(DiffOperator(T2), PI);
  REQUIRE(one);
  CHECK(*one == Element::constant(T2, 1));

  const auto u = integral_witness(d2(qi(1)), PI);
  REQUIRE(u);
  CHECK(*u == E(1, 0));
  for (const Element& f : {E(0, 1), E(3, -2), E(1, 1)})
    CHECK(u->inverse() * poisson_bracket(*u, f, PI) == d2(qi(1))(f));

  CHECK_FALSE(integral_witness(d2(), PI));

  const auto v = integral_witness(d1(qi(-1)), PI);
  const auto uv = integral_witness(d2(qi(1)) + d1(qi(-1)), PI);
  REQUIRE(v);
  REQUIRE(uv);
  CHECK(*uv == *u * *v);
}

TEST_CASE("connection classes") {
  const ConnectionClass zero = connection_class(ContravariantConnection::canonical(T2), PI);
  CHECK(zero.coset == std::vector<Gaussian>{0, 0});
  CHECK(zero.integral);

  const ConnectionClass unit = connection_class(ContravariantConnection(d2(qi(1))), PI);
  CHECK(unit.coset == std::vector<Gaussian>{0, 0});
  CHECK(unit.integral);
  REQUIRE(unit.witness);
  CHECK(*unit.witness == E(1, 0));

  const ConnectionClass half = connection_class(ContravariantConnection(d2(qi(1, 2))), PI);
  CHECK(half.coset == std::vector<Gaussian>{qi(1, 2), 0});
  CHECK_FALSE(half.integral);

  const ContravariantConnection a(d2(qi(1, 2))), b(d2(qi(3, 2)));
  CHECK(connection_class(a, PI).coset == connection_class(b, PI).coset);
  const auto w = isomorphism_witness(a, b, PI);
  REQUIRE(w);
  CHECK(logarithmic_derivation(*w, PI) == a.alpha - b.alpha);
  CHECK_FALSE(isomorphism_witness(a, ContravariantConnection(d2(qi(1, 3))), PI));

  CHECK_THROWS_AS(connection_class(ContravariantConnection(DiffOperator::field(T2, {E(1, 0), Element(T2)})), PI),
                  NotPoisson);
}
