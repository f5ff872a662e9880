#include <doctest.h>

#include "dqw/derivations.hpp"
#include "oracles.hpp"

using namespace dqw;

namespace {

const Model T2 = Model::torus(2);
const Model R2 = Model::plane(2);
const PoissonStructure PI = PoissonStructure::standard(2);
constexpr int N = 4;

Element E(int a, int b, const Gaussian& c = 1) { return Element::monomial(T2, {a, b}, c); }
Gaussian q(long n, long d = 1) { return Gaussian(make_rational(n, d)); }
Gaussian qi(long n, long d = 1) { return Gaussian(Rational(0), make_rational(n, d)); }
FormalSeries cs(const Element& e) { return FormalSeries::constant(e, N); }

}  // namespace

TEST_CASE("derivations of the Moyal product") {
  const StarProduct st = moyal(T2, PI, N);
  CHECK(check_derivation(st, FormalDerivation::constant(DiffOperator::partial(T2, 0), N)).pass);
  const CheckReport ham = check_derivation(st, FormalDerivation::constant(hamiltonian_field(E(1, 1), PI), N));
  CHECK_FALSE(ham.pass);
  CHECK(ham.order >= 2);

  const StarProduct sp = moyal(R2, PI, N);
  const DiffOperator euler = DiffOperator::field(R2, {Element::variable(R2, 0), Element(R2)});
  const CheckReport rep = check_derivation(sp, FormalDerivation::constant(euler, N));
  CHECK_FALSE(rep.pass);
  CHECK(rep.order == 1);
  CHECK_THROWS_AS(FormalDerivation::constant(DiffOperator::identity(T2), N), NotADerivation);
}

TEST_CASE("quasi-inner derivation") {
  const StarProduct st = moyal(T2, PI, N);
  const FormalDerivation d = quasi_inner(st, cs(E(1, 0)));
  const FormalSeries got = d.apply(cs(E(0, 1)));
  // (2/L) sin(L/2) from the phase formula.
  const FormalSeries comm = oracle::torus_moyal(E(1, 0), E(0, 1), PI.matrix(), N + 1) -
                            oracle::torus_moyal(E(0, 1), E(1, 0), PI.matrix(), N + 1);
  for (int r = 0; r <= got.order(); ++r) CHECK(got[r] == comm[r + 1] * qi(1));
  CHECK(got[0] == E(1, 1));
  CHECK(got[1].is_zero());
  CHECK(got[2] == E(1, 1, q(-1, 24)));
  CHECK(check_derivation(st, d).pass);
  CHECK(d.stage(0) == hamiltonian_field(E(1, 0), PI));
}

TEST_CASE("derivations from closed one-forms") {
  const StarProduct st = moyal(T2, PI, N);
  const FormalDerivation d = delta_one_form(st, ClosedOneForm(T2, {q(1), q(0)}, Element(T2)));
  CHECK(d.stage(0).is_zero());
  CHECK(d.stage(1) == DiffOperator::partial(T2, 1, qi(1)));
  for (int r = 2; r <= d.order(); ++r) CHECK(d.stage(r).is_zero());
  CHECK(check_derivation(st, d).pass);

  const FormalDerivation exact = delta_one_form(st, ClosedOneForm(T2, {q(0), q(0)}, E(1, 0)));
  CHECK(check_derivation(st, exact).pass);
  CHECK(outer_class(st, exact).inner);

  const ClosedOneForm a = integrate_closed_form(T2, {E(0, 0, 2) + E(1, 0, qi(1)), Element(T2)});
  CHECK(a.constant == std::vector<Gaussian>{q(2), q(0)});
  CHECK(a.potential == E(1, 0));
  CHECK_THROWS_AS(integrate_closed_form(T2, {E(0, 1), Element(T2)}), NotDecomposable);
}

TEST_CASE("inner automorphisms as one-forms") {
  const StarProduct st = moyal(T2, PI, N);
  const InnerForm f = inner_to_one_form(st, cs(E(1, 0)));
  REQUIRE_FALSE(f.forms.empty());
  CHECK(f.forms[0].constant == std::vector<Gaussian>{qi(1), q(0)});
  for (std::size_t r = 1; r < f.forms.size(); ++r) CHECK(f.forms[r].is_zero());
  CHECK(f.integral);
  CHECK(f.higher_exact);
  CHECK(f.verified);
  CHECK(exp_derivation(delta_one_form(st, f.forms)) == adjoint_equivalence(st, cs(E(1, 0))));

  const StarProduct sp = moyal(R2, PoissonStructure(RatMatrix(2, 2)), N);
  CHECK_THROWS_AS(inner_to_one_form(sp, FormalSeries::constant(Element::constant(R2, 1), N)),
                  UnsupportedModel);
}

TEST_CASE("central elements") {
  const StarProduct st = moyal(T2, PI, N);
  CHECK(is_central(st, cs(Element::constant(T2, q(3)))).pass);
  const CheckReport rep = is_central(st, cs(E(1, 0)));
  CHECK_FALSE(rep.pass);
  CHECK(rep.witness.size() == 1);
}

TEST_CASE("first-order lift of Poisson fields") {
  const StarProduct st = moyal(T2, PI, N);
  const DiffOperator x = DiffOperator::field(T2, {E(0, 1), Element(T2)});
  CHECK(rho_one(st, x) == quasi_inner(st, cs(E(0, 1, qi(-1)))));
  const FormalDerivation c = rho_one(st, DiffOperator::partial(T2, 1));
  CHECK(c.stage(0) == DiffOperator::partial(T2, 1));
  for (int r = 1; r <= c.order(); ++r) CHECK(c.stage(r).is_zero());
  CHECK_THROWS_AS(rho_one(st, DiffOperator::field(T2, {E(1, 0), Element(T2)})), NotPoisson);
}

TEST_CASE("outer classes") {
  const StarProduct st = moyal(T2, PI, N);
  const OuterClass c = outer_class(st, FormalDerivation::constant(DiffOperator::partial(T2, 1), N));
  CHECK(c.field[0] == std::vector<Gaussian>{q(0), q(1)});
  CHECK_FALSE(c.inner);

  const FormalDerivation d = delta_one_form(st, ClosedOneForm(T2, {qi(1), q(0)}, Element(T2)));
  const OuterClass o = outer_class(st, d);
  CHECK(o.form[0] == std::vector<Gaussian>{qi(1), q(0)});

  const OuterClass in = outer_class(st, quasi_inner(st, cs(E(1, 1))));
  CHECK(in.inner);
}
