#include <doctest.h>

#include "dqw/bimodule.hpp"

using namespace dqw;

namespace {

const Model T2 = Model::torus(2);
const Model R2 = Model::plane(2);
const PoissonStructure PI = PoissonStructure::standard(2);
constexpr int N = 3;

Element E(int a, int b, const Gaussian& c = 1) { return Element::monomial(T2, {a, b}, c); }
Gaussian qi(long n, long d = 1) { return Gaussian(Rational(0), make_rational(n, d)); }
DiffOperator d2(const Gaussian& c = 1) { return DiffOperator::partial(T2, 1, c); }

bool all_pass(const std::vector<CheckReport>& reps) {
  for (const auto& r : reps)
    if (!r.pass) return false;
  return true;
}

Equivalence shift_along(const DiffOperator& x, int order) {
  std::vector<DiffOperator> stages(order + 1, DiffOperator(x.model()));
  stages[1] = x;
  return exp_derivation(FormalDerivation(x.model(), stages));
}

}  // namespace

TEST_CASE("regular bimodule") {
  const StarProduct s = moyal(T2, PI, N);
  const BimoduleDeformation b = regular_bimodule(s);
  CHECK(all_pass(check_bimodule_relations(b)));
  CHECK(semiclassical_limit(b).alpha.is_zero());
  CHECK(deform_in_direction(s, ContravariantConnection::canonical(T2)).right == b.right);
}

TEST_CASE("perturbed right action fails") {
  BimoduleDeformation b = regular_bimodule(moyal(T2, PI, N));
  b.right[0].add_term({0, 0}, {2, 0}, Element::constant(T2, 1));
  const auto reps = check_bimodule_relations(b);
  CHECK(reps[0].pass);
  CHECK_FALSE(reps[1].pass);
  CHECK(reps[1].order == 1);
  CHECK(reps[1].witness.size() == 3);
}

TEST_CASE("deformation in a Poisson direction") {
  const StarProduct s = moyal(T2, PI, N);
  const ContravariantConnection d(d2(qi(1)));
  const BimoduleDeformation b = deform_in_direction(s, d);
  CHECK(all_pass(check_bimodule_relations(b)));
  CHECK(semiclassical_limit(b).alpha == d.alpha);

  const ContravariantConnection h(DiffOperator::field(T2, {E(0, 1), Element(T2)}) + d2(3));
  CHECK(semiclassical_limit(deform_in_direction(s, h)).alpha == h.alpha);

  CHECK_THROWS_AS(deform_in_direction(s, ContravariantConnection(DiffOperator::field(T2, {E(1, 0), Element(T2)}))),
                  NotQuantizable);
}

TEST_CASE("twisting the left action") {
  const StarProduct s = moyal(T2, PI, N);
  const BimoduleDeformation b = regular_bimodule(s);
  CHECK(twist_bimodule(b, Equivalence::identity(T2, N)).left == b.left);

  const Equivalence t = shift_along(d2(), N);
  const BimoduleDeformation tb = twist_bimodule(b, t);
  CHECK(all_pass(check_bimodule_relations(tb)));
  CHECK(semiclassical_limit(tb).alpha == d2(qi(1)));
  CHECK(semiclassical_limit(tb).alpha == semiclassical_limit(b).alpha - star_first_order(t));
  CHECK(twist_bimodule(tb, t.inverse()).left == b.left);

  const BimoduleDeformation ad = twist_bimodule(b, adjoint_equivalence(s, FormalSeries::constant(E(1, 0), N)));
  CHECK(semiclassical_limit(ad).alpha == d2(qi(-1)));

  CHECK_THROWS_AS(twist_bimodule(b, shift_along(DiffOperator::field(T2, {E(1, 0), Element(T2)}), N)),
                  NotAnEquivalence);
}

TEST_CASE("curvature matches tau between the two products") {
  const StarProduct s = moyal(T2, PI, N);
  const DiffOperator second = d2().compose(d2()) + DiffOperator::partial(T2, 0).compose(d2());
  std::vector<DiffOperator> stages(N + 1, DiffOperator(T2));
  stages[2] = second;
  const Equivalence t = exp_derivation(FormalDerivation(T2, stages));
  const BimoduleDeformation b = transport_bimodule(deform_in_direction(s, ContravariantConnection(d2(qi(1)))), t);
  CHECK(all_pass(check_bimodule_relations(b)));
  const BidiffCochain curv = curvature(semiclassical_limit(b), PI);
  CHECK((curv + compute_tau(b.left_product, b.right_product)).is_zero());
}

TEST_CASE("moduli of quantizations") {
  const StarProduct s = moyal(T2, PI, N);
  const ModuliDescriptor m = moduli_descriptor(s, ContravariantConnection::canonical(T2));
  CHECK(m.dimensions == std::vector<int>(N + 1, 2));
  CHECK(moduli_descriptor(s, ContravariantConnection(d2(qi(1)))).dimensions == m.dimensions);
  CHECK(moduli_descriptor(moyal(R2, PI, N), ContravariantConnection::canonical(R2)).dimensions ==
        std::vector<int>(N + 1, 0));
  CHECK_THROWS_AS(moduli_descriptor(moyal(T2, PoissonStructure(RatMatrix(2, 2)), N),
                                    ContravariantConnection::canonical(T2)),
                  UnsupportedModel);
}
