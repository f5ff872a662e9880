#include <doctest.h>

#include <random>

#include "dqw/classify.hpp"
#include "dqw/errors.hpp"

using namespace dqw;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (long long v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

IntVector vec(std::initializer_list<long long> v) {
  IntVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (long long x : v) out(i++) = x;
  return out;
}

std::vector<Rational> rats(std::initializer_list<Rational> v) { return v; }

ClassSeries cotangent(long long w0) {
  ClassSeries c;
  c.omega = {Rational(0)};
  c.terms = {{Gaussian(static_cast<long>(w0))}, {Gaussian(0)}};
  return c;
}

PicardElement elem(long long psi, long long l) { return {mat({{psi}}), vec({l}), {}}; }

}  // namespace

TEST_CASE("Picard group law") {
  const TorsionGroup none;
  CHECK(picard_multiply(elem(-1, 2), elem(-1, 3), none) == elem(1, 1));
  CHECK(picard_multiply(PicardElement::identity(1, none), elem(-1, 5), none) == elem(-1, 5));

  const TorsionGroup t({2, 4});
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> k(-3, 3);
  const std::vector<IntMatrix> gl = {mat({{1, 1}, {0, 1}}), mat({{0, -1}, {1, 0}}), mat({{2, 1}, {1, 1}})};
  for (int n = 0; n < 10; ++n) {
    const PicardElement x{gl[n % 3], vec({k(rng), k(rng)}), {n % 2, n % 4}};
    CHECK(picard_multiply(x, picard_inverse(x, t), t) == PicardElement::identity(2, t));
    CHECK(picard_multiply(picard_inverse(x, t), x, t) == PicardElement::identity(2, t));
  }
}

TEST_CASE("pullback and translation of classes") {
  ClassSeries c = cotangent(3);
  c.omega = {Rational(7)};
  CHECK(class_pullback(c, mat({{1}})) == c);
  const ClassSeries flipped = class_pullback(c, mat({{-1}}));
  CHECK(flipped.omega == rats({Rational(-7)}));
  CHECK(flipped.terms[0] == std::vector<Gaussian>{Gaussian(-3)});
  CHECK(class_pullback(flipped, mat({{-1}})) == c);
  CHECK_THROWS_AS(class_pullback(c, mat({{2}})), NotAnAutomorphism);

  CHECK(picard_act(c, vec({0})) == c);
  CHECK(picard_act(c, vec({2})).terms[0] == std::vector<Gaussian>{Gaussian(5)});
  CHECK(picard_act(picard_act(c, vec({4})), vec({-4})) == c);
  ClassSeries raw = c;
  raw.reduced = false;
  CHECK_THROWS_AS(picard_act(raw, vec({1})), NotReduced);

  ClassSeries c2;
  c2.omega = {Rational(1), Rational(-2)};
  c2.terms = {{Gaussian(1), Gaussian(make_rational(1, 2))}, {Gaussian(3), Gaussian(0)}};
  const IntMatrix psi = mat({{2, 1}, {1, 1}});
  const IntVector l = vec({3, -1});
  CHECK(class_pullback(picard_act(c2, l), psi) == picard_act(class_pullback(c2, psi), psi * l));
}

TEST_CASE("groups and torsion") {
  CHECK(LatticeGroup(1, {mat({{-1}})}).elements().size() == 2);
  CHECK(LatticeGroup(2, {mat({{0, -1}, {1, 0}})}).elements().size() == 4);
  CHECK(LatticeGroup(2, {mat({{0, -1}, {1, 0}})}).elements().front() == IntMatrix::Identity(2, 2));
  CHECK_THROWS_AS(LatticeGroup(2, {mat({{1, 1}, {0, 1}})}, 50), CapExceeded);
  CHECK_THROWS_AS(LatticeGroup(1, {mat({{2}})}), NotAnAutomorphism);

  const TorsionGroup t({2, 4});
  CHECK(t.elements().size() == 8);
  CHECK(t.add({1, 3}, {1, 2}) == std::vector<long long>{0, 1});
  CHECK(t.negate({1, 1}) == std::vector<long long>{1, 3});
  CHECK_THROWS_AS(TorsionGroup({4, 2}), SchemaError);
  CHECK_THROWS_AS(TorsionGroup({1}), SchemaError);
}

TEST_CASE("image of the reduced class map") {
  const LatticeGroup pm(1, {mat({{-1}})});
  const std::set<PicardClass> img = image_clr(cotangent(3), pm, TorsionGroup());
  REQUIRE(img.size() == 2);
  CHECK(img.count(PicardClass{vec({0}), {}}));
  CHECK(img.count(PicardClass{vec({-6}), {}}));

  CHECK(image_clr(cotangent(3), LatticeGroup(1, {}), TorsionGroup()).size() == 1);

  const TorsionGroup t({3});
  const std::set<PicardClass> flat = image_clr(cotangent(0), pm, t);
  CHECK(flat.size() == 3);
  for (const auto& p : flat) CHECK(p.free == vec({0}));

  ClassSeries moving = cotangent(0);
  moving.terms[1][0] = Gaussian(1);
  CHECK(image_clr(moving, pm, TorsionGroup()).size() == 1);
}

TEST_CASE("image of the class map") {
  const LatticeGroup pm(1, {mat({{-1}})});
  const TorsionGroup t({2});
  const auto trivial = image_cl(cotangent(0), pm, t);
  CHECK(trivial.size() == 4);
  CHECK(is_group_closed(trivial, t));

  const auto cot = image_cl(cotangent(3), pm, TorsionGroup());
  CHECK(cot == std::set<PicardElement>{elem(1, 0), elem(-1, -6)});
  CHECK(is_group_closed(cot, TorsionGroup()));

  const auto only = image_cl(cotangent(3), LatticeGroup(1, {}), t);
  CHECK(only.size() == 2);
  for (const auto& e : only) CHECK(e.psi == mat({{1}}));
  CHECK_FALSE(is_group_closed({elem(-1, 1)}, TorsionGroup()));
}

TEST_CASE("kernel of the class map") {
  const KernelDescriptor k = kernel_descriptor(true, 2, true, 3);
  CHECK(k.quotient_rank == 2);
  CHECK(k.lattice_rank == 2);
  CHECK(k.higher == std::vector<int>{2, 2, 2});
  CHECK_FALSE(k.injective());
  CHECK(kernel_descriptor(false, 4, true, 3).injective());
  CHECK_THROWS_AS(kernel_descriptor(true, 2, false, 3), UnsupportedModel);

  const Gaussian i = Gaussian::i();
  CHECK(kernel_coset_equal({i, 0}, {i + i, 0}, 0));
  CHECK_FALSE(kernel_coset_equal({i * Gaussian(make_rational(1, 2)), 0}, {0, 0}, 0));
  CHECK_FALSE(kernel_coset_equal({i, 0}, {i + i, 0}, 1));
}

TEST_CASE("non-surjectivity witnesses") {
  const auto v = ExtendedRationalVector::rational({make_rational(1, 2), make_rational(1, 3)});
  const WitnessCertificate c = witness_nonsurjective(v);
  CHECK(c.kind == CertificateKind::Prime);
  CHECK(c.p == 5);
  CHECK(c.l == vec({2, 3}));
  CHECK(certificate_valid(v, c));
  for (int bound = 1; bound <= 6; ++bound) CHECK_FALSE(brute_force_orbit_check(v, {Rational(2), Rational(3)}, bound));

  ExtendedRationalVector sym;
  sym.coords = {{make_rational(1, 2), make_rational(1, 3)}, {Rational(0), Rational(0)}};
  const WitnessCertificate cs = witness_nonsurjective(sym);
  CHECK(cs.kind == CertificateKind::Prime);
  CHECK(cs.p == 3);
  CHECK(certificate_valid(sym, cs));
  for (int bound = 1; bound <= 3; ++bound) {
    std::vector<Rational> l;
    for (Eigen::Index j = 0; j < cs.l.size(); ++j) l.emplace_back(static_cast<long>(cs.l(j)));
    CHECK_FALSE(brute_force_orbit_check(sym, l, bound));
  }

  const auto zero = witness_nonsurjective(ExtendedRationalVector::rational({0, 0, 0}));
  CHECK(zero.kind == CertificateKind::Zero);
  CHECK(zero.l == vec({1, 0, 0}));
  const auto integral = witness_nonsurjective(ExtendedRationalVector::rational({2, -4}));
  CHECK(integral.kind == CertificateKind::Integral);
  CHECK(integral.l == vec({2, -4}));
  CHECK_THROWS_AS(witness_nonsurjective(ExtendedRationalVector{}), ZeroRank);

  WitnessCertificate forged = c;
  forged.l = vec({1, 1});
  CHECK_FALSE(certificate_valid(v, forged));
}

TEST_CASE("orbit brute force") {
  const std::vector<Rational> v{make_rational(1, 2), make_rational(1, 3)};
  // A0 = [[1,1],[0,1]] planted: A0 v - v = (1/3, 0).
  CHECK(brute_force_orbit_check(v, {make_rational(1, 3), Rational(0)}, 2));
  CHECK(brute_force_orbit_check(std::vector<Rational>{0, 0}, {0, 0}, 1));
  CHECK_FALSE(brute_force_orbit_check(std::vector<Rational>{0, 0}, {1, 0}, 3));
}
