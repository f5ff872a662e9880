#include "dqw/starexp.hpp"

namespace dqw {

namespace {

CheckReport series_check(const std::string& name, const FormalSeries& residual) {
  CheckReport rep;
  rep.name = name;
  const int r = residual.valuation();
  if (r < 0) return rep;
  rep.pass = false;
  rep.order = r;
  rep.residual = residual[r].str();
  return rep;
}

FormalSeries one_like(const FormalSeries& f) {
  return FormalSeries::constant(Element::constant(f.model(), 1), f.order());
}

}  // namespace

ExpArgument::ExpArgument(FormalSeries series, long m) : h(std::move(series)), winding(m) {
  if (!h[0].is_zero())
    throw NonzeroClassicalPart("exponent has classical part " + h[0].str());
}

FormalSeries star_exp(const StarProduct& s, const ExpArgument& h, const Rational& t) {
  const FormalSeries th = h.h * Gaussian(t);
  FormalSeries out = one_like(h.h);
  FormalSeries power = out;
  for (int k = 1; k <= h.h.order(); ++k) {
    power = star_multiply(s, th, power) * Gaussian(make_rational(1, k));
    if (power.is_zero()) break;
    out += power;
  }
  return out;
}

ExpArgument star_log(const StarProduct& s, const FormalSeries& u) {
  if (!(u[0] == Element::constant(u.model(), 1)))
    throw NotNormalized("classical part " + u[0].str() + " is not 1");
  const FormalSeries w = u - one_like(u);
  FormalSeries out(u.model(), u.order());
  FormalSeries power = w;
  for (int k = 1; k <= u.order(); ++k) {
    const Gaussian c(make_rational(k % 2 == 1 ? 1 : -1, k));
    out += power * c;
    power = star_multiply(s, power, w);
    if (power.is_zero()) break;
  }
  return ExpArgument(out);
}

Equivalence adjoint_equivalence(const StarProduct& s, const FormalSeries& u) {
  const int n = std::min(s.order(), u.order());
  const auto g = GenericSeries::constant(Generic::generator(s.model(), 0), n);
  const GenericSeries image = adjoint(s, u.resized(n), g);
  std::vector<DiffOperator> stages;
  for (int r = 1; r <= n; ++r) stages.push_back(extract_operator(image[r], 0));
  return Equivalence(s.model(), std::move(stages));
}

bool ExpReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

ExpReport check_exp_identities(const StarProduct& s, const ExpArgument& h, const ExpArgument& g) {
  ExpReport rep;
  const std::vector<std::pair<Rational, Rational>> samples = {
      {make_rational(1, 2), make_rational(1, 3)}, {1, -1}, {2, make_rational(-1, 2)}};
  FormalSeries group(h.h.model(), h.h.order());
  for (const auto& [t, u] : samples)
    group += star_multiply(s, star_exp(s, h, t), star_exp(s, h, u)) - star_exp(s, h, t + u);
  rep.checks.push_back(series_check("group law", group));

  const FormalSeries e = star_exp(s, h);
  rep.checks.push_back(
      series_check("Exp(H) commutes with H", star_commutator(s, e, h.h)));

  const int n = h.h.order();
  rep.checks.push_back(verify_identity("Ad(Exp H) = exp(ad H)", s.model(), 1, [&](const auto& in) {
    using E = typename std::decay_t<decltype(in)>::value_type;
    const auto f = Series<E>::constant(in[0], n);
    return adjoint(s, e, f) - exp_ad(s, h.h, f);
  }));

  rep.commuting = star_commutator(s, h.h, g.h).is_zero();
  if (rep.commuting) {
    const ExpArgument sum(h.h + g.h);
    rep.checks.push_back(series_check(
        "additivity", star_multiply(s, e, star_exp(s, g)) - star_exp(s, sum)));
  }
  rep.checks.push_back(series_check("log roundtrip", star_log(s, e).h - h.h));
  return rep;
}

}  // namespace dqw
