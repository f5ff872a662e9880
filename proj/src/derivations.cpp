#include "dqw/derivations.hpp"

#include <type_traits>

namespace dqw {

namespace {

using OperatorSeries = std::vector<DiffOperator>;

// (a * b)_r = sum_{p+q=r} a_p o b_q, truncated to the shorter length.
OperatorSeries compose_series(const OperatorSeries& a, const OperatorSeries& b, const Model& model) {
  const std::size_t n = std::min(a.size(), b.size());
  OperatorSeries out(n, DiffOperator(model));
  for (std::size_t p = 0; p < n; ++p) {
    if (a[p].is_zero()) continue;
    for (std::size_t q = 0; p + q < n; ++q)
      if (!b[q].is_zero()) out[p + q] += a[p].compose(b[q]);
  }
  return out;
}

bool is_zero_series(const OperatorSeries& s) {
  for (const auto& op : s)
    if (!op.is_zero()) return false;
  return true;
}

RatMatrix transposed_inverse(const PoissonStructure& pi) {
  if (!pi.is_symplectic())
    throw UnsupportedModel("needs a symplectic constant bracket, got " + pi.matrix().str());
  return pi.matrix().transpose().inverse();
}

std::vector<Element> apply_matrix(const RatMatrix& m, const std::vector<Element>& v,
                                  const Model& model) {
  std::vector<Element> out(m.rows(), Element(model));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) out[i] += v[j] * Gaussian(m(i, j));
  return out;
}

std::vector<Element> field_components(const DiffOperator& x) {
  std::vector<Element> v;
  for (int j = 0; j < x.model().dim; ++j) v.push_back(x.component(j));
  return v;
}

}  // namespace

std::string vector_str(const std::vector<Gaussian>& v) {
  std::string out = "(";
  for (std::size_t j = 0; j < v.size(); ++j) out += (j ? "," : "") + v[j].str();
  return out + ")";
}

FormalDerivation::FormalDerivation(Model model, std::vector<DiffOperator> stages)
    : model_(model), stages_(std::move(stages)) {
  for (std::size_t r = 0; r < stages_.size(); ++r) {
    if (stages_[r].is_zero()) {
      stages_[r] = DiffOperator(model_);
      continue;
    }
    require_same_model(model_, stages_[r].model());
    if (!stages_[r].kills_constants())
      throw NotADerivation("stage " + std::to_string(r) + " = " + stages_[r].str() +
                           " has a zeroth-order term");
  }
}

FormalDerivation FormalDerivation::zero(const Model& model, int order) {
  return FormalDerivation(model, std::vector<DiffOperator>(order + 1, DiffOperator(model)));
}

FormalDerivation FormalDerivation::constant(const DiffOperator& op, int order) {
  std::vector<DiffOperator> stages(order + 1, DiffOperator(op.model()));
  stages[0] = op;
  return FormalDerivation(op.model(), std::move(stages));
}

bool FormalDerivation::is_zero() const { return is_zero_series(stages_); }

FormalDerivation FormalDerivation::shifted(int k) const {
  std::vector<DiffOperator> out(stages_.size() + k, DiffOperator(model_));
  for (std::size_t r = 0; r < stages_.size(); ++r) out[r + k] = stages_[r];
  return FormalDerivation(model_, std::move(out));
}

FormalDerivation FormalDerivation::resized(int order) const {
  std::vector<DiffOperator> out(order + 1, DiffOperator(model_));
  for (int r = 0; r <= std::min(order, this->order()); ++r) out[r] = stages_[r];
  return FormalDerivation(model_, std::move(out));
}

FormalDerivation FormalDerivation::operator-() const {
  FormalDerivation out = *this;
  for (auto& op : out.stages_) op = -op;
  return out;
}

FormalDerivation& FormalDerivation::operator+=(const FormalDerivation& o) {
  require_same_model(model_, o.model_);
  if (o.stages_.size() < stages_.size()) stages_.resize(o.stages_.size());
  for (std::size_t r = 0; r < stages_.size(); ++r) stages_[r] += o.stages_[r];
  return *this;
}

FormalDerivation& FormalDerivation::operator-=(const FormalDerivation& o) {
  require_same_model(model_, o.model_);
  if (o.stages_.size() < stages_.size()) stages_.resize(o.stages_.size());
  for (std::size_t r = 0; r < stages_.size(); ++r) stages_[r] -= o.stages_[r];
  return *this;
}

FormalDerivation& FormalDerivation::operator*=(const Gaussian& c) {
  for (auto& op : stages_) op *= c;
  return *this;
}

std::string FormalDerivation::str() const {
  std::string out;
  for (std::size_t r = 0; r < stages_.size(); ++r) {
    if (stages_[r].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (r == 0)
      out += stages_[r].str();
    else
      out += "L" + (r > 1 ? "^" + std::to_string(r) : std::string()) + "*(" + stages_[r].str() +
             ")";
  }
  return out.empty() ? "0" : out;
}

ClosedOneForm::ClosedOneForm(Model m, std::vector<Gaussian> c, Element g)
    : model(m), constant(std::move(c)), potential(std::move(g)) {
  if (static_cast<int>(constant.size()) != model.dim)
    throw DimensionMismatch("one-form with " + std::to_string(constant.size()) +
                            " constants on " + model.str());
  if (potential.is_zero()) potential = Element(model);
  require_same_model(model, potential.model());
  // Mean-free potential.
  potential.add_term(Exponent(model.dim, 0), -potential.constant_part());
}

ClosedOneForm ClosedOneForm::zero(const Model& m) {
  return ClosedOneForm(m, std::vector<Gaussian>(m.dim), Element(m));
}

std::vector<Element> ClosedOneForm::components() const {
  std::vector<Element> out;
  for (int j = 0; j < model.dim; ++j)
    out.push_back(Element::constant(model, constant[j]) + potential.derive(j));
  return out;
}

bool ClosedOneForm::is_zero() const { return is_exact() && potential.is_zero(); }

bool ClosedOneForm::is_exact() const {
  for (const auto& c : constant)
    if (!c.is_zero()) return false;
  return true;
}

std::string ClosedOneForm::str() const {
  return vector_str(constant) + ";g=" + potential.str();
}

ClosedOneForm integrate_closed_form(const Model& model, const std::vector<Element>& comps) {
  if (static_cast<int>(comps.size()) != model.dim)
    throw DimensionMismatch("one-form with " + std::to_string(comps.size()) + " components");
  std::vector<Gaussian> c(model.dim);
  Element g(model);
  if (model.is_torus()) {
    for (int j = 0; j < model.dim; ++j) {
      c[j] = comps[j].constant_part();
      for (const auto& [k, coeff] : comps[j].terms()) {
        int first = 0;
        while (first < model.dim && k[first] == 0) ++first;
        if (first != j) continue;
        g.add_term(k, coeff / Gaussian(Rational(0), Rational(k[j])));
      }
    }
  } else {
    for (int j = 0; j < model.dim; ++j)
      for (const auto& [a, coeff] : comps[j].terms()) {
        Exponent raised = a;
        ++raised[j];
        g.add_term(raised, coeff * Gaussian(make_rational(1, degree(a) + 1)));
      }
  }
  ClosedOneForm out(model, c, g);
  if (out.components() != comps)
    throw NotDecomposable("one-form is not closed");
  return out;
}

CheckReport check_derivation(const StarProduct& s, const FormalDerivation& d) {
  const int n = std::min(s.order(), d.order());
  return verify_identity("derivation", s.model(), 2, [&](const auto& in) {
    using E = typename std::decay_t<decltype(in)>::value_type;
    const auto a = Series<E>::constant(in[0], n);
    const auto b = Series<E>::constant(in[1], n);
    return d.apply(star_multiply(s, a, b)) - star_multiply(s, d.apply(a), b) -
           star_multiply(s, a, d.apply(b));
  });
}

FormalDerivation quasi_inner(const StarProduct& s, const FormalSeries& h) {
  const StarProduct sx = s.bivector_series() ? s.with_order(s.order() + 1) : s;
  const int m = sx.order();
  const auto g = GenericSeries::constant(Generic::generator(s.model(), 0), m);
  const GenericSeries comm = star_commutator(sx, lift(h.resized(m)), g);
  if (!comm[0].is_zero()) throw InternalError("commutator has a classical part");
  std::vector<DiffOperator> stages;
  for (int r = 0; r < m; ++r) stages.push_back(extract_operator(comm[r + 1], 0) * Gaussian::i());
  return FormalDerivation(s.model(), std::move(stages));
}

FormalDerivation delta_one_form(const StarProduct& s, const ClosedOneForm& a) {
  if (!s.is_unital()) throw UnitalityError("delta needs cochains that kill constants");
  require_same_model(s.model(), a.model);
  const Model& model = s.model();
  const int n = s.order();
  std::vector<DiffOperator> stages(n + 1, DiffOperator(model));
  for (int r = 1; r <= n; ++r)
    for (const auto& [key, coeff] : s.cochain(r).terms())
      for (int j = 0; j < model.dim; ++j) {
        if (a.constant[j].is_zero()) continue;
        const MultiIndex e = unit_index(model.dim, j);
        if (key.first == e) stages[r].add_term(key.second, coeff * a.constant[j]);
        if (key.second == e) stages[r].add_term(key.first, -(coeff * a.constant[j]));
      }
  if (!a.potential.is_zero()) {
    const auto g = GenericSeries::constant(Generic::generator(model, 0), n);
    const auto pot = GenericSeries::constant(Generic::lift(a.potential), n);
    const GenericSeries comm = star_commutator(s, pot, g);
    for (int r = 1; r <= n; ++r) stages[r] += extract_operator(comm[r], 0);
  }
  return FormalDerivation(model, std::move(stages));
}

FormalDerivation delta_one_form(const StarProduct& s, const std::vector<ClosedOneForm>& a) {
  FormalDerivation out = FormalDerivation::zero(s.model(), s.order());
  for (std::size_t r = 0; r < a.size() && static_cast<int>(r) <= s.order(); ++r)
    if (!a[r].is_zero()) out += delta_one_form(s, a[r]).shifted(static_cast<int>(r));
  return out;
}

FormalDerivation derivation_commutator(const FormalDerivation& a, const FormalDerivation& b) {
  require_same_model(a.model(), b.model());
  const OperatorSeries ab = compose_series(a.stages(), b.stages(), a.model());
  const OperatorSeries ba = compose_series(b.stages(), a.stages(), a.model());
  OperatorSeries out(ab.size(), DiffOperator(a.model()));
  for (std::size_t r = 0; r < ab.size(); ++r) out[r] = ab[r] - ba[r];
  return FormalDerivation(a.model(), std::move(out));
}

Equivalence exp_derivation(const FormalDerivation& d) {
  if (!d.stage(0).is_zero())
    throw NotAnEquivalence("exponential needs a derivation divisible by L");
  const Model& model = d.model();
  const int n = d.order();
  OperatorSeries total(n + 1, DiffOperator(model));
  OperatorSeries power = d.stages();
  for (int k = 1; k <= n && !is_zero_series(power); ++k) {
    for (int r = 0; r <= n; ++r) total[r] += power[r] * Gaussian(inverse_factorial(k));
    power = compose_series(power, d.stages(), model);
  }
  return Equivalence(model, OperatorSeries(total.begin() + 1, total.end()));
}

FormalDerivation log_equivalence(const Equivalence& t) {
  const Model& model = t.model();
  const int n = t.order();
  OperatorSeries x(n + 1, DiffOperator(model));
  for (int r = 1; r <= n; ++r) x[r] = t.stage(r);
  OperatorSeries total(n + 1, DiffOperator(model));
  OperatorSeries power = x;
  for (int k = 1; k <= n && !is_zero_series(power); ++k) {
    const Gaussian c(make_rational(k % 2 == 1 ? 1 : -1, k));
    for (int r = 0; r <= n; ++r) total[r] += power[r] * c;
    power = compose_series(power, x, model);
  }
  return FormalDerivation(model, std::move(total));
}

InnerForm inner_to_one_form(const StarProduct& s, const FormalSeries& u) {
  const Model& model = s.model();
  const RatMatrix lower = transposed_inverse(extract_poisson(s));
  const int n = s.order();
  const Equivalence ad = adjoint_equivalence(s, u.resized(n));
  const FormalDerivation d = log_equivalence(ad);
  InnerForm out;
  FormalDerivation delta = FormalDerivation::zero(model, n);
  for (int r = 0; r < n; ++r) {
    const DiffOperator next = (d - delta).stage(r + 1);
    if (!next.is_first_order_field())
      throw InternalError("log Ad(u) has a higher-order part at order " + std::to_string(r + 1));
    std::vector<Element> a = apply_matrix(lower, field_components(next), model);
    for (auto& e : a) e *= -Gaussian::i();
    out.forms.push_back(integrate_closed_form(model, a));
    delta += delta_one_form(s, out.forms.back()).shifted(r);
  }
  const bool matches_log = (d - delta).is_zero();
  out.verified = matches_log && exp_derivation(delta) == ad;
  out.integral = true;
  if (!out.forms.empty())
    for (const auto& c : out.forms[0].constant)
      if (sgn(c.re()) != 0 || c.im().get_den() != 1) out.integral = false;
  out.higher_exact = true;
  for (std::size_t r = 1; r < out.forms.size(); ++r)
    if (!out.forms[r].is_exact()) out.higher_exact = false;
  return out;
}

CheckReport is_central(const StarProduct& s, const FormalSeries& f) {
  const int n = std::min(s.order(), f.order());
  CheckReport rep = verify_identity("central", s.model(), 1, [&](const auto& in) {
    using E = typename std::decay_t<decltype(in)>::value_type;
    const auto g = Series<E>::constant(in[0], n);
    if constexpr (std::is_same_v<E, Element>) {
      return star_commutator(s, f.resized(n), g);
    } else {
      return star_commutator(s, lift(f.resized(n)), g);
    }
  });
  return rep;
}

FormalDerivation rho_one(const StarProduct& s, const DiffOperator& x) {
  const Model& model = s.model();
  require_same_model(model, x.model());
  const PoissonStructure pi = extract_poisson(s);
  CheckReport poisson;
  try {
    poisson = is_poisson_vector_field(x, pi);
  } catch (const NotADerivation& e) {
    throw NotPoisson(e.what());
  }
  if (!poisson.pass)
    throw NotPoisson(x.str() + " is not a Poisson vector field");
  std::vector<Element> comps = field_components(x);
  std::vector<Element> constant_part(model.dim, Element(model));
  if (model.is_torus())
    for (int j = 0; j < model.dim; ++j) {
      constant_part[j] = Element::constant(model, comps[j].constant_part());
      comps[j] -= constant_part[j];
    }
  const DiffOperator xc = DiffOperator::field(model, constant_part);
  bool hamiltonian_zero = true;
  for (const auto& c : comps)
    if (!c.is_zero()) hamiltonian_zero = false;
  if (hamiltonian_zero) return FormalDerivation::constant(xc, s.order());
  if (!pi.is_symplectic())
    throw NotDecomposable("Hamiltonian part of " + x.str() + " needs a symplectic bracket");
  const ClosedOneForm dh = integrate_closed_form(model, apply_matrix(pi.matrix().inverse(), comps, model));
  if (!dh.is_exact()) throw InternalError("Hamiltonian part has a harmonic component");
  FormalDerivation q = quasi_inner(s, FormalSeries::constant(dh.potential, s.order()));
  FormalDerivation out = FormalDerivation::constant(xc, q.order()) + q;
  if (!(out.stage(0) == x)) throw InternalError("rho_1 does not restrict to the field");
  return out;
}

OuterClass outer_class(const StarProduct& s, const FormalDerivation& d) {
  const Model& model = s.model();
  if (!model.is_torus()) throw UnsupportedModel("outer classes are computed on the torus");
  const PoissonStructure pi = extract_poisson(s);
  const RatMatrix lower = transposed_inverse(pi);
  OuterClass out;
  FormalDerivation rest = d;
  for (int r = 0; r <= rest.order(); ++r) {
    const DiffOperator x = rest.stage(r);
    std::vector<Gaussian> v(model.dim);
    if (!x.is_zero()) {
      if (!x.is_first_order_field())
        throw NotADerivation("stage " + std::to_string(r) + " is not a vector field");
      for (int j = 0; j < model.dim; ++j) v[j] = x.component(j).constant_part();
      const FormalDerivation rho = rho_one(s, x);
      rest = rest.resized(std::min(rest.order(), rho.order() + r));
      rest -= rho.resized(rest.order()).shifted(r);
    }
    for (const auto& c : v)
      if (!c.is_zero()) out.inner = false;
    out.field.push_back(v);
  }
  for (std::size_t r = 0; r + 1 < out.field.size(); ++r) {
    std::vector<Gaussian> a(model.dim);
    for (int i = 0; i < model.dim; ++i)
      for (int j = 0; j < model.dim; ++j)
        a[i] += out.field[r + 1][j] * Gaussian(lower(i, j));
    for (auto& c : a) c *= -Gaussian::i();
    out.form.push_back(a);
  }
  return out;
}

}  // namespace dqw
