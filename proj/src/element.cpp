#include "dqw/element.hpp"

#include <algorithm>
#include <numeric>

namespace dqw {

int degree(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

MultiIndex unit_index(int dim, int j) {
  MultiIndex a(dim, 0);
  a.at(j) = 1;
  return a;
}

std::string Model::str() const {
  return (is_torus() ? "torus" : "plane") + std::to_string(dim);
}

void require_same_model(const Model& a, const Model& b) {
  if (!(a == b)) throw ModelMismatch("model " + a.str() + " vs " + b.str());
}

Element Element::constant(const Model& model, const Gaussian& c) {
  Element e(model);
  e.add_term(Exponent(model.dim, 0), c);
  return e;
}

Element Element::monomial(const Model& model, const Exponent& key, const Gaussian& c) {
  if (static_cast<int>(key.size()) != model.dim)
    throw DimensionMismatch("exponent of length " + std::to_string(key.size()) + " on " +
                            model.str());
  if (model.is_plane())
    for (int a : key)
      if (a < 0) throw DimensionMismatch("negative polynomial exponent");
  Element e(model);
  e.add_term(key, c);
  return e;
}

Element Element::variable(const Model& model, int j) {
  if (!model.is_plane()) throw ModelMismatch("coordinate variables need a plane model");
  if (j < 0 || j >= model.dim) throw IndexOutOfRange("variable index " + std::to_string(j + 1));
  return monomial(model, unit_index(model.dim, j));
}

bool Element::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && degree(terms_.begin()->first) == 0 &&
          std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                      [](int e) { return e == 0; }));
}

Gaussian Element::coefficient(const Exponent& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Gaussian() : it->second;
}

Gaussian Element::constant_part() const { return coefficient(Exponent(model_.dim, 0)); }

void Element::add_term(const Exponent& key, const Gaussian& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Element Element::derive(int j) const {
  if (j < 0 || j >= model_.dim)
    throw IndexOutOfRange("derivative direction " + std::to_string(j + 1) + " on " +
                          model_.str());
  Element out(model_);
  for (const auto& [key, c] : terms_) {
    if (key[j] == 0) continue;
    if (model_.is_torus()) {
      out.terms_.emplace(key, c * Gaussian(Rational(0), Rational(key[j])));
    } else {
      Exponent lowered = key;
      --lowered[j];
      out.add_term(lowered, c * Gaussian(key[j]));
    }
  }
  return out;
}

Element Element::derive(const MultiIndex& alpha) const {
  Element out = *this;
  for (int j = 0; j < static_cast<int>(alpha.size()); ++j)
    for (int e = 0; e < alpha[j]; ++e) out = out.derive(j);
  return out;
}

bool Element::is_unit() const {
  if (terms_.size() != 1) return false;
  if (model_.is_torus()) return true;
  return is_constant();
}

Element Element::inverse() const {
  if (terms_.empty()) throw NotAUnit("zero is not invertible");
  if (terms_.size() != 1)
    throw NotAUnit(str() + " has " + std::to_string(terms_.size()) +
                   " terms; only single monomials are units");
  const auto& [key, c] = *terms_.begin();
  if (model_.is_plane() && !is_constant())
    throw NotAUnit(str() + " is a non-constant polynomial");
  Exponent neg = key;
  for (int& e : neg) e = -e;
  return monomial(model_, neg, c.inverse());
}

Element Element::operator-() const {
  Element out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

Element& Element::operator+=(const Element& o) {
  if (model_.dim == 0 && terms_.empty()) model_ = o.model_;
  require_same_model(model_, o.model_);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  if (model_.dim == 0 && terms_.empty()) model_ = o.model_;
  require_same_model(model_, o.model_);
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

Element& Element::operator*=(const Gaussian& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

Element operator*(const Element& a, const Element& b) {
  require_same_model(a.model_, b.model_);
  Element out(a.model_);
  Exponent key(a.model_.dim);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      for (int j = 0; j < a.model_.dim; ++j) key[j] = ka[j] + kb[j];
      out.add_term(key, ca * cb);
    }
  return out;
}

std::string monomial_str(const Model& model, const Exponent& key) {
  if (model.is_torus()) {
    if (std::all_of(key.begin(), key.end(), [](int e) { return e == 0; })) return "";
    std::string out = "E[";
    for (std::size_t j = 0; j < key.size(); ++j)
      out += (j ? "," : "") + std::to_string(key[j]);
    return out + "]";
  }
  std::string out;
  for (std::size_t j = 0; j < key.size(); ++j) {
    if (key[j] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(j + 1);
    if (key[j] > 1) out += "^" + std::to_string(key[j]);
  }
  return out;
}

namespace {

// A coefficient prints with a leading '-' when its only nonzero part is negative.
bool is_negative(const Gaussian& c) {
  if (c.is_real()) return sgn(c.re()) < 0;
  if (sgn(c.re()) == 0) return sgn(c.im()) < 0;
  return false;
}

}  // namespace

std::string Element::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, c0] : terms_) {
    const bool neg = is_negative(c0);
    const Gaussian c = neg ? -c0 : c0;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    const std::string mono = monomial_str(model_, key);
    if (mono.empty())
      out += c.str();
    else if (c.is_one())
      out += mono;
    else
      out += c.str() + "*" + mono;
  }
  return out;
}

PoissonStructure::PoissonStructure(RatMatrix matrix) : matrix_(std::move(matrix)) {
  if (!matrix_.is_square() || !matrix_.is_antisymmetric())
    throw DimensionMismatch("Poisson matrix must be square and antisymmetric: " +
                            matrix_.str());
}

bool PoissonStructure::is_symplectic() const {
  return dim() > 0 && sgn(matrix_.determinant()) != 0;
}

}  // namespace dqw
