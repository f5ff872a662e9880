#include "dqw/generic.hpp"

namespace dqw {

Generic Generic::generator(const Model& model, int slot) {
  if (slot < 0 || slot >= kGenericSlots) throw IndexOutOfRange("generic slot");
  Generic g(model);
  Key key{Exponent(model.dim, 0), {}};
  key.mask[slot] = 1;
  g.add_term(key, SymPoly::constant(g.nvars(), 1));
  return g;
}

Generic Generic::lift(const Element& e) {
  Generic g(e.model());
  for (const auto& [k, c] : e.terms()) g.add_term(Key{k, {}}, SymPoly::constant(g.nvars(), c));
  return g;
}

void Generic::add_term(const Key& key, const SymPoly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, p);
  if (!inserted) {
    it->second += p;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Generic Generic::derive(int j) const {
  if (j < 0 || j >= model_.dim) throw IndexOutOfRange("derivative direction");
  Generic out(model_);
  const int n = nvars();
  for (const auto& [key, p] : terms_) {
    // Symbolic part of the exponent in direction j.
    SymPoly linear(n);
    for (int s = 0; s < kGenericSlots; ++s)
      if (key.mask[s] != 0) linear.add_term(unit_index(n, symbol(s, j)), key.mask[s]);
    if (model_.is_torus()) {
      if (key.shift[j] != 0) linear.add_term(Monomial(n, 0), key.shift[j]);
      if (!linear.is_zero()) out.add_term(key, (linear * p) * Gaussian::i());
    } else {
      if (key.shift[j] > 0) {
        Key lowered = key;
        --lowered.shift[j];
        out.add_term(lowered, p * Gaussian(key.shift[j]));
      }
      if (!linear.is_zero()) out.add_term(key, linear * p);
    }
  }
  return out;
}

Generic Generic::operator-() const {
  Generic out = *this;
  for (auto& [k, p] : out.terms_) p *= Gaussian(-1);
  return out;
}

Generic& Generic::operator+=(const Generic& o) {
  if (model_.dim == 0 && terms_.empty()) model_ = o.model_;
  require_same_model(model_, o.model_);
  for (const auto& [k, p] : o.terms_) add_term(k, p);
  return *this;
}

Generic& Generic::operator-=(const Generic& o) {
  if (model_.dim == 0 && terms_.empty()) model_ = o.model_;
  require_same_model(model_, o.model_);
  for (const auto& [k, p] : o.terms_) add_term(k, p * Gaussian(-1));
  return *this;
}

Generic& Generic::operator*=(const Gaussian& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, p] : terms_) p *= c;
  return *this;
}

Generic operator*(const Generic& a, const Generic& b) {
  require_same_model(a.model_, b.model_);
  Generic out(a.model_);
  Generic::Key key{Exponent(a.model_.dim), {}};
  for (const auto& [ka, pa] : a.terms_)
    for (const auto& [kb, pb] : b.terms_) {
      for (int j = 0; j < a.model_.dim; ++j) key.shift[j] = ka.shift[j] + kb.shift[j];
      for (int s = 0; s < kGenericSlots; ++s) key.mask[s] = ka.mask[s] + kb.mask[s];
      out.add_term(key, pa * pb);
    }
  return out;
}

std::string Generic::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::string> names;
  for (int s = 0; s < kGenericSlots; ++s)
    for (int j = 0; j < model_.dim; ++j)
      names.push_back(std::string(1, static_cast<char>('k' + s)) + std::to_string(j + 1));
  std::string out;
  for (const auto& [key, p] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + p.str(names) + ")";
    const std::string mono = monomial_str(model_, key.shift);
    if (!mono.empty()) out += "*" + mono;
    for (int s = 0; s < kGenericSlots; ++s)
      if (key.mask[s] != 0)
        out += "*g" + std::to_string(s) + (key.mask[s] > 1 ? "^" + std::to_string(key.mask[s]) : "");
  }
  return out;
}

}  // namespace dqw
