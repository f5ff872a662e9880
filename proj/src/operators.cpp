#include "dqw/operators.hpp"

#include <algorithm>

namespace dqw {

namespace {

bool is_zero_index(const MultiIndex& a) {
  return std::all_of(a.begin(), a.end(), [](int e) { return e == 0; });
}

Rational binomial(int n, int k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

// Enumerates gamma <= alpha componentwise.
template <class F>
void for_each_below(const MultiIndex& alpha, F&& f) {
  MultiIndex g(alpha.size(), 0);
  while (true) {
    f(g);
    std::size_t j = 0;
    while (j < g.size() && g[j] == alpha[j]) g[j++] = 0;
    if (j == g.size()) return;
    ++g[j];
  }
}

Element symbol_coefficient(const Model& model, const Exponent& shift, const Gaussian& c,
                           int total_degree) {
  Gaussian coeff = c;
  if (model.is_torus()) coeff *= Gaussian::i_pow(-total_degree);
  return Element::monomial(model, shift, coeff);
}

}  // namespace

std::string index_str(const MultiIndex& a) {
  std::string out = "[";
  for (std::size_t j = 0; j < a.size(); ++j) out += (j ? "," : "") + std::to_string(a[j]);
  return out + "]";
}

DiffOperator DiffOperator::identity(const Model& model) {
  DiffOperator op(model);
  op.add_term(MultiIndex(model.dim, 0), Element::constant(model, 1));
  return op;
}

DiffOperator DiffOperator::partial(const Model& model, int j, const Gaussian& c) {
  if (j < 0 || j >= model.dim) throw IndexOutOfRange("direction " + std::to_string(j + 1));
  DiffOperator op(model);
  op.add_term(unit_index(model.dim, j), Element::constant(model, c));
  return op;
}

DiffOperator DiffOperator::field(const Model& model, const std::vector<Element>& v) {
  if (static_cast<int>(v.size()) != model.dim)
    throw DimensionMismatch("vector field with " + std::to_string(v.size()) + " components");
  DiffOperator op(model);
  for (int j = 0; j < model.dim; ++j) op.add_term(unit_index(model.dim, j), v[j]);
  return op;
}

int DiffOperator::order() const {
  int o = 0;
  for (const auto& [alpha, c] : terms_) o = std::max(o, degree(alpha));
  return o;
}

bool DiffOperator::kills_constants() const {
  return std::none_of(terms_.begin(), terms_.end(),
                      [](const auto& t) { return is_zero_index(t.first); });
}

bool DiffOperator::is_first_order_field() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return degree(t.first) == 1; });
}

Element DiffOperator::component(int j) const { return coefficient(unit_index(model_.dim, j)); }

Element DiffOperator::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Element(model_) : it->second;
}

void DiffOperator::add_term(const MultiIndex& alpha, const Element& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(alpha.size()) != model_.dim)
    throw DimensionMismatch("multi-index " + index_str(alpha) + " on " + model_.str());
  require_same_model(model_, c.model());
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffOperator DiffOperator::compose(const DiffOperator& other) const {
  require_same_model(model_, other.model_);
  DiffOperator out(model_);
  for (const auto& [alpha, a] : terms_)
    for (const auto& [beta, b] : other.terms_)
      for_each_below(alpha, [&](const MultiIndex& gamma) {
        Element db = b.derive(gamma);
        if (db.is_zero()) return;
        Rational mult = 1;
        MultiIndex total(model_.dim);
        for (int j = 0; j < model_.dim; ++j) {
          mult *= binomial(alpha[j], gamma[j]);
          total[j] = alpha[j] - gamma[j] + beta[j];
        }
        out.add_term(total, (a * db) * Gaussian(mult));
      });
  return out;
}

DiffOperator DiffOperator::operator-() const {
  DiffOperator out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  if (model_.dim == 0 && terms_.empty()) model_ = o.model_;
  require_same_model(model_, o.model_);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) {
  if (model_.dim == 0 && terms_.empty()) model_ = o.model_;
  require_same_model(model_, o.model_);
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

DiffOperator& DiffOperator::operator*=(const Gaussian& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

std::string DiffOperator::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [alpha, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string d;
    for (int j = 0; j < model_.dim; ++j) {
      if (alpha[j] == 0) continue;
      if (!d.empty()) d += "*";
      d += "d" + std::to_string(j + 1);
      if (alpha[j] > 1) d += "^" + std::to_string(alpha[j]);
    }
    const std::string cs = c.str();
    const bool single = c.terms().size() == 1;
    if (d.empty())
      out += single ? cs : "(" + cs + ")";
    else if (c == Element::constant(model_, 1))
      out += d;
    else if (c == Element::constant(model_, -1))
      out += "-" + d;
    else
      out += (single ? cs : "(" + cs + ")") + "*" + d;
  }
  return out;
}

int BidiffCochain::order() const {
  int o = 0;
  for (const auto& [key, c] : terms_) o = std::max(o, degree(key.first) + degree(key.second));
  return o;
}

bool BidiffCochain::kills_constants() const {
  return std::none_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return is_zero_index(t.first.first) || is_zero_index(t.first.second);
  });
}

void BidiffCochain::add_term(const MultiIndex& left, const MultiIndex& right, const Element& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(left.size()) != model_.dim || static_cast<int>(right.size()) != model_.dim)
    throw DimensionMismatch("cochain index " + index_str(left) + "|" + index_str(right) + " on " +
                            model_.str());
  require_same_model(model_, c.model());
  auto [it, inserted] = terms_.try_emplace(Key{left, right}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Element BidiffCochain::coefficient(const MultiIndex& left, const MultiIndex& right) const {
  auto it = terms_.find(Key{left, right});
  return it == terms_.end() ? Element(model_) : it->second;
}

BidiffCochain BidiffCochain::swapped() const {
  BidiffCochain out(model_);
  for (const auto& [key, c] : terms_) out.add_term(key.second, key.first, c);
  return out;
}

BidiffCochain BidiffCochain::operator-() const {
  BidiffCochain out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

BidiffCochain& BidiffCochain::operator+=(const BidiffCochain& o) {
  if (model_.dim == 0 && terms_.empty()) model_ = o.model_;
  require_same_model(model_, o.model_);
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

BidiffCochain& BidiffCochain::operator-=(const BidiffCochain& o) {
  if (model_.dim == 0 && terms_.empty()) model_ = o.model_;
  require_same_model(model_, o.model_);
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

BidiffCochain& BidiffCochain::operator*=(const Gaussian& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

std::string BidiffCochain::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : terms_) {
    if (!out.empty()) out += " + ";
    const std::string cs = c.str();
    out += (c.terms().size() == 1 ? cs : "(" + cs + ")") + "*" + index_str(key.first) + "x" +
           index_str(key.second);
  }
  return out;
}

DiffOperator extract_operator(const Generic& image, int slot) {
  const Model& model = image.model();
  const int dim = model.dim;
  DiffOperator op(model);
  for (const auto& [key, poly] : image.terms()) {
    for (int s = 0; s < kGenericSlots; ++s)
      if (key.mask[s] != (s == slot ? 1 : 0))
        throw InternalError("operator symbol is not linear in its input");
    for (const auto& [mono, c] : poly.terms()) {
      MultiIndex alpha(dim);
      for (int s = 0; s < kGenericSlots; ++s)
        for (int j = 0; j < dim; ++j) {
          const int e = mono[s * dim + j];
          if (s == slot)
            alpha[j] = e;
          else if (e != 0)
            throw InternalError("operator symbol depends on a foreign slot");
        }
      op.add_term(alpha, symbol_coefficient(model, key.shift, c, degree(alpha)));
    }
  }
  return op;
}

BidiffCochain extract_cochain(const Generic& image, int left_slot, int right_slot) {
  const Model& model = image.model();
  const int dim = model.dim;
  BidiffCochain out(model);
  for (const auto& [key, poly] : image.terms()) {
    for (int s = 0; s < kGenericSlots; ++s)
      if (key.mask[s] != (s == left_slot || s == right_slot ? 1 : 0))
        throw InternalError("cochain symbol is not bilinear in its inputs");
    for (const auto& [mono, c] : poly.terms()) {
      MultiIndex left(dim), right(dim);
      for (int s = 0; s < kGenericSlots; ++s)
        for (int j = 0; j < dim; ++j) {
          const int e = mono[s * dim + j];
          if (s == left_slot)
            left[j] = e;
          else if (s == right_slot)
            right[j] = e;
          else if (e != 0)
            throw InternalError("cochain symbol depends on a foreign slot");
        }
      out.add_term(left, right,
                   symbol_coefficient(model, key.shift, c, degree(left) + degree(right)));
    }
  }
  return out;
}

}  // namespace dqw
