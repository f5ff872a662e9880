#pragma once

#include <map>
#include <string>
#include <utility>

#include "dqw/element.hpp"
#include "dqw/generic.hpp"

namespace dqw {

/// Memoized partial derivatives of one input.
template <class E>
class DerivativeCache {
 public:
  explicit DerivativeCache(E f) : base_(std::move(f)) {}

  const E& base() const { return base_; }
  const E& get(const MultiIndex& alpha) {
    int j = static_cast<int>(alpha.size()) - 1;
    while (j >= 0 && alpha[j] == 0) --j;
    if (j < 0) return base_;
    auto it = memo_.find(alpha);
    if (it != memo_.end()) return it->second;
    MultiIndex lower = alpha;
    --lower[j];
    E d = get(lower).derive(j);
    return memo_.emplace(alpha, std::move(d)).first->second;
  }

 private:
  E base_;
  std::map<MultiIndex, E> memo_;
};

/// c * x with c a concrete coefficient; constants stay scalars.
template <class E>
E scale_by(const Element& c, const E& x) {
  if (c.is_constant()) return x * c.constant_part();
  return E::lift(c) * x;
}

/// f -> sum coeff * d^alpha f.
class DiffOperator {
 public:
  using Terms = std::map<MultiIndex, Element>;

  DiffOperator() = default;
  explicit DiffOperator(Model model) : model_(model) {}
  static DiffOperator identity(const Model& model);
  /// Constant coefficient c * d_j.
  static DiffOperator partial(const Model& model, int j, const Gaussian& c = 1);
  /// Vector field sum v_j d_j.
  static DiffOperator field(const Model& model, const std::vector<Element>& v);

  const Model& model() const { return model_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int order() const;
  /// No zeroth-order term.
  bool kills_constants() const;
  bool is_first_order_field() const;
  /// Coefficient of d_j (zero when absent).
  Element component(int j) const;
  Element coefficient(const MultiIndex& alpha) const;

  void add_term(const MultiIndex& alpha, const Element& c);

  /// (this o other)(f) = this(other(f)).
  DiffOperator compose(const DiffOperator& other) const;

  DiffOperator operator-() const;
  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  DiffOperator& operator*=(const Gaussian& c);
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
  friend DiffOperator operator*(DiffOperator a, const Gaussian& c) { return a *= c; }
  friend DiffOperator operator*(const Gaussian& c, DiffOperator a) { return a *= c; }
  friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
    return a.model_ == b.model_ && a.terms_ == b.terms_;
  }

  /// `E[1,0]*d1 + i*d2^2`; the zeroth-order term prints as its coefficient.
  std::string str() const;

  template <class E>
  E apply(DerivativeCache<E>& f) const {
    E out(f.base().model());
    for (const auto& [alpha, c] : terms_) {
      const E& d = f.get(alpha);
      if (!d.is_zero()) out += scale_by(c, d);
    }
    return out;
  }
  template <class E>
  E operator()(const E& f) const {
    require_same_model(model_, f.model());
    DerivativeCache<E> cache(f);
    return apply(cache);
  }

 private:
  Model model_;
  Terms terms_;
};

/// (f,g) -> sum coeff * d^left f * d^right g.
class BidiffCochain {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;
  using Terms = std::map<Key, Element>;

  BidiffCochain() = default;
  explicit BidiffCochain(Model model) : model_(model) {}

  const Model& model() const { return model_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int order() const;
  /// No term with an empty left or right index.
  bool kills_constants() const;

  void add_term(const MultiIndex& left, const MultiIndex& right, const Element& c);
  Element coefficient(const MultiIndex& left, const MultiIndex& right) const;

  /// (f,g) -> C(g,f).
  BidiffCochain swapped() const;
  BidiffCochain antisymmetrized() const { return *this - swapped(); }

  BidiffCochain operator-() const;
  BidiffCochain& operator+=(const BidiffCochain& o);
  BidiffCochain& operator-=(const BidiffCochain& o);
  BidiffCochain& operator*=(const Gaussian& c);
  friend BidiffCochain operator+(BidiffCochain a, const BidiffCochain& b) { return a += b; }
  friend BidiffCochain operator-(BidiffCochain a, const BidiffCochain& b) { return a -= b; }
  friend BidiffCochain operator*(BidiffCochain a, const Gaussian& c) { return a *= c; }
  friend BidiffCochain operator*(const Gaussian& c, BidiffCochain a) { return a *= c; }
  friend bool operator==(const BidiffCochain& a, const BidiffCochain& b) {
    return a.model_ == b.model_ && a.terms_ == b.terms_;
  }

  /// `i/2*[1,0]x[0,1] + ...`
  std::string str() const;

  template <class E>
  E apply(DerivativeCache<E>& f, DerivativeCache<E>& g) const {
    E out(f.base().model());
    for (const auto& [key, c] : terms_) {
      const E& df = f.get(key.first);
      if (df.is_zero()) continue;
      const E& dg = g.get(key.second);
      if (dg.is_zero()) continue;
      out += scale_by(c, df * dg);
    }
    return out;
  }
  template <class E>
  E operator()(const E& f, const E& g) const {
    require_same_model(model_, f.model());
    DerivativeCache<E> cf(f), cg(g);
    return apply(cf, cg);
  }

 private:
  Model model_;
  Terms terms_;
};

/// Reads the differential operator f -> X(f) off X applied to the generic
/// monomial of `slot`.
DiffOperator extract_operator(const Generic& image, int slot);
/// Reads the bidifferential operator off C applied to two generic monomials.
BidiffCochain extract_cochain(const Generic& image, int left_slot, int right_slot);

/// `[1,0]`
std::string index_str(const MultiIndex& a);

}  // namespace dqw
