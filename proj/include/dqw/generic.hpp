#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>

#include "dqw/element.hpp"
#include "dqw/sympoly.hpp"

namespace dqw {

/// Number of independent generic inputs an identity may consume.
inline constexpr int kGenericSlots = 3;

/// An element built from generic monomials with symbolic exponents.
///
/// Slot s stands for E[y_s] on the torus (y_s a vector of integer symbols) and
/// for exp(y_s . x) on the plane. A term is P(y) * c(key) * g_{mask}, where
/// g_{mask} is the product of the generic monomials selected by `mask` and
/// P is a polynomial in the symbols. Vanishing on generic inputs implies
/// vanishing on every element.
class Generic {
 public:
  using Mask = std::array<int, kGenericSlots>;
  struct Key {
    Exponent shift;
    Mask mask{};
    auto operator<=>(const Key&) const = default;
  };
  using Terms = std::map<Key, SymPoly>;

  Generic() = default;
  explicit Generic(Model model) : model_(model) {}
  /// The generic monomial of slot s.
  static Generic generator(const Model& model, int slot);
  static Generic lift(const Element& e);

  const Model& model() const { return model_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int nvars() const { return kGenericSlots * model_.dim; }
  /// Index of the symbol for direction j of slot s.
  int symbol(int slot, int j) const { return slot * model_.dim + j; }

  void add_term(const Key& key, const SymPoly& p);

  Generic derive(int j) const;

  Generic operator-() const;
  Generic& operator+=(const Generic& o);
  Generic& operator-=(const Generic& o);
  Generic& operator*=(const Gaussian& c);
  friend Generic operator+(Generic a, const Generic& b) { return a += b; }
  friend Generic operator-(Generic a, const Generic& b) { return a -= b; }
  friend Generic operator*(const Generic& a, const Generic& b);
  friend Generic operator*(Generic a, const Gaussian& c) { return a *= c; }
  friend Generic operator*(const Gaussian& c, Generic a) { return a *= c; }
  friend bool operator==(const Generic& a, const Generic& b) {
    return a.model_ == b.model_ && a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  Model model_;
  Terms terms_;
};

}  // namespace dqw
