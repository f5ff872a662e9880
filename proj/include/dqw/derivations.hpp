#pragma once

#include <vector>

#include "dqw/algebra.hpp"
#include "dqw/starexp.hpp"

namespace dqw {

/// D = D_0 + L D_1 + ..., each stage without a zeroth-order term. Valid
/// through order stages.size() - 1.
class FormalDerivation {
 public:
  FormalDerivation() = default;
  /// Throws NotADerivation if a stage has a zeroth-order term.
  FormalDerivation(Model model, std::vector<DiffOperator> stages);
  static FormalDerivation zero(const Model& model, int order);
  /// A single operator at order 0.
  static FormalDerivation constant(const DiffOperator& op, int order);

  const Model& model() const { return model_; }
  int order() const { return static_cast<int>(stages_.size()) - 1; }
  const DiffOperator& stage(int r) const { return stages_.at(r); }
  const std::vector<DiffOperator>& stages() const { return stages_; }
  bool is_zero() const;

  /// Multiplication by L^k; the order grows by k.
  FormalDerivation shifted(int k) const;
  FormalDerivation resized(int order) const;

  template <class E>
  Series<E> apply(const Series<E>& f) const {
    const int n = std::min(order(), f.order());
    Series<E> out(f.model(), n);
    for (int r = 0; r <= n; ++r) {
      if (f[r].is_zero()) continue;
      DerivativeCache<E> cache(f[r]);
      for (int k = 0; r + k <= n; ++k)
        if (!stages_[k].is_zero()) out[r + k] += stages_[k].apply(cache);
    }
    return out;
  }

  FormalDerivation operator-() const;
  FormalDerivation& operator+=(const FormalDerivation& o);
  FormalDerivation& operator-=(const FormalDerivation& o);
  FormalDerivation& operator*=(const Gaussian& c);
  friend FormalDerivation operator+(FormalDerivation a, const FormalDerivation& b) { return a += b; }
  friend FormalDerivation operator-(FormalDerivation a, const FormalDerivation& b) { return a -= b; }
  friend FormalDerivation operator*(FormalDerivation a, const Gaussian& c) { return a *= c; }
  friend FormalDerivation operator*(const Gaussian& c, FormalDerivation a) { return a *= c; }
  friend bool operator==(const FormalDerivation& a, const FormalDerivation& b) {
    return a.model_ == b.model_ && a.stages_ == b.stages_;
  }

  std::string str() const;

 private:
  Model model_;
  std::vector<DiffOperator> stages_;
};

/// A = sum c_j d(theta_j) + dg.
struct ClosedOneForm {
  Model model;
  std::vector<Gaussian> constant;
  Element potential;

  ClosedOneForm() = default;
  ClosedOneForm(Model m, std::vector<Gaussian> c, Element g);
  static ClosedOneForm zero(const Model& m);
  /// Components A_j as elements.
  std::vector<Element> components() const;
  bool is_zero() const;
  bool is_exact() const;
  std::string str() const;
  friend bool operator==(const ClosedOneForm&, const ClosedOneForm&) = default;
};

/// Writes a closed form given by components as constant + dg; throws
/// NotDecomposable when the components are not closed.
ClosedOneForm integrate_closed_form(const Model& model, const std::vector<Element>& components);

CheckReport check_derivation(const StarProduct& s, const FormalDerivation& d);

/// (i/L)[H, .]. Valid through order N when the product can be regenerated
/// at order N+1, otherwise through N-1.
FormalDerivation quasi_inner(const StarProduct& s, const FormalSeries& h);

/// ad of the multivalued potential sum c_j theta_j + g; throws UnitalityError.
FormalDerivation delta_one_form(const StarProduct& s, const ClosedOneForm& a);
/// sum_r L^r delta_{A_r}.
FormalDerivation delta_one_form(const StarProduct& s, const std::vector<ClosedOneForm>& a);

/// [D, D'] = D o D' - D' o D, order by order.
FormalDerivation derivation_commutator(const FormalDerivation& a, const FormalDerivation& b);
/// e^D for D = O(L); throws NotAnEquivalence when D_0 != 0.
Equivalence exp_derivation(const FormalDerivation& d);
/// log T, stage 0 zero.
FormalDerivation log_equivalence(const Equivalence& t);

struct InnerForm {
  /// A_0 .. A_{N-1}.
  std::vector<ClosedOneForm> forms;
  /// Constant vector of A_0 lies in i Z^m.
  bool integral = false;
  /// A_r exact for r >= 1.
  bool higher_exact = false;
  /// e^{delta_A} = Ad(u) through order N.
  bool verified = false;
};

/// A with e^{delta_A} = Ad(u). Needs a symplectic bracket (UnsupportedModel).
InnerForm inner_to_one_form(const StarProduct& s, const FormalSeries& u);

/// [f,g] = 0 for generic g; a failure carries the witness g.
CheckReport is_central(const StarProduct& s, const FormalSeries& f);

/// Constant part plus quasi_inner of a Hamiltonian. Throws NotPoisson and
/// NotDecomposable.
FormalDerivation rho_one(const StarProduct& s, const DiffOperator& x);

struct OuterClass {
  /// Harmonic constant field of each order (d2 -> (0,1)).
  std::vector<std::vector<Gaussian>> field;
  /// The matching closed-form constants for a derivation divisible by L:
  /// form[r] pairs with field[r+1].
  std::vector<std::vector<Gaussian>> form;
  bool inner = true;
};

/// Symplectic torus only (UnsupportedModel).
OuterClass outer_class(const StarProduct& s, const FormalDerivation& d);

std::string vector_str(const std::vector<Gaussian>& v);

}  // namespace dqw
