#pragma once

#include <optional>
#include <vector>

#include "dqw/identity.hpp"
#include "dqw/operators.hpp"
#include "dqw/series.hpp"

namespace dqw {

/// Default truncation order.
inline constexpr int kDefaultOrder = 6;

/// f * g = fg + sum_r L^r C_r(f,g) with bidifferential C_r.
class StarProduct {
 public:
  StarProduct() = default;
  /// `cochains[r-1]` is C_r; the order is cochains.size().
  StarProduct(Model model, PoissonStructure pi, std::vector<BidiffCochain> cochains);

  const Model& model() const { return model_; }
  const PoissonStructure& poisson() const { return pi_; }
  int order() const { return static_cast<int>(cochains_.size()); }
  /// C_r for 1 <= r <= order.
  const BidiffCochain& cochain(int r) const;
  const std::vector<BidiffCochain>& cochains() const { return cochains_; }
  void set_cochain(int r, BidiffCochain c);
  /// Every C_r kills constants in both slots.
  bool is_unital() const;

  /// Bivector series pi_0 + L pi_1 + ... when the product is exp((iL/2) pi_L).
  const std::optional<std::vector<RatMatrix>>& bivector_series() const { return bivectors_; }
  void set_bivector_series(std::vector<RatMatrix> series) { bivectors_ = std::move(series); }
  /// The same product at another order. Raising the order needs a bivector series.
  StarProduct with_order(int order) const;

 private:
  Model model_;
  PoissonStructure pi_;
  std::vector<BidiffCochain> cochains_;
  std::optional<std::vector<RatMatrix>> bivectors_;
};

/// exp((iL/2) pi^{ij} d_i (x) d_j) truncated at `order`.
StarProduct moyal(const Model& model, const PoissonStructure& pi, int order = kDefaultOrder);
/// Moyal product of a formal bivector pi_0 + L pi_1 + ...
StarProduct moyal_formal(const Model& model, const std::vector<RatMatrix>& pis,
                         int order = kDefaultOrder);

/// sum_r L^r C_r(f,g) with C_0 the pointwise product and `cochains[r-1]` = C_r.
template <class E>
Series<E> deformed_product(const std::vector<BidiffCochain>& cochains, const Series<E>& f,
                           const Series<E>& g) {
  require_same_model(f.model(), g.model());
  const int n = std::min(f.order(), g.order());
  if (n > static_cast<int>(cochains.size()))
    throw DimensionMismatch("series of order " + std::to_string(n) + " against " +
                            std::to_string(cochains.size()) + " cochains");
  std::vector<DerivativeCache<E>> cf, cg;
  cf.reserve(n + 1);
  cg.reserve(n + 1);
  for (int r = 0; r <= n; ++r) {
    cf.emplace_back(f[r]);
    cg.emplace_back(g[r]);
  }
  Series<E> out(f.model(), n);
  for (int i = 0; i <= n; ++i) {
    if (f[i].is_zero()) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (g[j].is_zero()) continue;
      out[i + j] += f[i] * g[j];
      for (int k = 1; i + j + k <= n; ++k) {
        const BidiffCochain& c = cochains[k - 1];
        if (!c.is_zero()) out[i + j + k] += c.apply(cf[i], cg[j]);
      }
    }
  }
  return out;
}

template <class E>
Series<E> star_multiply(const StarProduct& s, const Series<E>& f, const Series<E>& g) {
  require_same_model(s.model(), f.model());
  return deformed_product(s.cochains(), f, g);
}

/// f * g - g * f.
template <class E>
Series<E> star_commutator(const StarProduct& s, const Series<E>& f, const Series<E>& g) {
  return star_multiply(s, f, g) - star_multiply(s, g, f);
}

CheckReport check_associativity(const StarProduct& s);
/// 1 * f = f * 1 = f on a generic f.
CheckReport check_unitality(const StarProduct& s);

/// pi^{jk} from (1/i)(C_1(f,g) - C_1(g,f)); throws NonConstantBracket.
PoissonStructure extract_poisson(const StarProduct& s);

/// tau = antisymmetrization of C_2 - C_2'; throws FirstOrderMismatch.
/// The commutator formula is evaluated as a cross-check.
BidiffCochain compute_tau(const StarProduct& left, const StarProduct& right);
/// The order-2 part of [f,g] - [f,g]' as a cochain.
BidiffCochain tau_from_commutators(const StarProduct& left, const StarProduct& right);

/// T = id + L T_1 + ... + L^N T_N.
class Equivalence {
 public:
  Equivalence() = default;
  /// `stages[r-1]` is T_r; each must kill constants (NotAnEquivalence).
  Equivalence(Model model, std::vector<DiffOperator> stages);
  static Equivalence identity(const Model& model, int order);

  const Model& model() const { return model_; }
  int order() const { return static_cast<int>(stages_.size()); }
  /// T_r for 1 <= r <= order; identity at r = 0.
  DiffOperator stage(int r) const;
  const std::vector<DiffOperator>& stages() const { return stages_; }

  template <class E>
  Series<E> apply(const Series<E>& f) const {
    const int n = std::min(order(), f.order());
    Series<E> out(f.model(), n);
    for (int r = 0; r <= n; ++r) {
      if (f[r].is_zero()) continue;
      out[r] += f[r];
      DerivativeCache<E> cache(f[r]);
      for (int k = 1; r + k <= n; ++k)
        if (!stages_[k - 1].is_zero()) out[r + k] += stages_[k - 1].apply(cache);
    }
    return out;
  }

  Equivalence inverse() const;
  /// (this o other)(f) = this(other(f)).
  Equivalence compose(const Equivalence& other) const;
  friend bool operator==(const Equivalence& a, const Equivalence& b) {
    return a.model_ == b.model_ && a.stages_ == b.stages_;
  }

 private:
  Model model_;
  std::vector<DiffOperator> stages_;
};

/// a *' b = T(T^{-1}a * T^{-1}b).
StarProduct twist_by_equivalence(const StarProduct& s, const Equivalence& t);

/// Literal first-order stage T_1.
DiffOperator equivalence_first_order(const Equivalence& t);
/// T_1 / i: the derivation that an automorphism induces under the
/// (1/i)-normalized bracket; Ad(u) maps to u^{-1}{u,.}.
DiffOperator star_first_order(const Equivalence& t);

/// Linear automorphism f -> f o L. Torus: theta -> M theta with M in GL(m,Z).
/// Plane: x -> M x with M rational invertible.
class AutomorphismSeed {
 public:
  AutomorphismSeed() = default;
  /// Throws NotAnAutomorphism.
  AutomorphismSeed(const Model& model, RatMatrix m);
  static AutomorphismSeed identity(const Model& model);

  const Model& model() const { return model_; }
  const RatMatrix& matrix() const { return m_; }
  AutomorphismSeed inverse() const;
  /// (this o other) as algebra maps.
  AutomorphismSeed compose(const AutomorphismSeed& other) const;

 private:
  Model model_;
  RatMatrix m_;
};

/// psi(f) = f o L.
Element apply_automorphism(const AutomorphismSeed& psi, const Element& f);
/// a *^ b = psi^{-1}(psi(a) * psi(b)).
StarProduct pullback_by_automorphism(const StarProduct& s, const AutomorphismSeed& psi);

/// Two-sided inverse under *, order by order; throws NotAUnit.
FormalSeries series_star_invert(const StarProduct& s, const FormalSeries& u);

/// Same model, order and cochains. Cochains are stored canonically.
bool same_product(const StarProduct& a, const StarProduct& b);

}  // namespace dqw
