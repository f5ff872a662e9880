#pragma once

#include <string>
#include <type_traits>
#include <vector>

#include "dqw/formal.hpp"

namespace dqw {

/// H with vanishing classical part, plus a symbolic constant 2 pi i m that
/// never enters the coefficient arithmetic.
struct ExpArgument {
  FormalSeries h;
  long winding = 0;

  ExpArgument() = default;
  /// Throws NonzeroClassicalPart when h_0 != 0.
  explicit ExpArgument(FormalSeries series, long m = 0);
};

/// Exp(tH) = sum_k t^k H^{*k} / k!, the solution of d/dt Exp(tH) = H * Exp(tH).
FormalSeries star_exp(const StarProduct& s, const ExpArgument& h, const Rational& t = 1);
/// The normalized logarithm of u = 1 + O(L); throws NotNormalized.
ExpArgument star_log(const StarProduct& s, const FormalSeries& u);

/// u * f * u^{-1}.
template <class E>
Series<E> adjoint(const StarProduct& s, const FormalSeries& u, const Series<E>& f) {
  const FormalSeries v = series_star_invert(s, u);
  if constexpr (std::is_same_v<E, Element>) {
    return star_multiply(s, star_multiply(s, u, f), v);
  } else {
    return star_multiply(s, star_multiply(s, lift(u), f), lift(v));
  }
}

/// e^{ad H}(f) = sum_k ad(H)^k f / k!, H = O(L).
template <class E>
Series<E> exp_ad(const StarProduct& s, const FormalSeries& h, const Series<E>& f) {
  Series<E> hh;
  if constexpr (std::is_same_v<E, Element>) {
    hh = h;
  } else {
    hh = lift(h);
  }
  Series<E> out = f;
  Series<E> term = f;
  for (int k = 1; k <= f.order(); ++k) {
    term = star_commutator(s, hh, term) * Gaussian(make_rational(1, k));
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

/// Ad(u) as an equivalence; its stages are read off a generic input.
Equivalence adjoint_equivalence(const StarProduct& s, const FormalSeries& u);

struct ExpReport {
  std::vector<CheckReport> checks;
  /// False when [H,G] != 0 and additivity was not tested.
  bool commuting = false;
  bool pass() const;
};

/// Group law at sampled t,s; Exp(H) * H = H * Exp(H); Ad(Exp H) = e^{ad H};
/// additivity when [H,G] = 0; log roundtrip.
ExpReport check_exp_identities(const StarProduct& s, const ExpArgument& h, const ExpArgument& g);

}  // namespace dqw
