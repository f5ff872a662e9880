#pragma once

#include <string>
#include <vector>

#include "dqw/generic.hpp"
#include "dqw/series.hpp"

namespace dqw {

/// Outcome of an identity verification. A failure names the first order
/// where the identity breaks and concrete inputs exhibiting it.
struct CheckReport {
  std::string name;
  bool pass = true;
  int order = -1;
  std::vector<std::string> witness;
  /// Residual evaluated on the witness.
  std::string residual;
  std::string note;
};

/// Concrete monomial inputs on which a nonzero generic residual, linear in
/// `slots` inputs, stays nonzero.
std::vector<Element> find_witness(const Generic& residual, int slots);

/// Evaluates a multilinear residual on generic monomials; on failure
/// searches a concrete witness and re-evaluates there.
///
/// `fn` is called with a vector<Generic> and with a vector<Element> and must
/// return the residual series for either.
template <class F>
CheckReport verify_identity(const std::string& name, const Model& model, int slots, F&& fn) {
  CheckReport rep;
  rep.name = name;
  std::vector<Generic> gens;
  for (int s = 0; s < slots; ++s) gens.push_back(Generic::generator(model, s));
  const GenericSeries res = fn(gens);
  const int r = res.valuation();
  if (r < 0) return rep;
  rep.pass = false;
  rep.order = r;
  const std::vector<Element> inputs = find_witness(res[r], slots);
  for (const auto& e : inputs) rep.witness.push_back(e.str());
  if (!inputs.empty()) {
    const FormalSeries concrete = fn(inputs);
    rep.residual = concrete[r].str();
  }
  return rep;
}

}  // namespace dqw
