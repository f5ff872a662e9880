#include "dqw/identity.hpp"

#include <algorithm>
#include <cstdlib>

namespace dqw {

namespace {

// Integer vectors with entries in [-bound, bound], by L1 norm, then
// lexicographically descending; the zero vector comes last.
std::vector<Exponent> torus_candidates(int dim, int bound) {
  std::vector<Exponent> out;
  Exponent k(dim, -bound);
  while (true) {
    out.push_back(k);
    int j = dim - 1;
    while (j >= 0 && k[j] == bound) k[j--] = -bound;
    if (j < 0) break;
    ++k[j];
  }
  auto l1 = [](const Exponent& v) {
    int s = 0;
    for (int e : v) s += std::abs(e);
    return s;
  };
  std::sort(out.begin(), out.end(), [&](const Exponent& a, const Exponent& b) {
    const int na = l1(a), nb = l1(b);
    if ((na == 0) != (nb == 0)) return nb == 0;
    if (na != nb) return na < nb;
    return a > b;
  });
  return out;
}

Element evaluate_torus(const Generic& g, const std::vector<Exponent>& ks) {
  const int dim = g.model().dim;
  std::vector<Gaussian> point(g.nvars());
  for (std::size_t s = 0; s < ks.size(); ++s)
    for (int j = 0; j < dim; ++j) point[s * dim + j] = ks[s][j];
  Element out(g.model());
  for (const auto& [key, poly] : g.terms()) {
    Exponent e = key.shift;
    for (std::size_t s = 0; s < ks.size(); ++s)
      for (int j = 0; j < dim; ++j) e[j] += key.mask[s] * ks[s][j];
    out.add_term(e, poly.evaluate(point));
  }
  return out;
}

std::vector<Element> torus_witness(const Generic& residual, int slots) {
  const Model& model = residual.model();
  int max_degree = 0;
  for (const auto& [key, poly] : residual.terms()) max_degree = std::max(max_degree, poly.degree());
  for (int bound = 2; bound <= std::max(2, max_degree / 2 + 1); ++bound) {
    const std::vector<Exponent> cands = torus_candidates(model.dim, bound);
    std::vector<std::size_t> idx(slots, 0);
    std::vector<Exponent> ks(slots);
    while (true) {
      for (int s = 0; s < slots; ++s) ks[s] = cands[idx[s]];
      if (!evaluate_torus(residual, ks).is_zero()) {
        std::vector<Element> out;
        for (const auto& k : ks) out.push_back(Element::monomial(model, k));
        return out;
      }
      int s = slots - 1;
      while (s >= 0 && idx[s] + 1 == cands.size()) idx[s--] = 0;
      if (s < 0) break;
      ++idx[s];
    }
  }
  return {};
}

std::vector<Element> plane_witness(const Generic& residual, int slots) {
  const Model& model = residual.model();
  const int dim = model.dim;
  const Monomial* best = nullptr;
  int best_degree = 0;
  for (const auto& [key, poly] : residual.terms())
    for (const auto& [mono, c] : poly.terms()) {
      int d = 0;
      for (int e : mono) d += e;
      if (best == nullptr || d < best_degree) {
        best = &mono;
        best_degree = d;
      }
    }
  if (best == nullptr) return {};
  std::vector<Element> out;
  for (int s = 0; s < slots; ++s)
    out.push_back(Element::monomial(
        model, Exponent(best->begin() + s * dim, best->begin() + (s + 1) * dim)));
  return out;
}

}  // namespace

std::vector<Element> find_witness(const Generic& residual, int slots) {
  if (residual.is_zero() || slots == 0) return {};
  return residual.model().is_torus() ? torus_witness(residual, slots)
                                     : plane_witness(residual, slots);
}

GenericSeries lift(const FormalSeries& s) {
  GenericSeries out(s.model(), s.order());
  for (int r = 0; r <= s.order(); ++r) out[r] = Generic::lift(s[r]);
  return out;
}

}  // namespace dqw
