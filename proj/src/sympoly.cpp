#include "dqw/sympoly.hpp"

#include <stdexcept>

namespace dqw {

SymPoly SymPoly::constant(int nvars, const Gaussian& c) {
  SymPoly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

SymPoly SymPoly::variable(int nvars, int j, const Gaussian& c) {
  SymPoly p(nvars);
  Monomial m(nvars, 0);
  m.at(j) = 1;
  p.add_term(m, c);
  return p;
}

int SymPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

void SymPoly::add_term(const Monomial& m, const Gaussian& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Gaussian SymPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Gaussian() : it->second;
}

Gaussian SymPoly::evaluate(const std::vector<Gaussian>& point) const {
  Gaussian total;
  for (const auto& [m, c] : terms_) {
    Gaussian v = c;
    for (std::size_t j = 0; j < m.size(); ++j)
      for (int e = 0; e < m[j]; ++e) v *= point.at(j);
    total += v;
  }
  return total;
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SymPoly& SymPoly::operator*=(const Gaussian& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
  SymPoly out(std::max(a.nvars_, b.nvars_));
  Monomial m(out.nvars_, 0);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (int j = 0; j < out.nvars_; ++j) m[j] = ma[j] + mb[j];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

SymPoly SymPoly::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative power");
  SymPoly out = constant(nvars_, 1);
  for (int j = 0; j < k; ++j) out = out * *this;
  return out;
}

std::string SymPoly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.str();
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      out += "*" + names.at(j);
      if (m[j] > 1) out += "^" + std::to_string(m[j]);
    }
  }
  return out;
}

}  // namespace dqw
