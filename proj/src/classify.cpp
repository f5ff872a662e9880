#include "dqw/classify.hpp"

#include <algorithm>
#include <deque>

#include "dqw/errors.hpp"

namespace dqw {

namespace {

std::vector<long long> flatten(const IntMatrix& a) {
  std::vector<long long> out;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.push_back(a(i, j));
  return out;
}

std::vector<long long> flatten(const IntVector& v) { return {v.data(), v.data() + v.size()}; }

long long mod(long long a, long long m) { return ((a % m) + m) % m; }

template <class V>
std::vector<Gaussian> times(const IntMatrix& psi, const std::vector<V>& v) {
  if (static_cast<long>(v.size()) != psi.cols())
    throw DimensionMismatch("vector of size " + std::to_string(v.size()) + " against rank " +
                            std::to_string(psi.cols()));
  std::vector<Gaussian> out(psi.rows());
  for (int i = 0; i < psi.rows(); ++i)
    for (int j = 0; j < psi.cols(); ++j)
      if (psi(i, j) != 0) out[i] += Gaussian(v[j]) * Gaussian(static_cast<long>(psi(i, j)));
  return out;
}

std::vector<Rational> real_parts(const std::vector<Gaussian>& v) {
  std::vector<Rational> out;
  for (const auto& c : v) out.push_back(c.re());
  return out;
}

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

Rational dot(const std::vector<long long>& row, const std::vector<Rational>& v) {
  Rational s = 0;
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j] != 0) s += Rational(static_cast<long>(row[j])) * v[j];
  return s;
}

}  // namespace

long long determinant(const IntMatrix& a) {
  const long n = a.rows();
  if (n != a.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  long long det = 0;
  for (long j = 0; j < n; ++j) {
    if (a(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (long r = 1; r < n; ++r)
      for (long c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    det += (j % 2 ? -1 : 1) * a(0, j) * determinant(minor);
  }
  return det;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  const long long det = determinant(a);
  if (det != 1 && det != -1)
    throw NotAnAutomorphism("determinant " + std::to_string(det) + " is not +-1");
  const long n = a.rows();
  IntMatrix out(n, n);
  if (n == 1) {
    out(0, 0) = det;
    return out;
  }
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (long r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (long c = 0, cc = 0; c < n; ++c)
          if (c != i) minor(rr, cc++) = a(r, c);
        ++rr;
      }
      out(i, j) = ((i + j) % 2 ? -1 : 1) * determinant(minor) * det;
    }
  return out;
}

std::string matrix_str(const IntMatrix& a) {
  std::string out = "[";
  for (long i = 0; i < a.rows(); ++i) {
    out += i ? ",[" : "[";
    for (long j = 0; j < a.cols(); ++j) out += (j ? "," : "") + std::to_string(a(i, j));
    out += "]";
  }
  return out + "]";
}

std::string vector_str(const IntVector& v) {
  std::string out = "(";
  for (long j = 0; j < v.size(); ++j) out += (j ? "," : "") + std::to_string(v(j));
  return out + ")";
}

ClassSeries class_pullback(const ClassSeries& c, const IntMatrix& psi) {
  const long long det = determinant(psi);
  if (det != 1 && det != -1) throw NotAnAutomorphism("pullback needs det +-1");
  ClassSeries out = c;
  out.omega = real_parts(times(psi, c.omega));
  for (auto& t : out.terms) t = times(psi, t);
  return out;
}

ClassSeries picard_act(const ClassSeries& c, const IntVector& l) {
  if (!c.reduced) throw NotReduced("the Picard action needs reduced units");
  if (c.terms.empty()) throw DimensionMismatch("class without an order-0 term");
  if (l.size() != c.rank()) throw DimensionMismatch("translation of the wrong rank");
  ClassSeries out = c;
  for (int j = 0; j < c.rank(); ++j) out.terms[0][j] += Gaussian(static_cast<long>(l(j)));
  return out;
}

TorsionGroup::TorsionGroup(std::vector<long long> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw SchemaError("invariant factor below 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0)
      throw SchemaError("invariant factors must divide each other");
  }
}

std::vector<std::vector<long long>> TorsionGroup::elements() const {
  std::vector<std::vector<long long>> out{zero()};
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::vector<std::vector<long long>> next;
    for (const auto& e : out)
      for (long long k = 0; k < factors_[i]; ++k) {
        auto f = e;
        f[i] = k;
        next.push_back(f);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<long long> TorsionGroup::add(const std::vector<long long>& a,
                                         const std::vector<long long>& b) const {
  std::vector<long long> out(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) out[i] = mod(a.at(i) + b.at(i), factors_[i]);
  return out;
}

std::vector<long long> TorsionGroup::negate(const std::vector<long long>& a) const {
  std::vector<long long> out(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) out[i] = mod(-a.at(i), factors_[i]);
  return out;
}

LatticeGroup::LatticeGroup(int rank, std::vector<IntMatrix> generators, std::size_t cap)
    : rank_(rank), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.rows() != rank || g.cols() != rank)
      throw DimensionMismatch("generator " + matrix_str(g) + " has the wrong size");
    const long long det = determinant(g);
    if (det != 1 && det != -1)
      throw NotAnAutomorphism("generator " + matrix_str(g) + " has determinant " +
                              std::to_string(det));
  }
  std::set<std::vector<long long>> seen;
  std::deque<IntMatrix> queue;
  const IntMatrix id = IntMatrix::Identity(rank, rank);
  seen.insert(flatten(id));
  queue.push_back(id);
  elements_.push_back(id);
  while (!queue.empty()) {
    const IntMatrix cur = queue.front();
    queue.pop_front();
    for (const auto& g : generators_) {
      IntMatrix next = g * cur;
      if (!seen.insert(flatten(next)).second) continue;
      if (seen.size() > cap)
        throw CapExceeded("group closure exceeds " + std::to_string(cap) + " elements");
      elements_.push_back(next);
      queue.push_back(std::move(next));
    }
  }
  std::sort(elements_.begin() + 1, elements_.end(),
            [](const IntMatrix& a, const IntMatrix& b) { return flatten(a) < flatten(b); });
}

PicardElement PicardElement::identity(int rank, const TorsionGroup& t) {
  return {IntMatrix::Identity(rank, rank), IntVector::Zero(rank), t.zero()};
}

std::string PicardElement::str() const {
  std::string out = "(" + matrix_str(psi) + ", " + vector_str(free);
  if (!torsion.empty()) {
    out += " + [";
    for (std::size_t i = 0; i < torsion.size(); ++i)
      out += (i ? "," : "") + std::to_string(torsion[i]);
    out += "]";
  }
  return out + ")";
}

bool operator==(const PicardElement& a, const PicardElement& b) {
  return flatten(a.psi) == flatten(b.psi) && flatten(a.free) == flatten(b.free) &&
         a.torsion == b.torsion;
}

bool operator<(const PicardElement& a, const PicardElement& b) {
  const auto pa = flatten(a.psi), pb = flatten(b.psi);
  if (pa != pb) return pa < pb;
  const auto fa = flatten(a.free), fb = flatten(b.free);
  if (fa != fb) return fa < fb;
  return a.torsion < b.torsion;
}

PicardElement picard_multiply(const PicardElement& x, const PicardElement& y,
                              const TorsionGroup& t) {
  if (x.psi.rows() != y.psi.rows()) throw DimensionMismatch("Picard elements of different rank");
  return {y.psi * x.psi, y.psi * x.free + y.free, t.add(x.torsion, y.torsion)};
}

PicardElement picard_inverse(const PicardElement& x, const TorsionGroup& t) {
  const IntMatrix inv = unimodular_inverse(x.psi);
  return {inv, -(inv * x.free), t.negate(x.torsion)};
}

bool operator<(const PicardClass& a, const PicardClass& b) {
  const auto fa = flatten(a.free), fb = flatten(b.free);
  if (fa != fb) return fa < fb;
  return a.torsion < b.torsion;
}

bool operator==(const PicardClass& a, const PicardClass& b) {
  return flatten(a.free) == flatten(b.free) && a.torsion == b.torsion;
}

std::string PicardClass::str() const {
  std::string out = vector_str(free);
  if (!torsion.empty()) {
    out += " + [";
    for (std::size_t i = 0; i < torsion.size(); ++i)
      out += (i ? "," : "") + std::to_string(torsion[i]);
    out += "]";
  }
  return out;
}

std::vector<std::pair<IntMatrix, IntVector>> admissible_translations(const ClassSeries& c,
                                                                     const LatticeGroup& g) {
  if (g.rank() != c.rank()) throw DimensionMismatch("class and group of different rank");
  if (c.terms.empty()) throw DimensionMismatch("class without an order-0 term");
  std::vector<std::pair<IntMatrix, IntVector>> out;
  for (const auto& psi : g.elements()) {
    if (real_parts(times(psi, c.omega)) != c.omega) continue;
    bool fixes = true;
    for (std::size_t r = 1; r < c.terms.size() && fixes; ++r)
      fixes = times(psi, c.terms[r]) == c.terms[r];
    if (!fixes) continue;
    const std::vector<Gaussian> moved = times(psi, c.terms[0]);
    IntVector l(c.rank());
    bool integral = true;
    for (int j = 0; j < c.rank() && integral; ++j) {
      const Gaussian e = (moved[j] - c.terms[0][j]) * Gaussian(static_cast<long>(c.sign));
      integral = sgn(e.im()) == 0 && e.re().get_den() == 1;
      if (integral) l(j) = e.re().get_num().get_si();
    }
    if (integral) out.emplace_back(psi, l);
  }
  return out;
}

std::set<PicardClass> image_clr(const ClassSeries& c, const LatticeGroup& g,
                                const TorsionGroup& t) {
  std::set<PicardClass> out;
  for (const auto& [psi, l] : admissible_translations(c, g))
    for (const auto& tor : t.elements()) out.insert({l, tor});
  return out;
}

std::set<PicardElement> image_cl(const ClassSeries& c, const LatticeGroup& g,
                                 const TorsionGroup& t) {
  std::set<PicardElement> out;
  for (const auto& [psi, l] : admissible_translations(c, g))
    for (const auto& tor : t.elements()) out.insert({psi, l, tor});
  return out;
}

bool is_group_closed(const std::set<PicardElement>& s, const TorsionGroup& t) {
  if (s.empty()) return false;
  const int rank = static_cast<int>(s.begin()->psi.rows());
  if (!s.count(PicardElement::identity(rank, t))) return false;
  for (const auto& x : s) {
    if (!s.count(picard_inverse(x, t))) return false;
    for (const auto& y : s)
      if (!s.count(picard_multiply(x, y, t))) return false;
  }
  return true;
}

std::string KernelDescriptor::str() const {
  if (injective()) return "trivial kernel (cl_* injective)";
  std::string out = "C^" + std::to_string(quotient_rank) + "/iZ^" + std::to_string(lattice_rank);
  for (std::size_t r = 0; r < higher.size(); ++r)
    out += " + L" + (r ? "^" + std::to_string(r + 1) : std::string()) + "*C^" +
           std::to_string(higher[r]);
  return out;
}

KernelDescriptor kernel_descriptor(bool torus, int dim, bool symplectic, int order) {
  KernelDescriptor out;
  if (!torus) {
    out.higher.assign(order, 0);
    return out;
  }
  if (!symplectic) throw UnsupportedModel("kernel descriptors need a symplectic torus");
  out.quotient_rank = dim;
  out.lattice_rank = dim;
  out.higher.assign(order, dim);
  return out;
}

bool kernel_coset_equal(const std::vector<Gaussian>& a, const std::vector<Gaussian>& b, int order) {
  if (a.size() != b.size()) throw DimensionMismatch("cosets of different rank");
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Gaussian d = a[j] - b[j];
    if (order > 0) {
      if (!d.is_zero()) return false;
    } else if (sgn(d.re()) != 0 || d.im().get_den() != 1) {
      return false;
    }
  }
  return true;
}

std::vector<Rational> ExtendedRationalVector::part(int i) const {
  std::vector<Rational> out;
  for (const auto& row : coords) out.push_back(row.at(i));
  return out;
}

ExtendedRationalVector ExtendedRationalVector::rational(const std::vector<Rational>& v) {
  ExtendedRationalVector out;
  for (const auto& q : v) out.coords.push_back({q});
  return out;
}

std::string WitnessCertificate::str() const {
  std::string out = "l = " + vector_str(l);
  switch (kind) {
    case CertificateKind::Prime: {
      out += "; prime p = " + std::to_string(p) + ", a = (";
      for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + a[i].get_str();
      out += "), d = " + d.get_str();
      break;
    }
    case CertificateKind::Integral:
      out += "; integral r0";
      break;
    case CertificateKind::Zero:
      out += "; r0 = 0";
      break;
  }
  if (verified) out += "; oracle bound " + std::to_string(*verified);
  return out;
}

WitnessCertificate witness_nonsurjective(const ExtendedRationalVector& v) {
  const int m = v.rank();
  if (m == 0) throw ZeroRank("witness needs rank >= 1");
  const std::vector<Rational> r0 = v.part(0);
  WitnessCertificate out;
  out.l = IntVector::Zero(m);
  Integer d = 1;
  for (const auto& q : r0) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
  if (d != 1) {
    out.kind = CertificateKind::Prime;
    out.d = d;
    for (const auto& q : r0) out.a.push_back(Integer(q * Rational(d)));
    long long p = 2;
    auto divides = [](long long p, const Integer& n) {
      return mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
    };
    for (;; ++p) {
      if (!is_prime(p) || divides(p, d)) continue;
      bool ok = true;
      for (const auto& a : out.a)
        if (a != 0 && divides(p, a)) ok = false;
      if (ok) break;
    }
    out.p = p;
    Integer pz(static_cast<long>(p)), dinv;
    mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t());
    for (int j = 0; j < m; ++j) {
      Integer lj = -out.a[j] * dinv;
      mpz_fdiv_r(lj.get_mpz_t(), lj.get_mpz_t(), pz.get_mpz_t());
      out.l(j) = lj.get_si();
    }
  } else {
    bool zero = true;
    for (const auto& q : r0)
      if (sgn(q) != 0) zero = false;
    if (zero) {
      out.kind = CertificateKind::Zero;
      out.l(0) = 1;
    } else {
      out.kind = CertificateKind::Integral;
      for (int j = 0; j < m; ++j) out.l(j) = r0[j].get_num().get_si();
    }
  }
  if (!certificate_valid(v, out)) throw InternalError("certificate fails its own conditions");
  return out;
}

bool certificate_valid(const ExtendedRationalVector& v, const WitnessCertificate& c) {
  const std::vector<Rational> r0 = v.part(0);
  const int m = v.rank();
  if (c.l.size() != m) return false;
  switch (c.kind) {
    case CertificateKind::Zero:
      for (const auto& q : r0)
        if (sgn(q) != 0) return false;
      for (int j = 0; j < m; ++j)
        if (c.l(j) != (j == 0 ? 1 : 0)) return false;
      return true;
    case CertificateKind::Integral: {
      bool zero = true;
      for (int j = 0; j < m; ++j) {
        if (r0[j].get_den() != 1 || Rational(static_cast<long>(c.l(j))) != r0[j]) return false;
        if (sgn(r0[j]) != 0) zero = false;
      }
      return !zero;
    }
    case CertificateKind::Prime: {
      if (!is_prime(c.p) || static_cast<int>(c.a.size()) != m) return false;
      const Integer p(static_cast<long>(c.p));
      if (mpz_divisible_p(c.d.get_mpz_t(), p.get_mpz_t())) return false;
      bool nonzero = false;
      for (int j = 0; j < m; ++j) {
        Rational q(c.a[j], c.d);
        q.canonicalize();
        if (q != r0[j]) return false;
        if (c.a[j] != 0) {
          nonzero = true;
          if (mpz_divisible_p(c.a[j].get_mpz_t(), p.get_mpz_t())) return false;
        }
        const Integer check = c.a[j] + c.d * Integer(static_cast<long>(c.l(j)));
        if (!mpz_divisible_p(check.get_mpz_t(), p.get_mpz_t())) return false;
      }
      return nonzero;
    }
  }
  return false;
}

bool brute_force_orbit_check(const ExtendedRationalVector& v, const std::vector<Rational>& l,
                             int bound) {
  const int m = v.rank();
  if (static_cast<int>(l.size()) != m) throw DimensionMismatch("l has the wrong rank");
  const std::vector<Rational> r0 = v.part(0);
  std::vector<std::vector<Rational>> parts;
  for (int i = 1; i <= v.symbols(); ++i) parts.push_back(v.part(i));

  std::vector<std::vector<std::vector<long long>>> candidates(m);
  std::vector<long long> row(m, -bound);
  for (;;) {
    for (int j = 0; j < m; ++j) {
      bool ok = dot(row, r0) == r0[j] + l[j];
      for (std::size_t i = 0; ok && i < parts.size(); ++i) ok = dot(row, parts[i]) == parts[i][j];
      if (ok) candidates[j].push_back(row);
    }
    int k = 0;
    while (k < m && row[k] == bound) row[k++] = -bound;
    if (k == m) break;
    ++row[k];
  }
  for (const auto& c : candidates)
    if (c.empty()) return false;

  IntMatrix a(m, m);
  std::vector<std::size_t> pick(m, 0);
  for (;;) {
    for (int j = 0; j < m; ++j)
      for (int c = 0; c < m; ++c) a(j, c) = candidates[j][pick[j]][c];
    const long long det = determinant(a);
    if (det == 1 || det == -1) return true;
    int k = 0;
    while (k < m && pick[k] + 1 == candidates[k].size()) pick[k++] = 0;
    if (k == m) return false;
    ++pick[k];
  }
}

bool brute_force_orbit_check(const std::vector<Rational>& v, const std::vector<Rational>& l,
                             int bound) {
  return brute_force_orbit_check(ExtendedRationalVector::rational(v), l, bound);
}

}  // namespace dqw
