#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dqw/scalar.hpp"

namespace dqw {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<long long, Eigen::Dynamic, 1>;

long long determinant(const IntMatrix& a);
/// Inverse of a unimodular matrix; throws NotAnAutomorphism otherwise.
IntMatrix unimodular_inverse(const IntMatrix& a);
std::string matrix_str(const IntMatrix& a);
std::string vector_str(const IntVector& v);

/// Characteristic class 1/(iL) omega + omega_0 + L omega_1 + ... in reduced
/// units; the Picard action at order 0 is integer translation.
struct ClassSeries {
  std::vector<Rational> omega;
  std::vector<std::vector<Gaussian>> terms;
  bool reduced = true;
  /// Orientation of e(l) = sign * (psi omega_0 - omega_0).
  int sign = 1;

  int rank() const { return static_cast<int>(omega.size()); }
  friend bool operator==(const ClassSeries&, const ClassSeries&) = default;
};

ClassSeries class_pullback(const ClassSeries& c, const IntMatrix& psi);
/// Translates omega_0 by l; throws NotReduced.
ClassSeries picard_act(const ClassSeries& c, const IntVector& l);

/// Invariant factors d_1 | d_2 | ... with every d_i >= 2.
class TorsionGroup {
 public:
  TorsionGroup() = default;
  /// Throws SchemaError unless the factors form a divisibility chain.
  explicit TorsionGroup(std::vector<long long> factors);
  const std::vector<long long>& factors() const { return factors_; }
  std::vector<std::vector<long long>> elements() const;
  std::vector<long long> add(const std::vector<long long>& a, const std::vector<long long>& b) const;
  std::vector<long long> negate(const std::vector<long long>& a) const;
  std::vector<long long> zero() const { return std::vector<long long>(factors_.size(), 0); }

 private:
  std::vector<long long> factors_;
};

inline constexpr std::size_t kClosureCap = 10000;

/// Finitely generated subgroup of GL(m,Z) with its enumerated closure.
class LatticeGroup {
 public:
  /// Throws NotAnAutomorphism for generators with det != +-1 and
  /// CapExceeded when the closure outgrows `cap`.
  LatticeGroup(int rank, std::vector<IntMatrix> generators, std::size_t cap = kClosureCap);
  int rank() const { return rank_; }
  const std::vector<IntMatrix>& generators() const { return generators_; }
  /// Sorted, starting with the identity.
  const std::vector<IntMatrix>& elements() const { return elements_; }

 private:
  int rank_;
  std::vector<IntMatrix> generators_;
  std::vector<IntMatrix> elements_;
};

/// (psi, l) with psi the class-level action and l = (free, torsion).
struct PicardElement {
  IntMatrix psi;
  IntVector free;
  std::vector<long long> torsion;

  static PicardElement identity(int rank, const TorsionGroup& t);
  std::string str() const;
  friend bool operator==(const PicardElement& a, const PicardElement& b);
  friend bool operator<(const PicardElement& a, const PicardElement& b);
};

/// (psi_1, l_1)(psi_2, l_2) = (psi_2 psi_1, psi_2 l_1 + l_2); torsion is acted on trivially.
PicardElement picard_multiply(const PicardElement& x, const PicardElement& y, const TorsionGroup& t);
PicardElement picard_inverse(const PicardElement& x, const TorsionGroup& t);

struct PicardClass {
  IntVector free;
  std::vector<long long> torsion;
  friend bool operator<(const PicardClass& a, const PicardClass& b);
  friend bool operator==(const PicardClass& a, const PicardClass& b);
  std::string str() const;
};

/// Elements psi of G fixing omega and omega_r (r >= 1) for which
/// sign * (psi omega_0 - omega_0) is integral.
std::vector<std::pair<IntMatrix, IntVector>> admissible_translations(const ClassSeries& c,
                                                                     const LatticeGroup& g);
/// Free parts from admissible_translations plus the full torsion subgroup.
std::set<PicardClass> image_clr(const ClassSeries& c, const LatticeGroup& g, const TorsionGroup& t);
/// Pairs (psi, l) with psi in P_l and l in the reduced image.
std::set<PicardElement> image_cl(const ClassSeries& c, const LatticeGroup& g, const TorsionGroup& t);
bool is_group_closed(const std::set<PicardElement>& s, const TorsionGroup& t);

struct KernelDescriptor {
  /// Order 0: C^m / (i Z^m).
  int quotient_rank = 0;
  int lattice_rank = 0;
  /// Orders 1..N: C^m each.
  std::vector<int> higher;
  bool injective() const { return quotient_rank == 0; }
  std::string str() const;
};

/// `symplectic` false on the torus throws UnsupportedModel.
KernelDescriptor kernel_descriptor(bool torus, int dim, bool symplectic, int order);
/// Order 0 compares modulo i Z^m, higher orders exactly.
bool kernel_coset_equal(const std::vector<Gaussian>& a, const std::vector<Gaussian>& b, int order);

/// v = r_0 + r_1 s_1 + ... + r_t s_t with 1, s_1, .., s_t linearly independent
/// over Q. `coords[j][i]` is the coefficient of s_i in v_j.
struct ExtendedRationalVector {
  std::vector<std::vector<Rational>> coords;
  int rank() const { return static_cast<int>(coords.size()); }
  int symbols() const { return coords.empty() ? 0 : static_cast<int>(coords[0].size()) - 1; }
  std::vector<Rational> part(int i) const;
  static ExtendedRationalVector rational(const std::vector<Rational>& v);
};

enum class CertificateKind { Prime, Integral, Zero };

struct WitnessCertificate {
  IntVector l;
  CertificateKind kind = CertificateKind::Zero;
  long long p = 0;
  std::vector<Integer> a;
  Integer d = 1;
  /// Oracle bound the certificate was confirmed with, when run.
  std::optional<int> verified;
  std::string str() const;
};

/// An l in Z^m outside {Av - v : A in GL(m,Z)}; throws ZeroRank.
WitnessCertificate witness_nonsurjective(const ExtendedRationalVector& v);
/// Re-derives the certificate's arithmetic conditions.
bool certificate_valid(const ExtendedRationalVector& v, const WitnessCertificate& c);

/// Whether some A with entries in [-bound, bound] and det +-1 has Av - v = l.
bool brute_force_orbit_check(const ExtendedRationalVector& v, const std::vector<Rational>& l,
                             int bound);
bool brute_force_orbit_check(const std::vector<Rational>& v, const std::vector<Rational>& l,
                             int bound);

}  // namespace dqw
