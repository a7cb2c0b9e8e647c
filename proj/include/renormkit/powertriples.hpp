#pragma once

// Power-triples (n, a, b) index the cascade of translations
//   T^(n,a,b)(x) = x + t^-n (b w - a v)
// on the real line.  (n, a, b) and (n-1, (a, b) M) name the same element,
// with (a, b) a row vector.  Since M^-1 is an integer matrix, the triples at
// a fixed level L are in bijection with the lattice points x of Z^2 having
// proj_t(x) > 0, plus the zero triple; the lattice view is what the
// enumeration code uses.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "renormkit/numbers.hpp"
#include "renormkit/rotnum.hpp"

namespace renormkit {

struct PowerTriple {
  std::int64_t level = 0;
  BigInt a{0};
  BigInt b{0};

  bool is_zero() const { return a == 0 && b == 0; }
  std::string to_string() const;
  /// Structural equality of representatives; see TriplesContext::equivalent.
  friend bool operator==(const PowerTriple&, const PowerTriple&) = default;
};

/// A lattice point at a fixed level; coordinates may be negative.
struct LatticePoint {
  BigInt x1{0};
  BigInt x2{0};
};

class TriplesContext {
 public:
  explicit TriplesContext(EigenData eigen, std::int64_t level_bound = 64);

  const EigenData& eigen() const { return eigen_; }
  const AntiRenormMatrix& matrix() const { return eigen_.matrix; }
  std::int64_t level_bound() const { return level_bound_; }
  /// Leading eigen-covector (1, e2): e_t M = t e_t.
  const QuadSurd& covector_second() const { return e2_; }
  /// Right eigenvector (m12, t - m11).
  const QuadSurd& eigvec_first() const { return u1_; }
  const QuadSurd& eigvec_second() const { return u2_; }

  /// t^n for |n| within the level bound.
  const QuadSurd& t_pow(std::int64_t n) const;
  QuadSurd v_at(std::int64_t n) const { return t_pow(-n) * eigen_.v; }
  QuadSurd w_at(std::int64_t n) const { return t_pow(-n) * eigen_.w; }

  /// e_t-coefficient of the row vector (a, b).
  QuadSurd proj(const BigInt& a, const BigInt& b) const;

  QuadSurd iota(const PowerTriple& p) const;
  QuadSurd translation_of(const PowerTriple& p) const;
  /// -translation_of(p): the point T^P sends to 0.
  QuadSurd dominant_position(const PowerTriple& p) const { return -translation_of(p); }

  PowerTriple add(const PowerTriple& p, const PowerTriple& q) const;
  std::strong_ordering compare(const PowerTriple& p, const PowerTriple& q) const;
  /// p - q for p >= q, returned at the highest level <= min(levels) where
  /// the difference has nonnegative coordinates.
  PowerTriple subtract(const PowerTriple& p, const PowerTriple& q) const;
  PowerTriple scale_by_t(const PowerTriple& p) const;

  /// Representative at the largest level with nonnegative coordinates;
  /// the zero triple is (0, 0, 0).
  PowerTriple canonical(const PowerTriple& p) const;
  bool equivalent(const PowerTriple& p, const PowerTriple& q) const;
  /// Representative at `level`.  Raising the level can fail when a
  /// coordinate would turn negative.
  PowerTriple at_level(const PowerTriple& p, std::int64_t level) const;

  /// The triple named by a lattice point at `level` (proj(x) >= 0
  /// required); pushed down until both coordinates are nonnegative.
  PowerTriple from_lattice(std::int64_t level, const LatticePoint& x) const;
  /// (a, b) M and (a, b) M^-1.
  LatticePoint push_down(const LatticePoint& x) const;
  LatticePoint push_up(const LatticePoint& x) const;

 private:
  void check_level(std::int64_t n) const;
  void check_valid(const PowerTriple& p) const;
  int proj_sign(const BigInt& a, const BigInt& b) const;

  EigenData eigen_;
  std::int64_t level_bound_;
  QuadSurd e2_, u1_, u2_;
  QuadSurd proj_den_inv_;
  std::vector<QuadSurd> t_pows_;
};

PowerTriple make_triple(std::int64_t level, long long a, long long b);

}  // namespace renormkit
