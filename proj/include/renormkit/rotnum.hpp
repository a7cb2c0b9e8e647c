#pragma once

// Rotation numbers and the prime renormalization of circle rotations.
//
// The prime renormalization is the two-branch map
//   L:  theta -> theta / (1 - theta)       for 0 <= theta <= 1/2
//   R:  theta -> (2 theta - 1) / theta     for 1/2 <= theta <= 1
// At theta = 1/2 both branches give 1, which reduces to 0 on the circle;
// the itinerary labels 1/2 as L.
//
// Words and matrices: the branch that fires first is the rightmost factor
// acting on column vectors (-v, w).  R contributes [[1,1],[0,1]] and L
// contributes [[1,0],[1,1]].

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "renormkit/numbers.hpp"

namespace renormkit {

enum class Branch : std::uint8_t { L, R };

/// Inverse branches: OneThird inverts R (lands in (1/2,1)), TwoThirds inverts L.
enum class AntiBranch : std::uint8_t { OneThird, TwoThirds };

std::string_view to_string(AntiBranch b);

/// A float value paired with an absolute error bound.
struct BoundedFloat {
  Float128 value;
  Float128 error;
};

class RotationNumber {
 public:
  enum class Kind { Rational, Surd, Float };

  RotationNumber() : value_(Rational(0)) {}

  /// The constructors reduce modulo 1 into [0, 1).
  static RotationNumber from_rational(const Rational& x);
  /// Surds with zero irrational part become rationals.
  static RotationNumber from_surd(const QuadSurd& x);
  static RotationNumber from_float(const Float128& value, const Float128& error);
  /// Parses "p/q", "surd:p,q,r,D" or a decimal (stored as a float with the
  /// conversion error as its bound).
  static RotationNumber parse(std::string_view text);

  Kind kind() const { return static_cast<Kind>(value_.index()); }
  bool is_exact() const { return kind() != Kind::Float; }
  bool is_zero() const;

  /// Exact value as a surd (rationals have zero irrational part).
  /// Throws DomainError for float representations.
  QuadSurd exact() const;
  /// The stored rational, or nullptr for surds and floats.
  const Rational* rational() const { return std::get_if<Rational>(&value_); }
  const BoundedFloat& bounded() const;
  Float128 approx() const;
  double to_double() const { return static_cast<double>(approx()); }

  std::string to_string() const;

  /// Exact equality for exact kinds; identical value and bound for floats.
  friend bool operator==(const RotationNumber& x, const RotationNumber& y);

 private:
  using Storage = std::variant<Rational, QuadSurd, BoundedFloat>;
  explicit RotationNumber(Storage v) : value_(std::move(v)) {}
  Storage value_;
};

class RenormWord {
 public:
  RenormWord() = default;
  explicit RenormWord(std::vector<Branch> symbols) : symbols_(std::move(symbols)) {}
  /// Accepts strings over {L, R}; throws DomainError on other characters.
  static RenormWord parse(std::string_view text);

  const std::vector<Branch>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Branch operator[](std::size_t i) const { return symbols_[i]; }
  bool has_both_symbols() const;
  void push_back(Branch b) { symbols_.push_back(b); }

  std::string to_string() const;
  friend bool operator==(const RenormWord&, const RenormWord&) = default;

 private:
  std::vector<Branch> symbols_;
};

/// 2x2 integer matrix; products of elementary branch matrices have
/// nonnegative entries and determinant 1.
struct AntiRenormMatrix {
  BigInt m11{1}, m12{0}, m21{0}, m22{1};

  static AntiRenormMatrix elementary(Branch b);
  BigInt det() const { return m11 * m22 - m12 * m21; }
  BigInt trace() const { return m11 + m22; }
  AntiRenormMatrix inverse() const { return {m22, -m12, -m21, m11}; }
  std::string to_string() const;

  friend AntiRenormMatrix operator*(const AntiRenormMatrix& x, const AntiRenormMatrix& y);
  friend bool operator==(const AntiRenormMatrix&, const AntiRenormMatrix&) = default;
};

struct EigenData {
  RenormWord word;
  AntiRenormMatrix matrix;
  QuadSurd t;            ///< leading eigenvalue, > 1
  QuadSurd inv_t;        ///< 1/t = trace - t
  QuadSurd lambda_star;  ///< t^2
  RotationNumber theta_star;
  QuadSurd v;  ///< = theta_star
  QuadSurd w;  ///< = 1 - theta_star
};

struct Itinerary {
  RenormWord word;
  /// The orbit reached 0 before `steps` symbols were produced.
  bool hit_zero = false;
  std::size_t hit_step = 0;
};

/// Branch of theta: L on (0, 1/2], R on (1/2, 1).  Throws for 0 and for
/// floats whose error interval straddles 1/2.
Branch branch_of(const RotationNumber& theta);

RotationNumber prime_renorm(const RotationNumber& theta);

/// The vector form on the quadrant R<=0 x R>=0.  Returns (v_minus + w, w)
/// when v >= w and (v_minus, w + v_minus) otherwise.
std::pair<double, double> prime_renorm_vec(double v_minus, double w);
std::pair<QuadSurd, QuadSurd> prime_renorm_vec(const QuadSurd& v_minus, const QuadSurd& w);

/// Applies the branch formula `b` to theta without checking its domain.
RotationNumber apply_branch(Branch b, const RotationNumber& theta);
RotationNumber apply_word(const RenormWord& word, const RotationNumber& theta);

AntiRenormMatrix word_to_matrix(const RenormWord& word);

EigenData periodic_point(const RenormWord& word);

Itinerary itinerary(const RotationNumber& theta, std::size_t steps);

RotationNumber antirenorm_rotation(const RotationNumber& mu, AntiBranch branch);

/// Smallest m >= 1 with prime_renorm^m(theta) == theta, searched up to
/// `max_period`; nullopt when theta is not periodic (exact kinds only).
std::optional<std::size_t> renorm_period(const RotationNumber& theta,
                                         std::size_t max_period = 256);

/// Inverse branch used at step i (1-based) when pulling back along the
/// periodic orbit of theta_star: the branch inverting the i-th symbol of
/// theta_star's itinerary.
AntiBranch antirenorm_branch_for(const RotationNumber& theta_star, std::size_t step_index);

/// Parameter-plane molecule map restricted to the main cardioid; acts on
/// rotation numbers by the prime renormalization.
RotationNumber molecule_map(const RotationNumber& theta);

/// Denominators q_0 = 1, q_1, ... of the continued-fraction convergents of x.
std::vector<BigInt> convergent_denominators(const QuadSurd& x, std::size_t count);

}  // namespace renormkit
