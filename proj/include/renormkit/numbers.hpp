#pragma once

// Exact and high-precision number types shared by every module.
//
// BigInt / Rational are boost::multiprecision's arbitrary-precision types.
// QuadSurd is an element a + b*sqrt(D) of a real quadratic field with
// rational a, b and a square-free radicand D > 1.  Elements with b == 0 are
// plain rationals and combine with any field.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

#include "renormkit/errors.hpp"

namespace renormkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <unsigned Bits>
using BinFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<Bits, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

/// Default working float: 128-bit significand.
using Float128 = BinFloat<128>;

/// n = k^2 * D with D square-free.  Returns {k, D}.  Trial division runs up
/// to the cube root of n; throws BudgetError past `max_trial`.
std::pair<BigInt, BigInt> squarefree_decompose(const BigInt& n,
                                               std::uint64_t max_trial = 50'000'000);

bool is_perfect_square(const BigInt& n, BigInt* root = nullptr);

BigInt floor_of(const Rational& x);

template <class F>
F rational_to_float(const Rational& x) {
  return F(boost::multiprecision::numerator(x)) / F(boost::multiprecision::denominator(x));
}

class QuadSurd {
 public:
  QuadSurd() = default;
  QuadSurd(long long n) : a_(n) {}  // NOLINT(google-explicit-constructor)
  QuadSurd(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  /// a + b*sqrt(radicand); the radicand must already be square-free.
  QuadSurd(Rational a, Rational b, BigInt radicand);

  /// (p + q*sqrt(D))/r.  D is reduced to its square-free part, r must be nonzero.
  static QuadSurd from_pqr(const BigInt& p, const BigInt& q, const BigInt& r, const BigInt& d);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_coeff() const { return b_; }
  const BigInt& radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  /// Normal form (p + q*sqrt(D))/r with r > 0 and gcd(p, q, r) = 1.
  struct Pqr {
    BigInt p, q, r, d;
  };
  Pqr pqr() const;

  int sign() const;
  QuadSurd conjugate() const;
  /// a^2 - b^2 D, nonzero unless the element is zero.
  Rational norm() const;
  QuadSurd abs() const { return sign() < 0 ? -*this : *this; }
  BigInt floor() const;

  QuadSurd operator-() const;
  QuadSurd& operator+=(const QuadSurd& o);
  QuadSurd& operator-=(const QuadSurd& o);
  QuadSurd& operator*=(const QuadSurd& o);
  QuadSurd& operator/=(const QuadSurd& o);
  friend QuadSurd operator+(QuadSurd x, const QuadSurd& y) { return x += y; }
  friend QuadSurd operator-(QuadSurd x, const QuadSurd& y) { return x -= y; }
  friend QuadSurd operator*(QuadSurd x, const QuadSurd& y) { return x *= y; }
  friend QuadSurd operator/(QuadSurd x, const QuadSurd& y) { return x /= y; }

  friend bool operator==(const QuadSurd& x, const QuadSurd& y);
  friend std::strong_ordering operator<=>(const QuadSurd& x, const QuadSurd& y);

  /// Converts without cancellation: when the two parts have opposite signs
  /// the value is evaluated as norm / (a - b sqrt D).
  template <class F>
  F to_float() const {
    F a = rational_to_float<F>(a_);
    if (b_ == 0) return a;
    F b = rational_to_float<F>(b_);
    F root = sqrt(F(d_));
    if ((a_ < 0) == (b_ < 0) || a_ == 0) return a + b * root;
    return rational_to_float<F>(norm()) / (a - b * root);
  }
  double to_double() const;

  /// "(p + q*sqrt(D))/r" in normal form, or "p/q" for rationals.
  std::string to_string() const;
  /// "surd:p,q,r,D", the CLI input syntax.
  std::string to_spec() const;

 private:
  void check_field(const QuadSurd& o) const;
  void adopt_field(const QuadSurd& o);

  Rational a_{0};
  Rational b_{0};
  BigInt d_{0};
};

QuadSurd pow(const QuadSurd& x, std::int64_t n);

/// Formats x with `digits` significant decimal digits, locale independent.
std::string format_sig(double x, int digits = 17);

template <unsigned Bits>
std::string format_sig(const BinFloat<Bits>& x, int digits = 17) {
  return x.str(digits, std::ios_base::fmtflags(0));
}

}  // namespace renormkit
