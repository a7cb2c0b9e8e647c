#pragma once

// Main-cardioid parameterization c(theta) = lambda/2 - lambda^2/4 with
// lambda = exp(2 pi i theta), pullback orbits toward a periodic rotation
// number, and the scaling report comparing their contraction with t^2.

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

#include "renormkit/rotnum.hpp"

namespace renormkit {

template <unsigned Bits>
struct ComplexF {
  BinFloat<Bits> re;
  BinFloat<Bits> im;
};

struct CardioidPoint {
  RotationNumber theta;
  Float128 c_re, c_im;
  Float128 lambda_re, lambda_im;
};

template <unsigned Bits>
ComplexF<Bits> cardioid_value(const BinFloat<Bits>& theta) {
  using F = BinFloat<Bits>;
  const F two_pi = 2 * boost::math::constants::pi<F>();
  F a = two_pi * theta;
  F l_re = cos(a), l_im = sin(a);
  F l2_re = l_re * l_re - l_im * l_im;
  F l2_im = 2 * l_re * l_im;
  return {l_re / 2 - l2_re / 4, l_im / 2 - l2_im / 4};
}

template <unsigned Bits>
BinFloat<Bits> to_binfloat(const RotationNumber& theta) {
  if (theta.is_exact()) return theta.exact().to_float<BinFloat<Bits>>();
  return BinFloat<Bits>(theta.approx());
}

CardioidPoint cardioid_point(const RotationNumber& theta);

/// r_0 = r0 and r_k = (inverse of the word's branches)(r_{k-1}): the last
/// symbol is inverted first, so prime_renorm^m(r_k) = r_{k-1}.
std::vector<RotationNumber> pullback_sequence(const RenormWord& word, const RotationNumber& r0,
                                              std::size_t steps);

struct ScalingRow {
  std::size_t step = 0;
  RotationNumber r;
  double abs_err = 0;
  double angle_ratio = std::nan("");  ///< NaN on the first row
  double c_re = 0, c_im = 0;
  double param_ratio = std::nan("");
};

struct ScalingReport {
  RotationNumber theta_star;
  RenormWord word;
  QuadSurd lambda_star;
  std::vector<ScalingRow> rows;
  unsigned precision_bits = 128;
  /// Set when the distance to theta_star fell below 1000 ulp at the highest
  /// supported precision; rows stop before that step.
  bool truncated = false;
  /// |last angle ratio - previous angle ratio|; the geometric convergence
  /// makes this a bound on the distance to lambda_star up to a constant.
  double residual = std::nan("");
};

/// Precision is raised through 128, 256, ..., 2048 bits until every row
/// resolves |r_n - theta_star| with 1000 ulp to spare.
ScalingReport scaling_report(const RenormWord& word, const RotationNumber& r0, std::size_t steps,
                             unsigned min_bits = 128);

void write_scaling_csv(std::ostream& os, const ScalingReport& report);

}  // namespace renormkit
