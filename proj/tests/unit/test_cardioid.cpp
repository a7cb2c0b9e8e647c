#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "renormkit/cardioid.hpp"

using namespace renormkit;

namespace {

RotationNumber q(long long p, long long d) { return RotationNumber::from_rational(Rational(p, d)); }

}  // namespace

TEST_CASE("cardioid points") {
  auto c0 = cardioid_point(q(0, 1));
  CHECK(static_cast<double>(c0.c_re) == 0.25);
  CHECK(static_cast<double>(abs(c0.c_im)) < 1e-30);
  auto c1 = cardioid_point(q(1, 2));
  CHECK(static_cast<double>(abs(c1.c_re + Float128(3) / 4)) < 1e-30);
  auto c3 = cardioid_point(q(1, 3));
  CHECK(static_cast<double>(abs(c3.c_re + Float128(1) / 8)) < 1e-30);
  CHECK(static_cast<double>(abs(c3.c_im - 3 * sqrt(Float128(3)) / 8)) < 1e-30);
  for (int k = 0; k < 50; ++k) {
    auto p = cardioid_point(q(k, 50));
    Float128 m = p.lambda_re * p.lambda_re + p.lambda_im * p.lambda_im;
    CHECK(static_cast<double>(abs(m - 1)) < 1e-12);
  }
}

TEST_CASE("cardioid parameterization is injective at 1e-4 resolution") {
  std::vector<std::pair<double, double>> pts;
  for (int k = 0; k < 10000; ++k) {
    Float128 th = Float128(k) / 10000;
    auto c = cardioid_value<128>(th);
    pts.emplace_back(static_cast<double>(c.re), static_cast<double>(c.im));
  }
  std::sort(pts.begin(), pts.end());
  double best = 1e300;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size() && pts[j].first - pts[i].first < 1e-6; ++j) {
      best = std::min(best, std::hypot(pts[j].first - pts[i].first, pts[j].second - pts[i].second));
    }
  }
  CHECK(best > 1e-10);
}

TEST_CASE("pullback sequences") {
  RenormWord lr = RenormWord::parse("LR");
  auto seq = pullback_sequence(lr, q(1, 3), 1);
  REQUIRE(seq.size() == 2);
  CHECK(seq[1] == q(3, 8));
  CHECK(prime_renorm(prime_renorm(seq[1])) == q(1, 3));

  EigenData e = periodic_point(lr);
  auto fixed = pullback_sequence(lr, e.theta_star, 5);
  for (const auto& r : fixed) CHECK(r == e.theta_star);

  auto s = pullback_sequence(lr, q(2, 5), 10);
  RotationNumber back = s.back();
  for (std::size_t k = 0; k < 2 * 10; ++k) back = prime_renorm(back);
  CHECK(back == q(2, 5));
  for (std::size_t k = 3; k < s.size(); ++k) {
    double ratio = (s[k - 1].exact() - e.v).abs().to_double() / (s[k].exact() - e.v).abs().to_double();
    CHECK(ratio == doctest::Approx(e.lambda_star.to_double()).epsilon(1e-2));
  }
  CHECK_THROWS_AS(pullback_sequence(lr, q(0, 1), 3), DomainError);
  // The inverse branches contract toward theta_star from any start.
  auto far = pullback_sequence(lr, q(9, 10), 6);
  CHECK((far.back().exact() - e.v).abs() < (far.front().exact() - e.v).abs());
}

TEST_CASE("scaling report golden") {
  ScalingReport rep = scaling_report(RenormWord::parse("LR"), q(2, 5), 8);
  REQUIRE(rep.rows.size() == 9);
  CHECK_FALSE(rep.truncated);
  CHECK(rep.precision_bits == 128);
  double lam = rep.lambda_star.to_double();
  const auto& last = rep.rows.back();
  CHECK(std::abs(last.angle_ratio - lam) <= 1e-4);
  CHECK(std::abs(last.param_ratio - lam) <= 1e-3);
  CHECK(std::abs(last.param_ratio / last.angle_ratio - 1) <= 1e-3);
  CHECK(std::isnan(rep.rows[0].angle_ratio));
  for (std::size_t n = 1; n < rep.rows.size(); ++n) {
    CHECK(rep.rows[n].angle_ratio > 0);
    CHECK(rep.rows[n].param_ratio > 0);
    CHECK(rep.rows[n].abs_err < rep.rows[n - 1].abs_err);
  }
  for (std::size_t n = 3; n < rep.rows.size(); ++n) {
    CHECK(std::abs(rep.rows[n].angle_ratio - lam) <= std::abs(rep.rows[n - 1].angle_ratio - lam));
  }
  std::ostringstream os;
  write_scaling_csv(os, rep);
  std::string csv = os.str();
  CHECK(csv.rfind("step,r,abs_err,angle_ratio,c_re,c_im,param_ratio\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
  CHECK(csv.find("\n0,0.40000000000000002,") != std::string::npos);
}

TEST_CASE("scaling report LRR") {
  ScalingReport rep = scaling_report(RenormWord::parse("LRR"), q(2, 5), 8);
  double target = 7 + 4 * std::sqrt(3.0);
  CHECK(rep.lambda_star == QuadSurd::from_pqr(7, 4, 1, 3));
  CHECK(std::abs(rep.rows.back().angle_ratio - target) <= 1e-3);
}

TEST_CASE("precision is raised and finally exhausted") {
  ScalingReport deep = scaling_report(RenormWord::parse("LR"), q(2, 5), 60);
  CHECK_FALSE(deep.truncated);
  CHECK(deep.precision_bits == 256);
  CHECK(std::abs(deep.rows.back().angle_ratio - deep.lambda_star.to_double()) < 1e-12);
  ScalingReport too_deep = scaling_report(RenormWord::parse("LR"), q(2, 5), 740);
  CHECK(too_deep.truncated);
  CHECK(too_deep.precision_bits == 2048);
  CHECK(too_deep.rows.size() < 741);
  CHECK(too_deep.rows.size() > 700);
}
