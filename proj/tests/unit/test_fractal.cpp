#include <cmath>

#include "doctest.h"
#include "renormkit/cardioid.hpp"
#include "renormkit/fractal.hpp"

using namespace renormkit;

namespace {

RenderConfig mandel_default() {
  RenderConfig rc;
  rc.mode = RenderMode::Mandelbrot;
  rc.window = {{-0.75, 0}, 3.5};
  rc.width_px = rc.height_px = 64;
  rc.max_iter = 100;
  return rc;
}

// Independent scalar reference using std::complex.
bool inside_reference(Complex c, std::uint32_t max_iter) {
  Complex z = 0;
  for (std::uint32_t n = 0; n < max_iter; ++n) {
    z = z * z + c;
    if (std::norm(z) > 4.0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("escape time examples") {
  auto a = escape_time({0, 0}, {0, 0}, 50);
  CHECK_FALSE(a.escaped);
  CHECK(a.iterations == 50);
  auto b = escape_time({1, 0}, {0, 0}, 50);
  CHECK(b.escaped);
  CHECK(b.iterations == 3);
  CHECK(b.final_magnitude == 5.0);
  auto c = escape_time({-2, 0}, {0, 0}, 1000);
  CHECK_FALSE(c.escaped);
  CHECK(c.final_magnitude <= 2.0);
  CHECK_THROWS_AS(escape_time({NAN, 0}, {0, 0}, 10), DomainError);
  CHECK_THROWS_AS(escape_time({0, 0}, {0, INFINITY}, 10), DomainError);
  CHECK_THROWS_AS(escape_time({0, 0}, {0, 0}, 0), DomainError);
  CHECK_THROWS_AS(escape_time({0, 0}, {0, 0}, 10, 1.5), DomainError);
}

TEST_CASE("mandelbrot golden count and scalar cross-check") {
  RenderConfig rc = mandel_default();
  ImageGrid g = render(rc);
  std::uint64_t ref = 0;
  for (int j = 0; j < g.height_px; ++j) {
    for (int i = 0; i < g.width_px; ++i) {
      bool in = inside_reference(g.pixel_center(i, j), rc.max_iter);
      ref += in;
      CHECK(in == !g.at(i, j).escaped);
    }
  }
  CHECK(g.non_escaped_count() == ref);
  // Recorded from the first verified run.
  CHECK(g.non_escaped_count() == 514);
}

TEST_CASE("escaped records are consistent") {
  ImageGrid g = render(mandel_default());
  for (const auto& p : g.cells) {
    if (p.escaped) {
      CHECK(p.final_magnitude > 2.0);
      CHECK(p.iterations <= g.max_iter);
    } else {
      CHECK(p.iterations == g.max_iter);
      CHECK(p.final_magnitude <= 2.0);
    }
  }
}

TEST_CASE("julia at c = 0 is the unit disk") {
  RenderConfig rc;
  rc.mode = RenderMode::Julia;
  rc.window = {{0, 0}, 4};
  rc.width_px = rc.height_px = 512;
  rc.max_iter = 200;
  ImageGrid g = render(rc);
  double area = static_cast<double>(g.non_escaped_count()) * g.pixel_size() * g.pixel_size();
  CHECK(std::abs(area / M_PI - 1) < 0.02);
  for (int j = 0; j < g.height_px; ++j) {
    for (int i = 0; i < g.width_px; ++i) {
      double r = std::abs(g.pixel_center(i, j));
      if (std::abs(r - 1) < 1e-9) continue;
      CHECK((r < 1) == !g.at(i, j).escaped);
    }
  }
}

TEST_CASE("julia at c = -2 keeps exactly the real segment") {
  RenderConfig rc;
  rc.mode = RenderMode::Julia;
  rc.julia_c = {-2, 0};
  rc.window = {{0, 0}, 5};
  rc.width_px = 64;
  rc.height_px = 33;
  rc.max_iter = 500;
  ImageGrid g = render(rc);
  for (int j = 0; j < g.height_px; ++j) {
    for (int i = 0; i < g.width_px; ++i) {
      Complex z = g.pixel_center(i, j);
      bool member = z.imag() == 0 && std::abs(z.real()) <= 2;
      CHECK(member == !g.at(i, j).escaped);
    }
  }
}

TEST_CASE("window inside the main cardioid never escapes") {
  RenderConfig rc = mandel_default();
  rc.window = {{-0.1, 0.05}, 0.2};
  rc.max_iter = 2000;
  ImageGrid g = render(rc);
  CHECK(g.non_escaped_count() == g.cells.size());
}

TEST_CASE("thread count does not change the grid") {
  RenderConfig rc = mandel_default();
  rc.width_px = 97;
  rc.height_px = 61;
  rc.window = {{-0.7436, 0.1318}, 0.01};
  rc.max_iter = 500;
  rc.threads = 1;
  auto base = render(rc);
  for (unsigned t : {2u, 3u, 8u}) {
    rc.threads = t;
    auto g = render(rc);
    CHECK(g.cells == base.cells);
    CHECK(encode_ppm(g) == encode_ppm(base));
  }
}

TEST_CASE("symmetries") {
  for (int h : {64, 65}) {
    RenderConfig rc = mandel_default();
    rc.window = {{-0.5, 0}, 3};
    rc.width_px = 80;
    rc.height_px = h;
    ImageGrid g = render(rc);
    for (int j = 0; j < h; ++j)
      for (int i = 0; i < rc.width_px; ++i) CHECK(g.at(i, j) == g.at(i, h - 1 - j));
  }
  RenderConfig jc;
  jc.mode = RenderMode::Julia;
  jc.julia_c = {-0.39, 0.59};
  jc.window = {{0, 0}, 3.2};
  jc.width_px = 90;
  jc.height_px = 70;
  jc.max_iter = 300;
  ImageGrid g = render(jc);
  for (int j = 0; j < jc.height_px; ++j)
    for (int i = 0; i < jc.width_px; ++i)
      CHECK(g.at(i, j) == g.at(jc.width_px - 1 - i, jc.height_px - 1 - j));
}

TEST_CASE("non-escaped count is nonincreasing in max_iter") {
  RenderConfig rc = mandel_default();
  rc.window = {{-0.75, 0.1}, 0.3};
  std::uint64_t prev = ~0ULL;
  for (std::uint32_t it : {5u, 10u, 20u, 50u, 100u, 300u, 1000u}) {
    rc.max_iter = it;
    auto n = render(rc).non_escaped_count();
    CHECK(n <= prev);
    prev = n;
  }
}

TEST_CASE("ppm encoding") {
  RenderConfig rc = mandel_default();
  rc.width_px = 5;
  rc.height_px = 3;
  ImageGrid g = render(rc);
  auto ppm = encode_ppm(g);
  std::string header = "P6\n5 3\n255\n";
  REQUIRE(ppm.size() == header.size() + 45);
  CHECK(std::string(ppm.begin(), ppm.begin() + header.size()) == header);
  for (std::size_t k = 0; k < g.cells.size(); ++k) {
    const auto& p = g.cells[k];
    std::uint8_t v = p.escaped ? static_cast<std::uint8_t>(std::floor(255.0 * p.iterations / g.max_iter)) : 0;
    for (int ch = 0; ch < 3; ++ch) CHECK(ppm[header.size() + 3 * k + ch] == v);
  }
}

TEST_CASE("render budget") {
  RenderConfig rc = mandel_default();
  rc.max_pixels = 100;
  CHECK_THROWS_AS(render(rc), BudgetError);
  rc = mandel_default();
  rc.window.width = -1;
  CHECK_THROWS_AS(render(rc), DomainError);
}

TEST_CASE("boundary fraction") {
  ImageGrid g;
  g.width_px = 4;
  g.height_px = 1;
  g.max_iter = 10;
  g.cells = {{true, 1, 3}, {true, 1, 3}, {false, 10, 0}, {false, 10, 0}};
  CHECK(boundary_fraction(g) == 0.5);
}

TEST_CASE("zoom sequences") {
  ZoomConfig zc;
  zc.center = {-0.39054087021839984, 0.5867879073469688};
  zc.initial_width = 0.2;
  zc.factor = 6.854101966249685;
  zc.frames = 3;
  zc.resolution = 48;
  zc.max_iter = 300;
  auto frames = zoom_sequence(zc);
  REQUIRE(frames.size() == 3);
  for (int k = 0; k < 3; ++k) {
    double w = frames[static_cast<std::size_t>(k)].grid.window.width;
    CHECK(w == zc.initial_width / std::pow(zc.factor, k));
  }
  CHECK(frames[1].grid.window.width / frames[2].grid.window.width == doctest::Approx(zc.factor).epsilon(1e-14));
  RenderConfig rc;
  rc.window = frames[2].grid.window;
  rc.width_px = rc.height_px = 48;
  rc.max_iter = 300;
  CHECK(render(rc).cells == frames[2].grid.cells);
  zc.frames = 20;
  CHECK_THROWS_AS(zoom_sequence(zc), PrecisionError);
  zc.factor = 1;
  CHECK_THROWS_AS(zoom_sequence(zc), DomainError);
}

TEST_CASE("area estimates") {
  auto disk = area_estimate({0, 0}, 1024, 500, {{0, 0}, 4});
  CHECK(std::abs(disk.estimate / M_PI - 1) < 0.02);
  CHECK(disk.lower_cells <= disk.non_escaped);
  CHECK(disk.non_escaped <= disk.upper_cells);
  auto b1 = area_estimate({-1, 0}, 1024, 500, {{0, 0}, 4});
  auto b2 = area_estimate({-1, 0}, 2048, 500, {{0, 0}, 4});
  CHECK(std::abs(b1.estimate / b2.estimate - 1) < 0.02);
  double prev = 1e9;
  for (std::uint32_t it : {20u, 50u, 100u, 400u}) {
    double a = area_estimate({-0.39, 0.59}, 256, it, {{0, 0}, 4}).estimate;
    CHECK(a <= prev);
    prev = a;
  }
  CHECK_THROWS_AS(area_estimate({0, 0}, 64, 10, {{0, 0}, 3}), DomainError);
  CHECK_THROWS_AS(area_estimate({0, 0}, 64, 10, {{1, 0}, 4}), DomainError);
}

TEST_CASE("siegel orbit") {
  RenormWord lr = RenormWord::parse("LR");
  SiegelOrbit o = siegel_orbit(lr, 10000);
  REQUIRE(o.points.size() == 10000);
  CHECK(o.points[0] == Complex(0, 0));
  CHECK(o.points[1].real() == doctest::Approx(-0.39054087021839984).epsilon(1e-15));
  CHECK(o.max_abs <= 2);
  CHECK(o.min_dist_alpha > 1e-3);
  std::vector<Complex> tail(o.points.begin() + 1, o.points.end());
  double rot = winding_rotation(tail, o.alpha);
  double theta = periodic_point(lr).v.to_double();
  CHECK(std::abs(rot - theta) <= 1.0 / 10000);
  SiegelOrbit hi = siegel_orbit(lr, 200, 256);
  CHECK(std::abs(hi.points[199] - o.points[199]) < 1e-12);
  CHECK_THROWS_AS(siegel_orbit(lr, 10, 64), DomainError);
}

TEST_CASE("closest returns of the critical orbit") {
  RenormWord lr = RenormWord::parse("LR");
  SelfSimilarity s = self_similarity_estimate(lr, 10);
  REQUIRE(s.return_times.size() == 10);
  for (std::size_t j = 0; j < s.return_times.size(); ++j) {
    CHECK(BigInt(s.return_times[j]) == s.convergent_denominators[j]);
  }
  for (double r : s.ratios) CHECK(r > 1);
  SelfSimilarity d = self_similarity_estimate(lr, 10, 10'000'000, 256);
  REQUIRE(d.ratios.size() == s.ratios.size());
  for (std::size_t j = 0; j < s.ratios.size(); ++j) {
    CHECK(std::abs(d.ratios[j] / s.ratios[j] - 1) < 1e-6);
  }
  CHECK_THROWS_AS(self_similarity_estimate(lr, 2), DomainError);
  CHECK_THROWS_AS(self_similarity_estimate(lr, 10, 20), BudgetError);
}
