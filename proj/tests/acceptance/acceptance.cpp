// End-to-end acceptance checks.  Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "renormkit/cardioid.hpp"
#include "renormkit/fractal.hpp"
#include "renormkit/io.hpp"
#include "renormkit/powertriples.hpp"
#include "renormkit/rotnum.hpp"
#include "renormkit/tiling.hpp"

using namespace renormkit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void run(int id, double budget_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt >= budget_s) o.require(false, "runtime " + format_sig(dt, 3) + " s over budget");
  if (!o.pass) ++failures;
  std::printf("%s criterion %d (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, dt,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

RotationNumber q(long long p, long long d) { return RotationNumber::from_rational(Rational(p, d)); }

QuadSurd length(const QuadSurd& a, const QuadSurd& b) { return (a - b).abs(); }

Outcome golden_eigen_data() {
  Outcome o;
  EigenData e = periodic_point(RenormWord::parse("LR"));
  o.require(e.v == QuadSurd::from_pqr(3, -1, 2, 5), "theta_star is not (3 - sqrt 5)/2");
  o.require(format_sig(e.v.to_float<Float128>(), 17).rfind("0.3819660112", 0) == 0, "theta_star decimal");
  o.require(format_sig(e.t.to_float<Float128>(), 17).rfind("2.6180339887", 0) == 0, "t decimal");
  o.require(format_sig(e.lambda_star.to_float<Float128>(), 17).rfind("6.8541019662", 0) == 0,
            "lambda_star decimal");
  o.require(e.matrix.det() == 1, "det M != 1");
  o.require(e.lambda_star == e.t * e.t, "lambda_star != t^2");
  o.require(prime_renorm(prime_renorm(e.theta_star)) == e.theta_star, "cR^2(theta_star) != theta_star");
  return o;
}

Outcome scaling_proxy() {
  Outcome o;
  ScalingReport rep = scaling_report(RenormWord::parse("LR"), q(2, 5), 8);
  const double lam = 6.8541019662496845;
  const auto& last = rep.rows.back();
  o.require(rep.precision_bits == 128, "needed more than 128 bits");
  o.require(std::abs(last.angle_ratio - lam) <= 1e-4, "angle ratio " + format_sig(last.angle_ratio, 17));
  o.require(std::abs(last.param_ratio - lam) <= 1e-3, "parameter ratio " + format_sig(last.param_ratio, 17));
  o.require(std::abs(last.param_ratio - last.angle_ratio) <= 1e-3, "ratios disagree");
  o.detail = o.pass ? "angle " + format_sig(last.angle_ratio, 12) + ", parameter " +
                          format_sig(last.param_ratio, 12)
                    : o.detail;
  return o;
}

Outcome tiling_reproduction() {
  Outcome o;
  TriplesContext ctx(periodic_point(RenormWord::parse("LR")));
  const std::size_t counts[] = {2, 5, 13};
  const char* labels[] = {"BA", "ABAAB", "AABABAABAABAB"};
  for (std::int64_t k = 0; k < 3; ++k) {
    std::int64_t n = -k;
    Interval w = figure_window(ctx, n);
    Tiling t = build_tiling(ctx, n, w);
    std::string kinds;
    for (const auto& tile : t.tiles) kinds.push_back(to_char(tile.kind));
    o.require(t.tiles.size() == counts[k], "level " + std::to_string(n) + " has " +
                                               std::to_string(t.tiles.size()) + " tiles");
    o.require(kinds == labels[k], "level " + std::to_string(n) + " labels " + kinds);
    Tiling up = build_tiling(ctx, n + 1, {w.lo * ctx.eigen().inv_t, w.hi * ctx.eigen().inv_t});
    bool scaled = up.tiles.size() == t.tiles.size();
    for (std::size_t j = 0; scaled && j < t.tiles.size(); ++j) {
      scaled = t.tiles[j].left == ctx.eigen().t * up.tiles[j].left &&
               t.tiles[j].right == ctx.eigen().t * up.tiles[j].right;
    }
    o.require(scaled, "level " + std::to_string(n) + " endpoints are not t times level " +
                          std::to_string(n + 1));
  }
  return o;
}

Outcome close_return_checks() {
  Outcome o;
  TriplesContext ctx(periodic_point(RenormWord::parse("LR")));
  QuadSurd r = std::max(ctx.eigen().v, ctx.eigen().w);
  DominantSet set = first_dominants(ctx, 34, {-r, r});
  std::size_t agree = 0;
  // Interval i is [b_i, b_{i+1}]; the first one with a close return is i = 2.
  for (std::size_t i = 2; i <= 31; ++i) {
    CloseReturn cr = close_return(ctx, set, i);
    auto found = close_return_oracle(ctx, set, i);
    agree += found.size() == 1 && ctx.equivalent(found[0].q, cr.q) && found[0].n == cr.n &&
             found[0].m == cr.m;
  }
  o.require(agree == 30, "oracle agrees on " + std::to_string(agree) + "/30");
  // Literal pattern: a translation carries [b_i, b_{i-1}] onto [b_{i+1}, b_{i+3}].
  std::size_t literal = 0, shifted = 0, total = 0;
  const auto& b = set.points;
  for (std::size_t i = 2; i <= 31; ++i) {
    ++total;
    literal += length(b[i].position, b[i - 1].position) == length(b[i + 1].position, b[i + 3].position);
    CloseReturn cr = close_return(ctx, set, i);
    shifted += cr.n == static_cast<std::int64_t>(i) - 2 && cr.m == static_cast<std::int64_t>(i);
  }
  o.require(literal == total, "pattern [b_i, b_{i-1}] -> [b_{i+1}, b_{i+3}] holds for " +
                                  std::to_string(literal) + "/" + std::to_string(total) +
                                  " indices (interval lengths differ by t^2); [b_i, b_{i+1}] -> "
                                  "[b_{i-2}, b_i] holds for " +
                                  std::to_string(shifted) + "/" + std::to_string(total));
  return o;
}

Outcome power_triple_freeness() {
  Outcome o;
  TriplesContext ctx(periodic_point(RenormWord::parse("LR")));
  struct Item {
    QuadSurd tau;
    PowerTriple canon;
  };
  std::vector<Item> items;
  for (std::int64_t n = -3; n <= 3; ++n)
    for (long long a = 0; a <= 20; ++a)
      for (long long bb = 0; bb <= 20; ++bb) {
        PowerTriple p = make_triple(n, a, bb);
        items.push_back({ctx.translation_of(p), ctx.canonical(p)});
      }
  std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) { return x.tau < y.tau; });
  std::size_t bad = 0;
  for (std::size_t k = 0; k + 1 < items.size(); ++k) {
    bool same_tau = items[k].tau == items[k + 1].tau;
    bool same_class = items[k].canon == items[k + 1].canon;
    bad += same_tau != same_class;
  }
  o.require(bad == 0, std::to_string(bad) + " collisions between inequivalent classes");
  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<int> lv(-3, 3), co(0, 20);
  std::size_t order_bad = 0, add_bad = 0;
  for (int k = 0; k < 10000; ++k) {
    PowerTriple p = make_triple(lv(rng), co(rng), co(rng));
    PowerTriple s = make_triple(lv(rng), co(rng), co(rng));
    QuadSurd ip = ctx.iota(p), is = ctx.iota(s);
    auto c = ctx.compare(p, s);
    order_bad += (c < 0) != (ip < is) || (c == 0) != (ip == is);
    add_bad += ctx.iota(ctx.add(p, s)) != ip + is;
  }
  o.require(order_bad == 0, std::to_string(order_bad) + " order violations");
  o.require(add_bad == 0, std::to_string(add_bad) + " additivity violations");
  return o;
}

Outcome branch_inverses() {
  Outcome o;
  std::size_t bad = 0, count = 0;
  for (long long d = 2; d <= 1000; ++d) {
    for (long long n = 1; n < d; ++n) {
      if (std::gcd(n, d) != 1) continue;
      RotationNumber mu = q(n, d);
      for (AntiBranch br : {AntiBranch::OneThird, AntiBranch::TwoThirds}) {
        ++count;
        bad += !(prime_renorm(antirenorm_rotation(mu, br)) == mu);
      }
    }
  }
  o.require(bad == 0, std::to_string(bad) + "/" + std::to_string(count) + " inverse failures");
  return o;
}

Outcome renderer_sanity() {
  Outcome o;
  AreaEstimate disk = area_estimate({0, 0}, 1024, 500, {{0, 0}, 4});
  o.require(std::abs(disk.estimate / M_PI - 1) < 0.02, "julia area " + format_sig(disk.estimate, 8));
  RenderConfig rc;
  rc.mode = RenderMode::Mandelbrot;
  rc.window = {{-0.5, 0}, 3};
  rc.width_px = 400;
  rc.height_px = 301;
  rc.max_iter = 500;
  ImageGrid g = render(rc);
  bool mirror = true;
  for (int j = 0; j < rc.height_px; ++j)
    for (int i = 0; i < rc.width_px; ++i) mirror = mirror && g.at(i, j) == g.at(i, rc.height_px - 1 - j);
  o.require(mirror, "mandelbrot grid is not mirror symmetric");
  rc.window = {{-0.7436, 0.1318}, 0.02};
  rc.width_px = rc.height_px = 256;
  std::string digest;
  for (unsigned t : {1u, 2u, 8u}) {
    rc.threads = t;
    auto ppm = encode_ppm(render(rc));
    std::string d = sha256_hex(std::string_view(reinterpret_cast<const char*>(ppm.data()), ppm.size()));
    if (digest.empty()) digest = d;
    o.require(d == digest, "digest differs at " + std::to_string(t) + " threads");
  }
  return o;
}

Outcome positive_measure_substitute() {
  Outcome o;
  RenormWord lr = RenormWord::parse("LR");
  CardioidPoint cp = cardioid_point(periodic_point(lr).theta_star);
  Complex c{static_cast<double>(cp.c_re), static_cast<double>(cp.c_im)};
  AreaEstimate a1 = area_estimate(c, 1024, 2000, {{0, 0}, 4});
  AreaEstimate a2 = area_estimate(c, 2048, 2000, {{0, 0}, 4});
  o.require(a1.estimate > 0 && a2.estimate > 0, "area is not positive");
  o.require(std::abs(a1.estimate / a2.estimate - 1) < 0.02,
            "areas " + format_sig(a1.estimate, 8) + " vs " + format_sig(a2.estimate, 8));
  SiegelOrbit orbit = siegel_orbit(lr, 100000);
  o.require(orbit.max_abs <= 2, "critical orbit leaves |z| <= 2");
  SelfSimilarity s = self_similarity_estimate(lr, 8);
  bool fib = true;
  for (std::size_t j = 0; j < 8; ++j) fib = fib && BigInt(s.return_times[j]) == s.convergent_denominators[j];
  o.require(fib, "closest-return times are not Fibonacci numbers");
  if (o.pass) {
    o.detail = "areas " + format_sig(a1.estimate, 6) + ", " + format_sig(a2.estimate, 6) +
               "; max |z| " + format_sig(orbit.max_abs, 6);
  }
  return o;
}

Outcome zoom_proxy() {
  Outcome o;
  EigenData e = periodic_point(RenormWord::parse("LR"));
  CardioidPoint cp = cardioid_point(e.theta_star);
  ZoomConfig zc;
  zc.center = {static_cast<double>(cp.c_re), static_cast<double>(cp.c_im)};
  zc.initial_width = 0.2;
  zc.factor = e.lambda_star.to_double();
  zc.frames = 3;
  zc.resolution = 256;
  zc.max_iter = 20000;
  zc.max_iter_growth = e.t.to_double();
  auto frames = zoom_sequence(zc);
  double f2 = frames[1].boundary_fraction, f3 = frames[2].boundary_fraction;
  double variation = std::abs(f3 - f2) / std::max(f2, f3);
  o.require(f2 > 0 && f3 > 0, "empty boundary");
  o.require(variation < 0.25, "variation " + format_sig(variation, 4));
  if (o.pass) {
    o.detail = "boundary fractions " + format_sig(f2, 4) + ", " + format_sig(f3, 4);
  }
  return o;
}

}  // namespace

int main() {
  run(1, 1, golden_eigen_data);
  run(2, 5, scaling_proxy);
  run(3, 1, tiling_reproduction);
  run(4, 10, close_return_checks);
  run(5, 10, power_triple_freeness);
  run(6, 5, branch_inverses);
  run(7, 30, renderer_sanity);
  run(8, 120, positive_measure_substitute);
  run(9, 60, zoom_proxy);
  return failures == 0 ? 0 : 1;
}
