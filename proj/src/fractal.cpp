#include "renormkit/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "renormkit/cardioid.hpp"

namespace renormkit {

namespace {

void check_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError(std::string(what) + " must be finite");
  }
}

EscapeResult iterate(double cr, double ci, double zr, double zi, std::uint32_t max_iter,
                     double bailout) {
  const double b2 = bailout * bailout;
  for (std::uint32_t n = 0;; ++n) {
    double r2 = zr * zr;
    double i2 = zi * zi;
    double m2 = r2 + i2;
    if (m2 > b2) return {true, n, std::sqrt(m2)};
    if (n == max_iter) return {false, max_iter, std::sqrt(m2)};
    double t = r2 - i2 + cr;
    zi = 2.0 * zr * zi + ci;
    zr = t;
  }
}

double effective_bailout(double bailout, double cr, double ci) {
  return std::max(bailout, std::sqrt(cr * cr + ci * ci));
}

unsigned thread_count(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs body(row) for every row, split into contiguous blocks.
template <class Body>
void for_rows(int rows, unsigned threads, Body body) {
  unsigned n = std::min<unsigned>(thread_count(threads), static_cast<unsigned>(std::max(rows, 1)));
  if (n <= 1) {
    for (int j = 0; j < rows; ++j) body(j);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < n; ++k) {
    int lo = static_cast<int>(static_cast<long long>(rows) * k / n);
    int hi = static_cast<int>(static_cast<long long>(rows) * (k + 1) / n);
    pool.emplace_back([lo, hi, &body] {
      for (int j = lo; j < hi; ++j) body(j);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

EscapeResult escape_time(Complex c, Complex z0, std::uint32_t max_iter, double bailout) {
  check_finite(c, "c");
  check_finite(z0, "z0");
  if (max_iter < 1) throw DomainError("escape_time: max_iter must be >= 1");
  if (!(bailout >= 2.0) || !std::isfinite(bailout)) {
    throw DomainError("escape_time: bailout must be a finite value >= 2");
  }
  return iterate(c.real(), c.imag(), z0.real(), z0.imag(), max_iter, bailout);
}

Complex ImageGrid::pixel_center(int i, int j) const {
  const double px = pixel_size();
  return {window.center.real() + (i + 0.5 - width_px / 2.0) * px,
          window.center.imag() + (height_px / 2.0 - j - 0.5) * px};
}

std::uint64_t ImageGrid::non_escaped_count() const {
  return static_cast<std::uint64_t>(
      std::count_if(cells.begin(), cells.end(), [](const PixelRecord& p) { return !p.escaped; }));
}

ImageGrid render(const RenderConfig& cfg) {
  check_finite(cfg.window.center, "window center");
  check_finite(cfg.julia_c, "julia parameter");
  if (!(cfg.window.width > 0) || !std::isfinite(cfg.window.width)) {
    throw DomainError("render: window width must be positive");
  }
  if (cfg.width_px < 1 || cfg.height_px < 1) throw DomainError("render: empty resolution");
  if (cfg.max_iter < 1) throw DomainError("render: max_iter must be >= 1");
  if (!(cfg.bailout >= 2.0)) throw DomainError("render: bailout must be >= 2");
  const auto pixels = static_cast<std::uint64_t>(cfg.width_px) * static_cast<std::uint64_t>(cfg.height_px);
  if (pixels > cfg.max_pixels) {
    throw BudgetError("render: " + std::to_string(pixels) + " pixels exceed the budget of " +
                      std::to_string(cfg.max_pixels));
  }

  ImageGrid grid;
  grid.window = cfg.window;
  grid.width_px = cfg.width_px;
  grid.height_px = cfg.height_px;
  grid.max_iter = cfg.max_iter;
  grid.bailout = cfg.bailout;
  grid.cells.resize(pixels);

  for_rows(cfg.height_px, cfg.threads, [&](int j) {
    PixelRecord* row = grid.cells.data() + static_cast<std::size_t>(j) * cfg.width_px;
    for (int i = 0; i < cfg.width_px; ++i) {
      Complex p = grid.pixel_center(i, j);
      double cr, ci, zr, zi;
      if (cfg.mode == RenderMode::Mandelbrot) {
        cr = p.real(), ci = p.imag(), zr = 0.0, zi = 0.0;
      } else {
        cr = cfg.julia_c.real(), ci = cfg.julia_c.imag(), zr = p.real(), zi = p.imag();
      }
      row[i] = iterate(cr, ci, zr, zi, cfg.max_iter, effective_bailout(cfg.bailout, cr, ci));
    }
  });
  return grid;
}

std::vector<std::uint8_t> encode_ppm(const ImageGrid& grid) {
  std::string header = "P6\n" + std::to_string(grid.width_px) + " " +
                       std::to_string(grid.height_px) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + grid.cells.size() * 3);
  for (const auto& p : grid.cells) {
    std::uint8_t v = 0;
    if (p.escaped) {
      v = static_cast<std::uint8_t>(255ULL * p.iterations / grid.max_iter);
    }
    out.insert(out.end(), {v, v, v});
  }
  return out;
}

namespace {

// For each pixel: does its clipped 3x3 neighbourhood contain an escaped /
// a non-escaped pixel.
struct Neighbourhood {
  std::vector<std::uint8_t> any_escaped, any_inside;
};

Neighbourhood neighbourhoods(const ImageGrid& g) {
  const int W = g.width_px, H = g.height_px;
  Neighbourhood nb;
  nb.any_escaped.assign(g.cells.size(), 0);
  nb.any_inside.assign(g.cells.size(), 0);
  for (int j = 0; j < H; ++j) {
    for (int i = 0; i < W; ++i) {
      bool esc = false, in = false;
      for (int dj = -1; dj <= 1; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          int x = i + di, y = j + dj;
          if (x < 0 || y < 0 || x >= W || y >= H) continue;
          (g.at(x, y).escaped ? esc : in) = true;
        }
      }
      auto k = static_cast<std::size_t>(j) * W + i;
      nb.any_escaped[k] = esc;
      nb.any_inside[k] = in;
    }
  }
  return nb;
}

}  // namespace

double boundary_fraction(const ImageGrid& grid) {
  if (grid.cells.empty()) return 0.0;
  auto nb = neighbourhoods(grid);
  std::uint64_t mixed = 0;
  for (std::size_t k = 0; k < grid.cells.size(); ++k) {
    if (nb.any_escaped[k] && nb.any_inside[k]) ++mixed;
  }
  return static_cast<double>(mixed) / static_cast<double>(grid.cells.size());
}

std::vector<ZoomFrame> zoom_sequence(const ZoomConfig& cfg) {
  if (!(cfg.factor > 1)) throw DomainError("zoom_sequence: factor must exceed 1");
  if (cfg.frames < 1) throw DomainError("zoom_sequence: need at least one frame");
  if (!(cfg.max_iter_growth >= 1)) throw DomainError("zoom_sequence: max_iter growth must be >= 1");
  std::vector<ZoomFrame> frames;
  const double scale = std::max(std::abs(cfg.center), 1.0);
  for (int k = 0; k < cfg.frames; ++k) {
    double width = cfg.initial_width / std::pow(cfg.factor, k);
    if (width / cfg.resolution < 1e-14 * scale) {
      throw PrecisionError("zoom_sequence: frame " + std::to_string(k) +
                           " pixel size is below double-precision resolution at the center");
    }
    double iters = std::round(cfg.max_iter * std::pow(cfg.max_iter_growth, k));
    if (iters > 4.0e9) throw BudgetError("zoom_sequence: iteration count overflow");
    RenderConfig rc;
    rc.mode = RenderMode::Mandelbrot;
    rc.window = {cfg.center, width};
    rc.width_px = rc.height_px = cfg.resolution;
    rc.max_iter = static_cast<std::uint32_t>(iters);
    rc.threads = cfg.threads;
    ZoomFrame f{render(rc), 0.0};
    f.boundary_fraction = boundary_fraction(f.grid);
    frames.push_back(std::move(f));
  }
  return frames;
}

AreaEstimate area_estimate(Complex c, int resolution, std::uint32_t max_iter,
                           const Window& window, unsigned threads) {
  const double half = window.width / 2;
  if (std::abs(window.center.real()) + 2 > half || std::abs(window.center.imag()) + 2 > half) {
    throw DomainError("area_estimate: window must contain the disk |z| <= 2");
  }
  RenderConfig rc;
  rc.mode = RenderMode::Julia;
  rc.julia_c = c;
  rc.window = window;
  rc.width_px = rc.height_px = resolution;
  rc.max_iter = max_iter;
  rc.threads = threads;
  ImageGrid g = render(rc);
  auto nb = neighbourhoods(g);
  AreaEstimate a;
  for (std::size_t k = 0; k < g.cells.size(); ++k) {
    bool inside = !g.cells[k].escaped;
    if (inside) ++a.non_escaped;
    if (inside && !nb.any_escaped[k]) ++a.lower_cells;
    if (inside || nb.any_inside[k]) ++a.upper_cells;
  }
  a.pixel_area = g.pixel_size() * g.pixel_size();
  a.estimate = static_cast<double>(a.non_escaped) * a.pixel_area;
  return a;
}

// --- Siegel experiments ----------------------------------------------------

namespace {

template <unsigned Bits>
SiegelOrbit siegel_orbit_impl(const RenormWord& word, std::size_t count) {
  using F = BinFloat<Bits>;
  EigenData eig = periodic_point(word);
  F theta = eig.v.template to_float<F>();
  auto c = cardioid_value<Bits>(theta);
  const F two_pi = 2 * boost::math::constants::pi<F>();
  F a_re = cos(two_pi * theta) / 2, a_im = sin(two_pi * theta) / 2;

  SiegelOrbit o;
  o.bits = Bits;
  o.c = {static_cast<double>(c.re), static_cast<double>(c.im)};
  o.alpha = {static_cast<double>(a_re), static_cast<double>(a_im)};
  o.points.reserve(count);
  o.min_dist_alpha = std::numeric_limits<double>::infinity();
  F zr = 0, zi = 0;
  for (std::size_t k = 0; k < count; ++k) {
    double m = static_cast<double>(sqrt(zr * zr + zi * zi));
    if (m > 4) {
      throw PrecisionError("siegel_orbit: |z_" + std::to_string(k) +
                           "| > 4, parameter evaluation is off");
    }
    o.max_abs = std::max(o.max_abs, m);
    o.min_dist_alpha = std::min(
        o.min_dist_alpha, static_cast<double>(sqrt((zr - a_re) * (zr - a_re) + (zi - a_im) * (zi - a_im))));
    o.points.emplace_back(static_cast<double>(zr), static_cast<double>(zi));
    F t = zr * zr - zi * zi + c.re;
    zi = 2 * zr * zi + c.im;
    zr = t;
  }
  return o;
}

template <unsigned Bits>
SelfSimilarity self_similarity_impl(const RenormWord& word, std::size_t returns,
                                    std::uint64_t max_iter) {
  using F = BinFloat<Bits>;
  EigenData eig = periodic_point(word);
  F theta = eig.v.template to_float<F>();
  auto c = cardioid_value<Bits>(theta);

  SelfSimilarity s;
  s.bits = Bits;
  // z_1 = c is the critical value; measure |z_{1+k} - z_1|.
  F zr = c.re, zi = c.im;
  F best = -1;
  for (std::uint64_t k = 1; k <= max_iter && s.return_times.size() < returns; ++k) {
    F t = zr * zr - zi * zi + c.re;
    zi = 2 * zr * zi + c.im;
    zr = t;
    F dr = zr - c.re, di = zi - c.im;
    F d = sqrt(dr * dr + di * di);
    if (best < 0 || d < best) {
      best = d;
      s.return_times.push_back(k);
      s.distances.push_back(static_cast<double>(d));
    }
  }
  if (s.return_times.size() < returns) {
    throw BudgetError("self_similarity_estimate: only " + std::to_string(s.return_times.size()) +
                      " closest returns within " + std::to_string(max_iter) + " iterations");
  }
  for (std::size_t j = 0; j + 1 < s.distances.size(); ++j) {
    s.ratios.push_back(s.distances[j] / s.distances[j + 1]);
  }
  s.convergent_denominators = convergent_denominators(eig.v, returns + 1);
  return s;
}

}  // namespace

SiegelOrbit siegel_orbit(const RenormWord& word, std::size_t count, unsigned bits) {
  if (bits == 128) return siegel_orbit_impl<128>(word, count);
  if (bits == 256) return siegel_orbit_impl<256>(word, count);
  throw DomainError("siegel_orbit: supported precisions are 128 and 256 bits");
}

double winding_rotation(const std::vector<Complex>& points, Complex center) {
  if (points.size() < 2) throw DomainError("winding_rotation: need at least two points");
  const double two_pi = 2 * std::acos(-1.0);
  double total = 0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    double a0 = std::arg(points[k] - center);
    double a1 = std::arg(points[k + 1] - center);
    double turn = (a1 - a0) / two_pi;
    turn -= std::floor(turn);
    total += turn;
  }
  return total / static_cast<double>(points.size() - 1);
}

SelfSimilarity self_similarity_estimate(const RenormWord& word, std::size_t returns,
                                        std::uint64_t max_iter, unsigned bits) {
  if (returns < 3) throw DomainError("self_similarity_estimate: need at least 3 returns");
  if (bits == 128) return self_similarity_impl<128>(word, returns, max_iter);
  if (bits == 256) return self_similarity_impl<256>(word, returns, max_iter);
  throw DomainError("self_similarity_estimate: supported precisions are 128 and 256 bits");
}

}  // namespace renormkit
