#pragma once

// Escape-time rendering of z -> z^2 + c and the Siegel-disk experiments at
// the cardioid parameters c(theta_star).
//
// Pixel (i, j) of a W x H grid samples its center
//   x = cx + (i + 0.5 - W/2) px,  y = cy + (H/2 - j - 0.5) px,  px = width / W,
// with row 0 at the top.  Iteration is plain IEEE double arithmetic; the
// library is compiled without floating-point contraction so grids are
// bit-identical for any thread count.

#include <complex>
#include <cstdint>
#include <vector>

#include "renormkit/rotnum.hpp"

namespace renormkit {

using Complex = std::complex<double>;

struct EscapeResult {
  bool escaped = false;
  std::uint32_t iterations = 0;  ///< first n with |z_n| > bailout, else max_iter
  double final_magnitude = 0;

  friend bool operator==(const EscapeResult&, const EscapeResult&) = default;
};

/// Iterates from z0 and reports the first n <= max_iter with |z_n| > bailout.
EscapeResult escape_time(Complex c, Complex z0, std::uint32_t max_iter, double bailout = 2.0);

enum class RenderMode { Mandelbrot, Julia };

struct Window {
  Complex center;
  double width = 1;
};

struct RenderConfig {
  RenderMode mode = RenderMode::Mandelbrot;
  Complex julia_c{0, 0};
  Window window;
  int width_px = 64;
  int height_px = 64;
  std::uint32_t max_iter = 100;
  /// Raised per pixel to max(bailout, |c|).
  double bailout = 2.0;
  unsigned threads = 1;  ///< 0 selects the hardware concurrency
  std::uint64_t max_pixels = 1ULL << 26;
};

using PixelRecord = EscapeResult;

struct ImageGrid {
  Window window;
  int width_px = 0;
  int height_px = 0;
  std::uint32_t max_iter = 0;
  double bailout = 2.0;
  std::vector<PixelRecord> cells;  ///< row-major, row 0 on top

  const PixelRecord& at(int i, int j) const {
    return cells[static_cast<std::size_t>(j) * static_cast<std::size_t>(width_px) +
                 static_cast<std::size_t>(i)];
  }
  double pixel_size() const { return window.width / width_px; }
  Complex pixel_center(int i, int j) const;
  std::uint64_t non_escaped_count() const;
};

ImageGrid render(const RenderConfig& cfg);

/// Binary P6, gray triples: escaped -> floor(255 iterations / max_iter), else 0.
std::vector<std::uint8_t> encode_ppm(const ImageGrid& grid);

/// Fraction of pixels whose 3x3 neighbourhood (clipped at the border) holds
/// both escaped and non-escaped pixels.
double boundary_fraction(const ImageGrid& grid);

struct ZoomConfig {
  Complex center;
  double initial_width = 0.2;
  double factor = 2;
  int frames = 3;
  int resolution = 256;
  std::uint32_t max_iter = 1000;
  /// Frame k uses round(max_iter * max_iter_growth^k) iterations.
  double max_iter_growth = 1.0;
  unsigned threads = 1;
};

struct ZoomFrame {
  ImageGrid grid;
  double boundary_fraction = 0;
};

std::vector<ZoomFrame> zoom_sequence(const ZoomConfig& cfg);

struct AreaEstimate {
  std::uint64_t non_escaped = 0;
  /// Non-escaped pixels whose whole 3x3 neighbourhood is non-escaped.
  std::uint64_t lower_cells = 0;
  /// Non-escaped pixels plus escaped pixels touching one.
  std::uint64_t upper_cells = 0;
  double pixel_area = 0;
  double estimate = 0;  ///< non_escaped * pixel_area
};

/// Filled-Julia area by pixel counting on a square grid; the window must
/// contain the disk |z| <= 2.
AreaEstimate area_estimate(Complex c, int resolution, std::uint32_t max_iter,
                           const Window& window, unsigned threads = 1);

struct SiegelOrbit {
  Complex c;      ///< c(theta_star), rounded
  Complex alpha;  ///< fixed point lambda/2
  std::vector<Complex> points;  ///< z_0 = 0, z_1 = c, ...
  double max_abs = 0;
  double min_dist_alpha = 0;
  unsigned bits = 128;
};

/// Critical orbit of z^2 + c(theta_star) computed at `bits` (128 or 256).
SiegelOrbit siegel_orbit(const RenormWord& word, std::size_t count, unsigned bits = 128);

/// Mean angular increment of the points around `center`, in turns.
double winding_rotation(const std::vector<Complex>& points, Complex center);

struct SelfSimilarity {
  std::vector<std::uint64_t> return_times;  ///< k with |z_{1+k} - z_1| a new record
  std::vector<double> distances;
  std::vector<double> ratios;  ///< distances[j] / distances[j+1]
  std::vector<BigInt> convergent_denominators;
  unsigned bits = 128;
};

SelfSimilarity self_similarity_estimate(const RenormWord& word, std::size_t returns,
                                        std::uint64_t max_iter = 10'000'000, unsigned bits = 128);

}  // namespace renormkit
