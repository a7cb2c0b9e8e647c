#pragma once

// Renormalization tilings of the real line and dominant points.
//
// At level n the base intervals are J_n(0) = [-v_n, 0] (kind B) and
// J_n(1) = [0, w_n] (kind A), v_n = t^-n v, w_n = t^-n w.  The tiling is
// obtained by spreading them with the translations T^P:
//   B tiles  T^P(J_n(0))  for P < (n, 0, 1)
//   A tiles  T^P(J_n(1))  for P < (n, 1, 0).
// Tiles are indexed left to right with tile 0 = J_n(0), tile 1 = J_n(1).
//
// b_P = -translation_of(P) is dominant when [0, b_P] holds no b_Q with
// Q < P.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "renormkit/powertriples.hpp"

namespace renormkit {

struct Interval {
  QuadSurd lo;
  QuadSurd hi;
};

enum class TileKind : std::uint8_t { B, A };
char to_char(TileKind k);

struct Tile {
  TileKind kind;
  PowerTriple landing;
  std::int64_t index = 0;
  QuadSurd left;
  QuadSurd right;
};

struct Tiling {
  std::int64_t level = 0;
  Interval window;
  std::vector<Tile> tiles;
};

/// Exact lattice enumeration: points x at `level` with
/// proj_lo <= proj(x) < proj_hi and tau_lo <= t^-level (x2 w - x1 v) <= tau_hi.
struct LatticeQuery {
  std::int64_t level = 0;
  QuadSurd proj_lo;
  QuadSurd proj_hi;
  bool proj_hi_inclusive = false;
  QuadSurd tau_lo;
  QuadSurd tau_hi;
};

struct EnumerationBudget {
  std::uint64_t max_candidates = 20'000'000;
};

std::vector<LatticePoint> enumerate_lattice(const TriplesContext& ctx, const LatticeQuery& q,
                                            const EnumerationBudget& budget = {});

Tiling build_tiling(const TriplesContext& ctx, std::int64_t level, const Interval& window,
                    const EnumerationBudget& budget = {});

/// Throws std::logic_error unless tiles abut exactly and cover the window.
void validate_tiling(const Tiling& tiling);

/// Tile owning x: tiles own their left endpoint, the leftmost tile also its
/// right one.  nullopt outside the tiled range.
std::optional<std::size_t> locate(const Tiling& tiling, const QuadSurd& x);

struct TriangulationEntry {
  std::int64_t index;
  TileKind kind;
  PowerTriple landing;
};

std::vector<TriangulationEntry> triangulation_sequence(const TriplesContext& ctx,
                                                       std::int64_t level, const Interval& window,
                                                       const EnumerationBudget& budget = {});

/// Window [-v_{2n}, w_{2n}] in which the level-n tiling shows the pattern of
/// two levels of refinement.
Interval figure_window(const TriplesContext& ctx, std::int64_t level);

struct DominantPoint {
  std::int64_t index = 0;
  QuadSurd position;  ///< b_P
  QuadSurd iota;      ///< generation iota(P)
  PowerTriple generation;
  LatticePoint lattice;  ///< P as a level-0 lattice point
};

struct DominantSet {
  Interval window;
  std::vector<DominantPoint> points;
  /// k with t P_i = P_{i+k} for every enumerated pair, when one exists.
  std::optional<std::size_t> period_shift;
};

/// Dominant points in `window` (which must contain 0 in its interior) with
/// iota(P) <= max_generation, by increasing generation.
DominantSet dominant_points(const TriplesContext& ctx, const QuadSurd& max_generation,
                            const Interval& window, const EnumerationBudget& budget = {});

/// The first `count` dominant points in `window`.
DominantSet first_dominants(const TriplesContext& ctx, std::size_t count, const Interval& window,
                            const EnumerationBudget& budget = {});

struct CloseReturn {
  PowerTriple q;
  std::int64_t n = 0;
  std::int64_t m = 0;
  /// True when b_i and b_{i-1} lie on opposite sides of 0 (Q = P_{i-1}).
  bool opposite_sides = false;

  friend bool operator==(const CloseReturn&, const CloseReturn&) = default;
};

/// T^Q maps [b_i, b_{i+1}] onto [b_n, b_m] endpoint-wise.  Defined for i >= 2.
CloseReturn close_return(const TriplesContext& ctx, const DominantSet& set, std::size_t i);

/// Brute-force counterpart: collects every Q with 0 < iota(Q) <= iota(P_{i+2})
/// sending b_i and b_{i+1} to dominants b_n, b_m with n < m <= i, by trying
/// all pairs (n, m).  Sorted by iota(Q); the first entry is the close return.
/// Needs i + 2 enumerated points.
std::vector<CloseReturn> close_return_oracle(const TriplesContext& ctx, const DominantSet& set,
                                             std::size_t i,
                                             const EnumerationBudget& budget = {});

}  // namespace renormkit
