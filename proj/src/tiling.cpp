#include "renormkit/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace renormkit {

namespace {

QuadSurd tau_of(const TriplesContext& ctx, std::int64_t level, const LatticePoint& x) {
  return ctx.t_pow(-level) *
         (QuadSurd(Rational(x.x2)) * ctx.eigen().w - QuadSurd(Rational(x.x1)) * ctx.eigen().v);
}

// A lattice vector with its proj and tau values, in units of the region size.
struct BasisVector {
  std::int64_t x1, x2;
  long double p, t;
};

// Visits every integer point in a neighbourhood of the parallelogram
// plo <= proj <= phi, tlo <= tau <= thi.  The scan runs in a Lagrange-reduced
// basis for the metric normalized by the region's extents, so the work is
// proportional to the number of points rather than to the region's length;
// each coordinate range is padded by one lattice step.
void scan_parallelogram(const TriplesContext& ctx, std::int64_t level, long double plo,
                        long double phi, long double tlo, long double thi,
                        std::uint64_t max_candidates,
                        const std::function<void(std::int64_t, std::int64_t)>& visit) {
  const long double sp = std::max(phi - plo, 1e-12L * (1 + std::abs(phi)));
  const long double st = std::max(thi - tlo, 1e-12L * (1 + std::abs(thi)));
  const long double limit = 9.0e15L;
  auto make = [&](long double a, long double b) {
    if (!(std::abs(a) < limit && std::abs(b) < limit)) {
      throw BudgetError("lattice enumeration: coordinates exceed double-exact range");
    }
    LatticePoint x{static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)};
    return BasisVector{static_cast<std::int64_t>(a), static_cast<std::int64_t>(b),
                       ctx.proj(x.x1, x.x2).to_double() / sp, tau_of(ctx, level, x).to_double() / st};
  };
  auto dot = [](const BasisVector& u, const BasisVector& v) { return u.p * v.p + u.t * v.t; };

  BasisVector b1 = make(1, 0), b2 = make(0, 1);
  for (int guard = 0; guard < 400; ++guard) {
    if (dot(b1, b1) > dot(b2, b2)) std::swap(b1, b2);
    long double mu = std::round(dot(b1, b2) / dot(b1, b1));
    if (mu == 0) break;
    b2 = make(static_cast<long double>(b2.x1) - mu * static_cast<long double>(b1.x1),
              static_cast<long double>(b2.x2) - mu * static_cast<long double>(b1.x2));
  }

  const long double pl = plo / sp, ph = phi / sp, tl = tlo / st, th = thi / st;
  const long double det = b1.p * b2.t - b2.p * b1.t;
  long double y1_min = std::numeric_limits<long double>::infinity();
  long double y1_max = -y1_min;
  for (long double p : {pl, ph}) {
    for (long double t : {tl, th}) {
      long double y1 = (p * b2.t - b2.p * t) / det;
      y1_min = std::min(y1_min, y1);
      y1_max = std::max(y1_max, y1);
    }
  }
  if (!(std::abs(y1_min) < limit && std::abs(y1_max) < limit)) {
    throw BudgetError("lattice enumeration: coordinates exceed double-exact range");
  }
  auto i_lo = static_cast<std::int64_t>(std::floor(y1_min)) - 1;
  auto i_hi = static_cast<std::int64_t>(std::ceil(y1_max)) + 1;
  std::uint64_t visited = 0;
  auto charge = [&](std::uint64_t n) {
    visited += n;
    if (visited > max_candidates) {
      throw BudgetError("lattice enumeration exceeds the budget of " +
                        std::to_string(max_candidates) + " candidates");
    }
  };
  for (std::int64_t y1 = i_lo; y1 <= i_hi; ++y1) {
    charge(1);
    const auto dy = static_cast<long double>(y1);
    long double lo = -std::numeric_limits<long double>::infinity();
    long double hi = -lo;
    auto clip = [&](long double c1, long double c2, long double flo, long double fhi) {
      if (c2 == 0) return;
      long double a = (flo - c1 * dy) / c2, b = (fhi - c1 * dy) / c2;
      if (c2 < 0) std::swap(a, b);
      lo = std::max(lo, a);
      hi = std::min(hi, b);
    };
    clip(b1.p, b2.p, pl, ph);
    clip(b1.t, b2.t, tl, th);
    if (lo > hi + 2) continue;
    auto j_lo = static_cast<std::int64_t>(std::floor(lo)) - 1;
    auto j_hi = static_cast<std::int64_t>(std::ceil(hi)) + 1;
    charge(static_cast<std::uint64_t>(j_hi - j_lo + 1));
    for (std::int64_t y2 = j_lo; y2 <= j_hi; ++y2) {
      visit(y1 * b1.x1 + y2 * b2.x1, y1 * b1.x2 + y2 * b2.x2);
    }
  }
}

// Slack added to the float bounds before the exact filter.
double pad(const QuadSurd& x) { return 1e-9 * (1.0 + std::abs(x.to_double())); }

}  // namespace

char to_char(TileKind k) { return k == TileKind::B ? 'B' : 'A'; }

std::vector<LatticePoint> enumerate_lattice(const TriplesContext& ctx, const LatticeQuery& q,
                                            const EnumerationBudget& budget) {
  std::vector<LatticePoint> out;
  if (q.proj_hi < q.proj_lo || q.tau_hi < q.tau_lo) return out;
  scan_parallelogram(
      ctx, q.level, q.proj_lo.to_double() - pad(q.proj_lo), q.proj_hi.to_double() + pad(q.proj_hi),
      q.tau_lo.to_double() - pad(q.tau_lo), q.tau_hi.to_double() + pad(q.tau_hi),
      budget.max_candidates, [&](std::int64_t x1, std::int64_t x2) {
        LatticePoint x{x1, x2};
        QuadSurd p = ctx.proj(x.x1, x.x2);
        if (p < q.proj_lo) return;
        if (q.proj_hi_inclusive ? p > q.proj_hi : p >= q.proj_hi) return;
        QuadSurd tau = tau_of(ctx, q.level, x);
        if (tau < q.tau_lo || tau > q.tau_hi) return;
        out.push_back(x);
      });
  std::sort(out.begin(), out.end(), [](const LatticePoint& a, const LatticePoint& b) {
    return a.x1 != b.x1 ? a.x1 < b.x1 : a.x2 < b.x2;
  });
  return out;
}

Interval figure_window(const TriplesContext& ctx, std::int64_t level) {
  return {-ctx.v_at(2 * level), ctx.w_at(2 * level)};
}

Tiling build_tiling(const TriplesContext& ctx, std::int64_t level, const Interval& window,
                    const EnumerationBudget& budget) {
  if (window.hi < window.lo) throw DomainError("build_tiling: empty window");
  const QuadSurd vn = ctx.v_at(level);
  const QuadSurd wn = ctx.w_at(level);
  // Enumerate over the hull of the window and the base tiles so that the
  // global indices (tile 0 = J_n(0)) can be counted.
  QuadSurd hull_lo = std::min(window.lo, -vn);
  QuadSurd hull_hi = std::max(window.hi, wn);

  struct Raw {
    TileKind kind;
    LatticePoint x;
    QuadSurd left, right;
  };
  std::vector<Raw> raw;
  for (TileKind kind : {TileKind::B, TileKind::A}) {
    LatticeQuery q;
    q.level = level;
    q.proj_lo = QuadSurd(0);
    q.proj_hi = kind == TileKind::B ? ctx.proj(0, 1) : ctx.proj(1, 0);
    // Tile [tau - v_n, tau] or [tau, tau + w_n] meeting the hull's interior.
    q.tau_lo = kind == TileKind::B ? hull_lo : hull_lo - wn;
    q.tau_hi = kind == TileKind::B ? hull_hi + vn : hull_hi;
    for (const auto& x : enumerate_lattice(ctx, q, budget)) {
      QuadSurd tau = tau_of(ctx, level, x);
      QuadSurd left = kind == TileKind::B ? tau - vn : tau;
      QuadSurd right = kind == TileKind::B ? tau : tau + wn;
      if (right <= hull_lo || left >= hull_hi) continue;
      raw.push_back({kind, x, std::move(left), std::move(right)});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.left < b.left; });

  std::optional<std::int64_t> origin;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (raw[k].kind == TileKind::B && raw[k].x.x1 == 0 && raw[k].x.x2 == 0) {
      origin = static_cast<std::int64_t>(k);
    }
  }
  if (!origin) throw std::logic_error("build_tiling: base tile J_n(0) missing");

  Tiling tiling;
  tiling.level = level;
  tiling.window = window;
  const bool point_window = window.lo == window.hi;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    auto& r = raw[k];
    bool keep = point_window ? (r.left <= window.lo && window.lo <= r.right)
                             : (r.right > window.lo && r.left < window.hi);
    if (!keep) continue;
    tiling.tiles.push_back({r.kind, ctx.canonical(ctx.from_lattice(level, r.x)),
                            static_cast<std::int64_t>(k) - *origin, r.left, r.right});
  }
  if (point_window && tiling.tiles.size() > 1) {
    // A point on a shared endpoint belongs to the tile it starts.
    tiling.tiles.erase(tiling.tiles.begin());
  }
  validate_tiling(tiling);
  return tiling;
}

void validate_tiling(const Tiling& tiling) {
  const auto& tiles = tiling.tiles;
  if (tiles.empty()) throw std::logic_error("tiling is empty");
  for (std::size_t k = 0; k < tiles.size(); ++k) {
    if (!(tiles[k].left < tiles[k].right)) throw std::logic_error("tile with empty interior");
    if (k > 0) {
      if (!(tiles[k - 1].right == tiles[k].left)) {
        throw std::logic_error("tiles " + std::to_string(tiles[k - 1].index) + " and " +
                               std::to_string(tiles[k].index) + " do not abut");
      }
      if (tiles[k].index != tiles[k - 1].index + 1) {
        throw std::logic_error("tile indices are not consecutive");
      }
    }
  }
  if (tiles.front().left > tiling.window.lo || tiles.back().right < tiling.window.hi) {
    throw std::logic_error("tiling does not cover its window");
  }
}

std::optional<std::size_t> locate(const Tiling& tiling, const QuadSurd& x) {
  const auto& tiles = tiling.tiles;
  for (std::size_t k = 0; k < tiles.size(); ++k) {
    bool in = tiles[k].left <= x && x < tiles[k].right;
    if (k == 0 && x == tiles[k].right) in = true;
    if (in) return k == 1 && x == tiles[0].right ? std::optional<std::size_t>(0) : k;
  }
  if (!tiles.empty() && x == tiles.back().right) return tiles.size() - 1;
  return std::nullopt;
}

std::vector<TriangulationEntry> triangulation_sequence(const TriplesContext& ctx,
                                                       std::int64_t level, const Interval& window,
                                                       const EnumerationBudget& budget) {
  std::vector<TriangulationEntry> out;
  for (auto& tile : build_tiling(ctx, level, window, budget).tiles) {
    out.push_back({tile.index, tile.kind, tile.landing});
  }
  return out;
}

// --- dominant points --------------------------------------------------------

namespace {

DominantSet sweep_dominants(const TriplesContext& ctx, const std::optional<QuadSurd>& max_gen,
                            std::size_t max_count, const Interval& window,
                            const EnumerationBudget& budget) {
  if (!(window.lo < 0) || !(window.hi > 0)) {
    throw DomainError("dominant points: window must contain 0 in its interior");
  }
  DominantSet set;
  set.window = window;
  QuadSurd rec_lo = window.lo, rec_hi = window.hi;
  bool lo_incl = true, hi_incl = true;
  QuadSurd g_prev(0);
  QuadSurd g = std::min(ctx.proj(1, 0), ctx.proj(0, 1));
  if (max_gen && *max_gen < g) g = *max_gen;
  for (;;) {
    LatticeQuery q;
    q.level = 0;
    q.proj_lo = g_prev;
    q.proj_hi = g;
    q.proj_hi_inclusive = true;
    q.tau_lo = -rec_hi;
    q.tau_hi = -rec_lo;
    struct Cand {
      LatticePoint x;
      QuadSurd proj, b;
    };
    std::vector<Cand> cands;
    for (const auto& x : enumerate_lattice(ctx, q, budget)) {
      QuadSurd p = ctx.proj(x.x1, x.x2);
      if (p <= g_prev) continue;
      cands.push_back({x, p, -tau_of(ctx, 0, x)});
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.proj < b.proj; });
    for (auto& c : cands) {
      bool dom = false;
      if (c.b > 0 && (c.b < rec_hi || (hi_incl && c.b == rec_hi))) {
        rec_hi = c.b;
        hi_incl = false;
        dom = true;
      } else if (c.b < 0 && (c.b > rec_lo || (lo_incl && c.b == rec_lo))) {
        rec_lo = c.b;
        lo_incl = false;
        dom = true;
      }
      if (!dom) continue;
      DominantPoint d;
      d.index = static_cast<std::int64_t>(set.points.size());
      d.position = c.b;
      d.iota = c.proj;
      d.lattice = c.x;
      d.generation = ctx.canonical(ctx.from_lattice(0, c.x));
      set.points.push_back(std::move(d));
    }
    if (max_gen && g >= *max_gen) break;
    if (!max_gen && set.points.size() >= max_count) break;
    g_prev = g;
    g = g * ctx.eigen().t;
    if (max_gen && *max_gen < g) g = *max_gen;
  }
  if (!max_gen && set.points.size() > max_count) set.points.resize(max_count);

  // Period shift: the first k with P_k = t P_0, confirmed on every pair.
  if (!set.points.empty()) {
    auto scaled = [&](const LatticePoint& x) { return ctx.push_down(x); };
    LatticePoint target = scaled(set.points[0].lattice);
    for (std::size_t k = 1; k < set.points.size(); ++k) {
      const auto& y = set.points[k].lattice;
      if (y.x1 != target.x1 || y.x2 != target.x2) continue;
      bool ok = true;
      for (std::size_t i = 0; i + k < set.points.size(); ++i) {
        LatticePoint s = scaled(set.points[i].lattice);
        const auto& z = set.points[i + k].lattice;
        if (s.x1 != z.x1 || s.x2 != z.x2) {
          ok = false;
          break;
        }
      }
      if (ok) set.period_shift = k;
      break;
    }
  }
  return set;
}

std::optional<std::int64_t> find_dominant(const DominantSet& set, const QuadSurd& x) {
  for (const auto& d : set.points) {
    if (d.position == x) return d.index;
  }
  return std::nullopt;
}

}  // namespace

DominantSet dominant_points(const TriplesContext& ctx, const QuadSurd& max_generation,
                            const Interval& window, const EnumerationBudget& budget) {
  if (max_generation.sign() <= 0) throw DomainError("dominant points: max generation must be > 0");
  return sweep_dominants(ctx, max_generation, 0, window, budget);
}

DominantSet first_dominants(const TriplesContext& ctx, std::size_t count, const Interval& window,
                            const EnumerationBudget& budget) {
  if (count == 0) throw DomainError("dominant points: count must be positive");
  return sweep_dominants(ctx, std::nullopt, count, window, budget);
}

CloseReturn close_return(const TriplesContext& ctx, const DominantSet& set, std::size_t i) {
  const auto& p = set.points;
  if (i < 2 || i + 1 >= p.size()) {
    throw DomainError("close_return: index " + std::to_string(i) +
                      " needs i >= 2 and dominants up to i+1 (have " + std::to_string(p.size()) + ")");
  }
  CloseReturn r;
  r.opposite_sides = p[i].position.sign() != p[i - 1].position.sign();
  if (r.opposite_sides) {
    r.q = p[i - 1].generation;
  } else {
    r.q = ctx.canonical(ctx.subtract(p[i].generation, p[i - 1].generation));
  }
  QuadSurd d = ctx.translation_of(r.q);
  auto n = find_dominant(set, p[i].position + d);
  auto m = find_dominant(set, p[i + 1].position + d);
  if (!n || !m) {
    throw DomainError("close_return: image of [b_i, b_i+1] leaves the enumerated dominants");
  }
  r.n = *n;
  r.m = *m;
  return r;
}

std::vector<CloseReturn> close_return_oracle(const TriplesContext& ctx, const DominantSet& set,
                                             std::size_t i, const EnumerationBudget& budget) {
  const auto& p = set.points;
  if (i < 1 || i + 2 >= p.size()) {
    throw DomainError("close_return_oracle: index " + std::to_string(i) + " out of range");
  }
  if ((i + 1) * (i + 1) > budget.max_candidates) {
    throw BudgetError("close_return_oracle: too many candidate pairs");
  }
  // Any admissible Q carries b_i onto some b_n, and tau is injective on the
  // lattice, so Q is the lattice difference x_i - x_n.  Trying every pair
  // (n, m) is therefore exhaustive.
  std::vector<CloseReturn> found;
  for (std::size_t n = 0; n <= i; ++n) {
    QuadSurd d = p[n].position - p[i].position;
    for (std::size_t m = n + 1; m <= i; ++m) {
      if (!(p[i + 1].position + d == p[m].position)) continue;
      LatticePoint x{p[i].lattice.x1 - p[n].lattice.x1, p[i].lattice.x2 - p[n].lattice.x2};
      QuadSurd proj = ctx.proj(x.x1, x.x2);
      if (proj.sign() <= 0 || proj > p[i + 2].iota) continue;
      if (!(tau_of(ctx, 0, x) == d)) throw std::logic_error("close_return_oracle: lattice mismatch");
      CloseReturn r;
      r.q = ctx.canonical(ctx.from_lattice(0, x));
      r.n = static_cast<std::int64_t>(n);
      r.m = static_cast<std::int64_t>(m);
      r.opposite_sides = p[i].position.sign() != p[i - 1].position.sign();
      found.push_back(r);
    }
  }
  std::sort(found.begin(), found.end(), [&](const CloseReturn& a, const CloseReturn& b) {
    return ctx.iota(a.q) < ctx.iota(b.q);
  });
  return found;
}

}  // namespace renormkit
