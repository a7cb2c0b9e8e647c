// renormkit command-line front end.
//
// Exit status: 0 success, 1 domain error, 2 usage error.  Every run writes a
// JSON manifest to <out>.manifest.json (stderr when the output is stdout).

#include <charconv>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "renormkit/cardioid.hpp"
#include "renormkit/fractal.hpp"
#include "renormkit/io.hpp"
#include "renormkit/powertriples.hpp"
#include "renormkit/rotnum.hpp"
#include "renormkit/tiling.hpp"

using namespace renormkit;
using json = nlohmann::ordered_json;

namespace {

std::string dec(const QuadSurd& x) { return format_sig(x.to_float<Float128>(), 17); }
std::string dec(double x) { return format_sig(x, 17); }

double parse_double(const std::string& s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw DomainError("cannot parse number '" + s + "'");
  }
  return v;
}

Complex parse_complex(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) return {parse_double(s), 0.0};
  return {parse_double(s.substr(0, comma)), parse_double(s.substr(comma + 1))};
}

std::string triple_csv(const PowerTriple& p) {
  return std::to_string(p.level) + "," + p.a.str() + "," + p.b.str();
}

struct Common {
  std::string out = "-";
  std::string word = "LR";
  unsigned threads = 0;
};

class Runner {
 public:
  Runner(int argc, const char* const* argv) : manifest_(argc, argv) {}

  RunManifest& manifest() { return manifest_; }

  void emit(const std::string& out, const std::string& bytes) { manifest_.emit(out, bytes); }

  void finish(const std::string& out) {
    std::string doc = manifest_.finish();
    if (out == "-") {
      std::cerr << doc;
    } else {
      write_output(out + ".manifest.json", doc);
    }
  }

 private:
  RunManifest manifest_;
};

TriplesContext context_for(const std::string& word) {
  return TriplesContext(periodic_point(RenormWord::parse(word)));
}

Interval level_window(const TriplesContext& ctx, std::int64_t k) {
  return {-ctx.v_at(k), ctx.w_at(k)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renormalization combinatorics of circle rotations and the cardioid"};
  app.require_subcommand(1);
  Common common;

  // renorm
  auto* renorm = app.add_subcommand("renorm", "Orbit and itinerary under prime renormalization");
  std::string theta_text;
  std::size_t renorm_steps = 8;
  renorm->add_option("--theta", theta_text, "Rotation number: p/q, surd:p,q,r,D or decimal")
      ->required();
  renorm->add_option("--steps", renorm_steps, "Number of renormalization steps");
  renorm->add_option("--out", common.out, "Output CSV (default stdout)");

  // fixed-point
  auto* fixed = app.add_subcommand("fixed-point", "Periodic point and eigen-data of a word");
  fixed->add_option("--word", common.word, "Word over {L, R}")->required();
  fixed->add_option("--out", common.out, "Output file (default stdout)");

  // tiling
  auto* tiling = app.add_subcommand("tiling", "Renormalization tiling at a level");
  std::int64_t tiling_level = 0;
  std::optional<std::int64_t> tiling_window_level;
  tiling->add_option("--word", common.word, "Word over {L, R}");
  tiling->add_option("--level", tiling_level, "Tiling level n")->required();
  tiling->add_option("--window-level", tiling_window_level,
                     "Window [-v_k, w_k] (default k = 2n)");
  tiling->add_option("--out", common.out, "Output CSV (default stdout)");

  // dominant
  auto* dominant = app.add_subcommand("dominant", "Dominant points b_P");
  std::size_t dom_count = 12;
  dominant->add_option("--word", common.word, "Word over {L, R}");
  dominant->add_option("--count", dom_count, "Number of dominant points");
  dominant->add_option("--out", common.out, "Output CSV (default stdout)");

  // close-return
  auto* close = app.add_subcommand("close-return", "Close returns of dominant intervals");
  std::size_t close_count = 30;
  bool close_oracle = false;
  close->add_option("--word", common.word, "Word over {L, R}");
  close->add_option("--count", close_count, "Number of dominant intervals");
  close->add_flag("--oracle", close_oracle, "Cross-check against the brute-force lattice scan");
  close->add_option("--out", common.out, "Output CSV (default stdout)");

  // scaling
  auto* scaling = app.add_subcommand("scaling", "Scaling report along a pullback sequence");
  std::string start_text;
  std::size_t scaling_steps = 8;
  unsigned min_bits = 128;
  scaling->add_option("--word", common.word, "Word over {L, R}")->required();
  scaling->add_option("--start", start_text, "Starting rotation number r0")->required();
  scaling->add_option("--steps", scaling_steps, "Pullback steps");
  scaling->add_option("--min-bits", min_bits, "Minimum working precision in bits")
      ->check(CLI::IsMember({128u, 256u, 512u, 1024u, 2048u}));
  scaling->add_option("--out", common.out, "Output CSV (default stdout)");

  // render
  auto* render_cmd = app.add_subcommand("render", "Escape-time image (binary PPM)");
  std::string mode = "mandelbrot", center_text = "0,0", julia_text = "0,0";
  double width = 4;
  int px = 256;
  std::optional<int> py;
  std::uint32_t max_iter = 100;
  double bailout = 2;
  render_cmd->add_option("--mode", mode, "mandelbrot or julia")
      ->check(CLI::IsMember({"mandelbrot", "julia"}));
  render_cmd->add_option("--center", center_text, "Window center re,im");
  render_cmd->add_option("--width", width, "Window width");
  render_cmd->add_option("--px", px, "Horizontal resolution");
  render_cmd->add_option("--py", py, "Vertical resolution (default --px)");
  render_cmd->add_option("--max-iter", max_iter, "Iteration limit");
  render_cmd->add_option("--c", julia_text, "Julia parameter re,im");
  render_cmd->add_option("--bailout", bailout, "Escape radius (>= 2)");
  render_cmd->add_option("--threads", common.threads, "Worker threads (0 = all cores)");
  render_cmd->add_option("--out", common.out, "Output PPM")->required();

  // zoom
  auto* zoom = app.add_subcommand("zoom", "Self-similar zoom toward c(theta_star)");
  double zoom_width = 0.2;
  int zoom_frames = 3, zoom_px = 256;
  std::uint32_t zoom_iter = 20000;
  std::optional<double> zoom_factor, zoom_growth;
  zoom->add_option("--word", common.word, "Word over {L, R}");
  zoom->add_option("--initial-width", zoom_width, "Width of frame 0");
  zoom->add_option("--frames", zoom_frames, "Number of frames");
  zoom->add_option("--px", zoom_px, "Square resolution");
  zoom->add_option("--max-iter", zoom_iter, "Iteration limit of frame 0");
  zoom->add_option("--factor", zoom_factor, "Width ratio between frames (default lambda_star)");
  zoom->add_option("--iter-growth", zoom_growth, "Iteration growth per frame (default t)");
  zoom->add_option("--threads", common.threads, "Worker threads (0 = all cores)");
  zoom->add_option("--out", common.out, "Summary CSV; frames go to <out>.frame<k>.ppm")
      ->required();

  // siegel
  auto* siegel = app.add_subcommand("siegel", "Critical orbit of z^2 + c(theta_star)");
  std::size_t siegel_count = 10000;
  unsigned siegel_bits = 128;
  siegel->add_option("--word", common.word, "Word over {L, R}");
  siegel->add_option("--count", siegel_count, "Orbit length");
  siegel->add_option("--bits", siegel_bits, "Working precision")->check(CLI::IsMember({128u, 256u}));
  siegel->add_option("--out", common.out, "Output CSV (default stdout)");

  // area
  auto* area = app.add_subcommand("area", "Filled Julia set area by pixel counting");
  std::optional<std::string> area_c;
  std::optional<std::string> area_word;
  int area_px = 1024;
  std::uint32_t area_iter = 500;
  double area_width = 4;
  area->add_option("--c", area_c, "Parameter re,im");
  area->add_option("--word", area_word, "Use c(theta_star) of this word");
  area->add_option("--px", area_px, "Square resolution");
  area->add_option("--max-iter", area_iter, "Iteration limit");
  area->add_option("--width", area_width, "Window width (centered at 0)");
  area->add_option("--threads", common.threads, "Worker threads (0 = all cores)");
  area->add_option("--out", common.out, "Output CSV (default stdout)");

  // self-sim
  auto* selfsim = app.add_subcommand("self-sim", "Closest returns of the critical orbit");
  std::size_t returns = 8;
  unsigned selfsim_bits = 128;
  std::uint64_t selfsim_budget = 10'000'000;
  selfsim->add_option("--word", common.word, "Word over {L, R}");
  selfsim->add_option("--returns", returns, "Number of closest returns");
  selfsim->add_option("--bits", selfsim_bits, "Working precision")->check(CLI::IsMember({128u, 256u}));
  selfsim->add_option("--max-iter", selfsim_budget, "Iteration budget");
  selfsim->add_option("--out", common.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Runner run(argc, argv);
  auto& cfg = run.manifest().config();
  auto& results = run.manifest().results();
  cfg["subcommand"] = app.get_subcommands().front()->get_name();
  cfg["out"] = common.out;
  try {
    std::ostringstream os;
    if (*renorm) {
      RotationNumber theta = RotationNumber::parse(theta_text);
      cfg["theta"] = theta_text;
      cfg["steps"] = renorm_steps;
      run.manifest().precision()["float_bits"] = 128;
      os << "step,theta,exact,branch\n";
      RotationNumber x = theta;
      Itinerary it = itinerary(theta, renorm_steps);
      for (std::size_t k = 0; k <= it.word.size(); ++k) {
        os << k << ',' << format_sig(x.approx(), 17) << ',' << x.to_string() << ',';
        if (k < it.word.size()) {
          os << (it.word[k] == Branch::L ? 'L' : 'R');
          x = apply_branch(it.word[k], x);
        }
        os << '\n';
      }
      results["itinerary"] = it.word.to_string();
      results["hit_zero"] = it.hit_zero;
      if (it.hit_zero) results["hit_step"] = it.hit_step;
    } else if (*fixed) {
      cfg["word"] = common.word;
      EigenData e = periodic_point(RenormWord::parse(common.word));
      const auto& m = e.matrix;
      bool det_ok = m.det() == 1;
      bool lambda_ok = e.lambda_star == e.t * e.t;
      bool period_ok = apply_word(e.word, e.theta_star) == e.theta_star;
      os << "word: " << e.word.to_string() << '\n'
         << "matrix: " << m.to_string() << '\n'
         << "theta_star: " << dec(e.v) << '\n'
         << "theta_star_exact: " << e.v.to_string() << '\n'
         << "theta_star_surd: " << e.v.to_spec() << '\n'
         << "t: " << dec(e.t) << '\n'
         << "t_exact: " << e.t.to_string() << '\n'
         << "lambda_star: " << dec(e.lambda_star) << '\n'
         << "lambda_star_exact: " << e.lambda_star.to_string() << '\n'
         << "v: " << dec(e.v) << '\n'
         << "w: " << dec(e.w) << '\n'
         << "det_is_one: " << (det_ok ? "true" : "false") << '\n'
         << "lambda_equals_t_squared: " << (lambda_ok ? "true" : "false") << '\n'
         << "word_fixes_theta_star: " << (period_ok ? "true" : "false") << '\n';
      results["theta_star"] = e.v.to_spec();
      results["t"] = e.t.to_spec();
      results["lambda_star"] = e.lambda_star.to_spec();
    } else if (*tiling) {
      cfg["word"] = common.word;
      cfg["level"] = tiling_level;
      TriplesContext ctx = context_for(common.word);
      std::int64_t k = tiling_window_level.value_or(2 * tiling_level);
      cfg["window_level"] = k;
      Tiling t = build_tiling(ctx, tiling_level, level_window(ctx, k));
      os << "index,kind,left,right,landing_n,landing_a,landing_b\n";
      std::string kinds;
      for (const auto& tile : t.tiles) {
        os << tile.index << ',' << to_char(tile.kind) << ',' << dec(tile.left) << ','
           << dec(tile.right) << ',' << triple_csv(tile.landing) << '\n';
        kinds.push_back(to_char(tile.kind));
      }
      results["tiles"] = t.tiles.size();
      results["kinds"] = kinds;
    } else if (*dominant) {
      cfg["word"] = common.word;
      cfg["count"] = dom_count;
      TriplesContext ctx = context_for(common.word);
      QuadSurd r = std::max(ctx.eigen().v, ctx.eigen().w);
      DominantSet set = first_dominants(ctx, dom_count, {-r, r});
      os << "index,position,iota,gen_n,gen_a,gen_b\n";
      for (const auto& d : set.points) {
        os << d.index << ',' << dec(d.position) << ',' << dec(d.iota) << ','
           << triple_csv(d.generation) << '\n';
      }
      if (set.period_shift) results["period_shift"] = *set.period_shift;
    } else if (*close) {
      cfg["word"] = common.word;
      cfg["count"] = close_count;
      cfg["oracle"] = close_oracle;
      TriplesContext ctx = context_for(common.word);
      QuadSurd r = std::max(ctx.eigen().v, ctx.eigen().w);
      DominantSet set = first_dominants(ctx, close_count + 4, {-r, r});
      os << "i,q_n,q_a,q_b,n,m,opposite_sides" << (close_oracle ? ",oracle_agrees" : "") << '\n';
      std::size_t agree = 0;
      for (std::size_t i = 2; i <= close_count + 1; ++i) {
        CloseReturn cr = close_return(ctx, set, i);
        os << i << ',' << triple_csv(cr.q) << ',' << cr.n << ',' << cr.m << ','
           << (cr.opposite_sides ? 1 : 0);
        if (close_oracle) {
          auto found = close_return_oracle(ctx, set, i);
          bool ok = !found.empty() && ctx.equivalent(found[0].q, cr.q) &&
                    found[0].n == cr.n && found[0].m == cr.m;
          agree += ok;
          os << ',' << (ok ? 1 : 0);
        }
        os << '\n';
      }
      if (close_oracle) results["oracle_agreements"] = agree;
    } else if (*scaling) {
      cfg["word"] = common.word;
      cfg["start"] = start_text;
      cfg["steps"] = scaling_steps;
      ScalingReport rep = scaling_report(RenormWord::parse(common.word),
                                         RotationNumber::parse(start_text), scaling_steps, min_bits);
      run.manifest().precision()["bits"] = rep.precision_bits;
      run.manifest().precision()["truncated"] = rep.truncated;
      write_scaling_csv(os, rep);
      results["lambda_star"] = dec(rep.lambda_star);
      if (!rep.rows.empty()) {
        results["final_angle_ratio"] = dec(rep.rows.back().angle_ratio);
        results["final_param_ratio"] = dec(rep.rows.back().param_ratio);
      }
      results["residual"] = dec(rep.residual);
      if (rep.truncated) {
        std::cerr << "warning: precision exhausted; report truncated at step "
                  << rep.rows.size() - 1 << '\n';
      }
    } else if (*render_cmd) {
      RenderConfig rc;
      rc.mode = mode == "julia" ? RenderMode::Julia : RenderMode::Mandelbrot;
      rc.julia_c = parse_complex(julia_text);
      rc.window = {parse_complex(center_text), width};
      rc.width_px = px;
      rc.height_px = py.value_or(px);
      rc.max_iter = max_iter;
      rc.bailout = bailout;
      rc.threads = common.threads;
      cfg["mode"] = mode;
      cfg["center"] = center_text;
      cfg["width"] = width;
      cfg["px"] = rc.width_px;
      cfg["py"] = rc.height_px;
      cfg["max_iter"] = max_iter;
      cfg["bailout"] = bailout;
      if (rc.mode == RenderMode::Julia) cfg["c"] = julia_text;
      run.manifest().precision()["pixels"] = "ieee754 binary64";
      ImageGrid g = render(rc);
      auto ppm = encode_ppm(g);
      results["non_escaped"] = g.non_escaped_count();
      run.emit(common.out, std::string(ppm.begin(), ppm.end()));
      run.finish(common.out);
      return 0;
    } else if (*zoom) {
      EigenData e = periodic_point(RenormWord::parse(common.word));
      CardioidPoint cp = cardioid_point(e.theta_star);
      ZoomConfig zc;
      zc.center = {static_cast<double>(cp.c_re), static_cast<double>(cp.c_im)};
      zc.initial_width = zoom_width;
      zc.factor = zoom_factor.value_or(e.lambda_star.to_double());
      zc.frames = zoom_frames;
      zc.resolution = zoom_px;
      zc.max_iter = zoom_iter;
      zc.max_iter_growth = zoom_growth.value_or(e.t.to_double());
      zc.threads = common.threads;
      cfg["word"] = common.word;
      cfg["center"] = dec(zc.center.real()) + "," + dec(zc.center.imag());
      cfg["initial_width"] = zoom_width;
      cfg["factor"] = zc.factor;
      cfg["frames"] = zoom_frames;
      cfg["px"] = zoom_px;
      cfg["max_iter"] = zoom_iter;
      cfg["iter_growth"] = zc.max_iter_growth;
      auto frames = zoom_sequence(zc);
      os << "frame,width,max_iter,non_escaped,boundary_fraction\n";
      for (std::size_t k = 0; k < frames.size(); ++k) {
        const auto& g = frames[k].grid;
        os << k << ',' << dec(g.window.width) << ',' << g.max_iter << ','
           << g.non_escaped_count() << ',' << dec(frames[k].boundary_fraction) << '\n';
        auto ppm = encode_ppm(g);
        run.emit(common.out + ".frame" + std::to_string(k) + ".ppm",
                 std::string(ppm.begin(), ppm.end()));
      }
    } else if (*siegel) {
      cfg["word"] = common.word;
      cfg["count"] = siegel_count;
      run.manifest().precision()["bits"] = siegel_bits;
      SiegelOrbit o = siegel_orbit(RenormWord::parse(common.word), siegel_count, siegel_bits);
      os << "k,re,im\n";
      for (std::size_t k = 0; k < o.points.size(); ++k) {
        os << k << ',' << dec(o.points[k].real()) << ',' << dec(o.points[k].imag()) << '\n';
      }
      results["c"] = dec(o.c.real()) + "," + dec(o.c.imag());
      results["max_abs"] = dec(o.max_abs);
      results["min_dist_alpha"] = dec(o.min_dist_alpha);
      if (o.points.size() > 2) {
        std::vector<Complex> tail(o.points.begin() + 1, o.points.end());
        results["winding_rotation"] = dec(winding_rotation(tail, o.alpha));
      }
    } else if (*area) {
      Complex c{0, 0};
      if (area_word) {
        CardioidPoint cp = cardioid_point(periodic_point(RenormWord::parse(*area_word)).theta_star);
        c = {static_cast<double>(cp.c_re), static_cast<double>(cp.c_im)};
        cfg["word"] = *area_word;
      } else if (area_c) {
        c = parse_complex(*area_c);
      }
      cfg["c"] = dec(c.real()) + "," + dec(c.imag());
      cfg["px"] = area_px;
      cfg["max_iter"] = area_iter;
      cfg["width"] = area_width;
      AreaEstimate a = area_estimate(c, area_px, area_iter, {{0, 0}, area_width}, common.threads);
      os << "resolution,max_iter,non_escaped,lower_cells,upper_cells,pixel_area,estimate\n"
         << area_px << ',' << area_iter << ',' << a.non_escaped << ',' << a.lower_cells << ','
         << a.upper_cells << ',' << dec(a.pixel_area) << ',' << dec(a.estimate) << '\n';
    } else if (*selfsim) {
      cfg["word"] = common.word;
      cfg["returns"] = returns;
      run.manifest().precision()["bits"] = selfsim_bits;
      SelfSimilarity s =
          self_similarity_estimate(RenormWord::parse(common.word), returns, selfsim_budget, selfsim_bits);
      os << "j,return_time,distance,ratio,cf_denominator\n";
      for (std::size_t j = 0; j < s.return_times.size(); ++j) {
        os << j << ',' << s.return_times[j] << ',' << dec(s.distances[j]) << ','
           << (j < s.ratios.size() ? dec(s.ratios[j]) : std::string()) << ','
           << (j < s.convergent_denominators.size() ? s.convergent_denominators[j].str()
                                                    : std::string())
           << '\n';
      }
    }
    run.emit(common.out, os.str());
    run.finish(common.out);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
