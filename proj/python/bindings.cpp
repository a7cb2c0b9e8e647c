// Python bindings: thin wrappers returning plain Python values and numpy arrays.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "renormkit/cardioid.hpp"
#include "renormkit/fractal.hpp"
#include "renormkit/powertriples.hpp"
#include "renormkit/rotnum.hpp"
#include "renormkit/tiling.hpp"

namespace py = pybind11;
using namespace renormkit;

namespace {

py::object to_py_int(const BigInt& x) { return py::int_(py::str(x.str())); }

py::tuple triple(const PowerTriple& p) { return py::make_tuple(p.level, to_py_int(p.a), to_py_int(p.b)); }

TriplesContext context_for(const std::string& word) {
  return TriplesContext(periodic_point(RenormWord::parse(word)));
}

AntiBranch parse_anti(const std::string& s) {
  if (s == "1/3") return AntiBranch::OneThird;
  if (s == "2/3") return AntiBranch::TwoThirds;
  throw DomainError("branch must be '1/3' or '2/3'");
}

py::dict eigen_dict(const EigenData& e) {
  py::dict d;
  d["word"] = e.word.to_string();
  d["matrix"] = py::make_tuple(py::make_tuple(to_py_int(e.matrix.m11), to_py_int(e.matrix.m12)),
                               py::make_tuple(to_py_int(e.matrix.m21), to_py_int(e.matrix.m22)));
  d["theta_star"] = e.v.to_double();
  d["theta_star_surd"] = e.v.to_spec();
  d["t"] = e.t.to_double();
  d["t_surd"] = e.t.to_spec();
  d["lambda_star"] = e.lambda_star.to_double();
  d["lambda_star_surd"] = e.lambda_star.to_spec();
  return d;
}

py::array_t<std::uint32_t> iteration_array(const ImageGrid& g) {
  py::array_t<std::uint32_t> out({g.height_px, g.width_px});
  auto m = out.mutable_unchecked<2>();
  for (int j = 0; j < g.height_px; ++j)
    for (int i = 0; i < g.width_px; ++i) m(j, i) = g.at(i, j).iterations;
  return out;
}

py::array_t<bool> escaped_array(const ImageGrid& g) {
  py::array_t<bool> out({g.height_px, g.width_px});
  auto m = out.mutable_unchecked<2>();
  for (int j = 0; j < g.height_px; ++j)
    for (int i = 0; i < g.width_px; ++i) m(j, i) = g.at(i, j).escaped;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Renormalization combinatorics of circle rotations and the main cardioid";

  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", domain.ptr());
  py::register_exception<PrecisionError>(m, "PrecisionError", domain.ptr());
  py::register_exception<AmbiguousBranchError>(m, "AmbiguousBranchError", domain.ptr());

  m.def("prime_renorm", [](const std::string& theta) {
    return prime_renorm(RotationNumber::parse(theta)).to_string();
  }, py::arg("theta"));

  m.def("antirenorm_rotation", [](const std::string& mu, const std::string& branch) {
    return antirenorm_rotation(RotationNumber::parse(mu), parse_anti(branch)).to_string();
  }, py::arg("mu"), py::arg("branch"));

  m.def("itinerary", [](const std::string& theta, std::size_t steps) {
    Itinerary it = itinerary(RotationNumber::parse(theta), steps);
    return py::make_tuple(it.word.to_string(), it.hit_zero);
  }, py::arg("theta"), py::arg("steps"));

  m.def("periodic_point", [](const std::string& word) {
    return eigen_dict(periodic_point(RenormWord::parse(word)));
  }, py::arg("word"));

  m.def("cardioid_point", [](const std::string& theta) {
    CardioidPoint p = cardioid_point(RotationNumber::parse(theta));
    return Complex(static_cast<double>(p.c_re), static_cast<double>(p.c_im));
  }, py::arg("theta"));

  m.def("tiling", [](const std::string& word, std::int64_t level, std::optional<std::int64_t> window_level) {
    TriplesContext ctx = context_for(word);
    std::int64_t k = window_level.value_or(2 * level);
    Tiling t = build_tiling(ctx, level, {-ctx.v_at(k), ctx.w_at(k)});
    py::list out;
    for (const auto& tile : t.tiles) {
      py::dict d;
      d["index"] = tile.index;
      d["kind"] = std::string(1, to_char(tile.kind));
      d["left"] = tile.left.to_double();
      d["right"] = tile.right.to_double();
      d["landing"] = triple(tile.landing);
      out.append(d);
    }
    return out;
  }, py::arg("word"), py::arg("level"), py::arg("window_level") = py::none());

  m.def("dominant_points", [](const std::string& word, std::size_t count) {
    TriplesContext ctx = context_for(word);
    QuadSurd r = std::max(ctx.eigen().v, ctx.eigen().w);
    DominantSet set = first_dominants(ctx, count, {-r, r});
    py::list out;
    for (const auto& d : set.points) {
      py::dict e;
      e["index"] = d.index;
      e["position"] = d.position.to_double();
      e["iota"] = d.iota.to_double();
      e["generation"] = triple(d.generation);
      out.append(e);
    }
    return out;
  }, py::arg("word"), py::arg("count"));

  m.def("close_returns", [](const std::string& word, std::size_t count) {
    TriplesContext ctx = context_for(word);
    QuadSurd r = std::max(ctx.eigen().v, ctx.eigen().w);
    DominantSet set = first_dominants(ctx, count + 4, {-r, r});
    py::list out;
    for (std::size_t i = 2; i <= count + 1; ++i) {
      CloseReturn cr = close_return(ctx, set, i);
      py::dict e;
      e["i"] = i;
      e["q"] = triple(cr.q);
      e["n"] = cr.n;
      e["m"] = cr.m;
      e["opposite_sides"] = cr.opposite_sides;
      out.append(e);
    }
    return out;
  }, py::arg("word"), py::arg("count"));

  m.def("scaling_report", [](const std::string& word, const std::string& start, std::size_t steps,
                             unsigned min_bits) {
    ScalingReport rep = scaling_report(RenormWord::parse(word), RotationNumber::parse(start), steps, min_bits);
    py::list rows;
    for (const auto& r : rep.rows) {
      py::dict d;
      d["step"] = r.step;
      d["r"] = r.r.to_double();
      d["abs_err"] = r.abs_err;
      d["angle_ratio"] = r.angle_ratio;
      d["c"] = Complex(r.c_re, r.c_im);
      d["param_ratio"] = r.param_ratio;
      rows.append(d);
    }
    py::dict out;
    out["lambda_star"] = rep.lambda_star.to_double();
    out["precision_bits"] = rep.precision_bits;
    out["truncated"] = rep.truncated;
    out["rows"] = rows;
    return out;
  }, py::arg("word"), py::arg("start"), py::arg("steps"), py::arg("min_bits") = 128);

  m.def("escape_time", [](Complex c, Complex z0, std::uint32_t max_iter, double bailout) {
    EscapeResult r = escape_time(c, z0, max_iter, bailout);
    return py::make_tuple(r.escaped, r.iterations, r.final_magnitude);
  }, py::arg("c"), py::arg("z0") = Complex(0, 0), py::arg("max_iter") = 100, py::arg("bailout") = 2.0);

  m.def("render", [](const std::string& mode, Complex center, double width, int px, std::optional<int> py_,
                     std::uint32_t max_iter, Complex julia_c, unsigned threads) {
    RenderConfig rc;
    if (mode != "mandelbrot" && mode != "julia") throw DomainError("mode must be mandelbrot or julia");
    rc.mode = mode == "julia" ? RenderMode::Julia : RenderMode::Mandelbrot;
    rc.window = {center, width};
    rc.width_px = px;
    rc.height_px = py_.value_or(px);
    rc.max_iter = max_iter;
    rc.julia_c = julia_c;
    rc.threads = threads;
    ImageGrid g;
    {
      py::gil_scoped_release release;
      g = render(rc);
    }
    auto ppm = encode_ppm(g);
    return py::make_tuple(iteration_array(g), escaped_array(g),
                          py::bytes(reinterpret_cast<const char*>(ppm.data()), ppm.size()));
  }, py::arg("mode") = "mandelbrot", py::arg("center") = Complex(0, 0), py::arg("width") = 4.0,
     py::arg("px") = 256, py::arg("py") = py::none(), py::arg("max_iter") = 100,
     py::arg("julia_c") = Complex(0, 0), py::arg("threads") = 1);

  m.def("area_estimate", [](Complex c, int resolution, std::uint32_t max_iter, double width, unsigned threads) {
    AreaEstimate a;
    {
      py::gil_scoped_release release;
      a = area_estimate(c, resolution, max_iter, {{0, 0}, width}, threads);
    }
    py::dict d;
    d["non_escaped"] = a.non_escaped;
    d["lower_cells"] = a.lower_cells;
    d["upper_cells"] = a.upper_cells;
    d["pixel_area"] = a.pixel_area;
    d["estimate"] = a.estimate;
    return d;
  }, py::arg("c"), py::arg("resolution") = 1024, py::arg("max_iter") = 500, py::arg("width") = 4.0,
     py::arg("threads") = 1);

  m.def("siegel_orbit", [](const std::string& word, std::size_t count, unsigned bits) {
    SiegelOrbit o = siegel_orbit(RenormWord::parse(word), count, bits);
    py::array_t<Complex> pts(static_cast<py::ssize_t>(o.points.size()));
    auto v = pts.mutable_unchecked<1>();
    for (std::size_t k = 0; k < o.points.size(); ++k) v(static_cast<py::ssize_t>(k)) = o.points[k];
    py::dict d;
    d["c"] = o.c;
    d["alpha"] = o.alpha;
    d["points"] = pts;
    d["max_abs"] = o.max_abs;
    d["min_dist_alpha"] = o.min_dist_alpha;
    return d;
  }, py::arg("word") = "LR", py::arg("count") = 10000, py::arg("bits") = 128);

  m.def("self_similarity", [](const std::string& word, std::size_t returns, unsigned bits) {
    SelfSimilarity s = self_similarity_estimate(RenormWord::parse(word), returns, 10'000'000, bits);
    py::list denoms;
    for (const auto& q : s.convergent_denominators) denoms.append(to_py_int(q));
    py::dict d;
    d["return_times"] = s.return_times;
    d["distances"] = s.distances;
    d["ratios"] = s.ratios;
    d["convergent_denominators"] = denoms;
    return d;
  }, py::arg("word") = "LR", py::arg("returns") = 8, py::arg("bits") = 128);
}
