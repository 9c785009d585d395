#include "amoeba/io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace amoeba::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

Json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

std::string svg_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

class SvgWriter {
 public:
  SvgWriter(std::ostream& os, const Box2D& view, double scale) : os_(os), view_(view), scale_(scale) {
    const double w = (view.max.x() - view.min.x()) * scale, h = (view.max.y() - view.min.y()) * scale;
    os_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_number(w) << "\" height=\"" << svg_number(h)
        << "\" viewBox=\"0 0 " << svg_number(w) << ' ' << svg_number(h) << "\">\n";
    os_ << "<rect x=\"0\" y=\"0\" width=\"" << svg_number(w) << "\" height=\"" << svg_number(h) << "\" fill=\"white\"/>\n";
  }
  ~SvgWriter() { os_ << "</svg>\n"; }

  double sx(double x) const { return (x - view_.min.x()) * scale_; }
  double sy(double y) const { return (view_.max.y() - y) * scale_; }

  void rect(double x0, double y0, double x1, double y1, const std::string& fill) {
    os_ << "<rect x=\"" << svg_number(sx(x0)) << "\" y=\"" << svg_number(sy(y1)) << "\" width=\""
        << svg_number((x1 - x0) * scale_) << "\" height=\"" << svg_number((y1 - y0) * scale_) << "\" fill=\"" << fill
        << "\"/>\n";
  }

  void line(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const std::string& stroke, double width) {
    os_ << "<line x1=\"" << svg_number(sx(a.x())) << "\" y1=\"" << svg_number(sy(a.y())) << "\" x2=\""
        << svg_number(sx(b.x())) << "\" y2=\"" << svg_number(sy(b.y())) << "\" stroke=\"" << stroke
        << "\" stroke-width=\"" << svg_number(width) << "\"/>\n";
  }

  void polygon(const std::vector<Eigen::Vector2d>& pts, const std::string& fill, const std::string& stroke) {
    os_ << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      os_ << (i ? " " : "") << svg_number(sx(pts[i].x())) << ',' << svg_number(sy(pts[i].y()));
    os_ << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/>\n";
  }

  void circle(const Eigen::Vector2d& c, double r, const std::string& fill) {
    os_ << "<circle cx=\"" << svg_number(sx(c.x())) << "\" cy=\"" << svg_number(sy(c.y())) << "\" r=\"" << svg_number(r)
        << "\" fill=\"" << fill << "\"/>\n";
  }

 private:
  std::ostream& os_;
  Box2D view_;
  double scale_;
};

/// Clips the ray origin + s dir (s >= 0) to the box; returns the far end.
Eigen::Vector2d clip_ray(const Eigen::Vector2d& origin, const Eigen::Vector2d& dir, const Box2D& box) {
  double s = std::numeric_limits<double>::infinity();
  for (int c = 0; c < 2; ++c) {
    if (dir[c] > 0) s = std::min(s, (box.max[c] - origin[c]) / dir[c]);
    if (dir[c] < 0) s = std::min(s, (box.min[c] - origin[c]) / dir[c]);
  }
  return origin + std::max(0.0, s) * dir;
}

void draw_complex(SvgWriter& svg, const PolyhedralComplex& complex, const Box2D& view) {
  for (const auto& [u, v] : complex.edges) svg.line(complex.vertices[u], complex.vertices[v], "#c0392b", 2.0);
  for (const auto& ray : complex.rays) {
    const Eigen::Vector2d o = complex.vertices[ray.vertex];
    svg.line(o, clip_ray(o, ray.direction.cast(), view), "#c0392b", 2.0);
  }
  for (const auto& v : complex.vertices) svg.circle(v, 3.0, "#c0392b");
}

}  // namespace

Json to_json(const LatticePoint& p) {
  Json j = Json::array();
  for (auto c : p.coords()) j.push_back(c);
  return j;
}

Json to_json(const Eigen::VectorXd& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(number(v[i]));
  return j;
}

Json to_json(const Box2D& box) {
  return Json{{"min", {box.min.x(), box.min.y()}}, {"max", {box.max.x(), box.max.y()}}};
}

Json to_json(const NewtonPolytope& polytope) {
  Json j;
  j["dim"] = polytope.dim();
  j["vertices"] = Json::array();
  for (const auto& v : polytope.vertices()) j["vertices"].push_back(to_json(v));
  j["facets"] = Json::array();
  for (const auto& f : polytope.facets()) j["facets"].push_back({{"normal", to_json(f.normal)}, {"offset", f.offset}});
  if (polytope.dim() == 2) {
    j["lattice_points"] = Json::array();
    for (const auto& [p, c] : lattice_points(polytope))
      j["lattice_points"].push_back({{"point", to_json(p)}, {"class", to_string(c)}});
  }
  return j;
}

Json to_json(const Lifting& lifting) {
  Json j = Json::array();
  for (const auto& [alpha, h] : lifting.heights) j.push_back({{"point", to_json(alpha)}, {"height", number(h)}});
  return j;
}

Json to_json(const Subdivision& subdivision) {
  Json j;
  j["cells"] = Json::array();
  for (const auto& cell : subdivision.cells) {
    Json c = Json::array();
    for (const auto& p : cell) c.push_back(to_json(p));
    j["cells"].push_back(std::move(c));
  }
  j["vertex_set"] = Json::array();
  for (const auto& p : subdivision.vertex_set) j["vertex_set"].push_back(to_json(p));
  j["interior_edges"] = subdivision.interior_edges().size();
  j["boundary_edges"] = subdivision.boundary_edges().size();
  return j;
}

Json to_json(const PolyhedralComplex& complex) {
  Json j;
  j["vertices"] = Json::array();
  for (const auto& v : complex.vertices) j["vertices"].push_back({number(v.x()), number(v.y())});
  j["edges"] = Json::array();
  for (const auto& [u, v] : complex.edges) j["edges"].push_back({u, v});
  j["rays"] = Json::array();
  for (const auto& r : complex.rays) j["rays"].push_back({{"vertex", r.vertex}, {"direction", to_json(r.direction)}});
  return j;
}

Json to_json(const ComplementComponent& c) {
  Json j;
  j["pixels"] = c.pixels.size();
  j["bounded"] = c.bounded;
  j["witness"] = {number(c.witness_point.x()), number(c.witness_point.y())};
  j["clearance"] = c.clearance;
  j["order"] = c.order ? to_json(*c.order) : Json(nullptr);
  j["rounding_distance"] = number(c.rounding_distance);
  return j;
}

Json to_json(const SolidityReport& r) {
  Json j;
  j["box"] = to_json(r.box);
  j["resolution"] = {r.options.width, r.options.height};
  j["fibers_per_line"] = r.options.fibers;
  j["component_count"] = r.component_count;
  j["bounded_count"] = r.bounded_count;
  j["vertex_count"] = r.vertex_count;
  j["solid"] = r.solid;
  j["vertices"] = Json::array();
  for (const auto& v : r.vertices) j["vertices"].push_back(to_json(v));
  j["orders"] = Json::array();
  for (const auto& c : r.components) j["orders"].push_back(c.order ? to_json(*c.order) : Json(nullptr));
  j["components"] = Json::array();
  for (const auto& c : r.components) j["components"].push_back(to_json(c));
  return j;
}

Json to_json(const BoundCheckReport& r) {
  Json j;
  j["bound"] = number(r.bound);
  j["max_gap"] = number(r.max_gap);
  j["min_gap"] = number(r.min_gap);
  j["ratio"] = number(r.ratio);
  j["maximally_sparse"] = r.maximally_sparse;
  j["warnings"] = r.warnings;
  j["rows"] = Json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"t", number(row.t)},
                         {"sup_gap", number(row.sup_gap)},
                         {"argsup", to_json(row.argsup)},
                         {"max_std_error", number(row.max_std_error)}});
  return j;
}

Json to_json(const ConvergenceReport& r) {
  Json j;
  j["limit"] = to_json(r.limit);
  j["window"] = to_json(r.window);
  j["fit_c"] = number(r.fit_c);
  j["non_increasing"] = r.non_increasing;
  j["rows"] = Json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"t", number(row.t)}, {"k", number(row.k)}, {"hausdorff", number(row.distance)}, {"cloud_size", row.cloud_size}});
  return j;
}

Json to_json(const SubdivisionSweepReport& r) {
  Json j;
  j["limit"] = to_json(r.limit);
  j["stable_from"] = r.stable_from ? Json(*r.stable_from) : Json(nullptr);
  j["rows"] = Json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"t", number(row.t)},
                         {"matches", row.matches},
                         {"spine_lifting", to_json(row.spine)},
                         {"subdivision", to_json(row.subdivision)}});
  return j;
}

Json to_json(const SolidnessSweepReport& r) {
  Json j;
  j["warnings"] = r.warnings;
  j["rows"] = Json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"t", number(row.t)},
                         {"solid", row.solid},
                         {"component_count", row.component_count},
                         {"vertex_count", row.vertex_count}});
  return j;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      const std::string& c = cells[i];
      if (c.find_first_of(",\"\n") == std::string::npos) {
        os << c;
        continue;
      }
      os << '"';
      for (char ch : c) os << (ch == '"' ? "\"\"" : std::string(1, ch));
      os << '"';
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void write_raster_csv(std::ostream& os, const AmoebaRaster& raster) {
  os << "i,j,x1,x2,verdict,samples,certificate\n";
  for (int j = 0; j < raster.height; ++j)
    for (int i = 0; i < raster.width; ++i) {
      const std::size_t k = raster.index(i, j);
      const Eigen::Vector2d c = raster.center(i, j);
      const char* v = raster.verdicts[k] == Verdict::InAmoeba              ? "InAmoeba"
                      : raster.verdicts[k] == Verdict::CertifiedComplement ? "CertifiedComplement"
                                                                           : "UncertifiedComplement";
      os << i << ',' << j << ',' << format_double(c.x()) << ',' << format_double(c.y()) << ',' << v << ','
         << raster.samples[k] << ',';
      if (raster.certificate[k] >= 0) os << '"' << to_string(raster.support[static_cast<std::size_t>(raster.certificate[k])]) << '"';
      os << '\n';
    }
}

void write_raster_svg(std::ostream& os, const AmoebaRaster& raster, const std::vector<ComplementComponent>& components,
                      const PolyhedralComplex* spine, double scale) {
  SvgWriter svg(os, raster.box, scale);
  std::vector<std::uint8_t> cls(raster.verdicts.size(), 0);
  for (std::size_t k = 0; k < cls.size(); ++k)
    if (raster.verdicts[k] == Verdict::InAmoeba) cls[k] = 1;
  for (const auto& c : components)
    if (c.bounded)
      for (std::size_t k : c.pixels) cls[k] = 2;
  const double pw = raster.pixel_width(), ph = raster.pixel_height();
  // Horizontal runs keep the file small.
  for (int j = 0; j < raster.height; ++j) {
    int i = 0;
    while (i < raster.width) {
      const std::uint8_t c = cls[raster.index(i, j)];
      int e = i;
      while (e < raster.width && cls[raster.index(e, j)] == c) ++e;
      if (c != 0) {
        const double x0 = raster.box.min.x() + i * pw, y0 = raster.box.min.y() + j * ph;
        svg.rect(x0, y0, x0 + (e - i) * pw, y0 + ph, c == 1 ? "#2e86c1" : "#f5b041");
      }
      i = e;
    }
  }
  if (spine) draw_complex(svg, *spine, raster.box);
}

void write_complex_svg(std::ostream& os, const PolyhedralComplex& complex, const Box2D& view, double scale) {
  SvgWriter svg(os, view, scale);
  draw_complex(svg, complex, view);
}

void write_subdivision_svg(std::ostream& os, const Subdivision& subdivision, const NewtonPolytope& polytope,
                           double scale) {
  Eigen::Vector2d lo = polytope.vertices().front().cast(), hi = lo;
  for (const auto& v : polytope.vertices()) {
    lo = lo.cwiseMin(Eigen::Vector2d(v.cast()));
    hi = hi.cwiseMax(Eigen::Vector2d(v.cast()));
  }
  const Box2D view{lo.array() - 0.5, hi.array() + 0.5};
  SvgWriter svg(os, view, scale);
  std::vector<Eigen::Vector2d> outline;
  for (const auto& v : polytope.vertices()) outline.push_back(v.cast());
  svg.polygon(outline, "#fdebd0", "#7f8c8d");
  for (const auto& cell : subdivision.cells) {
    std::vector<Eigen::Vector2d> pts;
    for (const auto& v : cell) pts.push_back(v.cast());
    svg.polygon(pts, "none", "#1f618d");
  }
  for (const auto& v : subdivision.vertex_set) svg.circle(v.cast(), 4.0, "#1f618d");
}

}  // namespace amoeba::io
