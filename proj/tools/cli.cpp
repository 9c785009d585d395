#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "amoeba/degeneration.hpp"
#include "amoeba/io.hpp"
#include "amoeba/parallel.hpp"
#include "amoeba/polytope.hpp"
#include "amoeba/raster.hpp"
#include "amoeba/ronkin.hpp"
#include "amoeba/tropical.hpp"

namespace amoeba::cli {

namespace {

using io::Json;

constexpr int kSchemaVersion = 1;

struct Options {
  std::string poly;
  int dim = 2;
  std::vector<double> box;
  std::vector<int> resolution{512};
  int fibers = 64;
  std::string quadrature = "auto";
  int nodes = 256;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::string weights;
  std::vector<double> t;
  std::vector<double> k;
  std::string x;
  bool gradient = false;
  double h = kGradientStep;
  double grid_min = -20.0;
  double grid_max = 20.0;
  int grid_count = 41;
  std::string alpha0;
  std::string alpha1;
  std::string x0;
  std::string v;
  int trials = 200;
  double spacing = 0.01;
  bool estimate = false;
  bool frames = false;
  std::string out = ".";
  std::vector<std::string> formats{"json"};
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

/// Options that never influence results and are kept out of the report echo.
bool excluded_from_echo(const std::string& name) {
  return name == "--out" || name == "--threads" || name == "--config" || name == "--help";
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("not a finite number: '" + s + "'");
  return v;
}

/// Exact value of "p/q", an integer, or a decimal with optional exponent.
Rational parse_rational(const std::string& text) {
  const std::string s = trim(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    const Rational num = parse_rational(s.substr(0, slash));
    const Rational den = parse_rational(s.substr(slash + 1));
    if (den.is_zero()) throw std::invalid_argument("zero denominator in '" + s + "'");
    return num / den;
  }
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
  std::string digits;
  long exponent = 0;
  bool any = false, dot = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      any = true;
      if (dot) --exponent;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) throw std::invalid_argument("not a rational number: '" + s + "'");
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(s.substr(i + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent in '" + s + "'");
    }
    if (i + 1 + used != s.size()) throw std::invalid_argument("trailing text in '" + s + "'");
    exponent += e;
    i = s.size();
  }
  if (i != s.size()) throw std::invalid_argument("trailing text in '" + s + "'");
  if (std::labs(exponent) > 400) throw std::invalid_argument("exponent out of range in '" + s + "'");
  Rational value{boost::multiprecision::mpz_int(digits)};
  Rational scale{boost::multiprecision::pow(boost::multiprecision::mpz_int(10), static_cast<unsigned>(std::labs(exponent)))};
  value = exponent >= 0 ? value * scale : value / scale;
  return negative ? -value : value;
}

std::string rational_text(const Rational& r) { return r.str(); }

/// "(a,b)" or "a,b".
LatticePoint parse_point(const std::string& text, std::size_t dim) {
  std::string s = trim(text);
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::vector<std::int64_t> c;
  for (const auto& part : split(s, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a lattice point: '" + text + "'");
    }
    if (used != part.size()) throw std::invalid_argument("not a lattice point: '" + text + "'");
    c.push_back(v);
  }
  if (c.size() != dim) throw std::invalid_argument("lattice point '" + text + "' must have " + std::to_string(dim) + " coordinates");
  return LatticePoint(c);
}

Eigen::VectorXd parse_vector(const std::string& text, std::size_t dim, const char* what) {
  std::string s = trim(text);
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  const auto parts = split(s, ',');
  if (parts.size() != dim) throw std::invalid_argument(std::string(what) + " must have " + std::to_string(dim) + " coordinates");
  Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) v[static_cast<Eigen::Index>(i)] = parse_real(parts[i]);
  return v;
}

/// "(a,b):w;(c,d):w" or positional "w1,w2,..." in canonical (lexicographic) support order.
std::map<LatticePoint, Rational> parse_weights(const std::string& text, const LaurentPolynomial& f) {
  std::map<LatticePoint, Rational> w;
  if (text.find(':') != std::string::npos) {
    for (const auto& item : split(text, ';')) {
      if (item.empty()) continue;
      const auto colon = item.rfind(':');
      if (colon == std::string::npos) throw std::invalid_argument("weight entry '" + item + "' lacks ':'");
      const LatticePoint p = parse_point(item.substr(0, colon), f.dim());
      if (!w.emplace(p, parse_rational(item.substr(colon + 1))).second)
        throw std::invalid_argument("repeated weight for " + to_string(p));
    }
  } else {
    const auto parts = split(text, ',');
    const auto support = f.support();
    if (parts.size() != support.size())
      throw std::invalid_argument("expected " + std::to_string(support.size()) + " weights in support order");
    for (std::size_t i = 0; i < parts.size(); ++i) w.emplace(support[i], parse_rational(parts[i]));
  }
  for (const auto& [p, nu] : w)
    if (f.coefficient(p) == Complex(0.0)) throw std::invalid_argument("weight given for " + to_string(p) + " outside the support");
  for (const auto& p : f.support())
    if (!w.contains(p)) throw std::invalid_argument("missing weight for " + to_string(p));
  return w;
}

class Runner {
 public:
  Runner(const Options& o, const std::string& command, Json config, std::ostream& out, std::ostream& err)
      : o_(o), command_(command), config_(std::move(config)), out_(out), err_(err) {}

  int execute() {
    std::filesystem::create_directories(o_.out);
    log("parse");
    if (o_.poly.empty()) throw std::invalid_argument("--poly is required");
    if (o_.dim < 1) throw std::invalid_argument("--dim must be positive");
    f_.emplace(parse_laurent(o_.poly, static_cast<std::size_t>(o_.dim)));
    for (const auto& fmt : o_.formats)
      if (fmt != "json" && fmt != "csv" && fmt != "svg") throw std::invalid_argument("unknown format '" + fmt + "'");

    Json result;
    if (command_ == "info") result = info();
    else if (command_ == "subdivision") result = subdivision();
    else if (command_ == "spine") result = spine();
    else if (command_ == "raster") result = raster();
    else if (command_ == "ronkin") result = ronkin();
    else if (command_ == "solid-check") result = solid_check();
    else if (command_ == "bound-check") result = bound_check();
    else if (command_ == "sweep-convergence") result = sweep_convergence();
    else if (command_ == "sweep-solid") result = sweep_solid();
    else if (command_ == "sweep-subdivision") result = sweep_subdivision();
    else if (command_ == "phi-bound") result = phi_bound();
    else if (command_ == "threshold") result = threshold();
    else throw std::invalid_argument("unknown command " + command_);

    Json report;
    report["schema_version"] = kSchemaVersion;
    report["command"] = command_;
    report["config"] = config_;
    report["result"] = std::move(result);
    const std::string text = report.dump(2) + "\n";
    write_file(command_ + ".json", text);
    out_ << text;
    log("done");
    return 0;
  }

 private:
  const LaurentPolynomial& f() const { return *f_; }

  void log(const std::string& stage) { err_ << "[" << command_ << "] " << stage << "\n"; }

  bool wants(const char* fmt) const { return std::find(o_.formats.begin(), o_.formats.end(), fmt) != o_.formats.end(); }

  void write_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::path(o_.out) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << content;
  }

  template <typename Fn>
  void write_with(const std::string& name, Fn&& fn) {
    std::ostringstream os;
    fn(os);
    write_file(name, os.str());
  }

  void require_plane() const {
    if (o_.dim != 2) throw std::invalid_argument(command_ + " needs --dim 2");
  }

  QuadratureSpec quadrature() const {
    QuadratureSpec q;
    if (o_.quadrature == "grid" || (o_.quadrature == "auto" && o_.dim <= 2))
      q = QuadratureSpec::tensor_grid(o_.nodes);
    else if (o_.quadrature == "mc" || o_.quadrature == "auto")
      q = QuadratureSpec::monte_carlo(o_.samples, o_.seed);
    else
      throw std::invalid_argument("--quadrature must be auto, grid or mc");
    q.seed = o_.seed;
    q.validate();
    return q;
  }

  RasterOptions raster_options() const {
    RasterOptions r;
    if (o_.resolution.empty() || o_.resolution.size() > 2) throw std::invalid_argument("--resolution takes one or two values");
    r.width = o_.resolution[0];
    r.height = o_.resolution.size() == 2 ? o_.resolution[1] : o_.resolution[0];
    if (r.width < 1 || r.height < 1) throw std::invalid_argument("--resolution must be positive");
    if (o_.fibers < 1) throw std::invalid_argument("--fibers must be positive");
    r.fibers = o_.fibers;
    return r;
  }

  Box2D box_for(const LaurentPolynomial& g) const {
    if (o_.box.empty()) return default_box(g);
    if (o_.box.size() != 4) throw std::invalid_argument("--box takes xmin ymin xmax ymax");
    Box2D b{{o_.box[0], o_.box[1]}, {o_.box[2], o_.box[3]}};
    b.validate();
    return b;
  }

  std::map<LatticePoint, Rational> exact_weights() const {
    if (o_.weights.empty()) {
      std::map<LatticePoint, Rational> w;
      for (const auto& p : f().support()) w.emplace(p, Rational(0));
      return w;
    }
    return parse_weights(o_.weights, f());
  }

  DegenerationWeights weights() const {
    DegenerationWeights w;
    for (const auto& [p, nu] : exact_weights()) w.nu[p] = nu.convert_to<double>();
    return w;
  }

  std::vector<double> t_list(double k_first, double k_last) const {
    if (!o_.t.empty() && !o_.k.empty()) throw std::invalid_argument("give either --t or --k, not both");
    if (!o_.t.empty()) return o_.t;
    std::vector<double> t;
    if (!o_.k.empty()) {
      for (double k : o_.k) t.push_back(std::exp(-k));
      return t;
    }
    for (double k = k_first; k <= k_last; k += 1.0) t.push_back(std::exp(-k));
    return t;
  }

  static Json weights_json(const std::map<LatticePoint, Rational>& w) {
    Json j = Json::array();
    for (const auto& [p, nu] : w) j.push_back({{"point", io::to_json(p)}, {"height", rational_text(nu)}});
    return j;
  }

  Json info() {
    const NewtonPolytope polytope = newton_polytope(f());
    Json j;
    j["polynomial"] = to_string(f());
    j["dim"] = o_.dim;
    j["terms"] = f().size();
    j["polytope"] = io::to_json(polytope);
    j["vertex_count"] = polytope.vertices().size();
    j["maximally_sparse"] = is_maximally_sparse(f());
    j["regime"] = to_string(classify_regime(f()));
    return j;
  }

  Json subdivision() {
    require_plane();
    Json j;
    Subdivision sub;
    Json points = Json::array();
    if (!o_.weights.empty()) {
      RationalLifting lifting;
      lifting.heights = exact_weights();
      sub = regular_subdivision(lifting);
      j["lifting"] = weights_json(lifting.heights);
      j["arithmetic"] = "exact";
      for (const auto& [alpha, nu] : lifting.heights) {
        Json p{{"point", io::to_json(alpha)}, {"subdivision_vertex", is_subdivision_vertex(lifting, alpha)}};
        if (auto cert = redundancy_criterion(lifting, alpha)) {
          Json c = Json::array();
          for (const auto& [beta, lambda] : cert->weights) c.push_back({{"point", io::to_json(beta)}, {"lambda", rational_text(lambda)}});
          p["certificate"] = {{"weights", c}, {"combination_height", rational_text(cert->combination_height)}, {"strict", cert->strict}};
        } else {
          p["certificate"] = nullptr;
        }
        points.push_back(std::move(p));
      }
    } else {
      const Lifting lifting = coefficient_lifting(f());
      sub = regular_subdivision(lifting);
      j["lifting"] = io::to_json(lifting);
      j["arithmetic"] = "floating";
      for (const auto& [alpha, nu] : lifting.heights)
        points.push_back({{"point", io::to_json(alpha)}, {"subdivision_vertex", is_subdivision_vertex(lifting, alpha)}});
    }
    j["subdivision"] = io::to_json(sub);
    j["points"] = std::move(points);
    if (wants("svg")) write_with("subdivision.svg", [&](std::ostream& os) { io::write_subdivision_svg(os, sub, newton_polytope(f())); });
    return j;
  }

  Json spine() {
    require_plane();
    Json j;
    PolyhedralComplex complex;
    if (!o_.weights.empty()) {
      RationalLifting lifting;
      lifting.heights = exact_weights();
      complex = corner_locus_2d(lifting);
      j["source"] = "weights";
      j["lifting"] = weights_json(lifting.heights);
    } else if (o_.estimate) {
      const Lifting lifting = coefficient_lifting(f());
      complex = corner_locus_2d(lifting);
      j["source"] = "coefficients";
      j["lifting"] = io::to_json(lifting);
    } else {
      log("raster");
      const AmoebaRaster r = raster_2d(f(), box_for(f()), raster_options());
      auto components = complement_components(r);
      log("orders");
      const QuadratureSpec q = quadrature();
      assign_orders(f(), components, q);
      std::vector<ComponentSample> samples;
      for (const auto& c : components) samples.push_back({*c.order, c.witness_point});
      log("constants");
      const Lifting lifting = spine_constants(f(), samples, q);
      complex = corner_locus_2d(lifting);
      j["source"] = "ronkin";
      j["lifting"] = io::to_json(lifting);
    }
    j["complex"] = io::to_json(complex);
    if (wants("svg")) {
      const Box2D view = o_.box.empty() ? vertex_window(complex, 2.0) : box_for(f());
      write_with("spine.svg", [&](std::ostream& os) { io::write_complex_svg(os, complex, view); });
    }
    return j;
  }

  Json raster_json(const AmoebaRaster& r) {
    Json j;
    j["box"] = io::to_json(r.box);
    j["resolution"] = {r.width, r.height};
    j["fibers_per_line"] = r.fibers;
    j["fibers_solved"] = r.fibers_solved;
    j["fibers_failed"] = r.fibers_failed;
    j["in_amoeba"] = r.count(Verdict::InAmoeba);
    j["certified_complement"] = r.count(Verdict::CertifiedComplement);
    j["uncertified_complement"] = r.count(Verdict::UncertifiedComplement);
    return j;
  }

  Json raster() {
    require_plane();
    log("raster");
    const AmoebaRaster r = raster_2d(f(), box_for(f()), raster_options());
    const auto components = complement_components(r);
    Json j = raster_json(r);
    j["components"] = Json::array();
    for (const auto& c : components) j["components"].push_back(io::to_json(c));
    if (wants("csv")) write_with("raster.csv", [&](std::ostream& os) { io::write_raster_csv(os, r); });
    if (wants("svg")) write_with("raster.svg", [&](std::ostream& os) { io::write_raster_svg(os, r, components); });
    return j;
  }

  Json ronkin() {
    if (o_.x.empty()) throw std::invalid_argument("--x is required");
    const QuadratureSpec q = quadrature();
    Json j;
    j["quadrature"] = {{"scheme", to_string(q.scheme)}, {"nodes_per_angle", q.nodes_per_angle}, {"samples", q.samples}, {"seed", q.seed}};
    j["points"] = Json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto& item : split(o_.x, ';')) {
      if (item.empty()) continue;
      const Eigen::VectorXd x = parse_vector(item, f().dim(), "--x");
      const RonkinValue v = ronkin_estimate(f(), x, q);
      Json p{{"x", io::to_json(x)}, {"value", v.value}, {"std_error", v.std_error}, {"discarded", v.discarded}, {"nodes", v.nodes}};
      if (o_.gradient) p["gradient"] = io::to_json(ronkin_gradient(f(), x, q, o_.h));
      j["points"].push_back(std::move(p));
      std::vector<std::string> row;
      for (Eigen::Index i = 0; i < x.size(); ++i) row.push_back(io::format_double(x[i]));
      row.push_back(io::format_double(v.value));
      row.push_back(io::format_double(v.std_error));
      rows.push_back(std::move(row));
    }
    if (wants("csv")) {
      std::vector<std::string> header;
      for (int i = 1; i <= o_.dim; ++i) header.push_back("x" + std::to_string(i));
      header.push_back("N");
      header.push_back("std_error");
      write_with("ronkin.csv", [&](std::ostream& os) { io::write_csv(os, header, rows); });
    }
    return j;
  }

  Json solid_check() {
    require_plane();
    log("raster");
    AmoebaRaster r;
    const SolidityReport rep = is_solid(f(), box_for(f()), raster_options(), quadrature(), r);
    Json j = io::to_json(rep);
    j["regime"] = to_string(classify_regime(f()));
    if (wants("csv")) write_with("solid-check.csv", [&](std::ostream& os) { io::write_raster_csv(os, r); });
    if (wants("svg")) {
      const PolyhedralComplex spine = corner_locus_2d(coefficient_lifting(f()));
      write_with("solid-check.svg", [&](std::ostream& os) { io::write_raster_svg(os, r, rep.components, &spine); });
    }
    return j;
  }

  Json bound_check() {
    if (o_.grid_count < 1 || !(o_.grid_min <= o_.grid_max)) throw std::invalid_argument("bad --grid-min/--grid-max/--grid-count");
    const std::vector<double> ts = t_list(1, 8);
    for (double t : ts) check_degeneration_parameter(t);
    const std::size_t n = f().dim();
    std::size_t total = 1;
    for (std::size_t d = 0; d < n; ++d) total *= static_cast<std::size_t>(o_.grid_count);
    std::vector<Eigen::VectorXd> grid;
    for (std::size_t idx = 0; idx < total; ++idx) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(n));
      std::size_t rest = idx;
      for (std::size_t d = 0; d < n; ++d) {
        const std::size_t c = rest % static_cast<std::size_t>(o_.grid_count);
        rest /= static_cast<std::size_t>(o_.grid_count);
        x[static_cast<Eigen::Index>(d)] =
            o_.grid_count == 1 ? o_.grid_min : o_.grid_min + (o_.grid_max - o_.grid_min) * static_cast<double>(c) / (o_.grid_count - 1);
      }
      grid.push_back(std::move(x));
    }
    log("quadrature");
    const BoundCheckReport rep = ft_bound_check(f(), weights(), ts, grid, quadrature());
    for (const auto& w : rep.warnings) err_ << "warning: " << w << "\n";
    if (wants("csv")) {
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : rep.rows)
        rows.push_back({io::format_double(r.t), io::format_double(r.sup_gap), io::format_double(r.max_std_error), io::format_double(rep.bound)});
      write_with("bound-check.csv", [&](std::ostream& os) { io::write_csv(os, {"t", "sup_gap", "max_std_error", "bound"}, rows); });
    }
    return io::to_json(rep);
  }

  Json sweep_convergence() {
    require_plane();
    const std::vector<double> ts = t_list(2, 8);
    log("sweep");
    const ConvergenceReport rep = convergence_sweep(f(), weights(), ts, raster_options(), o_.spacing);
    if (wants("csv")) {
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : rep.rows)
        rows.push_back({io::format_double(r.t), io::format_double(r.k), io::format_double(r.distance), std::to_string(r.cloud_size)});
      write_with("sweep-convergence.csv", [&](std::ostream& os) { io::write_csv(os, {"t", "k", "hausdorff", "cloud_size"}, rows); });
    }
    if (wants("svg")) write_with("sweep-convergence.svg", [&](std::ostream& os) { io::write_complex_svg(os, rep.limit, rep.window); });
    if (o_.frames) {
      for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const PointCloud2D cloud = rescaled_amoeba(f(), weights(), rep.rows[i].t, rep.window, raster_options());
        write_with("frame_" + std::to_string(i) + ".svg", [&](std::ostream& os) {
          std::ostringstream tmp;
          io::write_complex_svg(tmp, rep.limit, rep.window);
          std::string body = tmp.str();
          body.erase(body.rfind("</svg>"));
          os << body;
          const double s = io::kSvgPixelsPerUnit;
          for (const auto& p : cloud)
            os << "<rect x=\"" << (p.x() - rep.window.min.x()) * s << "\" y=\"" << (rep.window.max.y() - p.y()) * s
               << "\" width=\"1\" height=\"1\" fill=\"#2e86c1\"/>\n";
          os << "</svg>\n";
        });
      }
    }
    return io::to_json(rep);
  }

  Json sweep_solid() {
    require_plane();
    const std::vector<double> ts = t_list(1, 8);
    log("sweep");
    const SolidnessSweepReport rep = solidness_sweep(f(), weights(), ts, raster_options(), quadrature());
    for (const auto& w : rep.warnings) err_ << "warning: " << w << "\n";
    if (wants("csv")) {
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : rep.rows)
        rows.push_back({io::format_double(r.t), r.solid ? "true" : "false", std::to_string(r.component_count), std::to_string(r.vertex_count)});
      write_with("sweep-solid.csv", [&](std::ostream& os) { io::write_csv(os, {"t", "solid", "component_count", "vertex_count"}, rows); });
    }
    return io::to_json(rep);
  }

  Json sweep_subdivision() {
    require_plane();
    const std::vector<double> ts = t_list(1, 8);
    log("sweep");
    const SubdivisionSweepReport rep = subdivision_stability_sweep(f(), weights(), ts, raster_options(), quadrature());
    if (wants("csv")) {
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : rep.rows)
        rows.push_back({io::format_double(r.t), r.matches ? "true" : "false", std::to_string(r.subdivision.cells.size())});
      write_with("sweep-subdivision.csv", [&](std::ostream& os) { io::write_csv(os, {"t", "matches", "cells"}, rows); });
    }
    return io::to_json(rep);
  }

  Json phi_bound() {
    if (o_.alpha0.empty()) throw std::invalid_argument("--alpha0 is required");
    const LatticePoint alpha0 = parse_point(o_.alpha0, f().dim());
    if (f().coefficient(alpha0) == Complex(0.0)) throw std::invalid_argument("--alpha0 must be in the support");
    if (o_.trials < 0) throw std::invalid_argument("--trials must be nonnegative");
    std::map<LatticePoint, Complex> xi(f().terms().begin(), f().terms().end());
    const double phi = phi_lower_bound(alpha0, xi, o_.trials, quadrature());
    return Json{{"alpha0", io::to_json(alpha0)}, {"trials", o_.trials}, {"min_phi", phi}, {"candidate_C1", -phi}};
  }

  Json threshold() {
    if (o_.alpha1.empty() || o_.x0.empty() || o_.v.empty()) throw std::invalid_argument("--alpha1, --x0 and --v are required");
    const std::size_t n = f().dim();
    const LatticePoint alpha1 = parse_point(o_.alpha1, n);
    const Eigen::VectorXd x0 = parse_vector(o_.x0, n, "--x0");
    const Eigen::VectorXd v = parse_vector(o_.v, n, "--v");
    const std::vector<double> ts = t_list(1, 1);
    if (ts.size() != 1) throw std::invalid_argument("threshold takes a single t");
    if (!(ts[0] > 0.0)) throw std::invalid_argument("t must be positive");
    const Lifting lifting = to_lifting(weights());
    Json terms = Json::array();
    for (const auto& term : dominance_terms(x0, v, lifting, ts[0], alpha1))
      terms.push_back({{"alpha", io::to_json(term.alpha)}, {"A", term.A}, {"B", term.B}, {"delta", term.delta}, {"s", term.s}});
    return Json{{"alpha1", io::to_json(alpha1)}, {"t", ts[0]}, {"s0", dominance_threshold(x0, v, lifting, ts[0], alpha1)}, {"terms", terms}};
  }

  const Options& o_;
  std::string command_;
  Json config_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<LaurentPolynomial> f_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Amoebas, spines and tropical degenerations of Laurent polynomials"};
  app.name("amoeba");
  app.set_config("--config", "", "Read options from a 'key = value' file; flags override it");

  app.add_option("-f,--poly", o.poly, "Laurent polynomial, e.g. \"1 + z1 + z2\"");
  app.add_option("-n,--dim", o.dim, "Number of variables")->capture_default_str();
  app.add_option("--box", o.box, "Raster box: xmin ymin xmax ymax (default: spine box + 2)")->expected(4);
  app.add_option("--resolution", o.resolution, "Raster size: W [H]")->expected(1, 2)->capture_default_str();
  app.add_option("--fibers", o.fibers, "Fibers per raster line")->capture_default_str();
  app.add_option("--quadrature", o.quadrature, "auto, grid or mc")->capture_default_str();
  app.add_option("--nodes", o.nodes, "Tensor-grid nodes per angle")->capture_default_str();
  app.add_option("--samples", o.samples, "Monte Carlo samples")->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--weights", o.weights,
                 "Heights nu: \"(a,b):w;...\" or \"w1,w2,...\" in canonical support order; exact rationals accepted");
  app.add_option("--t", o.t, "Degeneration parameters t");
  app.add_option("--k", o.k, "Degeneration parameters as t = e^{-k}");
  app.add_option("--x", o.x, "Evaluation points \"x1,x2;x1,x2;...\"");
  app.add_flag("--gradient", o.gradient, "Also report Ronkin gradients");
  app.add_option("--step", o.h, "Finite-difference step for --gradient")->capture_default_str();
  app.add_option("--grid-min", o.grid_min, "Bound-check grid lower end")->capture_default_str();
  app.add_option("--grid-max", o.grid_max, "Bound-check grid upper end")->capture_default_str();
  app.add_option("--grid-count", o.grid_count, "Bound-check grid points per axis")->capture_default_str();
  app.add_option("--alpha0", o.alpha0, "Fixed exponent for phi-bound");
  app.add_option("--alpha1", o.alpha1, "Dominant exponent for threshold");
  app.add_option("--x0", o.x0, "Ray origin for threshold");
  app.add_option("--v", o.v, "Ray direction for threshold");
  app.add_option("--trials", o.trials, "Random candidates for phi-bound")->capture_default_str();
  app.add_option("--spacing", o.spacing, "Sampling step along the limit spine")->capture_default_str();
  app.add_flag("--estimate", o.estimate, "spine: use nu = -log|a| instead of Ronkin constants");
  app.add_flag("--frames", o.frames, "sweep-convergence: write one SVG frame per t");
  app.add_option("--out", o.out, "Output directory")->capture_default_str();
  app.add_option("--format", o.formats, "Artifacts to write besides the report: json, csv, svg")->capture_default_str();
  app.add_option("--threads", o.threads, "Worker thread cap");

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"info", "Newton polytope, lattice points and regime"},
      {"subdivision", "Regular subdivision of a lifting"},
      {"spine", "Spine (corner locus of Ronkin constants) or tropical curve of given weights"},
      {"raster", "Amoeba raster and complement components"},
      {"ronkin", "Ronkin function values"},
      {"solid-check", "Component count and orders versus Newton polytope vertices"},
      {"bound-check", "Uniform gap between N_{f_t} and F_t"},
      {"sweep-convergence", "Hausdorff distance of rescaled amoebas to the limit spine"},
      {"sweep-solid", "Solidness of f_t across t"},
      {"sweep-subdivision", "Spine subdivisions of f_t versus the limit subdivision"},
      {"phi-bound", "Randomized minimum of the torus average over the coefficient box"},
      {"threshold", "Dominance threshold along a ray"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();
  app.require_subcommand(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  std::string command;
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();

  Json config;
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_name();
    if (excluded_from_echo(name)) continue;
    const std::string key = opt->get_lnames().empty() ? name : opt->get_lnames().front();
    if (opt->count() > 0) {
      const auto& res = opt->results();
      config[key] = res.size() == 1 ? Json(res.front()) : Json(res);
    } else {
      config[key] = opt->get_default_str();
    }
  }

  try {
    set_max_threads(std::max(1u, o.threads));
    Runner runner(o, command, std::move(config), out, err);
    return runner.execute();
  } catch (const ComputationError& e) {
    err << "computation failed: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace amoeba::cli
