#include "amoeba/raster.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <set>

#include "amoeba/parallel.hpp"
#include "amoeba/polytope.hpp"
#include "amoeba/roots.hpp"
#include "amoeba/tropical.hpp"

namespace amoeba {

void Box2D::validate() const {
  if (!min.allFinite() || !max.allFinite()) throw std::invalid_argument("box bounds must be finite");
  if (!(min.x() < max.x()) || !(min.y() < max.y())) throw std::invalid_argument("box must satisfy min < max componentwise");
}

std::size_t AmoebaRaster::count(Verdict v) const { return static_cast<std::size_t>(std::count(verdicts.begin(), verdicts.end(), v)); }

Box2D default_box(const LaurentPolynomial& f) {
  if (f.dim() != 2) throw std::invalid_argument("default_box: polynomial must have n = 2");
  if (f.is_monomial()) throw std::invalid_argument("default_box: the amoeba of a monomial is empty");
  const PolyhedralComplex spine = corner_locus_2d(coefficient_lifting(f));
  Eigen::Vector2d lo = spine.vertices.front(), hi = spine.vertices.front();
  for (const auto& v : spine.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Eigen::Vector2d margin(2.0, 2.0);
  return {lo - margin, hi + margin};
}

std::optional<LatticePoint> lopsided_certificate(const LaurentPolynomial& f, const Eigen::Vector2d& x) {
  if (f.dim() != 2) throw std::invalid_argument("lopsided_certificate: polynomial must have n = 2");
  std::vector<double> logs;
  std::vector<LatticePoint> pts;
  for (const auto& [alpha, a] : f.terms()) {
    logs.push_back(std::log(std::abs(a)) + alpha.dot(x));
    pts.push_back(alpha);
  }
  const std::size_t top = static_cast<std::size_t>(std::max_element(logs.begin(), logs.end()) - logs.begin());
  double rest = 0.0;
  for (std::size_t k = 0; k < logs.size(); ++k)
    if (k != top) rest += std::exp(logs[k] - logs[top]);
  if (1.0 > rest) return pts[top];
  return std::nullopt;
}

namespace {

/// f as a polynomial in the variable `solve` with coefficients depending on the other one.
class FiberSolver {
 public:
  FiberSolver(const LaurentPolynomial& f, int solve) : other_(1 - solve) {
    for (const auto& [alpha, a] : f.terms()) {
      kmin_ = std::min(kmin_, alpha[static_cast<std::size_t>(solve)]);
      kmax_ = std::max(kmax_, alpha[static_cast<std::size_t>(solve)]);
    }
    groups_.resize(static_cast<std::size_t>(kmax_ - kmin_ + 1));
    for (const auto& [alpha, a] : f.terms())
      groups_[static_cast<std::size_t>(alpha[static_cast<std::size_t>(solve)] - kmin_)].push_back(
          {static_cast<double>(alpha[static_cast<std::size_t>(other_)]), std::log(std::abs(a)), a / std::abs(a)});
  }

  bool depends() const { return kmax_ > kmin_; }

  std::vector<LogRoot> roots(double x, double theta) const {
    ScaledCoefficients c(groups_.size());
    for (std::size_t k = 0; k < groups_.size(); ++k) {
      const auto& g = groups_[k];
      if (g.empty()) {
        c[k] = {-std::numeric_limits<double>::infinity(), 0.0};
        continue;
      }
      double scale = -std::numeric_limits<double>::infinity();
      for (const auto& t : g) scale = std::max(scale, t.log_abs + t.exponent * x);
      Complex sum = 0.0;
      for (const auto& t : g) sum += t.phase * std::polar(std::exp(t.log_abs + t.exponent * x - scale), t.exponent * theta);
      c[k] = {scale, sum};
    }
    return polynomial_roots(c);
  }

 private:
  struct Term {
    double exponent;
    double log_abs;
    Complex phase;
  };
  int other_;
  std::int64_t kmin_ = std::numeric_limits<std::int64_t>::max();
  std::int64_t kmax_ = std::numeric_limits<std::int64_t>::min();
  std::vector<std::vector<Term>> groups_;
};

double wrapped(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return std::abs(a);
}

double root_distance(const LogRoot& a, const LogRoot& b) { return std::hypot(a.log_abs - b.log_abs, wrapped(a.arg - b.arg)); }

/// Greedy closest-pair matching; unmatched roots get -1.
std::vector<int> match_roots(const std::vector<LogRoot>& a, const std::vector<LogRoot>& b) {
  struct Pair {
    double d;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) pairs.push_back({root_distance(a[i], b[j]), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& p, const Pair& q) {
    return p.d < q.d || (p.d == q.d && (p.i < q.i || (p.i == q.i && p.j < q.j)));
  });
  std::vector<int> m(a.size(), -1);
  std::vector<bool> used(b.size(), false);
  for (const auto& p : pairs) {
    if (m[p.i] >= 0 || used[p.j]) continue;
    m[p.i] = static_cast<int>(p.j);
    used[p.j] = true;
  }
  return m;
}

constexpr double kMaxRootStep = 0.25;

/// Traces root paths along one line of the raster (a column or a row).
class LineTracer {
 public:
  LineTracer(const FiberSolver& solver, double x, double lo, double cell, int cells, int max_depth,
             std::vector<std::uint32_t>& hits)
      : solver_(solver), x_(x), lo_(lo), cell_(cell), cells_(cells), max_depth_(max_depth), hits_(hits) {}

  std::size_t solved = 0;
  std::size_t failed = 0;

  std::optional<std::vector<LogRoot>> solve(double theta) {
    try {
      auto r = solver_.roots(x_, theta);
      ++solved;
      return r;
    } catch (const ComputationError&) {
      ++failed;
      return std::nullopt;
    }
  }

  void trace(int fibers) {
    std::vector<std::optional<std::vector<LogRoot>>> roots(static_cast<std::size_t>(fibers));
    for (int m = 0; m < fibers; ++m) roots[static_cast<std::size_t>(m)] = solve(2.0 * std::numbers::pi * m / fibers);
    for (int m = 0; m < fibers; ++m) {
      const auto& ra = roots[static_cast<std::size_t>(m)];
      const auto& rb = roots[static_cast<std::size_t>((m + 1) % fibers)];
      const double ta = 2.0 * std::numbers::pi * m / fibers;
      const double tb = 2.0 * std::numbers::pi * (m + 1) / fibers;
      if (ra && rb)
        refine(ta, *ra, tb, *rb, 0);
      else if (ra)
        for (const auto& r : *ra) mark(r.log_abs);
    }
  }

 private:
  double position(double y) const { return (y - lo_) / cell_; }

  void mark(double y) {
    const double p = position(y);
    if (!(p >= 0.0 && p < cells_)) return;
    ++hits_[static_cast<std::size_t>(p)];
  }

  void fill(double ya, double yb) {
    double pa = position(ya), pb = position(yb);
    if (pa > pb) std::swap(pa, pb);
    if (pb < 0.0 || pa >= cells_) return;
    const int ja = pa < 0.0 ? 0 : static_cast<int>(pa);
    const int jb = pb >= cells_ ? cells_ - 1 : static_cast<int>(pb);
    for (int j = ja; j <= jb; ++j) ++hits_[static_cast<std::size_t>(j)];
  }

  bool outside_same_side(double ya, double yb) const {
    const double pa = position(ya), pb = position(yb);
    return (pa < 0.0 && pb < 0.0) || (pa >= cells_ && pb >= cells_);
  }

  void refine(double ta, const std::vector<LogRoot>& ra, double tb, const std::vector<LogRoot>& rb, int depth) {
    const std::vector<int> m = match_roots(ra, rb);
    bool split = false;
    for (std::size_t i = 0; i < ra.size() && !split; ++i) {
      if (m[i] < 0) continue;
      const LogRoot& b = rb[static_cast<std::size_t>(m[i])];
      if (outside_same_side(ra[i].log_abs, b.log_abs)) continue;
      split = std::abs(position(ra[i].log_abs) - position(b.log_abs)) > 1.0 || root_distance(ra[i], b) > kMaxRootStep;
    }
    if (split && depth < max_depth_) {
      const double tm = 0.5 * (ta + tb);
      if (auto rm = solve(tm)) {
        refine(ta, ra, tm, *rm, depth + 1);
        refine(tm, *rm, tb, rb, depth + 1);
        return;
      }
    }
    std::vector<bool> used(rb.size(), false);
    for (std::size_t i = 0; i < ra.size(); ++i) {
      if (m[i] < 0) {
        mark(ra[i].log_abs);
        continue;
      }
      used[static_cast<std::size_t>(m[i])] = true;
      fill(ra[i].log_abs, rb[static_cast<std::size_t>(m[i])].log_abs);
    }
    for (std::size_t j = 0; j < rb.size(); ++j)
      if (!used[j]) mark(rb[j].log_abs);
  }

  const FiberSolver& solver_;
  double x_, lo_, cell_;
  int cells_, max_depth_;
  std::vector<std::uint32_t>& hits_;
};

}  // namespace

AmoebaRaster raster_2d(const LaurentPolynomial& f, const Box2D& box, const RasterOptions& options) {
  if (f.dim() != 2) throw std::invalid_argument("raster_2d: polynomial must have n = 2");
  box.validate();
  if (options.width < 1 || options.height < 1) throw std::invalid_argument("raster_2d: resolution must be positive");
  if (options.fibers < 1) throw std::invalid_argument("raster_2d: fibers per line must be positive");
  if (options.max_refine_depth < 0) throw std::invalid_argument("raster_2d: negative refinement depth");

  AmoebaRaster r;
  r.box = box;
  r.width = options.width;
  r.height = options.height;
  r.fibers = options.fibers;
  r.support = f.support();
  const std::size_t npix = static_cast<std::size_t>(r.width) * static_cast<std::size_t>(r.height);
  r.samples.assign(npix, 0);
  r.verdicts.assign(npix, Verdict::UncertifiedComplement);
  r.certificate.assign(npix, -1);

  if (f.is_monomial()) {
    std::fill(r.verdicts.begin(), r.verdicts.end(), Verdict::CertifiedComplement);
    std::fill(r.certificate.begin(), r.certificate.end(), 0);
    return r;
  }

  const FiberSolver by_z2(f, 1), by_z1(f, 0);
  if (!by_z2.depends()) throw std::invalid_argument("raster_2d: polynomial does not depend on z2");

  std::atomic<std::size_t> solved{0}, failed{0};
  // Columns: fix z1 on a circle, solve for z2.
  parallel_for(static_cast<std::size_t>(r.width), [&](std::size_t i) {
    std::vector<std::uint32_t> hits(static_cast<std::size_t>(r.height), 0);
    LineTracer tracer(by_z2, r.center(static_cast<int>(i), 0).x(), box.min.y(), r.pixel_height(), r.height,
                      options.max_refine_depth, hits);
    tracer.trace(options.fibers);
    for (int j = 0; j < r.height; ++j) r.samples[r.index(static_cast<int>(i), j)] += hits[static_cast<std::size_t>(j)];
    solved += tracer.solved;
    failed += tracer.failed;
  });
  // Rows: fix z2, solve for z1.
  if (by_z1.depends()) {
    parallel_for(static_cast<std::size_t>(r.height), [&](std::size_t j) {
      std::vector<std::uint32_t> hits(static_cast<std::size_t>(r.width), 0);
      LineTracer tracer(by_z1, r.center(0, static_cast<int>(j)).y(), box.min.x(), r.pixel_width(), r.width,
                        options.max_refine_depth, hits);
      tracer.trace(options.fibers);
      for (int i = 0; i < r.width; ++i) r.samples[r.index(i, static_cast<int>(j))] += hits[static_cast<std::size_t>(i)];
      solved += tracer.solved;
      failed += tracer.failed;
    });
  }
  r.fibers_solved = solved;
  r.fibers_failed = failed;
  if (static_cast<double>(r.fibers_failed) > 0.01 * static_cast<double>(r.fibers_solved + r.fibers_failed))
    throw ComputationError("root solver failed on " + std::to_string(r.fibers_failed) + " fibers");

  parallel_for(static_cast<std::size_t>(r.height), [&](std::size_t j) {
    for (int i = 0; i < r.width; ++i) {
      const std::size_t k = r.index(i, static_cast<int>(j));
      if (r.samples[k] > 0) {
        r.verdicts[k] = Verdict::InAmoeba;
        continue;
      }
      if (auto cert = lopsided_certificate(f, r.center(i, static_cast<int>(j)))) {
        r.verdicts[k] = Verdict::CertifiedComplement;
        r.certificate[k] = static_cast<std::int32_t>(std::lower_bound(r.support.begin(), r.support.end(), *cert) - r.support.begin());
      }
    }
  });
  return r;
}

std::vector<ComplementComponent> complement_components(const AmoebaRaster& raster) {
  const int w = raster.width, h = raster.height;
  const std::size_t npix = raster.verdicts.size();

  // Chessboard distance to the nearest amoeba pixel.
  std::vector<int> dist(npix, std::numeric_limits<int>::max());
  std::deque<std::size_t> queue;
  for (std::size_t k = 0; k < npix; ++k)
    if (raster.verdicts[k] == Verdict::InAmoeba) {
      dist[k] = 0;
      queue.push_back(k);
    }
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    const int i = static_cast<int>(k % static_cast<std::size_t>(w)), j = static_cast<int>(k / static_cast<std::size_t>(w));
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        const int ni = i + di, nj = j + dj;
        if (ni < 0 || nj < 0 || ni >= w || nj >= h) continue;
        const std::size_t nk = raster.index(ni, nj);
        if (dist[nk] > dist[k] + 1) {
          dist[nk] = dist[k] + 1;
          queue.push_back(nk);
        }
      }
  }

  std::vector<ComplementComponent> out;
  std::vector<bool> seen(npix, false);
  for (std::size_t start = 0; start < npix; ++start) {
    if (seen[start] || raster.verdicts[start] == Verdict::InAmoeba) continue;
    ComplementComponent c;
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    bool border = false;
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      c.pixels.push_back(k);
      const int i = static_cast<int>(k % static_cast<std::size_t>(w)), j = static_cast<int>(k / static_cast<std::size_t>(w));
      if (i == 0 || j == 0 || i == w - 1 || j == h - 1) border = true;
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int ni = i + di[d], nj = j + dj[d];
        if (ni < 0 || nj < 0 || ni >= w || nj >= h) continue;
        const std::size_t nk = raster.index(ni, nj);
        if (seen[nk] || raster.verdicts[nk] == Verdict::InAmoeba) continue;
        seen[nk] = true;
        stack.push_back(nk);
      }
    }
    if (c.pixels.size() < kMinComponentPixels) continue;
    std::sort(c.pixels.begin(), c.pixels.end());
    c.bounded = !border;
    c.witness = c.pixels.front();
    for (std::size_t k : c.pixels)
      if (dist[k] > dist[c.witness]) c.witness = k;
    c.clearance = dist[c.witness];
    c.witness_point = raster.center(c.witness);
    out.push_back(std::move(c));
  }
  return out;
}

void assign_orders(const LaurentPolynomial& f, std::vector<ComplementComponent>& components, const QuadratureSpec& q) {
  if (f.dim() != 2) throw std::invalid_argument("assign_orders: polynomial must have n = 2");
  const auto support = f.support();
  parallel_for(components.size(), [&](std::size_t c) {
    auto& comp = components[c];
    if (comp.clearance < kMinWitnessClearance)
      throw ComputationError("complement component too thin: witness is " + std::to_string(comp.clearance) +
                             " pixels from the amoeba");
    const Eigen::VectorXd g = ronkin_gradient(f, comp.witness_point, q);
    auto [p, d] = round_to_lattice(g);
    comp.rounding_distance = d;
    if (d >= kMaxRoundingDistance)
      throw ComputationError("ambiguous order: gradient (" + std::to_string(g[0]) + ", " + std::to_string(g[1]) +
                             ") is " + std::to_string(d) + " from the nearest lattice point");
    if (!in_convex_hull(p, support))
      throw ComputationError("order " + to_string(p) + " lies outside the Newton polytope");
    comp.order = p;
  });
}

SolidityReport is_solid(const LaurentPolynomial& f, const Box2D& box, const RasterOptions& options,
                        const QuadratureSpec& q, AmoebaRaster& raster_out) {
  if (f.dim() != 2) throw std::invalid_argument("is_solid: polynomial must have n = 2");
  SolidityReport rep;
  rep.box = box;
  rep.options = options;
  rep.vertices = f.is_monomial() ? f.support() : newton_polytope(f).vertices();
  rep.vertex_count = rep.vertices.size();
  raster_out = raster_2d(f, box, options);
  rep.components = complement_components(raster_out);
  assign_orders(f, rep.components, q);
  rep.component_count = rep.components.size();
  std::set<LatticePoint> orders;
  bool all_vertices = true;
  for (const auto& c : rep.components) {
    if (c.bounded) ++rep.bounded_count;
    orders.insert(*c.order);
    all_vertices = all_vertices && std::find(rep.vertices.begin(), rep.vertices.end(), *c.order) != rep.vertices.end();
  }
  rep.solid = rep.component_count == rep.vertex_count && all_vertices && orders.size() == rep.component_count;
  return rep;
}

SolidityReport is_solid(const LaurentPolynomial& f, const Box2D& box, const RasterOptions& options,
                        const QuadratureSpec& q) {
  AmoebaRaster raster;
  return is_solid(f, box, options, q, raster);
}

}  // namespace amoeba
