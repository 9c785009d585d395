#include "amoeba/polytope.hpp"

#include <algorithm>
#include <numeric>

#include "amoeba/lp.hpp"

namespace amoeba {

std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::Vertex: return "Vertex";
    case PointClass::BoundaryNonVertex: return "BoundaryNonVertex";
    case PointClass::Interior: return "Interior";
    case PointClass::Outside: return "Outside";
  }
  return "?";
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::MaximallySparse: return "MaximallySparse";
    case Regime::BoundarySupported: return "BoundarySupported";
    case Regime::InteriorSupported: return "InteriorSupported";
  }
  return "?";
}

NewtonPolytope::NewtonPolytope(std::size_t dim, std::vector<LatticePoint> vertices, std::vector<Facet> facets)
    : dim_(dim), vertices_(std::move(vertices)), facets_(std::move(facets)) {}

bool NewtonPolytope::is_vertex(const LatticePoint& p) const {
  return std::find(vertices_.begin(), vertices_.end(), p) != vertices_.end();
}

PointClass NewtonPolytope::classify(const LatticePoint& p) const {
  if (p.dim() != dim_) throw std::invalid_argument("classify: dimension mismatch");
  bool on_boundary = false;
  for (const auto& f : facets_) {
    const std::int64_t v = dot(f.normal, p);
    if (v > f.offset) return PointClass::Outside;
    if (v == f.offset) on_boundary = true;
  }
  if (is_vertex(p)) return PointClass::Vertex;
  return on_boundary ? PointClass::BoundaryNonVertex : PointClass::Interior;
}

namespace {

std::int64_t cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return checked::sub(checked::mul(checked::sub(a[0], o[0]), checked::sub(b[1], o[1])),
                      checked::mul(checked::sub(a[1], o[1]), checked::sub(b[0], o[0])));
}

std::vector<LatticePoint> sorted_unique(std::span<const LatticePoint> points) {
  std::vector<LatticePoint> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

NewtonPolytope hull_plane(std::vector<LatticePoint> pts) {
  // Andrew's monotone chain; strict turns drop collinear points.
  std::vector<LatticePoint> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);

  std::vector<Facet> facets;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const LatticePoint& a = h[i];
    const LatticePoint& b = h[(i + 1) % h.size()];
    LatticePoint normal = primitive(LatticePoint{checked::sub(b[1], a[1]), checked::sub(a[0], b[0])});
    facets.push_back({normal, dot(normal, a)});
  }
  return NewtonPolytope(2, std::move(h), std::move(facets));
}

NewtonPolytope hull_general(const std::vector<LatticePoint>& pts, std::size_t n) {
  std::vector<LatticePoint> vertices;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<LatticePoint> others;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    if (!in_convex_hull(pts[i], others)) vertices.push_back(pts[i]);
  }

  // Facets: hyperplanes through n affinely independent vertices with all
  // points on one side.
  std::vector<Facet> facets;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  const std::size_t v = vertices.size();
  while (true) {
    std::vector<std::vector<Rational>> rows;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rational> row(n);
      for (std::size_t c = 0; c < n; ++c) row[c] = Rational(checked::sub(vertices[idx[r]][c], vertices[idx[0]][c]));
      rows.push_back(std::move(row));
    }
    std::vector<std::int64_t> normal(n);
    bool nonzero = false;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::vector<Rational>> minor;
      for (const auto& row : rows) {
        std::vector<Rational> mr;
        for (std::size_t c = 0; c < n; ++c)
          if (c != k) mr.push_back(row[c]);
        minor.push_back(std::move(mr));
      }
      Rational d = determinant(std::move(minor));
      if (k % 2) d = -d;
      normal[k] = static_cast<std::int64_t>(boost::multiprecision::numerator(d));
      nonzero = nonzero || normal[k] != 0;
    }
    if (nonzero) {
      LatticePoint nrm = primitive(LatticePoint(normal));
      const std::int64_t off = dot(nrm, vertices[idx[0]]);
      bool below = false, above = false;
      for (const auto& p : pts) {
        const std::int64_t s = dot(nrm, p);
        below = below || s < off;
        above = above || s > off;
      }
      if (!(below && above)) {
        if (above) {
          for (auto& c : normal) c = -c;
          nrm = primitive(LatticePoint(normal));
        }
        Facet f{nrm, dot(nrm, vertices[idx[0]])};
        if (std::find(facets.begin(), facets.end(), f) == facets.end()) facets.push_back(f);
      }
    }
    // next n-subset
    std::size_t i = n;
    while (i-- > 0 && idx[i] == v - n + i) {
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++idx[i];
    for (std::size_t j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return NewtonPolytope(n, std::move(vertices), std::move(facets));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace

std::size_t affine_rank(std::span<const LatticePoint> points) {
  if (points.empty()) return 0;
  const std::size_t n = points[0].dim();
  std::vector<std::vector<Rational>> m;
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<Rational> row(n);
    for (std::size_t c = 0; c < n; ++c) row[c] = Rational(checked::sub(points[i][c], points[0][c]));
    m.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c].is_zero()) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

bool in_convex_hull(const LatticePoint& p, std::span<const LatticePoint> points) {
  if (points.empty()) return false;
  const std::size_t n = p.dim();
  LinearProgram<Rational> lp(points.size());
  lp.add_constraint(std::vector<Rational>(points.size(), Rational(1)), RowSense::Equal, Rational(1));
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Rational> row(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) row[i] = Rational(points[i][c]);
    lp.add_constraint(std::move(row), RowSense::Equal, Rational(p[c]));
  }
  return lp.maximize().status == LpStatus::Optimal;
}

NewtonPolytope convex_hull(std::span<const LatticePoint> points) {
  if (points.empty()) throw std::invalid_argument("convex_hull: empty point set");
  const std::size_t n = points[0].dim();
  if (n == 0) throw std::invalid_argument("convex_hull: zero-dimensional points");
  for (const auto& p : points)
    if (p.dim() != n) throw std::invalid_argument("convex_hull: mixed dimensions");

  std::vector<LatticePoint> pts = sorted_unique(points);
  if (affine_rank(pts) < n)
    throw DegenerateError("Newton polytope is not full-dimensional (affine rank " + std::to_string(affine_rank(pts)) +
                          " < " + std::to_string(n) + ")");
  if (n == 1) {
    const LatticePoint lo = pts.front(), hi = pts.back();
    return NewtonPolytope(1, {lo, hi}, {{LatticePoint{-1}, -lo[0]}, {LatticePoint{1}, hi[0]}});
  }
  if (n == 2) return hull_plane(std::move(pts));
  return hull_general(pts, n);
}

NewtonPolytope newton_polytope(const LaurentPolynomial& f) {
  const auto support = f.support();
  return convex_hull(support);
}

std::vector<std::pair<LatticePoint, PointClass>> lattice_points(const NewtonPolytope& polytope) {
  if (polytope.dim() != 2) throw std::invalid_argument("lattice_points: only the plane is supported");
  std::int64_t ylo = polytope.vertices()[0][1], yhi = ylo;
  for (const auto& v : polytope.vertices()) {
    ylo = std::min(ylo, v[1]);
    yhi = std::max(yhi, v[1]);
  }
  std::vector<std::pair<LatticePoint, PointClass>> out;
  for (std::int64_t y = ylo; y <= yhi; ++y) {
    std::int64_t xlo = std::numeric_limits<std::int64_t>::min();
    std::int64_t xhi = std::numeric_limits<std::int64_t>::max();
    bool empty = false;
    for (const auto& f : polytope.facets()) {
      const std::int64_t a = f.normal[0];
      const std::int64_t rest = checked::sub(f.offset, checked::mul(f.normal[1], y));
      if (a > 0)
        xhi = std::min(xhi, floor_div(rest, a));
      else if (a < 0)
        xlo = std::max(xlo, ceil_div(rest, a));
      else if (rest < 0)
        empty = true;
    }
    if (empty) continue;
    for (std::int64_t x = xlo; x <= xhi; ++x) {
      LatticePoint p{x, y};
      out.emplace_back(p, polytope.classify(p));
    }
  }
  return out;
}

bool is_maximally_sparse(const LaurentPolynomial& f) {
  const auto support = f.support();
  if (affine_rank(support) == f.dim()) return newton_polytope(f).vertices().size() == f.size();
  for (std::size_t i = 0; i < support.size(); ++i) {
    std::vector<LatticePoint> others;
    for (std::size_t j = 0; j < support.size(); ++j)
      if (j != i) others.push_back(support[j]);
    if (in_convex_hull(support[i], others)) return false;
  }
  return true;
}

Regime classify_regime(const LaurentPolynomial& f) {
  const NewtonPolytope polytope = newton_polytope(f);
  if (polytope.vertices().size() == f.size()) return Regime::MaximallySparse;
  for (const auto& [alpha, a] : f.terms())
    if (polytope.classify(alpha) == PointClass::Interior) return Regime::InteriorSupported;
  return Regime::BoundarySupported;
}

}  // namespace amoeba
