#include "amoeba/tropical.hpp"

#include <algorithm>
#include <set>

#include "amoeba/polytope.hpp"

namespace amoeba {

namespace {

/// Sign of v, with values below kTieTolerance * magnitude treated as zero
/// for floating scalars. Rational scalars compare exactly.
int tolerant_sign(double v, double magnitude) {
  if (std::abs(v) <= kTieTolerance * std::max(1.0, magnitude)) return 0;
  return v > 0 ? 1 : -1;
}

int tolerant_sign(const Rational& v, double) { return v.sign(); }

double magnitude(double v) { return std::abs(v); }
double magnitude(const Rational& v) { return std::abs(v.convert_to<double>()); }

template <typename Scalar>
Scalar from_int(std::int64_t v) {
  return Scalar(v);
}

template <typename Scalar>
double max_height(const BasicLifting<Scalar>& lifting) {
  double m = 0.0;
  for (const auto& [alpha, h] : lifting.heights) m = std::max(m, magnitude(h));
  return m;
}

template <typename Scalar>
void require_plane(const BasicLifting<Scalar>& lifting) {
  if (lifting.heights.empty()) throw std::invalid_argument("empty lifting");
  if (lifting.dim() != 2) throw std::invalid_argument("only planar liftings are supported here");
  const auto pts = lifting.points();
  if (affine_rank(pts) < 2) throw DegenerateError("lifting support is not full-dimensional");
}

std::vector<LatticePoint> canonical_cell(std::vector<LatticePoint> pts) {
  // Vertices of conv(pts), counterclockwise from the smallest one.
  return convex_hull(pts).vertices();
}

}  // namespace

std::vector<Subdivision::Edge> Subdivision::interior_edges() const {
  std::map<Edge, int> count;
  for (const auto& cell : cells)
    for (std::size_t i = 0; i < cell.size(); ++i) {
      const auto& a = cell[i];
      const auto& b = cell[(i + 1) % cell.size()];
      ++count[std::minmax(a, b)];
    }
  std::vector<Edge> out;
  for (const auto& [e, c] : count)
    if (c >= 2) out.push_back(e);
  return out;
}

std::vector<Subdivision::Edge> Subdivision::boundary_edges() const {
  std::map<Edge, int> count;
  for (const auto& cell : cells)
    for (std::size_t i = 0; i < cell.size(); ++i) {
      const auto& a = cell[i];
      const auto& b = cell[(i + 1) % cell.size()];
      ++count[std::minmax(a, b)];
    }
  std::vector<Edge> out;
  for (const auto& [e, c] : count)
    if (c == 1) out.push_back(e);
  return out;
}

template <typename Scalar>
TropicalValue trop_eval(const BasicLifting<Scalar>& lifting, const Eigen::VectorXd& x) {
  if (lifting.heights.empty()) throw std::invalid_argument("trop_eval: empty lifting");
  if (static_cast<std::size_t>(x.size()) != lifting.dim()) throw std::invalid_argument("trop_eval: dimension mismatch");
  if constexpr (ScalarTraits<Scalar>::exact) {
    // Doubles are exact rationals, so ties are decided without tolerance.
    std::vector<std::pair<LatticePoint, Scalar>> vals;
    for (const auto& [alpha, h] : lifting.heights) {
      Scalar v = -h;
      for (std::size_t j = 0; j < alpha.dim(); ++j) v += Scalar(alpha[j]) * Scalar(x[static_cast<Eigen::Index>(j)]);
      vals.emplace_back(alpha, v);
    }
    Scalar best = vals.front().second;
    for (const auto& [a, v] : vals) best = std::max(best, v);
    TropicalValue out{best.template convert_to<double>(), {}};
    for (const auto& [a, v] : vals)
      if (v == best) out.argmax.push_back(a);
    return out;
  } else {
    std::vector<std::pair<LatticePoint, double>> vals;
    for (const auto& [alpha, h] : lifting.heights) vals.emplace_back(alpha, alpha.dot(x) - h);
    double best = vals.front().second;
    for (const auto& [a, v] : vals) best = std::max(best, v);
    TropicalValue out{best, {}};
    const double tol = kTieTolerance * std::max(1.0, std::abs(best));
    for (const auto& [a, v] : vals)
      if (best - v <= tol) out.argmax.push_back(a);
    return out;
  }
}

template <typename Scalar>
Subdivision regular_subdivision(const BasicLifting<Scalar>& lifting) {
  require_plane(lifting);
  std::vector<LatticePoint> pts;
  std::vector<Scalar> h;
  for (const auto& [alpha, height] : lifting.heights) {
    pts.push_back(alpha);
    h.push_back(height);
  }
  const std::size_t m = pts.size();
  std::set<std::vector<std::size_t>> faces;

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        const std::int64_t dxj = checked::sub(pts[j][0], pts[i][0]), dyj = checked::sub(pts[j][1], pts[i][1]);
        const std::int64_t dxk = checked::sub(pts[k][0], pts[i][0]), dyk = checked::sub(pts[k][1], pts[i][1]);
        const std::int64_t det = checked::sub(checked::mul(dxj, dyk), checked::mul(dyj, dxk));
        if (det == 0) continue;
        bool known = false;
        for (const auto& f : faces) {
          if (std::binary_search(f.begin(), f.end(), i) && std::binary_search(f.begin(), f.end(), j) &&
              std::binary_search(f.begin(), f.end(), k)) {
            known = true;
            break;
          }
        }
        if (known) continue;

        // Plane h = h_i + a dx + b dy, scaled by det to stay in the scalar field.
        const Scalar dhj = h[j] - h[i], dhk = h[k] - h[i];
        const Scalar a_det = dhj * from_int<Scalar>(dyk) - dhk * from_int<Scalar>(dyj);
        const Scalar b_det = dhk * from_int<Scalar>(dxj) - dhj * from_int<Scalar>(dxk);
        const Scalar det_s = from_int<Scalar>(det);
        const int det_sign = det > 0 ? 1 : -1;

        std::vector<std::size_t> on_face;
        bool lower = true;
        for (std::size_t q = 0; q < m && lower; ++q) {
          const std::int64_t dx = checked::sub(pts[q][0], pts[i][0]), dy = checked::sub(pts[q][1], pts[i][1]);
          const Scalar dh = h[q] - h[i];
          const Scalar r = det_s * dh - a_det * from_int<Scalar>(dx) - b_det * from_int<Scalar>(dy);
          const double mag = magnitude(det_s * dh) + magnitude(a_det) * std::abs(static_cast<double>(dx)) +
                             magnitude(b_det) * std::abs(static_cast<double>(dy));
          const int s = tolerant_sign(r, mag) * det_sign;
          if (s < 0) lower = false;
          if (s == 0) on_face.push_back(q);
        }
        if (lower) faces.insert(std::move(on_face));
      }

  Subdivision sub;
  std::set<LatticePoint> verts;
  for (const auto& f : faces) {
    std::vector<LatticePoint> fp;
    for (std::size_t q : f) fp.push_back(pts[q]);
    auto cell = canonical_cell(std::move(fp));
    verts.insert(cell.begin(), cell.end());
    sub.cells.push_back(std::move(cell));
  }
  std::sort(sub.cells.begin(), sub.cells.end());
  sub.cells.erase(std::unique(sub.cells.begin(), sub.cells.end()), sub.cells.end());
  sub.vertex_set.assign(verts.begin(), verts.end());
  return sub;
}

template <typename Scalar>
bool is_subdivision_vertex(const BasicLifting<Scalar>& lifting, const LatticePoint& alpha) {
  auto it = lifting.heights.find(alpha);
  if (it == lifting.heights.end()) throw std::invalid_argument("is_subdivision_vertex: point not in lifting");
  const std::size_t n = alpha.dim();
  const Scalar& nu_alpha = it->second;

  // Variables: x+ (n), x- (n), s+, s-. Maximize s subject to
  // <beta - alpha, x> + s <= nu(beta) - nu(alpha) for every other beta.
  const std::size_t nv = 2 * n + 2;
  LinearProgram<Scalar> lp(nv);
  for (const auto& [beta, nu_beta] : lifting.heights) {
    if (beta == alpha) continue;
    std::vector<Scalar> row(nv, Scalar(0));
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar d(checked::sub(beta[j], alpha[j]));
      row[j] = d;
      row[n + j] = -d;
    }
    row[2 * n] = Scalar(1);
    row[2 * n + 1] = Scalar(-1);
    lp.add_constraint(std::move(row), RowSense::LessEqual, nu_beta - nu_alpha);
  }
  std::vector<Scalar> cap(nv, Scalar(0));
  cap[2 * n] = Scalar(1);
  cap[2 * n + 1] = Scalar(-1);
  lp.add_constraint(cap, RowSense::LessEqual, Scalar(1));
  lp.set_objective(cap);
  const auto res = lp.maximize();
  if (res.status != LpStatus::Optimal) throw ComputationError("vertex LP did not reach an optimum");
  if constexpr (ScalarTraits<Scalar>::exact)
    return res.objective.sign() > 0;
  else
    return res.objective > kTieTolerance * (1.0 + max_height(lifting));
}

template <typename Scalar>
std::optional<RedundancyCertificate<Scalar>> redundancy_criterion(const BasicLifting<Scalar>& lifting,
                                                                  const LatticePoint& alpha) {
  auto it = lifting.heights.find(alpha);
  if (it == lifting.heights.end()) throw std::invalid_argument("redundancy_criterion: point not in lifting");
  const std::size_t n = alpha.dim();
  std::vector<LatticePoint> others;
  std::vector<Scalar> nu;
  for (const auto& [beta, h] : lifting.heights) {
    if (beta == alpha) continue;
    others.push_back(beta);
    nu.push_back(h);
  }
  if (others.empty()) return std::nullopt;

  // lambda >= 0, sum lambda = 1, sum lambda beta = alpha; minimize sum lambda nu.
  LinearProgram<Scalar> lp(others.size());
  lp.add_constraint(std::vector<Scalar>(others.size(), Scalar(1)), RowSense::Equal, Scalar(1));
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Scalar> row(others.size());
    for (std::size_t i = 0; i < others.size(); ++i) row[i] = Scalar(others[i][c]);
    lp.add_constraint(std::move(row), RowSense::Equal, Scalar(alpha[c]));
  }
  std::vector<Scalar> obj(others.size());
  for (std::size_t i = 0; i < others.size(); ++i) obj[i] = -nu[i];
  lp.set_objective(obj);
  const auto res = lp.maximize();
  if (res.status != LpStatus::Optimal) return std::nullopt;

  const Scalar combination = -res.objective;
  const Scalar gap = it->second - combination;
  const int s = tolerant_sign(gap, 1.0 + max_height(lifting));
  if (s < 0) return std::nullopt;

  RedundancyCertificate<Scalar> cert{{}, combination, s > 0};
  for (std::size_t i = 0; i < others.size(); ++i)
    if (ScalarTraits<Scalar>::is_positive(res.x[i])) cert.weights.emplace_back(others[i], res.x[i]);
  return cert;
}

template <typename Scalar>
PolyhedralComplex corner_locus_2d(const BasicLifting<Scalar>& lifting) {
  const Subdivision sub = regular_subdivision(lifting);
  PolyhedralComplex out;

  for (std::size_t ci = 0; ci < sub.cells.size(); ++ci) {
    const auto& cell = sub.cells[ci];
    const LatticePoint &v0 = cell[0], &v1 = cell[1], &v2 = cell[2];
    // <v1 - v0, x> = nu1 - nu0 and <v2 - v0, x> = nu2 - nu0, by Cramer's rule.
    const Scalar a11(checked::sub(v1[0], v0[0])), a12(checked::sub(v1[1], v0[1]));
    const Scalar a21(checked::sub(v2[0], v0[0])), a22(checked::sub(v2[1], v0[1]));
    const Scalar r1 = lifting.heights.at(v1) - lifting.heights.at(v0);
    const Scalar r2 = lifting.heights.at(v2) - lifting.heights.at(v0);
    const Scalar det = a11 * a22 - a12 * a21;
    const Scalar x = (r1 * a22 - a12 * r2) / det;
    const Scalar y = (a11 * r2 - r1 * a21) / det;
    out.vertices.emplace_back(ScalarTraits<Scalar>::to_double(x), ScalarTraits<Scalar>::to_double(y));
    out.vertex_cell.push_back(ci);
  }

  struct Incidence {
    std::size_t cell;
    LatticePoint outward;
  };
  std::map<Subdivision::Edge, std::vector<Incidence>> incidence;
  for (std::size_t ci = 0; ci < sub.cells.size(); ++ci) {
    const auto& cell = sub.cells[ci];
    for (std::size_t i = 0; i < cell.size(); ++i) {
      const LatticePoint& a = cell[i];
      const LatticePoint& b = cell[(i + 1) % cell.size()];
      LatticePoint normal = primitive(LatticePoint{checked::sub(b[1], a[1]), checked::sub(a[0], b[0])});
      incidence[std::minmax(a, b)].push_back({ci, normal});
    }
  }
  for (const auto& [edge, inc] : incidence) {
    if (inc.size() == 2)
      out.edges.emplace_back(inc[0].cell, inc[1].cell);
    else
      out.rays.push_back({inc[0].cell, inc[0].outward});
  }
  return out;
}

Lifting coefficient_lifting(const LaurentPolynomial& f) {
  Lifting l;
  for (const auto& [alpha, a] : f.terms()) l.heights[alpha] = -std::log(std::abs(a));
  return l;
}

Lifting to_lifting(const DegenerationWeights& weights) {
  Lifting l;
  l.heights = weights.nu;
  return l;
}

Lifting scaled(const Lifting& lifting, double s) {
  Lifting l;
  for (const auto& [alpha, h] : lifting.heights) l.heights[alpha] = s * h;
  return l;
}

#define AMOEBA_INSTANTIATE_TROPICAL(S)                                                                  \
  template TropicalValue trop_eval<S>(const BasicLifting<S>&, const Eigen::VectorXd&);                 \
  template Subdivision regular_subdivision<S>(const BasicLifting<S>&);                                 \
  template bool is_subdivision_vertex<S>(const BasicLifting<S>&, const LatticePoint&);                 \
  template std::optional<RedundancyCertificate<S>> redundancy_criterion<S>(const BasicLifting<S>&,     \
                                                                           const LatticePoint&);       \
  template PolyhedralComplex corner_locus_2d<S>(const BasicLifting<S>&);

AMOEBA_INSTANTIATE_TROPICAL(double)
AMOEBA_INSTANTIATE_TROPICAL(Rational)

#undef AMOEBA_INSTANTIATE_TROPICAL

}  // namespace amoeba
