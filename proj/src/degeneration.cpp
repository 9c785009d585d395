#include "amoeba/degeneration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "amoeba/parallel.hpp"
#include "amoeba/polytope.hpp"

namespace amoeba {

void check_degeneration_parameter(double t) {
  if (!in_degeneration_range(t)) throw std::invalid_argument("t must lie in (0, 1/e]");
  if (-std::log(t) > kMaxDegenerationDepth * (1.0 + 1e-12))
    throw std::invalid_argument("t = e^{-k} with k > 10 is refused: fiber solving leaves double-precision range");
}

namespace {

void check_weights(const LaurentPolynomial& f, const DegenerationWeights& weights) {
  if (f.dim() != 2) throw std::invalid_argument("degeneration experiments need n = 2");
  if (weights.nu.size() != f.size()) throw std::invalid_argument("weights must be defined on exactly supp(f)");
  for (const auto& [alpha, a] : f.terms())
    if (!weights.nu.contains(alpha)) throw std::invalid_argument("missing weight for " + to_string(alpha));
}

void check_t_list(std::span<const double> t_list, bool strictly_below_inverse_e) {
  if (t_list.empty()) throw std::invalid_argument("empty t list");
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    check_degeneration_parameter(t_list[i]);
    if (strictly_below_inverse_e && !(t_list[i] < std::exp(-1.0)))
      throw std::invalid_argument("convergence sweeps need t < 1/e");
    if (i > 0 && !(t_list[i] < t_list[i - 1])) throw std::invalid_argument("t list must be strictly decreasing");
  }
}

}  // namespace

PointCloud2D rescaled_amoeba(const LaurentPolynomial& f, const DegenerationWeights& weights, double t,
                             const Box2D& window, const RasterOptions& options) {
  check_weights(f, weights);
  check_degeneration_parameter(t);
  window.validate();
  if (f.is_monomial()) return {};
  const double k = -std::log(t);
  const LaurentPolynomial ft = substitute_t(f, weights, t);
  const AmoebaRaster r = raster_2d(ft, window.scaled(k), options);
  PointCloud2D cloud;
  for (std::size_t p = 0; p < r.verdicts.size(); ++p)
    if (r.verdicts[p] == Verdict::InAmoeba) cloud.push_back(r.center(p) / k);
  return cloud;
}

double hausdorff(std::span<const Eigen::Vector2d> a, std::span<const Eigen::Vector2d> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff: empty point cloud");
  auto directed = [](std::span<const Eigen::Vector2d> from, std::span<const Eigen::Vector2d> to) {
    std::vector<double> nearest(from.size());
    parallel_for(from.size(), [&](std::size_t i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) best = std::min(best, (from[i] - q).squaredNorm());
      nearest[i] = best;
    });
    return std::sqrt(*std::max_element(nearest.begin(), nearest.end()));
  };
  return std::max(directed(a, b), directed(b, a));
}

PointCloud2D sample_complex(const PolyhedralComplex& complex, double spacing, double extent) {
  if (!(spacing > 0.0)) throw std::invalid_argument("sample_complex: spacing must be positive");
  if (!(extent >= 0.0)) throw std::invalid_argument("sample_complex: extent must be nonnegative");
  PointCloud2D out(complex.vertices.begin(), complex.vertices.end());
  for (const auto& [u, v] : complex.edges) {
    const Eigen::Vector2d a = complex.vertices.at(u), b = complex.vertices.at(v);
    const double len = (b - a).norm();
    const auto steps = static_cast<std::size_t>(std::ceil(len / spacing - 1e-9));
    for (std::size_t s = 1; s < steps; ++s) out.push_back(a + (b - a) * (static_cast<double>(s) / static_cast<double>(steps)));
  }
  for (const auto& ray : complex.rays) {
    const Eigen::Vector2d origin = complex.vertices.at(ray.vertex);
    const Eigen::Vector2d dir = ray.direction.cast().normalized();
    const auto count = static_cast<std::size_t>(std::floor(extent / spacing + 1e-9));
    for (std::size_t s = 1; s <= count; ++s) out.push_back(origin + dir * (spacing * static_cast<double>(s)));
  }
  return out;
}

Box2D vertex_window(const PolyhedralComplex& complex, double margin) {
  if (complex.vertices.empty()) throw std::invalid_argument("vertex_window: complex has no vertices");
  Eigen::Vector2d lo = complex.vertices.front(), hi = lo;
  for (const auto& v : complex.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return {lo.array() - margin, hi.array() + margin};
}

ConvergenceReport convergence_sweep(const LaurentPolynomial& f, const DegenerationWeights& weights,
                                    std::span<const double> t_list, const RasterOptions& options, double spacing) {
  check_weights(f, weights);
  if (f.is_monomial()) throw std::invalid_argument("convergence_sweep: the amoeba of a monomial family is empty");
  check_t_list(t_list, true);

  ConvergenceReport rep;
  rep.limit = corner_locus_2d(to_lifting(weights));
  rep.window = vertex_window(rep.limit, kWindowMargin);
  const double extent = (rep.window.max - rep.window.min).norm();
  PointCloud2D limit_cloud;
  for (const auto& p : sample_complex(rep.limit, spacing, extent))
    if ((p.array() >= rep.window.min.array()).all() && (p.array() <= rep.window.max.array()).all()) limit_cloud.push_back(p);

  rep.rows.resize(t_list.size());
  parallel_for(t_list.size(), [&](std::size_t i) {
    const double t = t_list[i];
    const PointCloud2D cloud = rescaled_amoeba(f, weights, t, rep.window, options);
    if (cloud.empty()) throw ComputationError("rescaled amoeba is empty on the window");
    rep.rows[i] = {t, -std::log(t), hausdorff(cloud, limit_cloud), cloud.size()};
  });

  double num = 0.0, den = 0.0;
  for (const auto& r : rep.rows) {
    num += r.distance / r.k;
    den += 1.0 / (r.k * r.k);
  }
  rep.fit_c = num / den;
  rep.non_increasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    rep.non_increasing = rep.non_increasing && rep.rows[i].distance <= 1.1 * rep.rows[i - 1].distance;
  return rep;
}

SubdivisionSweepReport subdivision_stability_sweep(const LaurentPolynomial& f, const DegenerationWeights& weights,
                                                   std::span<const double> t_list, const RasterOptions& options,
                                                   const QuadratureSpec& q) {
  check_weights(f, weights);
  check_t_list(t_list, false);
  SubdivisionSweepReport rep;
  rep.limit = regular_subdivision(to_lifting(weights));
  rep.rows.resize(t_list.size());
  parallel_for(t_list.size(), [&](std::size_t i) {
    const LaurentPolynomial ft = substitute_t(f, weights, t_list[i]);
    const AmoebaRaster raster = raster_2d(ft, default_box(ft), options);
    auto components = complement_components(raster);
    assign_orders(ft, components, q);
    std::vector<ComponentSample> samples;
    for (const auto& c : components) samples.push_back({*c.order, c.witness_point});
    SubdivisionRow row{t_list[i], spine_constants(ft, samples, q), {}, false};
    row.subdivision = regular_subdivision(row.spine);
    row.matches = row.subdivision == rep.limit;
    rep.rows[i] = std::move(row);
  });
  for (std::size_t i = rep.rows.size(); i-- > 0;) {
    if (!rep.rows[i].matches) break;
    rep.stable_from = i;
  }
  return rep;
}

SolidnessSweepReport solidness_sweep(const LaurentPolynomial& f, const DegenerationWeights& weights,
                                     std::span<const double> t_list, const RasterOptions& options,
                                     const QuadratureSpec& q) {
  check_weights(f, weights);
  check_t_list(t_list, false);
  SolidnessSweepReport rep;
  if (!is_maximally_sparse(f)) rep.warnings.push_back("polynomial is not maximally sparse; solidness is not predicted");
  rep.rows.resize(t_list.size());
  parallel_for(t_list.size(), [&](std::size_t i) {
    const LaurentPolynomial ft = substitute_t(f, weights, t_list[i]);
    const SolidityReport s = is_solid(ft, default_box(ft), options, q);
    rep.rows[i] = {t_list[i], s.solid, s.component_count, s.vertex_count};
  });
  return rep;
}

}  // namespace amoeba
