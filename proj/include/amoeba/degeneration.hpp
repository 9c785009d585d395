#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "amoeba/laurent.hpp"
#include "amoeba/raster.hpp"
#include "amoeba/ronkin.hpp"
#include "amoeba/tropical.hpp"

namespace amoeba {

using PointCloud2D = std::vector<Eigen::Vector2d>;

/// Largest accepted k in t = e^{-k}.
inline constexpr double kMaxDegenerationDepth = 10.0;

/// Throws std::invalid_argument unless t lies in [e^{-10}, 1/e].
void check_degeneration_parameter(double t);

/// Centers of the amoeba pixels of f_t on a raster over (-log t) * window,
/// multiplied by -1 / log t. Empty for monomials.
PointCloud2D rescaled_amoeba(const LaurentPolynomial& f, const DegenerationWeights& weights, double t,
                             const Box2D& window, const RasterOptions& options = {});

/// Symmetric Hausdorff distance between two nonempty clouds (brute force).
double hausdorff(std::span<const Eigen::Vector2d> a, std::span<const Eigen::Vector2d> b);

/// Vertices once each, interior points of bounded edges at spacing at most
/// `spacing`, and points k * spacing (k >= 1) along each ray up to `extent`.
PointCloud2D sample_complex(const PolyhedralComplex& complex, double spacing, double extent);

/// Bounding box of the complex's vertices grown by `margin` on every side.
Box2D vertex_window(const PolyhedralComplex& complex, double margin);

inline constexpr double kWindowMargin = 3.0;

struct ConvergenceRow {
  double t;
  double k;  // -log t
  double distance;
  std::size_t cloud_size;
};

struct ConvergenceReport {
  PolyhedralComplex limit;
  Box2D window;
  std::vector<ConvergenceRow> rows;
  double fit_c;        // least-squares c in distance ~ c / k
  bool non_increasing; // each step within 10% slack
};

/// Hausdorff distance, on the window around the limit spine, between the
/// rescaled amoeba of f_t and the corner locus of nu, for each t.
ConvergenceReport convergence_sweep(const LaurentPolynomial& f, const DegenerationWeights& weights,
                                    std::span<const double> t_list, const RasterOptions& options = {},
                                    double spacing = 0.01);

struct SubdivisionRow {
  double t;
  Lifting spine;  // nu = -c over the observed orders
  Subdivision subdivision;
  bool matches;
};

struct SubdivisionSweepReport {
  Subdivision limit;
  std::vector<SubdivisionRow> rows;
  std::optional<std::size_t> stable_from;  // first index from which every row matches
};

SubdivisionSweepReport subdivision_stability_sweep(const LaurentPolynomial& f, const DegenerationWeights& weights,
                                                   std::span<const double> t_list, const RasterOptions& options,
                                                   const QuadratureSpec& q);

struct SolidnessRow {
  double t;
  bool solid;
  std::size_t component_count;
  std::size_t vertex_count;
};

struct SolidnessSweepReport {
  std::vector<SolidnessRow> rows;
  std::vector<std::string> warnings;
};

SolidnessSweepReport solidness_sweep(const LaurentPolynomial& f, const DegenerationWeights& weights,
                                     std::span<const double> t_list, const RasterOptions& options,
                                     const QuadratureSpec& q);

}  // namespace amoeba
