#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "amoeba/laurent.hpp"
#include "amoeba/ronkin.hpp"

namespace amoeba {

struct Box2D {
  Eigen::Vector2d min;
  Eigen::Vector2d max;

  /// Throws std::invalid_argument unless min < max componentwise and both are finite.
  void validate() const;
  Box2D scaled(double s) const { return {min * s, max * s}; }
};

enum class Verdict : std::uint8_t { InAmoeba, CertifiedComplement, UncertifiedComplement };

/// Pixel (i, j) covers column i along x1 and row j along x2; row 0 is at box.min.y().
struct AmoebaRaster {
  Box2D box;
  int width = 0;
  int height = 0;
  int fibers = 0;
  std::vector<Verdict> verdicts;
  std::vector<std::uint32_t> samples;
  /// Index into `support` of the dominating term for certified pixels, -1 otherwise.
  std::vector<std::int32_t> certificate;
  std::vector<LatticePoint> support;
  std::size_t fibers_solved = 0;
  std::size_t fibers_failed = 0;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * static_cast<std::size_t>(width) + static_cast<std::size_t>(i); }
  double pixel_width() const { return (box.max.x() - box.min.x()) / width; }
  double pixel_height() const { return (box.max.y() - box.min.y()) / height; }
  Eigen::Vector2d center(int i, int j) const {
    return {box.min.x() + (i + 0.5) * pixel_width(), box.min.y() + (j + 0.5) * pixel_height()};
  }
  Eigen::Vector2d center(std::size_t idx) const {
    return center(static_cast<int>(idx % static_cast<std::size_t>(width)), static_cast<int>(idx / static_cast<std::size_t>(width)));
  }
  std::size_t count(Verdict v) const;
};

struct RasterOptions {
  int width = 512;
  int height = 512;
  int fibers = 64;
  /// Maximum number of angle bisections between consecutive fibers.
  int max_refine_depth = 10;
};

/// Spine-estimate bounding box (corner locus of nu = -log|a|) plus 2 log-units per side.
Box2D default_box(const LaurentPolynomial& f);

AmoebaRaster raster_2d(const LaurentPolynomial& f, const Box2D& box, const RasterOptions& options = {});

/// alpha0 with |a_alpha0| e^{<alpha0,x>} > sum of the other term moduli, if any.
std::optional<LatticePoint> lopsided_certificate(const LaurentPolynomial& f, const Eigen::Vector2d& x);

struct ComplementComponent {
  std::vector<std::size_t> pixels;  // ascending pixel indices
  bool bounded = false;
  std::size_t witness = 0;          // pixel farthest from the amoeba (smallest index on ties)
  int clearance = 0;                // chessboard distance from the witness to the nearest amoeba pixel
  Eigen::Vector2d witness_point = Eigen::Vector2d::Zero();
  std::optional<LatticePoint> order;
  double rounding_distance = 0.0;
};

inline constexpr std::size_t kMinComponentPixels = 4;
inline constexpr int kMinWitnessClearance = 3;
inline constexpr double kMaxRoundingDistance = 0.25;

/// 4-connected components of non-amoeba pixels with at least 4 pixels,
/// ordered by their smallest pixel index.
std::vector<ComplementComponent> complement_components(const AmoebaRaster& raster);

/// Order of each component: the rounded Ronkin gradient at its witness.
/// Throws ComputationError for thin components or ambiguous rounding.
void assign_orders(const LaurentPolynomial& f, std::vector<ComplementComponent>& components, const QuadratureSpec& q);

struct SolidityReport {
  Box2D box;
  RasterOptions options;
  std::size_t component_count = 0;
  std::size_t bounded_count = 0;
  std::size_t vertex_count = 0;
  bool solid = false;
  std::vector<ComplementComponent> components;
  std::vector<LatticePoint> vertices;
};

SolidityReport is_solid(const LaurentPolynomial& f, const Box2D& box, const RasterOptions& options,
                        const QuadratureSpec& q);
/// Also returns the raster the verdict was computed from.
SolidityReport is_solid(const LaurentPolynomial& f, const Box2D& box, const RasterOptions& options,
                        const QuadratureSpec& q, AmoebaRaster& raster_out);

}  // namespace amoeba
