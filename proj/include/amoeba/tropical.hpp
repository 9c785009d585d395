#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "amoeba/laurent.hpp"
#include "amoeba/lattice.hpp"
#include "amoeba/lp.hpp"

namespace amoeba {

/// Heights nu(alpha) over a finite point set. The induced tropical polynomial
/// is F(x) = max_alpha (<alpha, x> - nu(alpha)); Ronkin constants enter as
/// nu = -c, and the degeneration at parameter t uses nu * (-log t).
template <typename Scalar>
struct BasicLifting {
  std::map<LatticePoint, Scalar> heights;

  std::size_t dim() const { return heights.empty() ? 0 : heights.begin()->first.dim(); }
  std::vector<LatticePoint> points() const {
    std::vector<LatticePoint> p;
    for (const auto& [alpha, h] : heights) p.push_back(alpha);
    return p;
  }
};

using Lifting = BasicLifting<double>;
using RationalLifting = BasicLifting<Rational>;

/// Relative tie tolerance for floating heights.
inline constexpr double kTieTolerance = 1e-9;

struct TropicalValue {
  double value;
  std::vector<LatticePoint> argmax;
};

/// Regular subdivision of the plane polytope. Cells list their vertices
/// counterclockwise from the lexicographically smallest; cells are sorted.
struct Subdivision {
  std::vector<std::vector<LatticePoint>> cells;
  std::vector<LatticePoint> vertex_set;

  using Edge = std::pair<LatticePoint, LatticePoint>;
  /// Edges shared by two cells / edges of a single cell, each as (min, max).
  std::vector<Edge> interior_edges() const;
  std::vector<Edge> boundary_edges() const;

  bool operator==(const Subdivision&) const = default;
};

struct Ray {
  std::size_t vertex;
  LatticePoint direction;  // primitive
};

/// Corner locus of a tropical polynomial in the plane.
struct PolyhedralComplex {
  std::vector<Eigen::Vector2d> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<Ray> rays;
  /// Index of the dual subdivision cell for each vertex.
  std::vector<std::size_t> vertex_cell;
};

template <typename Scalar>
struct RedundancyCertificate {
  std::vector<std::pair<LatticePoint, Scalar>> weights;  // (beta_i, lambda_i), lambda_i > 0
  Scalar combination_height;                             // sum lambda_i nu(beta_i)
  bool strict;                                           // nu(alpha) > combination_height
};

template <typename Scalar>
TropicalValue trop_eval(const BasicLifting<Scalar>& lifting, const Eigen::VectorXd& x);

template <typename Scalar>
Subdivision regular_subdivision(const BasicLifting<Scalar>& lifting);

template <typename Scalar>
bool is_subdivision_vertex(const BasicLifting<Scalar>& lifting, const LatticePoint& alpha);

template <typename Scalar>
std::optional<RedundancyCertificate<Scalar>> redundancy_criterion(const BasicLifting<Scalar>& lifting,
                                                                  const LatticePoint& alpha);

template <typename Scalar>
PolyhedralComplex corner_locus_2d(const BasicLifting<Scalar>& lifting);

/// nu(alpha) = -log|a_alpha|: the corner locus is the usual spine estimate.
Lifting coefficient_lifting(const LaurentPolynomial& f);
Lifting to_lifting(const DegenerationWeights& weights);

/// Lifting with every height scaled by s.
Lifting scaled(const Lifting& lifting, double s);

}  // namespace amoeba
