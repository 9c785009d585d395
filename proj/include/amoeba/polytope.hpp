#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "amoeba/laurent.hpp"
#include "amoeba/lattice.hpp"

namespace amoeba {

enum class PointClass { Vertex, BoundaryNonVertex, Interior, Outside };
enum class Regime { MaximallySparse, BoundarySupported, InteriorSupported };

std::string to_string(PointClass c);
std::string to_string(Regime r);

/// Supporting inequality <normal, p> <= offset with primitive outward normal.
struct Facet {
  LatticePoint normal;
  std::int64_t offset;

  bool operator==(const Facet&) const = default;
};

/// Full-dimensional lattice polytope. In the plane the vertices are listed
/// counterclockwise starting from the lexicographically smallest one.
class NewtonPolytope {
 public:
  NewtonPolytope(std::size_t dim, std::vector<LatticePoint> vertices, std::vector<Facet> facets);

  std::size_t dim() const { return dim_; }
  const std::vector<LatticePoint>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  bool is_vertex(const LatticePoint& p) const;
  PointClass classify(const LatticePoint& p) const;

 private:
  std::size_t dim_;
  std::vector<LatticePoint> vertices_;
  std::vector<Facet> facets_;
};

/// Exact hull; throws DegenerateError when the affine hull is not full-dimensional.
NewtonPolytope convex_hull(std::span<const LatticePoint> points);
NewtonPolytope newton_polytope(const LaurentPolynomial& f);

/// Plane only. Points are listed row by row (by second coordinate, then first).
std::vector<std::pair<LatticePoint, PointClass>> lattice_points(const NewtonPolytope& polytope);

/// Exact membership of p in conv(points) (linear-programming test).
bool in_convex_hull(const LatticePoint& p, std::span<const LatticePoint> points);

/// Dimension of the affine hull of the points (exact).
std::size_t affine_rank(std::span<const LatticePoint> points);

bool is_maximally_sparse(const LaurentPolynomial& f);
Regime classify_regime(const LaurentPolynomial& f);

}  // namespace amoeba
