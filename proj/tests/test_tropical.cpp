#include <doctest.h>

#include <random>
#include <set>

#include "amoeba/polytope.hpp"
#include "amoeba/tropical.hpp"
#include "oracles.hpp"

using namespace amoeba;

namespace {

Lifting flat(const std::vector<LatticePoint>& pts) {
  Lifting l;
  for (const auto& p : pts) l.heights[p] = 0.0;
  return l;
}

RationalLifting triangle_with_center(int nu_center) {
  RationalLifting l;
  l.heights[{0, 0}] = 0;
  l.heights[{3, 0}] = 0;
  l.heights[{0, 3}] = 0;
  l.heights[{1, 1}] = nu_center;
  return l;
}

Lifting to_double(const RationalLifting& r) {
  Lifting l;
  for (const auto& [p, h] : r.heights) l.heights[p] = h.convert_to<double>();
  return l;
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(v.size());
  int i = 0;
  for (double e : v) x[i++] = e;
  return x;
}

}  // namespace

TEST_CASE("trop_eval examples") {
  const Lifting line = flat({{0, 0}, {1, 0}, {0, 1}});
  auto r = trop_eval(line, vec({3, 1}));
  CHECK(r.value == 3.0);
  CHECK(r.argmax == std::vector<LatticePoint>{{1, 0}});

  r = trop_eval(line, vec({0, 0}));
  CHECK(r.value == 0.0);
  CHECK(r.argmax.size() == 3);

  Lifting one;
  one.heights[{0}] = 0.0;
  one.heights[{1}] = -1.0;
  r = trop_eval(one, vec({0}));
  CHECK(r.value == 1.0);
  CHECK(r.argmax == std::vector<LatticePoint>{{1}});
}

TEST_CASE("trop_eval is convex") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5, 5), lam(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const Lifting l = to_double(oracle::random_rational_lifting(rng));
    const Eigen::VectorXd x = vec({u(rng), u(rng)}), y = vec({u(rng), u(rng)});
    const double s = lam(rng);
    const double lhs = trop_eval(l, (s * x + (1 - s) * y).eval()).value;
    const double rhs = s * trop_eval(l, x).value + (1 - s) * trop_eval(l, y).value;
    // Rounding of the affine pieces themselves is the only slack.
    CHECK(lhs <= rhs + 1e-12 * (1 + std::abs(rhs)));
  }
}

TEST_CASE("regular subdivision examples") {
  const Subdivision sq = regular_subdivision(flat({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  REQUIRE(sq.cells.size() == 1);
  CHECK(sq.cells[0].size() == 4);

  const Subdivision below = regular_subdivision(triangle_with_center(-1));
  CHECK(below.cells.size() == 3);
  CHECK(std::count(below.vertex_set.begin(), below.vertex_set.end(), LatticePoint{1, 1}) == 1);
  CHECK(below.interior_edges().size() == 3);
  CHECK(below.boundary_edges().size() == 3);

  const Subdivision above = regular_subdivision(triangle_with_center(1));
  CHECK(above.cells.size() == 1);
  CHECK(std::count(above.vertex_set.begin(), above.vertex_set.end(), LatticePoint{1, 1}) == 0);

  // Floating heights give the same answer as exact ones.
  CHECK(regular_subdivision(to_double(triangle_with_center(-1))) == below);

  Lifting degenerate = flat({{0, 0}, {1, 1}, {2, 2}});
  CHECK_THROWS_AS(regular_subdivision(degenerate), DegenerateError);
}

TEST_CASE("subdivision vertex examples") {
  CHECK(is_subdivision_vertex(flat({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), LatticePoint{1, 1}));
  CHECK_FALSE(is_subdivision_vertex(triangle_with_center(1), LatticePoint{1, 1}));
  CHECK(is_subdivision_vertex(triangle_with_center(-1), LatticePoint{1, 1}));
  // Equality-degenerate: lifted point on the flat face but not a vertex of it.
  CHECK_FALSE(is_subdivision_vertex(triangle_with_center(0), LatticePoint{1, 1}));
  CHECK(is_subdivision_vertex(to_double(triangle_with_center(-1)), LatticePoint{1, 1}));
  CHECK_FALSE(is_subdivision_vertex(to_double(triangle_with_center(1)), LatticePoint{1, 1}));
}

TEST_CASE("redundancy criterion examples") {
  const auto cert = redundancy_criterion(triangle_with_center(1), LatticePoint{1, 1});
  REQUIRE(cert.has_value());
  CHECK(cert->strict);
  CHECK(cert->combination_height == 0);
  REQUIRE(cert->weights.size() == 3);
  for (const auto& [beta, lambda] : cert->weights) CHECK(lambda == Rational(1, 3));

  CHECK_FALSE(redundancy_criterion(triangle_with_center(-1), LatticePoint{1, 1}).has_value());
  CHECK_FALSE(redundancy_criterion(triangle_with_center(1), LatticePoint{3, 0}).has_value());

  const auto tie = redundancy_criterion(triangle_with_center(0), LatticePoint{1, 1});
  REQUIRE(tie.has_value());
  CHECK_FALSE(tie->strict);
}

TEST_CASE("corner locus examples") {
  const PolyhedralComplex line = corner_locus_2d(flat({{0, 0}, {1, 0}, {0, 1}}));
  REQUIRE(line.vertices.size() == 1);
  CHECK(line.vertices[0].norm() < 1e-12);
  CHECK(line.edges.empty());
  std::set<LatticePoint> dirs;
  for (const auto& r : line.rays) dirs.insert(r.direction);
  CHECK(dirs == std::set<LatticePoint>{{-1, 0}, {0, -1}, {1, 1}});

  const PolyhedralComplex sq = corner_locus_2d(flat({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  CHECK(sq.vertices.size() == 1);
  CHECK(sq.edges.empty());
  CHECK(sq.rays.size() == 4);

  const PolyhedralComplex interior = corner_locus_2d(triangle_with_center(-1));
  CHECK(interior.vertices.size() == 3);
  CHECK(interior.edges.size() == 3);
  // Three boundary edges of the triangle, one ray each.
  CHECK(interior.rays.size() == 3);
}

TEST_CASE("corner locus vertices are ties of their cell markers") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const RationalLifting l = oracle::random_rational_lifting(rng);
    const Subdivision s = regular_subdivision(l);
    const PolyhedralComplex c = corner_locus_2d(l);
    REQUIRE(c.vertices.size() == s.cells.size());
    for (std::size_t v = 0; v < c.vertices.size(); ++v) {
      const auto r = trop_eval(to_double(l), Eigen::VectorXd(c.vertices[v]));
      std::set<LatticePoint> arg(r.argmax.begin(), r.argmax.end());
      for (const auto& p : s.cells[c.vertex_cell[v]]) CHECK(arg.count(p) == 1);
    }
    for (const auto& [a, b] : c.edges) {
      // Bounded edges are orthogonal to the shared subdivision edge.
      const Eigen::Vector2d d = c.vertices[b] - c.vertices[a];
      const auto& ca = s.cells[c.vertex_cell[a]];
      const auto& cb = s.cells[c.vertex_cell[b]];
      std::vector<LatticePoint> shared;
      for (const auto& p : ca)
        if (std::find(cb.begin(), cb.end(), p) != cb.end()) shared.push_back(p);
      REQUIRE(shared.size() == 2);
      const Eigen::Vector2d e = (shared[1] - shared[0]).cast();
      CHECK(std::abs(d.dot(e)) <= 1e-9 * (1 + d.norm() * e.norm()));
    }
  }
}

TEST_CASE("duality counts") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const RationalLifting l = oracle::random_rational_lifting(rng);
    const Subdivision s = regular_subdivision(l);
    const PolyhedralComplex c = corner_locus_2d(l);
    CHECK(c.vertices.size() == s.cells.size());
    CHECK(c.edges.size() == s.interior_edges().size());
    CHECK(c.rays.size() == s.boundary_edges().size());
  }
}

TEST_CASE("vertex test agrees with lower-face enumeration") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const RationalLifting l = oracle::random_rational_lifting(rng);
    const auto brute = oracle::lower_hull_vertices(l);
    const Subdivision s = regular_subdivision(l);
    CHECK(std::set<LatticePoint>(s.vertex_set.begin(), s.vertex_set.end()) == brute);
    for (const auto& p : l.points()) {
      const bool v = is_subdivision_vertex(l, p);
      CHECK(v == (brute.count(p) == 1));
      const auto cert = redundancy_criterion(l, p);
      if (cert && cert->strict) CHECK_FALSE(v);
      if (cert) {
        Rational sum = 0, comb = 0;
        LatticePoint mix{0, 0};
        for (const auto& [beta, lambda] : cert->weights) {
          CHECK(lambda > 0);
          CHECK(beta != p);
          sum += lambda;
          comb += lambda * l.heights.at(beta);
        }
        CHECK(sum == 1);
        CHECK(comb == cert->combination_height);
        CHECK(l.heights.at(p) >= comb);
      }
    }
  }
}

TEST_CASE("each subdivision vertex owns an open linearity domain") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const RationalLifting rl = oracle::random_rational_lifting(rng);
    const Lifting l = to_double(rl);
    const Subdivision s = regular_subdivision(rl);
    const PolyhedralComplex c = corner_locus_2d(rl);
    const auto pts = rl.points();
    const NewtonPolytope delta = convex_hull(pts);
    for (const auto& alpha : s.vertex_set) {
      // Barycenter of the dual vertices of cells containing alpha, pushed
      // along the outward normals of the facets through alpha.
      Eigen::Vector2d centre = Eigen::Vector2d::Zero();
      int count = 0;
      for (std::size_t v = 0; v < c.vertices.size(); ++v) {
        const auto& cell = s.cells[c.vertex_cell[v]];
        if (std::find(cell.begin(), cell.end(), alpha) == cell.end()) continue;
        centre += c.vertices[v];
        ++count;
      }
      REQUIRE(count > 0);
      centre /= count;
      Eigen::Vector2d push = Eigen::Vector2d::Zero();
      for (const auto& f : delta.facets())
        if (dot(f.normal, alpha) == f.offset) push += f.normal.cast();
      bool found = false;
      for (double scale : {0.0, 1.0, 4.0, 16.0, 64.0}) {
        const auto r = trop_eval(l, Eigen::VectorXd(centre + scale * push));
        if (r.argmax == std::vector<LatticePoint>{alpha}) found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("lifting helpers") {
  const auto f = parse_laurent("1 + 2*z1 + 0.5*z2", 2);
  const Lifting l = coefficient_lifting(f);
  CHECK(l.heights.at({0, 0}) == 0.0);
  CHECK(l.heights.at({1, 0}) == doctest::Approx(-std::log(2.0)));
  CHECK(scaled(l, 2.0).heights.at({0, 1}) == doctest::Approx(2 * std::log(2.0)));
  DegenerationWeights w;
  w.nu[{0, 0}] = 0;
  w.nu[{1, 0}] = 1;
  CHECK(to_lifting(w).heights.at({1, 0}) == 1.0);
}
