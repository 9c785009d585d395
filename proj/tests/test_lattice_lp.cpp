#include <doctest.h>

#include <array>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

#include "amoeba/lattice.hpp"
#include "amoeba/lp.hpp"
#include "amoeba/parallel.hpp"

using namespace amoeba;

TEST_CASE("lattice point arithmetic") {
  const LatticePoint a{3, -2}, b{1, 5};
  CHECK(a + b == LatticePoint{4, 3});
  CHECK(a - b == LatticePoint{2, -7});
  CHECK(dot(a, b) == -7);
  CHECK(primitive(LatticePoint{4, -6}) == LatticePoint{2, -3});
  CHECK(primitive(LatticePoint{0, 0}) == LatticePoint{0, 0});
  CHECK(to_string(LatticePoint{1, -1}) == "(1,-1)");
  CHECK(LatticePoint{0, 5} < LatticePoint{1, 0});
}

TEST_CASE("checked arithmetic reports overflow") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  CHECK_THROWS_AS(checked::add(big, 1), std::overflow_error);
  CHECK_THROWS_AS(checked::mul(big, 2), std::overflow_error);
  CHECK(checked::sub(5, 7) == -2);
}

TEST_CASE("simplex solves small programs exactly") {
  // max x + y subject to x + 2y <= 4, 3x + y <= 6.
  LinearProgram<Rational> lp(2);
  lp.add_constraint({Rational(1), Rational(2)}, RowSense::LessEqual, Rational(4));
  lp.add_constraint({Rational(3), Rational(1)}, RowSense::LessEqual, Rational(6));
  lp.set_objective({Rational(1), Rational(1)});
  const auto r = lp.maximize();
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == Rational(14, 5));
  CHECK(r.x[0] == Rational(8, 5));
  CHECK(r.x[1] == Rational(6, 5));
}

TEST_CASE("simplex detects infeasible and unbounded programs") {
  LinearProgram<double> infeasible(1);
  infeasible.add_constraint({1.0}, RowSense::GreaterEqual, 2.0);
  infeasible.add_constraint({1.0}, RowSense::LessEqual, 1.0);
  CHECK(infeasible.maximize().status == LpStatus::Infeasible);

  LinearProgram<double> unbounded(2);
  unbounded.add_constraint({1.0, -1.0}, RowSense::LessEqual, 1.0);
  unbounded.set_objective({0.0, 1.0});
  CHECK(unbounded.maximize().status == LpStatus::Unbounded);
}

TEST_CASE("simplex handles equality rows and redundancy") {
  // x + y = 1 (twice), maximize 2x + y.
  LinearProgram<Rational> lp(2);
  lp.add_constraint({Rational(1), Rational(1)}, RowSense::Equal, Rational(1));
  lp.add_constraint({Rational(2), Rational(2)}, RowSense::Equal, Rational(2));
  lp.set_objective({Rational(2), Rational(1)});
  const auto r = lp.maximize();
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == Rational(2));
}

TEST_CASE("simplex agrees with vertex enumeration on random 2-variable programs") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5), rhs(1, 10);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::array<int, 3>> rows;
    for (int i = 0; i < 4; ++i) rows.push_back({coef(rng), coef(rng), rhs(rng)});
    rows.push_back({1, 1, 20});  // keeps the region bounded together with x, y >= 0
    const int c0 = coef(rng), c1 = coef(rng);
    LinearProgram<Rational> lp(2);
    for (const auto& r : rows) lp.add_constraint({Rational(r[0]), Rational(r[1])}, RowSense::LessEqual, Rational(r[2]));
    lp.set_objective({Rational(c0), Rational(c1)});
    const auto res = lp.maximize();
    REQUIRE(res.status == LpStatus::Optimal);

    // Oracle: best objective over all pairwise intersections of constraint lines (including axes).
    std::vector<std::array<int, 3>> lines = rows;
    lines.push_back({1, 0, 0});
    lines.push_back({0, 1, 0});
    std::optional<Rational> best;
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        const Rational det = Rational(lines[i][0] * lines[j][1] - lines[i][1] * lines[j][0]);
        if (det.is_zero()) continue;
        const Rational x = Rational(lines[i][2] * lines[j][1] - lines[i][1] * lines[j][2]) / det;
        const Rational y = Rational(lines[i][0] * lines[j][2] - lines[i][2] * lines[j][0]) / det;
        if (x < 0 || y < 0) continue;
        bool ok = true;
        for (const auto& r : rows) ok = ok && Rational(r[0]) * x + Rational(r[1]) * y <= Rational(r[2]);
        if (!ok) continue;
        const Rational v = Rational(c0) * x + Rational(c1) * y;
        if (!best || v > *best) best = v;
      }
    REQUIRE(best.has_value());
    CHECK(res.objective == *best);
  }
}

TEST_CASE("parallel_for visits every index once and rethrows the lowest failure") {
  set_max_threads(4);
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));

  try {
    parallel_for(100, [](std::size_t i) {
      if (i == 17 || i == 60) throw std::runtime_error("fail " + std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "fail 17");
  }
  set_max_threads(1);
}

TEST_CASE("pairwise_sum is exact on integers and independent of thread count") {
  std::vector<double> v(10000);
  std::iota(v.begin(), v.end(), 1.0);
  CHECK(pairwise_sum(v) == 50005000.0);
  CHECK(pairwise_sum(std::span<const double>()) == 0.0);
}
