#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "amoeba/laurent.hpp"
#include "amoeba/tropical.hpp"

namespace amoeba {

enum class QuadratureScheme { TensorGrid, MonteCarlo };

std::string to_string(QuadratureScheme s);

struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::TensorGrid;
  int nodes_per_angle = 256;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;

  static QuadratureSpec tensor_grid(int nodes_per_angle);
  static QuadratureSpec monte_carlo(std::size_t samples, std::uint64_t seed);
  /// Tensor grid with 256 nodes per angle for n <= 2, Monte Carlo with 1e5 samples otherwise.
  static QuadratureSpec default_for(std::size_t dim, std::uint64_t seed = 0);

  /// Throws std::invalid_argument unless nodes_per_angle >= 16 (grid) or samples >= 1e4 (Monte Carlo).
  void validate() const;
};

struct RonkinValue {
  double value;
  double std_error;        // zero for tensor grids
  std::size_t discarded;   // nodes where the reduced value vanished
  std::size_t nodes;
};

/// Nodes whose reduced value falls below this are dropped from the average.
inline constexpr double kSingularNode = 1e-300;
/// Largest tolerated fraction of dropped nodes.
inline constexpr double kDiscardBudget = 0.01;
inline constexpr double kGradientStep = 0.05;

/// Torus average of log|f(e^{x + i theta})|.
RonkinValue ronkin_estimate(const LaurentPolynomial& f, const Eigen::VectorXd& x, const QuadratureSpec& q);

/// Central differences of ronkin_estimate with step h.
Eigen::VectorXd ronkin_gradient(const LaurentPolynomial& f, const Eigen::VectorXd& x, const QuadratureSpec& q,
                                double h = kGradientStep);

/// Lattice point nearest to g (componentwise rounding) and its distance.
std::pair<LatticePoint, double> round_to_lattice(const Eigen::VectorXd& g);

struct ComponentSample {
  LatticePoint order;
  Eigen::VectorXd point;
};

/// c_alpha = N_f(x_alpha) - <alpha, x_alpha>, returned as the lifting nu = -c.
Lifting spine_constants(const LaurentPolynomial& f, std::span<const ComponentSample> components,
                        const QuadratureSpec& q);

struct BoundCheckRow {
  double t;
  double sup_gap;
  Eigen::VectorXd argsup;
  double max_std_error;
};

struct BoundCheckReport {
  std::vector<BoundCheckRow> rows;
  double max_gap;
  double min_gap;
  double ratio;  // max_gap / min_gap (1 when both vanish)
  double bound;  // log sum |xi_alpha|
  bool maximally_sparse;
  std::vector<std::string> warnings;
};

/// Sup over x_grid of |N_{f_t}(x) - F_t(x)| with
/// F_t(x) = max(<alpha,x> + nu(alpha) log t + log|xi_alpha|).
BoundCheckReport ft_bound_check(const LaurentPolynomial& f, const DegenerationWeights& weights,
                                std::span<const double> t_list, std::span<const Eigen::VectorXd> x_grid,
                                const QuadratureSpec& q);

/// Smallest torus average of log|G_c| found over the coefficient box
/// |c_beta| <= |xi_beta| (beta != alpha0) by sampling corners and interior
/// points. A randomized upper estimate of the minimum, seeded by q.seed.
/// Each average integrates the last angle exactly by Jensen's formula; the
/// outer angle adaptively for n = 2, and on a tensor grid for n >= 3
/// (q.nodes_per_angle, or 256 for Monte Carlo specs).
double phi_lower_bound(const LatticePoint& alpha0, const std::map<LatticePoint, Complex>& xi, int trials,
                       const QuadratureSpec& q);

struct DominanceTerm {
  LatticePoint alpha;
  double A;      // <alpha1 - alpha, x0>
  double B;      // nu(alpha1) - nu(alpha)
  double delta;  // <alpha1 - alpha, v>
  double s;      // max(0, -(A + B log t) / delta)
};

/// Per-term data behind dominance_threshold.
std::vector<DominanceTerm> dominance_terms(const Eigen::VectorXd& x0, const Eigen::VectorXd& v, const Lifting& lifting,
                                           double t, const LatticePoint& alpha1);

/// Smallest s0 >= 0 such that along x0 + s v, s > s0, the term alpha1 strictly
/// dominates max(<alpha, x> + nu(alpha) log t). Throws std::invalid_argument
/// unless alpha1 is the unique maximizer of <alpha, v>.
double dominance_threshold(const Eigen::VectorXd& x0, const Eigen::VectorXd& v, const Lifting& lifting, double t,
                           const LatticePoint& alpha1);

}  // namespace amoeba
