#include "amoeba/ronkin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "amoeba/parallel.hpp"
#include "amoeba/polytope.hpp"
#include "amoeba/roots.hpp"

namespace amoeba {

std::string to_string(QuadratureScheme s) { return s == QuadratureScheme::TensorGrid ? "TensorGrid" : "MonteCarlo"; }

QuadratureSpec QuadratureSpec::tensor_grid(int nodes_per_angle) {
  QuadratureSpec q;
  q.scheme = QuadratureScheme::TensorGrid;
  q.nodes_per_angle = nodes_per_angle;
  return q;
}

QuadratureSpec QuadratureSpec::monte_carlo(std::size_t samples, std::uint64_t seed) {
  QuadratureSpec q;
  q.scheme = QuadratureScheme::MonteCarlo;
  q.samples = samples;
  q.seed = seed;
  return q;
}

QuadratureSpec QuadratureSpec::default_for(std::size_t dim, std::uint64_t seed) {
  QuadratureSpec q = dim <= 2 ? tensor_grid(256) : monte_carlo(100000, seed);
  q.seed = seed;
  return q;
}

void QuadratureSpec::validate() const {
  if (scheme == QuadratureScheme::TensorGrid && nodes_per_angle < 16)
    throw std::invalid_argument("tensor grid needs at least 16 nodes per angle");
  if (scheme == QuadratureScheme::MonteCarlo && samples < 10000)
    throw std::invalid_argument("Monte Carlo quadrature needs at least 10000 samples");
}

namespace {

constexpr std::size_t kBlock = 4096;

struct BlockStats {
  double sum = 0.0;  // pairwise sum of log|g| over kept nodes
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t kept = 0;
  std::size_t discarded = 0;
};

/// g(theta) = sum_alpha w_alpha e^{i <alpha, theta>} with |w| <= 1 (dominant term factored out).
struct ReducedIntegrand {
  std::vector<std::vector<std::int64_t>> exponents;
  std::vector<Complex> weights;
  double log_scale;
};

ReducedIntegrand reduce(const LaurentPolynomial& f, const Eigen::VectorXd& x) {
  ReducedIntegrand r;
  r.log_scale = dominant_log_magnitude(f, x);
  for (const auto& [alpha, a] : f.terms()) {
    r.exponents.push_back(alpha.coords());
    const double lm = std::log(std::abs(a)) + alpha.dot(x) - r.log_scale;
    r.weights.push_back(a / std::abs(a) * std::exp(lm));
  }
  return r;
}

BlockStats finish_block(std::vector<double>& logs, std::size_t discarded) {
  BlockStats b;
  b.kept = logs.size();
  b.discarded = discarded;
  b.sum = pairwise_sum(logs);
  if (b.kept > 0) {
    b.mean = b.sum / static_cast<double>(b.kept);
    std::vector<double> sq(logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i) sq[i] = (logs[i] - b.mean) * (logs[i] - b.mean);
    b.m2 = pairwise_sum(sq);
  }
  return b;
}

void accept(std::vector<double>& logs, std::size_t& discarded, Complex g) {
  const double m = std::abs(g);
  if (m < kSingularNode)
    ++discarded;
  else
    logs.push_back(std::log(m));
}

std::vector<BlockStats> tensor_grid_blocks(const ReducedIntegrand& r, std::size_t n, int nodes) {
  const std::int64_t N = nodes;
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) {
    total *= static_cast<std::size_t>(N);
    if (total > (std::size_t{1} << 31)) throw std::invalid_argument("tensor grid too large; use Monte Carlo");
  }
  std::vector<Complex> unit(static_cast<std::size_t>(N));
  for (std::int64_t m = 0; m < N; ++m)
    unit[static_cast<std::size_t>(m)] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(N));
  std::vector<std::vector<std::int64_t>> reduced_exp = r.exponents;
  for (auto& e : reduced_exp)
    for (auto& c : e) c = ((c % N) + N) % N;

  const std::size_t nblocks = (total + kBlock - 1) / kBlock;
  std::vector<BlockStats> blocks(nblocks);
  parallel_for(nblocks, [&](std::size_t b) {
    std::vector<double> logs;
    logs.reserve(kBlock);
    std::size_t discarded = 0;
    std::vector<std::int64_t> k(n);
    const std::size_t end = std::min(total, (b + 1) * kBlock);
    for (std::size_t node = b * kBlock; node < end; ++node) {
      std::size_t rest = node;
      for (std::size_t j = 0; j < n; ++j) {
        k[j] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(N));
        rest /= static_cast<std::size_t>(N);
      }
      Complex g = 0.0;
      for (std::size_t t = 0; t < reduced_exp.size(); ++t) {
        std::int64_t p = 0;
        for (std::size_t j = 0; j < n; ++j) p = (p + reduced_exp[t][j] * k[j]) % N;
        g += r.weights[t] * unit[static_cast<std::size_t>(p)];
      }
      accept(logs, discarded, g);
    }
    blocks[b] = finish_block(logs, discarded);
  });
  return blocks;
}

std::vector<BlockStats> monte_carlo_blocks(const ReducedIntegrand& r, std::size_t n, std::size_t samples,
                                           std::uint64_t seed) {
  const std::size_t nblocks = (samples + kBlock - 1) / kBlock;
  std::vector<BlockStats> blocks(nblocks);
  parallel_for(nblocks, [&](std::size_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 rng(seq);
    std::vector<double> logs;
    logs.reserve(kBlock);
    std::size_t discarded = 0;
    std::vector<double> theta(n);
    const std::size_t count = std::min(samples, (b + 1) * kBlock) - b * kBlock;
    for (std::size_t s = 0; s < count; ++s) {
      for (std::size_t j = 0; j < n; ++j)
        theta[j] = 2.0 * std::numbers::pi * static_cast<double>(rng() >> 11) * 0x1.0p-53;
      Complex g = 0.0;
      for (std::size_t t = 0; t < r.exponents.size(); ++t) {
        double phase = 0.0;
        for (std::size_t j = 0; j < n; ++j) phase += static_cast<double>(r.exponents[t][j]) * theta[j];
        g += r.weights[t] * std::polar(1.0, phase);
      }
      accept(logs, discarded, g);
    }
    blocks[b] = finish_block(logs, discarded);
  });
  return blocks;
}


/// Mean of log|g| over the last angle for fixed outer angles, by Jensen's
/// formula: log|c_top| + sum over roots of max(0, log|r|) for the slice
/// sum c_k w^k. A slice that vanishes identically yields log(kSingularNode).
double jensen_slice(const LaurentPolynomial& g, std::span<const double> theta) {
  const std::size_t n = g.dim();
  std::map<std::int64_t, Complex> coeff;
  for (const auto& [alpha, a] : g.terms()) {
    double phase = 0.0;
    for (std::size_t d = 0; d + 1 < n; ++d) phase += static_cast<double>(alpha[d]) * theta[d];
    coeff[alpha[n - 1]] += a * std::polar(1.0, phase);
  }
  std::erase_if(coeff, [](const auto& kv) { return std::abs(kv.second) < kSingularNode; });
  if (coeff.empty()) return std::log(kSingularNode);
  const std::int64_t lo = coeff.begin()->first, hi = coeff.rbegin()->first;
  double v = std::log(std::abs(coeff.rbegin()->second));
  if (hi > lo) {
    ScaledCoefficients c(static_cast<std::size_t>(hi - lo) + 1, FactoredValue{0.0, Complex(0.0)});
    for (const auto& [k, a] : coeff) c[static_cast<std::size_t>(k - lo)] = FactoredValue{0.0, a};
    for (const auto& r : polynomial_roots(c)) v += std::max(0.0, r.log_abs);
  }
  return v;
}

/// Torus average of log|g| at x = 0 with the last angle integrated exactly.
/// The outer angle is integrated adaptively in two variables (narrow wells of
/// the slice mean defeat fixed grids); higher dimensions use a tensor grid.
double jensen_torus_mean(const LaurentPolynomial& g, int nodes_per_angle) {
  const std::size_t n = g.dim();
  if (n == 1) return jensen_slice(g, {});
  if (n == 2) {
    auto slice = [&g](double t) { return jensen_slice(g, std::span<const double>(&t, 1)); };
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(slice, 0.0, 2.0 * std::numbers::pi, 20, 1e-10);
    return integral / (2.0 * std::numbers::pi);
  }
  const std::size_t outer_dim = n - 1;
  const auto nodes = static_cast<std::size_t>(nodes_per_angle);
  std::size_t total = 1;
  for (std::size_t d = 0; d < outer_dim; ++d) total *= nodes;
  std::vector<double> values(total);
  std::vector<double> theta(outer_dim);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t d = 0; d < outer_dim; ++d) {
      theta[d] = 2.0 * std::numbers::pi * static_cast<double>(rest % nodes) / static_cast<double>(nodes);
      rest /= nodes;
    }
    values[idx] = jensen_slice(g, theta);
  }
  return pairwise_sum(values) / static_cast<double>(total);
}

}  // namespace

RonkinValue ronkin_estimate(const LaurentPolynomial& f, const Eigen::VectorXd& x, const QuadratureSpec& q) {
  if (static_cast<std::size_t>(x.size()) != f.dim()) throw std::invalid_argument("ronkin_estimate: dimension mismatch");
  q.validate();
  const ReducedIntegrand r = reduce(f, x);
  if (f.is_monomial()) {
    const std::size_t nodes = q.scheme == QuadratureScheme::TensorGrid ? 0 : q.samples;
    return {r.log_scale, 0.0, 0, nodes};
  }

  const auto blocks = q.scheme == QuadratureScheme::TensorGrid ? tensor_grid_blocks(r, f.dim(), q.nodes_per_angle)
                                                               : monte_carlo_blocks(r, f.dim(), q.samples, q.seed);
  std::size_t kept = 0, discarded = 0;
  std::vector<double> sums;
  for (const auto& b : blocks) {
    kept += b.kept;
    discarded += b.discarded;
    sums.push_back(b.sum);
  }
  const std::size_t total = kept + discarded;
  if (static_cast<double>(discarded) > kDiscardBudget * static_cast<double>(total))
    throw ComputationError("Ronkin quadrature discarded " + std::to_string(discarded) + " of " + std::to_string(total) +
                           " nodes; the evaluation point is too close to the amoeba for this resolution");
  if (kept == 0) throw ComputationError("Ronkin quadrature kept no nodes");
  const double mean = pairwise_sum(sums) / static_cast<double>(kept);

  double std_error = 0.0;
  if (q.scheme == QuadratureScheme::MonteCarlo && kept > 1) {
    // Chan's parallel merge of per-block (count, mean, M2), in block order.
    double n_acc = 0.0, mean_acc = 0.0, m2_acc = 0.0;
    for (const auto& b : blocks) {
      if (b.kept == 0) continue;
      const double nb = static_cast<double>(b.kept);
      const double delta = b.mean - mean_acc;
      const double n_new = n_acc + nb;
      mean_acc += delta * nb / n_new;
      m2_acc += b.m2 + delta * delta * n_acc * nb / n_new;
      n_acc = n_new;
    }
    std_error = std::sqrt(m2_acc / (n_acc - 1.0) / n_acc);
  }
  return {r.log_scale + mean, std_error, discarded, total};
}

Eigen::VectorXd ronkin_gradient(const LaurentPolynomial& f, const Eigen::VectorXd& x, const QuadratureSpec& q,
                                double h) {
  if (!(h > 0.0)) throw std::invalid_argument("ronkin_gradient: step must be positive");
  if (static_cast<std::size_t>(x.size()) != f.dim()) throw std::invalid_argument("ronkin_gradient: dimension mismatch");
  Eigen::VectorXd g(x.size());
  if (f.is_monomial()) {
    // The Ronkin function of a monomial is affine with slope equal to its exponent.
    return f.terms().begin()->first.cast();
  }
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Eigen::VectorXd xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    g[j] = (ronkin_estimate(f, xp, q).value - ronkin_estimate(f, xm, q).value) / (2.0 * h);
  }
  return g;
}

std::pair<LatticePoint, double> round_to_lattice(const Eigen::VectorXd& g) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(g.size()));
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    if (!std::isfinite(g[j])) throw ComputationError("non-finite gradient");
    c[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(std::llround(g[j]));
  }
  LatticePoint p(c);
  return {p, (g - p.cast()).norm()};
}

Lifting spine_constants(const LaurentPolynomial& f, std::span<const ComponentSample> components,
                        const QuadratureSpec& q) {
  std::vector<double> values(components.size());
  parallel_for(components.size(), [&](std::size_t i) {
    const auto& c = components[i];
    if (c.order.dim() != f.dim() || static_cast<std::size_t>(c.point.size()) != f.dim())
      throw std::invalid_argument("spine_constants: dimension mismatch");
    values[i] = ronkin_estimate(f, c.point, q).value - c.order.dot(c.point);
  });
  Lifting out;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!out.heights.emplace(components[i].order, -values[i]).second)
      throw std::invalid_argument("spine_constants: repeated order " + to_string(components[i].order));
  }
  return out;
}

BoundCheckReport ft_bound_check(const LaurentPolynomial& f, const DegenerationWeights& weights,
                                std::span<const double> t_list, std::span<const Eigen::VectorXd> x_grid,
                                const QuadratureSpec& q) {
  if (t_list.empty() || x_grid.empty()) throw std::invalid_argument("ft_bound_check: empty t list or grid");
  BoundCheckReport report{};
  report.maximally_sparse = is_maximally_sparse(f);
  if (!report.maximally_sparse)
    report.warnings.push_back("polynomial is not maximally sparse; the uniform bound is not predicted");

  double xi_sum = 0.0;
  for (const auto& [alpha, a] : f.terms()) xi_sum += std::abs(a) * std::exp(weights.nu.at(alpha));
  report.bound = std::log(xi_sum);

  for (double t : t_list) {
    const LaurentPolynomial ft = substitute_t(f, weights, t);
    std::vector<double> gap(x_grid.size()), err(x_grid.size());
    parallel_for(x_grid.size(), [&](std::size_t i) {
      const RonkinValue n = ronkin_estimate(ft, x_grid[i], q);
      // log|coefficient of f_t| = nu log t + log|xi|.
      gap[i] = std::abs(n.value - dominant_log_magnitude(ft, x_grid[i]));
      err[i] = n.std_error;
    });
    const auto it = std::max_element(gap.begin(), gap.end());
    const std::size_t k = static_cast<std::size_t>(it - gap.begin());
    report.rows.push_back({t, *it, x_grid[k], *std::max_element(err.begin(), err.end())});
  }
  report.max_gap = report.rows.front().sup_gap;
  report.min_gap = report.rows.front().sup_gap;
  for (const auto& r : report.rows) {
    report.max_gap = std::max(report.max_gap, r.sup_gap);
    report.min_gap = std::min(report.min_gap, r.sup_gap);
  }
  if (report.max_gap == 0.0)
    report.ratio = 1.0;
  else
    report.ratio = report.min_gap > 0.0 ? report.max_gap / report.min_gap : std::numeric_limits<double>::infinity();
  return report;
}

double phi_lower_bound(const LatticePoint& alpha0, const std::map<LatticePoint, Complex>& xi, int trials,
                       const QuadratureSpec& q) {
  auto it = xi.find(alpha0);
  if (it == xi.end() || std::abs(it->second) == 0.0) throw std::invalid_argument("phi_lower_bound: xi(alpha0) must be nonzero");
  if (trials < 0) throw std::invalid_argument("phi_lower_bound: negative trial count");
  std::vector<std::pair<LatticePoint, double>> others;
  for (const auto& [beta, c] : xi)
    if (beta != alpha0 && std::abs(c) > 0.0) others.emplace_back(beta, std::abs(c));
  const double log_lead = std::log(std::abs(it->second));
  if (others.empty()) return log_lead;

  // Candidates: the origin of K, the all-real corner, then alternating random
  // corners (moduli 0 or |xi_beta|) and interior points, all with random phases.
  std::mt19937_64 rng(q.seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<std::vector<Complex>> candidates;
  candidates.emplace_back(others.size(), Complex(0.0));
  {
    std::vector<Complex> c;
    for (const auto& [beta, r] : others) c.emplace_back(r, 0.0);
    candidates.push_back(std::move(c));
  }
  for (int k = 0; k < trials; ++k) {
    std::vector<Complex> c;
    for (const auto& [beta, r] : others) {
      const double rho = k % 2 == 0 ? (uniform() < 0.5 ? 0.0 : r) : r * std::sqrt(uniform());
      c.push_back(std::polar(rho, 2.0 * std::numbers::pi * uniform()));
    }
    candidates.push_back(std::move(c));
  }

  const int nodes = q.scheme == QuadratureScheme::TensorGrid ? q.nodes_per_angle : 256;
  std::vector<double> phi(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t i) {
    LaurentPolynomial::TermMap terms{{alpha0, it->second}};
    for (std::size_t j = 0; j < others.size(); ++j)
      if (std::abs(candidates[i][j]) > 0.0) terms[others[j].first] = candidates[i][j];
    const LaurentPolynomial g(alpha0.dim(), std::move(terms));
    phi[i] = jensen_torus_mean(g, nodes);
  });
  return *std::min_element(phi.begin(), phi.end());
}

std::vector<DominanceTerm> dominance_terms(const Eigen::VectorXd& x0, const Eigen::VectorXd& v, const Lifting& lifting,
                                           double t, const LatticePoint& alpha1) {
  if (!(t > 0.0)) throw std::invalid_argument("dominance_threshold: t must be positive");
  const auto it = lifting.heights.find(alpha1);
  if (it == lifting.heights.end()) throw std::invalid_argument("dominance_threshold: alpha1 not in lifting");
  if (static_cast<std::size_t>(x0.size()) != alpha1.dim() || static_cast<std::size_t>(v.size()) != alpha1.dim())
    throw std::invalid_argument("dominance_threshold: dimension mismatch");
  const double log_t = std::log(t);
  std::vector<DominanceTerm> out;
  for (const auto& [alpha, nu] : lifting.heights) {
    if (alpha == alpha1) continue;
    const LatticePoint d = alpha1 - alpha;
    DominanceTerm term{alpha, d.dot(x0), it->second - nu, d.dot(v), 0.0};
    if (!(term.delta > 0.0))
      throw std::invalid_argument("dominance_threshold: " + to_string(alpha1) + " is not strictly maximal in direction v");
    term.s = std::max(0.0, -(term.A + term.B * log_t) / term.delta);
    out.push_back(std::move(term));
  }
  return out;
}

double dominance_threshold(const Eigen::VectorXd& x0, const Eigen::VectorXd& v, const Lifting& lifting, double t,
                           const LatticePoint& alpha1) {
  double s0 = 0.0;
  for (const auto& term : dominance_terms(x0, v, lifting, t, alpha1)) s0 = std::max(s0, term.s);
  return s0;
}

}  // namespace amoeba
