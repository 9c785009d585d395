#include "amoeba/roots.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

namespace amoeba {

namespace {

double log_magnitude(const FactoredValue& c) {
  const double r = std::abs(c.reduced);
  if (r == 0.0 || !std::isfinite(c.log_scale)) return -std::numeric_limits<double>::infinity();
  return c.log_scale + std::log(r);
}

}  // namespace

std::vector<LogRoot> polynomial_roots(const ScaledCoefficients& coefficients) {
  std::vector<double> logmag(coefficients.size());
  for (std::size_t k = 0; k < coefficients.size(); ++k) logmag[k] = log_magnitude(coefficients[k]);

  std::size_t lo = 0, hi = coefficients.size();
  while (lo < hi && !std::isfinite(logmag[lo])) ++lo;
  while (hi > lo && !std::isfinite(logmag[hi - 1])) --hi;
  if (hi - lo < 2) return {};
  const std::size_t d = hi - lo - 1;

  const double log_rho = (logmag[lo] - logmag[hi - 1]) / static_cast<double>(d);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = lo; k < hi; ++k)
    if (std::isfinite(logmag[k])) top = std::max(top, logmag[k] + static_cast<double>(k - lo) * log_rho);

  // b_k = c_{lo+k} rho^k / exp(top); all |b_k| <= 1 and |b_0| = |b_d|.
  std::vector<Complex> b(d + 1);
  for (std::size_t k = 0; k <= d; ++k) {
    const FactoredValue& c = coefficients[lo + k];
    if (!std::isfinite(logmag[lo + k])) {
      b[k] = 0.0;
      continue;
    }
    b[k] = c.reduced * std::exp(c.log_scale + static_cast<double>(k) * log_rho - top);
  }

  std::vector<LogRoot> roots;
  if (d == 1) {
    const Complex w = -b[0] / b[1];
    roots.push_back({log_rho + std::log(std::abs(w)), std::arg(w)});
    return roots;
  }

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 1; i < static_cast<Eigen::Index>(d); ++i) companion(i, i - 1) = 1.0;
  for (std::size_t k = 0; k < d; ++k) companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(d - 1)) = -b[k] / b[d];

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw ComputationError("companion eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double m = std::abs(ev[i]);
    if (m == 0.0 || !std::isfinite(m)) continue;
    roots.push_back({log_rho + std::log(m), std::arg(ev[i])});
  }
  return roots;
}

}  // namespace amoeba
