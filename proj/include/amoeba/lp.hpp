#pragma once

// Dense two-phase simplex over a generic ordered field. Instantiated with
// double (tolerance-based pivoting) and with GMP rationals (exact).

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace amoeba {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr double lp_epsilon = 1e-10;
  static bool is_zero(double v) { return std::abs(v) <= lp_epsilon; }
  static bool is_positive(double v) { return v > lp_epsilon; }
  static bool is_negative(double v) { return v < -lp_epsilon; }
  static double to_double(double v) { return v; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& v) { return v.is_zero(); }
  static bool is_positive(const Rational& v) { return v.sign() > 0; }
  static bool is_negative(const Rational& v) { return v.sign() < 0; }
  static double to_double(const Rational& v) { return v.template convert_to<double>(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class RowSense { LessEqual, Equal, GreaterEqual };

template <typename Scalar>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Scalar objective{0};
  std::vector<Scalar> x;
};

/// maximize c.x subject to rows (a.x {<=,=,>=} b) and x >= 0.
template <typename Scalar>
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_vars) : n_(num_vars), c_(num_vars, Scalar(0)) {}

  std::size_t num_vars() const { return n_; }

  void add_constraint(std::vector<Scalar> a, RowSense sense, Scalar b) {
    if (a.size() != n_) throw std::invalid_argument("constraint width mismatch");
    rows_.push_back({std::move(a), sense, std::move(b)});
  }

  void set_objective(std::vector<Scalar> c) {
    if (c.size() != n_) throw std::invalid_argument("objective width mismatch");
    c_ = std::move(c);
  }

  LpResult<Scalar> maximize() const;

 private:
  struct Row {
    std::vector<Scalar> a;
    RowSense sense;
    Scalar b;
  };

  std::size_t n_;
  std::vector<Scalar> c_;
  std::vector<Row> rows_;
};

namespace detail {

template <typename Scalar>
class Tableau {
 public:
  using Traits = ScalarTraits<Scalar>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Tableau(Eigen::Index rows, Eigen::Index cols) : t_(rows + 1, cols + 1), basis_(static_cast<std::size_t>(rows)) {
    for (Eigen::Index i = 0; i < t_.rows(); ++i)
      for (Eigen::Index j = 0; j < t_.cols(); ++j) t_(i, j) = Scalar(0);
  }

  Scalar& at(Eigen::Index i, Eigen::Index j) { return t_(i, j); }
  const Scalar& at(Eigen::Index i, Eigen::Index j) const { return t_(i, j); }
  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index cols() const { return t_.cols() - 1; }
  Eigen::Index rhs() const { return t_.cols() - 1; }
  Eigen::Index obj() const { return t_.rows() - 1; }
  std::vector<Eigen::Index>& basis() { return basis_; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    const Scalar p = t_(r, c);
    for (Eigen::Index j = 0; j < t_.cols(); ++j) t_(r, j) /= p;
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const Scalar f = t_(i, c);
      if (Traits::is_zero(f)) {
        t_(i, c) = Scalar(0);
        continue;
      }
      for (Eigen::Index j = 0; j < t_.cols(); ++j) t_(i, j) -= f * t_(r, j);
      t_(i, c) = Scalar(0);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  /// Bland's rule iterations over columns [0, allowed). Returns false if unbounded.
  bool optimize(Eigen::Index allowed, const std::vector<bool>& active_row) {
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (Traits::is_negative(t_(obj(), j))) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      Scalar best{0};
      for (Eigen::Index i = 0; i < rows(); ++i) {
        if (!active_row[static_cast<std::size_t>(i)]) continue;
        if (!Traits::is_positive(t_(i, enter))) continue;
        const Scalar ratio = t_(i, rhs()) / t_(i, enter);
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

 private:
  Matrix t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace detail

template <typename Scalar>
LpResult<Scalar> LinearProgram<Scalar>::maximize() const {
  using Traits = ScalarTraits<Scalar>;
  const Eigen::Index m = static_cast<Eigen::Index>(rows_.size());
  const Eigen::Index n = static_cast<Eigen::Index>(n_);

  // Normalize rows to nonnegative right-hand sides.
  std::vector<Row> rows = rows_;
  for (auto& r : rows) {
    if (Traits::is_negative(r.b)) {
      for (auto& v : r.a) v = -v;
      r.b = -r.b;
      if (r.sense == RowSense::LessEqual)
        r.sense = RowSense::GreaterEqual;
      else if (r.sense == RowSense::GreaterEqual)
        r.sense = RowSense::LessEqual;
    }
  }

  Eigen::Index num_slack = 0, num_art = 0;
  for (const auto& r : rows) {
    if (r.sense != RowSense::Equal) ++num_slack;
    if (r.sense != RowSense::LessEqual) ++num_art;
  }
  const Eigen::Index art0 = n + num_slack;
  detail::Tableau<Scalar> tab(m, n + num_slack + num_art);

  Eigen::Index slack = n, art = art0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Row& r = rows[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) tab.at(i, j) = r.a[static_cast<std::size_t>(j)];
    tab.at(i, tab.rhs()) = r.b;
    if (r.sense == RowSense::LessEqual) {
      tab.at(i, slack) = Scalar(1);
      tab.basis()[static_cast<std::size_t>(i)] = slack++;
    } else {
      if (r.sense == RowSense::GreaterEqual) tab.at(i, slack++) = Scalar(-1);
      tab.at(i, art) = Scalar(1);
      tab.basis()[static_cast<std::size_t>(i)] = art++;
    }
  }

  std::vector<bool> active(static_cast<std::size_t>(m), true);
  LpResult<Scalar> result;

  if (num_art > 0) {
    // Phase 1: maximize -sum(artificials).
    for (Eigen::Index j = art0; j < tab.cols(); ++j) tab.at(tab.obj(), j) = Scalar(1);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.basis()[static_cast<std::size_t>(i)] < art0) continue;
      for (Eigen::Index j = 0; j <= tab.cols(); ++j) tab.at(tab.obj(), j) -= tab.at(i, j);
    }
    tab.optimize(tab.cols(), active);
    if (Traits::is_negative(tab.at(tab.obj(), tab.rhs()))) return result;  // infeasible

    // Drive remaining artificials out of the basis; drop redundant rows.
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.basis()[static_cast<std::size_t>(i)] < art0) continue;
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < art0; ++j) {
        if (!Traits::is_zero(tab.at(i, j))) {
          col = j;
          break;
        }
      }
      if (col >= 0)
        tab.pivot(i, col);
      else
        active[static_cast<std::size_t>(i)] = false;
    }
  }

  // Phase 2.
  for (Eigen::Index j = 0; j <= tab.cols(); ++j) tab.at(tab.obj(), j) = Scalar(0);
  for (Eigen::Index j = 0; j < n; ++j) tab.at(tab.obj(), j) = -c_[static_cast<std::size_t>(j)];
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!active[static_cast<std::size_t>(i)]) continue;
    const Eigen::Index b = tab.basis()[static_cast<std::size_t>(i)];
    const Scalar f = tab.at(tab.obj(), b);
    if (Traits::is_zero(f)) continue;
    for (Eigen::Index j = 0; j <= tab.cols(); ++j) tab.at(tab.obj(), j) -= f * tab.at(i, j);
  }
  if (!tab.optimize(art0, active)) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.status = LpStatus::Optimal;
  result.objective = tab.at(tab.obj(), tab.rhs());
  result.x.assign(n_, Scalar(0));
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!active[static_cast<std::size_t>(i)]) continue;
    const Eigen::Index b = tab.basis()[static_cast<std::size_t>(i)];
    if (b < n) result.x[static_cast<std::size_t>(b)] = tab.at(i, tab.rhs());
  }
  return result;
}

}  // namespace amoeba
