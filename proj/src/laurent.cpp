#include "amoeba/laurent.hpp"

#include <cctype>
#include <charconv>
#include <numbers>

namespace amoeba {

LaurentPolynomial::LaurentPolynomial(std::size_t dim, TermMap terms) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("polynomial dimension must be positive");
  for (auto& [alpha, a] : terms) {
    if (alpha.dim() != dim)
      throw std::invalid_argument("exponent " + to_string(alpha) + " has wrong dimension");
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw std::invalid_argument("non-finite coefficient at " + to_string(alpha));
    if (a != Complex(0.0, 0.0)) terms_.emplace(alpha, a);
  }
  if (terms_.empty()) throw std::invalid_argument("empty polynomial");
}

std::vector<LatticePoint> LaurentPolynomial::support() const {
  std::vector<LatticePoint> s;
  s.reserve(terms_.size());
  for (const auto& [alpha, a] : terms_) s.push_back(alpha);
  return s;
}

Complex LaurentPolynomial::coefficient(const LatticePoint& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

TorusPoint::TorusPoint(Eigen::VectorXd x, Eigen::VectorXd theta)
    : log_radii(std::move(x)), angles(std::move(theta)) {
  if (log_radii.size() != angles.size()) throw std::invalid_argument("torus point: radii/angles dimension mismatch");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (Eigen::Index i = 0; i < angles.size(); ++i) {
    double a = std::fmod(angles[i], two_pi);
    if (a < 0) a += two_pi;
    if (a >= two_pi) a = 0.0;
    angles[i] = a;
  }
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t dim) : s_(text), dim_(dim) {}

  LaurentPolynomial parse() {
    LaurentPolynomial::TermMap terms;
    skip_ws();
    if (at_end()) throw ParseError("empty input", pos_);
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end()) break;
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-' between terms", pos_);
      }
      first = false;
      auto [alpha, coeff] = term();
      terms[alpha] += sign * coeff;
    }
    for (auto it = terms.begin(); it != terms.end();) {
      if (it->second == Complex(0.0, 0.0))
        it = terms.erase(it);
      else
        ++it;
    }
    if (terms.empty()) throw ParseError("empty polynomial after merging like terms", s_.size());
    return LaurentPolynomial(dim_, std::move(terms));
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  std::pair<LatticePoint, Complex> term() {
    std::vector<std::int64_t> exps(dim_, 0);
    Complex coeff(1.0, 0.0);
    bool has_coeff = false;
    if (peek() == '(' || is_digit(peek()) || peek() == '.') {
      coeff = coefficient();
      has_coeff = true;
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (peek() != 'z') throw ParseError("expected monomial after '*'", pos_);
      }
    } else if (peek() != 'z') {
      throw ParseError("expected coefficient or monomial", pos_);
    }
    bool any_monomial = false;
    while (true) {
      skip_ws();
      if (peek() == 'z') {
        monomial(exps);
        any_monomial = true;
        continue;
      }
      if (peek() == '*' && any_monomial) {
        ++pos_;
        skip_ws();
        if (peek() != 'z') throw ParseError("expected monomial after '*'", pos_);
        continue;
      }
      break;
    }
    if (!has_coeff && !any_monomial) throw ParseError("empty term", pos_);
    return {LatticePoint(std::move(exps)), coeff};
  }

  void monomial(std::vector<std::int64_t>& exps) {
    const std::size_t start = pos_;
    ++pos_;  // 'z'
    if (!is_digit(peek())) throw ParseError("expected variable index after 'z'", pos_);
    std::int64_t k = integer();
    if (k < 1 || static_cast<std::size_t>(k) > dim_)
      throw ParseError("variable z" + std::to_string(k) + " outside dimension " + std::to_string(dim_), start);
    std::int64_t e = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      bool neg = false;
      if (peek() == '-' || peek() == '+') {
        neg = peek() == '-';
        ++pos_;
      }
      if (!is_digit(peek())) throw ParseError("expected integer exponent", pos_);
      e = integer();
      if (neg) e = -e;
    }
    exps[static_cast<std::size_t>(k - 1)] = checked::add(exps[static_cast<std::size_t>(k - 1)], e);
  }

  std::int64_t integer() {
    const std::size_t start = pos_;
    while (is_digit(peek())) ++pos_;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc() || ptr != s_.data() + pos_) throw ParseError("integer out of range", start);
    return v;
  }

  double decimal() {
    const std::size_t start = pos_;
    while (is_digit(peek())) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (is_digit(peek())) ++pos_;
    }
    if (pos_ == start || (pos_ == start + 1 && s_[start] == '.')) throw ParseError("expected number", start);
    if (peek() == 'e' || peek() == 'E') {
      std::size_t save = pos_;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (is_digit(peek())) {
        while (is_digit(peek())) ++pos_;
      } else {
        pos_ = save;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc() || ptr != s_.data() + pos_ || !std::isfinite(v))
      throw ParseError("malformed number", start);
    return v;
  }

  Complex coefficient() {
    if (peek() != '(') return {decimal(), 0.0};
    ++pos_;
    skip_ws();
    double re = 0.0, im = 0.0;
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1.0 : 1.0;
      ++pos_;
      skip_ws();
    }
    double first = sign * decimal();
    skip_ws();
    if (peek() == 'i') {
      ++pos_;
      im = first;
    } else {
      re = first;
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        double s2 = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_ws();
        im = s2 * decimal();
        skip_ws();
        if (peek() != 'i') throw ParseError("expected 'i' after imaginary part", pos_);
        ++pos_;
      }
    }
    skip_ws();
    if (peek() != ')') throw ParseError("expected ')'", pos_);
    ++pos_;
    return {re, im};
  }

  std::string_view s_;
  std::size_t dim_;
  std::size_t pos_ = 0;
};

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string monomial_text(const LatticePoint& alpha) {
  std::string out;
  for (std::size_t j = 0; j < alpha.dim(); ++j) {
    if (alpha[j] == 0) continue;
    if (!out.empty()) out += '*';
    out += "z" + std::to_string(j + 1);
    if (alpha[j] != 1) out += "^" + std::to_string(alpha[j]);
  }
  return out;
}

}  // namespace

LaurentPolynomial parse_laurent(std::string_view text, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("dimension must be positive");
  return Parser(text, dim).parse();
}

std::string to_string(const LaurentPolynomial& f) {
  std::string out;
  bool first = true;
  for (const auto& [alpha, a] : f.terms()) {
    const std::string mono = monomial_text(alpha);
    std::string coeff;
    bool negative = false;
    if (a.imag() == 0.0) {
      negative = std::signbit(a.real());
      const double m = std::abs(a.real());
      if (!(m == 1.0 && !mono.empty())) coeff = shortest(m);
    } else {
      coeff = "(" + shortest(a.real()) + (std::signbit(a.imag()) ? "-" : "+") + shortest(std::abs(a.imag())) + "i)";
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    out += coeff;
    if (!coeff.empty() && !mono.empty()) out += '*';
    out += mono;
  }
  return out;
}

FactoredValue evaluate_factored(const LaurentPolynomial& f, const TorusPoint& p) {
  if (p.dim() != f.dim()) throw std::invalid_argument("evaluate: dimension mismatch");
  const double scale = dominant_log_magnitude(f, p.log_radii);
  Complex sum(0.0, 0.0);
  for (const auto& [alpha, a] : f.terms()) {
    const double mag = std::abs(a);
    const double rel = std::log(mag) + alpha.dot(p.log_radii) - scale;
    sum += (a / mag) * std::polar(std::exp(rel), alpha.dot(p.angles));
  }
  return {scale, sum};
}

Complex evaluate(const LaurentPolynomial& f, const TorusPoint& p) { return evaluate_factored(f, p).value(); }

LaurentPolynomial multiply(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("multiply: dimension mismatch");
  LaurentPolynomial::TermMap out;
  for (const auto& [a, ca] : f.terms())
    for (const auto& [b, cb] : g.terms()) out[a + b] += ca * cb;
  return LaurentPolynomial(f.dim(), std::move(out));
}

bool in_degeneration_range(double t) { return t > 0.0 && t <= std::exp(-1.0) * (1.0 + 1e-12); }

LaurentPolynomial substitute_t(const LaurentPolynomial& f, const DegenerationWeights& weights, double t) {
  if (!in_degeneration_range(t)) throw std::invalid_argument("t must lie in (0, 1/e]");
  if (weights.nu.size() != f.size())
    throw std::invalid_argument("weights must be defined on exactly the support of f");
  const double log_t = std::log(t);
  LaurentPolynomial::TermMap out;
  for (const auto& [alpha, a] : f.terms()) {
    auto it = weights.nu.find(alpha);
    if (it == weights.nu.end()) throw std::invalid_argument("missing weight for exponent " + to_string(alpha));
    const double nu = it->second;
    out.emplace(alpha, a * std::exp(nu + nu * log_t));
  }
  return LaurentPolynomial(f.dim(), std::move(out));
}

}  // namespace amoeba
