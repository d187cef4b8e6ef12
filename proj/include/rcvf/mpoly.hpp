#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rcvf/errors.hpp"
#include "rcvf/rational.hpp"
#include "rcvf/series.hpp"

namespace rcvf {

/// Exponent vector, indexed like the owning polynomial's variable list.
struct Monomial {
  std::vector<unsigned> exps;

  unsigned degree() const { return std::accumulate(exps.begin(), exps.end(), 0U); }
  bool is_constant() const { return degree() == 0; }
  bool operator==(const Monomial&) const = default;
};

/// Graded order, ascending total degree; ties broken so that x^2 precedes
/// x*y precedes y^2.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(b.exps.begin(), b.exps.end(), a.exps.begin(), a.exps.end());
  }
};

/// Natural ordering for variable names: x2 < x10, letters before digits.
bool variable_less(const std::string& a, const std::string& b);
/// Sorted union of two variable lists.
std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b);

/// Storage test: only exact zeros are dropped, so unknown tails survive.
inline bool coefficient_is_zero(const Rational& c) { return sgn(c) == 0; }
inline bool coefficient_is_zero(const Series& c) { return c.is_exact_zero(); }
/// Equality test: no known nonzero part.
inline bool coefficient_vanishes(const Rational& c) { return sgn(c) == 0; }
inline bool coefficient_vanishes(const Series& c) { return c.is_zero(); }

/// Sparse multivariate polynomial with coefficients in C (Series or Rational).
/// Variables are kept in natural sorted order; binary operations work over the
/// union of both operands' variables.
template <class C>
class MPoly {
 public:
  using Terms = std::map<Monomial, C, MonomialOrder>;

  MPoly() = default;
  MPoly(const C& constant) {  // NOLINT(google-explicit-constructor)
    if (!coefficient_is_zero(constant)) terms_.emplace(Monomial{}, constant);
  }

  static MPoly variable(const std::string& name) {
    MPoly p;
    p.vars_ = {name};
    p.terms_.emplace(Monomial{{1}}, C(1));
    return p;
  }

  /// Builds from raw terms over a given (sorted, duplicate-free) variable list.
  static MPoly from_terms(std::vector<std::string> vars, const std::vector<std::pair<Monomial, C>>& terms) {
    MPoly p;
    p.vars_ = std::move(vars);
    for (const auto& [m, c] : terms) {
      if (m.exps.size() != p.vars_.size())
        throw Error(ErrorCode::VariableMismatch, "exponent vector arity mismatch");
      p.add_term(m, c);
    }
    return p;
  }

  const std::vector<std::string>& variables() const { return vars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Every coefficient is zero up to its precision.
  bool vanishes() const {
    for (const auto& [m, c] : terms_)
      if (!coefficient_vanishes(c)) return false;
    return true;
  }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant()); }
  C constant_term() const {
    for (const auto& [m, c] : terms_)
      if (m.is_constant()) return c;
    return C(0);
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }
  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exps[var]);
    return d;
  }

  /// Variables that actually occur with a positive exponent.
  std::vector<std::string> used_variables() const {
    std::vector<std::string> used;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      for (const auto& [m, c] : terms_) {
        if (m.exps[i] > 0) {
          used.push_back(vars_[i]);
          break;
        }
      }
    }
    return used;
  }

  /// Re-expresses the polynomial over `vars` (sorted). Throws VariableMismatch
  /// if an occurring variable is missing from `vars`.
  MPoly with_variables(const std::vector<std::string>& vars) const {
    if (vars == vars_) return *this;
    std::vector<long> where(vars_.size(), -1);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = std::find(vars.begin(), vars.end(), vars_[i]);
      if (it != vars.end()) where[i] = it - vars.begin();
    }
    MPoly out;
    out.vars_ = vars;
    for (const auto& [m, c] : terms_) {
      Monomial nm{std::vector<unsigned>(vars.size(), 0)};
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (m.exps[i] == 0) continue;
        if (where[i] < 0) throw Error(ErrorCode::VariableMismatch, "variable '" + vars_[i] + "' is not available");
        nm.exps[where[i]] = m.exps[i];
      }
      out.add_term(nm, c);
    }
    return out;
  }

  void add_term(const Monomial& m, const C& c) {
    if (coefficient_is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second = it->second + c;
    if (coefficient_is_zero(it->second)) terms_.erase(it);
  }

  MPoly operator-() const {
    MPoly out;
    out.vars_ = vars_;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
  }

  MPoly operator+(const MPoly& other) const {
    auto vars = merge_variables(vars_, other.vars_);
    MPoly out = with_variables(vars);
    for (const auto& [m, c] : other.with_variables(vars).terms_) out.add_term(m, c);
    return out;
  }
  MPoly operator-(const MPoly& other) const { return *this + (-other); }

  MPoly operator*(const MPoly& other) const {
    auto vars = merge_variables(vars_, other.vars_);
    MPoly a = with_variables(vars), b = other.with_variables(vars);
    MPoly out;
    out.vars_ = vars;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m{ma.exps};
        for (std::size_t i = 0; i < m.exps.size(); ++i) m.exps[i] += mb.exps[i];
        out.add_term(m, ca * cb);
      }
    }
    return out;
  }
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly scaled(const C& factor) const {
    MPoly out;
    out.vars_ = vars_;
    for (const auto& [m, c] : terms_) out.add_term(m, c * factor);
    return out;
  }

  MPoly pow(unsigned n) const {
    MPoly result(C(1));
    for (unsigned i = 0; i < n; ++i) result = result * *this;
    return result;
  }

  template <class F>
  auto map_coefficients(F f) const -> MPoly<decltype(f(std::declval<const C&>()))> {
    using D = decltype(f(std::declval<const C&>()));
    std::vector<std::pair<Monomial, D>> out;
    for (const auto& [m, c] : terms_) out.emplace_back(m, f(c));
    return MPoly<D>::from_terms(vars_, out);
  }

  /// Evaluates at `point`, whose entries follow variables() order.
  template <class V>
  V evaluate(std::span<const V> point) const {
    if (point.size() != vars_.size())
      throw Error(ErrorCode::VariableMismatch, "point arity " + std::to_string(point.size()) +
                                                   " != " + std::to_string(vars_.size()));
    std::vector<std::vector<V>> powers(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      powers[i].push_back(V(1));
      unsigned d = degree_in(i);
      for (unsigned k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * point[i]);
    }
    V acc(0);
    for (const auto& [m, c] : terms_) {
      V t = V(c);
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (m.exps[i]) t = t * powers[i][m.exps[i]];
      acc = acc + t;
    }
    return acc;
  }

  /// Substitutes polynomial images for each variable (indexed like variables()).
  MPoly substitute(const std::vector<MPoly>& images) const {
    if (images.size() != vars_.size()) throw Error(ErrorCode::VariableMismatch, "substitution arity mismatch");
    MPoly acc;
    std::vector<std::vector<MPoly>> powers(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      powers[i].push_back(MPoly(C(1)));
      for (unsigned k = 1; k <= degree_in(i); ++k) powers[i].push_back(powers[i].back() * images[i]);
    }
    for (const auto& [m, c] : terms_) {
      MPoly t(c);
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (m.exps[i]) t = t * powers[i][m.exps[i]];
      acc = acc + t;
    }
    return acc;
  }

  /// Equal as polynomials (variable lists may differ).
  bool equals(const MPoly& other) const { return (*this - other).vanishes(); }

 private:
  std::vector<std::string> vars_;
  Terms terms_;
};

/// Quotient of two polynomials; never reduced. Equality is the
/// cross-multiplication identity.
template <class C>
struct Fraction {
  MPoly<C> num;
  MPoly<C> den{C(1)};

  Fraction() = default;
  Fraction(MPoly<C> n) : num(std::move(n)) {}  // NOLINT(google-explicit-constructor)
  Fraction(MPoly<C> n, MPoly<C> d) : num(std::move(n)), den(std::move(d)) {}
  Fraction(const C& c) : num(c) {}  // NOLINT(google-explicit-constructor)

  bool is_polynomial() const { return den.is_constant() && !den.is_zero() && den.constant_term() == C(1); }
  std::vector<std::string> variables() const { return merge_variables(num.variables(), den.variables()); }

  Fraction operator-() const { return {-num, den}; }
  Fraction operator+(const Fraction& o) const {
    if (den.equals(o.den)) return {num + o.num, den};
    return {num * o.den + o.num * den, den * o.den};
  }
  Fraction operator-(const Fraction& o) const { return *this + (-o); }
  Fraction operator*(const Fraction& o) const { return {num * o.num, den * o.den}; }
  Fraction operator/(const Fraction& o) const {
    if (o.num.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero rational function");
    return {num * o.den, den * o.num};
  }
  Fraction scaled(const C& c) const { return {num.scaled(c), den}; }

  bool equals(const Fraction& o) const { return (num * o.den - o.num * den).vanishes(); }
};

using Polynomial = MPoly<Series>;
using RationalFunction = Fraction<Series>;
using ResiduePolynomial = MPoly<Rational>;
using ResidueQuotient = Fraction<Rational>;

}  // namespace rcvf
