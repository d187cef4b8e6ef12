#include "rcvf/text.hpp"

#include <cctype>

#include "rcvf/polyring.hpp"

namespace rcvf {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Folds exact monomial constant denominators; other constants stay put so
// that printing and parsing round-trip.
RationalFunction simplify(RationalFunction q) {
  if (q.den.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  if (q.den.is_constant()) {
    Series c = q.den.constant_term();
    if (c == Series(1)) return q;
    if (c.is_exact() && c.is_monomial()) {
      q.num = divide_by_constant(q.num, c);
      q.den = Polynomial(Series(1));
    }
  }
  return q;
}

// Value of a quotient with constant denominator as a polynomial.
Polynomial fold_constant(const RationalFunction& q) {
  Series c = q.den.constant_term();
  if (c == Series(1)) return q.num;
  return divide_by_constant(q.num, c);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  RationalFunction parse() {
    RationalFunction r = expr();
    skip();
    if (pos_ != s_.size()) fail({"operator", "end of input"}, "unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& detail) const {
    throw ParseError(pos_, std::move(expected), detail);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail({std::string("'") + c + "'"}, pos_ == s_.size() ? "unexpected end of input" : "unexpected character");
  }

  Integer integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    if (start == pos_) fail({"integer"}, pos_ == s_.size() ? "unexpected end of input" : "unexpected character");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  Rational signed_rational() {
    bool neg = accept('-');
    Integer n = integer();
    Integer d = 1;
    if (accept('/')) {
      d = integer();
      if (d == 0) fail({"positive integer"}, "zero denominator");
    }
    Rational q(n, d);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }

  RationalFunction expr() {
    RationalFunction acc;
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc = simplify(acc + term());
      } else if (accept('-')) {
        acc = simplify(acc - term());
      } else {
        return acc;
      }
    }
  }

  RationalFunction term() {
    RationalFunction acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = simplify(acc * factor());
      } else if (peek('/')) {
        std::size_t at = pos_;
        ++pos_;
        RationalFunction d = factor();
        if (d.num.is_zero()) {
          pos_ = at;
          throw Error(ErrorCode::DivisionByZero, "division by zero at offset " + std::to_string(at));
        }
        acc = simplify(acc / d);
      } else {
        return acc;
      }
    }
  }

  RationalFunction factor() {
    if (accept('-')) return -factor();
    RationalFunction b = base();
    if (!accept('^')) return b;
    skip();
    std::size_t at = pos_;
    Rational e;
    if (accept('(')) {
      e = signed_rational();
      expect(')');
    } else {
      bool neg = accept('-');
      e = Rational(integer());
      if (neg) e = -e;
    }
    if (!is_integer(e)) {
      auto monomial = eps_power(b);
      if (!monomial) {
        pos_ = at;
        fail({"integer exponent"}, "rational exponents are only allowed on powers of eps");
      }
      return RationalFunction(Polynomial(Series::eps(*monomial * e)));
    }
    long n = e.get_num().get_si();
    if (n >= 0) {
      if (auto monomial = eps_power(b)) return RationalFunction(Polynomial(Series::eps(*monomial * n)));
      RationalFunction r(Series(1));
      for (long i = 0; i < n; ++i) r = simplify(r * b);
      return r;
    }
    if (b.num.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero raised to a negative power");
    if (auto monomial = eps_power(b)) return RationalFunction(Polynomial(Series::eps(*monomial * n)));
    RationalFunction inv = simplify(RationalFunction(b.den, b.num));
    RationalFunction r(Series(1));
    for (long i = 0; i < -n; ++i) r = simplify(r * inv);
    return r;
  }

  // Exponent q when b is exactly eps^q.
  static std::optional<Rational> eps_power(const RationalFunction& b) {
    if (!b.num.is_constant() || !b.den.is_constant()) return std::nullopt;
    if (!(b.den.constant_term() == Series(1))) return std::nullopt;
    Series c = b.num.constant_term();
    if (!c.is_exact() || !c.is_monomial() || c.leading_term().coefficient != 1) return std::nullopt;
    return c.leading_term().exponent;
  }

  RationalFunction base() {
    skip();
    if (pos_ >= s_.size()) fail({"number", "eps", "variable", "'('"}, "unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction r = expr();
      expect(')');
      return r;
    }
    if (is_digit(c)) {
      Integer n = integer();
      Integer d = 1;
      // "a/b" with digits right after the slash is one rational literal.
      std::size_t save = pos_;
      skip();
      if (pos_ + 1 < s_.size() && s_[pos_] == '/') {
        std::size_t after = pos_ + 1;
        while (after < s_.size() && std::isspace(static_cast<unsigned char>(s_[after]))) ++after;
        if (after < s_.size() && is_digit(s_[after])) {
          ++pos_;
          d = integer();
          if (d == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in literal");
        } else {
          pos_ = save;
        }
      } else {
        pos_ = save;
      }
      Rational q(n, d);
      q.canonicalize();
      return RationalFunction(Polynomial(Series(q)));
    }
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "eps") return RationalFunction(Polynomial(Series::eps()));
      if (name == "O" && peek('(')) {
        ++pos_;
        std::size_t at = pos_;
        RationalFunction inner = expr();
        expect(')');
        auto e = eps_power(inner);
        if (!e) {
          if (inner.num.is_constant() && inner.den.is_constant() && inner.num.constant_term() == Series(1)) {
            e = Rational(0);
          } else {
            pos_ = at;
            fail({"eps^q"}, "O(...) takes a power of eps");
          }
        }
        return RationalFunction(Polynomial(Series::big_o(*e)));
      }
      return RationalFunction(Polynomial::variable(name));
    }
    fail({"number", "eps", "variable", "'('"}, "unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const Monomial& m, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (m.exps[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
    if (m.exps[i] > 1) out += "^" + std::to_string(m.exps[i]);
  }
  return out;
}

template <class C>
std::string coefficient_body(const C& c);

template <>
std::string coefficient_body(const Series& c) {
  return c.to_string();
}
template <>
std::string coefficient_body(const Rational& c) {
  return to_string(c);
}

bool is_negative_single(const Series& c) { return c.is_exact() && c.is_monomial() && sgn(c.leading_term().coefficient) < 0; }
bool is_negative_single(const Rational& c) { return sgn(c) < 0; }
bool is_single(const Series& c) { return c.is_exact() && c.is_monomial(); }
bool is_single(const Rational&) { return true; }
bool is_one(const Series& c) { return c == Series(1); }
bool is_one(const Rational& c) { return c == 1; }

template <class C>
std::string poly_text(const MPoly<C>& p) {
  std::string out;
  auto append = [&out](bool negative, const std::string& body) {
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  };
  for (const auto& [m, c] : p.terms()) {
    std::string mono = monomial_text(m, p.variables());
    if (mono.empty()) {
      // Constant term: print the series inline; its signs are self-contained.
      std::string body = coefficient_body(c);
      if (out.empty()) {
        out = body;
      } else if (body[0] == '-') {
        out += " - " + body.substr(1);
      } else {
        out += " + " + body;
      }
      continue;
    }
    if (is_single(c)) {
      bool neg = is_negative_single(c);
      C mag = neg ? C(-c) : c;
      append(neg, is_one(mag) ? mono : coefficient_body(mag) + "*" + mono);
    } else {
      append(false, "(" + coefficient_body(c) + ")*" + mono);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

RationalFunction parse_rational_function(std::string_view text) {
  return trim_variables(simplify(Parser(text).parse()));
}

Polynomial parse_polynomial(std::string_view text) {
  RationalFunction q = parse_rational_function(text);
  if (!q.den.is_constant()) throw Error(ErrorCode::InvalidArgument, "expected a polynomial: '" + std::string(text) + "'");
  return fold_constant(q);
}

Series parse_series(std::string_view text) {
  Polynomial p = parse_polynomial(text);
  if (!p.is_constant()) throw Error(ErrorCode::InvalidArgument, "expected a field element: '" + std::string(text) + "'");
  return p.constant_term();
}

Expression parse_expression(std::string_view text) {
  RationalFunction q = parse_rational_function(text);
  if (!q.den.is_constant()) return q;
  Polynomial p = fold_constant(q);
  if (p.is_constant()) return p.constant_term();
  return p;
}

std::string to_string(const Polynomial& p) { return poly_text(p); }
std::string to_string(const ResiduePolynomial& p) { return poly_text(p); }

std::string to_string(const RationalFunction& q) {
  if (q.den.is_constant() && !q.den.is_zero()) {
    Series c = q.den.constant_term();
    if (c == Series(1)) return to_string(q.num);
    if (c.is_exact() && c.is_monomial()) return to_string(divide_by_constant(q.num, c));
  }
  return "(" + to_string(q.num) + ")/(" + to_string(q.den) + ")";
}

std::string to_string(const Expression& e) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Series>) return v.to_string();
        else return to_string(v);
      },
      e);
}

Polynomial trim_variables(const Polynomial& p) {
  auto used = p.used_variables();
  if (used.size() == p.variables().size()) return p;
  return p.with_variables(used);
}

RationalFunction trim_variables(const RationalFunction& q) {
  return {trim_variables(q.num), trim_variables(q.den)};
}

}  // namespace rcvf
