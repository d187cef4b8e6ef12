#include "rcvf/series.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>

#include "rcvf/errors.hpp"

namespace rcvf {

namespace {

std::atomic<long> g_default_precision{32};
std::atomic<long> g_denominator_cap{64};

Rational min_opt(const std::optional<Rational>& a, const std::optional<Rational>& b, bool& finite) {
  finite = a.has_value() || b.has_value();
  if (a && b) return std::min(*a, *b);
  if (a) return *a;
  if (b) return *b;
  return Rational(0);
}

// Terms of (s / leading_term(s)) - 1, i.e. the tail normalized to start at
// exponent > 0. The result precision is relative.
Series unit_tail(const Series& s) {
  const Term& lead = s.leading_term();
  std::vector<Term> tail;
  tail.reserve(s.terms().size() - 1);
  for (std::size_t i = 1; i < s.terms().size(); ++i) {
    const Term& t = s.terms()[i];
    tail.push_back({t.exponent - lead.exponent, t.coefficient / lead.coefficient});
  }
  std::optional<Rational> prec;
  if (s.precision()) prec = *s.precision() - lead.exponent;
  return Series(std::move(tail), prec);
}

// Exponents below `cut` reachable as finite sums of exponents of u (which
// are all positive), in increasing order, starting with 0.
std::vector<Rational> exponent_monoid(const Series& u, const Rational& cut) {
  std::set<Rational> seen{Rational(0)};
  std::vector<Rational> frontier{Rational(0)};
  while (!frontier.empty()) {
    std::vector<Rational> next;
    for (const Rational& s : frontier) {
      for (const Term& t : u.terms()) {
        Rational e = s + t.exponent;
        if (e >= cut) break;
        if (seen.insert(e).second) next.push_back(e);
      }
    }
    if (seen.size() > 200000) throw Error(ErrorCode::ExponentBlowup, "too many exponents below the cut");
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// Coefficients of w = (1+u)^(1/2) or (1+u)^(-1) below `cut`, by the
// recurrences w(1+u) = 1 and w^2 = 1+u.
Series unit_power(const Series& u, const Rational& cut, bool square_root) {
  std::map<Rational, Rational> w{{Rational(0), Rational(1)}};
  for (const Rational& e : exponent_monoid(u, cut)) {
    if (sgn(e) == 0) continue;
    Rational acc;
    if (!square_root) {
      for (const Term& t : u.terms()) {
        if (t.exponent > e) break;
        auto it = w.find(e - t.exponent);
        if (it != w.end()) acc -= t.coefficient * it->second;
      }
    } else {
      acc = u.coefficient(e);
      for (auto it = std::next(w.begin()); it != w.end() && it->first < e; ++it) {
        auto jt = w.find(e - it->first);
        if (jt != w.end() && sgn(jt->first) > 0) acc -= it->second * jt->second;
      }
      acc /= 2;
    }
    if (sgn(acc) != 0) w.emplace(e, acc);
  }
  std::vector<Term> terms;
  terms.reserve(w.size());
  for (auto& [e, c] : w) terms.push_back({e, c});
  return Series(std::move(terms), cut);
}

}  // namespace

long default_precision() { return g_default_precision.load(); }
void set_default_precision(long relative_order) {
  if (relative_order <= 0) throw Error(ErrorCode::InvalidArgument, "precision must be positive");
  g_default_precision.store(relative_order);
}
long exponent_denominator_cap() { return g_denominator_cap.load(); }
void set_exponent_denominator_cap(long cap) {
  if (cap <= 0) throw Error(ErrorCode::InvalidArgument, "denominator cap must be positive");
  g_denominator_cap.store(cap);
}

const char* ordering_name(Ordering o) {
  switch (o) {
    case Ordering::LT: return "LT";
    case Ordering::EQ: return "EQ";
    case Ordering::GT: return "GT";
  }
  return "?";
}

Series::Series(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({Rational(0), c});
}

Series::Series(std::vector<Term> terms, std::optional<Rational> precision)
    : terms_(std::move(terms)), precision_(std::move(precision)) {
  normalize();
}

Series Series::monomial(const Rational& coefficient, const Rational& exponent) {
  return Series({{exponent, coefficient}}, std::nullopt);
}

void Series::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exponent == t.exponent) {
      merged.back().coefficient += t.coefficient;
    } else {
      merged.push_back(std::move(t));
    }
  }
  terms_.clear();
  for (auto& t : merged) {
    if (sgn(t.coefficient) == 0) continue;
    if (precision_ && t.exponent >= *precision_) continue;
    terms_.push_back(std::move(t));
  }
  Integer lcm = 1;
  auto account = [&](const Rational& e) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.get_den_mpz_t());
  };
  for (const auto& t : terms_) account(t.exponent);
  if (precision_) account(*precision_);
  if (lcm > exponent_denominator_cap()) {
    throw Error(ErrorCode::ExponentBlowup,
                "exponent denominator " + lcm.get_str() + " exceeds cap " +
                    std::to_string(exponent_denominator_cap()));
  }
}

bool Series::is_exact_rational() const {
  return is_exact() && (terms_.empty() || (terms_.size() == 1 && sgn(terms_[0].exponent) == 0));
}

const Term& Series::leading_term() const {
  if (terms_.empty()) {
    if (is_exact()) throw Error(ErrorCode::InvalidArgument, "zero has no leading term");
    throw Error(ErrorCode::PrecisionExhausted,
                "no known term below eps^" + rcvf::to_string(*precision_));
  }
  return terms_.front();
}

Value Series::valuation() const {
  if (is_exact_zero()) return Value::top();
  return Value(leading_term().exponent);
}

Value Series::valuation_lower_bound() const {
  if (!terms_.empty()) return Value(terms_.front().exponent);
  if (precision_) return Value(*precision_);
  return Value::top();
}

int Series::sign() const {
  if (is_exact_zero()) return 0;
  return sgn(leading_term().coefficient);
}

Rational Series::coefficient(const Rational& exponent) const {
  for (const auto& t : terms_) {
    if (t.exponent == exponent) return t.coefficient;
    if (t.exponent > exponent) break;
  }
  if (precision_ && exponent >= *precision_)
    throw Error(ErrorCode::PrecisionExhausted,
                "coefficient of eps^" + rcvf::to_string(exponent) + " is unknown");
  return Rational(0);
}

Rational Series::residue() const {
  if (!terms_.empty() && sgn(terms_.front().exponent) < 0)
    throw Error(ErrorCode::NotIntegral, "valuation " + rcvf::to_string(terms_.front().exponent) + " < 0");
  if (terms_.empty() && precision_ && sgn(*precision_) <= 0)
    throw Error(ErrorCode::PrecisionExhausted, "residue is unknown");
  return coefficient(Rational(0));
}

Series Series::truncated(const Rational& precision) const {
  if (precision_ && *precision_ <= precision) return *this;
  std::vector<Term> kept;
  for (const auto& t : terms_) {
    if (t.exponent >= precision) break;
    kept.push_back(t);
  }
  return Series(std::move(kept), precision);
}

Series Series::shifted(const Rational& shift) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.exponent += shift;
  std::optional<Rational> prec;
  if (precision_) prec = *precision_ + shift;
  return Series(std::move(out), prec);
}

Series Series::scaled(const Rational& factor) const {
  if (sgn(factor) == 0) return Series();
  std::vector<Term> out = terms_;
  for (auto& t : out) t.coefficient *= factor;
  return Series(std::move(out), precision_);
}

Series Series::operator-() const { return scaled(Rational(-1)); }

Series Series::operator+(const Series& other) const {
  bool finite = false;
  Rational prec = min_opt(precision_, other.precision_, finite);
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < other.terms_.size()) {
    if (j == other.terms_.size() ||
        (i < terms_.size() && terms_[i].exponent < other.terms_[j].exponent)) {
      out.push_back(terms_[i++]);
    } else if (i == terms_.size() || other.terms_[j].exponent < terms_[i].exponent) {
      out.push_back(other.terms_[j++]);
    } else {
      out.push_back({terms_[i].exponent, terms_[i].coefficient + other.terms_[j].coefficient});
      ++i;
      ++j;
    }
  }
  return Series(std::move(out), finite ? std::optional<Rational>(prec) : std::nullopt);
}

Series Series::operator-(const Series& other) const { return *this + (-other); }

Series Series::operator*(const Series& other) const {
  // a = A + O(eps^Pa), b = B + O(eps^Pb): ab = AB + O(eps^min(Pa + v(b), Pb + v(a))).
  std::optional<Rational> prec;
  auto bound = [&](const std::optional<Rational>& p, const Series& s) {
    if (!p) return;
    Value v = s.valuation_lower_bound();
    if (v.is_top()) return;
    Rational cand = *p + v.rational();
    if (!prec || cand < *prec) prec = cand;
  };
  bound(precision_, other);
  bound(other.precision_, *this);
  if (is_exact_zero() || other.is_exact_zero()) return Series();

  std::map<Rational, Rational> acc;
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      Rational e = a.exponent + b.exponent;
      if (prec && e >= *prec) break;
      acc[e] += a.coefficient * b.coefficient;
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [e, c] : acc) out.push_back({e, c});
  return Series(std::move(out), prec);
}

Series Series::inverse(std::optional<long> relative_order) const {
  if (is_exact_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const Term& lead = leading_term();  // throws PrecisionExhausted
  Series lead_inv = monomial(1 / lead.coefficient, -lead.exponent);
  if (terms_.size() == 1 && is_exact()) return lead_inv;

  Series u = unit_tail(*this);  // this = lead * (1 + u)
  Rational cut(relative_order.value_or(default_precision()));
  if (u.precision() && *u.precision() < cut) cut = *u.precision();
  return unit_power(u, cut, false).shifted(-lead.exponent).scaled(1 / lead.coefficient);
}

Series Series::sqrt(std::optional<long> relative_order) const {
  if (is_exact_zero()) return Series();
  const Term& lead = leading_term();
  if (sgn(lead.coefficient) < 0) throw Error(ErrorCode::NegativeElement, "square root of a negative element");
  auto root = rational_sqrt(lead.coefficient);
  if (!root) {
    throw Error(ErrorCode::NonSquareLeadingCoefficient,
                "leading coefficient " + rcvf::to_string(lead.coefficient) + " is not a rational square");
  }
  Rational half_exp = lead.exponent / 2;
  if (terms_.size() == 1 && is_exact()) return monomial(*root, half_exp);

  Series u = unit_tail(*this);
  Rational cut(relative_order.value_or(default_precision()));
  if (u.precision() && *u.precision() < cut) cut = *u.precision();
  Series root_unit = unit_power(u, cut, true);
  return root_unit.shifted(half_exp).scaled(*root);
}

Series Series::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  Series result(Rational(1));
  Series base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

namespace {

std::string exponent_text(const Rational& e) {
  if (e == 1) return "eps";
  if (is_integer(e) && sgn(e) > 0) return "eps^" + to_string(e);
  return "eps^(" + to_string(e) + ")";
}

}  // namespace

std::string Series::to_string() const {
  std::string out;
  auto append = [&out](bool negative, const std::string& body) {
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  };
  for (const auto& t : terms_) {
    bool neg = sgn(t.coefficient) < 0;
    Rational mag = abs(t.coefficient);
    std::string body;
    if (sgn(t.exponent) == 0) {
      body = rcvf::to_string(mag);
    } else if (mag == 1) {
      body = exponent_text(t.exponent);
    } else {
      body = rcvf::to_string(mag) + "*" + exponent_text(t.exponent);
    }
    append(neg, body);
  }
  if (precision_) append(false, "O(" + exponent_text(*precision_) + ")");
  if (out.empty()) out = "0";
  return out;
}

Ordering compare_order(const Series& a, const Series& b) {
  int s = (a - b).sign();
  return s < 0 ? Ordering::LT : (s > 0 ? Ordering::GT : Ordering::EQ);
}

}  // namespace rcvf
