#include "rcvf/ring.hpp"

#include <variant>

namespace rcvf {

struct RingExpr::Node {
  Kind kind;
  Series constant;
  std::size_t index = 0;
  SOSExpr sos;
  ConeExpr cone;
  std::vector<RingExpr> args;
};

RingExpr RingExpr::constant(Series c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->constant = std::move(c);
  return RingExpr(std::move(n));
}

RingExpr RingExpr::generator(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Generator;
  n->index = index;
  return RingExpr(std::move(n));
}

RingExpr RingExpr::iord(SOSExpr r) {
  if (r.summands.empty()) throw Error(ErrorCode::InvalidArgument, "empty sum of squares");
  auto n = std::make_shared<Node>();
  n->kind = Kind::IOrd;
  n->sos = std::move(r);
  return RingExpr(std::move(n));
}

RingExpr RingExpr::icone(ConeExpr f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ICone;
  n->cone = std::move(f);
  return RingExpr(std::move(n));
}

RingExpr RingExpr::sum(std::vector<RingExpr> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->args = std::move(args);
  return RingExpr(std::move(n));
}

RingExpr RingExpr::product(std::vector<RingExpr> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->args = std::move(args);
  return RingExpr(std::move(n));
}

RingExpr::Kind RingExpr::kind() const { return node_->kind; }
const Series& RingExpr::constant_value() const { return node_->constant; }
std::size_t RingExpr::generator_index() const { return node_->index; }
const SOSExpr& RingExpr::sos() const { return node_->sos; }
const ConeExpr& RingExpr::cone() const { return node_->cone; }
const std::vector<RingExpr>& RingExpr::args() const { return node_->args; }

RationalFunction RingExpr::to_rational_function(const SetDescriptor& set) const {
  const auto& vars = set.variables();
  switch (kind()) {
    case Kind::Constant:
      return RationalFunction(Polynomial(constant_value()));
    case Kind::Generator:
      if (generator_index() >= set.generators().size())
        throw Error(ErrorCode::InvalidArgument, "generator index out of range");
      return set.generators()[generator_index()];
    case Kind::IOrd: {
      RationalFunction one(Series(1));
      return one / (one + sos().value());
    }
    case Kind::ICone: {
      RationalFunction one(Series(1));
      return one / (one + cone().value(set.strict_constraints()));
    }
    case Kind::Sum: {
      RationalFunction acc;
      for (const auto& a : args()) acc = acc + a.to_rational_function(set);
      return with_variables(acc, merge_variables(acc.variables(), vars));
    }
    case Kind::Product: {
      RationalFunction acc(Series(1));
      for (const auto& a : args()) acc = acc * a.to_rational_function(set);
      return acc;
    }
  }
  return {};
}

RationalFunction TElement::to_rational_function(const SetDescriptor& set) const {
  return RationalFunction(Series(1)) + a.to_rational_function(set).scaled(m);
}

namespace {

bool sos_uses_only(const SOSExpr& s, const std::vector<std::string>& vars) {
  for (const auto& t : s.summands) {
    for (const auto& v : t.variables()) {
      bool occurs = std::find(vars.begin(), vars.end(), v) != vars.end();
      if (!occurs) {
        // Variables listed but not occurring are harmless.
        auto used_n = t.num.used_variables();
        auto used_d = t.den.used_variables();
        if (std::find(used_n.begin(), used_n.end(), v) != used_n.end()) return false;
        if (std::find(used_d.begin(), used_d.end(), v) != used_d.end()) return false;
      }
    }
    if (t.den.is_zero()) return false;
  }
  return true;
}

}  // namespace

bool verify_ring_membership(const RingExpr& e, const SetDescriptor& set) {
  switch (e.kind()) {
    case RingExpr::Kind::Constant:
      try {
        return e.constant_value().valuation() >= Value(0);
      } catch (const Error&) {
        return false;
      }
    case RingExpr::Kind::Generator:
      return e.generator_index() < set.generators().size();
    case RingExpr::Kind::IOrd:
      return !e.sos().summands.empty() && sos_uses_only(e.sos(), set.variables());
    case RingExpr::Kind::ICone: {
      if (!set.has_strict_constraints()) return false;
      if (e.cone().terms.empty()) return false;
      const auto& p = set.strict_constraints();
      for (const auto& t : e.cone().terms) {
        if (t.coefficient.summands.empty() || !sos_uses_only(t.coefficient, set.variables())) return false;
        unsigned degree = 0;
        for (std::size_t i : t.factors) {
          if (i >= p.size()) return false;
          degree += p[i].total_degree();
        }
        if (degree > kConeDegreeCap) return false;
      }
      return true;
    }
    case RingExpr::Kind::Sum:
    case RingExpr::Kind::Product:
      for (const auto& a : e.args())
        if (!verify_ring_membership(a, set)) return false;
      return true;
  }
  return false;
}

bool verify_t_element(const TElement& t, const SetDescriptor& set) {
  try {
    if (!t.m.is_exact_zero() && !(t.m.valuation() > Value(0))) return false;
  } catch (const Error&) {
    return false;
  }
  return verify_ring_membership(t.a, set);
}

Series eval_ring_expr(const RingExpr& e, const SetDescriptor& set, std::span<const Series> point) {
  const auto& vars = set.variables();
  switch (e.kind()) {
    case RingExpr::Kind::Constant:
      return e.constant_value();
    case RingExpr::Kind::Generator: {
      if (e.generator_index() >= set.generators().size())
        throw Error(ErrorCode::InvalidArgument, "generator index out of range");
      return poly_eval(set.generators()[e.generator_index()], vars, point);
    }
    case RingExpr::Kind::IOrd: {
      Series acc(1);
      for (const auto& s : e.sos().summands) {
        Series v = poly_eval(s, vars, point);
        acc += v * v;
      }
      return acc.inverse();
    }
    case RingExpr::Kind::ICone: {
      Series acc(1);
      for (const auto& t : e.cone().terms) {
        Series term(0);
        for (const auto& s : t.coefficient.summands) {
          Series v = poly_eval(s, vars, point);
          term += v * v;
        }
        for (std::size_t i : t.factors) term *= set.strict_constraints().at(i).evaluate<Series>(point);
        acc += term;
      }
      if (acc.is_exact_zero()) throw Error(ErrorCode::DivisionByZero, "cone leaf denominator vanishes");
      return acc.inverse();
    }
    case RingExpr::Kind::Sum: {
      Series acc(0);
      for (const auto& a : e.args()) acc += eval_ring_expr(a, set, point);
      return acc;
    }
    case RingExpr::Kind::Product: {
      Series acc(1);
      for (const auto& a : e.args()) acc *= eval_ring_expr(a, set, point);
      return acc;
    }
  }
  return Series();
}

Series eval_t_element(const TElement& t, const SetDescriptor& set, std::span<const Series> point) {
  return Series(1) + t.m * eval_ring_expr(t.a, set, point);
}

RingExpr ring_expr_from_polynomial(const Polynomial& q, const std::vector<std::string>& vars) {
  Polynomial aligned = q.with_variables(vars);
  std::vector<RingExpr> summands;
  for (const auto& [m, c] : aligned.terms()) {
    if (c.valuation() < Value(0))
      throw Error(ErrorCode::NotIntegral, "coefficient " + c.to_string() + " is not integral");
    std::vector<RingExpr> factors;
    if (m.is_constant() || !(c == Series(1))) factors.push_back(RingExpr::constant(c));
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      for (unsigned k = 0; k < m.exps[i]; ++k) factors.push_back(RingExpr::generator(i));
    summands.push_back(factors.size() == 1 ? factors.front() : RingExpr::product(std::move(factors)));
  }
  if (summands.empty()) return RingExpr::constant(Series());
  if (summands.size() == 1) return summands.front();
  return RingExpr::sum(std::move(summands));
}

}  // namespace rcvf
