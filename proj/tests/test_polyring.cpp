#include <doctest.h>

#include "rcvf/corpus.hpp"
#include "rcvf/integrality.hpp"
#include "rcvf/ring.hpp"
#include "rcvf/text.hpp"

using namespace rcvf;

namespace {

Series S(const char* t) { return parse_series(t); }
RationalFunction F(const char* t) { return parse_rational_function(t); }
Polynomial P(const char* t) { return parse_polynomial(t); }

SOSExpr sos(std::initializer_list<const char*> parts) {
  SOSExpr s;
  for (const char* p : parts) s.summands.push_back(F(p));
  return s;
}

}  // namespace

TEST_CASE("poly_eval") {
  std::vector<Series> pt{S("eps")};
  CHECK(poly_eval(F("x^2 + eps"), pt) == S("eps + eps^2"));
  std::vector<Series> one{S("1")};
  CHECK(poly_eval(F("1 - eps*x^2"), one) == S("1 - eps"));
  std::vector<Series> e2{S("eps^2")};
  CHECK(poly_eval(F("(x+eps)/x"), e2) == S("1 + eps^(-1)"));
  std::vector<Series> zero{S("0")};
  CHECK_THROWS_AS(poly_eval(F("1/x"), zero), Error);
}

TEST_CASE("gauss_valuation") {
  CHECK(gauss_valuation(P("eps*x^2 + 3*y")) == Value(Rational(0)));
  CHECK(gauss_valuation(P("eps*x^2 + eps^3")) == Value(Rational(1)));
  CHECK(gauss_valuation(F("(x+eps)/x")) == Value(Rational(0)));
  CHECK(gauss_valuation(Polynomial()).is_top());
  RationalFunction bad{P("x"), Polynomial()};
  try {
    gauss_valuation(bad);
    FAIL("expected UndefinedGauss");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndefinedGauss);
  }
}

TEST_CASE("residue layers") {
  Polynomial p = P("eps*x^2 + eps + eps^2*y");
  ResiduePolynomial r = residue_layer(p, Rational(1));
  CHECK(to_string(r) == "1 + x^2");
  CHECK(lift(r).equals(P("1 + x^2")));
}

TEST_CASE("verify_sos_expression") {
  CHECK(verify_sos_expression(F("x^2 + eps"), sos({"x", "eps^(1/2)"})));
  CHECK(verify_sos_expression(F("1 + x^2"), sos({"1", "x"})));
  CHECK_FALSE(verify_sos_expression(F("1 - eps*x^2"), sos({"1"})));
  CHECK(verify_sos_expression(F("1/(1+x^2)^2"), sos({"1/(1+x^2)"})));
}

TEST_CASE("ring membership and evaluation") {
  SetDescriptor ball2 = SetDescriptor::ball(2);
  RingExpr e = RingExpr::sum({RingExpr::product({RingExpr::generator(0), RingExpr::generator(1)}),
                              RingExpr::constant(Series(3))});
  CHECK(verify_ring_membership(e, ball2));
  std::vector<Series> pt{S("eps"), S("1")};
  CHECK(eval_ring_expr(e, ball2, pt) == S("3 + eps"));

  SetDescriptor ball1 = SetDescriptor::ball(1);
  RingExpr leaf = RingExpr::iord(sos({"x1"}));
  CHECK(verify_ring_membership(leaf, ball1));
  std::vector<Series> one{S("1")};
  CHECK(eval_ring_expr(leaf, ball1, one) == S("1/2"));
  std::vector<Series> far{S("eps^(-1)")};
  CHECK(eval_ring_expr(leaf, ball1, far).valuation() >= Value(Rational(0)));

  CHECK_FALSE(verify_ring_membership(RingExpr::constant(S("eps^(-1)")), ball1));
  CHECK_FALSE(verify_ring_membership(RingExpr::generator(3), ball1));
  ConeExpr cone{{ConeTerm{sos({"1"}), {0}}}};
  CHECK_FALSE(verify_ring_membership(RingExpr::icone(cone), ball1));
  SetDescriptor cut = ball1.with_strict({P("x1")});
  CHECK(verify_ring_membership(RingExpr::icone(cone), cut));
  CHECK(verify_t_element({S("eps"), leaf}, ball1));
  CHECK_FALSE(verify_t_element({S("1"), leaf}, ball1));
}

TEST_CASE("ring_expr_from_polynomial") {
  SetDescriptor ball2 = SetDescriptor::ball(2);
  Polynomial q = P("3 + x1*x2 - eps*x1^2");
  RingExpr e = ring_expr_from_polynomial(q, ball2.variables());
  CHECK(verify_ring_membership(e, ball2));
  CHECK(e.to_rational_function(ball2).equals(RationalFunction(q)));
  CHECK_THROWS_AS(ring_expr_from_polynomial(P("x1/eps"), ball2.variables()), Error);
}

TEST_CASE("property: Gauss valuation is multiplicative") {
  SampleConfig cfg;
  std::vector<std::string> vars{"x1", "x2"};
  for (std::uint64_t i = 0; i < 500; ++i) {
    Rng rng(11, 0, i);
    Polynomial a = random_polynomial(rng, vars, 3, 4, cfg);
    Polynomial b = random_polynomial(rng, vars, 3, 4, cfg);
    CHECK(gauss_valuation(a * b) == gauss_valuation(a) + gauss_valuation(b));
  }
}

TEST_CASE("property: lower bound on the polydisc and genericity") {
  auto corpus = polynomial_corpus(100, 3);
  SampleConfig cfg;
  cfg.samples = 60;
  std::size_t generic_hits = 0;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const Polynomial& q = corpus[k];
    SetDescriptor set = SetDescriptor::ball(q.variables());
    Value g = gauss_valuation(q);
    cfg.seed = k;
    PointSampler sampler(set, cfg, Stream::Oracle);
    for (std::size_t i = 0; i < sampler.budget(); ++i) {
      auto x = sampler.point(i);
      Series v = q.evaluate<Series>(*x);
      if (!v.is_zero()) CHECK(v.valuation() >= g);
      else CHECK(v.valuation_lower_bound() >= g);
    }
    if (generic_residue_probe(q, set, k)) ++generic_hits;
  }
  CHECK(generic_hits == corpus.size());
}

TEST_CASE("property: nonzero polynomials do not vanish on the ball") {
  auto corpus = polynomial_corpus(100, 17);
  SampleConfig cfg;
  cfg.samples = 40;
  for (const auto& q : corpus) {
    auto pts = [&] {
      for (std::size_t i = 0; i < cfg.samples; ++i) {
        Rng rng(5, static_cast<std::uint64_t>(Stream::Ball), i);
        std::vector<Series> y;
        for (std::size_t c = 0; c < q.variables().size(); ++c) y.push_back(random_integral_element(rng, cfg));
        if (!q.evaluate<Series>(y).is_zero()) return true;
      }
      return false;
    }();
    CHECK(pts);
  }
}

TEST_CASE("property: ring expressions are integral on the set") {
  SampleConfig cfg;
  SetDescriptor ball2 = SetDescriptor::ball(2);
  SetDescriptor module = SetDescriptor::affine({"x1", "x2"}, {{S("1"), S("0")}, {S("eps"), S("eps^(-1)")}});
  for (std::uint64_t i = 0; i < 500; ++i) {
    const SetDescriptor& set = (i % 2) ? module : ball2;
    Rng rng(23, 0, i);
    RingExpr e = random_ring_expr(rng, set, 3, cfg);
    REQUIRE(verify_ring_membership(e, set));
    std::vector<Series> y{random_integral_element(rng, cfg), random_integral_element(rng, cfg)};
    std::vector<Series> x = set.from_unit(y);
    Series v = eval_ring_expr(e, set, x);
    CHECK(v.valuation_lower_bound() >= Value(Rational(0)));
  }
}
