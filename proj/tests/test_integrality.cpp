#include <doctest.h>

#include "rcvf/corpus.hpp"
#include "rcvf/integrality.hpp"
#include "rcvf/text.hpp"

using namespace rcvf;

namespace {

Series S(const char* t) { return parse_series(t); }
RationalFunction F(const char* t) { return parse_rational_function(t); }

SampleConfig budget(std::size_t samples, std::uint64_t seed = 7) {
  SampleConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("Gauss criterion and the oracle agree on 1/(1+x^2)") {
  SetDescriptor ball = SetDescriptor::ball(1);
  RationalFunction h = F("1/(1+x1^2)");
  CHECK(generic_type_integral(h, ball));
  auto v = pointwise_integral_oracle(h, ball, budget(1000));
  CHECK(v.kind == IntegralityVerdict::Kind::NoCounterexampleFound);
  CHECK(v.samples + v.skipped == 1000);
}

TEST_CASE("x/eps is not integral") {
  SetDescriptor ball = SetDescriptor::ball(1);
  RationalFunction h = F("x1/eps");
  auto g = gauss_verdict(h, ball);
  CHECK(g.kind == IntegralityVerdict::Kind::NotIntegralByGauss);
  CHECK(g.gap == Value(Rational(-1)));
  auto v = pointwise_integral_oracle(h, ball, budget(100));
  REQUIRE(v.kind == IntegralityVerdict::Kind::CounterexampleFound);
  CHECK(v.point[0] == S("1"));
}

TEST_CASE("divergence example (x+eps)/x") {
  SetDescriptor ball = SetDescriptor::ball(1);
  RationalFunction h = F("(x1+eps)/x1");
  CHECK(generic_type_integral(h, ball));
  auto v = pointwise_integral_oracle(h, ball, budget(2000));
  REQUIRE(v.kind == IntegralityVerdict::Kind::CounterexampleFound);
  CHECK(v.point[0] == S("eps^2"));
  CHECK(v.value == S("1 + eps^(-1)"));
  CHECK(v.value.valuation() == Value(Rational(-1)));
}

TEST_CASE("strict constraints are enforced by rejection") {
  SetDescriptor cut = SetDescriptor::ball(1).with_strict({parse_polynomial("x1")});
  CHECK_THROWS_AS(gauss_verdict(F("x1"), cut), Error);
  // 1/x is non-integral at x = eps, which satisfies x > 0.
  auto v = pointwise_integral_oracle(F("1/x1"), cut, budget(200));
  REQUIRE(v.kind == IntegralityVerdict::Kind::CounterexampleFound);
  CHECK(v.point[0].sign() > 0);
  CHECK(v.skipped > 0);
}

TEST_CASE("module_pullback examples") {
  SetDescriptor radius1 = SetDescriptor::affine({"x"}, {{S("0")}, {S("eps")}});
  CHECK(module_pullback(F("x/eps"), radius1).equals(F("x")));
  SetDescriptor ident = SetDescriptor::affine({"x"}, {{S("0")}, {S("1")}});
  CHECK(module_pullback(F("(x+eps)/x"), ident).equals(F("(x+eps)/x")));
  SetDescriptor shifted = SetDescriptor::affine({"x"}, {{S("1")}, {S("eps")}});
  RationalFunction pulled = module_pullback(F("x - 1"), shifted);
  CHECK(pulled.equals(F("eps*x")));
  CHECK(gauss_valuation(pulled) == Value(Rational(1)));
  CHECK(generic_type_integral(F("x/eps"), radius1));
}

TEST_CASE("infinitesimal_decompose examples") {
  SetDescriptor ball = SetDescriptor::ball(1);
  auto a = infinitesimal_decompose(F("eps*x1^2"), ball);
  CHECK(a.m == S("eps"));
  CHECK(a.g.equals(F("x1^2")));
  auto b = infinitesimal_decompose(F("eps^(1/2)*(1+x1)"), ball);
  CHECK(b.m == S("eps^(1/2)"));
  CHECK(b.g.equals(F("1+x1")));
  try {
    infinitesimal_decompose(F("x1"), ball);
    FAIL("expected NotInfinitesimalDefinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInfinitesimalDefinite);
  }
}

TEST_CASE("property: infinitesimal round trip") {
  SampleConfig cfg;
  std::vector<std::string> vars{"x1", "x2"};
  SetDescriptor ball = SetDescriptor::ball(2);
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng(31, 0, i);
    Polynomial num = random_polynomial(rng, vars, 3, 4, cfg, 0);
    Polynomial den = random_polynomial(rng, vars, 2, 3, cfg, 0);
    Rational shift(1 + static_cast<long>(rng.below(4)), 1 + static_cast<long>(rng.below(2)));
    num = shift_coefficients(num, shift - gauss_valuation(num).rational() + gauss_valuation(den).rational());
    RationalFunction h{num, den};
    auto split = infinitesimal_decompose(h, ball);
    CHECK(split.m.valuation() > Value(Rational(0)));
    CHECK(gauss_valuation(split.g) == Value(Rational(0)));
    CHECK(h.equals(split.g.scaled(split.m)));
  }
}

TEST_CASE("property: Gauss verdicts on polynomials are sound") {
  auto corpus = polynomial_corpus(100, 41);
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const Polynomial& q = corpus[k];
    SetDescriptor set = SetDescriptor::ball(q.variables());
    if (generic_type_integral(q, set)) {
      auto v = pointwise_integral_oracle(q, set, budget(1000, k));
      CHECK(v.kind == IntegralityVerdict::Kind::NoCounterexampleFound);
    } else {
      auto b = generic_residue_probe(q, set, k);
      REQUIRE(b.has_value());
      CHECK(q.evaluate<Series>(*b).valuation() < Value(Rational(0)));
    }
  }
}

TEST_CASE("property: pullback coherence") {
  SampleConfig cfg;
  std::vector<std::string> vars{"x1", "x2"};
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng(47, 0, i);
    Polynomial num = random_polynomial(rng, vars, 3, 4, cfg);
    Polynomial den = random_polynomial(rng, vars, 1, 2, cfg) + Polynomial(Series(7));
    RationalFunction h{num, den};
    AffineModuleMap map;
    for (int c = 0; c < 2; ++c) {
      map.centers.push_back(random_integral_element(rng, cfg).shifted(Rational(rng.between(-2, 0))));
      Series scale = Series::monomial(random_rational(rng, 4, false), Rational(rng.between(-2, 3)));
      map.scales.push_back(scale);
    }
    SetDescriptor set = SetDescriptor::affine(vars, map);
    RationalFunction pulled = module_pullback(h, set);
    std::vector<Series> y{random_integral_element(rng, cfg), random_integral_element(rng, cfg)};
    std::vector<Series> b = set.from_unit(y);
    try {
      Series direct = poly_eval(h, vars, b);
      Series back = poly_eval(pulled, vars, set.to_unit(b));
      CHECK(direct.equals_up_to_precision(back));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DivisionByZero);
    }
  }
}
