#include <doctest.h>

#include "rcvf/certificate.hpp"
#include "rcvf/corpus.hpp"
#include "rcvf/text.hpp"

using namespace rcvf;

namespace {

Series S(const char* t) { return parse_series(t); }
Polynomial P(const char* t) { return parse_polynomial(t); }
RationalFunction F(const char* t) { return parse_rational_function(t); }

SOSExpr sos(std::initializer_list<const char*> parts) {
  SOSExpr s;
  for (const char* p : parts) s.summands.push_back(F(p));
  return s;
}

NonnegCertificate trivial(SOSExpr r) {
  NonnegCertificate c;
  c.r = std::move(r);
  c.m = Series();
  c.h = RationalFunction(Series());
  return c;
}

// p(b) >= 0 and h(b) integral at sampled on-set points.
void check_sound(const Polynomial& p, const NonnegCertificate& cert, const SetDescriptor& set, std::uint64_t seed) {
  SampleConfig cfg;
  cfg.samples = 1000;
  cfg.seed = seed;
  PointSampler sampler(set, cfg, Stream::Oracle);
  Polynomial aligned = p.with_variables(set.variables());
  std::size_t checked = 0;
  for (std::size_t i = 0; i < sampler.budget(); ++i) {
    auto x = sampler.point(i);
    if (!x) continue;
    Series v = aligned.evaluate<Series>(*x);
    if (v.has_visible_terms()) CHECK(v.sign() >= 0);
    try {
      Series hv = poly_eval(cert.h, set.variables(), *x);
      CHECK(hv.valuation_lower_bound() >= Value(Rational(0)));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DivisionByZero);
    }
    ++checked;
  }
  CHECK(checked > 500);
}

}  // namespace

TEST_CASE("verify_nonneg_certificate examples") {
  SetDescriptor ball = SetDescriptor::ball(std::vector<std::string>{"x"});
  NonnegCertificate good;
  good.r = sos({"1"});
  good.m = S("eps");
  good.h = F("x^2/(1 - eps*x^2)");
  good.witness.numerator = RingExpr::product({RingExpr::generator(0), RingExpr::generator(0)});
  good.witness.denominator =
      TElement{S("eps"), RingExpr::product({RingExpr::constant(S("-1")), good.witness.numerator})};
  CHECK(verify_nonneg_certificate(P("1 - eps*x^2"), good, ball).ok);

  CHECK(verify_nonneg_certificate(P("x^2 + eps"), trivial(sos({"x", "eps^(1/2)"})), ball).ok);

  VerifyResult bad = verify_nonneg_certificate(P("eps - x^2"), trivial(sos({"1"})), ball);
  CHECK_FALSE(bad.ok);
  CHECK(bad.reason.find("identity") != std::string::npos);
  auto neg = find_negative_point(P("eps - x^2"), ball, SampleConfig{});
  REQUIRE(neg);
  CHECK(neg->first[0] == S("1"));
}

TEST_CASE("verifier rejects broken clauses") {
  SetDescriptor ball = SetDescriptor::ball(std::vector<std::string>{"x"});
  NonnegCertificate c;
  c.r = sos({"1"});
  c.m = S("1");  // not infinitesimal
  c.h = F("-eps*x^2/(1 - eps*x^2)");
  CHECK_FALSE(verify_nonneg_certificate(P("1 - eps*x^2"), c, ball).ok);

  // Correct identity, but h = x^2/eps is not witnessed by a ring element.
  NonnegCertificate d;
  d.r = sos({"1"});
  d.m = S("eps^2");
  d.h = F("x^2/(eps - eps^2*x^2)");
  d.witness.numerator = RingExpr::constant(S("eps^(-1)"));
  CHECK_FALSE(verify_nonneg_certificate(P("1 - eps*x^2"), d, ball).ok);

  // Monic witness: h = x satisfies h^2 - x^2 = 0.
  NonnegCertificate e = trivial(sos({"x"}));
  e.h = F("x");
  RingExpr minus_x2 = RingExpr::product({RingExpr::constant(S("-1")), RingExpr::generator(0), RingExpr::generator(0)});
  TElement one{Series(), RingExpr::constant(Series())};
  e.witness.monic = std::vector<WitnessFraction>{{minus_x2, one}, {RingExpr::constant(Series()), one}};
  CHECK(verify_nonneg_certificate(P("x^2"), e, ball).ok);
  e.h = F("x + 1");
  CHECK_FALSE(verify_nonneg_certificate(P("x^2"), e, ball).ok);
}

TEST_CASE("generate_ball_certificate examples") {
  SetDescriptor ball1 = SetDescriptor::ball(std::vector<std::string>{"x"});
  auto a = generate_ball_certificate(P("1 - eps*x^2"), ball1);
  REQUIRE(a.kind == GenerationResult::Kind::Certificate);
  REQUIRE(a.certificate->r.summands.size() == 1);
  CHECK(a.certificate->r.summands[0].equals(F("1")));
  CHECK(a.certificate->m == S("eps"));
  CHECK(to_string(a.certificate->h) == "(x^2)/(1 - eps*x^2)");

  auto b = generate_ball_certificate(P("eps - x^2"), ball1);
  REQUIRE(b.kind == GenerationResult::Kind::NegativityWitness);
  CHECK(b.point[0] == S("1"));
  CHECK(b.value.sign() < 0);

  SetDescriptor ball2 = SetDescriptor::ball(std::vector<std::string>{"x", "y"});
  auto c = generate_ball_certificate(P("x^2 + 2*x*y + 2*y^2"), ball2);
  REQUIRE(c.kind == GenerationResult::Kind::Certificate);
  CHECK(c.certificate->m.is_exact_zero());
  REQUIRE(c.certificate->r.summands.size() == 2);
  CHECK(c.certificate->r.summands[0].equals(F("x + y")));
  CHECK(c.certificate->r.summands[1].equals(F("y")));

  auto d = generate_ball_certificate(P("x - 1"), ball1);
  CHECK(d.kind == GenerationResult::Kind::NegativityWitness);
}

TEST_CASE("generation corpus round trip and soundness") {
  std::uint64_t seed = 0;
  for (const auto& c : certificate_corpus()) {
    CAPTURE(c.name);
    auto res = generate_ball_certificate(c.p, c.set);
    REQUIRE(res.kind == GenerationResult::Kind::Certificate);
    CHECK(verify_nonneg_certificate(c.p, *res.certificate, c.set).ok);
    check_sound(c.p, *res.certificate, c.set, ++seed);
  }
}

TEST_CASE("non-SOS residue forms are not certified") {
  SetDescriptor ball2 = SetDescriptor::ball(std::vector<std::string>{"x", "y"});
  auto res = generate_ball_certificate(P("x^4*y^2 + x^2*y^4 - 3*x^2*y^2 + 1"), ball2);
  CHECK(res.kind == GenerationResult::Kind::Unknown);
  CHECK_FALSE(res.certificate.has_value());
}

TEST_CASE("Dickmann certificates") {
  SetDescriptor ball = SetDescriptor::ball(std::vector<std::string>{"x", "y"});
  DickmannCertificate one{{{S("eps"), P("x"), Series(), Polynomial()}}};
  CHECK(verify_dickmann_certificate(P("1 + eps*x^2"), one).ok);
  DickmannCertificate two{{{S("eps"), P("x"), Series(), Polynomial()}, {S("eps"), P("y"), Series(), Polynomial()}}};
  CHECK(verify_dickmann_certificate(P("2 + eps*x^2 + eps*y^2"), two).ok);
  try {
    verify_dickmann_certificate(P("eps^(-1) + x^2"), one);
    FAIL("expected CoefficientsNotIntegral");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoefficientsNotIntegral);
  }
  CHECK_FALSE(verify_dickmann_certificate(P("1 + eps*x^2"), two).ok);
}

TEST_CASE("property: Dickmann construction, mutation and soundness") {
  std::vector<std::string> vars{"x1", "x2"};
  SetDescriptor ball = SetDescriptor::ball(vars);
  SampleConfig cfg;
  for (std::uint64_t i = 0; i < 50; ++i) {
    Rng rng(61, 0, i);
    auto [p, cert] = random_dickmann(rng, vars, cfg);
    REQUIRE(verify_dickmann_certificate(p, cert).ok);
    CHECK_FALSE(verify_dickmann_certificate(p, mutate_dickmann(rng, cert, vars)).ok);
    SampleConfig pts;
    pts.samples = 200;
    pts.seed = i;
    PointSampler sampler(ball, pts, Stream::Oracle);
    for (std::size_t k = 0; k < sampler.budget(); ++k) {
      Series v = p.evaluate<Series>(*sampler.point(k));
      CHECK(v.sign() > 0);
    }
  }
}

TEST_CASE("check_general_characterization examples") {
  SetDescriptor ball = SetDescriptor::ball(std::vector<std::string>{"x"});
  CharacterizationConfig cfg;
  cfg.c_values = 20;
  auto a = check_general_characterization(P("x^2"), ball, cfg);
  CHECK(a.verdict == CharacterizationReport::Verdict::ConsistentNonneg);
  CHECK(a.samples == 500);
  CHECK(a.c_tested == 20);
  CHECK(a.coherent());

  auto b = check_general_characterization(P("eps - x^2"), ball);
  REQUIRE(b.verdict == CharacterizationReport::Verdict::NegativityWitness);
  CHECK(b.point[0] == S("1"));
  REQUIRE(b.c.has_value());
  // c^2 = 1/(1 - eps) up to the working precision.
  CHECK(((*b.c * *b.c) * (Series(1) - S("eps")) - Series(1)).is_zero());
  CHECK(b.nonintegral_found);
  CHECK(b.coherent());

  auto c = check_general_characterization(Polynomial(), ball);
  CHECK(c.verdict == CharacterizationReport::Verdict::ConsistentNonneg);
  CHECK(c.coherent());
}

TEST_CASE("non-square negative constants are an obstruction in this field") {
  SetDescriptor ball = SetDescriptor::ball(std::vector<std::string>{"x"});
  auto r = check_general_characterization(P("-2"), ball);
  CHECK(r.negative_found);
  CHECK_FALSE(r.c.has_value());
  CHECK_FALSE(r.obstruction.empty());
  CHECK_FALSE(r.nonintegral_found);
}

TEST_CASE("property: characterization coherence on the mixed corpus") {
  for (const auto& c : characterization_corpus()) {
    CAPTURE(c.name);
    auto r = check_general_characterization(c.p, c.set);
    CHECK(r.coherent());
  }
}
