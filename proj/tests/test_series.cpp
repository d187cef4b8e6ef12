#include <doctest.h>

#include "rcvf/errors.hpp"
#include "rcvf/sampling.hpp"
#include "rcvf/series.hpp"
#include "rcvf/text.hpp"

using namespace rcvf;

namespace {

Series S(const char* text) { return parse_series(text); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an rcvf::Error");
  return ErrorCode::InvalidArgument;
}

// Random element at finite precision: exact sample cut at 6 + random offset.
Series random_truncated(Rng& rng, const SampleConfig& cfg) {
  Series x = random_integral_element(rng, cfg).shifted(Rational(rng.between(-2, 2)));
  return x.truncated(Rational(6 + rng.between(0, 3)));
}

}  // namespace

TEST_CASE("field_arith examples") {
  CHECK(S("1+eps") * S("1-eps") == S("1 - eps^2"));
  CHECK(S("eps^(1/2)") + S("eps^(1/2)") == S("2*eps^(1/2)"));
  CHECK(S("3+eps") - S("3") == S("eps"));
}

TEST_CASE("precision bookkeeping") {
  Series a = Series(1) + Series::big_o(Rational(3));          // 1 + O(eps^3)
  Series b = Series::eps(Rational(2)) + Series::big_o(Rational(5));  // eps^2 + O(eps^5)
  CHECK(*(a + b).precision() == Rational(3));
  // (1 + O(e^3))(e^2 + O(e^5)) = e^2 + O(e^min(3+2, 5+0))
  Series p = a * b;
  CHECK(*p.precision() == Rational(5));
  CHECK(p.terms().size() == 1);
  CHECK((Series() * a).is_exact_zero());
}

TEST_CASE("invert") {
  Series inv = S("1 - eps").inverse(5);
  CHECK(inv == S("1 + eps + eps^2 + eps^3 + eps^4 + O(eps^5)"));
  CHECK(S("eps^2").inverse() == S("eps^(-2)"));
  CHECK(code_of([] { (void)Series().inverse(); }) == ErrorCode::DivisionByZero);
  CHECK(code_of([] { (void)Series::big_o(Rational(4)).inverse(); }) == ErrorCode::PrecisionExhausted);
  // Leading exponent negated.
  Series x = S("3*eps^(1/2) + eps - 2*eps^3");
  CHECK(x.inverse().valuation() == Value(Rational(-1, 2)));
}

TEST_CASE("sqrt") {
  CHECK(S("4*eps^2").sqrt() == S("2*eps"));
  CHECK(S("eps^3").sqrt() == S("eps^(3/2)"));
  CHECK(code_of([] { (void)S("2+eps").sqrt(); }) == ErrorCode::NonSquareLeadingCoefficient);
  CHECK(code_of([] { (void)S("-1+eps").sqrt(); }) == ErrorCode::NegativeElement);
  Series r = S("1 + eps").sqrt(8);
  CHECK((r * r).equals_up_to_precision(S("1 + eps")));
  CHECK(*(r * r).precision() == Rational(8));
}

TEST_CASE("compare_order and the OVF axiom instance") {
  CHECK(compare_order(S("eps"), S("1/1000000000")) == Ordering::LT);
  CHECK(compare_order(S("1 - eps"), S("1")) == Ordering::LT);
  CHECK(compare_order(S("eps"), S("0")) == Ordering::GT);
  CHECK(compare_order(S("eps"), S("1")) != Ordering::GT);
  CHECK(S("1").valuation() <= S("eps").valuation());
  CHECK(code_of([] { (void)compare_order(S("1 + O(eps^2)"), S("1")); }) == ErrorCode::PrecisionExhausted);
}

TEST_CASE("valuation and residue") {
  CHECK(S("3*eps^2 + eps^5").valuation() == Value(2));
  CHECK(S("7").valuation() == Value(0));
  CHECK(S("0").valuation().is_top());
  CHECK(S("3 + eps").residue() == 3);
  CHECK(S("eps").residue() == 0);
  CHECK(code_of([] { (void)S("eps^(-1)").residue(); }) == ErrorCode::NotIntegral);
  CHECK(code_of([] { (void)Series::big_o(Rational(2)).valuation(); }) == ErrorCode::PrecisionExhausted);
}

TEST_CASE("value group") {
  CHECK(Value::top() > Value(1000000));
  CHECK((Value::top() + Value(3)).is_top());
  CHECK(Value(Rational(1, 2)) + Value(Rational(1, 2)) == Value(1));
}

TEST_CASE("exponent denominators are capped") {
  set_exponent_denominator_cap(8);
  CHECK(code_of([] { (void)(S("eps^(1/4)") * S("eps^(1/3)")); }) == ErrorCode::ExponentBlowup);
  set_exponent_denominator_cap(64);
  CHECK_NOTHROW((void)(S("eps^(1/4)") * S("eps^(1/3)")));
}

TEST_CASE("sample_ball") {
  SampleConfig cfg;
  cfg.seed = 7;
  auto many = sample_ball(1000, Value(0), cfg);
  bool saw_unit = false, saw_positive = false, saw_rational = false;
  for (const auto& x : many) {
    CHECK(x.valuation() >= Value(0));
    if (!x.is_exact_zero() && x.valuation() == Value(0)) saw_unit = true;
    if (!x.is_exact_zero() && x.valuation() > Value(0)) saw_positive = true;
    if (x.is_exact_rational() && !x.is_exact_zero()) saw_rational = true;
  }
  CHECK(saw_unit);
  CHECK(saw_positive);
  CHECK(saw_rational);
  cfg.seed = 1;
  for (const auto& x : sample_ball(2, Value(2), cfg)) CHECK(x.valuation() >= Value(2));
  CHECK(sample_ball(0, Value(0), cfg).empty());
  CHECK(sample_ball(5, Value(0), cfg) == sample_ball(5, Value(0), cfg));
}

TEST_CASE("field laws at finite precision (1000 random triples)") {
  SampleConfig cfg;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng rng(42, 0, i);
    Series a = random_truncated(rng, cfg), b = random_truncated(rng, cfg), c = random_truncated(rng, cfg);
    CHECK(((a + b) + c).equals_up_to_precision(a + (b + c)));
    CHECK(((a * b) * c).equals_up_to_precision(a * (b * c)));
    CHECK((a * (b + c)).equals_up_to_precision(a * b + a * c));
    CHECK((a + b).equals_up_to_precision(b + a));
    if (a.has_visible_terms()) {
      Series one = a * a.inverse(12);
      CHECK(one.equals_up_to_precision(Series(1)));
    }
  }
}

TEST_CASE("order and valuation laws on samples") {
  SampleConfig cfg;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Rng rng(9, 0, i);
    Series a = random_integral_element(rng, cfg).shifted(Rational(rng.between(-3, 3)));
    Series b = random_integral_element(rng, cfg).shifted(Rational(rng.between(-3, 3)));
    Series c = random_integral_element(rng, cfg);
    // totality
    Ordering ab = compare_order(a, b), ba = compare_order(b, a);
    CHECK((ab == Ordering::EQ) == (ba == Ordering::EQ));
    CHECK((ab == Ordering::LT) == (ba == Ordering::GT));
    // compatibility with addition and with multiplication by positives
    CHECK(compare_order(a + c, b + c) == ab);
    if (c.sign() > 0) CHECK(compare_order(a * c, b * c) == ab);
    // OVF axiom
    if (a.sign() > 0 && ab != Ordering::GT) CHECK(b.valuation() <= a.valuation());
    // valuation laws
    CHECK((a * b).valuation() == a.valuation() + b.valuation());
    Value va = a.valuation(), vb = b.valuation();
    CHECK((a + b).valuation() >= std::min(va, vb));
    if (va != vb) CHECK((a + b).valuation() == std::min(va, vb));
  }
}

TEST_CASE("sums of squares are SOS units: 1/(1+r) is integral") {
  SampleConfig cfg;
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng(11, 0, i);
    Series r;
    long k = rng.between(1, 4);
    for (long j = 0; j < k; ++j) {
      Series s = random_integral_element(rng, cfg).shifted(Rational(rng.between(-3, 3)));
      r += s * s;
    }
    CHECK((Series(1) + r).inverse().valuation() >= Value(0));
  }
}

TEST_CASE("residue is a ring homomorphism on integral pairs") {
  SampleConfig cfg;
  for (std::uint64_t i = 0; i < 500; ++i) {
    Rng rng(13, 0, i);
    Series a = random_integral_element(rng, cfg), b = random_integral_element(rng, cfg);
    CHECK((a + b).residue() == a.residue() + b.residue());
    CHECK((a * b).residue() == a.residue() * b.residue());
  }
}

TEST_CASE("sqrt squares back") {
  SampleConfig cfg;
  int successes = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng(17, 0, i);
    Series a = random_integral_element(rng, cfg);
    a = a * a + random_integral_element(rng, cfg).shifted(Rational(5));
    try {
      Series r = a.sqrt(10);
      CHECK((r * r).equals_up_to_precision(a));
      ++successes;
    } catch (const Error& e) {
      CHECK((e.code() == ErrorCode::NegativeElement || e.code() == ErrorCode::NonSquareLeadingCoefficient));
    }
  }
  CHECK(successes > 100);
}
