#include <doctest.h>

#include "rcvf/corpus.hpp"
#include "rcvf/polyring.hpp"
#include "rcvf/sos.hpp"
#include "rcvf/text.hpp"

using namespace rcvf;

namespace {

ResiduePolynomial R(const char* t) {
  return residue_layer(parse_polynomial(t), Rational(0));
}

std::vector<std::string> strings(const std::vector<ResidueQuotient>& qs) {
  std::vector<std::string> out;
  for (const auto& q : qs) out.push_back(to_string(q.num));
  return out;
}

Rational at(const ResiduePolynomial& q, const std::vector<Rational>& x) {
  return q.evaluate<Rational>(std::span<const Rational>(x));
}

}  // namespace

TEST_CASE("residue_sos_search examples") {
  auto a = residue_sos_search(R("x^2 - 2*x*y + 2*y^2"));
  REQUIRE(a.kind == SOSResult::Kind::SOS);
  CHECK(strings(a.squares) == std::vector<std::string>{"x - y", "y"});

  auto b = residue_sos_search(R("1 + x^2"));
  REQUIRE(b.kind == SOSResult::Kind::SOS);
  CHECK(strings(b.squares) == std::vector<std::string>{"1", "x"});

  auto c = residue_sos_search(R("x^2 + 2*x*y + 2*y^2"));
  REQUIRE(c.kind == SOSResult::Kind::SOS);
  CHECK(strings(c.squares) == std::vector<std::string>{"x + y", "y"});

  auto motzkin = residue_sos_search(R("x^4*y^2 + x^2*y^4 - 3*x^2*y^2 + 1"));
  CHECK(motzkin.kind == SOSResult::Kind::NotSOSInBudget);

  auto neg = residue_sos_search(R("x^2 - 3"));
  REQUIRE(neg.kind == SOSResult::Kind::NegativityWitness);
  CHECK(at(R("x^2 - 3"), neg.point) < 0);

  auto zero = residue_sos_search(ResiduePolynomial());
  CHECK(zero.kind == SOSResult::Kind::SOS);
  CHECK(zero.squares.empty());
}

TEST_CASE("Motzkin becomes SOS with a denominator") {
  SOSBudget bud;
  bud.denominator_degree_cap = 1;
  ResiduePolynomial m = R("x^4*y^2 + x^2*y^4 - 3*x^2*y^2 + 1");
  auto res = residue_sos_search(m, bud);
  REQUIRE(res.kind == SOSResult::Kind::SOS);
  CHECK(verify_residue_sos(m, res.squares));
  CHECK_FALSE(res.squares.front().is_polynomial());
}

TEST_CASE("non-square constants and harder forms") {
  auto a = residue_sos_search(R("3 + 2*x*y + x^2 + y^2"));
  REQUIRE(a.kind == SOSResult::Kind::SOS);
  CHECK(verify_residue_sos(R("3 + 2*x*y + x^2 + y^2"), a.squares));
  ResiduePolynomial quartic = R("x^4 - 2*x^2 + 1 + y^2");
  auto b = residue_sos_search(quartic);
  REQUIRE(b.kind == SOSResult::Kind::SOS);
  CHECK(verify_residue_sos(quartic, b.squares));
  // Needs a nonzero free Gram parameter.
  ResiduePolynomial q = R("x^4 + x^2*y^2 + y^4 - x^3*y - x*y^3 + x^2 + y^2");
  auto c = residue_sos_search(q);
  REQUIRE(c.kind == SOSResult::Kind::SOS);
  CHECK(verify_residue_sos(q, c.squares));
  ResiduePolynomial uni = R("x^8 - x^5 + x^2 - x + 1");
  auto d = residue_sos_search(uni);
  REQUIRE(d.kind == SOSResult::Kind::SOS);
  CHECK(verify_residue_sos(uni, d.squares));
}

TEST_CASE("psd_falsify examples") {
  auto a = psd_falsify(R("x^2 - 3"));
  REQUIRE(a);
  CHECK(*a == std::vector<Rational>{Rational(0)});
  CHECK_FALSE(psd_falsify(R("1 + x^2")));
  auto c = psd_falsify(R("x^3"));
  REQUIRE(c);
  CHECK(*c == std::vector<Rational>{Rational(-1)});
  // Negative only on a thin region.
  auto d = psd_falsify(R("(x^2 - 2)^2 - 1/1000"));
  REQUIRE(d);
  CHECK(at(R("(x^2 - 2)^2 - 1/1000"), *d) < 0);
}

TEST_CASE("verify_residue_sos examples") {
  std::vector<ResiduePolynomial> good{R("x - y"), R("y")};
  CHECK(verify_residue_sos(R("x^2 - 2*x*y + 2*y^2"), good));
  std::vector<ResiduePolynomial> bad{R("x")};
  CHECK_FALSE(verify_residue_sos(R("1 + x^2"), bad));
  CHECK(verify_residue_sos(ResiduePolynomial(), std::vector<ResiduePolynomial>{}));
}

TEST_CASE("rational sums of squares") {
  for (long a = 0; a < 60; ++a)
    for (long b = 1; b < 12; ++b) {
      Rational d(a, b);
      d.canonicalize();
      Rational acc = 0;
      auto parts = rational_sum_of_squares(d);
      CHECK(parts.size() <= 4);
      for (const auto& x : parts) acc += x * x;
      CHECK(acc == d);
    }
}

TEST_CASE("exact LDL") {
  RationalMatrix q{{Rational(1), Rational(2)}, {Rational(2), Rational(1)}};
  auto out = ldl_psd(q);
  REQUIRE_FALSE(out.psd);
  const auto& v = out.negative_direction;
  Rational quad = v[0] * v[0] * q[0][0] + 2 * v[0] * v[1] * q[0][1] + v[1] * v[1] * q[1][1];
  CHECK(quad < 0);
  RationalMatrix semi{{Rational(0), Rational(0)}, {Rational(0), Rational(2)}};
  CHECK(ldl_psd(semi).psd);
  RationalMatrix off{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  CHECK_FALSE(ldl_psd(off).psd);
}

TEST_CASE("property: quadratic-form completeness") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng(53, 0, i);
    std::size_t n = 1 + rng.below(4);
    ResiduePolynomial psd = random_quadratic_form(rng, n, true);
    auto res = residue_sos_search(psd);
    REQUIRE(res.kind == SOSResult::Kind::SOS);
    CHECK(verify_residue_sos(psd, res.squares));

    ResiduePolynomial indef = random_quadratic_form(rng, n, false);
    SampleConfig cfg;
    cfg.seed = i;
    auto pt = psd_falsify(indef, cfg);
    REQUIRE(pt);
    CHECK(at(indef, *pt) < 0);
  }
}

TEST_CASE("property: SOS answers verify and witnesses are negative") {
  std::size_t sos = 0;
  for (std::uint64_t i = 0; i < 60; ++i) {
    Rng rng(59, 0, i);
    std::vector<std::string> vars{"x1", "x2"};
    // Sum of two random squares minus a small random perturbation.
    ResiduePolynomial q;
    for (int k = 0; k < 2; ++k) {
      ResiduePolynomial s(random_rational(rng, 3));
      for (const auto& v : vars)
        for (int e = 1; e <= 2; ++e)
          if (rng.chance(1, 2))
            s += ResiduePolynomial::variable(v).pow(e) * ResiduePolynomial(random_rational(rng, 3));
      q += s * s;
    }
    q += ResiduePolynomial(Rational(rng.between(-2, 2), 4));
    SampleConfig cfg;
    cfg.seed = i;
    auto res = residue_sos_search(q, {}, cfg);
    if (res.kind == SOSResult::Kind::SOS) {
      ++sos;
      CHECK(verify_residue_sos(q, res.squares));
    } else if (res.kind == SOSResult::Kind::NegativityWitness) {
      CHECK(at(q, res.point) < 0);
    }
  }
  CHECK(sos > 20);
}

TEST_CASE("univariate forms with irrational double roots") {
  for (const char* t : {"(x^4 - 2)^2", "(x^2 - 2)^2*(x^2 - 3)^2", "(x^3 - 2)^2*(x^2 + 1)", "(x^2 - x - 1)^2*(x^2 + 1)^2",
                        "(x - 1)^2*(x - 2)^2*(x - 3)^2*(x - 4)^2", "x^8 + 1", "x^4 - x^2 + 1"}) {
    CAPTURE(t);
    auto q = R(t);
    auto r = residue_sos_search(q);
    REQUIRE(r.kind == SOSResult::Kind::SOS);
    CHECK(verify_residue_sos(q, r.squares));
  }
}

TEST_CASE("property: univariate completeness up to degree 8") {
  // Products of squares of random quadratics (often with irrational roots),
  // squared linear factors and positive quadratics.
  const auto x = ResiduePolynomial::variable("x");
  for (std::uint64_t i = 0; i < 150; ++i) {
    Rng rng(83, 0, i);
    ResiduePolynomial f(Rational(1 + static_cast<long>(rng.below(3))));
    unsigned degree = 0;
    while (degree < 2 * (1 + rng.below(4))) {
      const Rational a(rng.between(-3, 3)), b(rng.between(-3, 3));
      switch (rng.below(3)) {
        case 0:
          if (degree <= 4) {
            f *= (x * x + x.scaled(a) + ResiduePolynomial(b)).pow(2);
            degree += 4;
            break;
          }
          [[fallthrough]];
        case 1:
          f *= (x + ResiduePolynomial(a)).pow(2);
          degree += 2;
          break;
        default:
          // x^2 + a x + c with c > a^2 / 4
          f *= x * x + x.scaled(a) + ResiduePolynomial(a * a / Rational(4) + Rational(1 + rng.between(0, 2)));
          degree += 2;
      }
    }
    CAPTURE(to_string(f));
    auto r = residue_sos_search(f);
    REQUIRE(r.kind == SOSResult::Kind::SOS);
    CHECK(verify_residue_sos(f, r.squares));
  }
}
