#include "rcvf/corpus.hpp"

#include "rcvf/set.hpp"
#include "rcvf/text.hpp"

namespace rcvf {

Polynomial random_polynomial(Rng& rng, const std::vector<std::string>& vars, unsigned max_degree,
                             std::size_t max_terms, const SampleConfig& cfg, long max_shift) {
  const std::size_t n = vars.size();
  for (;;) {
    std::vector<std::pair<Monomial, Series>> terms;
    const std::size_t count = 1 + rng.below(max_terms);
    for (std::size_t t = 0; t < count; ++t) {
      Monomial m{std::vector<unsigned>(n, 0)};
      unsigned budget = static_cast<unsigned>(rng.below(max_degree + 1));
      for (unsigned k = 0; k < budget && n > 0; ++k) ++m.exps[rng.below(n)];
      Series c = random_integral_element(rng, cfg);
      if (c.is_exact_zero()) c = Series(random_rational(rng, 5, false));
      terms.emplace_back(m, c.shifted(Rational(rng.between(-max_shift, max_shift))));
    }
    Polynomial p = Polynomial::from_terms(vars, terms);
    if (!p.vanishes()) return p;
  }
}

std::vector<Polynomial> polynomial_corpus(std::size_t size, std::uint64_t seed) {
  std::vector<Polynomial> out;
  SampleConfig cfg;
  cfg.seed = seed;
  for (std::size_t i = 0; out.size() < size; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(Stream::Corpus), i);
    std::size_t n = 1 + rng.below(3);
    out.push_back(random_polynomial(rng, SetDescriptor::ball(n).variables(), 4, 5, cfg));
  }
  return out;
}

RingExpr random_ring_expr(Rng& rng, const SetDescriptor& set, unsigned depth, const SampleConfig& cfg) {
  const std::size_t n = set.dimension();
  std::uint64_t pick = depth == 0 ? rng.below(3) : rng.below(6);
  switch (pick) {
    case 0: {
      Series c = random_integral_element(rng, cfg);
      return RingExpr::constant(c);
    }
    case 1:
      return n == 0 ? RingExpr::constant(Series(1)) : RingExpr::generator(rng.below(n));
    case 2: {
      SOSExpr s;
      std::size_t k = 1 + rng.below(2);
      for (std::size_t i = 0; i < k; ++i) {
        Polynomial p = random_polynomial(rng, set.variables(), 2, 3, cfg, 2);
        s.summands.emplace_back(p);
      }
      return RingExpr::iord(std::move(s));
    }
    case 3:
    case 4: {
      std::vector<RingExpr> args;
      std::size_t k = 2 + rng.below(2);
      for (std::size_t i = 0; i < k; ++i) args.push_back(random_ring_expr(rng, set, depth - 1, cfg));
      return RingExpr::sum(std::move(args));
    }
    default: {
      std::vector<RingExpr> args;
      std::size_t k = 2 + rng.below(2);
      for (std::size_t i = 0; i < k; ++i) args.push_back(random_ring_expr(rng, set, depth - 1, cfg));
      return RingExpr::product(std::move(args));
    }
  }
}

ResiduePolynomial random_quadratic_form(Rng& rng, std::size_t n, bool psd) {
  std::vector<std::string> vars = SetDescriptor::ball(n).variables();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n, Rational(0)));
  if (psd) {
    std::size_t rows = 1 + rng.below(n + 1);
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<Rational> b(n);
      for (auto& v : b) v = Rational(rng.between(-3, 3));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] += b[i] * b[j];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        a[i][j] = Rational(rng.between(-4, 4));
        a[j][i] = a[i][j];
      }
    // Force indefiniteness: a negative diagonal entry, or a 2x2 block with
    // negative determinant when the caller wants a mixed sign form.
    std::size_t i = rng.below(n);
    a[i][i] = Rational(-1 - rng.between(0, 3));
    if (n > 1) {
      std::size_t j = (i + 1) % n;
      a[j][j] = Rational(1 + rng.between(0, 3));
    }
  }
  ResiduePolynomial q;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      q += ResiduePolynomial::variable(vars[i]) * ResiduePolynomial::variable(vars[j]) * ResiduePolynomial(a[i][j]);
  return q.with_variables(merge_variables(q.variables(), vars));
}

namespace {

CorpusCase on_ball(const char* name, const char* text) {
  Polynomial p = trim_variables(parse_polynomial(text));
  return {name, p, SetDescriptor::ball(p.variables())};
}

}  // namespace

std::vector<CorpusCase> certificate_corpus() {
  std::vector<CorpusCase> out{
      on_ball("one-term", "1 - eps*x^2"),
      on_ball("binary form", "x^2 + 2*x*y + 2*y^2"),
      on_ball("layers", "1 + eps*x^2 + eps^3*y^4"),
      on_ball("unit", "1 + x^2"),
      on_ball("cross term", "2 - eps*x*y"),
      on_ball("two scales", "x^2 + eps*y^2"),
      on_ball("quartic tail", "1 + x^2 - eps*x^4"),
      on_ball("shifted square", "(x - y)^2 + eps"),
      on_ball("form plus tail", "3 + 2*x*y + x^2 + y^2 - eps*x^4"),
  };
  Polynomial p = parse_polynomial("eps^2 - eps*(x - 1)^2");
  out.push_back({"module", p, SetDescriptor::affine({"x"}, {{Series(1)}, {Series::eps()}})});
  return out;
}

std::vector<CorpusCase> characterization_corpus() {
  std::vector<CorpusCase> out;
  for (const char* t : {"x^2", "eps - x^2", "0", "1 + x^2", "x - 1", "x^2 + y^2 - eps", "x*y", "1 - eps*x^2",
                        "x^2 - 2*x*y + y^2", "-1", "eps*x - x^2", "x^4 - x^2 + 1", "x^3", "(x - 1/2)^2",
                        "x^2*y^2 + 1/4 - x*y", "y - x^2", "eps^2 + x^2*y^2", "x^2 - eps^2", "1 - x^2",
                        "x^2 + 2*x*y + 2*y^2 - eps"}) {
    Polynomial p = trim_variables(parse_polynomial(t));
    std::vector<std::string> vars = p.variables();
    if (vars.empty()) vars = {"x"};
    out.push_back({t, p, SetDescriptor::ball(vars)});
  }
  return out;
}

std::pair<Polynomial, DickmannCertificate> random_dickmann(Rng& rng, const std::vector<std::string>& vars,
                                                           const SampleConfig& cfg) {
  DickmannCertificate cert;
  Polynomial p;
  const std::size_t count = 1 + rng.below(3);
  auto infinitesimal = [&] { return Series::monomial(random_rational(rng, 4, false), Rational(rng.between(1, 3))); };
  for (std::size_t i = 0; i < count; ++i) {
    DickmannTerm t;
    t.m1 = infinitesimal();
    t.q1 = random_polynomial(rng, vars, 2, 3, cfg, 0);
    if (rng.chance(1, 3)) {
      // (1 + m q^2) / (1 + m q^2) = 1
      t.m2 = t.m1;
      t.q2 = t.q1;
      p += Polynomial(Series(1));
    } else {
      t.m2 = Series();
      t.q2 = Polynomial();
      p += Polynomial(Series(1)) + (t.q1 * t.q1).scaled(t.m1);
    }
    cert.terms.push_back(std::move(t));
  }
  return {p.with_variables(merge_variables(p.variables(), vars)), cert};
}

DickmannCertificate mutate_dickmann(Rng& rng, const DickmannCertificate& cert, const std::vector<std::string>& vars) {
  DickmannCertificate out = cert;
  DickmannTerm& t = out.terms[rng.below(out.terms.size())];
  Polynomial bump = Polynomial::variable(vars[rng.below(vars.size())]);
  switch (rng.below(3)) {
    case 0:
      // Changing m only matters when q1 is nonzero.
      if (!t.q1.vanishes()) {
        t.m1 = t.m1 + Series::eps(Rational(rng.between(1, 3)));
        break;
      }
      [[fallthrough]];
    case 1:
      // q1 + x can square to the same thing when q1 = -x/2.
      if ((t.q1 + bump).pow(2).equals(t.q1.pow(2)))
        bump = bump.scaled(Series(2));
      t.q1 = t.q1 + bump;
      break;
    default:
      t.m1 = Series(1);  // not infinitesimal
      break;
  }
  return out;
}

}  // namespace rcvf
