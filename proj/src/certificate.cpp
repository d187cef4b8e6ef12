#include "rcvf/certificate.hpp"

#include <algorithm>

#include "rcvf/text.hpp"

namespace rcvf {

namespace {

bool uses_only(const std::vector<std::string>& used, const std::vector<std::string>& vars) {
  return std::all_of(used.begin(), used.end(),
                     [&](const std::string& v) { return std::find(vars.begin(), vars.end(), v) != vars.end(); });
}

bool uses_only(const RationalFunction& f, const std::vector<std::string>& vars) {
  return uses_only(f.num.used_variables(), vars) && uses_only(f.den.used_variables(), vars);
}

bool infinitesimal(const Series& m) {
  if (m.is_exact_zero()) return true;
  return m.has_visible_terms() && m.valuation() > Value(Rational(0));
}

RationalFunction witness_value(const WitnessFraction& w, const SetDescriptor& set) {
  RationalFunction num = w.num.to_rational_function(set);
  RationalFunction den = w.den.to_rational_function(set);
  if (den.num.vanishes()) throw Error(ErrorCode::DivisionByZero, "witness denominator is identically zero");
  return num / den;
}

// Rewrites a function of polydisc coordinates y in set coordinates x, using
// y = (x - center) / scale.
RationalFunction to_set_coordinates(const RationalFunction& f, const SetDescriptor& set) {
  if (set.is_polydisc()) return f;
  const AffineModuleMap& map = *set.affine_map();
  std::vector<Series> centers, scales;
  for (std::size_t i = 0; i < map.centers.size(); ++i) {
    Series inv = map.scales[i].inverse();
    centers.push_back(-(map.centers[i] * inv));
    scales.push_back(inv);
  }
  return affine_substitute(f, set.variables(), centers, scales);
}

bool negative(const Series& v) {
  try {
    return v.sign() < 0;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PrecisionExhausted) throw;
    return false;
  }
}

// eps^shift times the sum of the lifted squares.
Polynomial lifted_square_sum(const std::vector<ResidueQuotient>& squares, const Rational& shift,
                             const std::vector<std::string>& vars) {
  Polynomial acc = Polynomial().with_variables(vars);
  for (const auto& t : squares) {
    Polynomial l = lift(t.num);
    acc += l * l;
  }
  return shift_coefficients(acc, shift).with_variables(vars);
}

bool all_polynomial(const std::vector<ResidueQuotient>& squares) {
  return std::all_of(squares.begin(), squares.end(), [](const ResidueQuotient& t) {
    return t.den.is_constant() && t.den.constant_term() == Rational(1);
  });
}

NonnegCertificate plain_sos_certificate(std::vector<RationalFunction> r) {
  NonnegCertificate cert;
  if (r.empty()) r.emplace_back(Series());
  cert.r.summands = std::move(r);
  cert.m = Series();
  cert.h = RationalFunction(Series());
  return cert;
}

// Layered SOS: p = sum over layers of eps^g_k * (residue SOS)_k with nothing
// left over. Works in polydisc coordinates.
std::optional<std::vector<RationalFunction>> peel(const Polynomial& P, const GenerationConfig& config) {
  const auto& vars = P.variables();
  Polynomial rest = P;
  std::vector<RationalFunction> r;
  for (unsigned layer = 0; layer < config.depth; ++layer) {
    if (rest.vanishes()) return r;
    Rational g = gauss_valuation(rest).rational();
    ResiduePolynomial bar = residue_layer(rest, g).with_variables(vars);
    SOSResult res = residue_sos_search(bar, config.sos, config.sampling);
    if (res.kind != SOSResult::Kind::SOS) return std::nullopt;
    Series c = Series::eps(g / 2);
    for (const auto& t : res.squares) r.push_back(lift(t).scaled(c));
    if (!all_polynomial(res.squares)) {
      SOSExpr s{r};
      if (verify_sos_expression(RationalFunction(P), s)) return r;
      return std::nullopt;
    }
    rest = (rest - lifted_square_sum(res.squares, g, vars)).with_variables(vars);
  }
  if (rest.vanishes()) return r;
  return std::nullopt;
}

}  // namespace

VerifyResult verify_nonneg_certificate(const Polynomial& p, const NonnegCertificate& cert, const SetDescriptor& set) {
  auto fail = [](std::string why) { return VerifyResult{false, std::move(why)}; };
  const auto& vars = set.variables();
  if (!uses_only(p.used_variables(), vars)) return fail("p uses variables outside the set");
  if (cert.r.summands.empty()) return fail("r is empty");
  for (const auto& s : cert.r.summands) {
    if (s.den.vanishes()) return fail("r has a zero denominator");
    if (!uses_only(s, vars)) return fail("r uses variables outside the set");
  }
  if (cert.h.den.vanishes()) return fail("h has a zero denominator");
  if (!uses_only(cert.h, vars)) return fail("h uses variables outside the set");

  if (!infinitesimal(cert.m)) return fail("m is not infinitesimal");

  try {
    RationalFunction lhs = RationalFunction(p) * (RationalFunction(Series(1)) + cert.h.scaled(cert.m));
    if (!lhs.equals(cert.r.value())) return fail("identity p*(1+m*h) = sum r^2 fails");

    const IntegralityWitness& w = cert.witness;
    if (!verify_ring_membership(w.numerator, set)) return fail("witness numerator is not in the ring");
    if (!verify_t_element(w.denominator, set)) return fail("witness denominator is not a T-element");
    if (!w.monic) {
      RationalFunction q = witness_value({w.numerator, w.denominator}, set);
      if (!cert.h.equals(q)) return fail("h differs from the witness quotient");
    } else {
      if (w.monic->empty()) return fail("monic polynomial has degree 0");
      for (const auto& c : *w.monic)
        if (!verify_ring_membership(c.num, set) || !verify_t_element(c.den, set))
          return fail("monic coefficient is not in the localized ring");
      const std::size_t d = w.monic->size();
      RationalFunction power(Series(1));
      RationalFunction acc;
      for (std::size_t i = 0; i < d; ++i) {
        acc = acc + witness_value((*w.monic)[i], set) * power;
        power = power * cert.h;
      }
      acc = acc + power;
      if (!acc.num.vanishes()) return fail("monic identity fails");
    }
  } catch (const Error& e) {
    return fail(std::string("error: ") + e.what());
  }
  return {true, ""};
}

VerifyResult verify_dickmann_certificate(const Polynomial& p, const DickmannCertificate& cert) {
  for (const auto& [m, c] : p.terms())
    if (c.valuation_lower_bound() < Value(Rational(0)))
      throw Error(ErrorCode::CoefficientsNotIntegral, "coefficient " + c.to_string() + " is not integral");
  auto fail = [](std::string why) { return VerifyResult{false, std::move(why)}; };
  if (cert.terms.empty()) return fail("no terms");
  auto integral = [](const Polynomial& q) {
    for (const auto& [m, c] : q.terms())
      if (c.valuation_lower_bound() < Value(Rational(0))) return false;
    return true;
  };
  RationalFunction acc;
  for (const auto& t : cert.terms) {
    if (!infinitesimal(t.m1) || !infinitesimal(t.m2)) return fail("m is not infinitesimal");
    if (!integral(t.q1) || !integral(t.q2)) return fail("q has a non-integral coefficient");
    Polynomial num = Polynomial(Series(1)) + (t.q1 * t.q1).scaled(t.m1);
    Polynomial den = Polynomial(Series(1)) + (t.q2 * t.q2).scaled(t.m2);
    acc = acc + RationalFunction(num, den);
  }
  if (!acc.equals(RationalFunction(p))) return fail("identity fails");
  return {true, ""};
}

const char* generation_kind_name(GenerationResult::Kind k) {
  switch (k) {
    case GenerationResult::Kind::Certificate: return "Certificate";
    case GenerationResult::Kind::NegativityWitness: return "NegativityWitness";
    case GenerationResult::Kind::CandidateWithoutWitness: return "CandidateWithoutWitness";
    case GenerationResult::Kind::Unknown: return "Unknown";
  }
  return "?";
}

std::optional<std::pair<std::vector<Series>, Series>> find_negative_point(const Polynomial& p0,
                                                                          const SetDescriptor& set,
                                                                          const SampleConfig& config) {
  const auto& vars = set.variables();
  Polynomial p = p0.with_variables(vars);
  PointSampler sampler(set, config, Stream::Falsify);
  for (std::size_t i = 0; i < sampler.budget(); ++i) {
    auto x = sampler.point(i);
    if (!x) continue;
    Series v = p.evaluate<Series>(*x);
    if (negative(v)) return std::make_pair(std::move(*x), v);
  }
  // Negative points of the leading residue form stay negative after lifting.
  Polynomial P = module_pullback(p, set).with_variables(vars);
  if (P.vanishes()) return std::nullopt;
  Rational g = gauss_valuation(P).rational();
  if (auto y = psd_falsify(residue_layer(P, g).with_variables(vars), config)) {
    std::vector<Series> ys(y->begin(), y->end());
    std::vector<Series> x = set.from_unit(ys);
    bool ok = true;
    try {
      ok = set.satisfies_constraints(x);
    } catch (const Error&) {
      ok = false;
    }
    if (ok) {
      Series v = p.evaluate<Series>(x);
      if (negative(v)) return std::make_pair(std::move(x), v);
    }
  }
  return std::nullopt;
}

GenerationResult generate_ball_certificate(const Polynomial& p0, const SetDescriptor& set,
                                           const GenerationConfig& config) {
  if (set.has_strict_constraints())
    throw Error(ErrorCode::InvalidArgument, "certificate generation needs a polydisc or affine module");
  const auto& vars = set.variables();
  Polynomial p = p0.with_variables(vars);
  GenerationResult out;

  if (auto neg = find_negative_point(p, set, config.sampling)) {
    out.kind = GenerationResult::Kind::NegativityWitness;
    out.point = std::move(neg->first);
    out.value = std::move(neg->second);
    return out;
  }

  Polynomial P = module_pullback(p, set).with_variables(vars);
  out.gauss = gauss_valuation(P);
  auto finish = [&](NonnegCertificate cert) {
    VerifyResult v = verify_nonneg_certificate(p, cert, set);
    out.r = cert.r;
    out.m = cert.m;
    out.h = cert.h;
    if (v) {
      out.kind = GenerationResult::Kind::Certificate;
      out.certificate = std::move(cert);
    } else {
      out.kind = GenerationResult::Kind::CandidateWithoutWitness;
      out.note = "witness rejected: " + v.reason;
    }
    return out;
  };
  auto to_x = [&](std::vector<RationalFunction> fs) {
    for (auto& f : fs) f = to_set_coordinates(f, set);
    return fs;
  };

  if (out.gauss.is_top()) return finish(plain_sos_certificate({}));
  const Rational g = out.gauss.rational();
  // Gamma = Q here, so g/2 always exists; kept as an explicit check.
  out.gauss_in_2gamma = true;
  const Series c = Series::eps(g / 2);

  if (auto layers = peel(P, config)) return finish(plain_sos_certificate(to_x(*layers)));

  ResiduePolynomial bar = residue_layer(P, g).with_variables(vars);
  SOSResult whole = residue_sos_search(bar, config.sos, config.sampling);
  if (whole.kind == SOSResult::Kind::NegativityWitness) {
    std::vector<Series> ys(whole.point.begin(), whole.point.end());
    out.kind = GenerationResult::Kind::NegativityWitness;
    out.point = set.from_unit(ys);
    out.value = p.evaluate<Series>(out.point);
    return out;
  }
  if (whole.kind != SOSResult::Kind::SOS) {
    out.kind = GenerationResult::Kind::Unknown;
    out.note = "leading residue form is not SOS within budget";
    return out;
  }

  // Split bar = kappa + sum t_i^2 with kappa > 0 rational.
  const Rational kappa0 = bar.constant_term();
  std::optional<Rational> kappa;
  std::vector<ResidueQuotient> tail;
  if (sgn(kappa0) > 0) {
    for (long frac : {1L, 2L, 4L, 8L, 16L}) {
      Rational k = kappa0 / frac;
      SOSBudget b = config.sos;
      b.denominator_degree_cap = 0;
      SOSResult res = residue_sos_search(bar - ResiduePolynomial(k), b, config.sampling);
      if (res.kind == SOSResult::Kind::SOS && all_polynomial(res.squares)) {
        kappa = k;
        tail = res.squares;
        break;
      }
    }
  }

  const Polynomial lifted = shift_coefficients(lift(bar), g).with_variables(vars);
  const Polynomial q = (lifted - P).with_variables(vars);
  const Value gq = gauss_valuation(q);
  if (gq.is_top() || q.vanishes()) {
    // Unreachable in practice: peeling handles an exact residue SOS.
    std::vector<RationalFunction> r;
    for (const auto& t : whole.squares) r.push_back(lift(t).scaled(c));
    return finish(plain_sos_certificate(to_x(r)));
  }
  const Rational delta = gq.rational() - g;
  const Series m = Series::eps(delta);
  const RationalFunction h_unit(divide_by_constant(q, m), P);

  if (!kappa) {
    std::vector<RationalFunction> r;
    for (const auto& t : whole.squares) r.push_back(lift(t).scaled(c));
    out.r.summands = to_x(r);
    out.m = m;
    out.h = to_set_coordinates(h_unit, set);
    SampleConfig oracle = config.sampling;
    IntegralityVerdict check = pointwise_integral_oracle(out.h, set, oracle);
    if (check.kind == IntegralityVerdict::Kind::CounterexampleFound) {
      out.kind = GenerationResult::Kind::Unknown;
      out.note = "candidate h is not integral at a sampled point";
    } else {
      out.kind = GenerationResult::Kind::CandidateWithoutWitness;
      out.note = "no positive constant split of the residue form";
    }
    return out;
  }

  // r = c^2 (kappa + sum t_i^2) and q = r - P = c^2 kappa eps^delta Q, so
  // h = q / (eps^delta P) = Q u / (1 - eps^delta Q u) with
  // u = 1/(1 + sum (t_i/sqrt(kappa))^2).
  std::vector<RationalFunction> r;
  for (const Rational& b : rational_sum_of_squares(*kappa)) r.emplace_back(Series(b) * c);
  for (const auto& t : tail) r.push_back(lift(t).scaled(c));

  const Polynomial Q = divide_by_constant(q, Series::monomial(*kappa, g + delta));
  RingExpr Qe = ring_expr_from_polynomial(Q, vars);
  RingExpr numerator = Qe;
  if (!tail.empty()) {
    SOSExpr s;
    for (const Rational& a : rational_sum_of_squares(1 / *kappa))
      for (const auto& t : tail) s.summands.push_back(to_set_coordinates(lift(t).scaled(Series(a)), set));
    numerator = RingExpr::product({Qe, RingExpr::iord(std::move(s))});
  }
  RingExpr minus = RingExpr::product({RingExpr::constant(Series(-1)), numerator});

  NonnegCertificate cert;
  cert.r.summands = to_x(r);
  cert.m = m;
  cert.h = to_set_coordinates(h_unit, set);
  cert.witness.numerator = numerator;
  cert.witness.denominator = TElement{m, minus};
  return finish(std::move(cert));
}

const std::vector<Series>& characterization_c_values() {
  static const std::vector<Series> values = [] {
    std::vector<Series> v;
    for (const char* s : {"0", "1", "eps^(-1)", "eps^(-2)", "1/2", "3", "eps^(-1/2)", "eps", "2", "eps^(-3)",
                          "1/3", "eps^(-3/2)", "5", "2*eps^(-1)", "1/2*eps^(-1)", "eps^(-4)", "7/4", "10",
                          "3*eps^(-2)", "eps^(-5/2)"})
      v.push_back(parse_series(s));
    return v;
  }();
  return values;
}

namespace {

// 1/(1 + c^2 v) is non-integral iff 1 + c^2 v vanishes or has positive
// valuation.
bool nonintegral_inverse(const Series& one_plus) {
  if (one_plus.is_exact_zero()) return true;
  if (!one_plus.has_visible_terms()) return false;  // undecidable, do not claim
  return one_plus.valuation() > Value(Rational(0));
}

bool in_set(const SetDescriptor& set, const std::vector<Series>& x) {
  try {
    return set.contains(x);
  } catch (const Error&) {
    return false;
  }
}

std::optional<Series> square_root_of_inverse(const Series& v) {
  try {
    return (-v).inverse().sqrt();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NonSquareLeadingCoefficient || e.code() == ErrorCode::PrecisionExhausted ||
        e.code() == ErrorCode::NegativeElement)
      return std::nullopt;
    throw;
  }
}

}  // namespace

CharacterizationReport check_general_characterization(const Polynomial& p0, const SetDescriptor& set,
                                                      const CharacterizationConfig& config) {
  const auto& vars = set.variables();
  Polynomial p = p0.with_variables(vars);
  CharacterizationReport rep;
  const auto& cs = characterization_c_values();
  const std::size_t nc = std::min(config.c_values, cs.size());
  rep.c_tested = nc;
  PointSampler sampler(set, config.sampling, Stream::Probe);
  std::vector<std::pair<std::vector<Series>, Series>> negatives;
  for (std::size_t i = 0; i < sampler.budget(); ++i) {
    auto x = sampler.point(i);
    if (!x) continue;
    ++rep.samples;
    Series v = p.evaluate<Series>(*x);
    if (negative(v)) {
      rep.negative_found = true;
      if (negatives.size() < 64) negatives.emplace_back(*x, v);
    }
    for (std::size_t k = 0; k < nc; ++k) {
      Series one_plus = Series(1) + cs[k] * cs[k] * v;
      if (!rep.nonintegral_found && nonintegral_inverse(one_plus)) {
        rep.nonintegral_found = true;
        rep.perturbed_point = *x;
        rep.c = cs[k];
        if (!one_plus.is_exact_zero()) rep.value = one_plus.inverse();
      }
    }
  }
  if (!rep.negative_found) return rep;
  rep.verdict = CharacterizationReport::Verdict::NegativityWitness;
  rep.point = negatives.front().first;
  rep.p_value = negatives.front().second;

  // Construct c from a negative value whose leading coefficient is minus a
  // rational square, perturbing coordinates by small rationals if needed.
  static const std::vector<Rational> nudges = {Rational(1, 2), Rational(-1, 2), Rational(1, 3), Rational(-1, 3),
                                               Rational(1, 4), Rational(-1, 4), Rational(1),     Rational(-1),
                                               Rational(2, 3), Rational(-2, 3), Rational(3, 4),  Rational(-3, 4)};
  std::optional<std::pair<std::vector<Series>, Series>> base;
  std::optional<Series> c;
  for (const auto& [x, v] : negatives) {
    if ((c = square_root_of_inverse(v))) {
      base = std::make_pair(x, v);
      break;
    }
  }
  for (std::size_t n = 0; !c && n < negatives.size() && n < 8; ++n) {
    for (std::size_t j = 0; j < vars.size() && !c; ++j) {
      for (const Rational& d : nudges) {
        std::vector<Series> y = set.to_unit(negatives[n].first);
        y[j] = y[j] + Series(d);
        std::vector<Series> x = set.from_unit(y);
        if (!in_set(set, x)) continue;
        Series v = p.evaluate<Series>(x);
        if (!negative(v)) continue;
        if ((c = square_root_of_inverse(v))) {
          base = std::make_pair(x, v);
          break;
        }
      }
    }
  }
  if (!c) {
    rep.obstruction = "-1/p(b) has a leading coefficient that is not a rational square at every tried point";
    return rep;
  }
  rep.point = base->first;
  rep.p_value = base->second;
  rep.c = c;
  const Series& pb = base->second;
  // Exact pole when c^2 p(b) = -1 holds exactly.
  Series at_b = Series(1) + *c * *c * pb;
  if (at_b.is_exact_zero()) {
    rep.nonintegral_found = true;
    rep.perturbed_point = base->first;
    rep.value.reset();
    return rep;
  }
  // With c^2 = -1/p(b): 1 + c^2 p(b') = (p(b) - p(b')) / p(b).
  const Rational k = std::max(Rational(0), Rational(floor(pb.valuation().rational()) + 1)) + Rational(default_precision() / 4);
  for (std::size_t j = 0; j < vars.size(); ++j) {
    for (Rational e = k; e <= k + 8; e += 1) {
      std::vector<Series> y = set.to_unit(base->first);
      y[j] = y[j] + Series::eps(e);
      std::vector<Series> x = set.from_unit(y);
      if (!in_set(set, x)) continue;
      Series delta = pb - p.evaluate<Series>(x);
      if (delta.is_exact_zero() || !delta.has_visible_terms()) continue;
      if (delta.valuation() > pb.valuation()) {
        rep.nonintegral_found = true;
        rep.perturbed_point = x;
        rep.value = pb / delta;
        return rep;
      }
    }
  }
  if (!rep.nonintegral_found) rep.obstruction = "p is locally constant at the witness point";
  return rep;
}

}  // namespace rcvf
