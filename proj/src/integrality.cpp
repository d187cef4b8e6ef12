#include "rcvf/integrality.hpp"

#include <algorithm>

#include "rcvf/text.hpp"

namespace rcvf {

const char* verdict_name(IntegralityVerdict::Kind k) {
  switch (k) {
    case IntegralityVerdict::Kind::IntegralByGauss: return "IntegralByGauss";
    case IntegralityVerdict::Kind::NotIntegralByGauss: return "NotIntegralByGauss";
    case IntegralityVerdict::Kind::CounterexampleFound: return "CounterexampleFound";
    case IntegralityVerdict::Kind::NoCounterexampleFound: return "NoCounterexampleFound";
  }
  return "?";
}

RationalFunction module_pullback(const RationalFunction& h, const AffineModuleMap& map,
                                 const std::vector<std::string>& vars) {
  return affine_substitute(h, vars, map.centers, map.scales);
}

RationalFunction module_pullback(const RationalFunction& h, const SetDescriptor& set) {
  if (set.is_polydisc()) return h;
  return module_pullback(h, *set.affine_map(), set.variables());
}

Polynomial module_pullback(const Polynomial& p, const SetDescriptor& set) {
  if (set.is_polydisc()) return p;
  return affine_substitute(p, set.variables(), set.affine_map()->centers, set.affine_map()->scales);
}

IntegralityVerdict gauss_verdict(const RationalFunction& h, const SetDescriptor& set) {
  if (set.has_strict_constraints())
    throw Error(ErrorCode::InvalidArgument, "the Gauss criterion applies to polydiscs and affine modules only");
  IntegralityVerdict v;
  v.gap = gauss_valuation(module_pullback(h, set));
  v.kind = v.gap >= Value(0) ? IntegralityVerdict::Kind::IntegralByGauss
                             : IntegralityVerdict::Kind::NotIntegralByGauss;
  return v;
}

bool generic_type_integral(const RationalFunction& h, const SetDescriptor& set) {
  return gauss_verdict(h, set).kind == IntegralityVerdict::Kind::IntegralByGauss;
}

const std::vector<Series>& PointSampler::structured_values() {
  static const std::vector<Series> values = [] {
    std::vector<Series> v;
    for (const char* s : {"0", "1", "-1", "eps", "eps^2", "eps^3", "eps^4", "1/2", "-1/2", "eps^(1/2)", "-eps",
                          "1 + eps", "1 - eps", "-1 + eps", "1/3", "-1/3", "2/3", "3/4", "eps + eps^2", "-eps^2"})
      v.push_back(parse_series(s));
    return v;
  }();
  return values;
}

PointSampler::PointSampler(const SetDescriptor& set, const SampleConfig& config, Stream stream)
    : set_(set), config_(config), stream_(stream) {
  Rational wanted = config.structured_fraction * Rational(static_cast<long>(config.samples));
  std::size_t count = floor(wanted).get_ui();
  // The full structured grid has |V|^n points; never exceed it.
  std::size_t grid = 1;
  const std::size_t base = structured_values().size();
  for (std::size_t i = 0; i < set.dimension() && grid < count; ++i) grid *= base;
  structured_ = std::min(count, grid);
}

std::vector<Series> PointSampler::unit_point(std::size_t i) const {
  const std::size_t n = set_.dimension();
  std::vector<Series> y(n);
  if (i < structured_) {
    const auto& values = structured_values();
    std::size_t k = i;
    for (std::size_t c = 0; c < n; ++c) {
      y[c] = values[k % values.size()];
      k /= values.size();
    }
    return y;
  }
  Rng rng(config_.seed, static_cast<std::uint64_t>(stream_), i);
  for (std::size_t c = 0; c < n; ++c) {
    switch (rng.below(5)) {
      case 0:
        y[c] = random_generic_unit(rng, 1000, true);
        break;
      case 1: {
        long k = rng.between(1, 8);
        y[c] = Series::monomial(random_rational(rng, 5, false), Rational(k, rng.between(1, 2)));
        break;
      }
      default:
        y[c] = random_integral_element(rng, config_);
    }
  }
  return y;
}

std::optional<std::vector<Series>> PointSampler::point(std::size_t i) const {
  std::vector<Series> x = set_.from_unit(unit_point(i));
  try {
    if (!set_.satisfies_constraints(x)) return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  return x;
}

std::vector<Series> generic_unit_point(std::size_t n, Rng& rng, std::uint64_t residue_set_size) {
  std::vector<Series> y;
  y.reserve(n);
  for (std::size_t c = 0; c < n; ++c) y.push_back(random_generic_unit(rng, residue_set_size, true));
  return y;
}

IntegralityVerdict pointwise_integral_oracle(const RationalFunction& h, const SetDescriptor& set,
                                             const SampleConfig& config) {
  RationalFunction aligned = with_variables(h, set.variables());
  PointSampler sampler(set, config, Stream::Oracle);
  IntegralityVerdict verdict;
  verdict.kind = IntegralityVerdict::Kind::NoCounterexampleFound;
  for (std::size_t i = 0; i < sampler.budget(); ++i) {
    auto x = sampler.point(i);
    if (!x) {
      ++verdict.skipped;
      continue;
    }
    ++verdict.samples;
    try {
      Series v = poly_eval(aligned, *x);
      if (v.valuation() < Value(0)) {
        verdict.kind = IntegralityVerdict::Kind::CounterexampleFound;
        verdict.point = std::move(*x);
        verdict.value = std::move(v);
        return verdict;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DivisionByZero && e.code() != ErrorCode::PrecisionExhausted) throw;
      ++verdict.skipped;
    }
  }
  return verdict;
}

std::optional<std::vector<Series>> generic_residue_probe(const Polynomial& q, const SetDescriptor& set,
                                                         std::uint64_t seed, std::size_t attempts) {
  Polynomial pulled = module_pullback(q.with_variables(set.variables()), set).with_variables(set.variables());
  Value target = gauss_valuation(pulled);
  std::uint64_t residue_set = 1000 * std::max<std::size_t>(1, pulled.size());
  for (std::size_t a = 0; a < attempts; ++a) {
    Rng rng(seed, static_cast<std::uint64_t>(Stream::Generic), a);
    std::vector<Series> y = generic_unit_point(set.dimension(), rng, residue_set);
    Series v = pulled.evaluate<Series>(y);
    if (v.is_exact_zero() ? target.is_top() : v.valuation() == target) {
      std::vector<Series> x = set.from_unit(y);
      try {
        if (!set.satisfies_constraints(x)) continue;
      } catch (const Error&) {
        continue;
      }
      return x;
    }
  }
  return std::nullopt;
}

InfinitesimalSplit infinitesimal_decompose(const RationalFunction& h, const SetDescriptor& set) {
  Value gauss = gauss_valuation(module_pullback(h, set));
  if (gauss.is_top()) {
    return {Series(), RationalFunction(Series(1))};  // h = 0 = 0 * 1
  }
  if (!(gauss > Value(0)))
    throw Error(ErrorCode::NotInfinitesimalDefinite, "Gauss valuation " + gauss.to_string() + " is not positive");
  const Rational& g = gauss.rational();
  return {Series::eps(g), RationalFunction(shift_coefficients(h.num, -g), h.den)};
}

}  // namespace rcvf
