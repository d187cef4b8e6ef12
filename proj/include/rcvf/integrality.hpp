#pragma once

#include <optional>
#include <vector>

#include "rcvf/polyring.hpp"
#include "rcvf/sampling.hpp"
#include "rcvf/set.hpp"

namespace rcvf {

struct IntegralityVerdict {
  enum class Kind { IntegralByGauss, NotIntegralByGauss, CounterexampleFound, NoCounterexampleFound };

  Kind kind = Kind::NoCounterexampleFound;
  Value gap;                        // Gauss valuation of h (NotIntegralByGauss)
  std::vector<Series> point;        // set coordinates (CounterexampleFound)
  Series value;                     // h(point) (CounterexampleFound)
  std::size_t samples = 0;          // points examined
  std::size_t skipped = 0;          // off-constraint, poles, undecidable
};

const char* verdict_name(IntegralityVerdict::Kind k);

/// h o g for g: y -> center + scale*y, over the given coordinates.
RationalFunction module_pullback(const RationalFunction& h, const AffineModuleMap& map,
                                 const std::vector<std::string>& vars);
/// Pullback to the unit polydisc of the set (identity for polydiscs).
RationalFunction module_pullback(const RationalFunction& h, const SetDescriptor& set);
Polynomial module_pullback(const Polynomial& p, const SetDescriptor& set);

/// Gauss-valuation (generic type) criterion: gauss(num) >= gauss(den) after
/// pulling back to the polydisc. Requires a set without strict constraints.
bool generic_type_integral(const RationalFunction& h, const SetDescriptor& set);
/// Same decision with the gap reported.
IntegralityVerdict gauss_verdict(const RationalFunction& h, const SetDescriptor& set);

/// Deterministic stream of candidate points on a set. The first part of the
/// budget is structured (0, +-1, eps^k for k <= 4, small rationals and their
/// eps-perturbations, combined coordinatewise); the rest mixes random ball
/// elements, generic-residue units and small-valuation monomials.
class PointSampler {
 public:
  PointSampler(const SetDescriptor& set, const SampleConfig& config, Stream stream);

  std::size_t budget() const { return config_.samples; }
  std::size_t structured_count() const { return structured_; }
  /// Point i in polydisc coordinates.
  std::vector<Series> unit_point(std::size_t i) const;
  /// Point i in set coordinates, or nullopt when it violates a strict
  /// constraint (or the constraint sign is undecidable).
  std::optional<std::vector<Series>> point(std::size_t i) const;

  /// Structured coordinate values, in order.
  static const std::vector<Series>& structured_values();

 private:
  const SetDescriptor& set_;
  SampleConfig config_;
  Stream stream_;
  std::size_t structured_;
};

/// Point of the polydisc with coordinates random units whose residues come
/// from a finite set of at least `residue_set_size` rationals.
std::vector<Series> generic_unit_point(std::size_t n, Rng& rng, std::uint64_t residue_set_size);

/// Searches the set for b with valuation(h(b)) < 0.
IntegralityVerdict pointwise_integral_oracle(const RationalFunction& h, const SetDescriptor& set,
                                             const SampleConfig& config);

/// For a polynomial with negative Gauss valuation: up to `attempts` generic
/// residue points looking for one where valuation(q(b)) equals the Gauss
/// valuation (after pullback). Returns the point in set coordinates.
std::optional<std::vector<Series>> generic_residue_probe(const Polynomial& q, const SetDescriptor& set,
                                                         std::uint64_t seed, std::size_t attempts = 100);

struct InfinitesimalSplit {
  Series m;
  RationalFunction g;
};

/// h = m*g with m = eps^gauss(h) and gauss(g) = 0. Throws
/// NotInfinitesimalDefinite unless gauss(h) > 0 (computed on the polydisc
/// pullback).
InfinitesimalSplit infinitesimal_decompose(const RationalFunction& h, const SetDescriptor& set);

}  // namespace rcvf
