#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rcvf/rational.hpp"
#include "rcvf/series.hpp"

namespace rcvf {

struct SampleConfig {
  std::uint64_t seed = 0;
  std::size_t samples = 2000;
  Rational structured_fraction{1, 4};
  Rational coefficient_bound{10};
  Rational exponent_bound{4};
};

/// Deterministic generator keyed by (seed, stream, index). Only raw 64-bit
/// engine output is consumed, so sequences are identical across standard
/// libraries.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t index = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool chance(std::uint64_t numerator, std::uint64_t denominator) { return below(denominator) < numerator; }
  /// Uniform in [0, 1).
  double unit();

 private:
  std::mt19937_64 engine_;
};

/// Stream tags so independent consumers of one seed never share draws.
enum class Stream : std::uint64_t {
  Ball = 1,
  Oracle = 2,
  Generic = 3,
  Falsify = 4,
  Probe = 5,
  Corpus = 6,
};

/// Random rational with |numerator| <= bound and denominator in [1, bound].
Rational random_rational(Rng& rng, long bound, bool allow_zero = true);

/// One random element of valuation >= 0 drawn with the given rng. Kinds:
/// units with a random residue plus higher terms, elements of strictly
/// positive valuation, exact rationals, and zero.
Series random_integral_element(Rng& rng, const SampleConfig& config);

/// Unit whose residue is drawn uniformly from a finite set of nonzero rationals
/// with `residue_set_size` elements; optional higher-order tail.
Series random_generic_unit(Rng& rng, std::uint64_t residue_set_size, bool with_tail);

/// n elements each with valuation >= radius. Draw i uses Rng(seed, Ball, i).
std::vector<Series> sample_ball(std::size_t n, const Value& radius, const SampleConfig& config);

}  // namespace rcvf
