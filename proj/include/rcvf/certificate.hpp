#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rcvf/integrality.hpp"
#include "rcvf/ring.hpp"
#include "rcvf/sos.hpp"

namespace rcvf {

/// num / den with num in the generated ring and den in T.
struct WitnessFraction {
  RingExpr num;
  TElement den;
};

/// Evidence that h is integral: h = numerator / denominator, or, when
/// `monic` is present, h^d + sum_i c_i h^i = 0 with c_i = monic[i].
struct IntegralityWitness {
  RingExpr numerator = RingExpr::constant(Series());
  TElement denominator{Series(), RingExpr::constant(Series())};
  std::optional<std::vector<WitnessFraction>> monic;
};

/// p * (1 + m*h) = sum r_i^2.
struct NonnegCertificate {
  SOSExpr r;
  Series m;
  RationalFunction h;
  IntegralityWitness witness;
};

/// p = sum (1 + m1*q1^2) / (1 + m2*q2^2).
struct DickmannTerm {
  Series m1;
  Polynomial q1;
  Series m2;
  Polynomial q2;
};
struct DickmannCertificate {
  std::vector<DickmannTerm> terms;
};

struct VerifyResult {
  bool ok = false;
  std::string reason;  // failed clause when !ok
  explicit operator bool() const { return ok; }
};

/// Exact check of every clause: the identity, m infinitesimal, and the
/// witness (ring membership, T-element shape, h identity or monic identity).
VerifyResult verify_nonneg_certificate(const Polynomial& p, const NonnegCertificate& cert, const SetDescriptor& set);

/// Throws CoefficientsNotIntegral if p has a coefficient of negative
/// valuation.
VerifyResult verify_dickmann_certificate(const Polynomial& p, const DickmannCertificate& cert);

struct GenerationConfig {
  SampleConfig sampling;
  SOSBudget sos;
  unsigned depth = 3;  // peeling layers
};

struct GenerationResult {
  enum class Kind { Certificate, NegativityWitness, CandidateWithoutWitness, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<NonnegCertificate> certificate;
  // NegativityWitness
  std::vector<Series> point;
  Series value;
  // CandidateWithoutWitness (also filled for Certificate)
  SOSExpr r;
  Series m;
  RationalFunction h;
  Value gauss;
  bool gauss_in_2gamma = true;
  std::string note;
};

const char* generation_kind_name(GenerationResult::Kind k);

/// Best-effort certificate search on a polydisc or affine module.
GenerationResult generate_ball_certificate(const Polynomial& p, const SetDescriptor& set,
                                           const GenerationConfig& config = {});

/// Sampled point of the set with p < 0: structured/random points first, then
/// negative points of the leading residue form lifted to the set.
std::optional<std::pair<std::vector<Series>, Series>> find_negative_point(const Polynomial& p,
                                                                          const SetDescriptor& set,
                                                                          const SampleConfig& config);

struct CharacterizationConfig {
  SampleConfig sampling{.seed = 0, .samples = 500};
  std::size_t c_values = 10;  // taken from characterization_c_values()
};

struct CharacterizationReport {
  enum class Verdict { ConsistentNonneg, NegativityWitness };
  Verdict verdict = Verdict::ConsistentNonneg;
  std::vector<Series> point;            // p(point) < 0
  Series p_value;
  std::optional<Series> c;              // c^2 = -1/p(point) when constructible
  std::vector<Series> perturbed_point;  // where 1/(1+c^2 p) is not integral
  std::optional<Series> value;          // 1/(1+c^2 p) there (absent at a pole)
  std::string obstruction;
  std::size_t samples = 0;
  std::size_t c_tested = 0;
  bool negative_found = false;
  bool nonintegral_found = false;
  bool coherent() const { return negative_found == nonintegral_found; }
};

const std::vector<Series>& characterization_c_values();

/// Samples points b and constants c, recording negative values of p and
/// non-integral values of 1/(1+c^2 p(b)). For a negative p(b) it builds
/// c = sqrt(-1/p(b)) (perturbing b when the leading coefficient is not a
/// rational square) and confirms non-integrality next to b.
CharacterizationReport check_general_characterization(const Polynomial& p, const SetDescriptor& set,
                                                      const CharacterizationConfig& config = {});

}  // namespace rcvf
