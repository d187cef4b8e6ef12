#pragma once

#include <optional>
#include <vector>

#include "rcvf/mpoly.hpp"
#include "rcvf/sampling.hpp"

namespace rcvf {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Exact symmetric LDL^T with diagonal pivoting, tolerant of semidefinite
/// input. On success Q = sum_k d_k l_k l_k^T with every d_k > 0. Otherwise a
/// vector v with v^T Q v < 0 is returned.
struct LdlOutcome {
  bool psd = false;
  std::vector<Rational> pivots;                  // d_k
  std::vector<std::vector<Rational>> columns;    // l_k (full length)
  std::vector<Rational> negative_direction;      // when !psd
};
LdlOutcome ldl_psd(const RationalMatrix& q);

/// Rationals a_i (at most four) with sum a_i^2 = d, for d >= 0.
std::vector<Rational> rational_sum_of_squares(const Rational& d);

struct SOSBudget {
  std::size_t max_basis = 40;
  unsigned denominator_degree_cap = 0;  // k in q * (sum x_i^2)^k
  std::size_t max_parameters = 400;
};

struct SOSResult {
  enum class Kind { SOS, NotSOSInBudget, NegativityWitness };
  Kind kind = Kind::NotSOSInBudget;
  std::vector<ResidueQuotient> squares;  // q = sum t_i^2
  std::vector<Rational> point;           // q(point) < 0
};

const char* sos_kind_name(SOSResult::Kind k);

/// Exact SOS decomposition over Q with an optional (sum x_i^2)^k multiplier.
/// Every SOS answer is checked exactly before it is returned.
SOSResult residue_sos_search(const ResiduePolynomial& q, const SOSBudget& budget = {},
                             const SampleConfig& falsify = {});

/// Point with q(point) < 0, by rational grid, exact quadratic directions,
/// coordinate descent from random starts, and rays to infinity.
std::optional<std::vector<Rational>> psd_falsify(const ResiduePolynomial& q, const SampleConfig& config = {});

bool verify_residue_sos(const ResiduePolynomial& q, const std::vector<ResidueQuotient>& decomposition);
bool verify_residue_sos(const ResiduePolynomial& q, const std::vector<ResiduePolynomial>& decomposition);

}  // namespace rcvf
