#pragma once

#include <vector>

#include "rcvf/certificate.hpp"
#include "rcvf/ring.hpp"
#include "rcvf/sampling.hpp"

namespace rcvf {

/// Random polynomial over `vars` with up to `max_terms` terms of total degree
/// <= max_degree. Coefficients are random integral elements shifted by up to
/// `max_shift` in valuation (both directions).
Polynomial random_polynomial(Rng& rng, const std::vector<std::string>& vars, unsigned max_degree,
                             std::size_t max_terms, const SampleConfig& cfg, long max_shift = 2);

/// Deterministic mixed corpus of nonzero polynomials in 1..3 variables.
std::vector<Polynomial> polynomial_corpus(std::size_t size, std::uint64_t seed);

/// Random element of the generated ring of `set` (constants, generators,
/// IOrd leaves, sums, products).
RingExpr random_ring_expr(Rng& rng, const SetDescriptor& set, unsigned depth, const SampleConfig& cfg);

/// Quadratic form x^T A x with small integer entries. PSD forms are built as
/// B^T B; indefinite ones have a negative diagonal entry or 2x2 minor.
ResiduePolynomial random_quadratic_form(Rng& rng, std::size_t n, bool psd);

struct CorpusCase {
  std::string name;
  Polynomial p;
  SetDescriptor set;
};

/// Fixed non-negative cases for certificate generation (polydiscs and one
/// affine module).
std::vector<CorpusCase> certificate_corpus();

/// Fixed mixed corpus (non-negative, negative somewhere, degenerate) on
/// polydiscs for the characterization probe.
std::vector<CorpusCase> characterization_corpus();

/// Dickmann certificate built from random terms, with p their sum. Terms
/// either have m2 = 0 or a matching numerator and denominator.
std::pair<Polynomial, DickmannCertificate> random_dickmann(Rng& rng, const std::vector<std::string>& vars,
                                                           const SampleConfig& cfg);
/// Corrupts one m or q of a random term so that the identity breaks.
DickmannCertificate mutate_dickmann(Rng& rng, const DickmannCertificate& cert, const std::vector<std::string>& vars);

}  // namespace rcvf
