#include "rcvf/sampling.hpp"

#include "rcvf/errors.hpp"

namespace rcvf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

long bound_of(const Rational& q, long fallback) {
  Integer f = floor(q);
  if (f < 1) return fallback;
  if (!f.fits_slong_p()) return 1L << 30;
  return f.get_si();
}

// Positive exponent k/d with d in {1,2,3} and k/d <= bound.
Rational random_positive_exponent(Rng& rng, long bound) {
  long den = rng.between(1, 3);
  long num = rng.between(1, std::max<long>(1, bound * den));
  Rational e(num, den);
  e.canonicalize();
  return e;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream * 0x51ed270b27a3c9d1ULL + index))) {}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Rng::below(0)");
  // Rejection sampling over the largest multiple of n.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Rational random_rational(Rng& rng, long bound, bool allow_zero) {
  bound = std::max<long>(bound, 1);
  long num;
  do {
    num = rng.between(-bound, bound);
  } while (!allow_zero && num == 0);
  long den = rng.between(1, bound);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Series random_integral_element(Rng& rng, const SampleConfig& config) {
  const long cb = bound_of(config.coefficient_bound, 10);
  const long eb = bound_of(config.exponent_bound, 4);
  std::vector<Term> terms;
  switch (rng.below(8)) {
    case 0:
    case 1:
    case 2: {  // unit with random residue plus a short tail
      terms.push_back({Rational(0), random_rational(rng, cb, false)});
      long extra = rng.between(0, 2);
      for (long i = 0; i < extra; ++i)
        terms.push_back({random_positive_exponent(rng, eb), random_rational(rng, cb, false)});
      break;
    }
    case 3:
    case 4: {  // strictly positive valuation
      long count = rng.between(1, 3);
      for (long i = 0; i < count; ++i)
        terms.push_back({random_positive_exponent(rng, eb), random_rational(rng, cb, false)});
      break;
    }
    case 5:
    case 6:  // exact rational
      terms.push_back({Rational(0), random_rational(rng, cb, true)});
      break;
    default:  // zero
      break;
  }
  return Series(std::move(terms), std::nullopt);
}

Series random_generic_unit(Rng& rng, std::uint64_t residue_set_size, bool with_tail) {
  // Residue set: {±k/7 : 1 <= k <= ceil(size/2)}; distinct rationals.
  std::uint64_t half = std::max<std::uint64_t>(1, (residue_set_size + 1) / 2);
  std::uint64_t k = rng.below(half) + 1;
  Rational residue(static_cast<long>(k), 7);
  residue.canonicalize();
  if (rng.chance(1, 2)) residue = -residue;
  std::vector<Term> terms{{Rational(0), residue}};
  if (with_tail && rng.chance(1, 2))
    terms.push_back({random_positive_exponent(rng, 3), random_rational(rng, 5, false)});
  return Series(std::move(terms), std::nullopt);
}

std::vector<Series> sample_ball(std::size_t n, const Value& radius, const SampleConfig& config) {
  if (radius.is_top()) throw Error(ErrorCode::InvalidArgument, "ball radius must be rational");
  std::vector<Series> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(config.seed, static_cast<std::uint64_t>(Stream::Ball), i);
    out.push_back(random_integral_element(rng, config).shifted(radius.rational()));
  }
  return out;
}

}  // namespace rcvf
