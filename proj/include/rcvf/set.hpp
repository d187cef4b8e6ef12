#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcvf/mpoly.hpp"
#include "rcvf/series.hpp"

namespace rcvf {

/// Coordinatewise affine bijection y -> center + scale * y from the unit
/// polydisc onto an O_K-module.
struct AffineModuleMap {
  std::vector<Series> centers;
  std::vector<Series> scales;
};

/// A valuation-defined set: the unit polydisc O_K^n or an affine module image
/// of it, optionally cut by strict polynomial constraints p_i(x) > 0.
///
/// Coordinates carry variable names; every expression evaluated on the set
/// must only use these names.
class SetDescriptor {
 public:
  /// Unit polydisc with coordinates x1..xn.
  static SetDescriptor ball(std::size_t n);
  static SetDescriptor ball(std::vector<std::string> vars);
  static SetDescriptor affine(std::vector<std::string> vars, AffineModuleMap map);

  SetDescriptor with_strict(std::vector<Polynomial> constraints) const;
  /// Same set shape without the affine map and without constraints.
  SetDescriptor unit_polydisc() const { return ball(vars_); }

  std::size_t dimension() const { return vars_.size(); }
  const std::vector<std::string>& variables() const { return vars_; }
  bool is_polydisc() const { return !map_.has_value(); }
  const std::optional<AffineModuleMap>& affine_map() const { return map_; }
  const std::vector<Polynomial>& strict_constraints() const { return strict_; }
  bool has_strict_constraints() const { return !strict_.empty(); }

  /// The functions whose integrality defines the set: x_i on the polydisc,
  /// (x_i - center_i) / scale_i on an affine module.
  const std::vector<RationalFunction>& generators() const { return generators_; }

  /// Polydisc coordinates -> set coordinates.
  std::vector<Series> from_unit(std::span<const Series> y) const;
  /// Set coordinates -> polydisc coordinates (the generator values).
  std::vector<Series> to_unit(std::span<const Series> x) const;

  /// Membership: generators integral and constraints strictly positive.
  /// Throws PrecisionExhausted when a sign or valuation is undecidable.
  bool contains(std::span<const Series> x) const;
  /// Only the strict constraints.
  bool satisfies_constraints(std::span<const Series> x) const;

 private:
  void build_generators();

  std::vector<std::string> vars_;
  std::optional<AffineModuleMap> map_;
  std::vector<Polynomial> strict_;
  std::vector<RationalFunction> generators_;
};

/// x1, x2, ... names not already in `taken`, enough to reach n names total
/// after the taken ones (sorted naturally).
std::vector<std::string> bind_variables(std::size_t n, const std::vector<std::string>& used);

}  // namespace rcvf
