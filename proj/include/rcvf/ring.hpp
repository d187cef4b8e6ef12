#pragma once

#include <memory>
#include <span>
#include <vector>

#include "rcvf/polyring.hpp"
#include "rcvf/set.hpp"

namespace rcvf {

/// Element of the ring generated over O_K by the set's generators and the
/// leaf families 1/(1+r) (r a sum of squares) and 1/(1+f) (f in the cone of
/// the set's strict constraints). Immutable; subtrees are shared.
///
/// There is deliberately no division node: every denotable element lies in
/// the generated ring by construction.
class RingExpr {
 public:
  enum class Kind { Constant, Generator, IOrd, ICone, Sum, Product };

  RingExpr() : RingExpr(constant(Series())) {}

  static RingExpr constant(Series c);
  static RingExpr generator(std::size_t index);
  static RingExpr iord(SOSExpr r);
  static RingExpr icone(ConeExpr f);
  static RingExpr sum(std::vector<RingExpr> args);
  static RingExpr product(std::vector<RingExpr> args);

  Kind kind() const;
  const Series& constant_value() const;
  std::size_t generator_index() const;
  const SOSExpr& sos() const;
  const ConeExpr& cone() const;
  const std::vector<RingExpr>& args() const;

  /// The denoted rational function over the set's coordinates.
  RationalFunction to_rational_function(const SetDescriptor& set) const;

 private:
  struct Node;
  explicit RingExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// 1 + m*a with m in the maximal ideal (valuation > 0, or m = 0).
struct TElement {
  Series m;
  RingExpr a;

  RationalFunction to_rational_function(const SetDescriptor& set) const;
};

/// Structural legality of e for `set`: constants integral, generator indices
/// in range, cone leaves only when the set carries strict constraints, cone
/// factor indices valid and within kConeDegreeCap.
bool verify_ring_membership(const RingExpr& e, const SetDescriptor& set);
bool verify_t_element(const TElement& t, const SetDescriptor& set);

/// Value at a point given in set coordinates. Throws DivisionByZero when a
/// leaf denominator vanishes (only possible off the set).
Series eval_ring_expr(const RingExpr& e, const SetDescriptor& set, std::span<const Series> point);
Series eval_t_element(const TElement& t, const SetDescriptor& set, std::span<const Series> point);

/// Writes q (over the set's coordinates, viewed as polynomial in the
/// generators) as a sum of products of generator leaves. For an affine set the
/// caller passes q in polydisc coordinates. Throws NotIntegral if some
/// coefficient has negative valuation.
RingExpr ring_expr_from_polynomial(const Polynomial& q, const std::vector<std::string>& vars);

}  // namespace rcvf
