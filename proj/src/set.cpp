#include "rcvf/set.hpp"

#include <algorithm>

#include "rcvf/polyring.hpp"

namespace rcvf {

SetDescriptor SetDescriptor::ball(std::size_t n) {
  std::vector<std::string> vars;
  for (std::size_t i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
  return ball(std::move(vars));
}

SetDescriptor SetDescriptor::ball(std::vector<std::string> vars) {
  SetDescriptor s;
  s.vars_ = std::move(vars);
  std::sort(s.vars_.begin(), s.vars_.end(), variable_less);
  if (std::adjacent_find(s.vars_.begin(), s.vars_.end()) != s.vars_.end())
    throw Error(ErrorCode::InvalidArgument, "duplicate coordinate name");
  s.build_generators();
  return s;
}

SetDescriptor SetDescriptor::affine(std::vector<std::string> vars, AffineModuleMap map) {
  if (map.centers.size() != vars.size() || map.scales.size() != vars.size())
    throw Error(ErrorCode::InvalidArgument, "affine map arity does not match the coordinates");
  for (const auto& s : map.scales)
    if (s.is_zero()) throw Error(ErrorCode::InvalidArgument, "affine scale must be nonzero");
  // Keep centers/scales aligned with the sorted coordinate order.
  std::vector<std::size_t> order(vars.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return variable_less(vars[a], vars[b]); });
  SetDescriptor s;
  AffineModuleMap sorted;
  for (std::size_t i : order) {
    s.vars_.push_back(vars[i]);
    sorted.centers.push_back(map.centers[i]);
    sorted.scales.push_back(map.scales[i]);
  }
  if (std::adjacent_find(s.vars_.begin(), s.vars_.end()) != s.vars_.end())
    throw Error(ErrorCode::InvalidArgument, "duplicate coordinate name");
  s.map_ = std::move(sorted);
  s.build_generators();
  return s;
}

SetDescriptor SetDescriptor::with_strict(std::vector<Polynomial> constraints) const {
  SetDescriptor s = *this;
  for (auto& p : constraints) p = p.with_variables(vars_);
  s.strict_ = std::move(constraints);
  return s;
}

void SetDescriptor::build_generators() {
  generators_.clear();
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    Polynomial x = Polynomial::variable(vars_[i]).with_variables(vars_);
    if (map_) {
      x = divide_by_constant(x - Polynomial(map_->centers[i]).with_variables(vars_), map_->scales[i]);
    }
    generators_.emplace_back(x);
  }
}

std::vector<Series> SetDescriptor::from_unit(std::span<const Series> y) const {
  if (y.size() != vars_.size()) throw Error(ErrorCode::VariableMismatch, "point arity mismatch");
  std::vector<Series> x(y.begin(), y.end());
  if (map_)
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = map_->centers[i] + map_->scales[i] * y[i];
  return x;
}

std::vector<Series> SetDescriptor::to_unit(std::span<const Series> x) const {
  if (x.size() != vars_.size()) throw Error(ErrorCode::VariableMismatch, "point arity mismatch");
  std::vector<Series> y(x.begin(), x.end());
  if (map_)
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = (x[i] - map_->centers[i]) / map_->scales[i];
  return y;
}

bool SetDescriptor::satisfies_constraints(std::span<const Series> x) const {
  for (const auto& p : strict_)
    if (p.evaluate<Series>(x).sign() <= 0) return false;
  return true;
}

bool SetDescriptor::contains(std::span<const Series> x) const {
  for (const auto& yi : to_unit(x))
    if (yi.valuation() < Value(0)) return false;
  return satisfies_constraints(x);
}

std::vector<std::string> bind_variables(std::size_t n, const std::vector<std::string>& used) {
  std::vector<std::string> out = used;
  std::sort(out.begin(), out.end(), variable_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() > n)
    throw Error(ErrorCode::VariableMismatch,
                std::to_string(out.size()) + " variables used but the set has dimension " + std::to_string(n));
  for (std::size_t k = 1; out.size() < n; ++k) {
    std::string name = "x" + std::to_string(k);
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }
  std::sort(out.begin(), out.end(), variable_less);
  return out;
}

}  // namespace rcvf
