#include "mgraal/problem.hpp"

#include <cmath>

#include "mgraal/errors.hpp"

namespace mgraal {

Problem::Problem(std::string name, Geometry geometry, Regularizer regularizer,
                 Operator op, std::vector<double> initial_point)
    : name_(std::move(name)),
      geometry_(std::move(geometry)),
      regularizer_(std::move(regularizer)),
      op_(std::move(op)),
      initial_point_(std::move(initial_point)) {
  if (!op_) throw ConfigError("problem '" + name_ + "' has no operator");
  geometry_.require_interior(initial_point_, "Problem initial point");
  if (!std::isfinite(regularizer_.value(initial_point_))) {
    throw ConfigError("problem '" + name_ + "': initial point outside dom g");
  }
}

Problem& Problem::with_lipschitz(double lipschitz) {
  if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
    throw ConfigError("Lipschitz constant must be positive and finite");
  }
  lipschitz_ = lipschitz;
  return *this;
}

Problem& Problem::with_merit(Merit merit) {
  merit_ = std::move(merit);
  return *this;
}

void Problem::apply(std::span<const double> w, std::span<double> out) const {
  check_dimension(dimension(), w.size(), "Problem::apply w");
  check_dimension(dimension(), out.size(), "Problem::apply out");
  op_(w, out);
}

std::vector<double> Problem::apply(std::span<const double> w) const {
  std::vector<double> out(w.size());
  apply(w, out);
  return out;
}

double Problem::merit(std::span<const double> w) const {
  return merit_ ? merit_(w) : 0.0;
}

}  // namespace mgraal
