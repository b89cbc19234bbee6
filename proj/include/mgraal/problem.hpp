#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgraal/geometry.hpp"
#include "mgraal/proximal.hpp"

namespace mgraal {

/// Mixed variational inequality: find w* with
///   <A(w*), w - w*> + g(w) - g(w*) >= 0  for all w,
/// solved in the Bregman geometry of `geometry`.
class Problem {
 public:
  using Operator = std::function<void(std::span<const double>, std::span<double>)>;
  using Merit = std::function<double(std::span<const double>)>;

  Problem(std::string name, Geometry geometry, Regularizer regularizer,
          Operator op, std::vector<double> initial_point);

  // Known global Lipschitz constant of A (needed by fixed-step B-GRAAL).
  Problem& with_lipschitz(double lipschitz);
  // Problem-specific optimality certificate reported next to the residual.
  Problem& with_merit(Merit merit);

  const std::string& name() const noexcept { return name_; }
  const Geometry& geometry() const noexcept { return geometry_; }
  const Regularizer& regularizer() const noexcept { return regularizer_; }
  std::optional<double> lipschitz() const noexcept { return lipschitz_; }
  const std::vector<double>& initial_point() const noexcept { return initial_point_; }
  std::size_t dimension() const noexcept { return geometry_.dimension(); }

  void apply(std::span<const double> w, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> w) const;

  bool has_merit() const noexcept { return static_cast<bool>(merit_); }
  double merit(std::span<const double> w) const;

 private:
  std::string name_;
  Geometry geometry_;
  Regularizer regularizer_;
  Operator op_;
  std::vector<double> initial_point_;
  std::optional<double> lipschitz_;
  Merit merit_;
};

}  // namespace mgraal
