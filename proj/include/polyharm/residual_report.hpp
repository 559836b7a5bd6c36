#pragma once

#include "polyharm/constraint_poly.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace polyharm {

/// One failing (or worst) component of a residual check.
struct ComponentResidual {
  std::size_t component = 0;
  std::string residual;        // exact field text (symbolic checks)
  double magnitude = 0.0;      // numeric checks
  std::vector<double> point;   // numeric checks: where it happened
};

/// Outcome of an exact or numeric residual check.
///
/// Symbolic: pass iff every component residual is exactly zero.
/// Numeric: pass iff every magnitude respects the tolerance.
struct ResidualReport {
  static constexpr std::size_t kMaxOffenders = 8;

  std::string equation;
  bool pass = true;
  bool symbolic = true;
  std::size_t components_checked = 0;
  std::size_t failing_components = 0;
  std::vector<ComponentResidual> offenders;
  std::optional<ConstraintPoly> residual_poly;
  std::optional<double> tolerance;
  double max_error = 0.0;
  double min_magnitude = 0.0;
  std::size_t points_checked = 0;
  std::vector<std::string> notes;

  void fail(ComponentResidual offender) {
    pass = false;
    ++failing_components;
    if (offenders.size() < kMaxOffenders) offenders.push_back(std::move(offender));
  }
};

}  // namespace polyharm
