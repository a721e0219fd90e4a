#pragma once

#include <optional>
#include <vector>

#include "lsfrp/lp/linear_model.hpp"

namespace lsfrp::testing {

/// Optimum of a small LP with finite variable bounds, found by enumerating every
/// basic solution of the constraint hyperplanes. Returns nullopt when infeasible.
std::optional<double> vertex_enumeration_optimum(const lp::LinearModel& model);

/// Exhaustive optimum of a pure-integer model with small finite bounds.
std::optional<double> integer_enumeration_optimum(const lp::LinearModel& model);

}  // namespace lsfrp::testing
