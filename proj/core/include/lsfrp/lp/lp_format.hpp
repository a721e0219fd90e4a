#pragma once

#include <iosfwd>

#include "lsfrp/lp/linear_model.hpp"

namespace lsfrp::lp {

/// Writes the model in CPLEX LP text format for inspection with external solvers.
/// Unnamed variables and rows get x<j> / r<i> names.
void write_lp(const LinearModel& model, std::ostream& out);

}  // namespace lsfrp::lp
