#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "lsfrp/lp/linear_model.hpp"

namespace lsfrp::lp {

enum class LpStatus : std::uint8_t { optimal, infeasible, unbounded, iteration_limit, time_limit, numerical_failure };
std::string_view to_string(LpStatus status);

enum class VarStatus : std::uint8_t { basic, at_lower, at_upper, free_zero };

/// Simplex basis: one status per structural column, one per row logical.
/// A basis from an earlier solve of a smaller model (fewer rows or columns) is
/// extended on warm start: new logicals enter basic, new columns start at a bound.
struct Basis {
  std::vector<VarStatus> structural;
  std::vector<VarStatus> logical;

  bool empty() const { return structural.empty() && logical.empty(); }
};

struct LpOptions {
  double feasibility_tol = Tolerances::feasibility;
  double optimality_tol = 1e-9;
  int refactor_interval = 100;
  long max_iterations = 0;  // 0: automatic limit
  double time_limit_seconds = kInf;
};

struct LpSolution {
  LpStatus status = LpStatus::numerical_failure;
  double objective = 0.0;
  std::vector<double> x;
  std::vector<double> duals;          // one per row, maximisation convention
  std::vector<double> reduced_costs;  // obj_j - duals^T A_j
  Basis basis;
  long iterations = 0;

  bool optimal() const { return status == LpStatus::optimal; }
};

struct LpSolveInput {
  const std::vector<double>* lower = nullptr;  // bound overrides, size num_vars()
  const std::vector<double>* upper = nullptr;
  const Basis* warm_start = nullptr;
  LpOptions options{};
};

/// Bounded-variable primal simplex (two phases, dense explicit basis inverse,
/// Harris ratio test, Dantzig pricing falling back to Bland's rule after
/// 3*(rows+cols) consecutive degenerate pivots). Deterministic for a given input.
LpSolution solve_lp(const LinearModel& model, const LpSolveInput& input);
LpSolution solve_lp(const LinearModel& model);

}  // namespace lsfrp::lp
