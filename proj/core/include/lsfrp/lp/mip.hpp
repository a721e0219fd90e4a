#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "lsfrp/lp/linear_model.hpp"
#include "lsfrp/lp/simplex.hpp"

namespace lsfrp::lp {

enum class MipStatus : std::uint8_t { optimal, infeasible, unbounded, time_limit, node_limit, numerical_failure };
std::string_view to_string(MipStatus status);

/// Called with every integer-feasible node solution. Returning rows rejects the
/// candidate: the rows are added to the model for the rest of the search and the
/// node is re-solved. Returning nothing accepts it as an incumbent.
using CandidateCallback = std::function<std::vector<Constraint>(std::span<const double> candidate)>;

/// Raised when a callback returns a row the candidate does not violate.
class SeparationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct MipOptions {
  double integrality_tol = Tolerances::integrality;
  double gap_tol = Tolerances::gap;
  double time_limit_seconds = kInf;
  long node_limit = 0;  // 0: unlimited
  LpOptions lp{};
};

struct MipSolution {
  MipStatus status = MipStatus::infeasible;
  bool has_incumbent = false;
  std::vector<double> x;
  double objective = -kInf;
  double bound = kInf;
  double root_bound = kInf;
  long nodes = 0;
  int cuts_added = 0;
  int callback_calls = 0;
  long lp_iterations = 0;
};

/// Best-bound branch and bound: most-fractional branching with lowest-index ties,
/// children explored in creation order on equal bounds, LP warm starts from the
/// parent basis. Rows returned by the callback are appended to `model`.
MipSolution solve_mip(LinearModel& model, const MipOptions& options = {}, const CandidateCallback& on_candidate = {});

/// Violation of `row` at x (positive when violated).
double row_violation(const Constraint& row, std::span<const double> x);

}  // namespace lsfrp::lp
