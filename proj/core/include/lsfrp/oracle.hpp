#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lsfrp/instance.hpp"
#include "lsfrp/solution.hpp"

namespace lsfrp {

/// The oracle declines instances whose path-product exceeds its budget.
class OracleRefusal : public Error {
 public:
  using Error::Error;
};

struct OracleOptions {
  double budget = 1e6;  // on the product of per-ship path counts
};

/// One simple v_s -> sink path per ship, pairwise node-disjoint on visits.
struct PathAssignment {
  std::vector<std::vector<VisitIdx>> paths;  // indexed by ship
};

/// All v_s -> sink paths of one ship, depth-first with successors by index.
std::vector<std::vector<VisitIdx>> enumerate_ship_paths(const Instance& instance, ShipIdx ship);

/// Calls `visit` once per disjoint assignment, ordered by ship 0's path index,
/// then ship 1's, and so on. Returns the number of assignments.
long enumerate_disjoint_paths(const Instance& instance, const std::function<void(const PathAssignment&)>& visit,
                              const OracleOptions& options = {});
std::vector<PathAssignment> enumerate_disjoint_paths(const Instance& instance, const OracleOptions& options = {});

/// Exact optimum by enumeration: each assignment gets an exact cargo LP where
/// cargo may leave the ship at any visited destination. Ties keep the earliest assignment.
Solution brute_force_solve(const Instance& instance, const OracleOptions& options = {});

}  // namespace lsfrp
