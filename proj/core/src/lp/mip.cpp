#include "lsfrp/lp/mip.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <string>

namespace lsfrp::lp {

std::string_view to_string(MipStatus status) {
  switch (status) {
    case MipStatus::optimal: return "optimal";
    case MipStatus::infeasible: return "infeasible";
    case MipStatus::unbounded: return "unbounded";
    case MipStatus::time_limit: return "time_limit";
    case MipStatus::node_limit: return "node_limit";
    case MipStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

double row_violation(const Constraint& row, std::span<const double> x) {
  double act = 0.0;
  for (const Term& t : row.terms) act += t.coef * x[t.var];
  switch (row.sense) {
    case Sense::le: return act - row.rhs;
    case Sense::ge: return row.rhs - act;
    case Sense::eq: return std::abs(act - row.rhs);
  }
  return 0.0;
}

namespace {

struct BoundChange {
  int var;
  double lb;
  double ub;
};

struct Node {
  long id;
  double bound;
  std::vector<BoundChange> changes;
  Basis basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

}  // namespace

MipSolution solve_mip(LinearModel& model, const MipOptions& options, const CandidateCallback& on_candidate) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - started).count(); };

  MipSolution result;
  auto prune_level = [&](double incumbent) {
    return incumbent + options.gap_tol * (1.0 + std::abs(incumbent));
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push(Node{next_id++, kInf, {}, {}});
  bool numerical = false;
  bool stopped = false;
  MipStatus stop_status = MipStatus::optimal;

  std::vector<double> lower(model.num_vars()), upper(model.num_vars());

  while (!open.empty() && !stopped) {
    if (elapsed() > options.time_limit_seconds) {
      stopped = true;
      stop_status = MipStatus::time_limit;
      break;
    }
    if (options.node_limit > 0 && result.nodes >= options.node_limit) {
      stopped = true;
      stop_status = MipStatus::node_limit;
      break;
    }
    Node node = open.top();
    open.pop();
    if (result.has_incumbent && node.bound <= prune_level(result.objective)) {
      // Best-bound order: nothing better remains.
      while (!open.empty()) open.pop();
      break;
    }
    ++result.nodes;

    for (int j = 0; j < model.num_vars(); ++j) {
      lower[j] = model.var(j).lb;
      upper[j] = model.var(j).ub;
    }
    for (const BoundChange& c : node.changes) {
      lower[c.var] = c.lb;
      upper[c.var] = c.ub;
    }

    Basis basis = std::move(node.basis);
    while (true) {
      LpSolveInput input{&lower, &upper, basis.empty() ? nullptr : &basis, options.lp};
      input.options.time_limit_seconds = std::min(options.lp.time_limit_seconds, options.time_limit_seconds - elapsed());
      LpSolution lp = solve_lp(model, input);
      result.lp_iterations += lp.iterations;
      if (lp.status == LpStatus::time_limit) {
        stopped = true;
        stop_status = MipStatus::time_limit;
        open.push(Node{node.id, node.bound, std::move(node.changes), {}});
        break;
      }
      if (node.id == 0 && lp.optimal()) result.root_bound = lp.objective;

      if (lp.status == LpStatus::infeasible) break;
      if (lp.status == LpStatus::unbounded) {
        result.status = MipStatus::unbounded;
        result.bound = kInf;
        return result;
      }
      if (!lp.optimal()) {
        numerical = true;
        break;
      }
      if (result.has_incumbent && lp.objective <= prune_level(result.objective)) break;

      int branch_var = -1;
      double best_frac = 0.0;
      for (int j = 0; j < model.num_vars(); ++j) {
        if (!model.var(j).integer) continue;
        const double v = lp.x[j];
        const double frac = std::abs(v - std::round(v));
        if (frac <= options.integrality_tol) continue;
        const double score = 0.5 - std::abs(v - std::floor(v) - 0.5);
        if (branch_var < 0 || score > best_frac) {
          branch_var = j;
          best_frac = score;
        }
      }

      if (branch_var < 0) {
        if (on_candidate) {
          ++result.callback_calls;
          std::vector<Constraint> cuts = on_candidate(lp.x);
          if (!cuts.empty()) {
            for (Constraint& cut : cuts) {
              const double viol = row_violation(cut, lp.x);
              if (!(viol > options.lp.feasibility_tol))
                throw SeparationError("lazy cut \"" + cut.name + "\" is not violated by the candidate (violation " +
                                      std::to_string(viol) + ")");
              model.add_row(std::move(cut));
              ++result.cuts_added;
            }
            basis = std::move(lp.basis);
            continue;
          }
        }
        result.has_incumbent = true;
        result.objective = lp.objective;
        result.x = std::move(lp.x);
        break;
      }

      const double v = lp.x[branch_var];
      Node down{next_id++, lp.objective, node.changes, lp.basis};
      down.changes.push_back({branch_var, lower[branch_var], std::floor(v)});
      Node up{next_id++, lp.objective, node.changes, std::move(lp.basis)};
      up.changes.push_back({branch_var, std::ceil(v), upper[branch_var]});
      open.push(std::move(down));
      open.push(std::move(up));
      break;
    }
  }

  double open_bound = -kInf;
  if (stopped) {
    while (!open.empty()) {
      open_bound = std::max(open_bound, open.top().bound);
      open.pop();
    }
  }
  if (stopped) {
    result.status = stop_status;
    result.bound = std::max(open_bound, result.objective);
  } else if (numerical) {
    result.status = MipStatus::numerical_failure;
    result.bound = kInf;
  } else if (result.has_incumbent) {
    result.status = MipStatus::optimal;
    result.bound = result.objective;
  } else {
    result.status = MipStatus::infeasible;
    result.bound = -kInf;
  }
  return result;
}

}  // namespace lsfrp::lp
