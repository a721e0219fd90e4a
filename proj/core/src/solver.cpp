#include "lsfrp/solver.hpp"

#include "lsfrp/colgen.hpp"
#include "lsfrp/formulations.hpp"
#include "lsfrp/lazy.hpp"
#include "lsfrp/oracle.hpp"

namespace lsfrp {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::reduced: return "reduced";
    case Method::reduced_tight: return "reduced-tight";
    case Method::revised: return "revised";
    case Method::colgen: return "colgen";
    case Method::colgen_lazy: return "colgen-lazy";
    case Method::oracle: return "oracle";
  }
  return "reduced";
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods{Method::reduced, Method::reduced_tight, Method::revised,
                                           Method::colgen,  Method::colgen_lazy,   Method::oracle};
  return methods;
}

Method method_from_string(std::string_view text) {
  for (Method m : all_methods())
    if (to_string(m) == text) return m;
  throw Error("unknown method \"" + std::string(text) + "\"");
}

Solution solve(const Instance& instance, Method method, const SolveOptions& options) {
  switch (method) {
    case Method::reduced:
    case Method::reduced_tight:
    case Method::revised: {
      const ReachIndex reach(instance);
      lp::MipOptions mip;
      mip.time_limit_seconds = options.time_limit_seconds;
      return solve_arc_flow(reach, std::string(to_string(method)), {false, options.commodities}, mip);
    }
    case Method::colgen:
    case Method::colgen_lazy: {
      ColumnGenerationOptions cg;
      cg.commodities = options.commodities;
      cg.batched = options.batched;
      cg.time_limit_seconds = options.time_limit_seconds;
      cg.log = options.log;
      return method == Method::colgen ? run_column_generation(instance, cg) : run_colgen_lazy(instance, cg);
    }
    case Method::oracle:
      try {
        return brute_force_solve(instance, {options.oracle_budget});
      } catch (const OracleRefusal& e) {
        Solution sol;
        sol.instance_name = instance.name;
        sol.method = "oracle";
        sol.status = SolveStatus::refused;
        sol.metadata["refusal"] = e.what();
        return sol;
      }
  }
  throw Error("unknown method");
}

}  // namespace lsfrp
