#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "lsfrp/commodity.hpp"
#include "lsfrp/instance.hpp"
#include "lsfrp/lp/linear_model.hpp"
#include "lsfrp/solution.hpp"

namespace lsfrp {

enum class Method : std::uint8_t { reduced, reduced_tight, revised, colgen, colgen_lazy, oracle };

std::string_view to_string(Method method);
Method method_from_string(std::string_view text);
const std::vector<Method>& all_methods();

struct SolveOptions {
  double time_limit_seconds = lp::kInf;
  CommodityOptions commodities{};
  bool batched = false;
  double oracle_budget = 1e6;
  std::function<void(const std::string&)> log;
};

/// One entry point for every method. OracleRefusal becomes status `refused`.
Solution solve(const Instance& instance, Method method, const SolveOptions& options = {});

}  // namespace lsfrp
