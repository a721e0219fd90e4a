#pragma once

#include <cstdint>
#include <string>

#include "lsfrp/instance.hpp"

namespace lsfrp {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Layered time-space instance: one phase-out layer holding the ship starts,
/// `layers` middle layers and the sink. Money ranges are in currency units.
struct GeneratorParams {
  int ships = 3;
  int ship_types = 1;
  int visits = 14;  // including the start visits
  int layers = 0;   // middle layers; 0 picks visits/ships
  int ports = 0;    // 0 picks about 60% of the visit count
  double arc_density = 0.35;
  int demands = 12;
  double reefer_fraction = 0.2;
  double multi_destination_fraction = 0.25;
  int empty_points = 0;
  Range move_cost{100, 200};
  Range revenue{500, 2500};
  Range sail_cost{10000, 100000};
  Range port_fee{1000, 20000};
  Range capacity_dc{1000, 4000};
  Range reefer_share{0.1, 0.2};
  Range demand_amount{50, 600};
  Range empty_amount{50, 300};
  double empty_revenue = 150;
  std::uint64_t seed = 1;
  std::string name;  // defaults to "gen-<seed>"
};

/// Throws Error describing the first inconsistent parameter.
void check_params(const GeneratorParams& params);

/// Pure function of `params`; the result always passes validate().
Instance generate_random(const GeneratorParams& params);

}  // namespace lsfrp
