#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lsfrp {

using VisitIdx = int;
using ShipIdx = int;
using DemandIdx = int;
using ArcIdx = int;

inline constexpr int kNoIndex = -1;

enum class CargoType : std::uint8_t { dry = 0, reefer = 1 };
inline constexpr std::array<CargoType, 2> kCargoTypes{CargoType::dry, CargoType::reefer};

std::string_view to_string(CargoType type);
CargoType cargo_type_from_string(std::string_view text);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Ship {
  std::string id;
  VisitIdx start = kNoIndex;
  double capacity_dc = 0.0;  // total slots (TEU)
  double capacity_rf = 0.0;  // powered reefer slots, a sub-capacity of capacity_dc
  int type = 0;              // index into Instance::ship_types

  double capacity(CargoType q) const { return q == CargoType::reefer ? capacity_rf : capacity_dc; }
  bool operator==(const Ship&) const = default;
};

struct Visit {
  std::string id;
  std::string port;
  double port_fee = 0.0;   // charged to a ship entering the visit; may be negative
  double move_cost = 0.0;  // per TEU loaded or unloaded here
  int time_index = 0;      // advisory only
  bool operator==(const Visit&) const = default;
};

// `to` may be Instance::sink().
struct Arc {
  VisitIdx from = kNoIndex;
  VisitIdx to = kNoIndex;
  std::vector<double> sail_cost;  // indexed by ship type
  bool operator==(const Arc&) const = default;
};

struct Demand {
  std::string id;
  VisitIdx origin = kNoIndex;
  std::vector<VisitIdx> destinations;  // sorted, unique
  CargoType type = CargoType::dry;
  double amount = 0.0;
  double revenue = 0.0;  // per TEU delivered
  bool operator==(const Demand&) const = default;
};

// Positive amount: equipment surplus; negative: deficit.
struct EmptyPoint {
  VisitIdx visit = kNoIndex;
  CargoType type = CargoType::dry;
  double amount = 0.0;
  bool operator==(const EmptyPoint&) const = default;
};

/// Problem data over a time-space DAG. Visits are indexed 0..visits.size()-1;
/// the sink is the extra index visits.size() and is not an actual visit.
/// Money is held in currency units; files store integral cents.
struct Instance {
  std::string name;
  std::vector<std::string> ship_types;
  std::vector<Ship> ships;
  std::vector<Visit> visits;
  std::string sink_id = "tau";
  std::vector<Arc> arcs;
  std::vector<Demand> demands;
  std::vector<EmptyPoint> empty_points;
  std::array<double, 2> empty_revenue{0.0, 0.0};
  std::map<std::string, std::string> metadata;

  bool operator==(const Instance&) const = default;

  int visit_count() const { return static_cast<int>(visits.size()); }
  int ship_count() const { return static_cast<int>(ships.size()); }
  VisitIdx sink() const { return visit_count(); }
  bool is_sink(VisitIdx v) const { return v == sink(); }

  double sail_cost(ArcIdx a, ShipIdx s) const { return arcs[a].sail_cost[ships[s].type]; }
  double empty_revenue_for(CargoType q) const { return empty_revenue[static_cast<int>(q)]; }

  /// Name of a visit index, "tau"-style sink id included.
  const std::string& visit_name(VisitIdx v) const;

  /// Linear scans; instances are small enough that callers cache if needed.
  VisitIdx find_visit(std::string_view id) const;
  ShipIdx find_ship(std::string_view id) const;
  DemandIdx find_demand(std::string_view id) const;
};

struct ValidationIssue {
  std::string location;  // e.g. "ships[1].capacity_rf"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool mentions(std::string_view needle) const;
  std::string to_string() const;
};

/// Lists every violated invariant; an empty report means all solvers accept the instance.
ValidationReport validate(const Instance& instance);

/// Throws Error with the report text when validation fails.
void require_valid(const Instance& instance);

/// Copy with r^Var overridden uniformly for both cargo types.
Instance with_empty_revenue(Instance instance, double revenue_per_teu);

}  // namespace lsfrp
