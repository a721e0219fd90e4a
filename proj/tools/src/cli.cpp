#include "lsfrp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "lsfrp/generator.hpp"
#include "lsfrp/instance_io.hpp"
#include "lsfrp/solver.hpp"

namespace lsfrp::cli {

namespace {

int exit_code(const Solution& sol) {
  switch (sol.status) {
    case SolveStatus::optimal: return kOk;
    case SolveStatus::time_limit: return kTimeLimit;
    default: return kNoSolution;
  }
}

std::string money(double value) {
  std::ostringstream s;
  s << std::setprecision(15) << value;
  return s.str();
}

// "lo:hi", or a single value for both ends.
Range parse_range(const std::string& text, double scale) {
  const auto colon = text.find(':');
  try {
    const double lo = std::stod(text.substr(0, colon));
    const double hi = colon == std::string::npos ? lo : std::stod(text.substr(colon + 1));
    return {lo * scale, hi * scale};
  } catch (const std::exception&) {
    throw CLI::ValidationError("range", "expected LO:HI, got \"" + text + "\"");
  }
}

struct SolveFlags {
  std::string instance;
  std::string method = "colgen-lazy";
  std::vector<long long> empty_revenue_cents;
  double time_limit = 0;
  std::string out;
  std::uint64_t seed = 0;
  std::string split_rule = "safe";
  bool no_empties = false;
  bool batched = false;
  bool no_timing = false;
  bool log = false;
};

void add_common(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--instance", f.instance, "instance file (lsfrp-instance-v1)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--time-limit", f.time_limit, "seconds per method, 0 for none")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", f.seed, "recorded in the output metadata");
  cmd->add_option("--split-rule", f.split_rule, "demand splitting rule")
      ->check(CLI::IsMember({"safe", "strict", "none"}));
  cmd->add_flag("--no-empties", f.no_empties, "ignore empty equipment");
  cmd->add_flag("--batched", f.batched, "column generation adds one column per ship per pass");
  cmd->add_flag("--log", f.log, "progress lines on stderr");
}

SolveOptions solve_options(const SolveFlags& f, std::ostream& err) {
  SolveOptions o;
  if (f.time_limit > 0) o.time_limit_seconds = f.time_limit;
  o.commodities.split_rule = split_rule_from_string(f.split_rule);
  o.commodities.include_empties = !f.no_empties;
  o.batched = f.batched;
  if (f.log) o.log = [&err](const std::string& line) { err << line << '\n'; };
  return o;
}

Instance load(const SolveFlags& f, std::optional<long long> revenue_cents) {
  Instance in = read_instance(f.instance);
  if (revenue_cents) in = with_empty_revenue(std::move(in), static_cast<double>(*revenue_cents) / 100.0);
  return in;
}

void stamp(Solution& sol, const SolveFlags& f, std::optional<long long> revenue_cents) {
  sol.metadata["seed"] = std::to_string(f.seed);
  sol.metadata["split_rule"] = f.split_rule;
  if (revenue_cents) sol.metadata["empty_revenue_cents"] = std::to_string(*revenue_cents);
  if (f.no_empties) sol.metadata["empties"] = "off";
}

int cmd_solve(const SolveFlags& f, std::ostream& out, std::ostream& err) {
  if (f.empty_revenue_cents.size() > 1) {
    err << "solve: --empty-revenue may be given once\n";
    return kUsage;
  }
  std::optional<long long> revenue;
  if (!f.empty_revenue_cents.empty()) revenue = f.empty_revenue_cents.front();
  const Instance in = load(f, revenue);
  Solution sol = solve(in, method_from_string(f.method), solve_options(f, err));
  stamp(sol, f, revenue);
  const std::string text = write_solution(in, sol, {!f.no_timing});
  if (f.out.empty()) {
    out << text;
  } else {
    write_text_file(f.out, text);
    out << "method=" << sol.method << " status=" << to_string(sol.status);
    if (sol.has_solution) out << " objective=" << money(sol.objective);
    out << '\n';
  }
  if (sol.status == SolveStatus::refused) err << sol.metadata["refusal"] << '\n';
  return exit_code(sol);
}

struct Row {
  std::string revenue;
  Solution sol;
  bool mismatch = false;
};

const char* const kCsvHeader =
    "empty_revenue_cents,method,status,objective,bound,wall_time_s,columns,branch_nodes,mip_nodes,gamma_dc,gamma_rf,"
    "split_count,rows,cols,nonzeros,agreement";

std::vector<std::string> row_cells(const Row& r) {
  const Solution& s = r.sol;
  const Diagnostics& d = s.diagnostics;
  auto num = [](double v) { return std::isfinite(v) ? money(v) : std::string(); };
  std::ostringstream time;
  time << std::fixed << std::setprecision(3) << d.wall_time_s;
  return {r.revenue,
          s.method,
          std::string(to_string(s.status)),
          s.has_solution ? money(s.objective) : "",
          num(s.bound),
          time.str(),
          std::to_string(d.columns_generated),
          std::to_string(d.branch_nodes),
          std::to_string(d.mip_nodes),
          std::to_string(d.cuts_dc),
          std::to_string(d.cuts_rf),
          std::to_string(d.split_count),
          std::to_string(d.model.rows),
          std::to_string(d.model.cols),
          std::to_string(d.model.nonzeros),
          r.mismatch ? "MISMATCH" : "ok"};
}

int cmd_compare(const SolveFlags& f, const std::string& methods_csv, bool with_oracle, const std::string& csv_path,
                std::ostream& out, std::ostream& err) {
  if (f.empty_revenue_cents.size() > 2) {
    err << "compare: --empty-revenue may be given at most twice\n";
    return kUsage;
  }
  std::vector<Method> methods;
  std::stringstream list(methods_csv);
  for (std::string name; std::getline(list, name, ',');)
    if (!name.empty()) methods.push_back(method_from_string(name));
  if (with_oracle && std::find(methods.begin(), methods.end(), Method::oracle) == methods.end())
    methods.push_back(Method::oracle);

  std::vector<std::optional<long long>> revenues;
  for (long long r : f.empty_revenue_cents) revenues.push_back(r);
  if (revenues.empty()) revenues.push_back(std::nullopt);

  std::vector<Row> rows;
  bool mismatch = false;
  std::vector<std::optional<double>> reference(revenues.size());
  for (std::size_t k = 0; k < revenues.size(); ++k) {
    const Instance in = load(f, revenues[k]);
    const std::size_t first = rows.size();
    for (Method m : methods) {
      Solution sol = solve(in, m, solve_options(f, err));
      stamp(sol, f, revenues[k]);
      rows.push_back({revenues[k] ? std::to_string(*revenues[k]) : "file", std::move(sol)});
    }
    // The oracle is the reference when it ran; otherwise the first proven optimum.
    for (std::size_t r = first; r < rows.size(); ++r)
      if (rows[r].sol.status == SolveStatus::optimal && (!reference[k] || rows[r].sol.method == "oracle"))
        reference[k] = rows[r].sol.objective;
    for (std::size_t r = first; r < rows.size(); ++r) {
      Solution& s = rows[r].sol;
      const bool proven = s.status == SolveStatus::optimal;
      if (reference[k] && proven && !objectives_agree(s.objective, *reference[k])) rows[r].mismatch = true;
      // An incumbent above the reference optimum is wrong even without a proof.
      if (reference[k] && s.status == SolveStatus::time_limit && s.has_solution &&
          s.objective > *reference[k] + 1e-6 * std::max(1.0, std::abs(*reference[k])))
        rows[r].mismatch = true;
      mismatch = mismatch || rows[r].mismatch;
    }
  }

  std::vector<std::string> header;
  std::stringstream hs(kCsvHeader);
  for (std::string cell; std::getline(hs, cell, ',');) header.push_back(cell);
  std::vector<std::vector<std::string>> table{header};
  for (const Row& r : rows) table.push_back(row_cells(r));
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : table)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c)
      out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << std::left << line[c];
    out << '\n';
  }
  if (revenues.size() == 2 && reference[0] && reference[1])
    out << "\nempty revenue " << *revenues[0] << " -> " << *revenues[1] << " cents/TEU: objective "
        << money(*reference[0]) << " -> " << money(*reference[1]) << '\n';

  std::ostringstream csv;
  csv << kCsvHeader << '\n';
  for (const Row& r : rows) {
    const auto cells = row_cells(r);
    for (std::size_t c = 0; c < cells.size(); ++c) csv << (c ? "," : "") << cells[c];
    csv << '\n';
  }
  if (csv_path.empty()) out << '\n' << csv.str();
  else write_text_file(csv_path, csv.str());
  if (mismatch) err << "compare: objectives disagree (MISMATCH rows above)\n";
  return mismatch ? kMismatch : kOk;
}

struct GenerateFlags {
  GeneratorParams p;
  std::string out;
  std::string move_cost, revenue, sail_cost, port_fee;  // cents
  std::string capacity_dc, reefer_share, demand_amount, empty_amount;
  long long empty_revenue_cents = 15000;
};

int cmd_generate(GenerateFlags& g, std::ostream& out, std::ostream& err) {
  GeneratorParams& p = g.p;
  if (!g.move_cost.empty()) p.move_cost = parse_range(g.move_cost, 0.01);
  if (!g.revenue.empty()) p.revenue = parse_range(g.revenue, 0.01);
  if (!g.sail_cost.empty()) p.sail_cost = parse_range(g.sail_cost, 0.01);
  if (!g.port_fee.empty()) p.port_fee = parse_range(g.port_fee, 0.01);
  if (!g.capacity_dc.empty()) p.capacity_dc = parse_range(g.capacity_dc, 1.0);
  if (!g.reefer_share.empty()) p.reefer_share = parse_range(g.reefer_share, 1.0);
  if (!g.demand_amount.empty()) p.demand_amount = parse_range(g.demand_amount, 1.0);
  if (!g.empty_amount.empty()) p.empty_amount = parse_range(g.empty_amount, 1.0);
  p.empty_revenue = static_cast<double>(g.empty_revenue_cents) / 100.0;
  Instance in;
  try {
    in = generate_random(p);
  } catch (const Error& e) {
    err << "generate: " << e.what() << '\n';
    return kUsage;
  }
  const std::string text = write_instance(in);
  std::ostream& stats = g.out.empty() ? err : out;
  if (g.out.empty()) out << text;
  else write_text_file(g.out, text);
  stats << "name " << in.name << "  |S| " << in.ship_count() << "  |V| " << in.visit_count() << "  |A| "
        << in.arcs.size() << "  |M| " << in.demands.size() << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Liner fleet repositioning solvers", "lsfrp"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one instance with one method");
  add_common(solve_cmd, solve_flags);
  solve_cmd->add_option("--method", solve_flags.method, "solver")
      ->check(CLI::IsMember({"reduced", "reduced-tight", "revised", "colgen", "colgen-lazy", "oracle"}));
  solve_cmd->add_option("--empty-revenue", solve_flags.empty_revenue_cents, "override empty revenue (cents per TEU)");
  solve_cmd->add_option("--out", solve_flags.out, "solution file (default: stdout)");
  solve_cmd->add_flag("--no-timing", solve_flags.no_timing, "omit wall-clock fields from the solution");

  SolveFlags compare_flags;
  std::string methods = "reduced,reduced-tight,revised,colgen,colgen-lazy";
  bool with_oracle = false;
  std::string csv_path;
  CLI::App* compare_cmd = app.add_subcommand("compare", "run several methods and check that they agree");
  add_common(compare_cmd, compare_flags);
  compare_cmd->add_option("--methods", methods, "comma-separated methods");
  compare_cmd->add_flag("--oracle", with_oracle, "add the brute-force oracle as reference");
  compare_cmd->add_option("--empty-revenue", compare_flags.empty_revenue_cents,
                          "empty revenue in cents per TEU; give twice for a with/without pair");
  compare_cmd->add_option("--csv", csv_path, "write the CSV report here instead of stdout");

  GenerateFlags gen;
  CLI::App* gen_cmd = app.add_subcommand("generate", "write a random layered instance");
  gen_cmd->add_option("--ships", gen.p.ships)->capture_default_str();
  gen_cmd->add_option("--ship-types", gen.p.ship_types)->capture_default_str();
  gen_cmd->add_option("--visits", gen.p.visits)->capture_default_str();
  gen_cmd->add_option("--layers", gen.p.layers, "middle layers, 0 for automatic")->capture_default_str();
  gen_cmd->add_option("--ports", gen.p.ports, "0 for automatic")->capture_default_str();
  gen_cmd->add_option("--density", gen.p.arc_density)->capture_default_str();
  gen_cmd->add_option("--demands", gen.p.demands)->capture_default_str();
  gen_cmd->add_option("--reefer-fraction", gen.p.reefer_fraction)->capture_default_str();
  gen_cmd->add_option("--multi-destination-fraction", gen.p.multi_destination_fraction)->capture_default_str();
  gen_cmd->add_option("--empty-points", gen.p.empty_points)->capture_default_str();
  gen_cmd->add_option("--move-cost", gen.move_cost, "cents LO:HI");
  gen_cmd->add_option("--revenue", gen.revenue, "cents LO:HI");
  gen_cmd->add_option("--sail-cost", gen.sail_cost, "cents LO:HI");
  gen_cmd->add_option("--port-fee", gen.port_fee, "cents LO:HI");
  gen_cmd->add_option("--capacity-dc", gen.capacity_dc, "TEU LO:HI");
  gen_cmd->add_option("--reefer-share", gen.reefer_share, "share of capacity LO:HI");
  gen_cmd->add_option("--demand-amount", gen.demand_amount, "TEU LO:HI");
  gen_cmd->add_option("--empty-amount", gen.empty_amount, "TEU LO:HI");
  gen_cmd->add_option("--empty-revenue", gen.empty_revenue_cents, "cents per TEU")->capture_default_str();
  gen_cmd->add_option("--seed", gen.p.seed)->capture_default_str();
  gen_cmd->add_option("--name", gen.p.name);
  gen_cmd->add_option("--out", gen.out, "instance file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_flags, out, err);
    if (compare_cmd->parsed()) return cmd_compare(compare_flags, methods, with_oracle, csv_path, out, err);
    return cmd_generate(gen, out, err);
  } catch (const CLI::ValidationError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return kBadInput;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kBadInput;
  }
}

}  // namespace lsfrp::cli
