#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace lsfrp::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Default tolerances shared by the LP, MIP and column generation layers.
struct Tolerances {
  static constexpr double feasibility = 1e-7;
  static constexpr double integrality = 1e-6;
  static constexpr double gap = 1e-6;  // relative
};

enum class Sense : std::uint8_t { le, ge, eq };

struct Variable {
  double lb = 0.0;
  double ub = kInf;
  double obj = 0.0;
  bool integer = false;
  std::string name;
};

struct Term {
  int var;
  double coef;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense = Sense::le;
  double rhs = 0.0;
  std::string name;
};

/// Maximisation model with bounded variables and sparse rows. Column additions
/// append to existing rows, which is what column generation needs.
class LinearModel {
 public:
  int add_variable(double lb, double ub, double obj, bool integer = false, std::string name = {});
  /// Adds a variable together with its coefficients in existing rows.
  int add_column(double lb, double ub, double obj, std::span<const Term> column, bool integer = false,
                 std::string name = {});
  int add_row(std::vector<Term> terms, Sense sense, double rhs, std::string name = {});
  int add_row(Constraint row);

  void set_objective(int var, double obj) { vars_[var].obj = obj; }
  void set_bounds(int var, double lb, double ub) {
    vars_[var].lb = lb;
    vars_[var].ub = ub;
  }
  void set_objective_offset(double offset) { offset_ = offset; }
  double objective_offset() const { return offset_; }

  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  std::int64_t num_nonzeros() const;
  int num_integer() const;

  const Variable& var(int j) const { return vars_[j]; }
  Variable& var(int j) { return vars_[j]; }
  const Constraint& row(int i) const { return rows_[i]; }
  const std::vector<Variable>& vars() const { return vars_; }
  const std::vector<Constraint>& rows() const { return rows_; }

  double evaluate(std::span<const double> x) const;
  double row_activity(int i, std::span<const double> x) const;
  /// Largest bound or row violation of x.
  double max_violation(std::span<const double> x) const;

  /// Throws std::invalid_argument naming the first violated model invariant.
  void check() const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  double offset_ = 0.0;
};

}  // namespace lsfrp::lp
