#include "lsfrp/lp/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lsfrp::lp {

int LinearModel::add_variable(double lb, double ub, double obj, bool integer, std::string name) {
  vars_.push_back({lb, ub, obj, integer, std::move(name)});
  return num_vars() - 1;
}

int LinearModel::add_column(double lb, double ub, double obj, std::span<const Term> column, bool integer,
                            std::string name) {
  int j = add_variable(lb, ub, obj, integer, std::move(name));
  for (const Term& t : column) {
    if (t.var < 0 || t.var >= num_rows()) throw std::invalid_argument("add_column: unknown row");
    rows_[t.var].terms.push_back({j, t.coef});
  }
  return j;
}

int LinearModel::add_row(std::vector<Term> terms, Sense sense, double rhs, std::string name) {
  return add_row(Constraint{std::move(terms), sense, rhs, std::move(name)});
}

int LinearModel::add_row(Constraint row) {
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

std::int64_t LinearModel::num_nonzeros() const {
  std::int64_t nnz = 0;
  for (const auto& row : rows_) nnz += static_cast<std::int64_t>(row.terms.size());
  return nnz;
}

int LinearModel::num_integer() const {
  return static_cast<int>(std::count_if(vars_.begin(), vars_.end(), [](const Variable& v) { return v.integer; }));
}

double LinearModel::evaluate(std::span<const double> x) const {
  double total = offset_;
  for (int j = 0; j < num_vars(); ++j) total += vars_[j].obj * x[j];
  return total;
}

double LinearModel::row_activity(int i, std::span<const double> x) const {
  double act = 0.0;
  for (const Term& t : rows_[i].terms) act += t.coef * x[t.var];
  return act;
}

double LinearModel::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (int j = 0; j < num_vars(); ++j) {
    worst = std::max(worst, vars_[j].lb - x[j]);
    worst = std::max(worst, x[j] - vars_[j].ub);
  }
  for (int i = 0; i < num_rows(); ++i) {
    double act = row_activity(i, x);
    const Constraint& r = rows_[i];
    if (r.sense != Sense::ge) worst = std::max(worst, act - r.rhs);
    if (r.sense != Sense::le) worst = std::max(worst, r.rhs - act);
  }
  return worst;
}

void LinearModel::check() const {
  for (int j = 0; j < num_vars(); ++j) {
    const Variable& v = vars_[j];
    if (std::isnan(v.lb) || std::isnan(v.ub) || v.lb > v.ub)
      throw std::invalid_argument("variable " + std::to_string(j) + " has inconsistent bounds");
    if (v.lb == kInf || v.ub == -kInf)
      throw std::invalid_argument("variable " + std::to_string(j) + " has an infinite fixed bound");
    if (!std::isfinite(v.obj)) throw std::invalid_argument("variable " + std::to_string(j) + " objective not finite");
  }
  for (int i = 0; i < num_rows(); ++i) {
    const Constraint& r = rows_[i];
    if (!std::isfinite(r.rhs)) throw std::invalid_argument("row " + std::to_string(i) + " rhs not finite");
    for (const Term& t : r.terms) {
      if (t.var < 0 || t.var >= num_vars())
        throw std::invalid_argument("row " + std::to_string(i) + " references unknown variable");
      if (!std::isfinite(t.coef)) throw std::invalid_argument("row " + std::to_string(i) + " has non-finite coefficient");
    }
  }
}

}  // namespace lsfrp::lp
